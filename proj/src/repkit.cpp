#include "integrax/repkit.hpp"

#include <cmath>
#include <stdexcept>

namespace integrax {

namespace {

Matrix unit(int n, int r, int c) {  // E_{rc}, 1-based
    Matrix m = Matrix::Zero(n, n);
    m(r - 1, c - 1) = 1.0;
    return m;
}

double frob(const Matrix& m) { return m.norm(); }

}  // namespace

std::string to_string(RepLabel label) {
    switch (label) {
        case RepLabel::phi: return "phi";
        case RepLabel::phibar: return "phibar";
        case RepLabel::phi_star: return "phi*";
        case RepLabel::star_phi: return "*phi";
    }
    throw std::logic_error("bad label");
}

RepLabel rep_label_from_string(const std::string& name) {
    if (name == "phi") return RepLabel::phi;
    if (name == "phibar") return RepLabel::phibar;
    if (name == "phi*") return RepLabel::phi_star;
    if (name == "*phi") return RepLabel::star_phi;
    throw std::invalid_argument("unknown representation label: " + name);
}

Representation::Representation(ModelParams params, Complex zeta, std::string name,
                               std::vector<Matrix> e, std::vector<Matrix> f,
                               std::vector<std::vector<double>> h_weights)
    : params_(std::move(params)), zeta_(zeta), name_(std::move(name)),
      e_(std::move(e)), f_(std::move(f)), h_weights_(std::move(h_weights)) {}

Matrix Representation::cartan(int i, Complex nu) const {
    const auto& w = h_weights_.at(i);
    Matrix m = Matrix::Zero(dim(), dim());
    for (int k = 0; k < dim(); ++k) m(k, k) = std::pow(params_.q, nu * w[k]);
    return m;
}

Representation phi_rep(const ModelParams& params, Complex zeta) {
    params.validate();
    int n = params.dim(), l = params.l;
    Complex q = params.q;
    std::vector<Matrix> e(l + 1), f(l + 1);
    std::vector<std::vector<double>> w(l + 1, std::vector<double>(n, 0.0));

    e[0] = std::pow(zeta, params.s[0]) * q * unit(n, n, 1);
    f[0] = std::pow(zeta, -params.s[0]) / q * unit(n, 1, n);
    w[0][0] = -1.0;
    w[0][n - 1] = 1.0;
    for (int i = 1; i <= l; ++i) {
        e[i] = std::pow(zeta, params.s[i]) * unit(n, i, i + 1);
        f[i] = std::pow(zeta, -params.s[i]) * unit(n, i + 1, i);
        w[i][i - 1] = 1.0;
        w[i][i] = -1.0;
    }
    return Representation(params, zeta, "phi", std::move(e), std::move(f), std::move(w));
}

Representation phibar_rep(const ModelParams& params, Complex zeta) {
    params.validate();
    int n = params.dim(), l = params.l;
    Complex q = params.q;
    std::vector<Matrix> e(l + 1), f(l + 1);
    std::vector<std::vector<double>> w(l + 1, std::vector<double>(n, 0.0));

    double sgn = (l % 2 == 1) ? 1.0 : -1.0;  // (-1)^{l-1}
    e[0] = std::pow(zeta, params.s[0]) * sgn * std::pow(q, -l + 2) * unit(n, n, 1);
    f[0] = std::pow(zeta, -params.s[0]) * sgn * std::pow(q, l - 2) * unit(n, 1, n);
    w[0][0] = -1.0;
    w[0][n - 1] = 1.0;
    for (int i = 1; i <= l; ++i) {
        int r = l - i + 1;
        e[i] = std::pow(zeta, params.s[i]) * unit(n, r, r + 1);
        f[i] = std::pow(zeta, -params.s[i]) * unit(n, r + 1, r);
        w[i][r - 1] = 1.0;
        w[i][r] = -1.0;
    }
    return Representation(params, zeta, "phibar", std::move(e), std::move(f), std::move(w));
}

Representation phi_star_rep(const ModelParams& params, Complex zeta) {
    params.validate();
    int n = params.dim(), l = params.l;
    Complex q = params.q;
    std::vector<Matrix> e(l + 1), f(l + 1);
    std::vector<std::vector<double>> w(l + 1, std::vector<double>(n, 0.0));

    e[0] = -std::pow(zeta, params.s[0]) * unit(n, 1, n);
    f[0] = -std::pow(zeta, -params.s[0]) * unit(n, n, 1);
    w[0][0] = 1.0;
    w[0][n - 1] = -1.0;
    for (int i = 1; i <= l; ++i) {
        e[i] = -std::pow(zeta, params.s[i]) / q * unit(n, i + 1, i);
        f[i] = -std::pow(zeta, -params.s[i]) * q * unit(n, i, i + 1);
        w[i][i - 1] = -1.0;
        w[i][i] = 1.0;
    }
    return Representation(params, zeta, "phi*", std::move(e), std::move(f), std::move(w));
}

Representation star_phi_rep(const ModelParams& params, Complex zeta) {
    params.validate();
    int n = params.dim(), l = params.l;
    Complex q = params.q;
    std::vector<Matrix> e(l + 1), f(l + 1);
    std::vector<std::vector<double>> w(l + 1, std::vector<double>(n, 0.0));

    e[0] = -std::pow(zeta, params.s[0]) * q * q * unit(n, 1, n);
    f[0] = -std::pow(zeta, -params.s[0]) / (q * q) * unit(n, n, 1);
    w[0][0] = 1.0;
    w[0][n - 1] = -1.0;
    for (int i = 1; i <= l; ++i) {
        e[i] = -std::pow(zeta, params.s[i]) * q * unit(n, i + 1, i);
        f[i] = -std::pow(zeta, -params.s[i]) / q * unit(n, i, i + 1);
        w[i][i - 1] = -1.0;
        w[i][i] = 1.0;
    }
    return Representation(params, zeta, "*phi", std::move(e), std::move(f), std::move(w));
}

Representation rep_by_label(RepLabel label, const ModelParams& params, Complex zeta) {
    switch (label) {
        case RepLabel::phi: return phi_rep(params, zeta);
        case RepLabel::phibar: return phibar_rep(params, zeta);
        case RepLabel::phi_star: return phi_star_rep(params, zeta);
        case RepLabel::star_phi: return star_phi_rep(params, zeta);
    }
    throw std::logic_error("bad label");
}

Representation dual_rep(const Representation& base, DualSide side) {
    int l = base.params().l;
    std::vector<Matrix> e(l + 1), f(l + 1);
    std::vector<std::vector<double>> w(l + 1);
    for (int i = 0; i <= l; ++i) {
        // S(e_i) = -q^{-h_i} e_i, S(f_i) = -f_i q^{h_i};
        // S^{-1}(e_i) = -e_i q^{-h_i}, S^{-1}(f_i) = -q^{h_i} f_i.
        Matrix qm = base.cartan(i, -1.0), qp = base.cartan(i, 1.0);
        if (side == DualSide::star_right) {
            e[i] = (-(qm * base.e(i))).transpose();
            f[i] = (-(base.f(i) * qp)).transpose();
        } else {
            e[i] = (-(base.e(i) * qm)).transpose();
            f[i] = (-(qp * base.f(i))).transpose();
        }
        w[i] = base.h_weights(i);
        for (double& v : w[i]) v = -v;
    }
    std::string name = side == DualSide::star_right ? base.name() + "*" : "*" + base.name();
    return Representation(base.params(), base.zeta(), name, std::move(e), std::move(f),
                          std::move(w));
}

XOperator x_operator(const ModelParams& params) {
    params.validate();
    int n = params.dim(), l = params.l;
    double s = params.s_total();
    XOperator out;
    out.chi.resize(n);
    out.x = Matrix::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
        double chi = -(l + 2 - 2 * i);
        for (int j = 1; j < i; ++j) chi -= 2.0 * j * params.s[j] / s;
        for (int j = i; j <= l; ++j) chi += 2.0 * (l + 1 - j) * params.s[j] / s;
        out.chi[i - 1] = chi;
        out.x(i - 1, i - 1) = std::pow(params.q, chi);
    }
    return out;
}

TwistOperator twist_operator(const ModelParams& params) {
    params.validate();
    int n = params.dim();
    TwistOperator out;
    out.phi = params.phi;
    out.a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) out.a(i, i) = std::pow(params.q, params.phi[i]);
    return out;
}

int affine_cartan(int i, int j, int l) {
    if (i == j) return 2;
    if (l == 1) return -2;
    int d = std::abs(i - j);
    return (d == 1 || d == l) ? -1 : 0;
}

RelationReport verify_defining_relations(const Representation& rep) {
    RelationReport rep_out;
    const ModelParams& p = rep.params();
    int l = p.l, n = p.dim();
    Complex q = p.q;
    Matrix id = Matrix::Identity(n, n);

    auto note = [&](const std::string& key, double r) {
        double& slot = rep_out.per_relation[key];
        slot = std::max(slot, r);
        rep_out.max_residual = std::max(rep_out.max_residual, r);
    };

    // q^{nu K} = 1 for the central combination K = sum_i h_i (Kac co-labels 1).
    for (Complex nu : {Complex(1.0), Complex(0.37)}) {
        Matrix prod = id;
        for (int i = 0; i <= l; ++i) prod = prod * rep.cartan(i, nu);
        note("cartan-central", frob(prod - id));
    }

    // Cartan images commute (diagonal weight bookkeeping).
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j) {
            Matrix a = rep.cartan(i, 0.59), b = rep.cartan(j, 1.0);
            note("cartan-commute", frob(a * b - b * a));
        }

    // q^{nu h_j} e_i q^{-nu h_j} = q^{nu a_{ji}} e_i and the f-counterpart.
    for (Complex nu : {Complex(1.0), Complex(0.37)}) {
        for (int j = 0; j <= l; ++j) {
            Matrix cp = rep.cartan(j, nu), cm = rep.cartan(j, -nu);
            for (int i = 0; i <= l; ++i) {
                double a = affine_cartan(j, i, l);
                note("cartan-e", frob(cp * rep.e(i) * cm - std::pow(q, nu * a) * rep.e(i)));
                note("cartan-f", frob(cp * rep.f(i) * cm - std::pow(q, -nu * a) * rep.f(i)));
            }
        }
    }

    // [e_i, f_j] = delta_ij (q^{h_i} - q^{-h_i}) / kappa_q.
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j) {
            Matrix lhs = rep.e(i) * rep.f(j) - rep.f(j) * rep.e(i);
            Matrix rhs = Matrix::Zero(n, n);
            if (i == j) rhs = (rep.cartan(i, 1.0) - rep.cartan(i, -1.0)) / kappa(q);
            note("ef-commutator", frob(lhs - rhs));
        }

    // Serre relations, exponent r = 1 - a_{ij}, with q-factorial weights.
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j) {
            if (i == j) continue;
            int r = 1 - affine_cartan(i, j, l);
            Matrix se = Matrix::Zero(n, n), sf = Matrix::Zero(n, n);
            for (int k = 0; k <= r; ++k) {
                Complex c = 1.0 / (q_factorial(r - k, q) * q_factorial(k, q));
                if (k % 2 == 1) c = -c;
                Matrix epow_a = Matrix::Identity(n, n), epow_b = Matrix::Identity(n, n);
                Matrix fpow_a = Matrix::Identity(n, n), fpow_b = Matrix::Identity(n, n);
                for (int t = 0; t < r - k; ++t) { epow_a = epow_a * rep.e(i); fpow_a = fpow_a * rep.f(i); }
                for (int t = 0; t < k; ++t) { epow_b = epow_b * rep.e(i); fpow_b = fpow_b * rep.f(i); }
                se += c * epow_a * rep.e(j) * epow_b;
                sf += c * fpow_a * rep.f(j) * fpow_b;
            }
            note("serre-e", frob(se));
            note("serre-f", frob(sf));
        }

    return rep_out;
}

RelationReport equivalence_with_phibar(const ModelParams& params, Complex zeta, DualSide side) {
    params.validate();
    int n = params.dim(), l = params.l;
    double s = params.s_total();
    Complex q = params.q;

    Matrix P = Matrix::Zero(n, n);
    Complex shift;
    for (int i = 1; i <= n; ++i) {
        double spre = params.s_partial(1, i);  // s_1 + ... + s_{i-1}
        double expnt = (side == DualSide::star_right) ? (-2.0 * spre / s + (i - 1))
                                                      : (2.0 * l * spre / s - (i - 1));
        Complex c = std::pow(q, expnt);
        if (i % 2 == 0) c = -c;  // (-1)^{i-1}
        P(n - i, i - 1) = c;     // E_{l-i+2, i}
    }
    shift = (side == DualSide::star_right) ? std::pow(q, 2.0 / s) : std::pow(q, -2.0 * l / s);

    Representation dual = (side == DualSide::star_right)
                              ? phi_star_rep(params, shift * zeta)
                              : star_phi_rep(params, shift * zeta);
    Representation bar = phibar_rep(params, zeta);
    Matrix Pinv = P.inverse();

    RelationReport out;
    auto note = [&](const std::string& key, double r) {
        out.per_relation[key] = std::max(out.per_relation[key], r);
        out.max_residual = std::max(out.max_residual, r);
    };
    for (int i = 0; i <= l; ++i) {
        note("e", frob(P * dual.e(i) * Pinv - bar.e(i)));
        note("f", frob(P * dual.f(i) * Pinv - bar.f(i)));
        note("cartan", frob(P * dual.cartan(i, 0.43) * Pinv - bar.cartan(i, 0.43)));
    }
    return out;
}

RelationReport double_dual_conjugation(const ModelParams& params, Complex zeta) {
    params.validate();
    int l = params.l;
    double s = params.s_total();
    Complex shift = std::pow(params.q, -2.0 * (l + 1) / s);

    Representation dd = dual_rep(dual_rep(phi_rep(params, zeta), DualSide::star_right),
                                 DualSide::star_right);
    Representation base = phi_rep(params, shift * zeta);
    XOperator X = x_operator(params);
    Matrix Xinv = X.x.inverse();

    RelationReport out;
    auto note = [&](const std::string& key, double r) {
        out.per_relation[key] = std::max(out.per_relation[key], r);
        out.max_residual = std::max(out.max_residual, r);
    };
    for (int i = 0; i <= l; ++i) {
        note("e", frob(dd.e(i) - X.x * base.e(i) * Xinv));
        note("f", frob(dd.f(i) - X.x * base.f(i) * Xinv));
        note("cartan", frob(dd.cartan(i, 0.71) - X.x * base.cartan(i, 0.71) * Xinv));
    }
    return out;
}

}  // namespace integrax
