#include "integrax/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace integrax {

namespace {

Matrix unit(int n, int r, int c) {
    Matrix m = Matrix::Zero(n, n);
    m(r - 1, c - 1) = 1.0;
    return m;
}

// Inverse of a monomial matrix (one nonzero entry per row and column).
Matrix monomial_inverse(const Matrix& m) {
    Eigen::Index side = m.rows();
    Matrix inv = Matrix::Zero(side, side);
    for (Eigen::Index c = 0; c < side; ++c) {
        int hits = 0;
        for (Eigen::Index r = 0; r < side; ++r) {
            Complex v = m(r, c);
            if (std::abs(v) < 1e-13) continue;
            ++hits;
            inv(c, r) = 1.0 / v;
        }
        if (hits != 1) throw std::runtime_error("matrix is not monomial");
    }
    return inv;
}

}  // namespace

ChainSpec ChainSpec::homogeneous(const ModelParams& params, int N, Complex zeta) {
    ChainSpec spec;
    spec.N = N;
    spec.params = params;
    spec.aux_zeta = zeta;
    spec.quantum_etas.assign(N, Complex(1.0, 0.0));
    spec.validate();
    return spec;
}

void ChainSpec::validate() const {
    params.validate();
    if (N < 0) throw std::invalid_argument("chain length must be >= 0");
    if (static_cast<int>(quantum_etas.size()) != N)
        throw std::invalid_argument("inhomogeneity list must have N entries");
}

std::vector<int> ChainSpec::chain_dims() const {
    return std::vector<int>(N + 1, params.dim());
}

TensorOperator monodromy(const ChainSpec& spec) {
    spec.validate();
    auto dims = spec.chain_dims();
    std::vector<int> two{spec.params.dim(), spec.params.dim()};
    TensorOperator m = TensorOperator::identity(dims);
    for (int k = spec.N; k >= 1; --k) {
        TensorOperator rk(r_matrix(spec.params, spec.aux_zeta / spec.quantum_etas[k - 1]), two);
        m = m * embed(rk, {1, k + 1}, dims);
    }
    return m;
}

TensorOperator monodromy_inverse(const ChainSpec& spec) {
    spec.validate();
    auto dims = spec.chain_dims();
    std::vector<int> two{spec.params.dim(), spec.params.dim()};
    TensorOperator m = TensorOperator::identity(dims);
    for (int k = 1; k <= spec.N; ++k) {
        TensorOperator rk(r_matrix(spec.params, spec.aux_zeta / spec.quantum_etas[k - 1]), two);
        m = m * embed(rk.inverse(), {1, k + 1}, dims);
    }
    return m;
}

double rmm_residual(const ChainSpec& spec, Complex zeta1, Complex zeta2) {
    spec.validate();
    int n = spec.params.dim();
    std::vector<int> dims(spec.N + 2, n);
    std::vector<int> two{n, n};

    auto mono = [&](int aux_leg, Complex zeta) {
        TensorOperator m = TensorOperator::identity(dims);
        for (int k = spec.N; k >= 1; --k) {
            TensorOperator rk(r_matrix(spec.params, zeta / spec.quantum_etas[k - 1]), two);
            m = m * embed(rk, {aux_leg, k + 2}, dims);
        }
        return m;
    };
    TensorOperator m1 = mono(1, zeta1);
    TensorOperator m2 = mono(2, zeta2);
    TensorOperator r12 = embed(TensorOperator(r_matrix(spec.params, zeta1 / zeta2), two), {1, 2},
                               dims);
    return (r12 * m1 * m2 - m2 * m1 * r12).norm();
}

TensorOperator transfer(const ChainSpec& spec) {
    TensorOperator m = monodromy(spec);
    TensorOperator a = embed(twist_operator(spec.params).a, 1, spec.chain_dims());
    return partial_trace(m * a, 1);
}

LocalHamiltonianDensity local_density(const ModelParams& params) {
    std::vector<int> two{params.dim(), params.dim()};
    TensorOperator p = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
    TensorOperator rp(r_matrix_log_derivative_at_one(params), two);
    return LocalHamiltonianDensity{p * rp};
}

TensorOperator hamiltonian_logderiv(const ModelParams& params, int N) {
    if (N < 2) throw std::invalid_argument("chain length must be >= 2");
    params.validate();
    int n = params.dim();
    std::vector<int> dims(N + 1, n);
    std::vector<int> two{n, n};

    TensorOperator p2 = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
    TensorOperator rp(r_matrix_log_derivative_at_one(params), two);
    TensorOperator a = embed(twist_operator(params).a, 1, dims);

    // T'(1): product rule over the N homogeneous vertices, R(1) = P.
    std::vector<int> qdims(N, n);
    TensorOperator tprime(Matrix::Zero(a.side() / n, a.side() / n), qdims);
    for (int d = 1; d <= N; ++d) {
        TensorOperator m = TensorOperator::identity(dims);
        for (int k = N; k >= 1; --k)
            m = m * embed(k == d ? rp : p2, {1, k + 1}, dims);
        tprime = tprime + partial_trace(m * a, 1);
    }

    ChainSpec at_one = ChainSpec::homogeneous(params, N, 1.0);
    Matrix t1_inv = monomial_inverse(transfer(at_one).matrix());
    return TensorOperator(tprime.matrix() * t1_inv, qdims);
}

TensorOperator hamiltonian_local_sum(const ModelParams& params, int N) {
    if (N < 2) throw std::invalid_argument("chain length must be >= 2");
    params.validate();
    int n = params.dim();
    std::vector<int> dims(N, n);
    TensorOperator h = local_density(params).h;

    long long side = 1;
    for (int k = 0; k < N; ++k) side *= n;
    TensorOperator out(Matrix::Zero(side, side), dims);
    for (int i = 1; i < N; ++i) out = out + embed(h, {i, i + 1}, dims);
    TensorOperator wrap = embed(h, {N, 1}, dims);
    TensorOperator a = embed(twist_operator(params).a, 1, dims);
    TensorOperator ainv = embed(Matrix(twist_operator(params).a.inverse()), 1, dims);
    return out + a * wrap * ainv;
}

TensorOperator hamiltonian_explicit(const ModelParams& params, int N) {
    if (N < 2) throw std::invalid_argument("chain length must be >= 2");
    params.validate();
    int n = params.dim();
    Complex q = params.q;
    double s = params.s_total();
    std::vector<int> dims(N, n);

    auto bond_term = [&](bool wrap) {
        Matrix h2 = Matrix::Zero(n * n, n * n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                Complex w = 1.0;
                if (wrap) w = std::pow(q, params.phi[i - 1] - params.phi[j - 1]);
                h2 -= w * kron(unit(n, j, i), unit(n, i, j));
                h2 += (i < j ? q : 1.0 / q) * kron(unit(n, j, j), unit(n, i, i));
            }
        return TensorOperator(h2, {n, n});
    };

    long long side = 1;
    for (int k = 0; k < N; ++k) side *= n;
    TensorOperator out(Matrix::Zero(side, side), dims);
    for (int k = 1; k < N; ++k) out = out + embed(bond_term(false), {k, k + 1}, dims);
    out = out + embed(bond_term(true), {N, 1}, dims);
    return out * (-s / kappa(q));
}

TensorOperator xxz_hamiltonian(const ModelParams& params, int N) {
    if (params.l != 1) throw std::invalid_argument("the XXZ form requires l = 1");
    if (N < 2) throw std::invalid_argument("chain length must be >= 2");
    params.validate();
    Complex q = params.q;
    double Phi = params.phi[0] - params.phi[1];
    std::vector<int> dims(N, 2);

    Matrix sp = unit(2, 1, 2), sm = unit(2, 2, 1);
    Matrix sz = unit(2, 1, 1) - unit(2, 2, 2);
    Matrix id2 = Matrix::Identity(2, 2);
    Complex delta = (q + 1.0 / q) / 4.0;

    auto bond_term = [&](bool wrap) {
        Complex wp = wrap ? std::pow(q, -Phi) : Complex(1.0);
        Complex wm = wrap ? std::pow(q, Phi) : Complex(1.0);
        Matrix h2 = wp * kron(sp, sm) + wm * kron(sm, sp) +
                    delta * (kron(sz, sz) - kron(id2, id2));
        return TensorOperator(h2, {2, 2});
    };

    long long side = 1LL << N;
    TensorOperator out(Matrix::Zero(side, side), dims);
    for (int k = 1; k < N; ++k) out = out + embed(bond_term(false), {k, k + 1}, dims);
    out = out + embed(bond_term(true), {N, 1}, dims);
    return out * Complex(-1.0);
}

}  // namespace integrax
