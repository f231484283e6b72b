#include "integrax/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace integrax {

namespace {

const std::map<std::string, double> kDefaultTolerances = {
    {"initial-condition", 1e-14},
    {"ybe", 1e-10},
    {"ybe-variants", 1e-10},
    {"unitarity", 1e-11},
    {"rho-crossing", 1e-8},
    {"skew-inverse", 1e-12},
    {"crossing", 1e-10},
    {"sl2-extra", 1e-11},
    {"relations", 1e-12},
    {"rmm", 1e-10},
    {"transfer-commute", 1e-10},
    {"hamiltonian", 1e-9},
    {"density-fd", 1e-7},
    {"reflection", 1e-11},
    {"dressed-reflection", 1e-10},
    {"open-transfer", 1e-12},
    {"open-commute", 1e-9},
    {"open-hamiltonian", 1e-6},
};

const std::vector<std::string> kCheckOrder = {
    "initial-condition", "ybe",        "ybe-variants",       "unitarity",
    "rho-crossing",      "skew-inverse", "crossing",         "sl2-extra",
    "relations",         "rmm",        "transfer-commute",   "hamiltonian",
    "density-fd",        "reflection", "dressed-reflection", "open-transfer",
    "open-commute",      "open-hamiltonian",
};

nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

bool sl2_homogeneous(const ModelParams& p) {
    if (p.l != 1) return false;
    for (int si : p.s)
        if (si != p.s[0]) return false;
    return true;
}

struct Recorder {
    CheckResult res;
    explicit Recorder(const std::string& name, double tol) {
        res.name = name;
        res.tolerance = tol;
    }
    void add(const std::vector<Complex>& zetas, double residual,
             const nlohmann::json& extra = nullptr) {
        nlohmann::json s;
        s["zetas"] = nlohmann::json::array();
        for (Complex z : zetas) s["zetas"].push_back(cjson(z));
        s["residual"] = residual;
        if (!extra.is_null())
            for (auto it = extra.begin(); it != extra.end(); ++it) s[it.key()] = it.value();
        res.samples.push_back(s);
        res.max_residual = std::max(res.max_residual, residual);
    }
    CheckResult finish() {
        res.pass = res.skipped || res.max_residual < res.tolerance;
        return res;
    }
};

BoundaryPair identity_boundary(const ModelParams& p) {
    return BoundaryPair{BoundaryK::identity(p.dim()), BoundaryK::identity(p.dim())};
}

}  // namespace

void SuiteConfig::validate() const {
    params.validate();
    if (N < 2) throw std::invalid_argument("suite chain length must be >= 2");
    if (sample_count < 1) throw std::invalid_argument("sample count must be positive");
    if (order < 4) throw std::invalid_argument("series order must be >= 4");
    for (const auto& [name, tol] : tolerances) {
        if (!kDefaultTolerances.count(name))
            throw std::invalid_argument("unknown check in tolerance override: " + name);
        if (tol <= 0.0) throw std::invalid_argument("tolerances must be positive");
    }
    for (const auto& name : checks)
        if (std::find(kCheckOrder.begin(), kCheckOrder.end(), name) == kCheckOrder.end())
            throw std::invalid_argument("unknown check: " + name);
}

const std::vector<std::string>& suite_check_names() { return kCheckOrder; }

double suite_default_tolerance(const std::string& check) {
    auto it = kDefaultTolerances.find(check);
    if (it == kDefaultTolerances.end()) throw std::invalid_argument("unknown check: " + check);
    return it->second;
}

std::vector<Complex> sample_zetas(const ModelParams& params, int count,
                                  unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.5, 1.5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<Complex> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 1000 * count) throw std::runtime_error("sampling kept hitting poles");
        Complex z = std::polar(radius(rng), angle(rng));
        try {
            r_matrix(params, z);
            r_matrix(params, 1.0 / z);
        } catch (const std::exception&) {
            continue;
        }
        out.push_back(z);
    }
    return out;
}

namespace {

using CheckFn = CheckResult (*)(const SuiteConfig&, double);

CheckResult check_initial_condition(const SuiteConfig& cfg, double tol) {
    Recorder rec("initial-condition", tol);
    int n = cfg.params.dim();
    std::vector<int> two{n, n};
    TensorOperator r(r_matrix(cfg.params, Complex(1.0)), two);
    TensorOperator p = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
    rec.add({Complex(1.0)}, (r - p).norm(), {{"relation", "r-equals-p"}});
    rec.add({Complex(1.0)}, (p * r - TensorOperator::identity(two)).norm(),
            {{"relation", "rcheck-equals-id"}});
    return rec.finish();
}

CheckResult check_ybe(const SuiteConfig& cfg, double tol) {
    Recorder rec("ybe", tol);
    auto zs = sample_zetas(cfg.params, 3 * cfg.sample_count, cfg.seed + 11);
    for (int k = 0; k + 2 < static_cast<int>(zs.size()); k += 3) {
        try {
            rec.add({zs[k], zs[k + 1], zs[k + 2]},
                    ybe_residual(cfg.params, zs[k], zs[k + 1], zs[k + 2]));
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_ybe_variants(const SuiteConfig& cfg, double tol) {
    Recorder rec("ybe-variants", tol);
    int count = std::min(cfg.sample_count, 8);
    auto zs = sample_zetas(cfg.params, 3 * count, cfg.seed + 13);
    for (int k = 0; k + 2 < static_cast<int>(zs.size()); k += 3) {
        try {
            auto rep = ybe_variant_residuals(cfg.params, zs[k], zs[k + 1], zs[k + 2]);
            nlohmann::json extra;
            for (const auto& [name, r] : rep.per_relation) extra[name] = r;
            rec.add({zs[k], zs[k + 1], zs[k + 2]}, rep.max_residual, extra);
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_unitarity(const SuiteConfig& cfg, double tol) {
    Recorder rec("unitarity", tol);
    auto zs = sample_zetas(cfg.params, 2 * cfg.sample_count, cfg.seed + 17);
    for (int k = 0; k + 1 < static_cast<int>(zs.size()); k += 2) {
        try {
            UnitarityResult u = unitarity(cfg.params, zs[k], zs[k + 1]);
            UnitarityResult v = unitarity(cfg.params, zs[k + 1], zs[k]);
            double r = std::max({u.off_norm, v.off_norm, std::abs(u.c - v.c),
                                 std::abs(u.c - 1.0)});
            rec.add({zs[k], zs[k + 1]}, r, {{"scalar", cjson(u.c)}});
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_rho_crossing(const SuiteConfig& cfg, double tol) {
    Recorder rec("rho-crossing", tol);
    // The series for rho converges only for small |zeta^s|; draw phases from
    // the annulus samples and scale the modulus into the convergence region.
    double s = cfg.params.s_total();
    double cap = 0.5;
    auto zs = sample_zetas(cfg.params, cfg.sample_count, cfg.seed + 19);
    std::mt19937_64 rng(cfg.seed + 20);
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    for (Complex z : zs) {
        double target = std::pow(cap * mag(rng), 1.0 / s);
        Complex w = z / std::abs(z) * target;
        try {
            rec.add({w}, rho_crossing_residual(cfg.params, w, cfg.order));
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_skew_inverse(const SuiteConfig& cfg, double tol) {
    Recorder rec("skew-inverse", tol);
    int n = cfg.params.dim();
    std::vector<int> two{n, n};
    TensorOperator id = TensorOperator::identity(two);
    auto zs = sample_zetas(cfg.params, cfg.sample_count, cfg.seed + 23);
    for (Complex z : zs) {
        try {
            TensorOperator r(r_matrix(cfg.params, z), two);
            TensorOperator rinv = r.inverse();
            TensorOperator t1 = skew_inverse_tilde_inv(r, 1);
            TensorOperator t2 = skew_inverse_tilde_inv(r, 2);
            TensorOperator d1 = skew_inverse_dtilde(rinv, 1);
            TensorOperator d2 = skew_inverse_dtilde(rinv, 2);
            double res = std::max({
                (partial_transpose(t1, 1) * partial_transpose(r, 1) - id).norm(),
                (partial_transpose(r, 1) * partial_transpose(t1, 1) - id).norm(),
                (partial_transpose(t1, 2) * partial_transpose(r, 2) - id).norm(),
                (partial_transpose(d1, 1) * partial_transpose(rinv, 1) - id).norm(),
                (partial_transpose(rinv, 2) * partial_transpose(d1, 2) - id).norm(),
                (t1 - t2).norm(),
                (d1 - d2).norm(),
            });
            rec.add({z}, res);
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_crossing(const SuiteConfig& cfg, double tol) {
    Recorder rec("crossing", tol);
    auto zs = sample_zetas(cfg.params, 2 * std::min(cfg.sample_count, 10), cfg.seed + 29);
    for (int k = 0; k + 1 < static_cast<int>(zs.size()); k += 2) {
        try {
            auto rep = crossing_suite(cfg.params, zs[k], zs[k + 1]);
            nlohmann::json extra;
            for (const auto& [name, r] : rep.per_relation) extra[name] = r;
            rec.add({zs[k], zs[k + 1]}, rep.max_residual, extra);
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_sl2_extra(const SuiteConfig& cfg, double tol) {
    Recorder rec("sl2-extra", tol);
    if (cfg.params.l != 1) {
        rec.res.skipped = true;
        rec.res.note = "requires l = 1";
        return rec.finish();
    }
    auto zs = sample_zetas(cfg.params, 2 * cfg.sample_count, cfg.seed + 31);
    for (int k = 0; k + 1 < static_cast<int>(zs.size()); k += 2) {
        try {
            auto rep = sl2_extra_crossing(cfg.params, zs[k], zs[k + 1]);
            rec.add({zs[k], zs[k + 1]}, rep.max_residual);
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_relations(const SuiteConfig& cfg, double tol) {
    Recorder rec("relations", tol);
    auto zs = sample_zetas(cfg.params, std::min(cfg.sample_count, 5), cfg.seed + 37);
    for (Complex z : zs) {
        for (RepLabel label : {RepLabel::phi, RepLabel::phibar, RepLabel::phi_star,
                               RepLabel::star_phi}) {
            auto rep = verify_defining_relations(rep_by_label(label, cfg.params, z));
            rec.add({z}, rep.max_residual, {{"representation", to_string(label)}});
        }
        for (DualSide side : {DualSide::star_right, DualSide::star_left}) {
            auto eq = equivalence_with_phibar(cfg.params, z, side);
            rec.add({z}, eq.max_residual,
                    {{"relation", side == DualSide::star_right ? "dual-right-equivalence"
                                                               : "dual-left-equivalence"}});
        }
        rec.add({z}, double_dual_conjugation(cfg.params, z).max_residual,
                {{"relation", "double-dual"}});
    }
    return rec.finish();
}

CheckResult check_rmm(const SuiteConfig& cfg, double tol) {
    Recorder rec("rmm", tol);
    int count = std::min(cfg.sample_count, 6);
    auto zs = sample_zetas(cfg.params, 2 * count + cfg.N, cfg.seed + 41);
    ChainSpec spec = ChainSpec::homogeneous(cfg.params, std::min(cfg.N, 3), Complex(1.0));
    for (int k = 0; k < spec.N; ++k) spec.quantum_etas[k] = zs[2 * count + k];
    for (int k = 0; k + 1 < 2 * count; k += 2) {
        try {
            rec.add({zs[k], zs[k + 1]}, rmm_residual(spec, zs[k], zs[k + 1]));
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_transfer_commute(const SuiteConfig& cfg, double tol) {
    Recorder rec("transfer-commute", tol);
    int count = std::min(cfg.sample_count, 6);
    auto zs = sample_zetas(cfg.params, 2 * count + cfg.N, cfg.seed + 43);
    ChainSpec spec = ChainSpec::homogeneous(cfg.params, cfg.N, Complex(1.0));
    for (int k = 0; k < cfg.N; ++k) spec.quantum_etas[k] = zs[2 * count + k];
    for (int k = 0; k + 1 < 2 * count; k += 2) {
        try {
            ChainSpec s1 = spec, s2 = spec;
            s1.aux_zeta = zs[k];
            s2.aux_zeta = zs[k + 1];
            TensorOperator t1 = transfer(s1), t2 = transfer(s2);
            rec.add({zs[k], zs[k + 1]}, (t1 * t2 - t2 * t1).norm());
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_hamiltonian(const SuiteConfig& cfg, double tol) {
    Recorder rec("hamiltonian", tol);
    int N = std::min(cfg.N, 3);
    TensorOperator hl = hamiltonian_logderiv(cfg.params, N);
    TensorOperator hs = hamiltonian_local_sum(cfg.params, N);
    TensorOperator he = hamiltonian_explicit(cfg.params, N);
    rec.add({}, (hl - hs).norm(), {{"relation", "logderiv-vs-local-sum"}});
    rec.add({}, (hs - he).norm(), {{"relation", "local-sum-vs-explicit"}});
    if (cfg.params.l == 1) {
        TensorOperator hx = xxz_hamiltonian(cfg.params, N);
        double scale = -cfg.params.s_total();
        rec.add({}, (he - hx * (scale / kappa(cfg.params.q))).norm(),
                {{"relation", "explicit-vs-xxz"}});
    }
    return rec.finish();
}

CheckResult check_density_fd(const SuiteConfig& cfg, double tol) {
    // Analytic two-site density against a finite-difference derivative of
    // P R(zeta|1) at zeta = 1 (step-limited accuracy).
    Recorder rec("density-fd", tol);
    int n = cfg.params.dim();
    std::vector<int> two{n, n};
    double h = 1e-6;
    Matrix fd = (r_matrix(cfg.params, Complex(1.0 + h)) -
                 r_matrix(cfg.params, Complex(1.0 - h))) /
                (2.0 * h);
    TensorOperator p = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
    rec.add({}, (local_density(cfg.params).h - p * TensorOperator(fd, two)).norm());
    return rec.finish();
}

CheckResult check_reflection(const SuiteConfig& cfg, double tol) {
    Recorder rec("reflection", tol);
    if (!sl2_homogeneous(cfg.params)) {
        rec.res.skipped = true;
        rec.res.note = "identity boundary solves the reflection equations only for the "
                       "homogeneous l = 1 grading";
        return rec.finish();
    }
    BoundaryPair b = identity_boundary(cfg.params);
    auto zs = sample_zetas(cfg.params, 2 * cfg.sample_count, cfg.seed + 47);
    for (int k = 0; k + 1 < static_cast<int>(zs.size()); k += 2) {
        try {
            double rl = reflection_residual_left(cfg.params, b.k_left, zs[k], zs[k + 1]);
            double rr = reflection_residual_right(cfg.params, b.k_right, zs[k], zs[k + 1]);
            rec.add({zs[k], zs[k + 1]}, std::max(rl, rr));
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_dressed_reflection(const SuiteConfig& cfg, double tol) {
    Recorder rec("dressed-reflection", tol);
    if (!sl2_homogeneous(cfg.params)) {
        rec.res.skipped = true;
        rec.res.note = "uses the identity boundary pair";
        return rec.finish();
    }
    int count = std::min(cfg.sample_count, 4);
    auto zs = sample_zetas(cfg.params, 2 * count + 2, cfg.seed + 53);
    OpenChainSpec spec = OpenChainSpec::homogeneous(cfg.params, 2, Complex(1.0),
                                                    identity_boundary(cfg.params));
    spec.etas = {zs[2 * count], zs[2 * count + 1]};
    for (int k = 0; k + 1 < 2 * count; k += 2) {
        try {
            double rl = dressed_reflection_residual_left(spec, zs[k], zs[k + 1]);
            double rr = dressed_reflection_residual_right(spec, zs[k], zs[k + 1]);
            rec.add({zs[k], zs[k + 1]}, std::max(rl, rr));
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_open_transfer(const SuiteConfig& cfg, double tol) {
    Recorder rec("open-transfer", tol);
    if (!sl2_homogeneous(cfg.params)) {
        rec.res.skipped = true;
        rec.res.note = "uses the identity boundary pair";
        return rec.finish();
    }
    int N = std::min(cfg.N, 3);
    OpenChainSpec spec = OpenChainSpec::homogeneous(cfg.params, N, Complex(1.0),
                                                    identity_boundary(cfg.params));
    // T(1) = tr K^R(1) * (K^L(1))^{(N)}.
    TensorOperator t1 = open_transfer(spec);
    std::vector<int> qdims(N, cfg.params.dim());
    Matrix kr = spec.boundary.k_right(Complex(1.0));
    TensorOperator expected =
        embed(spec.boundary.k_left(Complex(1.0)), N, qdims) * kr.trace();
    rec.add({Complex(1.0)}, (t1 - expected).norm(), {{"relation", "value-at-one"}});
    auto zs = sample_zetas(cfg.params, 2, cfg.seed + 59);
    for (Complex z : zs) {
        try {
            spec.aux_zeta = z;
            TensorOperator t = open_transfer(spec);
            for (int m = 0; m <= N; ++m)
                rec.add({z}, (t - open_transfer_split(spec, m)).norm(),
                        {{"relation", "split-" + std::to_string(m)}});
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_open_commute(const SuiteConfig& cfg, double tol) {
    Recorder rec("open-commute", tol);
    if (!sl2_homogeneous(cfg.params)) {
        rec.res.skipped = true;
        rec.res.note = "uses the identity boundary pair";
        return rec.finish();
    }
    int count = std::min(cfg.sample_count, 5);
    auto zs = sample_zetas(cfg.params, 2 * count, cfg.seed + 61);
    OpenChainSpec spec = OpenChainSpec::homogeneous(cfg.params, std::min(cfg.N, 3),
                                                    Complex(1.0),
                                                    identity_boundary(cfg.params));
    for (int k = 0; k + 1 < 2 * count; k += 2) {
        try {
            OpenChainSpec s1 = spec, s2 = spec;
            s1.aux_zeta = zs[k];
            s2.aux_zeta = zs[k + 1];
            TensorOperator t1 = open_transfer(s1), t2 = open_transfer(s2);
            rec.add({zs[k], zs[k + 1]}, (t1 * t2 - t2 * t1).norm());
        } catch (const std::exception&) {
        }
    }
    return rec.finish();
}

CheckResult check_open_hamiltonian(const SuiteConfig& cfg, double tol) {
    Recorder rec("open-hamiltonian", tol);
    if (!sl2_homogeneous(cfg.params)) {
        rec.res.skipped = true;
        rec.res.note = "uses the identity boundary pair";
        return rec.finish();
    }
    int N = std::min(cfg.N, 3);
    BoundaryPair b = identity_boundary(cfg.params);
    OpenChainSpec spec = OpenChainSpec::homogeneous(cfg.params, N, Complex(1.0), b);
    TensorOperator hf = open_hamiltonian(cfg.params, N, b);
    double h = 1e-5;
    OpenChainSpec sp = spec, sm = spec;
    sp.aux_zeta = Complex(1.0 + h);
    sm.aux_zeta = Complex(1.0 - h);
    TensorOperator tp = open_transfer(sp), tm = open_transfer(sm);
    TensorOperator t1 = open_transfer(spec);
    Matrix fd = (tp.matrix() - tm.matrix()) / (2.0 * h) * t1.matrix().inverse();
    rec.add({Complex(1.0)}, (hf.matrix() - fd).norm());
    return rec.finish();
}

const std::map<std::string, CheckFn> kCheckFns = {
    {"initial-condition", check_initial_condition},
    {"ybe", check_ybe},
    {"ybe-variants", check_ybe_variants},
    {"unitarity", check_unitarity},
    {"rho-crossing", check_rho_crossing},
    {"skew-inverse", check_skew_inverse},
    {"crossing", check_crossing},
    {"sl2-extra", check_sl2_extra},
    {"relations", check_relations},
    {"rmm", check_rmm},
    {"transfer-commute", check_transfer_commute},
    {"hamiltonian", check_hamiltonian},
    {"density-fd", check_density_fd},
    {"reflection", check_reflection},
    {"dressed-reflection", check_dressed_reflection},
    {"open-transfer", check_open_transfer},
    {"open-commute", check_open_commute},
    {"open-hamiltonian", check_open_hamiltonian},
};

}  // namespace

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json j;
    j["config"] = config_echo;
    j["pass"] = pass;
    j["wall_time_ms"] = wall_time_ms;
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json c;
        c["name"] = r.name;
        c["tolerance"] = r.tolerance;
        c["max_residual"] = r.max_residual;
        c["pass"] = r.pass;
        if (r.skipped) {
            c["skipped"] = true;
            c["note"] = r.note;
        }
        c["samples"] = r.samples;
        j["checks"].push_back(c);
    }
    return j;
}

SuiteReport run_suite(const SuiteConfig& config) {
    config.validate();
    auto start = std::chrono::steady_clock::now();

    SuiteReport report;
    report.config_echo = {
        {"params", config.params.to_json()},
        {"N", config.N},
        {"samples", config.sample_count},
        {"seed", config.seed},
        {"order", config.order},
    };

    std::vector<std::string> selected =
        config.checks.empty() ? kCheckOrder : config.checks;
    for (const auto& name : kCheckOrder) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
        double tol = config.tolerances.count(name) ? config.tolerances.at(name)
                                                   : kDefaultTolerances.at(name);
        CheckResult res;
        try {
            res = kCheckFns.at(name)(config, tol);
        } catch (const std::exception& err) {
            res.name = name;
            res.tolerance = tol;
            res.pass = false;
            res.note = err.what();
            res.max_residual = std::numeric_limits<double>::infinity();
        }
        report.pass = report.pass && res.pass;
        report.results.push_back(res);
    }

    report.wall_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

}  // namespace integrax
