#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "integrax/suite.hpp"

using namespace integrax;

namespace {

struct CommonOpts {
    int l = 1;
    double q_re = 0.7;
    double q_im = 0.0;
    std::vector<int> s;
    std::vector<double> phi;
    int N = 2;
    int samples = 20;
    unsigned long long seed = 1;
    int order = 80;
    double zeta_re = 1.0;
    double zeta_im = 0.0;
    std::string out;

    ModelParams params() const {
        ModelParams p = ModelParams::make(l, Complex(q_re, q_im));
        if (!s.empty()) p.s = s;
        if (!phi.empty()) p.phi = phi;
        p.validate();
        return p;
    }
    Complex zeta() const { return Complex(zeta_re, zeta_im); }
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--l", o.l, "rank: algebra sl_{l+1}");
    app->add_option("--q", o.q_re, "deformation parameter, real part");
    app->add_option("--q-im", o.q_im, "deformation parameter, imaginary part");
    app->add_option("--s", o.s, "grading integers s_0..s_l")->expected(-1);
    app->add_option("--phi", o.phi, "twist exponents Phi_1..Phi_{l+1}")->expected(-1);
    app->add_option("--N", o.N, "chain length");
    app->add_option("--samples", o.samples, "number of random spectral samples");
    app->add_option("--seed", o.seed, "random seed");
    app->add_option("--order", o.order, "series truncation order");
    app->add_option("--zeta", o.zeta_re, "spectral parameter, real part");
    app->add_option("--zeta-im", o.zeta_im, "spectral parameter, imaginary part");
    app->add_option("--out", o.out, "output file (JSON)");
}

void write_json(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << j.dump(2) << "\n";
}

BoundaryPair load_boundary(const std::string& left_path, const std::string& right_path,
                           int dim) {
    BoundaryPair b{BoundaryK::identity(dim), BoundaryK::identity(dim)};
    auto load = [](const std::string& path) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open K file: " + path);
        nlohmann::json j;
        f >> j;
        return BoundaryK::from_json(j);
    };
    if (!left_path.empty()) b.k_left = load(left_path);
    if (!right_path.empty()) b.k_right = load(right_path);
    return b;
}

int run_suite_cmd(const CommonOpts& o, const std::vector<std::string>& checks,
                  const std::map<std::string, double>& tols) {
    SuiteConfig cfg;
    cfg.params = o.params();
    cfg.N = o.N;
    cfg.sample_count = o.samples;
    cfg.seed = o.seed;
    cfg.order = o.order;
    cfg.checks = checks;
    cfg.tolerances = tols;
    SuiteReport report = run_suite(cfg);
    for (const auto& r : report.results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (r.skipped)
            std::cout << "  (skipped: " << r.note << ")";
        else
            std::cout << "  max residual " << r.max_residual << "  tolerance "
                      << r.tolerance;
        if (!r.pass && !r.note.empty() && !r.skipped) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
    }
    if (!o.out.empty()) write_json(o.out, report.to_json());
    std::cout << (report.pass ? "suite: all checks passed" : "suite: FAILURES") << "\n";
    return report.pass ? 0 : 1;
}

int dump_cmd(const CommonOpts& o, const std::string& kind, const std::string& route,
             const std::string& k_left, const std::string& k_right) {
    ModelParams p = o.params();
    int n = p.dim();
    std::vector<int> two{n, n};
    nlohmann::json out_json;
    if (kind == "r") {
        out_json = TensorOperator(r_matrix(p, o.zeta()), two).to_json();
    } else if (kind == "rcheck") {
        out_json = (permutation_operator(LegPermutation::transposition(2, 1, 2), two) *
                    TensorOperator(r_matrix(p, o.zeta()), two))
                       .to_json();
    } else if (kind == "monodromy") {
        out_json = monodromy(ChainSpec::homogeneous(p, o.N, o.zeta())).to_json();
    } else if (kind == "transfer") {
        out_json = transfer(ChainSpec::homogeneous(p, o.N, o.zeta())).to_json();
    } else if (kind == "hamiltonian") {
        if (route == "explicit")
            out_json = hamiltonian_explicit(p, o.N).to_json();
        else if (route == "xxz")
            out_json = xxz_hamiltonian(p, o.N).to_json();
        else if (route == "local-sum")
            out_json = hamiltonian_local_sum(p, o.N).to_json();
        else
            out_json = hamiltonian_logderiv(p, o.N).to_json();
    } else if (kind == "k-dressed") {
        OpenChainSpec spec =
            OpenChainSpec::homogeneous(p, o.N, o.zeta(), load_boundary(k_left, k_right, n));
        auto [kl, kr] = dress_k(spec);
        nlohmann::json j;
        j["k_left_dressed"] = kl.to_json();
        j["k_right_dressed"] = kr.to_json();
        write_json(o.out, j);
        return 0;
    } else if (kind == "open-transfer") {
        out_json = open_transfer(OpenChainSpec::homogeneous(
                                     p, o.N, o.zeta(), load_boundary(k_left, k_right, n)))
                       .to_json();
    } else {
        throw std::runtime_error("unknown dump kind: " + kind);
    }
    write_json(o.out, out_json);
    return 0;
}

int chain_transfer_commute_cmd(const CommonOpts& o, double tol) {
    ModelParams p = o.params();
    auto zs = sample_zetas(p, 2 * o.samples + o.N, o.seed);
    ChainSpec spec = ChainSpec::homogeneous(p, o.N, Complex(1.0));
    for (int k = 0; k < o.N; ++k) spec.quantum_etas[k] = zs[2 * o.samples + k];
    double worst = 0.0;
    for (int k = 0; k + 1 < 2 * o.samples; k += 2) {
        ChainSpec s1 = spec, s2 = spec;
        s1.aux_zeta = zs[k];
        s2.aux_zeta = zs[k + 1];
        TensorOperator t1 = transfer(s1), t2 = transfer(s2);
        worst = std::max(worst, (t1 * t2 - t2 * t1).norm());
    }
    std::cout << "transfer commutator max residual " << worst << " over " << o.samples
              << " pairs (tolerance " << tol << ")\n";
    return worst < tol ? 0 : 1;
}

int chain_hamiltonian_cmd(const CommonOpts& o, const std::string& route) {
    ModelParams p = o.params();
    nlohmann::json j;
    if (route == "explicit")
        j = hamiltonian_explicit(p, o.N).to_json();
    else if (route == "xxz")
        j = xxz_hamiltonian(p, o.N).to_json();
    else if (route == "local-sum")
        j = hamiltonian_local_sum(p, o.N).to_json();
    else if (route == "logderiv")
        j = hamiltonian_logderiv(p, o.N).to_json();
    else
        throw std::runtime_error("unknown route: " + route);
    write_json(o.out, j);
    return 0;
}

int boundary_check_k_cmd(const CommonOpts& o, const std::string& k_left,
                         const std::string& k_right, double tol) {
    ModelParams p = o.params();
    BoundaryPair b = load_boundary(k_left, k_right, p.dim());
    auto zs = sample_zetas(p, 2 * o.samples, o.seed);
    double worst_l = 0.0, worst_r = 0.0;
    for (int k = 0; k + 1 < static_cast<int>(zs.size()); k += 2) {
        if (!k_left.empty())
            worst_l = std::max(worst_l,
                               reflection_residual_left(p, b.k_left, zs[k], zs[k + 1]));
        if (!k_right.empty())
            worst_r = std::max(worst_r,
                               reflection_residual_right(p, b.k_right, zs[k], zs[k + 1]));
    }
    if (k_left.empty() && k_right.empty())
        throw std::runtime_error("provide --k-left and/or --k-right");
    if (!k_left.empty())
        std::cout << "left reflection max residual " << worst_l << "\n";
    if (!k_right.empty())
        std::cout << "right reflection max residual " << worst_r << "\n";
    return std::max(worst_l, worst_r) < tol ? 0 : 1;
}

int boundary_solve_k_cmd(const CommonOpts& o, const std::string& side, int degree,
                         bool nontrivial) {
    ModelParams p = o.params();
    auto zs = sample_zetas(p, std::max(3, std::min(o.samples, 5)), o.seed + 101);
    DiagonalKSolveOptions opts;
    opts.degree = degree;
    opts.seed = static_cast<unsigned>(o.seed);
    opts.require_nontrivial = nontrivial;
    DiagonalKSolution sol = solve_diagonal_k(p, side.at(0), zs, opts);
    std::cout << "solved diagonal K (" << side << "), residual " << sol.residual << "\n";
    write_json(o.out, sol.k.to_json(side));
    return 0;
}

int boundary_open_commute_cmd(const CommonOpts& o, const std::string& k_left,
                              const std::string& k_right, double tol) {
    ModelParams p = o.params();
    OpenChainSpec spec = OpenChainSpec::homogeneous(p, o.N, Complex(1.0),
                                                    load_boundary(k_left, k_right, p.dim()));
    auto zs = sample_zetas(p, 2 * o.samples, o.seed);
    double worst = 0.0;
    for (int k = 0; k + 1 < 2 * o.samples; k += 2) {
        OpenChainSpec s1 = spec, s2 = spec;
        s1.aux_zeta = zs[k];
        s2.aux_zeta = zs[k + 1];
        TensorOperator t1 = open_transfer(s1), t2 = open_transfer(s2);
        worst = std::max(worst, (t1 * t2 - t2 * t1).norm());
    }
    std::cout << "open transfer commutator max residual " << worst << " (tolerance " << tol
              << ")\n";
    return worst < tol ? 0 : 1;
}

int boundary_open_hamiltonian_cmd(const CommonOpts& o, const std::string& k_left,
                                  const std::string& k_right) {
    ModelParams p = o.params();
    TensorOperator h = open_hamiltonian(p, o.N, load_boundary(k_left, k_right, p.dim()));
    write_json(o.out, h.to_json());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrability objects of the q-deformed sl(l+1) loop algebra: "
                 "construction, verification suite, matrix dumps"};
    app.require_subcommand(1);

    CommonOpts o;
    std::vector<std::string> checks;
    std::map<std::string, double> tols;
    std::string kind = "r", route = "logderiv", k_left, k_right, side = "L";
    int degree = 1;
    bool nontrivial = false;
    double tol = 1e-9;

    auto* suite = app.add_subcommand("suite", "run the verification suite");
    add_common(suite, o);
    suite->add_option("--check", checks, "run only the named checks")->expected(-1);
    for (const auto& name : suite_check_names()) {
        suite->add_option_function<double>(
            "--tol-" + name, [&tols, name](double v) { tols[name] = v; },
            "tolerance override for " + name);
    }

    auto* dump = app.add_subcommand("dump", "write an operator matrix as JSON");
    add_common(dump, o);
    dump->add_option("--kind", kind,
                     "r|rcheck|transfer|hamiltonian|monodromy|k-dressed|open-transfer");
    dump->add_option("--route", route, "hamiltonian route: logderiv|explicit|xxz|local-sum");
    dump->add_option("--k-left", k_left, "left boundary K file");
    dump->add_option("--k-right", k_right, "right boundary K file");

    auto* chain = app.add_subcommand("chain", "closed-chain operations");
    chain->require_subcommand(1);
    auto* tc = chain->add_subcommand("transfer-commute", "commutator residual sweep");
    add_common(tc, o);
    tc->add_option("--tol", tol, "pass/fail tolerance");
    auto* ch = chain->add_subcommand("hamiltonian", "dump the Hamiltonian");
    add_common(ch, o);
    ch->add_option("--route", route, "logderiv|explicit|xxz|local-sum");

    auto* boundary = app.add_subcommand("boundary", "open-chain operations");
    boundary->require_subcommand(1);
    auto* bk = boundary->add_subcommand("check-k", "reflection residuals of K files");
    add_common(bk, o);
    bk->add_option("--k-left", k_left, "left boundary K file");
    bk->add_option("--k-right", k_right, "right boundary K file");
    bk->add_option("--tol", tol, "pass/fail tolerance");
    auto* bs = boundary->add_subcommand("solve-k", "fit a diagonal K ansatz");
    add_common(bs, o);
    bs->add_option("--side", side, "L or R");
    bs->add_option("--degree", degree, "polynomial degree in zeta^s");
    bs->add_flag("--nontrivial", nontrivial, "reject the scalar family");
    auto* bc = boundary->add_subcommand("open-commute", "open transfer commutators");
    add_common(bc, o);
    bc->add_option("--k-left", k_left, "left boundary K file");
    bc->add_option("--k-right", k_right, "right boundary K file");
    bc->add_option("--tol", tol, "pass/fail tolerance");
    auto* bh = boundary->add_subcommand("open-hamiltonian", "dump the open Hamiltonian");
    add_common(bh, o);
    bh->add_option("--k-left", k_left, "left boundary K file");
    bh->add_option("--k-right", k_right, "right boundary K file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*suite) return run_suite_cmd(o, checks, tols);
        if (*dump) return dump_cmd(o, kind, route, k_left, k_right);
        if (*tc) return chain_transfer_commute_cmd(o, tol);
        if (*ch) return chain_hamiltonian_cmd(o, route);
        if (*bk) return boundary_check_k_cmd(o, k_left, k_right, tol);
        if (*bs) return boundary_solve_k_cmd(o, side, degree, nontrivial);
        if (*bc) return boundary_open_commute_cmd(o, k_left, k_right, tol);
        if (*bh) return boundary_open_hamiltonian_cmd(o, k_left, k_right);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
