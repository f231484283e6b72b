#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "integrax/suite.hpp"

using namespace integrax;

namespace {

std::string binary() {
    const char* p = std::getenv("INTEGRAX_BIN");
    REQUIRE(p != nullptr);
    return p;
}

int run(const std::string& args) {
    std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    nlohmann::json j;
    f >> j;
    return j;
}

}  // namespace

TEST_CASE("dump r at coinciding parameters reloads as the permutation") {
    std::string out = "cli_dump_r.json";
    REQUIRE(run("dump --kind r --zeta 1 --out " + out) == 0);
    TensorOperator r = TensorOperator::from_json(read_json(out));
    TensorOperator perm =
        permutation_operator(LegPermutation::transposition(2, 1, 2), {2, 2});
    CHECK((r - perm).norm() == 0.0);
}

TEST_CASE("dump round trip is bit-identical") {
    std::string a = "cli_dump_a.json", b = "cli_dump_b.json";
    std::string args = " --kind transfer --l 2 --N 2 --zeta 0.9 --zeta-im 0.2 --out ";
    REQUIRE(run("dump" + args + a) == 0);
    REQUIRE(run("dump" + args + b) == 0);
    CHECK(read_json(a) == read_json(b));
}

TEST_CASE("dumped spin-1/2 Hamiltonian matches the anisotropic chain form") {
    std::string out = "cli_dump_h.json";
    REQUIRE(run("dump --kind hamiltonian --route logderiv --l 1 --N 2 --out " + out) == 0);
    TensorOperator h = TensorOperator::from_json(read_json(out));
    ModelParams p = ModelParams::make(1, Complex(0.7, 0.0));
    Complex scale = -double(p.s_total()) / kappa(p.q);
    CHECK((h - xxz_hamiltonian(p, 2) * scale).norm() < 1e-9);
}

TEST_CASE("check filter and exit codes") {
    CHECK(run("suite --check ybe --l 3 --samples 3 --seed 5") == 0);
    CHECK(run("suite --check ybe --samples 3 --seed 5 --tol-ybe 1e-30") == 1);
    CHECK(run("suite --check no-such-check") != 0);
}

TEST_CASE("suite report is reproducible for a fixed seed") {
    std::string a = "cli_rep_a.json", b = "cli_rep_b.json";
    std::string args = " --check initial-condition ybe unitarity --samples 4 --seed 11 --out ";
    REQUIRE(run("suite" + args + a) == 0);
    REQUIRE(run("suite" + args + b) == 0);
    nlohmann::json ja = read_json(a), jb = read_json(b);
    ja.erase("wall_time_ms");
    jb.erase("wall_time_ms");
    CHECK(ja == jb);
}

TEST_CASE("boundary solve then gate-check via files") {
    std::string kf = "cli_k.json";
    REQUIRE(run("boundary solve-k --side L --degree 1 --seed 3 --out " + kf) == 0);
    CHECK(run("boundary check-k --k-left " + kf + " --samples 4 --seed 9 --tol 1e-5") == 0);
}
