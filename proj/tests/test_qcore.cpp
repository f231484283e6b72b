#include <doctest.h>

#include "integrax/qcore.hpp"

using namespace integrax;

TEST_CASE("q-numbers at generic q") {
    Complex q(0.7, 0.0);
    CHECK(std::abs(q_number(1, q) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(q_number(2, q) - (q + 1.0 / q)) < 1e-15);
    CHECK(std::abs(q_number(3, q) - (q * q + 1.0 + 1.0 / (q * q))) < 1e-14);
    CHECK(std::abs(q_number(-2, q) + q_number(2, q)) < 1e-15);
    CHECK(std::abs(q_number(0, q)) < 1e-15);
    // classical limit approached: [n]_q -> n as q -> 1
    CHECK(std::abs(q_number(5, Complex(1.0 + 1e-8, 0.0)) - 5.0) < 1e-6);
    CHECK_THROWS(q_number(2, Complex(1.0, 0.0)));
}

TEST_CASE("q-factorial") {
    Complex q(0.6, 0.1);
    CHECK(std::abs(q_factorial(0, q) - 1.0) < 1e-15);
    CHECK(std::abs(q_factorial(1, q) - 1.0) < 1e-15);
    CHECK(std::abs(q_factorial(3, q) - q_number(1, q) * q_number(2, q) * q_number(3, q)) <
          1e-14);
}

TEST_CASE("kappa") {
    Complex q(0.7, 0.0);
    CHECK(std::abs(kappa(q) - (q - 1.0 / q)) < 1e-15);
}

TEST_CASE("f-series matches a direct partial sum") {
    Complex q(0.7, 0.0), zeta(0.3, 0.1);
    int m = 2, order = 60;
    Complex direct = 0.0;
    for (int n = 1; n <= order; ++n) {
        Complex qn = std::pow(q, n);
        direct += std::pow(zeta, n) / (double(n) * q_number(m, qn));
    }
    CHECK(std::abs(f_series(m, q, zeta, order) - direct) < 1e-14);
}

TEST_CASE("f-series rejects non-convergent arguments") {
    Complex q(0.7, 0.0);
    CHECK_THROWS(f_series(2, q, Complex(3.0, 0.0), 60));
}

TEST_CASE("model parameter validation") {
    ModelParams p = ModelParams::make(2, Complex(0.7, 0.0));
    REQUIRE(p.dim() == 3);
    REQUIRE(p.s == std::vector<int>{1, 1, 1});
    CHECK(p.s_total() == 3);
    CHECK(p.s_partial(1, 3) == 2);
    CHECK(p.s_partial(2, 2) == 0);
    p.validate();

    ModelParams bad = p;
    bad.s = {1, 1};
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.s = {0, 0, 0};
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.s = {-1, 2, 1};
    CHECK_THROWS(bad.validate());
    bad = p;
    bad.q = std::polar(1.0, 2.0 * M_PI / 6.0);  // primitive root of unity
    CHECK_THROWS(bad.validate());
    bad.q = Complex(0.7, 0.2);  // |q| != 1 is fine
    bad.validate();
}

TEST_CASE("model parameter JSON round trip") {
    ModelParams p = ModelParams::make(2, Complex(0.7, 0.1));
    p.s = {2, 0, 1};
    p.phi = {0.3, -0.1, 0.2};
    ModelParams r = ModelParams::from_json(p.to_json());
    CHECK(r.l == p.l);
    CHECK(r.s == p.s);
    CHECK(r.phi == p.phi);
    CHECK(std::abs(r.q - p.q) == 0.0);
}
