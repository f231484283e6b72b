#include <doctest.h>

#include "integrax/rmat.hpp"

using namespace integrax;

namespace {

ModelParams params_l(int l, Complex q = Complex(0.7, 0.0)) {
    return ModelParams::make(l, q);
}

// Spin-1/2 six-vertex weights, written out independently of the generic code.
Matrix sixv_oracle(Complex q, Complex zeta) {
    Complex x = zeta * zeta;  // homogeneous grading, s = (1,1)
    Complex b = q * (1.0 - x) / (1.0 - q * q * x);
    Complex c = (1.0 - q * q) * zeta / (1.0 - q * q * x);
    Matrix r = Matrix::Zero(4, 4);
    r(0, 0) = r(3, 3) = 1.0;
    r(1, 1) = r(2, 2) = b;
    r(1, 2) = r(2, 1) = c;
    return r;
}

}  // namespace

TEST_CASE("spin-1/2 R-matrix equals the six-vertex weights") {
    Complex q(0.7, 0.0);
    for (Complex zeta : {Complex(0.6, 0.0), Complex(0.9, 0.3), Complex(1.4, -0.2)}) {
        Matrix r = r_matrix(params_l(1), zeta);
        CHECK((r - sixv_oracle(q, zeta)).norm() < 1e-14);
    }
}

TEST_CASE("R at coinciding spectral parameters is the permutation") {
    for (int l : {1, 2, 3}) {
        ModelParams p = params_l(l);
        std::vector<int> two{l + 1, l + 1};
        TensorOperator r(r_matrix(p, Complex(1.0)), two);
        TensorOperator perm = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
        CHECK((r - perm).norm() == 0.0);
        CHECK((perm * r - TensorOperator::identity(two)).norm() == 0.0);
    }
}

TEST_CASE("R-matrix entry poles are guarded") {
    ModelParams p = params_l(1);
    // q^2 zeta^2 = 1  =>  zeta = 1/q
    CHECK_THROWS(r_matrix(p, Complex(1.0 / 0.7, 0.0)));
}

TEST_CASE("Yang-Baxter equation") {
    for (int l : {1, 2, 3}) {
        ModelParams p = params_l(l);
        CHECK(ybe_residual(p, Complex(0.9, 0.2), Complex(1.2, -0.1), Complex(0.7, 0.05)) <
              1e-12);
        CHECK(ybe_residual(p, Complex(1.3, 0.0), Complex(0.6, 0.4), Complex(1.0, -0.3)) <
              1e-12);
    }
}

TEST_CASE("Yang-Baxter variants with inverses and transposes") {
    for (int l : {1, 2}) {
        ModelParams p = params_l(l);
        auto rep = ybe_variant_residuals(p, Complex(0.8, 0.1), Complex(1.1, -0.2),
                                         Complex(1.3, 0.15));
        for (const auto& [name, res] : rep.per_relation) {
            INFO(name, " l=", l);
            CHECK(res < 1e-10);
        }
    }
}

TEST_CASE("unitarity with scalar exactly one in the rational normalization") {
    for (int l : {1, 2, 3}) {
        ModelParams p = params_l(l);
        UnitarityResult u = unitarity(p, Complex(0.9, 0.25), Complex(1.2, -0.15));
        CHECK(u.off_norm < 1e-12);
        CHECK(std::abs(u.c - 1.0) < 1e-12);
        UnitarityResult v = unitarity(p, Complex(1.2, -0.15), Complex(0.9, 0.25));
        CHECK(std::abs(u.c - v.c) < 1e-13);
    }
}

TEST_CASE("root-factorized form reproduces the R-matrix") {
    for (int l : {1, 2}) {
        ModelParams p = params_l(l, Complex(0.8, 0.0));
        // small |zeta^s| so the series factor converges well
        Complex zeta = std::pow(Complex(0.2, 0.05), 1.0 / p.s_total());
        int order = 80;
        Matrix prod = r_factor_upper(p, zeta) * r_factor_diagonal(p, zeta, order) *
                      r_factor_lower(p, zeta) * r_factor_k(p);
        Complex rho = rho_norm(p, zeta, order);
        CHECK((prod / rho - r_matrix(p, zeta)).norm() < 1e-10);
    }
}

TEST_CASE("skew inverses satisfy their defining relations on both routes") {
    for (int l : {1, 2}) {
        ModelParams p = params_l(l);
        int n = l + 1;
        std::vector<int> two{n, n};
        TensorOperator id = TensorOperator::identity(two);
        for (Complex z : {Complex(0.8, 0.2), Complex(1.25, -0.3)}) {
            TensorOperator r(r_matrix(p, z), two);
            TensorOperator rinv = r.inverse();
            TensorOperator tld = skew_inverse_tilde_inv(r, 1);
            TensorOperator dtl = skew_inverse_dtilde(rinv, 1);
            CHECK((partial_transpose(tld, 1) * partial_transpose(r, 1) - id).norm() < 1e-12);
            CHECK((partial_transpose(r, 2) * partial_transpose(tld, 2) - id).norm() < 1e-12);
            CHECK((partial_transpose(dtl, 1) * partial_transpose(rinv, 1) - id).norm() <
                  1e-12);
            CHECK((partial_transpose(rinv, 2) * partial_transpose(dtl, 2) - id).norm() <
                  1e-12);
            CHECK((tld - skew_inverse_tilde_inv(r, 2)).norm() < 1e-12);
            CHECK((dtl - skew_inverse_dtilde(rinv, 2)).norm() < 1e-12);
        }
    }
}

TEST_CASE("crossing coefficient closed form") {
    ModelParams p = params_l(1);
    Complex z(0.8, 0.1);
    Complex x = std::pow(z, p.s_total());
    Complex q = p.q;
    Complex dm = (1.0 - x / (q * q)) * (1.0 - x / (q * q)) /
                 ((1.0 - x) * (1.0 - x / std::pow(q, 4)));
    CHECK(std::abs(crossing_d(p, z, -1) - dm) < 1e-13);
    // D_+ at l=1: (1-q^2 x)^2 / ((1-x)(1-q^4 x))
    Complex dp = (1.0 - q * q * x) * (1.0 - q * q * x) /
                 ((1.0 - x) * (1.0 - std::pow(q, 4) * x));
    CHECK(std::abs(crossing_d(p, z, +1) - dp) < 1e-13);
}

TEST_CASE("dual-representation crossing relations") {
    for (int l : {1, 2}) {
        ModelParams p = params_l(l);
        auto rep = crossing_suite(p, Complex(0.85, 0.2), Complex(1.15, -0.1));
        for (const auto& [name, res] : rep.per_relation) {
            INFO(name, " l=", l);
            CHECK(res < 1e-10);
        }
    }
}

TEST_CASE("series normalization reproduces the crossing coefficient") {
    ModelParams p = params_l(1, Complex(0.8, 0.0));
    Complex z = std::pow(Complex(0.15, 0.05), 1.0 / p.s_total());
    CHECK(rho_crossing_residual(p, z, 120) < 1e-10);
}

TEST_CASE("spin-1/2 charge-flip crossing relations") {
    ModelParams p = params_l(1);
    auto rep = sl2_extra_crossing(p, Complex(0.9, 0.3), Complex(1.2, -0.25));
    for (const auto& [name, res] : rep.per_relation) {
        INFO(name);
        CHECK(res < 1e-11);
    }
}

TEST_CASE("bundle members are mutually consistent") {
    ModelParams p = params_l(2);
    ROperatorBundle b = r_fund(p, Complex(1.1, 0.2), Complex(0.9, -0.1));
    std::vector<int> two{3, 3};
    TensorOperator id = TensorOperator::identity(two);
    CHECK((b.r * b.r_inv - id).norm() < 1e-12);
    TensorOperator perm = permutation_operator(LegPermutation::transposition(2, 1, 2), two);
    CHECK((b.r_check - perm * b.r).norm() == 0.0);
    CHECK((partial_transpose(b.tilde_r_inv, 1) * partial_transpose(b.r, 1) - id).norm() <
          1e-12);
    CHECK((partial_transpose(b.dtilde_r, 1) * partial_transpose(b.r_inv, 1) - id).norm() <
          1e-12);
}

TEST_CASE("log-derivative at one matches a finite difference") {
    for (int l : {1, 2}) {
        ModelParams p = params_l(l);
        double h = 1e-6;
        Matrix fd =
            (r_matrix(p, Complex(1.0 + h)) - r_matrix(p, Complex(1.0 - h))) / (2.0 * h);
        CHECK((r_matrix_log_derivative_at_one(p) - fd).norm() < 1e-7);
    }
}
