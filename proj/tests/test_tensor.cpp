#include <doctest.h>

#include <random>

#include "integrax/tensor.hpp"

using namespace integrax;

namespace {

Matrix random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = Complex(u(rng), u(rng));
    return m;
}

}  // namespace

TEST_CASE("kron follows the last-leg-fastest convention") {
    Matrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 5, 6, 7;
    Matrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    // (a ⊗ b)_{(i1 i2),(j1 j2)} = a_{i1 j1} b_{i2 j2}, second index fastest.
    CHECK(k(0, 0) == Complex(0.0));
    CHECK(k(0, 1) == Complex(5.0));
    CHECK(k(1, 0) == Complex(6.0));
    CHECK(k(0, 2) == Complex(0.0));
    CHECK(k(0, 3) == Complex(10.0));
    CHECK(k(2, 0) == Complex(0.0));
    CHECK(k(3, 3) == Complex(28.0));
    CHECK(k(2, 1) == Complex(15.0));
}

TEST_CASE("kron is associative and respects mixed dimensions") {
    Matrix a = random_matrix(2, 1), b = random_matrix(3, 2), c = random_matrix(2, 3);
    CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() < 1e-14);
    CHECK((kron(a, b) * kron(a, b) - kron(Matrix(a * a), Matrix(b * b))).norm() < 1e-13);
}

TEST_CASE("permutation operator swaps legs of different dimensions") {
    std::vector<int> dims{2, 3};
    TensorOperator p = permutation_operator(LegPermutation::transposition(2, 1, 2), dims);
    REQUIRE(p.dims() == std::vector<int>{3, 2});
    // P (e_i ⊗ f_j) = f_j ⊗ e_i; check via conjugation of a product operator.
    Matrix a = random_matrix(2, 3), b = random_matrix(3, 4);
    Matrix lhs = p.matrix() * kron(a, b);
    Matrix rhs = kron(b, a) * p.matrix();
    CHECK((lhs - rhs).norm() < 1e-13);
}

TEST_CASE("three-leg cycles compose correctly") {
    std::vector<int> dims{2, 2, 2};
    LegPermutation c12 = LegPermutation::transposition(3, 1, 2);
    LegPermutation c23 = LegPermutation::transposition(3, 2, 3);
    TensorOperator p12 = permutation_operator(c12, dims);
    TensorOperator p23 = permutation_operator(c23, dims);
    TensorOperator pc = permutation_operator(c12.compose(c23), dims);
    CHECK((p12 * p23 - pc).norm() < 1e-14);
    CHECK((permutation_operator(c12.inverse(), dims) - p12.inverse()).norm() < 1e-13);
}

TEST_CASE("embed places factors at the requested slots") {
    Matrix a = random_matrix(2, 5), b = random_matrix(2, 6);
    std::vector<int> dims{2, 2, 2};
    Matrix id2 = Matrix::Identity(2, 2);
    TensorOperator ab(kron(a, b), std::vector<int>{2, 2});

    CHECK((embed(ab, {1, 2}, dims).matrix() - kron(kron(a, b), id2)).norm() < 1e-14);
    CHECK((embed(ab, {2, 3}, dims).matrix() - kron(id2, kron(a, b))).norm() < 1e-14);
    // slot list {1,3}: a on leg 1, b on leg 3
    Matrix expect = kron(kron(a, id2), b);
    CHECK((embed(ab, {1, 3}, dims).matrix() - expect).norm() < 1e-14);
    // reversed slots {3,1}: first factor to leg 3, second to leg 1
    Matrix expect_rev = kron(kron(b, id2), a);
    CHECK((embed(ab, {3, 1}, dims).matrix() - expect_rev).norm() < 1e-14);
    CHECK((embed(a, 2, dims).matrix() - kron(kron(id2, a), id2)).norm() < 1e-14);
}

TEST_CASE("partial transpose and partial trace against Kronecker oracles") {
    Matrix a = random_matrix(2, 7), b = random_matrix(3, 8);
    TensorOperator m(kron(a, b), {2, 3});
    CHECK((partial_transpose(m, 1).matrix() - kron(Matrix(a.transpose()), b)).norm() < 1e-14);
    CHECK((partial_transpose(m, 2).matrix() - kron(a, Matrix(b.transpose()))).norm() < 1e-14);

    TensorOperator t1 = partial_trace(m, 1);
    REQUIRE(t1.dims() == std::vector<int>{3});
    CHECK((t1.matrix() - Matrix(a.trace() * b)).norm() < 1e-13);
    TensorOperator t2 = partial_trace(m, 2);
    CHECK((t2.matrix() - Matrix(b.trace() * a)).norm() < 1e-13);
    // trace of partial trace = full trace
    CHECK(std::abs(t1.matrix().trace() - kron(a, b).trace()) < 1e-13);
}

TEST_CASE("operator algebra and inverse") {
    TensorOperator a(random_matrix(4, 11), {2, 2});
    TensorOperator id = TensorOperator::identity({2, 2});
    CHECK((a * a.inverse() - id).norm() < 1e-10);
    CHECK((a.transpose().matrix() - a.matrix().transpose()).norm() == 0.0);
    CHECK(((a * Complex(2.0)) - (a + a)).norm() < 1e-14);
}

TEST_CASE("dimension mismatches are rejected") {
    TensorOperator a(random_matrix(4, 12), {2, 2});
    TensorOperator b(random_matrix(4, 13), {4});
    CHECK_THROWS(a * b);
    CHECK_THROWS(a + b);
    CHECK_THROWS(TensorOperator(random_matrix(3, 14), {2, 2}));
    CHECK_THROWS(embed(a, {1, 1}, {2, 2, 2}));
    CHECK_THROWS(embed(a, {1, 4}, {2, 2, 2}));
    CHECK_THROWS(partial_trace(a, 3));
}

TEST_CASE("JSON round trip is bit-identical") {
    TensorOperator a(random_matrix(6, 21), {2, 3});
    nlohmann::json j = a.to_json();
    TensorOperator b = TensorOperator::from_json(j);
    REQUIRE(b.dims() == a.dims());
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
    CHECK(j == b.to_json());
}
