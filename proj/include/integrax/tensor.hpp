#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace integrax {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Dense operator acting on an ordered tensor product of legs.
// Leg indices are 1-based; the product basis is row-major, i.e. the last leg
// index runs fastest (conventional Kronecker ordering).
class TensorOperator {
public:
    TensorOperator(Matrix data, std::vector<int> dims);

    static TensorOperator identity(const std::vector<int>& dims);

    const Matrix& matrix() const { return data_; }
    Matrix& matrix() { return data_; }
    const std::vector<int>& dims() const { return dims_; }
    int legs() const { return static_cast<int>(dims_.size()); }
    int side() const { return static_cast<int>(data_.rows()); }

    TensorOperator operator*(const TensorOperator& other) const;
    TensorOperator operator+(const TensorOperator& other) const;
    TensorOperator operator-(const TensorOperator& other) const;
    TensorOperator operator*(const Complex& c) const;
    TensorOperator inverse() const;
    TensorOperator transpose() const;

    double norm() const { return data_.norm(); }

    nlohmann::json to_json() const;
    static TensorOperator from_json(const nlohmann::json& j);

private:
    Matrix data_;
    std::vector<int> dims_;
};

inline TensorOperator operator*(const Complex& c, const TensorOperator& m) { return m * c; }

// Bijection on {1..n}; sigma(i) is the image of leg i.
class LegPermutation {
public:
    explicit LegPermutation(std::vector<int> sigma);

    static LegPermutation identity(int n);
    static LegPermutation transposition(int n, int a, int b);

    int size() const { return static_cast<int>(sigma_.size()); }
    int operator()(int i) const { return sigma_.at(i - 1); }

    // (this ∘ other)(i) = this(other(i))
    LegPermutation compose(const LegPermutation& other) const;
    LegPermutation inverse() const;

    bool operator==(const LegPermutation& other) const { return sigma_ == other.sigma_; }

private:
    std::vector<int> sigma_;
};

TensorOperator kron(const TensorOperator& a, const TensorOperator& b);
Matrix kron(const Matrix& a, const Matrix& b);

// P_sigma(w_1 ⊗ … ⊗ w_n) = w_{sigma^{-1}(1)} ⊗ … ⊗ w_{sigma^{-1}(n)}.
// The result's leg k has dimension dims[sigma^{-1}(k)].
TensorOperator permutation_operator(const LegPermutation& p, const std::vector<int>& dims);

// Place m's legs at the given (1-based, ordered, distinct) slots of a larger
// product space, identity on the remaining legs.
TensorOperator embed(const TensorOperator& m, const std::vector<int>& slots,
                     const std::vector<int>& target_dims);
TensorOperator embed(const Matrix& m, int slot, const std::vector<int>& target_dims);

TensorOperator partial_transpose(const TensorOperator& m, int slot);

// Result has the chosen leg removed from the dims list.
TensorOperator partial_trace(const TensorOperator& m, int slot);

}  // namespace integrax
