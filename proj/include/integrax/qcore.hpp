#pragma once

#include <complex>
#include <vector>

#include <nlohmann/json.hpp>

#include "integrax/tensor.hpp"

namespace integrax {

// Rank, deformation parameter, grading of the spectral parameter and the
// diagonal twist exponents of the model.
struct ModelParams {
    int l = 1;
    Complex q{0.7, 0.0};
    std::vector<int> s;      // (s_0, ..., s_l), s_i >= 0, sum > 0
    std::vector<double> phi; // (Phi_1, ..., Phi_{l+1}) twist exponents

    static ModelParams make(int l, Complex q);

    int dim() const { return l + 1; }
    int s_total() const;
    // sum_{k=i}^{j-1} s_k for 1 <= i <= j <= l+1 (s_k with 1-based k)
    int s_partial(int i, int j) const;

    void validate() const;

    nlohmann::json to_json() const;
    static ModelParams from_json(const nlohmann::json& j);
};

Complex q_number(int n, Complex q);
Complex q_factorial(int n, Complex q);
Complex kappa(Complex q);

// F_m(zeta) = sum_{n>=1} zeta^n / (n [m]_{q^n}), truncated at `order` terms.
// Throws if the term ratio fails to stay below 1 (non-convergent argument).
Complex f_series(int m, Complex q, Complex zeta, int order);

}  // namespace integrax
