#pragma once

#include <functional>
#include <optional>

#include "integrax/chain.hpp"

namespace integrax {

// Boundary operator as a function of the spectral parameter, with an optional
// analytic derivative (finite differences with Richardson refinement otherwise).
class BoundaryK {
public:
    BoundaryK() = default;
    BoundaryK(std::function<Matrix(Complex)> eval, std::function<Matrix(Complex)> deriv = {});

    static BoundaryK identity(int dim);
    // k_i(zeta) = sum_d coeffs[i][d] * zeta^{s*d}
    static BoundaryK diagonal_polynomial(const ModelParams& params,
                                         std::vector<std::vector<Complex>> coeffs);

    Matrix operator()(Complex zeta) const;
    Matrix derivative(Complex zeta) const;

    nlohmann::json to_json(const std::string& side) const;
    static BoundaryK from_json(const nlohmann::json& j);

private:
    std::function<Matrix(Complex)> eval_;
    std::function<Matrix(Complex)> deriv_;
    std::optional<nlohmann::json> descriptor_;
};

struct BoundaryPair {
    BoundaryK k_left, k_right;
};

struct OpenChainSpec {
    int N = 1;
    ModelParams params;
    Complex aux_zeta{1.0, 0.0};
    std::vector<Complex> etas;
    BoundaryPair boundary;

    static OpenChainSpec homogeneous(const ModelParams& params, int N, Complex zeta,
                                     BoundaryPair boundary);
    ChainSpec chain(Complex zeta) const;
};

double reflection_residual_left(const ModelParams& params, const BoundaryK& k_left,
                                Complex zeta1, Complex zeta2);
double reflection_residual_right(const ModelParams& params, const BoundaryK& k_right,
                                 Complex zeta1, Complex zeta2);

// Dressed boundary operators on [aux, q_1..q_N] at spec.aux_zeta.
std::pair<TensorOperator, TensorOperator> dress_k(const OpenChainSpec& spec);

// Reflection residuals for the dressed operators (legs [aux1, aux2, q_1..q_N]).
double dressed_reflection_residual_left(const OpenChainSpec& spec, Complex zeta1, Complex zeta2);
double dressed_reflection_residual_right(const OpenChainSpec& spec, Complex zeta1, Complex zeta2);

TensorOperator open_transfer(const OpenChainSpec& spec);
// Same operator assembled from a dressed right part over the first m sites and
// a dressed left part over the rest.
TensorOperator open_transfer_split(const OpenChainSpec& spec, int m);

TensorOperator open_hamiltonian(const ModelParams& params, int N, const BoundaryPair& boundary);

struct DiagonalKSolveOptions {
    int degree = 1;
    int max_restarts = 40;
    unsigned seed = 7;
    bool require_nontrivial = false;
    double accept_residual = 1e-6;
};

struct DiagonalKSolution {
    BoundaryK k;
    std::vector<std::vector<Complex>> coeffs;
    double residual = 0.0;
};

// Least-squares fit of a diagonal polynomial-in-zeta^s ansatz to the chosen
// reflection equation over all ordered pairs of the sample points.
DiagonalKSolution solve_diagonal_k(const ModelParams& params, char side,
                                   const std::vector<Complex>& sample_zetas,
                                   const DiagonalKSolveOptions& options);

}  // namespace integrax
