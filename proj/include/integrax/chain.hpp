#pragma once

#include "integrax/rmat.hpp"

namespace integrax {

// Closed (twisted periodic) chain of N sites with auxiliary spectral
// parameter zeta and per-site inhomogeneities eta_k.
struct ChainSpec {
    int N = 2;
    ModelParams params;
    Complex aux_zeta{1.0, 0.0};
    std::vector<Complex> quantum_etas;  // size N

    static ChainSpec homogeneous(const ModelParams& params, int N, Complex zeta);
    void validate() const;
    std::vector<int> chain_dims() const;  // [aux, q_1..q_N]
};

// Legs: [aux = 1, q_1 = 2, ..., q_N = N+1].
TensorOperator monodromy(const ChainSpec& spec);
TensorOperator monodromy_inverse(const ChainSpec& spec);

double rmm_residual(const ChainSpec& spec, Complex zeta1, Complex zeta2);

// Twisted transfer operator on the quantum legs.
TensorOperator transfer(const ChainSpec& spec);

struct LocalHamiltonianDensity {
    TensorOperator h;  // two legs, derivative of P·R(zeta|1) at zeta = 1
};
LocalHamiltonianDensity local_density(const ModelParams& params);

// zeta d/dzeta log T(zeta) at zeta = 1, homogeneous chain, analytic vertex
// derivatives; T(1) inverted through its twisted-shift structure.
TensorOperator hamiltonian_logderiv(const ModelParams& params, int N);

// Assembly from the local density: sum of bulk terms plus the twisted wrap term.
TensorOperator hamiltonian_local_sum(const ModelParams& params, int N);

// Direct nearest-neighbour expression with the twisted periodic closure.
TensorOperator hamiltonian_explicit(const ModelParams& params, int N);

// l = 1 spin-1/2 chain; Phi = phi[0] - phi[1] enters the boundary twist.
TensorOperator xxz_hamiltonian(const ModelParams& params, int N);

}  // namespace integrax
