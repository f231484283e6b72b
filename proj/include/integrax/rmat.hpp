#pragma once

#include "integrax/qcore.hpp"
#include "integrax/repkit.hpp"
#include "integrax/tensor.hpp"

namespace integrax {

// Fundamental R-operator on two legs of dimension l+1, with its relatives.
struct ROperatorBundle {
    TensorOperator r;            // R(zeta1|zeta2), rational normalized form
    TensorOperator r_inv;        // R^{-1}
    TensorOperator r_check;      // P * R
    TensorOperator tilde_r_inv;  // skew inverse: (tilde_r_inv)^{t1} R^{t1} = 1
    TensorOperator dtilde_r;     // skew inverse of R^{-1}
    Complex zeta12;
    ModelParams params;
};

// Closed-form rational R as a bare matrix; throws near the entry poles.
Matrix r_matrix(const ModelParams& params, Complex zeta12);
// Analytic zeta d/dzeta of R(zeta|1) at zeta = 1.
Matrix r_matrix_log_derivative_at_one(const ModelParams& params);

// Khoroshkin–Tolstoy factors; their product over rho reproduces r_matrix.
Matrix r_factor_upper(const ModelParams& params, Complex zeta12);           // strictly upper root part
Matrix r_factor_diagonal(const ModelParams& params, Complex zeta12, int order);  // imaginary-root part
Matrix r_factor_lower(const ModelParams& params, Complex zeta12);           // strictly lower root part
Matrix r_factor_k(const ModelParams& params);                               // Cartan factor K

ROperatorBundle r_fund(const ModelParams& params, Complex zeta1, Complex zeta2);

Complex rho_norm(const ModelParams& params, Complex zeta12, int order);

// Route 1 transposes leg 1, route 2 transposes leg 2; both give the same operator.
TensorOperator skew_inverse_tilde_inv(const TensorOperator& r, int route = 1);
TensorOperator skew_inverse_dtilde(const TensorOperator& r_inv, int route = 1);

double ybe_residual(const ModelParams& params, Complex z1, Complex z2, Complex z3);
RelationReport ybe_variant_residuals(const ModelParams& params, Complex z1, Complex z2, Complex z3);

struct UnitarityResult {
    Complex c;        // scalar of r_check(z2|z1) r_check(z1|z2)
    double off_norm;  // deviation from c * Id
};
UnitarityResult unitarity(const ModelParams& params, Complex z1, Complex z2);

// Rational crossing coefficient; sign = -1 gives the variant entering the
// inverse-dual relations (shift q^{-2(l+1)/s}), sign = +1 the transposed-dual
// ones (shift q^{+2(l+1)/s}).
Complex crossing_d(const ModelParams& params, Complex zeta12, int sign);

// Residuals of the four dual-representation crossing relations (dual-side
// R-operators defined through the partial-transpose identities with D = 1)
// plus the double-dual proportionality check.
RelationReport crossing_suite(const ModelParams& params, Complex z1, Complex z2);

// Series evaluation of the crossing coefficient (ratio of rho at shifted and
// unshifted argument) against its rational closed form; returns the residual.
double rho_crossing_residual(const ModelParams& params, Complex zeta12, int order);

// The four l = 1 relations expressing transposed inverses of R through R at a
// shifted argument conjugated by the antidiagonal charge-flip operator.
RelationReport sl2_extra_crossing(const ModelParams& params, Complex z1, Complex z2);

}  // namespace integrax
