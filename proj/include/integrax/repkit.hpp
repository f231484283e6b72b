#pragma once

#include <map>
#include <string>

#include "integrax/qcore.hpp"
#include "integrax/tensor.hpp"

namespace integrax {

enum class RepLabel { phi, phibar, phi_star, star_phi };
enum class DualSide { star_right, star_left };  // a ↦ rep(S(a))^t vs rep(S^{-1}(a))^t

std::string to_string(RepLabel label);
RepLabel rep_label_from_string(const std::string& name);

// Finite-dimensional evaluation representation at fixed spectral parameter:
// images of e_i, f_i (i = 0..l) and of the Cartan elements q^{nu h_i}.
class Representation {
public:
    Representation(ModelParams params, Complex zeta, std::string name,
                   std::vector<Matrix> e, std::vector<Matrix> f,
                   std::vector<std::vector<double>> h_weights);

    const ModelParams& params() const { return params_; }
    Complex zeta() const { return zeta_; }
    const std::string& name() const { return name_; }
    int dim() const { return params_.dim(); }

    const Matrix& e(int i) const { return e_.at(i); }
    const Matrix& f(int i) const { return f_.at(i); }
    // Image of q^{nu h_i}; diagonal since every basis vector is a weight vector.
    Matrix cartan(int i, Complex nu) const;
    const std::vector<double>& h_weights(int i) const { return h_weights_.at(i); }

private:
    ModelParams params_;
    Complex zeta_;
    std::string name_;
    std::vector<Matrix> e_, f_;
    std::vector<std::vector<double>> h_weights_;  // h_weights_[i][k] = <h_i> on v_{k+1}
};

Representation phi_rep(const ModelParams& params, Complex zeta);
Representation phibar_rep(const ModelParams& params, Complex zeta);
// Explicit tables of the dual representations (base = phi).
Representation phi_star_rep(const ModelParams& params, Complex zeta);
Representation star_phi_rep(const ModelParams& params, Complex zeta);
Representation rep_by_label(RepLabel label, const ModelParams& params, Complex zeta);

// Antipode-then-transpose construction of a dual representation.
Representation dual_rep(const Representation& base, DualSide side);

struct XOperator {
    Matrix x;
    std::vector<double> chi;
};
XOperator x_operator(const ModelParams& params);

struct TwistOperator {
    Matrix a;
    std::vector<double> phi;
};
TwistOperator twist_operator(const ModelParams& params);

struct RelationReport {
    std::map<std::string, double> per_relation;
    double max_residual = 0.0;
};

// Residuals of the defining relations of the quantum loop algebra on the
// given representation (Cartan products/commutation, [e,f], Serre).
RelationReport verify_defining_relations(const Representation& rep);

// Intertwiner residuals for the equivalences between phi-bar and the duals of
// phi (conjugation by the printed antidiagonal operator plus zeta rescaling).
RelationReport equivalence_with_phibar(const ModelParams& params, Complex zeta, DualSide side);

// Conjugation identity for the double dual: rep** at zeta equals the
// X-conjugate of the base rep at the shifted spectral parameter.
RelationReport double_dual_conjugation(const ModelParams& params, Complex zeta);

// Extended Cartan matrix a_{ij}, i,j = 0..l, of the affine algebra.
int affine_cartan(int i, int j, int l);

}  // namespace integrax
