#include "integrax/qcore.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace integrax {

ModelParams ModelParams::make(int l, Complex q) {
    ModelParams p;
    p.l = l;
    p.q = q;
    p.s.assign(l + 1, 1);
    p.phi.assign(l + 1, 0.0);
    p.validate();
    return p;
}

int ModelParams::s_total() const {
    return std::accumulate(s.begin(), s.end(), 0);
}

int ModelParams::s_partial(int i, int j) const {
    // s is stored as (s_0, ..., s_l); s_k for k = i..j-1 lives at index k.
    int sum = 0;
    for (int k = i; k < j; ++k) sum += s[k];
    return sum;
}

void ModelParams::validate() const {
    if (l < 1) throw std::invalid_argument("rank l must be >= 1");
    if (static_cast<int>(s.size()) != l + 1)
        throw std::invalid_argument("grading vector must have l+1 entries");
    for (int v : s)
        if (v < 0) throw std::invalid_argument("grading entries must be >= 0");
    if (s_total() <= 0) throw std::invalid_argument("total grading must be positive");
    if (static_cast<int>(phi.size()) != l + 1)
        throw std::invalid_argument("twist vector must have l+1 entries");
    double aq = std::abs(q);
    if (aq == 0.0) throw std::invalid_argument("q must be nonzero");
    if (std::abs(aq - 1.0) < 1e-9) {
        // On the unit circle reject roots of unity (checked to tolerance).
        Complex p = q;
        for (int k = 1; k <= 48; ++k) {
            if (std::abs(p - 1.0) < 1e-8)
                throw std::invalid_argument("q must not be a root of unity");
            p *= q;
        }
    }
}

nlohmann::json ModelParams::to_json() const {
    return {{"l", l}, {"q", {q.real(), q.imag()}}, {"s", s}, {"phi", phi}};
}

ModelParams ModelParams::from_json(const nlohmann::json& j) {
    ModelParams p;
    p.l = j.at("l").get<int>();
    p.q = Complex(j.at("q")[0].get<double>(), j.at("q")[1].get<double>());
    p.s = j.at("s").get<std::vector<int>>();
    p.phi = j.at("phi").get<std::vector<double>>();
    p.validate();
    return p;
}

Complex q_number(int n, Complex q) {
    Complex qi = 1.0 / q;
    if (std::abs(q - qi) < 1e-14) throw std::domain_error("q-number undefined at q = ±1");
    return (std::pow(q, n) - std::pow(qi, n)) / (q - qi);
}

Complex q_factorial(int n, Complex q) {
    Complex f = 1.0;
    for (int k = 2; k <= n; ++k) f *= q_number(k, q);
    return f;
}

Complex kappa(Complex q) { return q - 1.0 / q; }

Complex f_series(int m, Complex q, Complex zeta, int order) {
    if (order < 1) throw std::invalid_argument("series order must be >= 1");
    if (zeta == Complex(0.0, 0.0)) return 0.0;
    Complex sum = 0.0;
    double prev = 0.0;
    for (int n = 1; n <= order; ++n) {
        Complex qn = std::pow(q, n);
        Complex term = std::pow(zeta, n) / (static_cast<double>(n) * q_number(m, qn));
        double mag = std::abs(term);
        if (n > order / 2 && prev > 0.0 && mag >= prev)
            throw std::domain_error("f_series argument outside convergence domain");
        prev = mag;
        sum += term;
    }
    return sum;
}

}  // namespace integrax
