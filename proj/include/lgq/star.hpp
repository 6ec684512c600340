// Standard-ordered star product on T*SU(2)^N from the bidifferential
// operators B_m, the standard-order representation rho, and the
// invariance/covariance checks.
#pragma once

#include "lgq/sympgeo.hpp"

#include <memory>

namespace lgq {

// One term c * p^coef * (d^{d1} F) * (d^{d2} G), derivatives in the momenta.
// Monomials use the phase-space variable layout (momentum slots only).
struct BTerm {
    GQ c;
    Mono coef, d1, d2;
};

struct BiDiffOp {
    int N = 1;
    std::vector<BTerm> terms;

    PhasePoly apply(const PhasePoly& F, const PhasePoly& G) const;
    // Canonical sort, merge of equal terms, removal of zeros.
    BiDiffOp canonical() const;
    friend bool operator==(const BiDiffOp& a, const BiDiffOp& b);
    nlohmann::json to_json() const;
};

// B_m from the BCH terms: enumerate n = (n_2, ..., n_s) with
// sum (r-1) n_r = m and expand prod_r alpha(H_r(xi, eta))^{n_r}.
BiDiffOp build_bm(int N, int m);
// Cached build; concurrent reads, exclusive build.
std::shared_ptr<const BiDiffOp> cached_bm(int N, int m);

// Closed forms for B_0, B_1, B_2 assembled from structure constants only.
BiDiffOp closed_form_bm(int N, int m);

// Multiple momentum derivative d^{d} F with d a monomial in momentum slots.
PhasePoly fiber_derive_multi(const PhasePoly& F, const Mono& d);

// Differential operator sum_k c_k(a, lambda) E_{J_1} ... E_{J_l} on base polynomials.
struct LeftDiffOp {
    struct Part {
        PhasePoly coeff;
        std::vector<int> seq;
    };
    int N = 1;
    std::vector<Part> parts;
    PhasePoly apply(const Phase& ph, const PhasePoly& psi) const;
};

// GQ power (lambda/i)^m coefficient: (-i)^m.
GQ nu_power(int m);

class StarProduct {
public:
    StarProduct(const Phase& ph, int K);
    StarProduct(const Phase& ph, int K, std::vector<BiDiffOp> ops);

    const Phase& phase() const { return ph_; }
    int K() const { return K_; }
    const BiDiffOp& B(int m) const { return *ops_.at(m); }

    PhasePoly star(const PhasePoly& f, const PhasePoly& g) const;
    PhasePoly commutator(const PhasePoly& f, const PhasePoly& g) const { return star(f, g) - star(g, f); }

    LeftDiffOp rho(const PhasePoly& f) const;
    // i^*(f * pi^* psi)
    PhasePoly rho_via_star(const PhasePoly& f, const PhasePoly& psi) const;

    Report check_invariance(const Mat2& g, const PhasePoly& f, const PhasePoly& h) const;
    // (J_B * f - f * J_B) - (lambda/i){J_B, f}; report passes when zero.
    Report check_strong_invariance(const Vec& B, const PhasePoly& f, PhasePoly* residual = nullptr) const;

private:
    const Phase& ph_;
    int K_;
    std::vector<std::shared_ptr<const BiDiffOp>> ops_;
};

// Enumerate nondecreasing index sequences of length n over [0, d).
std::vector<std::vector<int>> multisets(int d, int n);
// All distinct orderings of a multiset.
std::vector<std::vector<int>> distinct_orderings(std::vector<int> s);

}  // namespace lgq
