// Classical and quantum reduction on invariant polynomials: the reduced
// Poisson bracket, the deformed projection onto reduced representatives
// and the reduced star product.
#pragma once

#include "lgq/brst.hpp"
#include "lgq/polyengine.hpp"

#include <memory>
#include <stdexcept>

namespace lgq {

// An intermediate result would exceed the degree window of the ideal.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Reducer {
public:
    Reducer(int N, int K, int degree_cap);

    int N() const { return ph_->N(); }
    int K() const { return K_; }
    int degree_cap() const { return ideal_->basis().degree_cap; }
    const Phase& phase() const { return *ph_; }
    const StarProduct& star() const { return *sp_; }
    const Brst& brst() const { return *brst_; }
    const ConstraintIdeal& ideal() const { return *ideal_; }

    // L_l f lies in the ideal for l = 1, 2, 3.
    bool is_invariant(const PhasePoly& f) const;

    PhasePoly rest(const PhasePoly& f) const { return ideal_->rest(f); }
    // rest({f, g}_M); throws std::invalid_argument on non-invariant input.
    PhasePoly reduced_poisson(const PhasePoly& f, const PhasePoly& g) const;

    // T = (qd - d) h_0 on antighost degree 0: sum_l (q_l * J_l - q_l J_l).
    PhasePoly koszul_perturbation(const PhasePoly& x) const;
    // rest (id + T)^{-1}, the Neumann series stopping past lambda^K.
    PhasePoly deformed_rest(const PhasePoly& x) const;
    // Degree-0 ghost polynomial: only the empty word is accepted.
    PhasePoly deformed_rest(const GhostPoly& x) const;

    // Lowest lambda order at which deformed_rest(quantized_rep(l, f)) is
    // nonzero for some l, or -1 if it vanishes mod lambda^K.
    int cocycle_defect_order(const PhasePoly& f) const;
    // Lowest lambda order at which rest(quantized_rep(l, f) - classical_rep(l, f))
    // is nonzero for some l, or -1 if none below lambda^K.
    int discrepancy_order(const PhasePoly& f) const;

    // deformed_rest(f * g); throws std::invalid_argument unless f, g are
    // cocycles mod lambda^K, WindowError when the window is exceeded.
    PhasePoly reduced_star(const PhasePoly& f, const PhasePoly& g) const;

    // Side conditions of the Koszul homotopy at antighost degree 0, checked on
    // normal forms of monomials up to the given degree.  h h needs a homotopy in
    // antighost degree 1, which is not constructed, and is reported as such.
    nlohmann::json side_condition_flags(int degree) const;

    // {result, window, certificates} for the command line.
    nlohmann::json reduced_star_report(const PhasePoly& f, const PhasePoly& g) const;

private:
    void require_window(const PhasePoly& f) const;

    int K_;
    std::unique_ptr<Phase> ph_;
    std::unique_ptr<StarProduct> sp_;
    std::unique_ptr<Brst> brst_;
    std::unique_ptr<ConstraintIdeal> ideal_;
    std::unique_ptr<Sympgeo> sg_;
};

// Invariants of diagonal conjugation for N = 1: tr a, |p|^2 and the pairing
// of p with the rotation axis of a.
struct Invariants {
    PhasePoly trace, p_squared, axis_pairing;
};
Invariants basic_invariants(const Phase& ph);

// Reduction suite on products of the basic invariants (N = 1).
nlohmann::json reduce_suite(int K, int pairs);

}  // namespace lgq
