// Canonical 1-form, symplectic form, Hamiltonian vector fields, Poisson
// bracket and the lifted connection on T*SU(2)^N, evaluated on standard
// vector fields (X, xi).
#pragma once

#include "lgq/phasealg.hpp"

#include "json.hpp"

namespace lgq {

struct StdVectorField {
    Vec X;   // g^N component
    Vec xi;  // (g*)^N component
};

struct Report {
    std::string check;
    bool pass = true;
    nlohmann::json witness;
    nlohmann::json to_json() const;
};

class Sympgeo {
public:
    explicit Sympgeo(const Phase& ph) : ph_(ph) {}

    GQ theta(const PhasePoint& pt, const StdVectorField& v) const;
    GQ omega(const PhasePoint& pt, const StdVectorField& v, const StdVectorField& w) const;
    // (d_{g*} f, -ad*(d_{g*} f) alpha - d_G f) at pt
    StdVectorField hamiltonian_vf(const PhasePoly& f, const PhasePoint& pt) const;
    // df(v) at pt
    GQ differential(const PhasePoly& f, const PhasePoint& pt, const StdVectorField& v) const;
    // Fundamental field of diagonal conjugation along B in g, at pt.
    StdVectorField fundamental_field(const Vec& B, const PhasePoint& pt) const;

    PhasePoly poisson(const PhasePoly& f, const PhasePoly& g) const;

    // Lifted connection on standard fields, value at pt.  The optional
    // perturbation adds a non-equivariant term (negative control).
    StdVectorField bnw(const PhasePoint& pt, const StdVectorField& v, const StdVectorField& w,
                       const Q& perturbation = Q(0)) const;
    Report bnw_invariance_check(const Mat2& g, const std::vector<PhasePoint>& pts,
                                const Q& perturbation = Q(0)) const;

private:
    GQ eval0(const PhasePoly& f, const PhasePoint& pt) const;
    const Phase& ph_;
};

}  // namespace lgq
