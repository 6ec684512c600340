// Commutative algebra over Q(i)[a, p]: drl order with entries before
// momenta, Buchberger with generator tracking, normal forms, division with
// quotients, and syzygies by exact linear algebra in a degree window.
#pragma once

#include "lgq/phasealg.hpp"

#include "json.hpp"

#include <map>
#include <optional>

namespace lgq {

// Degree-reverse-lexicographic with variable 0 largest.
bool drl_greater(const Mono& a, const Mono& b, int nvars);

class Poly {
public:
    using TermT = std::pair<Mono, GQ>;
    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}
    static Poly from_phase(const PhasePoly& f);  // requires a lambda-free polynomial
    PhasePoly to_phase(int N) const;
    static Poly constant(int nvars, const GQ& c);
    static Poly monomial(int nvars, const Mono& m, const GQ& c);

    int nvars() const { return n_; }
    bool is_zero() const { return t_.empty(); }
    const std::vector<TermT>& terms() const { return t_; }
    const Mono& lm() const { return t_.front().first; }
    const GQ& lc() const { return t_.front().second; }
    int degree() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly mul_term(const Mono& m, const GQ& c) const;
    Poly scaled(const GQ& c) const;
    // this - c * m * g, without forming the intermediate product.
    void sub_mul(const Mono& m, const GQ& c, const Poly& g);
    friend bool operator==(const Poly& a, const Poly& b);
    std::string str() const;

private:
    int n_ = 0;
    std::vector<TermT> t_;  // sorted by drl, descending
};

struct GroebnerBasis {
    std::vector<Poly> gens;                 // original generators
    std::vector<Poly> basis;                // reduced basis
    std::vector<std::vector<Poly>> coeffs;  // basis[k] = sum_l coeffs[k][l] gens[l]
    bool complete = true;                   // false when S-pairs above the cap were dropped
    int degree_cap = 0;

    // Checks basis[k] == sum_l coeffs[k][l] gens[l] for every k.
    bool verify_certificates() const;
    nlohmann::json to_json(int N) const;
    static GroebnerBasis from_json(const nlohmann::json& j);
};

GroebnerBasis groebner(const std::vector<Poly>& gens, int degree_cap);

Poly normal_form(const Poly& f, const GroebnerBasis& gb);

struct Division {
    std::vector<Poly> quotients;  // against the original generators
    Poly remainder;
    bool in_window = true;        // every intermediate degree stayed within the cap
};
Division divide_with_quotients(const Poly& f, const GroebnerBasis& gb);

// Incremental echelon form over Q(i) with combination tracking.
class SparseEchelon {
public:
    using Row = std::map<int, GQ>;
    // Reduces v against the pivots; returns the residue and the combination c with
    // v - residue = sum c_k v_k over previously inserted vectors (by insertion index).
    std::pair<Row, Row> reduce(const Row& v) const;
    // Inserts v; returns the kernel combination when v depends linearly on earlier ones.
    std::optional<Row> insert(const Row& v);
    size_t rank() const { return pivots_.size(); }
    size_t inserted() const { return count_; }

private:
    std::map<int, std::pair<Row, Row>> pivots_;  // pivot column -> (row, combination)
    size_t count_ = 0;
};

// Moment-map setting for the ideal of the constraint set of T*SU(2)^N.
class ConstraintIdeal {
public:
    ConstraintIdeal(int N, int degree_cap);
    // From a stored basis; throws unless its generators are the constraint generators.
    ConstraintIdeal(int N, GroebnerBasis gb);
    int N() const { return N_; }
    const GroebnerBasis& basis() const { return gb_; }
    // Generators: J_1, J_2, J_3, then det(a_n) - 1.
    const std::vector<Poly>& generators() const { return gb_.gens; }

    PhasePoly rest(const PhasePoly& f) const;
    // h_0(f) = sum_l q_l E_l, returned as the J-quotients (q_1, q_2, q_3).
    std::vector<PhasePoly> h0(const PhasePoly& f, bool* in_window = nullptr) const;
    bool in_ideal(const PhasePoly& f) const;

private:
    int N_;
    GroebnerBasis gb_;
};

// Monomials of total degree <= D that are reduced modulo det(a_n) - 1.
std::vector<Mono> det_reduced_monomials(int N, int D);

struct SyzygyReport {
    int degree = 0;                             // max degree of the syzygy components
    std::vector<std::vector<PhasePoly>> syzygies;  // basis of syzygies of degree <= degree
    std::vector<std::vector<PhasePoly>> non_koszul;  // basis elements outside the Koszul span
    int koszul_window = 0;                      // degree window used for the Koszul span
};

// Syzygies (s_1, s_2, s_3) with sum s_l J_l = 0 modulo det - 1, deg s_l <= degree,
// and the subset not in the span of m (J_j e_k - J_k e_j), deg m <= koszul_window - deg J.
SyzygyReport moment_syzygies(int N, int degree, int koszul_window);

}  // namespace lgq
