// Ghost/antighost algebra over phase-space polynomials, Koszul and
// Chevalley-Eilenberg differentials, classical BRST bracket and charge,
// and the quantum BRST product, differential and charge.
//
// Conventions: the deformation parameter of the BRST construction is
// hbar = i*lambda, the bracket on functions is {f,g}_A0 = -{f,g}_M, and
// the g-module structure on functions is L_X f = {J_X, f}_A0 = -X_M f.
#pragma once

#include "lgq/star.hpp"

#include <cstdint>
#include <map>

namespace lgq {

// Word key: bits 0..7 ghosts eps^l, bits 8..15 antighosts E_l.
using GhostKey = uint16_t;

inline int ghost_mask(GhostKey k) { return k & 0xff; }
inline int antighost_mask(GhostKey k) { return k >> 8; }
inline GhostKey make_key(int g, int a) { return static_cast<GhostKey>(g | (a << 8)); }
inline int word_length(GhostKey k) { return __builtin_popcount(k); }
// Total degree #ghosts - #antighosts.
inline int word_degree(GhostKey k) { return __builtin_popcount(ghost_mask(k)) - __builtin_popcount(antighost_mask(k)); }

class GhostPoly {
public:
    GhostPoly() = default;
    explicit GhostPoly(int N) : N_(N) {}
    static GhostPoly scalar(const PhasePoly& f);
    static GhostPoly ghost(int N, int l);
    static GhostPoly antighost(int N, int l);
    // f * eps^{g_1}...eps^{g_k} E_{a_1}...E_{a_m} in the given (unsorted) order.
    static GhostPoly word(const PhasePoly& f, const std::vector<int>& ghosts, const std::vector<int>& antighosts);

    int N() const { return N_; }
    const std::map<GhostKey, PhasePoly>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    PhasePoly coeff(GhostKey k) const;
    void add_term(GhostKey k, const PhasePoly& c);

    GhostPoly operator-() const;
    friend GhostPoly operator+(const GhostPoly& a, const GhostPoly& b);
    friend GhostPoly operator-(const GhostPoly& a, const GhostPoly& b);
    GhostPoly& operator+=(const GhostPoly& b);
    GhostPoly& operator-=(const GhostPoly& b) { return *this += -b; }
    GhostPoly scaled(const PhasePoly& f) const;
    GhostPoly scaled(const Series& s) const;
    GhostPoly map_coeffs(const std::function<PhasePoly(const PhasePoly&)>& fn) const;
    GhostPoly truncated(int K) const;
    GhostPoly det_normal() const;
    GhostPoly shift(int k) const;

    // Parity of the total degree; throws unless homogeneous.
    int parity() const;
    // Degree if homogeneous, otherwise throws.
    int degree() const;

    friend bool operator==(const GhostPoly& a, const GhostPoly& b);
    friend bool operator!=(const GhostPoly& a, const GhostPoly& b) { return !(a == b); }
    std::string str() const;
    nlohmann::json to_json() const;
    static GhostPoly from_json(int N, const nlohmann::json& j);

private:
    int N_ = 1;
    std::map<GhostKey, PhasePoly> t_;
};

// Sign and key of the product of two canonical words (nullopt-like: sign 0 if zero).
std::pair<int, GhostKey> word_product(GhostKey a, GhostKey b);

// Generator of g* (+) g: ghost eps^idx or antighost E_idx.
struct Generator {
    bool ghost;
    int idx;
};

// Left insertion i(v) on a single word: sign and resulting key (sign 0 when it vanishes).
std::pair<int, GhostKey> insert_left_word(const Generator& v, GhostKey w);
// Right insertion j(v) x = (-1)^{n+1} i(v) x for x of degree n.
std::pair<int, GhostKey> insert_right_word(const Generator& v, GhostKey w);
GhostPoly insert_left(const Generator& v, const GhostPoly& x);
GhostPoly insert_right(const Generator& v, const GhostPoly& x);

// Graded-commutative product with a caller-supplied coefficient product.
using CoeffProduct = std::function<PhasePoly(const PhasePoly&, const PhasePoly&)>;
GhostPoly mu(const GhostPoly& x, const GhostPoly& y);
GhostPoly mu_with(const GhostPoly& x, const GhostPoly& y, const CoeffProduct& prod);

// Word-level tensor for the Poisson endomorphisms.
using WordTensor = std::map<std::pair<GhostKey, GhostKey>, Q>;
WordTensor apply_P(const WordTensor& t, int d);
WordTensor apply_Pstar(const WordTensor& t, int d);

class Brst {
public:
    // The quantum exponent sign s in v.w = mu(exp(2 s hbar P)(v (x) w)).
    Brst(const StarProduct& sp, int exponent_sign = 1);

    const Phase& phase() const { return ph_; }
    const StarProduct& star() const { return sp_; }
    int d() const { return 3; }
    int K() const { return sp_.K(); }
    const PhasePoly& J(int l) const { return J_[l]; }

    // Bracket on functions {f,g}_A0 = -{f,g}_M.
    PhasePoly bracket0(const PhasePoly& f, const PhasePoly& g) const;
    // L_X f = {J_X, f}_A0 for X = E_l.
    PhasePoly classical_rep(int l, const PhasePoly& f) const;

    GhostPoly koszul_d(const GhostPoly& x) const;
    GhostPoly ce_delta(const GhostPoly& x) const;
    GhostPoly classical_brst_d(const GhostPoly& x) const;
    GhostPoly classical_charge() const;
    GhostPoly brst_poisson(const GhostPoly& x, const GhostPoly& y) const;

    // (1/hbar)(J_X * f - f * J_X); throws if the lambda^0 part is nonzero.
    PhasePoly quantized_rep(const Vec& X, const PhasePoly& f) const;
    PhasePoly quantized_rep(int l, const PhasePoly& f) const;

    GhostPoly quantum_product(const GhostPoly& x, const GhostPoly& y) const;
    GhostPoly quantum_koszul_d(const GhostPoly& x) const;
    GhostPoly quantum_ce_delta(const GhostPoly& x) const;
    GhostPoly quantum_brst_d(const GhostPoly& x) const;
    GhostPoly quantum_charge() const;
    // (1/hbar)(theta * x - (-1)^{|x|} x * theta).
    GhostPoly ad_quantum_charge(const GhostPoly& x) const;

    // ad(E_l) acting on antighost words as a derivation.
    GhostPoly ad_antighost(int l, const GhostPoly& x) const;

private:
    // CE differential with a given module action on coefficients.
    GhostPoly ce_generic(const GhostPoly& x, const std::function<PhasePoly(int, const PhasePoly&)>& rep) const;
    PhasePoly div_hbar(const PhasePoly& f) const;

    const Phase& ph_;
    const StarProduct& sp_;
    Sympgeo sg_;
    std::vector<PhasePoly> J_;
    LieData lie_;
    int sign_;
};

}  // namespace lgq
