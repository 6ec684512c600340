// Polynomial functions on T*SU(2)^N in left trivialization: 2x2 entries of
// each group copy, momenta p_I, Series coefficients.
#pragma once

#include "lgq/liealg.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace lgq {

constexpr int kMaxVars = 24;
constexpr int kMaxCopies = 3;

struct Mono {
    std::array<uint64_t, 3> w{};

    int exp(int v) const { return static_cast<int>((w[v >> 3] >> ((v & 7) * 8)) & 0xff); }
    void set(int v, int e) {
        uint64_t& x = w[v >> 3];
        int s = (v & 7) * 8;
        x = (x & ~(uint64_t{0xff} << s)) | (uint64_t(e) << s);
    }
    void add(int v, int e) { set(v, exp(v) + e); }
    int degree() const;
    bool divides(const Mono& o) const;
    Mono operator*(const Mono& o) const {
        Mono r;
        for (int i = 0; i < 3; ++i) r.w[i] = w[i] + o.w[i];
        return r;
    }
    Mono operator/(const Mono& o) const {
        Mono r;
        for (int i = 0; i < 3; ++i) r.w[i] = w[i] - o.w[i];
        return r;
    }
    Mono lcm(const Mono& o) const;
    bool is_one() const { return w[0] == 0 && w[1] == 0 && w[2] == 0; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.w == b.w; }
    friend bool operator!=(const Mono& a, const Mono& b) { return a.w != b.w; }
    friend bool operator<(const Mono& a, const Mono& b) { return a.w < b.w; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const {
        uint64_t h = m.w[0] * 0x9E3779B97F4A7C15ull;
        h ^= (m.w[1] + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2));
        h ^= (m.w[2] + 0x2545F4914F6CDD1Dull + (h << 6) + (h >> 2));
        return static_cast<size_t>(h);
    }
};

// Variable layout for N copies: entries a[n][i][j] at 4n + 2i + j, momenta
// p[n][k] at 4N + 3n + k.
struct Layout {
    int N = 1;
    int nvars() const { return 7 * N; }
    int entry(int n, int i, int j) const { return 4 * n + 2 * i + j; }
    int mom(int n, int k) const { return 4 * N + 3 * n + k; }
    int mom(int I) const { return 4 * N + I; }
    bool is_entry(int v) const { return v < 4 * N; }
    int copy_of(int v) const { return is_entry(v) ? v / 4 : (v - 4 * N) / 3; }
    std::string var_name(int v) const;
};

using Term = std::pair<Mono, Series>;

class PhasePoly {
public:
    PhasePoly() = default;
    explicit PhasePoly(int N) : N_(N) {}
    PhasePoly(int N, Series c);
    static PhasePoly var(int N, int v);
    static PhasePoly entry(int N, int n, int i, int j);
    static PhasePoly p(int N, int I);
    static PhasePoly lambda(int N);

    int N() const { return N_; }
    Layout layout() const { return Layout{N_}; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    // Build from unsorted terms with repeated monomials.
    static PhasePoly from_terms(int N, std::vector<Term> terms);

    PhasePoly operator-() const;
    friend PhasePoly operator+(const PhasePoly& a, const PhasePoly& b);
    friend PhasePoly operator-(const PhasePoly& a, const PhasePoly& b);
    friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
    PhasePoly& operator+=(const PhasePoly& b) { return *this = *this + b; }
    PhasePoly& operator-=(const PhasePoly& b) { return *this = *this - b; }
    PhasePoly& operator*=(const PhasePoly& b) { return *this = *this * b; }
    PhasePoly scaled(const Series& s) const;
    PhasePoly scaled(const GQ& s) const;
    PhasePoly mul_mono(const Mono& m, const Series& c) const;
    PhasePoly pow(int e) const;
    friend bool operator==(const PhasePoly& a, const PhasePoly& b);
    friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

    // Precision control.
    PhasePoly truncated(int K) const;
    int min_prec() const;
    // Coefficient of lambda^k as a lambda-free polynomial.
    PhasePoly lambda_coeff(int k) const;
    // Multiply by lambda^k; k < 0 requires vanishing low orders.
    PhasePoly shift(int k) const;
    int lambda_valuation() const;  // -1 for zero
    int lambda_degree() const;

    int fiber_degree() const;  // max fiber degree, -1 for zero
    int entry_degree() const;
    int total_degree() const;
    PhasePoly fiber_part(int l) const;
    PhasePoly entry_part(int e) const;
    bool is_fiber_homogeneous(int l) const;

    // Reduce modulo det a_n - 1 by a12*a21 -> a11*a22 - 1.
    PhasePoly det_normal() const;

    std::string str() const;

private:
    void canon();
    int N_ = 1;
    std::vector<Term> t_;  // sorted by Mono, nonzero coefficients
};

// A derivation sending each variable to a linear form in the variables.
struct LinearDerivation {
    std::vector<std::vector<std::pair<int, GQ>>> img;
    PhasePoly apply(const PhasePoly& f) const;
};

// Substitution homomorphism: variable v goes to a polynomial image[v].
PhasePoly substitute(const PhasePoly& f, const std::vector<PhasePoly>& image);

// 2x2 complex matrix.
using Mat2 = std::array<GQ, 4>;
Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_adj(const Mat2& a);
GQ mat_det(const Mat2& a);
GQ mat_tr(const Mat2& a);
Mat2 mat_identity();
Mat2 mat_conj_transpose(const Mat2& a);

// Rational unit quaternion (w, x, y, z) as the SU(2) matrix
// [[w + iz, y + ix], [-y + ix, w - iz]].
Mat2 quaternion_matrix(const Q& w, const Q& x, const Q& y, const Q& z);
// Rational unit quaternion from inverse stereographic projection of (u1,u2,u3).
std::array<Q, 4> stereographic_quaternion(const Q& u1, const Q& u2, const Q& u3);

struct PhasePoint {
    std::vector<Mat2> a;  // N group elements
    Vec alpha;            // 3N fiber coordinates
};

class Phase {
public:
    explicit Phase(int N);
    int N() const { return N_; }
    int dim() const { return 3 * N_; }
    const ProductLieData& lie() const { return lie_; }
    Layout layout() const { return Layout{N_}; }
    // E_k = -(i/2) sigma_k as 2x2 matrices.
    static const Mat2& E(int k);
    // Coordinates of a traceless 2x2 matrix in the basis E_k: -2 tr(X E_k).
    static Vec coords(const Mat2& X);
    static Mat2 from_coords(const Vec& x, int offset = 0);
    // 3x3 matrix of Ad(g): column k holds the coordinates of g E_k g^{-1}.
    static std::array<GQ, 9> Ad(const Mat2& g);

    PhasePoly one() const { return PhasePoly(N_, Series(1)); }
    PhasePoly zero() const { return PhasePoly(N_); }
    PhasePoly entry(int n, int i, int j) const { return PhasePoly::entry(N_, n, i, j); }
    PhasePoly p(int I) const { return PhasePoly::p(N_, I); }

    // Derivation along the left-invariant field (E_I, 0).
    PhasePoly left_derive(int I, const PhasePoly& f) const;
    PhasePoly left_derive_seq(const std::vector<int>& seq, const PhasePoly& f) const;
    PhasePoly fiber_derive(int I, const PhasePoly& f) const;
    // Fundamental vector field of diagonal conjugation along B in g.
    PhasePoly fundamental_derive(const Vec& B, const PhasePoly& f) const;

    PhasePoly tautological(const Vec& X) const;
    // J_B = sum_n alpha_n(Ad(a_n^{-1}) B - B), B in g (dimension 3).
    PhasePoly moment_component(const Vec& B) const;
    PhasePoly moment(int l) const;  // J_l = J_{E_l}
    Vec moment_map(const PhasePoint& pt) const;

    // Pullback f o Psi_g with Psi_g(a, alpha) = (g a g^{-1}, Ad*(g) alpha).
    PhasePoly group_action(const Mat2& g, const PhasePoly& f) const;
    PhasePoint group_action(const Mat2& g, const PhasePoint& pt) const;
    // Pullback along left translation a_n -> g a_n (fibers fixed).
    PhasePoly left_translate(const Mat2& g, const PhasePoly& f) const;

    // Plaquette word: list of (copy, +1/-1).
    using Word = std::vector<std::pair<int, int>>;
    PhasePoly hamiltonian(const Q& kappa, const Q& delta, const std::vector<Word>& plaquettes) const;
    PhasePoly trace_word(const Word& w, bool inverse) const;

    Series evaluate(const PhasePoly& f, const PhasePoint& pt) const;

    // Random helpers operate through an explicit generator function
    // returning integers in [lo, hi].
    using IntGen = std::function<long long(long long, long long)>;
    PhasePoint random_point(const IntGen& gen) const;
    Mat2 random_group_element(const IntGen& gen) const;

private:
    int N_;
    ProductLieData lie_;
    std::vector<LinearDerivation> left_;
};

}  // namespace lgq
