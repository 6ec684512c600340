// Exact checks of the generating and acyclicity hypotheses for SU(2)^N with
// diagonal conjugation: slice models at points of the zero section, witness
// curves for the torus stabilizer, regularizing paths for the full
// stabilizer, and surjectivity paths for the moment map.
//
// su(2) is identified with Q^3 through the basis E_k, so [X, Y] = X x Y and
// Ad(a) is a rational rotation for rational unit quaternions. The diagonal
// torus has Lie algebra spanned by E_3.
#pragma once

#include "lgq/phasealg.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lgq {

using R3 = std::array<Q, 3>;
using M3 = std::array<Q, 9>;  // row-major
// Polynomial in the path parameter t (coefficients stored as a lambda series).
using TPoly = Series;
using T3 = std::array<TPoly, 3>;

R3 cross(const R3& x, const R3& y);
Q dot(const R3& x, const R3& y);
R3 mat_apply(const M3& m, const R3& x);
M3 ad_matrix(const Mat2& a);
T3 to_t3(const R3& x);
T3 cross(const T3& x, const T3& y);

bool is_central(const Mat2& a);  // a = +-1
bool is_diagonal(const Mat2& a);
const R3& torus_axis();

// Exact linear algebra over Q on short vectors.
int rank_of(const std::vector<std::vector<Q>>& rows);
// Basis of {x : sum_j x_j cols[j] = 0}.
std::vector<std::vector<Q>> kernel_of(const std::vector<std::vector<Q>>& cols);
bool same_subspace(const std::vector<R3>& u, const std::vector<R3>& w);

enum class Stabilizer { Z, T, G };
std::string to_string(Stabilizer s);

// Basis of the intersection of the centralizers C(a_i) in su(2).
std::vector<R3> centralizer_intersection(const std::vector<Mat2>& a);
Stabilizer stabilizer_class(const std::vector<Mat2>& a);

struct SliceModel {
    std::vector<Mat2> a;
    std::vector<M3> ad;
    Stabilizer tag = Stabilizer::Z;
    std::vector<R3> stabilizer;             // basis of the stabilizer subalgebra
    std::vector<std::vector<R3>> va_basis;  // basis of V_a = {X : sum Ad(a_i) X_i - X_i = 0}

    static SliceModel make(const std::vector<Mat2>& a);
    int N() const { return static_cast<int>(a.size()); }
    bool in_Va(const std::vector<R3>& X) const;
    bool in_V(const std::vector<R3>& X, const std::vector<R3>& Y) const { return in_Va(X) && in_Va(Y); }
};

// sum X_i x Y_i projected onto the stabilizer subalgebra; throws unless (X, Y) lies in V.
R3 slice_moment(const SliceModel& m, const std::vector<R3>& X, const std::vector<R3>& Y);

struct WitnessPoint {
    int curve = 0;  // +1 or -1
    Q t;
    Q value;
};

struct TWitness {
    std::string branch;        // alpha_plus, alpha_minus, both_zero, identically_zero
    std::vector<int> order;    // copy order used (last copy is not central)
    R3 x{};
    Q alpha_plus, alpha_minus, beta;
    TPoly j_plus, j_minus;     // J^V_B(gamma_+-(t))
    bool curves_in_V = false;  // symbolic in t
    bool coefficients_match = false;
    bool starts_at_point = false;
    bool sign_dichotomy = false;
    WitnessPoint positive, negative;
    bool ok() const { return curves_in_V && coefficients_match && starts_at_point && sign_dichotomy; }
    nlohmann::json to_json() const;
};

// Requires torus stabilizer with diagonal a_i and (X, Y) in the zero set of J^V on V.
TWitness witness_curves_T(const SliceModel& m, const std::vector<R3>& X, const std::vector<R3>& Y);

// Polynomial curve (X(t), Y(t)) or A(t) with the checks performed on it.
struct PathCheck {
    int branch = 0;
    std::vector<T3> X, Y;        // slice coordinates, or A(t) in X for the acyclicity paths
    bool starts_at_point = false;
    bool on_zero_set = false;    // constraint holds identically in t
    bool regular_off_zero = false;  // gcd of the maximal minors is c t^k
    bool rank_at_zero_ok = false;   // rank drops at t = 0 unless the branch is already regular
    std::vector<Q> sampled_t;    // exact rank checks at these t
    bool sampled_ranks_ok = false;
    bool ok() const { return starts_at_point && on_zero_set && regular_off_zero && rank_at_zero_ok && sampled_ranks_ok; }
    nlohmann::json to_json() const;
};

// Full stabilizer, N >= 2: (X, Y) with all X_i, Y_i parallel.  Branches:
// 1 xi_1, upsilon_2 != 0; 2 xi_1 != 0 = upsilon_2; 3 xi_1 = 0 != upsilon_2; 4 xi_1 = upsilon_2 = 0.
PathCheck regularizing_path_G(const std::vector<R3>& X, const std::vector<R3>& Y);

// Orthogonal complement of the image of J' at (a, A), from the Jacobian.
std::vector<R3> complement_via_jacobian(const std::vector<Mat2>& a, const std::vector<R3>& A);
// Intersection of C(a_i) and C(Ad(a_i) A_i).
std::vector<R3> complement_via_centralizers(const std::vector<Mat2>& a, const std::vector<R3>& A);
// Moment map sum Ad(a_i) A_i - A_i.
R3 moment_value(const std::vector<Mat2>& a, const std::vector<R3>& A);

// a_1, a_2 diagonal and not central: B_2 with Ad(a_1)B_1 - B_1 + Ad(a_2)B_2 - B_2 = 0.
R3 torus_pair_solve(const Mat2& a1, const Mat2& a2, const R3& B1);

// Path A(t) through a zero of the moment map with surjective J' for t != 0.
// Branches: 0 already surjective; 1 I = g; 2 I = t, all a_i central;
// 3 I = t, mixed; 4 I = t, no a_i central.  For I = t the a_i must be diagonal.
PathCheck surjectivity_path(const std::vector<Mat2>& a, const std::vector<R3>& A);

// Sampled suite: kind in {T, G, acyclic, complement, torus_pair, all}.
nlohmann::json hypotheses_suite(const std::string& kind, int samples, uint64_t seed);

}  // namespace lgq
