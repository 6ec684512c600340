#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/hypotheses.hpp"

#include <random>

using namespace lgq;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
    Q rat() { return Q((*this)(-5, 5), (*this)(1, 3)); }
};

R3 v3(long long a, long long b, long long c) { return {Q(a), Q(b), Q(c)}; }

Mat2 torus(const Q& u) {
    auto q = stereographic_quaternion(Q(0), Q(0), u);
    return quaternion_matrix(q[0], q[1], q[2], q[3]);
}

Mat2 minus_one() { return quaternion_matrix(Q(-1), Q(0), Q(0), Q(0)); }

Mat2 group(Rng& rng) {
    auto q = stereographic_quaternion(rng.rat(), rng.rat(), rng.rat());
    return quaternion_matrix(q[0], q[1], q[2], q[3]);
}

// J^V_B on the torus slice evaluated directly with rational vectors.
Q jv_direct(const std::vector<R3>& X, const std::vector<R3>& Y) {
    Q s(0);
    for (size_t i = 0; i < X.size(); ++i) s += cross(X[i], Y[i])[2];
    return s;
}

}  // namespace

TEST_CASE("stabilizer classes") {
    CHECK(stabilizer_class({mat_identity(), minus_one()}) == Stabilizer::G);
    CHECK(stabilizer_class({torus(Q(1, 2)), mat_identity()}) == Stabilizer::T);
    CHECK(stabilizer_class({torus(Q(1, 2)), torus(Q(3))}) == Stabilizer::T);
    Rng rng(1);
    CHECK(stabilizer_class({group(rng), group(rng)}) == Stabilizer::Z);
    CHECK(stabilizer_class({group(rng)}) == Stabilizer::T);  // N = 1: the rotation axis survives
}

TEST_CASE("su(2) coordinates: bracket is the cross product, Ad is a rotation") {
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        Mat2 g = group(rng);
        M3 m = ad_matrix(g);
        R3 x = {rng.rat(), rng.rat(), rng.rat()}, y = {rng.rat(), rng.rat(), rng.rat()};
        CHECK(dot(mat_apply(m, x), mat_apply(m, y)) == dot(x, y));
        CHECK(mat_apply(m, cross(x, y)) == cross(mat_apply(m, x), mat_apply(m, y)));
    }
    // [E_1, E_2] = E_3 in matrix form.
    Vec c = Phase::coords(mat_mul(Phase::E(0), Phase::E(1)));
    Vec d = Phase::coords(mat_mul(Phase::E(1), Phase::E(0)));
    CHECK(c[2] - d[2] == GQ(1));
}

TEST_CASE("slice moment examples") {
    SliceModel g1 = SliceModel::make({mat_identity()});
    CHECK(g1.tag == Stabilizer::G);
    CHECK(slice_moment(g1, {v3(1, 0, 0)}, {v3(0, 1, 0)}) == v3(0, 0, 1));
    CHECK(slice_moment(g1, {v3(1, 2, 3)}, {v3(1, 2, 3)}) == v3(0, 0, 0));

    SliceModel t = SliceModel::make({torus(Q(1, 3)), mat_identity()});
    REQUIRE(t.tag == Stabilizer::T);
    // V_a: (Ad(a_1) - 1) X_1 = 0 forces X_1 onto the axis; X_2 is free.
    std::vector<R3> X = {v3(0, 0, 2), v3(1, 0, 0)}, Y = {v3(0, 0, 1), v3(0, 3, 5)};
    R3 mom = slice_moment(t, X, Y);
    CHECK(mom == v3(0, 0, 3));
    CHECK_THROWS(slice_moment(t, {v3(1, 0, 0), v3(0, 0, 0)}, Y));
}

TEST_CASE("torus witness at the origin: both alphas vanish, beta = N + |x|^2 - 1") {
    SliceModel m = SliceModel::make({torus(Q(1, 2)), torus(Q(2))});
    std::vector<R3> Z(2, v3(0, 0, 0));
    TWitness w = witness_curves_T(m, Z, Z);
    CHECK(w.ok());
    CHECK(w.branch == "both_zero");
    CHECK(w.alpha_plus.is_zero());
    CHECK(w.alpha_minus.is_zero());
    CHECK(w.beta == Q(2) + dot(w.x, w.x) - Q(1));
    CHECK(w.beta.sign() > 0);
    // Direct evaluation of the curves, independent of the polynomial bookkeeping.
    R3 e2 = v3(1, 0, 0), e3 = v3(0, 1, 0), Rx = {-w.x[1], w.x[0], Q(0)};
    for (Q tv : {Q(1, 3), Q(-2)}) {
        std::vector<R3> Xp = {e2, w.x}, Yp = {e3, Rx}, Ym = {e3, Rx};
        for (auto& v : Xp)
            for (auto& c : v) c *= tv;
        for (auto& v : Yp)
            for (auto& c : v) c *= tv;
        for (auto& v : Ym)
            for (auto& c : v) c *= -tv;
        CHECK(m.in_V(Xp, Yp));
        CHECK(jv_direct(Xp, Yp).sign() > 0);
        CHECK(jv_direct(Xp, Ym).sign() < 0);
    }
}

TEST_CASE("torus witness with alpha_+ = 0 and alpha_- != 0") {
    SliceModel m = SliceModel::make({torus(Q(1, 2)), torus(Q(-3))});
    Rng rng(4);
    int hits = 0;
    for (int k = 0; k < 40 && hits < 3; ++k) {
        std::vector<R3> X(2, v3(0, 0, 0)), Y(2, v3(0, 0, 0));
        for (const auto& b : m.va_basis) {
            Q c = rng.rat(), d = rng.rat();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 3; ++j) {
                    X[i][j] += c * b[i][j];
                    Y[i][j] += d * b[i][j];
                }
        }
        // Y parallel to X copywise puts (X, Y) on the zero set.
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) Y[i][j] = Q(2) * X[i][j];
        REQUIRE(jv_direct(X, Y).is_zero());
        TWitness w0 = witness_curves_T(m, X, Y);
        Q P = (w0.alpha_plus + w0.alpha_minus) / Q(2), S = (w0.alpha_plus - w0.alpha_minus) / Q(2);
        if (P.is_zero() || S.is_zero()) continue;
        for (auto& x : X)
            for (auto& c : x) c *= -P / S;
        TWitness w = witness_curves_T(m, X, Y);
        CHECK(w.ok());
        CHECK(w.branch == "alpha_minus");
        CHECK(w.positive.curve == -1);
        CHECK(w.negative.curve == -1);
        ++hits;
    }
    CHECK(hits > 0);
}

TEST_CASE("torus witness for N = 1 falls in the identically-zero branch") {
    SliceModel m = SliceModel::make({torus(Q(2, 3))});
    std::vector<R3> X = {v3(0, 0, 4)}, Y = {v3(0, 0, -1)};
    TWitness w = witness_curves_T(m, X, Y);
    CHECK(w.branch == "identically_zero");
    CHECK(w.ok());
    CHECK_THROWS(witness_curves_T(SliceModel::make({mat_identity()}), X, Y));
}

TEST_CASE("full stabilizer: all four regularizing branches") {
    R3 a = v3(1, 2, -1);
    auto sc = [&](const Q& c) { return R3{c * a[0], c * a[1], c * a[2]}; };
    struct Case {
        Q x1, y2;
        int branch;
    };
    for (const Case& c : {Case{Q(2), Q(-1), 1}, Case{Q(3), Q(0), 2}, Case{Q(0), Q(5), 3}, Case{Q(0), Q(0), 4}}) {
        std::vector<R3> X = {sc(c.x1), sc(Q(1, 2)), sc(Q(-1))}, Y = {sc(Q(4)), sc(c.y2), sc(Q(2))};
        PathCheck pc = regularizing_path_G(X, Y);
        CHECK(pc.branch == c.branch);
        CHECK(pc.ok());
        CHECK(pc.on_zero_set);
        CHECK(pc.regular_off_zero);
    }
    CHECK_THROWS(regularizing_path_G({v3(1, 0, 0), v3(0, 1, 0)}, {v3(0, 0, 0), v3(0, 0, 0)}));
}

TEST_CASE("complement of im J': Jacobian, centralizers and polynomial derivatives agree") {
    Rng rng(9);
    for (int N : {1, 2}) {
        Phase ph(N);
        for (int k = 0; k < 6; ++k) {
            std::vector<Mat2> a;
            std::vector<R3> A;
            for (int i = 0; i < N; ++i) {
                bool special = (k % 2) == 1;
                a.push_back(special ? torus(rng.rat() + Q(1, 7)) : group(rng));
                A.push_back(special ? R3{Q(0), Q(0), rng.rat()} : R3{rng.rat(), rng.rat(), rng.rat()});
            }
            CHECK(same_subspace(complement_via_jacobian(a, A), complement_via_centralizers(a, A)));
            // Third route: differentiate J_l along L'_a E_I and along the fiber.
            PhasePoint pt;
            pt.a = a;
            for (int i = 0; i < N; ++i)
                for (int c = 0; c < 3; ++c) pt.alpha.push_back(GQ(A[i][c]));
            std::vector<R3> cols;
            for (int I = 0; I < 3 * N; ++I) {
                R3 cx, cy;
                for (int l = 0; l < 3; ++l) {
                    cx[l] = ph.evaluate(ph.left_derive(I, ph.moment(l)), pt).coeff(0).re;
                    cy[l] = ph.evaluate(ph.fiber_derive(I, ph.moment(l)), pt).coeff(0).re;
                }
                cols.push_back(cx);
                cols.push_back(cy);
            }
            std::vector<std::vector<Q>> bcols(3);
            for (int m = 0; m < 3; ++m)
                for (const auto& c : cols) bcols[m].push_back(c[m]);
            std::vector<R3> comp;
            for (const auto& v : kernel_of(bcols)) comp.push_back({v[0], v[1], v[2]});
            CHECK(same_subspace(comp, complement_via_centralizers(a, A)));
        }
    }
}

TEST_CASE("torus pair solver") {
    Rng rng(12);
    for (int k = 0; k < 20; ++k) {
        Mat2 a1 = torus(rng.rat() + Q(1, 11)), a2 = torus(rng.rat() + Q(1, 13));
        R3 B1 = {rng.rat(), rng.rat(), rng.rat()};
        R3 B2 = torus_pair_solve(a1, a2, B1);
        R3 r1 = mat_apply(ad_matrix(a1), B1), r2 = mat_apply(ad_matrix(a2), B2);
        for (int c = 0; c < 3; ++c) CHECK((r1[c] - B1[c] + r2[c] - B2[c]).is_zero());
    }
    CHECK_THROWS(torus_pair_solve(mat_identity(), torus(Q(2)), v3(1, 0, 0)));
}

TEST_CASE("surjectivity paths in every branch") {
    Mat2 t1 = torus(Q(1, 2)), t2 = torus(Q(-3)), one = mat_identity(), m1 = minus_one();
    auto ax = [](long long c) { return R3{Q(0), Q(0), Q(c)}; };
    struct Case {
        std::vector<Mat2> a;
        std::vector<R3> A;
        int branch;
    };
    Rng rng(3);
    std::vector<Case> cases = {
        {{group(rng), group(rng)}, {v3(0, 0, 0), v3(0, 0, 0)}, 0},
        {{one, m1}, {v3(0, 0, 0), v3(0, 0, 0)}, 1},
        {{one, m1, one}, {ax(0), ax(2), ax(-1)}, 2},
        {{t1, one}, {ax(3), ax(1)}, 3},
        {{t1, t2}, {ax(1), ax(2)}, 4},
        {{t1, t2, m1}, {ax(1), ax(0), ax(2)}, 3},
    };
    for (const auto& c : cases) {
        PathCheck pc = surjectivity_path(c.a, c.A);
        CHECK(pc.branch == c.branch);
        CHECK(pc.ok());
    }
    CHECK_THROWS(surjectivity_path({t1, t2}, {v3(1, 0, 0), v3(0, 0, 0)}));  // not in the zero set
}

TEST_CASE("suite is deterministic and passes") {
    auto a = hypotheses_suite("all", 20, 5), b = hypotheses_suite("all", 20, 5);
    CHECK(a.dump() == b.dump());
    CHECK(a["pass"].get<bool>());
    CHECK_THROWS(hypotheses_suite("nope", 1, 1));
}
