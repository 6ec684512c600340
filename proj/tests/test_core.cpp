#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/star.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <random>

using namespace lgq;

namespace {

Vec basis3(int k) {
    Vec v(3);
    v[k] = GQ(1);
    return v;
}

Eigen::Matrix2cd to_eigen(const Mat2& m) {
    Eigen::Matrix2cd r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::complex<double>(m[2 * i + j].re.to_double(), m[2 * i + j].im.to_double());
    return r;
}

}  // namespace

TEST_CASE("rational fast path promotes on overflow") {
    Q big(INT64_MAX);
    Q s = big + Q(1);
    CHECK(s - Q(1) == big);
    CHECK((s * s) / s == s);
    CHECK(Q(6, -4) == Q(-3, 2));
    CHECK(Q::parse("-7/21") == Q(-1, 3));
}

TEST_CASE("series truncation and inverse") {
    Series a({GQ(1), GQ(1)}, 4);  // 1 + lambda
    Series b = a.inv();
    CHECK(b.coeff(3) == GQ(-1));
    CHECK((a * b) == Series(GQ(1)).with_prec(4));
    CHECK(Series::lambda_pow(2).shift(-1) == Series::lambda_pow(1));
}

TEST_CASE("su(2) data validates and brackets cyclically") {
    LieData g = LieData::su2();
    CHECK(g.validate().empty());
    ProductLieData gn(g, 2);
    CHECK(gn.bracket(gn.basis(0), gn.basis(1)) == gn.basis(2));
    CHECK(gn.bracket(gn.basis(3), gn.basis(0)) == gn.zero());
    std::vector<Q> bad(27);
    bad[0 * 9 + 1 * 3 + 2] = Q(1);
    CHECK(LieData(3, bad, {1, 0, 0, 0, 1, 0, 0, 0, 1}).validate().find("antisymmetry") != std::string::npos);
}

TEST_CASE("matrix E_k satisfy the bracket relations") {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Mat2 c = mat_mul(Phase::E(i), Phase::E(j));
            Mat2 d = mat_mul(Phase::E(j), Phase::E(i));
            Mat2 br;
            for (int r = 0; r < 4; ++r) br[r] = c[r] - d[r];
            Vec co = Phase::coords(br);
            ProductLieData g(LieData::su2(), 1);
            CHECK(co == g.bracket(basis3(i), basis3(j)));
        }
}

TEST_CASE("BCH terms against numeric log(exp X exp Y)") {
    ProductLieData g(LieData::su2(), 1);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> u(-5, 5);
    for (int trial = 0; trial < 5; ++trial) {
        Vec X(3), Y(3);
        for (int k = 0; k < 3; ++k) {
            X[k] = GQ(Q(u(rng), 100));
            Y[k] = GQ(Q(u(rng), 100));
        }
        Vec H(3);
        for (int r = 1; r <= 8; ++r) {
            Vec h = bch_term(g, r, X, Y);
            for (int k = 0; k < 3; ++k) H[k] += h[k];
        }
        Eigen::Matrix2cd ex = to_eigen(Phase::from_coords(X)).exp();
        Eigen::Matrix2cd ey = to_eigen(Phase::from_coords(Y)).exp();
        Eigen::Matrix2cd lg = (ex * ey).log();
        Eigen::Matrix2cd ours = to_eigen(Phase::from_coords(H));
        CHECK((lg - ours).norm() < 1e-9);
    }
}

TEST_CASE("BCH second term is half the bracket") {
    ProductLieData g(LieData::su2(), 1);
    Vec h = bch_term(g, 2, basis3(0), basis3(1));
    CHECK(h == Vec{GQ(0), GQ(0), GQ(Q(1, 2))});
}

TEST_CASE("Poisson bracket of moment components") {
    for (int N = 1; N <= 2; ++N) {
        Phase ph(N);
        Sympgeo sg(ph);
        ProductLieData g(LieData::su2(), 1);
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                PhasePoly lhs = sg.poisson(ph.moment(c), ph.moment(b)).det_normal();
                PhasePoly rhs = ph.moment_component(g.bracket(basis3(b), basis3(c))).det_normal();
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("Hamiltonian vector field contracts omega to -df") {
    Phase ph(2);
    Sympgeo sg(ph);
    std::mt19937_64 rng(5);
    auto gen = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    PhasePoly f = ph.p(0) * ph.entry(0, 0, 1) + ph.p(4) * ph.p(2) + ph.entry(1, 1, 0) * ph.entry(0, 0, 0);
    for (int s = 0; s < 3; ++s) {
        PhasePoint pt = ph.random_point(gen);
        StdVectorField Xf = sg.hamiltonian_vf(f, pt);
        for (int k = 0; k < 2 * ph.dim(); ++k) {
            StdVectorField v{Vec(ph.dim()), Vec(ph.dim())};
            if (k < ph.dim())
                v.X[k] = GQ(1);
            else
                v.xi[k - ph.dim()] = GQ(1);
            CHECK(sg.omega(pt, Xf, v) == -sg.differential(f, pt, v));
        }
    }
}

TEST_CASE("moment map generates the conjugation action") {
    Phase ph(2);
    Sympgeo sg(ph);
    std::mt19937_64 rng(9);
    auto gen = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    PhasePoint pt = ph.random_point(gen);
    for (int b = 0; b < 3; ++b) {
        StdVectorField BM = sg.fundamental_field(basis3(b), pt);
        StdVectorField XJ = sg.hamiltonian_vf(ph.moment(b), pt);
        CHECK(BM.X == XJ.X);
        CHECK(BM.xi == XJ.xi);
    }
}

TEST_CASE("lifted connection is equivariant and the control is not") {
    Phase ph(1);
    Sympgeo sg(ph);
    std::mt19937_64 rng(3);
    auto gen = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    std::vector<PhasePoint> pts{ph.random_point(gen), ph.random_point(gen)};
    Mat2 g = ph.random_group_element(gen);
    CHECK(sg.bnw_invariance_check(g, pts).pass);
    CHECK_FALSE(sg.bnw_invariance_check(g, pts, Q(1)).pass);
}
