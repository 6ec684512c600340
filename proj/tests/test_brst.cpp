#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/brst.hpp"
#include "lgq/io.hpp"

#include <random>

using namespace lgq;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
};

PhasePoly random_poly(const Phase& ph, Rng& rng, int terms = 3) {
    const int N = ph.N();
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        Mono m;
        for (int e = 0; e < 2; ++e) m.add(static_cast<int>(rng(0, 4 * N - 1)), static_cast<int>(rng(0, 1)));
        for (int e = 0; e < 2; ++e) m.add(static_cast<int>(rng(4 * N, 7 * N - 1)), static_cast<int>(rng(0, 1)));
        t.emplace_back(m, Series(GQ(Q(rng(-3, 3)))));
    }
    return PhasePoly::from_terms(N, t);
}

GhostPoly random_ghost(const Phase& ph, Rng& rng) {
    GhostPoly x(ph.N());
    for (int k = 0; k < 2; ++k) {
        GhostKey key = make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7)));
        x.add_term(key, random_poly(ph, rng));
    }
    return x;
}

std::vector<GhostPoly> generators(const Phase& ph) {
    std::vector<GhostPoly> g;
    const int N = ph.N();
    for (int l = 0; l < 3; ++l) {
        g.push_back(GhostPoly::ghost(N, l));
        g.push_back(GhostPoly::antighost(N, l));
    }
    g.push_back(GhostPoly::scalar(ph.p(0) * ph.entry(0, 0, 1)));
    g.push_back(GhostPoly::scalar(ph.entry(0, 1, 1)));
    return g;
}

}  // namespace

TEST_CASE("word products follow graded commutativity") {
    auto [s1, k1] = word_product(make_key(1, 0), make_key(0, 1));
    auto [s2, k2] = word_product(make_key(0, 1), make_key(1, 0));
    CHECK(k1 == k2);
    CHECK(s1 == -s2);
    CHECK(word_product(make_key(1, 0), make_key(1, 0)).first == 0);
    GhostPoly w = GhostPoly::word(PhasePoly(1, Series(1)), {2, 0}, {});
    CHECK(w.coeff(make_key(5, 0)) == PhasePoly(1, Series(-1)));
}

TEST_CASE("insertions") {
    const int N = 1;
    GhostPoly e = GhostPoly::ghost(N, 1);
    CHECK(insert_left({false, 1}, e) == GhostPoly::scalar(PhasePoly(N, Series(1))));
    CHECK(insert_left({false, 0}, GhostPoly::scalar(PhasePoly(N, Series(1)))).is_zero());
    Rng rng(1);
    Phase ph(N);
    for (int s = 0; s < 20; ++s) {
        GhostKey k = make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7)));
        GhostPoly x(N);
        x.add_term(k, PhasePoly(N, Series(1)));
        int n = word_degree(k);
        for (int l = 0; l < 3; ++l)
            for (bool g : {true, false}) {
                GhostPoly lhs = insert_right({g, l}, x);
                GhostPoly rhs = insert_left({g, l}, x);
                CHECK(lhs == ((n + 1) % 2 ? -rhs : rhs));
            }
    }
}

TEST_CASE("Koszul differential on antighosts") {
    Phase ph(1);
    StarProduct sp(ph, 1);
    Brst b(sp);
    for (int l = 0; l < 3; ++l) CHECK(b.koszul_d(GhostPoly::antighost(1, l)) == GhostPoly::scalar(ph.moment(l)));
    CHECK(b.koszul_d(GhostPoly::scalar(ph.p(0))).is_zero());
    GhostPoly e12 = GhostPoly::word(ph.one(), {}, {0, 1});
    CHECK(b.koszul_d(b.koszul_d(e12)).det_normal().is_zero());
}

TEST_CASE("CE differential of a ghost gives minus the structure constants") {
    Phase ph(1);
    StarProduct sp(ph, 1);
    Brst b(sp);
    LieData g = LieData::su2();
    for (int l = 0; l < 3; ++l) {
        GhostPoly d = b.ce_delta(GhostPoly::ghost(1, l));
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k)
                CHECK(d.coeff(make_key((1 << j) | (1 << k), 0)) == PhasePoly(1, Series(GQ(-g.C(j, k, l)))));
    }
}

TEST_CASE("classical differentials square to zero and anticommute") {
    for (int N = 1; N <= 2; ++N) {
        Phase ph(N);
        StarProduct sp(ph, 1);
        Brst b(sp);
        Rng rng(7 + N);
        for (int s = 0; s < 8; ++s) {
            GhostPoly x = random_ghost(ph, rng);
            CHECK(b.koszul_d(b.koszul_d(x)).det_normal().is_zero());
            CHECK(b.ce_delta(b.ce_delta(x)).det_normal().is_zero());
            CHECK((b.ce_delta(b.koszul_d(x)) + b.koszul_d(b.ce_delta(x))).det_normal().is_zero());
            CHECK(b.classical_brst_d(b.classical_brst_d(x)).det_normal().is_zero());
        }
    }
}

TEST_CASE("classical charge generates the BRST differential") {
    Phase ph(2);
    StarProduct sp(ph, 1);
    Brst b(sp);
    GhostPoly th = b.classical_charge();
    CHECK(b.brst_poisson(th, th).det_normal().is_zero());
    Rng rng(3);
    std::vector<GhostPoly> xs = generators(ph);
    for (int s = 0; s < 4; ++s) xs.push_back(random_ghost(ph, rng));
    for (const auto& x : xs) CHECK((b.classical_brst_d(x) - b.brst_poisson(th, x)).det_normal().is_zero());
}

TEST_CASE("BRST bracket: ghost-free case, antisymmetry and Leibniz") {
    Phase ph(1);
    StarProduct sp(ph, 1);
    Brst b(sp);
    Sympgeo sg(ph);
    PhasePoly f = ph.p(0) * ph.entry(0, 0, 1), g = ph.p(2) * ph.p(1);
    CHECK(b.brst_poisson(GhostPoly::scalar(f), GhostPoly::scalar(g)) == GhostPoly::scalar(-sg.poisson(f, g)));
    Rng rng(5);
    for (int s = 0; s < 10; ++s) {
        GhostPoly x(1), y(1), z(1);
        x.add_term(make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7))), random_poly(ph, rng));
        y.add_term(make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7))), random_poly(ph, rng));
        z.add_term(make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7))), random_poly(ph, rng));
        int px = x.parity(), py = y.parity();
        GhostPoly xy = b.brst_poisson(x, y), yx = b.brst_poisson(y, x);
        CHECK((xy + ((px * py) % 2 ? -yx : yx)).is_zero());
        GhostPoly lhs = b.brst_poisson(x, mu(y, z));
        GhostPoly rhs = mu(xy, z) + ((px * py) % 2 ? -mu(y, b.brst_poisson(x, z)) : mu(y, b.brst_poisson(x, z)));
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("quantized representation") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    Brst b(sp);
    ProductLieData g(LieData::su2(), 1);
    // L_B J_C = J_{[B,C]} exactly
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec Bi = g.basis(i), Cj = g.basis(j);
            CHECK(b.quantized_rep(i, ph.moment(j)).det_normal() ==
                  ph.moment_component(g.bracket(Bi, Cj)).det_normal().truncated(2));
        }
    PhasePoly pull = ph.entry(0, 0, 1) * ph.entry(0, 1, 0);
    for (int l = 0; l < 3; ++l)
        CHECK((b.quantized_rep(l, pull).lambda_coeff(0) + ph.fundamental_derive(g.basis(l), pull)).det_normal().is_zero());
}

TEST_CASE("quantum BRST identities") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    Brst b(sp);
    GhostPoly th = b.quantum_charge();
    CHECK(th == b.classical_charge());
    CHECK(b.quantum_product(th, th).det_normal().truncated(2).is_zero());
    for (const auto& x : generators(ph)) {
        CHECK((b.quantum_brst_d(x) - b.ad_quantum_charge(x)).det_normal().truncated(2).is_zero());
        CHECK(b.quantum_brst_d(b.quantum_brst_d(x)).det_normal().truncated(1).is_zero());
        CHECK((b.quantum_koszul_d(x) - b.koszul_d(x)).truncated(0).is_zero());
    }
}

TEST_CASE("the other exponent sign breaks the quantum charge identity") {
    Phase ph(1);
    StarProduct sp(ph, 2);
    Brst b(sp, -1);
    GhostPoly th = b.quantum_charge();
    CHECK_FALSE(b.quantum_product(th, th).det_normal().truncated(2).is_zero());
}

TEST_CASE("quantum product is associative") {
    Phase ph(1);
    StarProduct sp(ph, 2);
    Brst b(sp);
    Rng rng(17);
    for (int s = 0; s < 6; ++s) {
        GhostPoly x = random_ghost(ph, rng), y = random_ghost(ph, rng), z = random_ghost(ph, rng);
        GhostPoly lhs = b.quantum_product(b.quantum_product(x, y), z);
        GhostPoly rhs = b.quantum_product(x, b.quantum_product(y, z));
        CHECK((lhs - rhs).truncated(2).is_zero());
    }
}

TEST_CASE("quantized Koszul differential squares to zero") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    Brst b(sp);
    GhostPoly e123 = GhostPoly::word(ph.p(0), {1}, {0, 1, 2});
    CHECK(b.quantum_koszul_d(b.quantum_koszul_d(e123)).det_normal().is_zero());
    GhostPoly e12 = GhostPoly::word(ph.entry(0, 0, 0), {}, {0, 1});
    CHECK(b.quantum_koszul_d(b.quantum_koszul_d(e12)).det_normal().is_zero());
}

TEST_CASE("ghost polynomial JSON round trip") {
    Phase ph(2);
    Rng rng(2);
    GhostPoly x = random_ghost(ph, rng);
    CHECK(GhostPoly::from_json(2, x.to_json()) == x);
}
