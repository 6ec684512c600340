#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/star.hpp"

#include <random>

using namespace lgq;

namespace {

Vec basis3(int k) {
    Vec v(3);
    v[k] = GQ(1);
    return v;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
};

PhasePoly random_quadratic(const Phase& ph, Rng& rng) {
    const int nv = 7 * ph.N();
    std::vector<Term> t;
    for (int k = 0; k < 4; ++k) {
        Mono m;
        m.add(static_cast<int>(rng(0, nv - 1)), 1);
        m.add(static_cast<int>(rng(0, nv - 1)), 1);
        t.emplace_back(m, Series(GQ(Q(rng(-3, 3)), Q(rng(-1, 1)))));
    }
    return PhasePoly::from_terms(ph.N(), t);
}

}  // namespace

TEST_CASE("enumerated B_m agree with the structure-constant closed forms") {
    for (int N = 1; N <= 2; ++N)
        for (int m = 0; m <= 2; ++m) CHECK(build_bm(N, m) == closed_form_bm(N, m));
}

TEST_CASE("multiset and ordering enumeration") {
    CHECK(multisets(3, 2).size() == 6);
    CHECK(distinct_orderings({0, 0, 1}).size() == 3);
    CHECK(distinct_orderings({2, 1, 0}).size() == 6);
}

TEST_CASE("unit and pullbacks multiply commutatively from the left") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    PhasePoly f = ph.p(0) * ph.p(1) + ph.entry(0, 0, 1) * ph.p(2);
    CHECK(sp.star(ph.one(), f) == f.truncated(3));
    CHECK(sp.star(f, ph.one()) == f.truncated(3));
    PhasePoly base = ph.entry(0, 1, 0) * ph.entry(0, 0, 0);
    CHECK(sp.star(base, f) == (base * f).truncated(3));
}

TEST_CASE("first-order commutator is the Poisson bracket") {
    Phase ph(2);
    StarProduct sp(ph, 2);
    Sympgeo sg(ph);
    Rng rng(21);
    for (int s = 0; s < 5; ++s) {
        PhasePoly f = random_quadratic(ph, rng), g = random_quadratic(ph, rng);
        PhasePoly c = sp.commutator(f, g).lambda_coeff(1);
        PhasePoly pb = sg.poisson(f, g).scaled(nu_power(1));
        CHECK(c == pb);
    }
}

TEST_CASE("star product is associative on low-degree monomials") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    std::vector<PhasePoly> gens{ph.one()};
    for (int v = 0; v < 7; ++v) gens.push_back(PhasePoly::var(1, v));
    gens.push_back(ph.p(0) * ph.p(2));
    gens.push_back(ph.entry(0, 0, 1) * ph.p(1));
    for (const auto& f : gens)
        for (const auto& g : gens)
            for (const auto& h : gens) CHECK((sp.star(sp.star(f, g), h) - sp.star(f, sp.star(g, h))).is_zero());
}

TEST_CASE("perturbed B_2 breaks associativity") {
    Phase ph(1);
    Layout L{1};
    std::vector<BiDiffOp> ops{build_bm(1, 0), build_bm(1, 1), build_bm(1, 2)};
    Mono d1, d2;
    d1.set(L.mom(0), 2);
    d2.set(L.mom(1), 1);
    ops[2].terms.push_back({GQ(1), Mono{}, d1, d2});
    StarProduct bad(ph, 2, ops);
    std::vector<PhasePoly> gens{ph.p(0), ph.p(1), ph.entry(0, 0, 1), ph.entry(0, 0, 1) * ph.p(0),
                                ph.p(0) * ph.p(1)};
    int failures = 0;
    for (const auto& f : gens)
        for (const auto& g : gens)
            for (const auto& h : gens)
                if (!(bad.star(bad.star(f, g), h) - bad.star(f, bad.star(g, h))).is_zero()) ++failures;
    CHECK(failures > 0);
}

TEST_CASE("moment components are covariant") {
    for (int N = 1; N <= 2; ++N) {
        Phase ph(N);
        StarProduct sp(ph, 3);
        ProductLieData g(LieData::su2(), 1);
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                PhasePoly lhs = sp.commutator(ph.moment(b), ph.moment(c)).det_normal();
                PhasePoly rhs = ph.moment_component(g.bracket(basis3(b), basis3(c)))
                                    .scaled(Series::lambda_pow(1).scaled(GQ::I()))
                                    .det_normal();
                CHECK(lhs == rhs.truncated(3));
            }
    }
}

TEST_CASE("group action commutes with the star product") {
    Phase ph(2);
    StarProduct sp(ph, 3);
    Rng rng(4);
    for (int s = 0; s < 3; ++s) {
        Mat2 g = ph.random_group_element(rng);
        CHECK(sp.check_invariance(g, random_quadratic(ph, rng), random_quadratic(ph, rng)).pass);
    }
}

TEST_CASE("strong invariance residual") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    PhasePoly casimir = ph.p(0) * ph.p(0) + ph.p(1) * ph.p(1) + ph.p(2) * ph.p(2);
    PhasePoly pull = ph.entry(0, 0, 1) * ph.entry(0, 1, 1);
    for (int b = 0; b < 3; ++b) {
        CHECK(sp.check_strong_invariance(basis3(b), casimir).pass);
        CHECK(sp.check_strong_invariance(basis3(b), pull).pass);
    }
}

TEST_CASE("standard-order representation is a homomorphism") {
    Phase ph(1);
    StarProduct sp(ph, 3);
    std::vector<PhasePoly> gens{ph.p(0), ph.p(1) * ph.p(2), ph.entry(0, 0, 1), ph.entry(0, 1, 0) * ph.p(0)};
    std::vector<PhasePoly> psis{ph.entry(0, 0, 0), ph.entry(0, 0, 1) * ph.entry(0, 1, 1) * ph.entry(0, 1, 0)};
    for (const auto& f : gens)
        for (const auto& g : gens)
            for (const auto& psi : psis) {
                PhasePoly lhs = sp.rho(sp.star(f, g)).apply(ph, psi).truncated(3);
                PhasePoly rhs = sp.rho(f).apply(ph, sp.rho(g).apply(ph, psi)).truncated(3);
                CHECK(lhs == rhs);
                CHECK(sp.rho(f).apply(ph, psi).truncated(3) == sp.rho_via_star(f, psi));
            }
}

TEST_CASE("B operator serialization is canonical") {
    auto j = build_bm(1, 1).to_json();
    CHECK(j.size() == 6);
    CHECK(j[0]["coefficient"][0].get<std::string>().size() > 0);
}
