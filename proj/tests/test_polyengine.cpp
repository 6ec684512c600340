#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/polyengine.hpp"

#include <random>

using namespace lgq;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
};

PhasePoly random_poly(int N, int deg, int terms, Rng& rng) {
    auto monos = det_reduced_monomials(N, deg);
    std::vector<Term> ts;
    for (int k = 0; k < terms; ++k) {
        const Mono& m = monos[rng(0, static_cast<long long>(monos.size()) - 1)];
        ts.emplace_back(m, Series(GQ(Q(rng(-3, 3)), Q(rng(-2, 2)))));
    }
    return PhasePoly::from_terms(N, std::move(ts));
}

const ConstraintIdeal& ideal1() {
    static ConstraintIdeal I(1, 6);
    return I;
}

// Membership in the span of m * gens with deg(m * gen) <= cap, by linear algebra only.
bool in_generated_window(const PhasePoly& f, const std::vector<Poly>& gens, int N, int cap) {
    std::map<Mono, int> idx;
    auto row = [&](const PhasePoly& p) {
        SparseEchelon::Row r;
        for (const auto& [m, c] : p.terms()) {
            auto it = idx.emplace(m, static_cast<int>(idx.size())).first;
            r[it->second] = c.coeff(0);
        }
        return r;
    };
    SparseEchelon ech;
    for (const auto& g : gens) {
        PhasePoly gp = g.to_phase(N);
        for (const Mono& m : det_reduced_monomials(N, cap - g.degree()))
            ech.insert(row(gp.mul_mono(m, Series(1))));
    }
    return ech.reduce(row(f)).first.empty();
}

}  // namespace

TEST_CASE("drl order: entries before momenta, det leading term") {
    Layout L{1};
    Mono a12a21, a11a22, a11, p1;
    a12a21.set(L.entry(0, 0, 1), 1);
    a12a21.set(L.entry(0, 1, 0), 1);
    a11a22.set(L.entry(0, 0, 0), 1);
    a11a22.set(L.entry(0, 1, 1), 1);
    a11.set(L.entry(0, 0, 0), 1);
    p1.set(L.mom(0), 1);
    CHECK(drl_greater(a12a21, a11a22, 7));
    CHECK(drl_greater(a11, p1, 7));
    CHECK(drl_greater(a11a22, a11, 7));
    CHECK_FALSE(drl_greater(a11, a11, 7));
}

TEST_CASE("poly arithmetic matches phase polynomials") {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        PhasePoly f = random_poly(1, 3, 6, rng), g = random_poly(1, 2, 5, rng);
        Poly F = Poly::from_phase(f), G = Poly::from_phase(g);
        CHECK((F * G).to_phase(1) == f * g);
        CHECK((F - G).to_phase(1) == f - g);
        for (size_t i = 1; i < (F * G).terms().size(); ++i)
            CHECK(drl_greater((F * G).terms()[i - 1].first, (F * G).terms()[i].first, 7));
    }
    CHECK_THROWS(Poly::from_phase(PhasePoly::lambda(1)));
}

TEST_CASE("sparse echelon reports kernels") {
    SparseEchelon e;
    CHECK_FALSE(e.insert({{0, GQ(1)}, {1, GQ(2)}}));
    CHECK_FALSE(e.insert({{1, GQ(1)}, {2, GQ::I()}}));
    auto ker = e.insert({{0, GQ(1)}, {1, GQ(3)}, {2, GQ::I()}});
    REQUIRE(ker);
    CHECK((*ker)[0] == GQ(-1));
    CHECK((*ker)[1] == GQ(-1));
    CHECK((*ker)[2] == GQ(1));
    CHECK(e.rank() == 2);
}

TEST_CASE("N=1 basis is complete under cap 6 and certificates hold") {
    const auto& gb = ideal1().basis();
    CHECK(gb.complete);
    CHECK(gb.verify_certificates());
    for (const auto& g : gb.gens) CHECK(normal_form(g, gb).is_zero());
    // Reduced: no basis term divisible by another leading monomial.
    for (size_t k = 0; k < gb.basis.size(); ++k)
        for (const auto& [m, c] : gb.basis[k].terms())
            for (size_t j = 0; j < gb.basis.size(); ++j)
                if (j != k) CHECK_FALSE(gb.basis[j].lm().divides(m));
}

TEST_CASE("rest is idempotent and its complement lies in the ideal (linear algebra oracle)") {
    Rng rng(11);
    const auto& I = ideal1();
    for (int k = 0; k < 15; ++k) {
        PhasePoly f = random_poly(1, 3, 5, rng);
        PhasePoly r = I.rest(f);
        CHECK(I.rest(r) == r);
        CHECK(in_generated_window((f - r).det_normal(), I.generators(), 1, 6));
    }
}

TEST_CASE("division: d h_0 + ext rest = id on 100 in-window samples") {
    Rng rng(5);
    const auto& I = ideal1();
    Phase ph(1);
    int checked = 0;
    for (int k = 0; checked < 100 && k < 400; ++k) {
        PhasePoly f = random_poly(1, 3, 4, rng);
        if (k % 3 == 0) f += random_poly(1, 2, 2, rng) * ph.moment(static_cast<int>(k % 9) / 3);
        bool win = false;
        auto q = I.h0(f, &win);
        if (!win) continue;
        PhasePoly lhs = I.rest(f);
        for (int l = 0; l < 3; ++l) lhs += q[l] * ph.moment(l);
        CHECK((lhs - f).det_normal().is_zero());
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("ideal is stable under the group action") {
    Rng rng(8);
    const auto& I = ideal1();
    Phase ph(1);
    for (int k = 0; k < 5; ++k) {
        Mat2 g = ph.random_group_element(rng);
        PhasePoly f = random_poly(1, 1, 3, rng) * ph.moment(k % 3);
        CHECK(I.in_ideal(f));
        CHECK(I.in_ideal(ph.group_action(g, f)));
    }
    CHECK_FALSE(I.in_ideal(ph.p(0)));
}

TEST_CASE("lambda-dependent rest keeps precision and acts per order") {
    const auto& I = ideal1();
    Phase ph(1);
    PhasePoly f = ph.moment(0) * ph.p(1) + ph.p(2).scaled(Series::lambda_pow(1));
    PhasePoly r = I.rest(f.truncated(2));
    CHECK(r.lambda_coeff(0).is_zero());
    CHECK(r.lambda_coeff(1) == I.rest(ph.p(2)));
    CHECK(r.min_prec() == 2);
}

TEST_CASE("syzygies satisfy the defining relation and contain the Koszul ones") {
    Phase ph(1);
    auto rep = moment_syzygies(1, 3, 6);
    REQUIRE(!rep.syzygies.empty());
    for (const auto& s : rep.syzygies) {
        PhasePoly sum(1);
        for (int l = 0; l < 3; ++l) sum += s[l] * ph.moment(l);
        CHECK(sum.det_normal().is_zero());
    }
    // (J_2, -J_1, 0) lies in the computed span.
    std::map<std::pair<Mono, int>, int> idx;
    auto row = [&](const std::vector<PhasePoly>& s) {
        SparseEchelon::Row r;
        for (int l = 0; l < 3; ++l) {
            PhasePoly sl = s[l].det_normal();
            for (const auto& [m, c] : sl.terms())
                r[idx.emplace(std::make_pair(m, l), static_cast<int>(idx.size())).first->second] = c.coeff(0);
        }
        return r;
    };
    SparseEchelon e;
    for (const auto& s : rep.syzygies) e.insert(row(s));
    CHECK(e.reduce(row({ph.moment(1), -ph.moment(0), PhasePoly(1)})).first.empty());
    CHECK(e.reduce(row({ph.moment(2), PhasePoly(1), -ph.moment(0)})).first.empty());
}

TEST_CASE("N=1 has the rotation-axis syzygy of degree 1") {
    Phase ph(1);
    std::vector<PhasePoly> axis = {ph.entry(0, 0, 1) + ph.entry(0, 1, 0),
                                   (ph.entry(0, 0, 1) - ph.entry(0, 1, 0)).scaled(GQ::I()),
                                   ph.entry(0, 0, 0) - ph.entry(0, 1, 1)};
    PhasePoly sum(1);
    for (int l = 0; l < 3; ++l) sum += axis[l] * ph.moment(l);
    CHECK(sum.det_normal().is_zero());
    auto rep = moment_syzygies(1, 1, 6);
    CHECK(rep.syzygies.size() == 1);
    CHECK(rep.non_koszul.size() == 1);
}

TEST_CASE("N=2 has no syzygies of degree <= 2") {
    auto rep = moment_syzygies(2, 2, 5);
    CHECK(rep.syzygies.empty());
}

TEST_CASE("N=2 basis under cap 4 is flagged incomplete with valid certificates") {
    ConstraintIdeal I(2, 4);
    CHECK_FALSE(I.basis().complete);
    CHECK(I.basis().verify_certificates());
}

TEST_CASE("basis JSON round trip and certificate tampering") {
    const auto& gb = ideal1().basis();
    auto j = gb.to_json(1);
    GroebnerBasis back = GroebnerBasis::from_json(j);
    REQUIRE(back.basis.size() == gb.basis.size());
    for (size_t k = 0; k < gb.basis.size(); ++k) CHECK(back.basis[k] == gb.basis[k]);
    CHECK(back.complete == gb.complete);
    auto bad = j;
    bad["basis"][0]["certificate"][0] = bad["basis"][1]["certificate"][0];
    CHECK_THROWS(GroebnerBasis::from_json(bad));
}
