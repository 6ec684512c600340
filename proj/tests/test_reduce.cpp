#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/hypotheses.hpp"
#include "lgq/reduce.hpp"

#include <random>

using namespace lgq;

namespace {

const Reducer& reducer() {
    static Reducer R(1, 2, 12);
    return R;
}

const GQ kMinusI(Q(0), Q(-1));

std::vector<PhasePoly> invariants() {
    Invariants b = basic_invariants(reducer().phase());
    return {b.trace, b.p_squared, b.axis_pairing, b.trace * b.trace, b.trace * b.axis_pairing};
}

// Points of the zero level set: a rational rotation and p on its axis.
PhasePoint zero_set_point(std::mt19937_64& eng) {
    auto r = [&] { return Q(std::uniform_int_distribution<long long>(-4, 4)(eng), 3); };
    auto q = stereographic_quaternion(r(), r(), r() + Q(1, 5));
    Mat2 a = quaternion_matrix(q[0], q[1], q[2], q[3]);
    auto axis = centralizer_intersection({a});
    REQUIRE(axis.size() == 1);
    Q c = r() + Q(1, 7);
    PhasePoint pt;
    pt.a = {a};
    for (int k = 0; k < 3; ++k) pt.alpha.push_back(GQ(c * axis[0][k]));
    return pt;
}

}  // namespace

TEST_CASE("invariance detection") {
    const auto& R = reducer();
    for (const auto& f : invariants()) CHECK(R.is_invariant(f));
    CHECK_FALSE(R.is_invariant(R.phase().p(0)));
    CHECK_FALSE(R.is_invariant(R.phase().entry(0, 0, 1)));
    CHECK_THROWS_AS(R.reduced_poisson(R.phase().p(0), invariants()[0]), std::invalid_argument);
}

TEST_CASE("reduced Poisson bracket") {
    const auto& R = reducer();
    const Phase& ph = R.phase();
    auto inv = invariants();
    Brst B = Brst(R.star());
    for (const auto& f : inv) CHECK(R.reduced_poisson(f, f).is_zero());
    PhasePoly u = ph.p(1) * ph.entry(0, 1, 1) + ph.one();
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t j = 0; j < inv.size(); ++j) {
            PhasePoly r = R.reduced_poisson(inv[i], inv[j]);
            CHECK(r == -R.reduced_poisson(inv[j], inv[i]));
            CHECK(R.reduced_poisson(inv[i] + u * ph.moment(static_cast<int>(j % 3)), inv[j]) == r);
            // Ghost-free BRST bracket is -{,}_M.
            GhostPoly bb = B.brst_poisson(GhostPoly::scalar(inv[i]), GhostPoly::scalar(inv[j]));
            CHECK(R.rest(bb.coeff(0)) == -r);
        }
    CHECK_FALSE(R.reduced_poisson(inv[0], inv[1]).is_zero());
}

TEST_CASE("reduced Poisson bracket agrees pointwise with Hamiltonian vector fields on the zero set") {
    const auto& R = reducer();
    Sympgeo sg(R.phase());
    std::mt19937_64 eng(21);
    auto inv = invariants();
    for (int s = 0; s < 6; ++s) {
        PhasePoint pt = zero_set_point(eng);
        Vec J = R.phase().moment_map(pt);
        for (const auto& c : J) REQUIRE(c.is_zero());
        for (size_t i = 0; i < inv.size(); ++i)
            for (size_t j = i + 1; j < inv.size(); ++j) {
                GQ direct = sg.differential(inv[j], pt, sg.hamiltonian_vf(inv[i], pt));
                CHECK(R.phase().evaluate(R.reduced_poisson(inv[i], inv[j]), pt).coeff(0) == direct);
            }
    }
}

TEST_CASE("deformed rest") {
    const auto& R = reducer();
    const Phase& ph = R.phase();
    PhasePoly u = ph.p(0) * ph.entry(0, 0, 1);
    // Reduced, lambda-free input is fixed.
    for (const auto& f : invariants()) {
        PhasePoly r = R.rest(f);
        CHECK(R.deformed_rest(r) == r);
    }
    for (int l = 0; l < 3; ++l) {
        PhasePoly x = u * ph.moment(l);
        CHECK(R.rest(x).is_zero());
        PhasePoly d = R.deformed_rest(x);
        CHECK(d.lambda_valuation() >= 1);
        // One Neumann step: -rest(u * J_l - u J_l) at order lambda.
        CHECK(d.lambda_coeff(1) == -R.rest(R.star().star(u, ph.moment(l))).lambda_coeff(1));
        // The quantum left ideal is killed.
        CHECK(R.deformed_rest(R.star().star(u, ph.moment(l))).is_zero());
    }
    CHECK_FALSE(R.deformed_rest(u * ph.moment(0)).is_zero());
    CHECK(R.deformed_rest(GhostPoly::scalar(ph.p(1))) == R.rest(ph.p(1)));
    CHECK_THROWS_AS(R.deformed_rest(GhostPoly::antighost(1, 0)), std::invalid_argument);
}

TEST_CASE("reduced star product") {
    const auto& R = reducer();
    const Phase& ph = R.phase();
    CHECK(R.reduced_star(ph.one(), ph.one()) == ph.one());
    auto inv = invariants();
    for (size_t i = 0; i < inv.size(); ++i)
        for (size_t j = 0; j < inv.size(); ++j) {
            PhasePoly fg = R.reduced_star(inv[i], inv[j]), gf = R.reduced_star(inv[j], inv[i]);
            CHECK(fg.lambda_coeff(0) == R.rest(inv[i] * inv[j]));
            CHECK((fg - gf).lambda_coeff(1) == R.reduced_poisson(inv[i], inv[j]).scaled(kMinusI));
            CHECK(R.cocycle_defect_order(fg) == -1);
        }
    // Representatives modulo the quantum left ideal.
    PhasePoly f = inv[1], g = inv[4], u = ph.p(2) * ph.entry(0, 1, 0);
    PhasePoly shifted = f + R.star().star(u, ph.moment(2));
    CHECK(R.reduced_star(shifted, g) == R.reduced_star(f, g));
    CHECK(R.reduced_star(g, shifted) == R.reduced_star(g, f));
    // A classical shift is not a cocycle of the deformed representation.
    CHECK(R.cocycle_defect_order(f + u * ph.moment(2)) == 1);
    CHECK_THROWS_AS(R.reduced_star(f + u * ph.moment(2), g), std::invalid_argument);
}

TEST_CASE("reduced star product is associative on invariant triples") {
    const auto& R = reducer();
    auto inv = invariants();
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            const auto &f = inv[i], &g = inv[j], &h = inv[(i + j) % 3];
            CHECK(R.reduced_star(R.reduced_star(f, g), h) == R.reduced_star(f, R.reduced_star(g, h)));
        }
}

TEST_CASE("strong invariance holds on the basic invariants mod lambda^K") {
    const auto& R = reducer();
    for (const auto& f : invariants()) CHECK(R.discrepancy_order(f) == -1);
}

TEST_CASE("side conditions of the Koszul homotopy") {
    auto j = reducer().side_condition_flags(4);
    CHECK(j["h_ext_zero"].get<bool>());
    CHECK(j["h_ext_checked"].get<long>() > 100);
    CHECK(j["h_h_zero"] == "undefined");
}

TEST_CASE("window errors") {
    Reducer small(1, 2, 4);
    Invariants b = basic_invariants(small.phase());
    CHECK_THROWS_AS(small.reduced_star(b.trace * b.p_squared, b.p_squared), WindowError);
    CHECK_THROWS_AS(small.deformed_rest(b.p_squared.pow(3)), WindowError);
    CHECK_THROWS_AS(Reducer(2, 2, 4), WindowError);  // incomplete basis
}

TEST_CASE("report and suite are deterministic") {
    const auto& R = reducer();
    auto inv = invariants();
    auto rep = R.reduced_star_report(inv[0], inv[1]);
    CHECK(rep.contains("result"));
    CHECK(rep["certificates"]["basis_complete"].get<bool>());
    auto a = reduce_suite(2, 21), b = reduce_suite(2, 21);
    CHECK(a.dump() == b.dump());
    CHECK(a["pass"].get<bool>());
    CHECK(a["checked"].get<int>() == 21);
}
