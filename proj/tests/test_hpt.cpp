#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgq/hpt.hpp"

#include <random>

using namespace lgq;

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
};

Series lam(int k) { return Series::lambda_pow(k); }

}  // namespace

TEST_CASE("identity retract validates") {
    Retract r;
    r.C = {{0, 1}, Matrix(2, 2)};
    r.C.d(1, 0) = Series(1);
    r.D = r.C;
    r.i = r.p = Matrix::identity(2);
    r.h = Matrix(2, 2);
    r.side_conditions = true;
    CHECK(validate_retract(r, 2).pass);
}

TEST_CASE("corrupted homotopy is reported with a witness") {
    Rng rng(1);
    Retract r = random_retract(rng);
    while (r.h.is_zero()) r = random_retract(rng);
    for (int a = 0; a < r.h.rows(); ++a)
        for (int b = 0; b < r.h.cols(); ++b)
            if (!r.h(a, b).is_zero()) {
                r.h(a, b) = r.h(a, b) + Series(1);
                a = r.h.rows();
                break;
            }
    Report rep = validate_retract(r, 2);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness.contains("violated"));
}

TEST_CASE("Neumann inverse") {
    Matrix A = Matrix::identity(2);
    CHECK(neumann_inverse(A, 3) == A);
    Matrix Nn(2, 2);
    Nn(0, 1) = Series(1);
    Matrix B = A + Nn.scaled(lam(1));
    CHECK(neumann_inverse(B, 3) == A - Nn.scaled(lam(1)));
    Rng rng(4);
    for (int s = 0; s < 10; ++s) {
        Matrix C = Matrix::identity(3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) C(a, b) += lam(1).scaled(GQ(Q(rng(-3, 3)))) + lam(2).scaled(GQ(Q(rng(-3, 3))));
        CHECK((C * neumann_inverse(C, 2) - Matrix::identity(3)).truncated(2).is_zero());
    }
    Matrix bad = Matrix::identity(2);
    bad(0, 1) = Series(1);
    CHECK_THROWS_AS(neumann_inverse(bad, 2), std::invalid_argument);
}

TEST_CASE("zero perturbation returns the retract") {
    Rng rng(2);
    Retract r = random_retract(rng);
    Retract out = perturb(r, Matrix(r.D.dim(), r.D.dim()), 2);
    CHECK(out.h == r.h);
    CHECK(out.i == r.i);
}

TEST_CASE("three-term complex with a nilpotent raising perturbation") {
    // D: degree 0 -> 1 -> 2, each one-dimensional, d(e0) = e1; C = span(e2).
    Retract r;
    r.D = {{0, 1, 2}, Matrix(3, 3)};
    r.D.d(1, 0) = Series(1);
    r.C = {{2}, Matrix(1, 1)};
    r.i = Matrix(3, 1);
    r.i(2, 0) = Series(1);
    r.p = Matrix(1, 3);
    r.p(0, 2) = Series(1);
    r.h = Matrix(3, 3);
    r.h(0, 1) = Series(-1);
    r.side_conditions = true;
    REQUIRE(validate_retract(r, 2).pass);
    // e1 -> lambda e2 gives (d + t)^2 e0 = lambda e2, so it is not a perturbation
    Matrix t(3, 3);
    t(2, 1) = lam(1);
    CHECK_THROWS_AS(perturb(r, t, 2), std::invalid_argument);
    Rng rng(8);
    Matrix u = random_perturbation(r, rng, 2);
    Retract out = perturb(r, u, 2);
    CHECK(validate_retract(out, 2).pass);
}

TEST_CASE("random retracts and perturbations") {
    Rng rng(2024);
    for (int s = 0; s < 30; ++s) {
        Retract r = random_retract(rng);
        REQUIRE(validate_retract(r, 2).pass);
        Matrix t = random_perturbation(r, rng, 2);
        Retract out = perturb(r, t, 2);
        Report rep = validate_retract(out, 2);
        CHECK(rep.pass);
        if (!rep.pass) MESSAGE(rep.to_json().dump());
        // deformation property
        CHECK((out.i - r.i).truncated(0).is_zero());
        CHECK((out.h - r.h).truncated(0).is_zero());
    }
}

TEST_CASE("perturbations violating tau p = p t are refused") {
    Rng rng(77);
    int refused = 0;
    for (int s = 0; s < 20; ++s) {
        Retract r = random_retract(rng);
        const int n = r.D.dim();
        Matrix X(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (r.D.deg[a] == r.D.deg[b]) X(a, b) = lam(1).scaled(GQ(Q(rng(-2, 2))));
        Matrix phi = Matrix::identity(n) + X;
        Matrix t = (neumann_inverse(phi, 2) * r.D.d * phi - r.D.d).truncated(2);
        try {
            Retract out = perturb(r, t, 2);
            CHECK(validate_retract(out, 2).pass);
        } catch (const std::invalid_argument&) {
            ++refused;
        }
    }
    CHECK(refused > 0);
}

TEST_CASE("retract JSON round trip") {
    Rng rng(3);
    Retract r = random_retract(rng);
    Retract s = Retract::from_json(r.to_json());
    CHECK(s.h == r.h);
    CHECK(s.D.deg == r.D.deg);
    CHECK(validate_retract(s, 2).to_json() == validate_retract(r, 2).to_json());
}

TEST_CASE("opposite homotopy sign uses the formulas literally") {
    Rng rng(99);
    for (int s = 0; s < 10; ++s) {
        Retract r = random_retract(rng);
        Matrix t = random_perturbation(r, rng, 2);
        Retract q = r;
        q.h = -r.h;
        q.homotopy_sign = -1;
        REQUIRE(validate_retract(q, 2).pass);
        Retract a = perturb(r, t, 2), b = perturb(q, t, 2);
        CHECK(validate_retract(b, 2).pass);
        CHECK(b.h == -a.h);
        CHECK(b.i == a.i);
    }
}
