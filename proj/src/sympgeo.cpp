#include "lgq/sympgeo.hpp"

namespace lgq {

nlohmann::json Report::to_json() const {
    return {{"check", check}, {"status", pass ? "pass" : "fail"}, {"witness", witness}};
}

GQ Sympgeo::eval0(const PhasePoly& f, const PhasePoint& pt) const { return ph_.evaluate(f, pt).coeff(0); }

GQ Sympgeo::theta(const PhasePoint& pt, const StdVectorField& v) const { return ph_.lie().dual(pt.alpha, v.X); }

GQ Sympgeo::omega(const PhasePoint& pt, const StdVectorField& v, const StdVectorField& w) const {
    const auto& g = ph_.lie();
    return g.dual(v.xi, w.X) - g.dual(w.xi, v.X) - g.dual(pt.alpha, g.bracket(v.X, w.X));
}

StdVectorField Sympgeo::hamiltonian_vf(const PhasePoly& f, const PhasePoint& pt) const {
    const int d = ph_.dim();
    StdVectorField r;
    r.X.resize(d);
    Vec dG(d);
    for (int I = 0; I < d; ++I) {
        r.X[I] = eval0(ph_.fiber_derive(I, f), pt);
        dG[I] = eval0(ph_.left_derive(I, f), pt);
    }
    Vec ad = ph_.lie().ad_star(r.X, pt.alpha);
    r.xi.resize(d);
    for (int I = 0; I < d; ++I) r.xi[I] = -ad[I] - dG[I];
    return r;
}

GQ Sympgeo::differential(const PhasePoly& f, const PhasePoint& pt, const StdVectorField& v) const {
    GQ s;
    for (int I = 0; I < ph_.dim(); ++I) {
        if (!v.X[I].is_zero()) s += v.X[I] * eval0(ph_.left_derive(I, f), pt);
        if (!v.xi[I].is_zero()) s += v.xi[I] * eval0(ph_.fiber_derive(I, f), pt);
    }
    return s;
}

StdVectorField Sympgeo::fundamental_field(const Vec& B, const PhasePoint& pt) const {
    const int N = ph_.N();
    StdVectorField r;
    Mat2 Bm = Phase::from_coords(B);
    Vec Bd(3 * N);
    for (int n = 0; n < N; ++n) {
        Mat2 ai = mat_adj(pt.a[n]);
        Vec c = Phase::coords(mat_mul(mat_mul(ai, Bm), pt.a[n]));
        for (int k = 0; k < 3; ++k) {
            r.X.push_back(c[k] - B[k]);
            Bd[3 * n + k] = B[k];
        }
    }
    r.xi = ph_.lie().ad_star(Bd, pt.alpha);
    return r;
}

PhasePoly Sympgeo::poisson(const PhasePoly& f, const PhasePoly& g) const {
    const int d = ph_.dim();
    const auto& lie = ph_.lie();
    PhasePoly acc(ph_.N());
    std::vector<PhasePoly> df(d), dg(d);
    for (int I = 0; I < d; ++I) {
        df[I] = ph_.fiber_derive(I, f);
        dg[I] = ph_.fiber_derive(I, g);
    }
    for (int J = 0; J < d; ++J) {
        if (!df[J].is_zero()) acc += ph_.left_derive(J, g) * df[J];
        if (!dg[J].is_zero()) acc -= ph_.left_derive(J, f) * dg[J];
    }
    for (int I = 0; I < d; ++I) {
        if (df[I].is_zero()) continue;
        for (int J = 0; J < d; ++J) {
            if (dg[J].is_zero()) continue;
            PhasePoly c(ph_.N());
            for (int K = 0; K < d; ++K) {
                Q s = lie.C(I, J, K);
                if (!s.is_zero()) c += ph_.p(K).scaled(GQ(s));
            }
            if (!c.is_zero()) acc += c * df[I] * dg[J];
        }
    }
    return acc;
}

StdVectorField Sympgeo::bnw(const PhasePoint& pt, const StdVectorField& v, const StdVectorField& w,
                            const Q& perturbation) const {
    const auto& g = ph_.lie();
    const int d = ph_.dim();
    StdVectorField r;
    r.X = g.bracket(v.X, w.X);
    for (auto& x : r.X) x = x * GQ(Q(1, 2));
    Vec a = g.ad_star(v.X, w.xi), b = g.ad_star(w.X, v.xi);
    Vec c = g.ad_star(v.X, g.ad_star(w.X, pt.alpha)), e = g.ad_star(w.X, g.ad_star(v.X, pt.alpha));
    r.xi.resize(d);
    for (int I = 0; I < d; ++I)
        r.xi[I] = GQ(Q(1, 2)) * (a[I] + b[I]) + GQ(Q(1, 6)) * (c[I] + e[I]);
    if (!perturbation.is_zero()) r.xi[0] += GQ(perturbation) * v.X[0] * w.X[0];
    return r;
}

Report Sympgeo::bnw_invariance_check(const Mat2& g, const std::vector<PhasePoint>& pts,
                                     const Q& perturbation) const {
    Report rep;
    rep.check = "bnw_invariance";
    const int N = ph_.N();
    const int d = ph_.dim();
    std::array<GQ, 9> A = Phase::Ad(g);
    std::array<GQ, 9> Ai = Phase::Ad(mat_adj(g));
    // Psi'_g on a standard tangent vector: (Ad(g) X, Ad*(g) xi)
    auto push = [&](const StdVectorField& v) {
        StdVectorField r;
        r.X.assign(d, GQ());
        r.xi.assign(d, GQ());
        for (int n = 0; n < N; ++n)
            for (int K = 0; K < 3; ++K)
                for (int J = 0; J < 3; ++J) {
                    r.X[3 * n + K] += A[K * 3 + J] * v.X[3 * n + J];
                    r.xi[3 * n + K] += Ai[J * 3 + K] * v.xi[3 * n + J];
                }
        return r;
    };
    auto basis = [&](int k) {
        StdVectorField v;
        v.X.assign(d, GQ());
        v.xi.assign(d, GQ());
        if (k < d)
            v.X[k] = GQ(1);
        else
            v.xi[k - d] = GQ(1);
        return v;
    };
    for (size_t s = 0; s < pts.size(); ++s) {
        PhasePoint gp = ph_.group_action(g, pts[s]);
        for (int i = 0; i < 2 * d; ++i)
            for (int j = 0; j < 2 * d; ++j) {
                StdVectorField v = basis(i), w = basis(j);
                StdVectorField lhs = bnw(gp, push(v), push(w), perturbation);
                StdVectorField rhs = push(bnw(pts[s], v, w, perturbation));
                if (lhs.X != rhs.X || lhs.xi != rhs.xi) {
                    rep.pass = false;
                    rep.witness = {{"sample", s}, {"v", i}, {"w", j}};
                    return rep;
                }
            }
    }
    return rep;
}

}  // namespace lgq
