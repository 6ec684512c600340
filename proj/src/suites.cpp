#include "lgq/suites.hpp"

#include "lgq/hpt.hpp"
#include "lgq/hypotheses.hpp"
#include "lgq/polyengine.hpp"
#include "lgq/reduce.hpp"

#include <random>

namespace lgq {

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t s) : eng(s) {}
    long long operator()(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(eng); }
};

PhasePoly monomial(int N, const Mono& m) { return PhasePoly::from_terms(N, {{m, Series(1)}}); }

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

// Entry degree <= 2 and fiber degree <= 2 per term.
PhasePoly random_mixed(const Phase& ph, Rng& rng, int terms = 3) {
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
    for (int k = 0; k < 2; ++k)
        x.add_term(make_key(static_cast<int>(rng(0, 7)), static_cast<int>(rng(0, 7))), random_mixed(ph, rng));
    return x;
}

std::vector<GhostPoly> ghost_generators(const Phase& ph) {
    std::vector<GhostPoly> g;
    const int N = ph.N();
    for (int l = 0; l < 3; ++l) {
        g.push_back(GhostPoly::ghost(N, l));
        g.push_back(GhostPoly::antighost(N, l));
    }
    for (int I = 0; I < 3 * N; ++I) g.push_back(GhostPoly::scalar(ph.p(I)));
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.push_back(GhostPoly::scalar(ph.entry(n, i, j)));
    return g;
}

// Tally of failures per named identity.
class Tally {
public:
    void record(const std::string& key, bool ok) {
        auto& e = counts_[key];
        ++e.first;
        if (!ok) ++e.second;
    }
    bool pass() const {
        for (const auto& [k, v] : counts_)
            if (v.second) return false;
        return true;
    }
    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : counts_) j[k] = {{"checked", v.first}, {"failures", v.second}};
        return j;
    }

private:
    std::map<std::string, std::pair<long, long>> counts_;
};

CheckResult from_tally(const std::string& name, const Tally& t, nlohmann::json extra = nlohmann::json::object()) {
    CheckResult r{name, t.pass(), std::move(extra)};
    r.detail["identities"] = t.to_json();
    return r;
}

}  // namespace

nlohmann::json CheckResult::to_json() const { return {{"name", name}, {"pass", pass}, {"detail", detail}}; }

std::vector<PhasePoly> degree_two_generators(int N) {
    std::vector<PhasePoly> out;
    for (const Mono& m : det_reduced_monomials(N, 2)) out.push_back(monomial(N, m));
    return out;
}

CheckResult check_bm_fidelity(int N, int max_fiber_degree) {
    Tally t;
    Phase ph(N);
    Layout L{N};
    std::vector<PhasePoly> span;
    std::function<void(int, int, Mono&)> rec = [&](int I, int left, Mono& m) {
        if (I == 3 * N) {
            span.push_back(monomial(N, m));
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m.set(L.mom(I), e);
            rec(I + 1, left - e, m);
        }
        m.set(L.mom(I), 0);
    };
    Mono m0;
    rec(0, max_fiber_degree, m0);
    for (int m = 0; m <= 2; ++m) {
        BiDiffOp built = build_bm(N, m), closed = closed_form_bm(N, m);
        t.record("operator_B" + std::to_string(m), built == closed);
        for (const auto& f : span)
            for (const auto& g : span) t.record("applied_B" + std::to_string(m), built.apply(f, g) == closed.apply(f, g));
    }
    return from_tally("bm_fidelity", t, {{"N", N}, {"spanning_monomials", span.size()}});
}

CheckResult check_associativity(int N, int K) {
    Phase ph(N);
    StarProduct sp(ph, K);
    auto G = degree_two_generators(N);
    const size_t n = G.size();
    std::vector<PhasePoly> fg(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) fg[i * n + j] = sp.star(G[i], G[j]);
    long checked = 0, failures = 0;
    nlohmann::json witness;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                ++checked;
                if ((sp.star(fg[i * n + j], G[k]) - sp.star(G[i], fg[j * n + k])).is_zero()) continue;
                if (!failures) witness = {G[i].str(), G[j].str(), G[k].str()};
                ++failures;
            }
    CheckResult r{"associativity", failures == 0};
    r.detail = {{"N", N}, {"K", K}, {"generators", n}, {"triples", checked}, {"failures", failures}};
    if (failures) r.detail["witness"] = witness;
    return r;
}

CheckResult check_covariance(int N, int K) {
    Tally t;
    Phase ph(N);
    StarProduct sp(ph, K);
    ProductLieData g(LieData::su2(), 1);
    const Series ilam = Series::lambda_pow(1).scaled(GQ::I());
    for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
            PhasePoly lhs = sp.commutator(ph.moment(b), ph.moment(c)).det_normal();
            PhasePoly rhs = ph.moment_component(g.bracket(g.basis(b), g.basis(c))).scaled(ilam).det_normal();
            t.record("commutator", lhs == rhs.truncated(K));
            // The series terminates: nothing beyond lambda^1.
            t.record("terminates", lhs.lambda_degree() <= 1);
        }
    return from_tally("covariance", t, {{"N", N}, {"K", K}});
}

CheckResult check_invariance(int N, int K, int elements, uint64_t seed) {
    Tally t;
    Phase ph(N);
    StarProduct sp(ph, K);
    Rng rng(seed);
    for (int s = 0; s < elements; ++s) {
        Mat2 g = ph.random_group_element(rng);
        t.record("group_action", sp.check_invariance(g, random_quadratic(ph, rng), random_quadratic(ph, rng)).pass);
    }
    return from_tally("invariance", t, {{"N", N}, {"K", K}, {"elements", elements}, {"seed", seed}});
}

CheckResult check_rho_homomorphism(int N, int K) {
    Tally t;
    Phase ph(N);
    StarProduct sp(ph, K);
    auto G = degree_two_generators(N);
    std::vector<PhasePoly> psis = {ph.entry(0, 0, 0) * ph.entry(N - 1, 1, 0),
                                   ph.entry(0, 0, 1) * ph.entry(0, 1, 1) * ph.entry(N - 1, 1, 0)};
    std::vector<std::vector<PhasePoly>> rho_g(G.size());
    for (size_t j = 0; j < G.size(); ++j)
        for (const auto& psi : psis) rho_g[j].push_back(sp.rho(G[j]).apply(ph, psi).truncated(K));
    for (size_t i = 0; i < G.size(); ++i) {
        LeftDiffOp rf = sp.rho(G[i]);
        for (size_t j = 0; j < G.size(); ++j) {
            LeftDiffOp rfg = sp.rho(sp.star(G[i], G[j]));
            for (size_t k = 0; k < psis.size(); ++k)
                t.record("rho(f*g) = rho(f) rho(g)",
                         rfg.apply(ph, psis[k]).truncated(K) == rf.apply(ph, rho_g[j][k]).truncated(K));
        }
    }
    return from_tally("rho_homomorphism", t, {{"N", N}, {"K", K}, {"generators", G.size()}});
}

CheckResult check_brst_identities(int N, uint64_t seed) {
    Tally t;
    Phase ph(N);
    // K = 4: the quantum differential divides by hbar twice when squared.
    StarProduct sp(ph, 4);
    Brst b(sp);
    Rng rng(seed);
    std::vector<GhostPoly> xs = ghost_generators(ph);
    for (int s = 0; s < 8; ++s) xs.push_back(random_ghost(ph, rng));
    for (const auto& x : xs) {
        t.record("koszul^2", b.koszul_d(b.koszul_d(x)).det_normal().is_zero());
        t.record("ce^2", b.ce_delta(b.ce_delta(x)).det_normal().is_zero());
        t.record("ce koszul + koszul ce", (b.ce_delta(b.koszul_d(x)) + b.koszul_d(b.ce_delta(x))).det_normal().is_zero());
        t.record("D^2", b.classical_brst_d(b.classical_brst_d(x)).det_normal().is_zero());
    }
    GhostPoly th = b.classical_charge();
    t.record("{theta,theta}", b.brst_poisson(th, th).det_normal().is_zero());
    GhostPoly qth = b.quantum_charge();
    t.record("theta*theta mod lambda^3", b.quantum_product(qth, qth).det_normal().truncated(2).is_zero());
    for (const auto& x : ghost_generators(ph)) {
        t.record("qD^2 mod lambda^3", b.quantum_brst_d(b.quantum_brst_d(x)).det_normal().truncated(2).is_zero());
        t.record("qD = ad(theta)/hbar mod lambda^3",
                 (b.quantum_brst_d(x) - b.ad_quantum_charge(x)).det_normal().truncated(2).is_zero());
    }
    Vec Delta = ProductLieData(LieData::su2(), 1).modular_form();
    bool dz = true;
    for (const auto& c : Delta) dz = dz && c.is_zero();
    t.record("modular form", dz);
    return from_tally("brst_identities", t, {{"N", N}, {"K", 4}, {"seed", seed}});
}

CheckResult check_quantized_rep(int N, int samples, uint64_t seed) {
    Tally t;
    Phase ph(N);
    StarProduct sp(ph, 3);
    Brst b(sp);
    ProductLieData g(LieData::su2(), 1);
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        PhasePoly f = random_mixed(ph, rng);
        std::vector<PhasePoly> Lf;
        for (int l = 0; l < 3; ++l) Lf.push_back(b.quantized_rep(l, f));
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                PhasePoly lhs = b.quantized_rep(x, Lf[y]) - b.quantized_rep(y, Lf[x]);
                PhasePoly rhs = b.quantized_rep(g.bracket(g.basis(x), g.basis(y)), f);
                t.record("[L_X,L_Y] = L_[X,Y] mod lambda^2", (lhs - rhs).det_normal().truncated(1).is_zero());
            }
    }
    return from_tally("quantized_representation", t, {{"N", N}, {"samples", samples}, {"seed", seed}});
}

CheckResult check_perturbation(int retracts, int K, uint64_t seed) {
    Tally t;
    Rng rng(seed);
    int with_side = 0;
    for (int s = 0; s < retracts; ++s) {
        Retract r = random_retract(rng);
        t.record("input valid", validate_retract(r, K).pass);
        Matrix m = random_perturbation(r, rng, K);
        Retract out = perturb(r, m, K);
        t.record("perturbed retract valid", validate_retract(out, K).pass);
        t.record("side conditions propagate", out.side_conditions == r.side_conditions);
        t.record("deformation of i and h", (out.i - r.i).truncated(0).is_zero() && (out.h - r.h).truncated(0).is_zero());
        if (r.side_conditions) ++with_side;
    }
    return from_tally("perturbation", t, {{"retracts", retracts}, {"K", K}, {"with_side_conditions", with_side}, {"seed", seed}});
}

CheckResult check_koszul_window(int degree_cap, int samples, int syzygy_degree, uint64_t seed) {
    const int N = 1;
    ConstraintIdeal I(N, degree_cap);
    Phase ph(N);
    Rng rng(seed);
    auto monos = det_reduced_monomials(N, 3);
    long checked = 0, failures = 0, attempts = 0;
    while (checked < samples && attempts < 20 * samples) {
        ++attempts;
        std::vector<Term> ts;
        for (int k = 0; k < 4; ++k)
            ts.emplace_back(monos[static_cast<size_t>(rng(0, static_cast<long long>(monos.size()) - 1))],
                            Series(GQ(Q(rng(-3, 3)), Q(rng(-2, 2)))));
        PhasePoly f = PhasePoly::from_terms(N, std::move(ts));
        if (attempts % 3 == 0) f += PhasePoly::from_terms(N, {{monos[static_cast<size_t>(rng(0, 7))], Series(1)}}) * ph.moment(static_cast<int>(rng(0, 2)));
        bool win = false;
        auto q = I.h0(f, &win);
        if (!win) continue;
        PhasePoly lhs = I.rest(f);
        for (int l = 0; l < 3; ++l) lhs += q[l] * ph.moment(l);
        if (!(lhs - f).det_normal().is_zero()) ++failures;
        ++checked;
    }
    SyzygyReport syz = moment_syzygies(N, syzygy_degree, degree_cap + 1);
    bool homotopy_ok = failures == 0 && checked >= samples;
    bool syz_ok = syz.non_koszul.empty();
    CheckResult r{"koszul_window", homotopy_ok && syz_ok};
    r.detail = {{"degree_cap", degree_cap},
                {"basis_complete", I.basis().complete},
                {"homotopy", {{"checked", checked}, {"failures", failures}, {"pass", homotopy_ok}}},
                {"syzygies",
                 {{"degree", syzygy_degree},
                  {"koszul_window", syz.koszul_window},
                  {"total", syz.syzygies.size()},
                  {"non_koszul", syz.non_koszul.size()},
                  {"pass", syz_ok}}}};
    return r;
}

CheckResult check_hypotheses(int samples, uint64_t seed) {
    nlohmann::json j = hypotheses_suite("all", samples, seed);
    return {"hypotheses", j.at("pass").get<bool>(), j};
}

CheckResult check_reduction(int K, int pairs) {
    nlohmann::json j = reduce_suite(K, pairs);
    return {"reduction", j.at("pass").get<bool>(), j};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"star-identities", "brst-identities", "hpt", "koszul", "hypotheses", "reduce"};
    return names;
}

nlohmann::json run_suite(const std::string& name, const SuiteConfig& cfg) {
    std::vector<CheckResult> checks;
    if (name == "star-identities") {
        checks.push_back(check_bm_fidelity(cfg.N));
        checks.push_back(check_associativity(cfg.N, cfg.K));
        checks.push_back(check_covariance(cfg.N, cfg.K));
        checks.push_back(check_invariance(cfg.N, cfg.K, 10, cfg.seed));
        checks.push_back(check_rho_homomorphism(cfg.N, cfg.K));
    } else if (name == "brst-identities") {
        checks.push_back(check_brst_identities(cfg.N, cfg.seed));
        checks.push_back(check_quantized_rep(cfg.N, 5, cfg.seed));
    } else if (name == "hpt") {
        checks.push_back(check_perturbation(cfg.samples, cfg.K, cfg.seed));
    } else if (name == "koszul") {
        checks.push_back(check_koszul_window(cfg.deg_cap, cfg.samples, 4, cfg.seed));
    } else if (name == "hypotheses") {
        checks.push_back(check_hypotheses(cfg.samples, cfg.seed));
    } else if (name == "reduce") {
        checks.push_back(check_reduction(cfg.K, 21));
    } else {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    nlohmann::json out;
    out["suite"] = name;
    out["config"] = {{"K", cfg.K}, {"N", cfg.N}, {"deg_cap", cfg.deg_cap}, {"seed", cfg.seed}, {"samples", cfg.samples}};
    bool pass = true;
    out["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        pass = pass && c.pass;
        out["checks"].push_back(c.to_json());
    }
    out["pass"] = pass;
    return out;
}

}  // namespace lgq
