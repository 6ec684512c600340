#include "lgq/star.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace lgq {

namespace {

// Polynomials in momenta p, slot-1 symbols xi and slot-2 symbols eta.
using SymKey = std::array<Mono, 3>;
using SymPoly = std::map<SymKey, GQ>;

void sym_add(SymPoly& a, const SymPoly& b, const GQ& s = GQ(1)) {
    for (const auto& [k, c] : b) {
        GQ& x = a[k];
        x += c * s;
        if (x.is_zero()) a.erase(k);
    }
}

SymPoly sym_mul(const SymPoly& a, const SymPoly& b) {
    SymPoly r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            SymKey k{ka[0] * kb[0], ka[1] * kb[1], ka[2] * kb[2]};
            GQ& x = r[k];
            x += ca * cb;
            if (x.is_zero()) r.erase(k);
        }
    return r;
}

using SymVec = std::vector<SymPoly>;

SymPoly alpha_of_H(const ProductLieData& lie, const Layout& L, int r) {
    const int d = lie.dim();
    SymVec X(d), Y(d);
    for (int I = 0; I < d; ++I) {
        SymKey kx{}, ky{};
        kx[1].set(L.mom(I), 1);
        ky[2].set(L.mom(I), 1);
        X[I][kx] = GQ(1);
        Y[I][ky] = GQ(1);
    }
    auto br = [&](const SymVec& a, const SymVec& b) {
        SymVec out(d);
        for (int I = 0; I < d; ++I) {
            if (a[I].empty()) continue;
            for (int J = 0; J < d; ++J) {
                if (b[J].empty()) continue;
                SymPoly ab;
                for (int K = 0; K < d; ++K) {
                    Q c = lie.C(I, J, K);
                    if (c.is_zero()) continue;
                    if (ab.empty()) ab = sym_mul(a[I], b[J]);
                    sym_add(out[K], ab, GQ(c));
                }
            }
        }
        return out;
    };
    auto scale = [](const Q& c, const SymVec& v) {
        SymVec w = v;
        for (auto& p : w)
            for (auto& [k, x] : p) x = x * GQ(c);
        return w;
    };
    auto add = [](const SymVec& a, const SymVec& b) {
        SymVec w = a;
        for (size_t i = 0; i < w.size(); ++i) sym_add(w[i], b[i]);
        return w;
    };
    SymVec H = bch_term_generic<SymVec>(r, X, Y, SymVec(d), br, scale, add);
    SymPoly out;
    for (int K = 0; K < d; ++K) {
        SymPoly pk;
        SymKey k{};
        k[0].set(L.mom(K), 1);
        pk[k] = GQ(1);
        sym_add(out, sym_mul(pk, H[K]));
    }
    return out;
}

void n_sequences(int m, int r, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    // cur[j] = n_{j+2}; remaining weight m
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    if (r - 1 > m) return;
    for (int n = m / (r - 1); n >= 0; --n) {
        cur.push_back(n);
        n_sequences(m - n * (r - 1), r + 1, cur, out);
        cur.pop_back();
    }
}

BiDiffOp from_sym(int N, const SymPoly& s) {
    BiDiffOp op;
    op.N = N;
    for (const auto& [k, c] : s) op.terms.push_back({c, k[0], k[1], k[2]});
    return op.canonical();
}

}  // namespace

BiDiffOp BiDiffOp::canonical() const {
    std::vector<BTerm> t = terms;
    auto key = [](const BTerm& x) { return std::tie(x.coef, x.d1, x.d2); };
    std::sort(t.begin(), t.end(), [&](const BTerm& a, const BTerm& b) { return key(a) < key(b); });
    BiDiffOp r;
    r.N = N;
    for (auto& x : t) {
        if (!r.terms.empty() && key(r.terms.back()) == key(x))
            r.terms.back().c += x.c;
        else
            r.terms.push_back(x);
    }
    r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(), [](const BTerm& x) { return x.c.is_zero(); }),
                  r.terms.end());
    return r;
}

bool operator==(const BiDiffOp& a, const BiDiffOp& b) {
    BiDiffOp x = a.canonical(), y = b.canonical();
    if (x.terms.size() != y.terms.size()) return false;
    for (size_t i = 0; i < x.terms.size(); ++i) {
        const auto &s = x.terms[i], &t = y.terms[i];
        if (s.c != t.c || s.coef != t.coef || s.d1 != t.d1 || s.d2 != t.d2) return false;
    }
    return true;
}

nlohmann::json BiDiffOp::to_json() const {
    Layout L{N};
    auto mono = [&](const Mono& m) {
        nlohmann::json a = nlohmann::json::array();
        for (int I = 0; I < 3 * N; ++I) a.push_back(m.exp(L.mom(I)));
        return a;
    };
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : canonical().terms)
        arr.push_back({{"coefficient", {t.c.re.str(), t.c.im.str()}},
                       {"p", mono(t.coef)},
                       {"slot1", mono(t.d1)},
                       {"slot2", mono(t.d2)}});
    return arr;
}

PhasePoly fiber_derive_multi(const PhasePoly& F, const Mono& d) {
    if (d.is_one()) return F;
    std::vector<Term> out;
    const int nv = 7 * F.N();
    for (const auto& t : F.terms()) {
        if (!d.divides(t.first)) continue;
        Q fac(1);
        for (int v = 0; v < nv; ++v) {
            int k = d.exp(v), e = t.first.exp(v);
            for (int j = 0; j < k; ++j) fac *= Q(e - j);
        }
        out.emplace_back(t.first / d, t.second.scaled(GQ(fac)));
    }
    return PhasePoly::from_terms(F.N(), std::move(out));
}

PhasePoly BiDiffOp::apply(const PhasePoly& F, const PhasePoly& G) const {
    std::map<Mono, PhasePoly> c1, c2;
    auto get = [](std::map<Mono, PhasePoly>& c, const PhasePoly& P, const Mono& d) -> const PhasePoly& {
        auto it = c.find(d);
        if (it != c.end()) return it->second;
        return c.emplace(d, fiber_derive_multi(P, d)).first->second;
    };
    std::vector<Term> out;
    for (const auto& t : terms) {
        const PhasePoly& a = get(c1, F, t.d1);
        if (a.is_zero()) continue;
        const PhasePoly& b = get(c2, G, t.d2);
        if (b.is_zero()) continue;
        for (const auto& x : a.terms())
            for (const auto& y : b.terms())
                out.emplace_back(x.first * y.first * t.coef, (x.second * y.second).scaled(t.c));
    }
    return PhasePoly::from_terms(F.N(), std::move(out));
}

BiDiffOp build_bm(int N, int m) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    if (m > 4) throw std::invalid_argument("resource cap: build_bm supports m <= 4");
    ProductLieData lie(LieData::su2(), N);
    Layout L{N};
    if (m == 0) {
        BiDiffOp op;
        op.N = N;
        op.terms.push_back({GQ(1), Mono{}, Mono{}, Mono{}});
        return op;
    }
    std::map<int, SymPoly> A;
    for (int r = 2; r <= m + 1; ++r) A[r] = alpha_of_H(lie, L, r);
    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    n_sequences(m, 2, cur, seqs);
    SymPoly total;
    for (const auto& nv : seqs) {
        int len = 0;
        for (int x : nv) len += x;
        // B_n = binom(|n|, n_2) binom(|n| - n_2, n_3) ...
        Q Bn(1);
        int rest = len;
        for (int x : nv) {
            Bn *= binomial(rest, x);
            rest -= x;
        }
        Q coeff = Bn / factorial(len);
        SymPoly prod;
        prod[SymKey{}] = GQ(coeff);
        for (size_t j = 0; j < nv.size(); ++j)
            for (int e = 0; e < nv[j]; ++e) prod = sym_mul(prod, A[static_cast<int>(j) + 2]);
        sym_add(total, prod);
    }
    return from_sym(N, total);
}

std::shared_ptr<const BiDiffOp> cached_bm(int N, int m) {
    static std::shared_mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const BiDiffOp>> cache;
    auto key = std::make_pair(N, m);
    {
        std::shared_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::unique_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto op = std::make_shared<const BiDiffOp>(build_bm(N, m));
    cache.emplace(key, op);
    return op;
}

BiDiffOp closed_form_bm(int N, int m) {
    ProductLieData lie(LieData::su2(), N);
    Layout L{N};
    const int d = lie.dim();
    BiDiffOp op;
    op.N = N;
    auto pm = [&](int K) {
        Mono x;
        x.set(L.mom(K), 1);
        return x;
    };
    auto dm = [&](std::initializer_list<int> idx) {
        Mono x;
        for (int I : idx) x.add(L.mom(I), 1);
        return x;
    };
    if (m == 0) {
        op.terms.push_back({GQ(1), Mono{}, Mono{}, Mono{}});
    } else if (m == 1) {
        // (1/2) p([E_I, E_J]) d^I (x) d^J
        for (int I = 0; I < d; ++I)
            for (int J = 0; J < d; ++J)
                for (int K = 0; K < d; ++K) {
                    Q c = lie.C(I, J, K);
                    if (!c.is_zero()) op.terms.push_back({GQ(c * Q(1, 2)), pm(K), dm({I}), dm({J})});
                }
    } else if (m == 2) {
        // (2/24) p([E_I,[E_J,E_K]]) (d^I d^J (x) d^K + d^K (x) d^I d^J)
        // + (3/24) p([E_I,E_J]) p([E_K,E_L]) d^I d^K (x) d^J d^L
        for (int I = 0; I < d; ++I)
            for (int J = 0; J < d; ++J)
                for (int K = 0; K < d; ++K)
                    for (int M = 0; M < d; ++M) {
                        Q inner = lie.C(J, K, M);
                        if (inner.is_zero()) continue;
                        for (int P = 0; P < d; ++P) {
                            Q c = inner * lie.C(I, M, P);
                            if (c.is_zero()) continue;
                            GQ w(c * Q(2, 24));
                            op.terms.push_back({w, pm(P), dm({I, J}), dm({K})});
                            op.terms.push_back({w, pm(P), dm({K}), dm({I, J})});
                        }
                    }
        for (int I = 0; I < d; ++I)
            for (int J = 0; J < d; ++J)
                for (int K = 0; K < d; ++K)
                    for (int Lx = 0; Lx < d; ++Lx)
                        for (int P = 0; P < d; ++P) {
                            Q c1 = lie.C(I, J, P);
                            if (c1.is_zero()) continue;
                            for (int R = 0; R < d; ++R) {
                                Q c2 = lie.C(K, Lx, R);
                                if (c2.is_zero()) continue;
                                op.terms.push_back({GQ(c1 * c2 * Q(3, 24)), pm(P) * pm(R), dm({I, K}), dm({J, Lx})});
                            }
                        }
    } else {
        throw std::invalid_argument("closed forms exist for m <= 2");
    }
    return op.canonical();
}

GQ nu_power(int m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return GQ(1);
        case 1: return GQ(Q(0), Q(-1));
        case 2: return GQ(-1);
        default: return GQ(Q(0), Q(1));
    }
}

std::vector<std::vector<int>> multisets(int d, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<std::vector<int>> distinct_orderings(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    std::vector<std::vector<int>> out;
    do {
        out.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

PhasePoly LeftDiffOp::apply(const Phase& ph, const PhasePoly& psi) const {
    PhasePoly acc(N);
    for (const auto& part : parts) acc += part.coeff * ph.left_derive_seq(part.seq, psi);
    return acc;
}

StarProduct::StarProduct(const Phase& ph, int K) : ph_(ph), K_(K) {
    if (K < 0) throw std::invalid_argument("truncation order must be nonnegative");
    for (int m = 0; m <= K; ++m) ops_.push_back(cached_bm(ph.N(), m));
}

StarProduct::StarProduct(const Phase& ph, int K, std::vector<BiDiffOp> ops) : ph_(ph), K_(K) {
    if (static_cast<int>(ops.size()) < K + 1) throw std::invalid_argument("need B_0..B_K");
    for (auto& op : ops) ops_.push_back(std::make_shared<const BiDiffOp>(std::move(op)));
}

PhasePoly StarProduct::star(const PhasePoly& f, const PhasePoly& g) const {
    const int N = ph_.N();
    const int d = ph_.dim();
    PhasePoly acc(N);
    if (f.is_zero() || g.is_zero()) return acc.truncated(K_);
    const int l = f.fiber_degree();
    std::map<std::vector<int>, PhasePoly> memo;  // suffix sequences of E applied to g
    auto chain = [&](auto&& self, const std::vector<int>& seq, size_t from) -> PhasePoly {
        if (from == seq.size()) return g;
        std::vector<int> key(seq.begin() + static_cast<long>(from), seq.end());
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        PhasePoly r = ph_.left_derive(seq[from], self(self, seq, from + 1));
        memo.emplace(key, r);
        return r;
    };
    std::vector<Term> out;
    auto push = [&](const PhasePoly& P, const GQ& c) {
        for (const auto& t : P.terms()) out.emplace_back(t.first, t.second.scaled(c).with_prec(K_));
    };
    for (int n = 0; n <= std::min(K_, l); ++n) {
        GQ inv_fact(factorial(n).inv());
        for (const auto& S : multisets(d, n)) {
            Mono dS;
            Layout L{N};
            for (int I : S) dS.add(L.mom(I), 1);
            PhasePoly Df = fiber_derive_multi(f, dS);
            if (Df.is_zero()) continue;
            PhasePoly Eg(N);
            for (const auto& sigma : distinct_orderings(S)) Eg += chain(chain, sigma, 0);
            if (Eg.is_zero()) continue;
            for (int m = n; m <= K_; ++m) {
                PhasePoly b = ops_[m - n]->apply(Df, Eg);
                if (b.is_zero()) continue;
                push(b.shift(m), nu_power(m) * inv_fact);
            }
        }
    }
    return PhasePoly::from_terms(N, std::move(out)).truncated(K_);
}

LeftDiffOp StarProduct::rho(const PhasePoly& f) const {
    const int N = ph_.N();
    const int d = ph_.dim();
    Layout L{N};
    LeftDiffOp op;
    op.N = N;
    // group terms by momentum monomial
    std::map<Mono, PhasePoly> by_p;
    for (const auto& t : f.terms()) {
        Mono pm, em;
        for (int v = 0; v < L.nvars(); ++v) {
            if (L.is_entry(v))
                em.set(v, t.first.exp(v));
            else
                pm.set(v, t.first.exp(v));
        }
        by_p[pm] += PhasePoly::from_terms(N, {{em, t.second}});
    }
    for (const auto& [pm, c] : by_p) {
        std::vector<int> S;
        Q beta_fact(1);
        for (int I = 0; I < d; ++I) {
            int e = pm.exp(L.mom(I));
            beta_fact *= factorial(e);
            for (int k = 0; k < e; ++k) S.push_back(I);
        }
        const int l = static_cast<int>(S.size());
        if (l > K_) continue;
        GQ w = nu_power(l) * GQ(beta_fact / factorial(l));
        PhasePoly coeff = c.scaled(Series::lambda_pow(l).scaled(w)).truncated(K_);
        for (const auto& sigma : distinct_orderings(S)) op.parts.push_back({coeff, sigma});
    }
    return op;
}

PhasePoly StarProduct::rho_via_star(const PhasePoly& f, const PhasePoly& psi) const {
    PhasePoly s = star(f, psi);
    return s.fiber_part(0);
}

Report StarProduct::check_invariance(const Mat2& g, const PhasePoly& f, const PhasePoly& h) const {
    Report rep;
    rep.check = "star_invariance";
    PhasePoly lhs = ph_.group_action(g, star(f, h)).det_normal();
    PhasePoly rhs = star(ph_.group_action(g, f), ph_.group_action(g, h)).det_normal();
    PhasePoly diff = (lhs - rhs).truncated(K_);
    if (!diff.is_zero()) {
        rep.pass = false;
        rep.witness = {{"difference_terms", diff.size()}, {"lowest_order", diff.lambda_valuation()}};
    }
    return rep;
}

Report StarProduct::check_strong_invariance(const Vec& B, const PhasePoly& f, PhasePoly* residual) const {
    Report rep;
    rep.check = "strong_invariance";
    Sympgeo sg(ph_);
    PhasePoly J = ph_.moment_component(B);
    PhasePoly first = sg.poisson(J, f).scaled(Series::lambda_pow(1).scaled(nu_power(1)));
    PhasePoly res = (commutator(J, f) - first).truncated(K_).det_normal();
    if (residual) *residual = res;
    if (!res.is_zero()) {
        rep.pass = false;
        rep.witness = {{"lowest_order", res.lambda_valuation()}, {"terms", res.size()}};
    }
    return rep;
}

}  // namespace lgq
