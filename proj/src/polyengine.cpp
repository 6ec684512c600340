#include "lgq/polyengine.hpp"

#include "lgq/io.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lgq {

bool drl_greater(const Mono& a, const Mono& b, int nvars) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (int v = nvars - 1; v >= 0; --v) {
        int ea = a.exp(v), eb = b.exp(v);
        if (ea != eb) return ea < eb;
    }
    return false;
}

namespace {

struct DrlLess {
    int n;
    bool operator()(const Mono& a, const Mono& b) const { return drl_greater(b, a, n); }
};

}  // namespace

// ---- Poly ----

Poly Poly::from_phase(const PhasePoly& f) {
    Poly r(7 * f.N());
    for (const auto& [m, c] : f.terms()) {
        if (c.degree() > 0) throw std::invalid_argument("Poly::from_phase: lambda-dependent input");
        r.t_.emplace_back(m, c.coeff(0));
    }
    std::sort(r.t_.begin(), r.t_.end(),
              [n = r.n_](const TermT& x, const TermT& y) { return drl_greater(x.first, y.first, n); });
    return r;
}

PhasePoly Poly::to_phase(int N) const {
    std::vector<Term> ts;
    ts.reserve(t_.size());
    for (const auto& [m, c] : t_) ts.emplace_back(m, Series(c));
    return PhasePoly::from_terms(N, std::move(ts));
}

Poly Poly::constant(int nvars, const GQ& c) { return monomial(nvars, Mono{}, c); }

Poly Poly::monomial(int nvars, const Mono& m, const GQ& c) {
    Poly r(nvars);
    if (!c.is_zero()) r.t_.emplace_back(m, c);
    return r;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.first.degree());
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r(std::max(a.n_, b.n_));
    r.t_.reserve(a.t_.size() + b.t_.size());
    size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
        if (j == b.t_.size() || (i < a.t_.size() && drl_greater(a.t_[i].first, b.t_[j].first, r.n_))) {
            r.t_.push_back(a.t_[i++]);
        } else if (i == a.t_.size() || drl_greater(b.t_[j].first, a.t_[i].first, r.n_)) {
            r.t_.push_back(b.t_[j++]);
        } else {
            GQ c = a.t_[i].second + b.t_[j].second;
            if (!c.is_zero()) r.t_.emplace_back(a.t_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(std::max(a.n_, b.n_));
    for (const auto& [m, c] : a.t_) r = r + b.mul_term(m, c);
    return r;
}

Poly Poly::mul_term(const Mono& m, const GQ& c) const {
    Poly r(n_);
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (const auto& [mm, cc] : t_) r.t_.emplace_back(mm * m, cc * c);
    return r;
}

Poly Poly::scaled(const GQ& c) const { return mul_term(Mono{}, c); }

void Poly::sub_mul(const Mono& m, const GQ& c, const Poly& g) {
    *this = *this - g.mul_term(m, c);
}

bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

std::string Poly::str() const { return to_phase(std::max(1, n_ / 7)).str(); }

// ---- Buchberger ----

namespace {

struct Tracked {
    Poly f;
    std::vector<Poly> c;  // f = sum_l c[l] gens[l]
};

// Full reduction of x by basis; quotient accumulation into the tracking vector.
Poly reduce_full(Poly x, const std::vector<Tracked>& G, std::vector<Poly>* q) {
    int n = x.nvars();
    Poly rem(n);
    while (!x.is_zero()) {
        const Mono lm = x.lm();
        const GQ lc = x.lc();
        bool done = false;
        for (size_t k = 0; k < G.size(); ++k) {
            const Poly& g = G[k].f;
            if (!g.lm().divides(lm)) continue;
            Mono m = lm / g.lm();
            GQ c = lc / g.lc();
            x.sub_mul(m, c, g);
            if (q) (*q)[k] = (*q)[k] + Poly::monomial(n, m, c);
            done = true;
            break;
        }
        if (!done) {
            rem = rem + Poly::monomial(n, lm, lc);
            x = x - Poly::monomial(n, lm, lc);
        }
    }
    return rem;
}

std::vector<Poly> combine(const std::vector<Poly>& q, const std::vector<Tracked>& G, size_t ngens, int n) {
    std::vector<Poly> out(ngens, Poly(n));
    for (size_t k = 0; k < q.size(); ++k) {
        if (q[k].is_zero()) continue;
        for (size_t l = 0; l < ngens; ++l)
            if (!G[k].c[l].is_zero()) out[l] = out[l] + q[k] * G[k].c[l];
    }
    return out;
}

}  // namespace

GroebnerBasis groebner(const std::vector<Poly>& gens, int degree_cap) {
    GroebnerBasis out;
    out.gens = gens;
    out.degree_cap = degree_cap;
    if (gens.empty()) return out;
    const int n = gens.front().nvars();
    const size_t L = gens.size();

    std::vector<Tracked> G;
    auto unit_track = [&](size_t l) {
        std::vector<Poly> c(L, Poly(n));
        c[l] = Poly::constant(n, GQ(1));
        return c;
    };

    struct Pair {
        size_t i, j;
        Mono lcm;
    };
    std::vector<Pair> pairs;
    std::set<std::pair<size_t, size_t>> open;

    auto add_element = [&](Tracked t) {
        GQ inv = t.f.lc().inv();
        t.f = t.f.scaled(inv);
        for (auto& c : t.c) c = c.scaled(inv);
        size_t k = G.size();
        G.push_back(std::move(t));
        for (size_t i = 0; i < k; ++i) {
            if (G[i].f.is_zero()) continue;
            pairs.push_back({i, k, G[i].f.lm().lcm(G[k].f.lm())});
            open.insert({i, k});
        }
    };

    for (size_t l = 0; l < L; ++l) {
        if (gens[l].is_zero()) continue;
        std::vector<Poly> q(G.size(), Poly(n));
        Poly r = reduce_full(gens[l], G, &q);
        if (r.is_zero()) continue;
        auto c = unit_track(l);
        auto sub = combine(q, G, L, n);
        for (size_t m = 0; m < L; ++m) c[m] = c[m] - sub[m];
        add_element({r, c});
    }

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            return drl_greater(b.lcm, a.lcm, n);
        });
        Pair pr = *it;
        pairs.erase(it);
        open.erase({pr.i, pr.j});
        const Poly& fi = G[pr.i].f;
        const Poly& fj = G[pr.j].f;
        Mono mi = fi.lm(), mj = fj.lm();
        if ((mi * mj) == pr.lcm) continue;  // coprime leading monomials
        bool chain = false;
        for (size_t k = 0; k < G.size() && !chain; ++k) {
            if (k == pr.i || k == pr.j || G[k].f.is_zero()) continue;
            if (!G[k].f.lm().divides(pr.lcm)) continue;
            auto key = [](size_t a, size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (!open.count(key(pr.i, k)) && !open.count(key(pr.j, k))) chain = true;
        }
        if (chain) continue;
        if (pr.lcm.degree() > degree_cap) {
            out.complete = false;
            continue;
        }
        Mono ui = pr.lcm / mi, uj = pr.lcm / mj;
        Poly s = fi.mul_term(ui, GQ(1)) - fj.mul_term(uj, GQ(1));
        std::vector<Poly> c(L, Poly(n));
        for (size_t l = 0; l < L; ++l)
            c[l] = G[pr.i].c[l].mul_term(ui, GQ(1)) - G[pr.j].c[l].mul_term(uj, GQ(1));
        std::vector<Poly> q(G.size(), Poly(n));
        Poly r = reduce_full(s, G, &q);
        if (r.is_zero()) continue;
        auto sub = combine(q, G, L, n);
        for (size_t l = 0; l < L; ++l) c[l] = c[l] - sub[l];
        add_element({r, c});
    }

    // Minimal basis, then interreduction.
    std::vector<Tracked> M;
    for (size_t k = 0; k < G.size(); ++k) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (j == k) continue;
            if (G[j].f.lm().divides(G[k].f.lm()) && (G[j].f.lm() != G[k].f.lm() || j < k)) redundant = true;
        }
        if (!redundant) M.push_back(G[k]);
    }
    std::sort(M.begin(), M.end(), [n](const Tracked& a, const Tracked& b) { return drl_greater(b.f.lm(), a.f.lm(), n); });
    for (size_t k = 0; k < M.size(); ++k) {
        std::vector<Tracked> others;
        for (size_t j = 0; j < M.size(); ++j)
            if (j != k) others.push_back(M[j]);
        Poly head = Poly::monomial(n, M[k].f.lm(), M[k].f.lc());
        Poly tail = M[k].f - head;
        std::vector<Poly> q(others.size(), Poly(n));
        Poly r = reduce_full(tail, others, &q);
        auto sub = combine(q, others, L, n);
        M[k].f = head + r;
        for (size_t l = 0; l < L; ++l) M[k].c[l] = M[k].c[l] - sub[l];
    }
    for (auto& t : M) {
        out.basis.push_back(t.f);
        out.coeffs.push_back(t.c);
    }
    return out;
}

bool GroebnerBasis::verify_certificates() const {
    for (size_t k = 0; k < basis.size(); ++k) {
        Poly s(basis[k].nvars());
        for (size_t l = 0; l < gens.size(); ++l) s = s + coeffs[k][l] * gens[l];
        if (!(s == basis[k])) return false;
    }
    return true;
}

namespace {

std::vector<Tracked> as_tracked(const GroebnerBasis& gb) {
    std::vector<Tracked> G;
    for (size_t k = 0; k < gb.basis.size(); ++k) G.push_back({gb.basis[k], gb.coeffs[k]});
    return G;
}

}  // namespace

Poly normal_form(const Poly& f, const GroebnerBasis& gb) {
    return reduce_full(f, as_tracked(gb), nullptr);
}

Division divide_with_quotients(const Poly& f, const GroebnerBasis& gb) {
    auto G = as_tracked(gb);
    int n = f.nvars();
    std::vector<Poly> q(G.size(), Poly(n));
    Division d;
    d.remainder = reduce_full(f, G, &q);
    d.quotients = combine(q, G, gb.gens.size(), n);
    for (size_t l = 0; l < gb.gens.size(); ++l) {
        if (d.quotients[l].is_zero()) continue;
        if (d.quotients[l].degree() + gb.gens[l].degree() > gb.degree_cap) d.in_window = false;
    }
    return d;
}

nlohmann::json GroebnerBasis::to_json(int N) const {
    nlohmann::json j;
    j["N"] = N;
    j["degree_cap"] = degree_cap;
    j["complete"] = complete;
    j["generators"] = nlohmann::json::array();
    for (const auto& g : gens) j["generators"].push_back(phasepoly_to_json(g.to_phase(N)));
    j["basis"] = nlohmann::json::array();
    for (size_t k = 0; k < basis.size(); ++k) {
        nlohmann::json e;
        e["poly"] = phasepoly_to_json(basis[k].to_phase(N));
        e["certificate"] = nlohmann::json::array();
        for (const auto& c : coeffs[k]) e["certificate"].push_back(phasepoly_to_json(c.to_phase(N)));
        j["basis"].push_back(std::move(e));
    }
    return j;
}

GroebnerBasis GroebnerBasis::from_json(const nlohmann::json& j) {
    GroebnerBasis gb;
    gb.degree_cap = j.at("degree_cap").get<int>();
    gb.complete = j.at("complete").get<bool>();
    for (const auto& g : j.at("generators")) gb.gens.push_back(Poly::from_phase(phasepoly_from_json(g)));
    for (const auto& e : j.at("basis")) {
        gb.basis.push_back(Poly::from_phase(phasepoly_from_json(e.at("poly"))));
        std::vector<Poly> c;
        for (const auto& x : e.at("certificate")) c.push_back(Poly::from_phase(phasepoly_from_json(x)));
        if (c.size() != gb.gens.size()) throw std::invalid_argument("GroebnerBasis::from_json: certificate length");
        gb.coeffs.push_back(std::move(c));
    }
    if (!gb.verify_certificates()) throw std::invalid_argument("GroebnerBasis::from_json: certificate check failed");
    return gb;
}

// ---- SparseEchelon ----

std::pair<SparseEchelon::Row, SparseEchelon::Row> SparseEchelon::reduce(const Row& v) const {
    Row r = v, comb;
    auto it = r.begin();
    while (it != r.end()) {
        auto pv = pivots_.find(it->first);
        if (pv == pivots_.end()) {
            ++it;
            continue;
        }
        int col = it->first;
        GQ f = it->second;  // pivot rows are normalized to 1 at the pivot
        for (const auto& [k, c] : pv->second.first) {
            GQ& x = r[k];
            x -= f * c;
            if (x.is_zero() && k != col) r.erase(k);
        }
        r.erase(col);
        for (const auto& [k, c] : pv->second.second) {
            GQ& x = comb[k];
            x += f * c;
            if (x.is_zero()) comb.erase(k);
        }
        it = r.lower_bound(col);
    }
    return {r, comb};
}

std::optional<SparseEchelon::Row> SparseEchelon::insert(const Row& v) {
    auto [r, comb] = reduce(v);
    size_t idx = count_++;
    if (r.empty()) {
        // v = sum comb_k v_k, so v_idx - sum comb_k v_k = 0.
        Row ker;
        for (const auto& [k, c] : comb) ker[k] = -c;
        ker[static_cast<int>(idx)] = GQ(1);
        return ker;
    }
    // Row r = v_idx - sum comb_k v_k, normalized.
    GQ inv = r.begin()->second.inv();
    Row track;
    for (const auto& [k, c] : comb) track[k] = -c * inv;
    track[static_cast<int>(idx)] = inv;
    for (auto& [k, c] : r) c *= inv;
    int col = r.begin()->first;
    pivots_.emplace(col, std::make_pair(std::move(r), std::move(track)));
    return std::nullopt;
}

// ---- Constraint ideal ----

namespace {

std::vector<Poly> constraint_generators(int N) {
    Phase ph(N);
    std::vector<Poly> g;
    for (int l = 0; l < 3; ++l) g.push_back(Poly::from_phase(ph.moment(l)));
    for (int n = 0; n < N; ++n) {
        PhasePoly det = ph.entry(n, 0, 0) * ph.entry(n, 1, 1) - ph.entry(n, 0, 1) * ph.entry(n, 1, 0) - ph.one();
        g.push_back(Poly::from_phase(det));
    }
    return g;
}

}  // namespace

ConstraintIdeal::ConstraintIdeal(int N, int degree_cap) : N_(N) {
    gb_ = groebner(constraint_generators(N), degree_cap);
}

ConstraintIdeal::ConstraintIdeal(int N, GroebnerBasis gb) : N_(N), gb_(std::move(gb)) {
    auto expected = constraint_generators(N);
    if (gb_.gens.size() != expected.size()) throw std::invalid_argument("stored basis has the wrong generators");
    for (size_t k = 0; k < expected.size(); ++k)
        if (!(gb_.gens[k] == expected[k])) throw std::invalid_argument("stored basis has the wrong generators");
}

PhasePoly ConstraintIdeal::rest(const PhasePoly& f) const {
    PhasePoly r(N_);
    if (f.is_zero()) return r;
    for (int k = 0; k <= f.lambda_degree(); ++k) {
        PhasePoly c = f.lambda_coeff(k);
        if (c.is_zero()) continue;
        r += normal_form(Poly::from_phase(c), gb_).to_phase(N_).shift(k);
    }
    int p = f.min_prec();
    return p < Series::kExact ? r.truncated(p) : r;
}

std::vector<PhasePoly> ConstraintIdeal::h0(const PhasePoly& f, bool* in_window) const {
    std::vector<PhasePoly> q(3, PhasePoly(N_));
    if (in_window) *in_window = true;
    if (f.is_zero()) return q;
    for (int k = 0; k <= f.lambda_degree(); ++k) {
        PhasePoly c = f.lambda_coeff(k);
        if (c.is_zero()) continue;
        Division d = divide_with_quotients(Poly::from_phase(c), gb_);
        if (in_window && !d.in_window) *in_window = false;
        for (int l = 0; l < 3; ++l) q[l] += d.quotients[l].to_phase(N_).shift(k);
    }
    int p = f.min_prec();
    if (p < Series::kExact)
        for (auto& x : q) x = x.truncated(p);
    return q;
}

bool ConstraintIdeal::in_ideal(const PhasePoly& f) const { return rest(f).is_zero(); }

// ---- Syzygies ----

std::vector<Mono> det_reduced_monomials(int N, int D) {
    Layout L{N};
    const int n = L.nvars();
    std::vector<Mono> out;
    Mono m;
    std::function<void(int, int)> rec = [&](int v, int left) {
        if (v == n) {
            for (int c = 0; c < N; ++c)
                if (m.exp(L.entry(c, 0, 1)) > 0 && m.exp(L.entry(c, 1, 0)) > 0) return;
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m.set(v, e);
            rec(v + 1, left - e);
        }
        m.set(v, 0);
    };
    rec(0, D);
    std::sort(out.begin(), out.end(), DrlLess{n});
    return out;
}

namespace {

class MonoIndex {
public:
    int operator()(const Mono& m) {
        auto it = idx_.find(m);
        if (it != idx_.end()) return it->second;
        int k = static_cast<int>(idx_.size());
        idx_.emplace(m, k);
        return k;
    }

private:
    std::unordered_map<Mono, int, MonoHash> idx_;
};

SparseEchelon::Row to_row(const PhasePoly& f, MonoIndex& index, int slot, int nslots) {
    SparseEchelon::Row r;
    for (const auto& [m, c] : f.terms()) r[index(m) * nslots + slot] = c.coeff(0);
    return r;
}

void add_row(SparseEchelon::Row& a, const SparseEchelon::Row& b) {
    for (const auto& [k, c] : b) {
        GQ& x = a[k];
        x += c;
        if (x.is_zero()) a.erase(k);
    }
}

}  // namespace

SyzygyReport moment_syzygies(int N, int degree, int koszul_window) {
    Phase ph(N);
    std::vector<PhasePoly> J;
    for (int l = 0; l < 3; ++l) J.push_back(ph.moment(l));
    SyzygyReport rep;
    rep.degree = degree;
    rep.koszul_window = koszul_window;

    auto monos = det_reduced_monomials(N, degree);
    // Column u = 3 * i + l stands for monos[i] e_l.
    MonoIndex image_index;
    SparseEchelon ech;
    std::vector<std::vector<PhasePoly>> syz;
    for (size_t i = 0; i < monos.size(); ++i) {
        for (int l = 0; l < 3; ++l) {
            PhasePoly img = J[l].mul_mono(monos[i], Series(1)).det_normal();
            auto ker = ech.insert(to_row(img, image_index, 0, 1));
            if (!ker) continue;
            std::vector<PhasePoly> s(3, PhasePoly(N));
            for (const auto& [u, c] : *ker)
                s[u % 3] += PhasePoly::from_terms(N, {{monos[u / 3], Series(c)}});
            syz.push_back(std::move(s));
        }
    }
    rep.syzygies = syz;

    // Span of the Koszul syzygies with multipliers of degree <= window - 3.
    MonoIndex tuple_index;
    SparseEchelon kos;
    int dJ = 0;
    for (const auto& j : J) dJ = std::max(dJ, j.total_degree());
    int mdeg = koszul_window - dJ;
    if (mdeg >= 0) {
        for (const Mono& m : det_reduced_monomials(N, mdeg)) {
            for (int a = 0; a < 3; ++a) {
                for (int b = a + 1; b < 3; ++b) {
                    // J_a e_b - J_b e_a
                    SparseEchelon::Row r = to_row(J[a].mul_mono(m, Series(1)).det_normal(), tuple_index, b, 3);
                    add_row(r, to_row(-J[b].mul_mono(m, Series(1)).det_normal(), tuple_index, a, 3));
                    kos.insert(r);
                }
            }
        }
    }
    for (const auto& s : syz) {
        SparseEchelon::Row r;
        for (int l = 0; l < 3; ++l) add_row(r, to_row(s[l].det_normal(), tuple_index, l, 3));
        if (!kos.insert(r)) rep.non_koszul.push_back(s);
    }
    return rep;
}

}  // namespace lgq
