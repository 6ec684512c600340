#include "lgq/brst.hpp"

#include <sstream>
#include <stdexcept>

namespace lgq {

namespace {

int below(int mask, int bit) { return __builtin_popcount(mask & ((1 << bit) - 1)); }

int merge_sign(int m1, int m2) {
    int inv = 0;
    for (int i = 0; i < 8; ++i)
        if (m1 & (1 << i)) inv += below(m2, i);
    return inv % 2 ? -1 : 1;
}

std::vector<int> bits(int mask) {
    std::vector<int> r;
    for (int i = 0; i < 8; ++i)
        if (mask & (1 << i)) r.push_back(i);
    return r;
}

}  // namespace

std::pair<int, GhostKey> word_product(GhostKey a, GhostKey b) {
    int ga = ghost_mask(a), gb = ghost_mask(b), aa = antighost_mask(a), ab = antighost_mask(b);
    if ((ga & gb) || (aa & ab)) return {0, 0};
    int s = merge_sign(ga, gb) * merge_sign(aa, ab);
    if ((__builtin_popcount(aa) * __builtin_popcount(gb)) % 2) s = -s;
    return {s, make_key(ga | gb, aa | ab)};
}

GhostPoly GhostPoly::scalar(const PhasePoly& f) {
    GhostPoly r(f.N());
    r.add_term(0, f);
    return r;
}

GhostPoly GhostPoly::ghost(int N, int l) {
    GhostPoly r(N);
    r.add_term(make_key(1 << l, 0), PhasePoly(N, Series(1)));
    return r;
}

GhostPoly GhostPoly::antighost(int N, int l) {
    GhostPoly r(N);
    r.add_term(make_key(0, 1 << l), PhasePoly(N, Series(1)));
    return r;
}

GhostPoly GhostPoly::word(const PhasePoly& f, const std::vector<int>& ghosts, const std::vector<int>& antighosts) {
    int sign = 1;
    GhostKey key = 0;
    auto push = [&](GhostKey g) {
        auto [s, k] = word_product(key, g);
        sign *= s;
        key = k;
    };
    for (int l : ghosts) push(make_key(1 << l, 0));
    for (int l : antighosts) push(make_key(0, 1 << l));
    GhostPoly r(f.N());
    if (sign != 0) r.add_term(key, sign > 0 ? f : -f);
    return r;
}

PhasePoly GhostPoly::coeff(GhostKey k) const {
    auto it = t_.find(k);
    return it == t_.end() ? PhasePoly(N_) : it->second;
}

void GhostPoly::add_term(GhostKey k, const PhasePoly& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

GhostPoly GhostPoly::operator-() const {
    GhostPoly r(N_);
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
}

GhostPoly& GhostPoly::operator+=(const GhostPoly& b) {
    if (t_.empty()) N_ = b.N_;
    for (const auto& [k, c] : b.t_) add_term(k, c);
    return *this;
}

GhostPoly operator+(const GhostPoly& a, const GhostPoly& b) {
    GhostPoly r = a;
    r += b;
    return r;
}

GhostPoly operator-(const GhostPoly& a, const GhostPoly& b) {
    GhostPoly r = a;
    r -= b;
    return r;
}

GhostPoly GhostPoly::scaled(const PhasePoly& f) const {
    return map_coeffs([&](const PhasePoly& c) { return f * c; });
}

GhostPoly GhostPoly::scaled(const Series& s) const {
    return map_coeffs([&](const PhasePoly& c) { return c.scaled(s); });
}

GhostPoly GhostPoly::map_coeffs(const std::function<PhasePoly(const PhasePoly&)>& fn) const {
    GhostPoly r(N_);
    for (const auto& [k, c] : t_) r.add_term(k, fn(c));
    return r;
}

GhostPoly GhostPoly::truncated(int K) const {
    return map_coeffs([&](const PhasePoly& c) { return c.truncated(K); });
}

GhostPoly GhostPoly::det_normal() const {
    return map_coeffs([](const PhasePoly& c) { return c.det_normal(); });
}

GhostPoly GhostPoly::shift(int k) const {
    return map_coeffs([&](const PhasePoly& c) { return c.shift(k); });
}

int GhostPoly::degree() const {
    if (t_.empty()) return 0;
    int d = word_degree(t_.begin()->first);
    for (const auto& [k, c] : t_)
        if (word_degree(k) != d) throw std::invalid_argument("GhostPoly is not homogeneous");
    return d;
}

int GhostPoly::parity() const { return ((degree() % 2) + 2) % 2; }

bool operator==(const GhostPoly& a, const GhostPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto it = b.t_.begin();
    for (const auto& [k, c] : a.t_) {
        if (k != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

std::string GhostPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int l : bits(ghost_mask(k))) os << "*eps" << l + 1;
        for (int l : bits(antighost_mask(k))) os << "*E" << l + 1;
    }
    return os.str();
}


// ---------------------------------------------------------------- insertion

std::pair<int, GhostKey> insert_left_word(const Generator& v, GhostKey w) {
    int g = ghost_mask(w), a = antighost_mask(w);
    int bit = 1 << v.idx;
    if (v.ghost) {
        // alpha contracts the antighost part with sign (-1)^{#ghosts}
        if (!(a & bit)) return {0, 0};
        int s = (below(a, v.idx) + __builtin_popcount(g)) % 2 ? -1 : 1;
        return {s, make_key(g, a & ~bit)};
    }
    if (!(g & bit)) return {0, 0};
    int s = below(g, v.idx) % 2 ? -1 : 1;
    return {s, make_key(g & ~bit, a)};
}

std::pair<int, GhostKey> insert_right_word(const Generator& v, GhostKey w) {
    auto [s, k] = insert_left_word(v, w);
    int n = word_degree(w);
    if (((n + 1) % 2 + 2) % 2) s = -s;
    return {s, k};
}

namespace {

GhostPoly insert_generic(const Generator& v, const GhostPoly& x, bool right) {
    GhostPoly r(x.N());
    for (const auto& [k, c] : x.terms()) {
        auto [s, nk] = right ? insert_right_word(v, k) : insert_left_word(v, k);
        if (s == 0) continue;
        r.add_term(nk, s > 0 ? c : -c);
    }
    return r;
}

}  // namespace

GhostPoly insert_left(const Generator& v, const GhostPoly& x) { return insert_generic(v, x, false); }
GhostPoly insert_right(const Generator& v, const GhostPoly& x) { return insert_generic(v, x, true); }

GhostPoly mu_with(const GhostPoly& x, const GhostPoly& y, const CoeffProduct& prod) {
    GhostPoly r(x.N());
    for (const auto& [ka, ca] : x.terms())
        for (const auto& [kb, cb] : y.terms()) {
            auto [s, k] = word_product(ka, kb);
            if (s == 0) continue;
            PhasePoly c = prod(ca, cb);
            r.add_term(k, s > 0 ? c : -c);
        }
    return r;
}

GhostPoly mu(const GhostPoly& x, const GhostPoly& y) {
    return mu_with(x, y, [](const PhasePoly& a, const PhasePoly& b) { return a * b; });
}

namespace {

WordTensor apply_pair(const WordTensor& t, int d, bool ghost_left) {
    WordTensor out;
    for (const auto& [kk, c] : t)
        for (int l = 0; l < d; ++l) {
            auto [s1, k1] = insert_right_word({ghost_left, l}, kk.first);
            if (s1 == 0) continue;
            auto [s2, k2] = insert_left_word({!ghost_left, l}, kk.second);
            if (s2 == 0) continue;
            Q& x = out[{k1, k2}];
            x += (s1 * s2 > 0) ? c : -c;
        }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

WordTensor apply_P(const WordTensor& t, int d) { return apply_pair(t, d, true); }
WordTensor apply_Pstar(const WordTensor& t, int d) { return apply_pair(t, d, false); }

// ---------------------------------------------------------------- Brst

Brst::Brst(const StarProduct& sp, int exponent_sign)
    : ph_(sp.phase()), sp_(sp), sg_(sp.phase()), lie_(LieData::su2()), sign_(exponent_sign) {
    for (int l = 0; l < 3; ++l) J_.push_back(ph_.moment(l));
}

PhasePoly Brst::bracket0(const PhasePoly& f, const PhasePoly& g) const { return -sg_.poisson(f, g); }

PhasePoly Brst::classical_rep(int l, const PhasePoly& f) const { return bracket0(J_[l], f); }

GhostPoly Brst::koszul_d(const GhostPoly& x) const {
    GhostPoly r(x.N());
    for (int l = 0; l < 3; ++l) r += insert_left({true, l}, x).scaled(J_[l]);
    return r;
}

GhostPoly Brst::ad_antighost(int l, const GhostPoly& x) const {
    GhostPoly r(x.N());
    for (const auto& [k, c] : x.terms()) {
        std::vector<int> gs = bits(ghost_mask(k)), as = bits(antighost_mask(k));
        for (size_t s = 0; s < as.size(); ++s)
            for (int m = 0; m < 3; ++m) {
                const Q& cc = lie_.C(l, as[s], m);
                if (cc.is_zero()) continue;
                std::vector<int> na = as;
                na[s] = m;
                r += GhostPoly::word(c.scaled(GQ(cc)), gs, na);
            }
    }
    return r;
}

GhostPoly Brst::ce_generic(const GhostPoly& x, const std::function<PhasePoly(int, const PhasePoly&)>& rep) const {
    const int N = x.N();
    PhasePoly one(N, Series(1));
    // d0 on a pure ghost word, as an odd derivation.
    std::map<int, GhostPoly> d0_cache;
    auto d0 = [&](auto&& self, int gmask) -> GhostPoly {
        auto it = d0_cache.find(gmask);
        if (it != d0_cache.end()) return it->second;
        GhostPoly r(N);
        if (gmask != 0) {
            int a = __builtin_ctz(gmask);
            int rest = gmask & ~(1 << a);
            GhostPoly da(N);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const Q& c = lie_.C(j, k, a);
                    if (!c.is_zero()) da += GhostPoly::word(one.scaled(GQ(-c * Q(1, 2))), {j, k}, {});
                }
            GhostPoly restw(N);
            restw.add_term(make_key(rest, 0), one);
            GhostPoly ea = GhostPoly::ghost(N, a);
            r = mu(da, restw) - mu(ea, self(self, rest));
        }
        d0_cache.emplace(gmask, r);
        return r;
    };
    GhostPoly out(N);
    for (const auto& [k, c] : x.terms()) {
        int g = ghost_mask(k), a = antighost_mask(k);
        GhostPoly m(N);
        m.add_term(make_key(0, a), c);
        out += mu(d0(d0, g), m);
        GhostPoly omega(N);
        omega.add_term(make_key(g, 0), one);
        int sgn = __builtin_popcount(g) % 2 ? -1 : 1;
        for (int j = 0; j < 3; ++j) {
            GhostPoly Lm(N);
            Lm.add_term(make_key(0, a), rep(j, c));
            Lm += ad_antighost(j, m);
            GhostPoly t = mu(mu(omega, GhostPoly::ghost(N, j)), Lm);
            out += sgn > 0 ? t : -t;
        }
    }
    return out;
}

GhostPoly Brst::ce_delta(const GhostPoly& x) const {
    return ce_generic(x, [&](int l, const PhasePoly& f) { return classical_rep(l, f); });
}

GhostPoly Brst::classical_brst_d(const GhostPoly& x) const {
    GhostPoly k = koszul_d(x);
    return ce_delta(x) + k + k;
}

GhostPoly Brst::classical_charge() const {
    const int N = ph_.N();
    PhasePoly one(N, Series(1));
    GhostPoly th(N);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) {
                const Q& c = lie_.C(j, k, l);
                if (!c.is_zero()) th += GhostPoly::word(one.scaled(GQ(-c * Q(1, 4))), {j, k}, {l});
            }
    for (int k = 0; k < 3; ++k) th += GhostPoly::word(J_[k], {k}, {});
    return th;
}

GhostPoly Brst::brst_poisson(const GhostPoly& x, const GhostPoly& y) const {
    GhostPoly r(x.N());
    for (const auto& [ka, f] : x.terms())
        for (const auto& [kb, g] : y.terms()) {
            auto [s, k] = word_product(ka, kb);
            if (s != 0) {
                PhasePoly b = bracket0(f, g);
                r.add_term(k, s > 0 ? b : -b);
            }
            WordTensor t{{{ka, kb}, Q(1)}};
            WordTensor p = apply_P(t, 3);
            for (const auto& [kk, c] : apply_Pstar(t, 3)) p[kk] += c;
            PhasePoly fg;
            bool have = false;
            for (const auto& [kk, c] : p) {
                if (c.is_zero()) continue;
                auto [s2, k2] = word_product(kk.first, kk.second);
                if (s2 == 0) continue;
                if (!have) {
                    fg = f * g;
                    have = true;
                }
                r.add_term(k2, fg.scaled(GQ(c * Q(2 * s2))));
            }
        }
    return r;
}

PhasePoly Brst::div_hbar(const PhasePoly& f) const {
    if (f.is_zero()) return f;
    if (!f.lambda_coeff(0).is_zero()) throw std::runtime_error("commutator has a nonzero lambda^0 term");
    // 1/(i lambda) = -i lambda^{-1}
    return f.shift(-1).scaled(GQ(Q(0), Q(-1)));
}

PhasePoly Brst::quantized_rep(const Vec& X, const PhasePoly& f) const {
    PhasePoly JX = ph_.moment_component(X);
    return div_hbar(sp_.commutator(JX, f));
}

PhasePoly Brst::quantized_rep(int l, const PhasePoly& f) const { return div_hbar(sp_.commutator(J_[l], f)); }

GhostPoly Brst::quantum_product(const GhostPoly& x, const GhostPoly& y) const {
    const int N = x.N();
    const int K = sp_.K();
    GhostPoly r(N);
    // (2 s hbar)^n / n! = (2 s i)^n lambda^n / n!
    GQ step(Q(0), Q(2 * sign_));
    for (const auto& [ka, f] : x.terms())
        for (const auto& [kb, g] : y.terms()) {
            WordTensor t{{{ka, kb}, Q(1)}};
            GQ w(1);
            std::map<GhostKey, Series> vw;
            for (int n = 0; !t.empty() && n <= K; ++n) {
                for (const auto& [kk, c] : t) {
                    auto [s, k] = word_product(kk.first, kk.second);
                    if (s == 0) continue;
                    Series term = Series::lambda_pow(n).scaled(w * GQ(c * Q(s)));
                    auto it = vw.find(k);
                    if (it == vw.end())
                        vw.emplace(k, term);
                    else
                        it->second += term;
                }
                t = apply_P(t, 3);
                w = w * step * GQ(Q(1, n + 1));
            }
            bool any = false;
            for (const auto& [k, s] : vw)
                if (!s.is_zero()) any = true;
            if (!any) continue;
            PhasePoly fg = sp_.star(f, g);
            for (const auto& [k, s] : vw)
                if (!s.is_zero()) r.add_term(k, fg.scaled(s).truncated(K));
        }
    return r;
}

GhostPoly Brst::quantum_koszul_d(const GhostPoly& x) const {
    const int N = x.N();
    const int K = sp_.K();
    PhasePoly one(N, Series(1));
    Vec Delta = ProductLieData(lie_, 1).modular_form();
    GhostPoly out(N);
    for (const auto& [k, f] : x.terms()) {
        int g = ghost_mask(k), a = antighost_mask(k);
        GhostPoly Z(N);
        Z.add_term(make_key(0, a), one);
        GhostPoly res(N);
        for (int l = 0; l < 3; ++l) {
            GhostPoly c = insert_left({true, l}, Z);
            if (!c.is_zero()) res += c.scaled(sp_.star(f, J_[l]));
        }
        // (hbar/2) f (sum C^l_{jk} E_l ^ i(eps^j) i(eps^k) Z + i(Delta) Z)
        GhostPoly corr(N);
        for (int j = 0; j < 3; ++j)
            for (int kk = 0; kk < 3; ++kk)
                for (int l = 0; l < 3; ++l) {
                    const Q& c = lie_.C(j, kk, l);
                    if (c.is_zero()) continue;
                    GhostPoly t = insert_left({true, j}, insert_left({true, kk}, Z));
                    if (t.is_zero()) continue;
                    corr += mu(GhostPoly::antighost(N, l), t).scaled(Series(GQ(c)));
                }
        for (int l = 0; l < 3; ++l)
            if (!Delta[l].is_zero()) corr += insert_left({true, l}, Z).scaled(Series(Delta[l]));
        if (!corr.is_zero()) res += corr.scaled(f.scaled(Series::lambda_pow(1).scaled(GQ(Q(0), Q(1, 2)))));
        GhostPoly omega(N);
        omega.add_term(make_key(g, 0), one);
        GhostPoly t = mu(omega, res);
        out += __builtin_popcount(g) % 2 ? -t : t;
    }
    return out.truncated(K);
}

GhostPoly Brst::quantum_ce_delta(const GhostPoly& x) const {
    return ce_generic(x, [&](int l, const PhasePoly& f) { return quantized_rep(l, f); });
}

GhostPoly Brst::quantum_brst_d(const GhostPoly& x) const {
    GhostPoly k = quantum_koszul_d(x);
    return quantum_ce_delta(x) + k + k;
}

GhostPoly Brst::quantum_charge() const {
    GhostPoly th = classical_charge();
    Vec Delta = ProductLieData(lie_, 1).modular_form();
    const int N = ph_.N();
    for (int l = 0; l < 3; ++l)
        if (!Delta[l].is_zero())
            th += GhostPoly::ghost(N, l).scaled(
                PhasePoly(N, Series::lambda_pow(1).scaled(GQ(Q(0), Q(1, 2)) * Delta[l])));
    return th;
}

GhostPoly Brst::ad_quantum_charge(const GhostPoly& x) const {
    GhostPoly th = quantum_charge();
    GhostPoly out(x.N());
    // split x into homogeneous parity parts
    GhostPoly even(x.N()), odd(x.N());
    for (const auto& [k, c] : x.terms()) (word_length(k) % 2 ? odd : even).add_term(k, c);
    GhostPoly comm = quantum_product(th, even) - quantum_product(even, th) + quantum_product(th, odd) +
                     quantum_product(odd, th);
    return comm.map_coeffs([&](const PhasePoly& c) { return div_hbar(c); });
}

}  // namespace lgq
