#include "lgq/phasealg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lgq {

int Mono::degree() const {
    int d = 0;
    for (int v = 0; v < kMaxVars; ++v) d += exp(v);
    return d;
}

bool Mono::divides(const Mono& o) const {
    for (int v = 0; v < kMaxVars; ++v)
        if (exp(v) > o.exp(v)) return false;
    return true;
}

Mono Mono::lcm(const Mono& o) const {
    Mono r;
    for (int v = 0; v < kMaxVars; ++v) r.set(v, std::max(exp(v), o.exp(v)));
    return r;
}

std::string Layout::var_name(int v) const {
    if (is_entry(v)) {
        int n = v / 4, i = (v % 4) / 2, j = v % 2;
        return "a[" + std::to_string(n + 1) + "][" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
    }
    int r = v - 4 * N;
    return "p[" + std::to_string(r / 3 + 1) + "][" + std::to_string(r % 3 + 1) + "]";
}

PhasePoly::PhasePoly(int N, Series c) : N_(N) {
    if (!c.is_zero()) t_.emplace_back(Mono{}, std::move(c));
}

PhasePoly PhasePoly::var(int N, int v) {
    if (N < 1 || N > kMaxCopies) throw std::invalid_argument("number of copies out of range");
    if (v < 0 || v >= 7 * N) throw std::invalid_argument("variable index out of range");
    PhasePoly r(N);
    Mono m;
    m.set(v, 1);
    r.t_.emplace_back(m, Series(1));
    return r;
}

PhasePoly PhasePoly::entry(int N, int n, int i, int j) { return var(N, Layout{N}.entry(n, i, j)); }
PhasePoly PhasePoly::p(int N, int I) { return var(N, Layout{N}.mom(I)); }
PhasePoly PhasePoly::lambda(int N) { return PhasePoly(N, Series::lambda_pow(1)); }

void PhasePoly::canon() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(std::move(t));
    }
    t_.clear();
    for (auto& t : out)
        if (!t.second.is_zero()) t_.push_back(std::move(t));
}

PhasePoly PhasePoly::from_terms(int N, std::vector<Term> terms) {
    PhasePoly r(N);
    r.t_ = std::move(terms);
    r.canon();
    return r;
}

PhasePoly PhasePoly::operator-() const {
    PhasePoly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

namespace {

template <bool Sub>
PhasePoly merge(const PhasePoly& a, const PhasePoly& b) {
    if (a.N() != b.N()) throw std::invalid_argument("copy-number mismatch");
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto i = a.terms().begin(), ie = a.terms().end();
    auto j = b.terms().begin(), je = b.terms().end();
    while (i != ie || j != je) {
        if (j == je || (i != ie && i->first < j->first)) {
            out.push_back(*i++);
        } else if (i == ie || j->first < i->first) {
            out.emplace_back(j->first, Sub ? -j->second : j->second);
            ++j;
        } else {
            Series s = Sub ? i->second - j->second : i->second + j->second;
            if (!s.is_zero()) out.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    return PhasePoly::from_terms(a.N(), std::move(out));
}

}  // namespace

PhasePoly operator+(const PhasePoly& a, const PhasePoly& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    return merge<false>(a, b);
}

PhasePoly operator-(const PhasePoly& a, const PhasePoly& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    return merge<true>(a, b);
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
    if (a.N_ != b.N_) throw std::invalid_argument("copy-number mismatch");
    if (a.is_zero() || b.is_zero()) return PhasePoly(a.N_);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) out.emplace_back(x.first * y.first, x.second * y.second);
    return PhasePoly::from_terms(a.N_, std::move(out));
}

PhasePoly PhasePoly::scaled(const Series& s) const {
    if (s.is_one()) return *this;
    PhasePoly r(N_);
    for (const auto& t : t_) {
        Series c = t.second * s;
        if (!c.is_zero()) r.t_.emplace_back(t.first, std::move(c));
    }
    return r;
}

PhasePoly PhasePoly::scaled(const GQ& s) const {
    if (s.is_one()) return *this;
    PhasePoly r(N_);
    if (s.is_zero()) return r;
    for (const auto& t : t_) r.t_.emplace_back(t.first, t.second.scaled(s));
    return r;
}

PhasePoly PhasePoly::mul_mono(const Mono& m, const Series& c) const {
    PhasePoly r(N_);
    for (const auto& t : t_) {
        Series s = t.second * c;
        if (!s.is_zero()) r.t_.emplace_back(t.first * m, std::move(s));
    }
    return r;
}

PhasePoly PhasePoly::pow(int e) const {
    PhasePoly r(N_, Series(1));
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

bool operator==(const PhasePoly& a, const PhasePoly& b) {
    PhasePoly d = a - b;
    return d.is_zero();
}

PhasePoly PhasePoly::truncated(int K) const {
    PhasePoly r(N_);
    for (const auto& t : t_) {
        Series c = t.second.with_prec(K);
        if (!c.is_zero()) r.t_.emplace_back(t.first, std::move(c));
    }
    return r;
}

int PhasePoly::min_prec() const {
    int p = Series::kExact;
    for (const auto& t : t_) p = std::min(p, t.second.prec());
    return p;
}

PhasePoly PhasePoly::lambda_coeff(int k) const {
    PhasePoly r(N_);
    for (const auto& t : t_) {
        const GQ& c = t.second.coeff(k);
        if (!c.is_zero()) r.t_.emplace_back(t.first, Series(c));
    }
    return r;
}

PhasePoly PhasePoly::shift(int k) const {
    PhasePoly r(N_);
    for (const auto& t : t_) {
        Series c = t.second.shift(k);
        if (!c.is_zero()) r.t_.emplace_back(t.first, std::move(c));
    }
    return r;
}

int PhasePoly::lambda_valuation() const {
    int v = -1;
    for (const auto& t : t_) {
        int x = t.second.valuation();
        if (x >= 0 && (v < 0 || x < v)) v = x;
    }
    return v;
}

int PhasePoly::lambda_degree() const {
    int v = -1;
    for (const auto& t : t_) v = std::max(v, t.second.degree());
    return v;
}

namespace {

int fiber_deg(const Mono& m, int N) {
    int d = 0;
    for (int v = 4 * N; v < 7 * N; ++v) d += m.exp(v);
    return d;
}

int entry_deg(const Mono& m, int N) {
    int d = 0;
    for (int v = 0; v < 4 * N; ++v) d += m.exp(v);
    return d;
}

}  // namespace

int PhasePoly::fiber_degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, fiber_deg(t.first, N_));
    return d;
}

int PhasePoly::entry_degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, entry_deg(t.first, N_));
    return d;
}

int PhasePoly::total_degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.first.degree());
    return d;
}

PhasePoly PhasePoly::fiber_part(int l) const {
    PhasePoly r(N_);
    for (const auto& t : t_)
        if (fiber_deg(t.first, N_) == l) r.t_.push_back(t);
    return r;
}

PhasePoly PhasePoly::entry_part(int e) const {
    PhasePoly r(N_);
    for (const auto& t : t_)
        if (entry_deg(t.first, N_) == e) r.t_.push_back(t);
    return r;
}

bool PhasePoly::is_fiber_homogeneous(int l) const {
    for (const auto& t : t_)
        if (fiber_deg(t.first, N_) != l) return false;
    return true;
}

PhasePoly PhasePoly::det_normal() const {
    Layout L{N_};
    std::vector<Term> cur(t_.begin(), t_.end());
    for (int n = 0; n < N_; ++n) {
        int v11 = L.entry(n, 0, 0), v12 = L.entry(n, 0, 1), v21 = L.entry(n, 1, 0), v22 = L.entry(n, 1, 1);
        std::vector<Term> next;
        next.reserve(cur.size());
        bool changed = false;
        for (auto& t : cur) {
            int k = std::min(t.first.exp(v12), t.first.exp(v21));
            if (k == 0) {
                next.push_back(std::move(t));
                continue;
            }
            changed = true;
            Mono base = t.first;
            base.add(v12, -k);
            base.add(v21, -k);
            // (a11 a22 - 1)^k
            for (int j = 0; j <= k; ++j) {
                Mono m = base;
                m.add(v11, j);
                m.add(v22, j);
                Q c = binomial(k, j);
                if ((k - j) % 2) c = -c;
                next.emplace_back(m, t.second.scaled(GQ(c)));
            }
        }
        cur = std::move(next);
        if (changed) {
            PhasePoly tmp = from_terms(N_, std::move(cur));
            cur = tmp.t_;
        }
    }
    return from_terms(N_, std::move(cur));
}

std::string PhasePoly::str() const {
    if (t_.empty()) return "0";
    Layout L{N_};
    std::string s;
    for (const auto& t : t_) {
        if (!s.empty()) s += " + ";
        s += "[" + t.second.str() + "]";
        for (int v = 0; v < L.nvars(); ++v) {
            int e = t.first.exp(v);
            if (e == 0) continue;
            s += "*" + L.var_name(v);
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

PhasePoly LinearDerivation::apply(const PhasePoly& f) const {
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        for (int v = 0; v < static_cast<int>(img.size()); ++v) {
            int e = t.first.exp(v);
            if (e == 0 || img[v].empty()) continue;
            Mono base = t.first;
            base.add(v, -1);
            for (const auto& [u, c] : img[v]) {
                Mono m = base;
                m.add(u, 1);
                out.emplace_back(m, t.second.scaled(c * GQ(Q(e))));
            }
        }
    }
    return PhasePoly::from_terms(f.N(), std::move(out));
}

PhasePoly substitute(const PhasePoly& f, const std::vector<PhasePoly>& image) {
    const int N = f.N();
    std::map<std::pair<int, int>, PhasePoly> cache;
    auto power = [&](int v, int e) -> const PhasePoly& {
        auto key = std::make_pair(v, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        PhasePoly r = e == 1 ? image[v] : image[v] * image[v].pow(e - 1);
        return cache.emplace(key, std::move(r)).first->second;
    };
    PhasePoly acc(N);
    for (const auto& t : f.terms()) {
        PhasePoly m(N, t.second);
        for (int v = 0; v < 7 * N; ++v) {
            int e = t.first.exp(v);
            if (e) m = m * power(v, e);
        }
        acc += m;
    }
    return acc;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat_adj(const Mat2& a) { return {a[3], -a[1], -a[2], a[0]}; }
GQ mat_det(const Mat2& a) { return a[0] * a[3] - a[1] * a[2]; }
GQ mat_tr(const Mat2& a) { return a[0] + a[3]; }
Mat2 mat_identity() { return {GQ(1), GQ(0), GQ(0), GQ(1)}; }
Mat2 mat_conj_transpose(const Mat2& a) { return {a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()}; }

Mat2 quaternion_matrix(const Q& w, const Q& x, const Q& y, const Q& z) {
    return {GQ(w, z), GQ(y, x), GQ(-y, x), GQ(w, -z)};
}

std::array<Q, 4> stereographic_quaternion(const Q& u1, const Q& u2, const Q& u3) {
    Q s = u1 * u1 + u2 * u2 + u3 * u3;
    Q den = Q(1) + s;
    return {(Q(1) - s) / den, Q(2) * u1 / den, Q(2) * u2 / den, Q(2) * u3 / den};
}

namespace {

Mat2 make_E(int k) {
    GQ h(Q(0), Q(-1, 2));  // -i/2
    switch (k) {
        case 0: return {GQ(0), h, h, GQ(0)};
        case 1: return {GQ(0), GQ(Q(-1, 2)), GQ(Q(1, 2)), GQ(0)};
        default: return {h, GQ(0), GQ(0), -h};
    }
}

}  // namespace

const Mat2& Phase::E(int k) {
    static const std::array<Mat2, 3> e = {make_E(0), make_E(1), make_E(2)};
    return e.at(k);
}

Vec Phase::coords(const Mat2& X) {
    Vec r(3);
    for (int k = 0; k < 3; ++k) r[k] = GQ(-2) * mat_tr(mat_mul(X, E(k)));
    return r;
}

Mat2 Phase::from_coords(const Vec& x, int offset) {
    Mat2 r{};
    for (int k = 0; k < 3; ++k)
        for (int e = 0; e < 4; ++e) r[e] += x[offset + k] * E(k)[e];
    return r;
}

std::array<GQ, 9> Phase::Ad(const Mat2& g) {
    std::array<GQ, 9> m;
    Mat2 gi = mat_adj(g);
    for (int k = 0; k < 3; ++k) {
        Vec c = coords(mat_mul(mat_mul(g, E(k)), gi));
        for (int j = 0; j < 3; ++j) m[j * 3 + k] = c[j];
    }
    return m;
}

Phase::Phase(int N) : N_(N), lie_(LieData::su2(), N) {
    if (N < 1 || N > kMaxCopies) throw std::invalid_argument("number of copies must be in 1..3");
    Layout L{N};
    for (int n = 0; n < N; ++n)
        for (int i = 0; i < 3; ++i) {
            LinearDerivation D;
            D.img.resize(L.nvars());
            const Mat2& e = E(i);
            // (a E)_{jk} = sum_m a_{jm} E_{mk}
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int m = 0; m < 2; ++m) {
                        const GQ& c = e[m * 2 + k];
                        if (!c.is_zero()) D.img[L.entry(n, j, k)].emplace_back(L.entry(n, j, m), c);
                    }
            left_.push_back(std::move(D));
        }
}

PhasePoly Phase::left_derive(int I, const PhasePoly& f) const { return left_.at(I).apply(f); }

PhasePoly Phase::left_derive_seq(const std::vector<int>& seq, const PhasePoly& f) const {
    PhasePoly r = f;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) r = left_derive(*it, r);
    return r;
}

PhasePoly Phase::fiber_derive(int I, const PhasePoly& f) const {
    Layout L{N_};
    int v = L.mom(I);
    std::vector<Term> out;
    for (const auto& t : f.terms()) {
        int e = t.first.exp(v);
        if (!e) continue;
        Mono m = t.first;
        m.add(v, -1);
        out.emplace_back(m, t.second.scaled(GQ(Q(e))));
    }
    return PhasePoly::from_terms(N_, std::move(out));
}

PhasePoly Phase::fundamental_derive(const Vec& B, const PhasePoly& f) const {
    Layout L{N_};
    LinearDerivation D;
    D.img.resize(L.nvars());
    Mat2 X = from_coords(B);
    ProductLieData g1(LieData::su2(), 1);
    for (int n = 0; n < N_; ++n) {
        // a -> X a - a X
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                auto& img = D.img[L.entry(n, j, k)];
                for (int m = 0; m < 2; ++m) {
                    if (!X[j * 2 + m].is_zero()) img.emplace_back(L.entry(n, m, k), X[j * 2 + m]);
                    if (!X[m * 2 + k].is_zero()) img.emplace_back(L.entry(n, j, m), -X[m * 2 + k]);
                }
            }
        // p_K -> -sum_J [B, E_K]^J p_J
        for (int K = 0; K < 3; ++K) {
            Vec br = g1.bracket(B, g1.basis(K));
            for (int J = 0; J < 3; ++J)
                if (!br[J].is_zero()) D.img[L.mom(n, K)].emplace_back(L.mom(n, J), -br[J]);
        }
    }
    return D.apply(f);
}

PhasePoly Phase::tautological(const Vec& X) const {
    if (static_cast<int>(X.size()) != dim()) throw std::invalid_argument("dimension mismatch");
    PhasePoly r(N_);
    for (int I = 0; I < dim(); ++I)
        if (!X[I].is_zero()) r += p(I).scaled(X[I]);
    return r;
}

PhasePoly Phase::moment_component(const Vec& B) const {
    if (B.size() != 3) throw std::invalid_argument("moment component needs B in g");
    Mat2 Bm = from_coords(B);
    PhasePoly acc(N_);
    for (int n = 0; n < N_; ++n) {
        // M = adj(a) B a as polynomial matrix
        std::array<PhasePoly, 4> a = {entry(n, 0, 0), entry(n, 0, 1), entry(n, 1, 0), entry(n, 1, 1)};
        std::array<PhasePoly, 4> adj = {a[3], -a[1], -a[2], a[0]};
        std::array<PhasePoly, 4> Ba, M;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                PhasePoly s(N_);
                for (int m = 0; m < 2; ++m) s += a[m * 2 + k].scaled(Bm[j * 2 + m]);
                Ba[j * 2 + k] = s;
            }
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) M[j * 2 + k] = adj[j * 2] * Ba[k] + adj[j * 2 + 1] * Ba[2 + k];
        for (int K = 0; K < 3; ++K) {
            PhasePoly c(N_);
            const Mat2& e = E(K);
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    if (!e[k * 2 + j].is_zero()) c += M[j * 2 + k].scaled(GQ(-2) * e[k * 2 + j]);
            c -= PhasePoly(N_, Series(B[K]));
            acc += c * p(3 * n + K);
        }
    }
    return acc;
}

PhasePoly Phase::moment(int l) const {
    Vec B(3);
    B.at(l) = GQ(1);
    return moment_component(B);
}

Vec Phase::moment_map(const PhasePoint& pt) const {
    Vec J(3);
    for (int n = 0; n < N_; ++n) {
        Mat2 ai = mat_adj(pt.a[n]);
        for (int K = 0; K < 3; ++K) {
            Vec c = coords(mat_mul(mat_mul(ai, E(K)), pt.a[n]));
            GQ s;
            for (int J2 = 0; J2 < 3; ++J2) s += pt.alpha[3 * n + J2] * c[J2];
            J[K] += s - pt.alpha[3 * n + K];
        }
    }
    return J;
}

PhasePoly Phase::group_action(const Mat2& g, const PhasePoly& f) const {
    Layout L{N_};
    Mat2 gi = mat_adj(g);
    std::array<GQ, 9> M = Ad(gi);  // column K: coords of g^{-1} E_K g
    std::vector<PhasePoly> img(L.nvars(), PhasePoly(N_));
    for (int n = 0; n < N_; ++n) {
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                PhasePoly s(N_);
                for (int m = 0; m < 2; ++m)
                    for (int q = 0; q < 2; ++q) {
                        GQ c = g[j * 2 + m] * gi[q * 2 + k];
                        if (!c.is_zero()) s += entry(n, m, q).scaled(c);
                    }
                img[L.entry(n, j, k)] = s;
            }
        for (int K = 0; K < 3; ++K) {
            PhasePoly s(N_);
            for (int J = 0; J < 3; ++J)
                if (!M[J * 3 + K].is_zero()) s += p(3 * n + J).scaled(M[J * 3 + K]);
            img[L.mom(n, K)] = s;
        }
    }
    return substitute(f, img);
}

PhasePoint Phase::group_action(const Mat2& g, const PhasePoint& pt) const {
    PhasePoint r;
    Mat2 gi = mat_adj(g);
    std::array<GQ, 9> M = Ad(gi);
    r.alpha.assign(dim(), GQ());
    for (int n = 0; n < N_; ++n) {
        r.a.push_back(mat_mul(mat_mul(g, pt.a[n]), gi));
        for (int K = 0; K < 3; ++K) {
            GQ s;
            for (int J = 0; J < 3; ++J) s += M[J * 3 + K] * pt.alpha[3 * n + J];
            r.alpha[3 * n + K] = s;
        }
    }
    return r;
}

PhasePoly Phase::left_translate(const Mat2& g, const PhasePoly& f) const {
    Layout L{N_};
    std::vector<PhasePoly> img(L.nvars(), PhasePoly(N_));
    for (int v = 0; v < L.nvars(); ++v) img[v] = PhasePoly::var(N_, v);
    for (int n = 0; n < N_; ++n)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                PhasePoly s(N_);
                for (int m = 0; m < 2; ++m)
                    if (!g[j * 2 + m].is_zero()) s += entry(n, m, k).scaled(g[j * 2 + m]);
                img[L.entry(n, j, k)] = s;
            }
    return substitute(f, img);
}

PhasePoly Phase::trace_word(const Word& w, bool inverse) const {
    if (w.empty()) throw std::invalid_argument("empty plaquette word");
    auto mat = [&](int n, int s) {
        std::array<PhasePoly, 4> a = {entry(n, 0, 0), entry(n, 0, 1), entry(n, 1, 0), entry(n, 1, 1)};
        if (s < 0) a = {a[3], -a[1], -a[2], a[0]};
        return a;
    };
    Word ww = w;
    if (inverse) {
        std::reverse(ww.begin(), ww.end());
        for (auto& x : ww) x.second = -x.second;
    }
    std::array<PhasePoly, 4> acc;
    bool first = true;
    for (auto [n, s] : ww) {
        if (n < 0 || n >= N_) throw std::invalid_argument("plaquette link index out of range");
        auto m = mat(n, s);
        if (first) {
            acc = m;
            first = false;
            continue;
        }
        std::array<PhasePoly, 4> r;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[j * 2 + k] = acc[j * 2] * m[k] + acc[j * 2 + 1] * m[2 + k];
        acc = r;
    }
    return acc[0] + acc[3];
}

PhasePoly Phase::hamiltonian(const Q& kappa, const Q& delta, const std::vector<Word>& plaquettes) const {
    PhasePoly kin(N_);
    for (int I = 0; I < dim(); ++I) kin += p(I) * p(I);
    PhasePoly H = kin.scaled(GQ(kappa * kappa / (Q(2) * delta)));
    PhasePoly pot(N_);
    for (const auto& w : plaquettes) pot += trace_word(w, false) + trace_word(w, true);
    return H - pot.scaled(GQ((kappa * kappa * delta).inv()));
}

Series Phase::evaluate(const PhasePoly& f, const PhasePoint& pt) const {
    Layout L{N_};
    std::vector<GQ> val(L.nvars());
    for (int n = 0; n < N_; ++n)
        for (int e = 0; e < 4; ++e) val[4 * n + e] = pt.a[n][e];
    for (int I = 0; I < dim(); ++I) val[L.mom(I)] = pt.alpha[I];
    Series acc;
    for (const auto& t : f.terms()) {
        GQ m(1);
        for (int v = 0; v < L.nvars(); ++v)
            for (int e = t.first.exp(v); e > 0; --e) m = m * val[v];
        acc += t.second.scaled(m);
    }
    return acc;
}

Mat2 Phase::random_group_element(const IntGen& gen) const {
    auto rq = [&]() { return Q(gen(-4, 4), gen(1, 3)); };
    auto q = stereographic_quaternion(rq(), rq(), rq());
    return quaternion_matrix(q[0], q[1], q[2], q[3]);
}

PhasePoint Phase::random_point(const IntGen& gen) const {
    PhasePoint pt;
    for (int n = 0; n < N_; ++n) pt.a.push_back(random_group_element(gen));
    for (int I = 0; I < dim(); ++I) pt.alpha.push_back(GQ(Q(gen(-5, 5), gen(1, 2))));
    return pt;
}

}  // namespace lgq
