#include "lgq/liealg.hpp"

#include <stdexcept>

namespace lgq {

LieData::LieData(int dim, std::vector<Q> structure, std::vector<Q> pairing)
    : dim_(dim), c_(std::move(structure)), g_(std::move(pairing)) {
    if (dim <= 0) throw std::invalid_argument("Lie algebra dimension must be positive");
    if (static_cast<int>(c_.size()) != dim * dim * dim)
        throw std::invalid_argument("structure constants must have dim^3 entries");
    if (static_cast<int>(g_.size()) != dim * dim) throw std::invalid_argument("pairing must be dim x dim");
}

LieData LieData::su2() {
    std::vector<Q> c(27), g(9);
    auto set = [&](int i, int j, int k, int s) { c[(i * 3 + j) * 3 + k] = Q(s); };
    set(0, 1, 2, 1);
    set(1, 2, 0, 1);
    set(2, 0, 1, 1);
    set(1, 0, 2, -1);
    set(2, 1, 0, -1);
    set(0, 2, 1, -1);
    for (int i = 0; i < 3; ++i) g[i * 3 + i] = Q(1);
    return LieData(3, std::move(c), std::move(g));
}

std::string LieData::validate() const {
    const int d = dim_;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                if (C(i, j, k) != -C(j, i, k)) return "antisymmetry C[i][j][k] = -C[j][i][k]";
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    Q s;
                    for (int m = 0; m < d; ++m)
                        s += C(i, j, m) * C(m, k, l) + C(j, k, m) * C(m, i, l) + C(k, i, m) * C(m, j, l);
                    if (!s.is_zero()) return "Jacobi identity";
                }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (pairing(i, j) != pairing(j, i)) return "pairing symmetry";
    // <[X,Y],Z> + <Y,[X,Z]> = 0 on basis
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) {
                Q s;
                for (int m = 0; m < d; ++m) s += C(x, y, m) * pairing(m, z) + C(x, z, m) * pairing(y, m);
                if (!s.is_zero()) return "pairing ad-invariance";
            }
    // nondegeneracy by exact Gaussian elimination
    std::vector<Q> a = g_;
    int rank = 0;
    for (int col = 0; col < d && rank < d; ++col) {
        int piv = -1;
        for (int r = rank; r < d; ++r)
            if (!a[r * d + col].is_zero()) piv = r;
        if (piv < 0) continue;
        for (int c = 0; c < d; ++c) std::swap(a[piv * d + c], a[rank * d + c]);
        for (int r = 0; r < d; ++r) {
            if (r == rank || a[r * d + col].is_zero()) continue;
            Q f = a[r * d + col] / a[rank * d + col];
            for (int c = 0; c < d; ++c) a[r * d + c] -= f * a[rank * d + c];
        }
        ++rank;
    }
    if (rank < d) return "pairing nondegeneracy";
    return {};
}

ProductLieData::ProductLieData(LieData base, int copies) : base_(std::move(base)), n_(copies) {
    if (copies <= 0) throw std::invalid_argument("number of copies must be positive");
}

Q ProductLieData::C(int I, int J, int K) const {
    int n = copy_of(I);
    if (copy_of(J) != n || copy_of(K) != n) return Q(0);
    return base_.C(local(I), local(J), local(K));
}

void ProductLieData::check(const Vec& v) const {
    if (static_cast<int>(v.size()) != dim()) throw std::invalid_argument("dimension mismatch");
}

Vec ProductLieData::basis(int I) const {
    Vec v(dim());
    v.at(I) = GQ(1);
    return v;
}

Vec ProductLieData::bracket(const Vec& X, const Vec& Y) const {
    check(X);
    check(Y);
    const int d = base_.dim();
    Vec r(dim());
    for (int n = 0; n < n_; ++n)
        for (int i = 0; i < d; ++i) {
            if (X[n * d + i].is_zero()) continue;
            for (int j = 0; j < d; ++j) {
                if (Y[n * d + j].is_zero()) continue;
                GQ xy = X[n * d + i] * Y[n * d + j];
                for (int k = 0; k < d; ++k) {
                    const Q& c = base_.C(i, j, k);
                    if (!c.is_zero()) r[n * d + k] += xy * GQ(c);
                }
            }
        }
    return r;
}

Vec ProductLieData::ad_star(const Vec& X, const Vec& xi) const {
    check(X);
    check(xi);
    Vec r(dim());
    for (int J = 0; J < dim(); ++J) {
        Vec br = bracket(X, basis(J));
        r[J] = -dual(xi, br);
    }
    return r;
}

GQ ProductLieData::dual(const Vec& xi, const Vec& X) const {
    check(xi);
    check(X);
    GQ s;
    for (int I = 0; I < dim(); ++I)
        if (!xi[I].is_zero() && !X[I].is_zero()) s += xi[I] * X[I];
    return s;
}

GQ ProductLieData::pairing(const Vec& X, const Vec& Y) const {
    check(X);
    check(Y);
    const int d = base_.dim();
    GQ s;
    for (int n = 0; n < n_; ++n)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Q& g = base_.pairing(i, j);
                if (!g.is_zero()) s += X[n * d + i] * Y[n * d + j] * GQ(g);
            }
    return s;
}

Vec ProductLieData::modular_form() const {
    Vec r(dim());
    for (int I = 0; I < dim(); ++I) {
        GQ t;
        for (int K = 0; K < dim(); ++K) t += GQ(C(I, K, K));
        r[I] = t;
    }
    return r;
}

namespace {

void compositions(int total, std::vector<std::pair<int, int>>& cur, std::vector<std::vector<std::pair<int, int>>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int s = 1; s <= total; ++s)
        for (int a = 0; a <= s; ++a) {
            cur.emplace_back(a, s - a);
            compositions(total - s, cur, out);
            cur.pop_back();
        }
}

}  // namespace

std::vector<KTriple> kr_index_set(int r) {
    if (r < 2) throw std::invalid_argument("K_r needs r >= 2");
    std::vector<KTriple> out;
    for (int k = 0; k <= r - 1; ++k) {
        std::vector<std::vector<std::pair<int, int>>> comps;
        std::vector<std::pair<int, int>> cur;
        compositions(r - 1 - k, cur, comps);
        for (const auto& c : comps) {
            KTriple t;
            t.k = k;
            for (auto [a, b] : c) {
                t.k1.push_back(a);
                t.k2.push_back(b);
            }
            out.push_back(std::move(t));
        }
    }
    return out;
}

Q kr_coefficient(const KTriple& t) {
    const int kappa = static_cast<int>(t.k1.size());
    int k2sum = 0;
    Q den = Q(kappa + 1) * factorial(t.k);
    for (int i = 0; i < kappa; ++i) {
        k2sum += t.k2[i];
        den *= factorial(t.k1[i]) * factorial(t.k2[i]);
    }
    den *= Q(k2sum + 1);
    Q c = den.inv();
    return kappa % 2 ? -c : c;
}

Vec bch_term(const ProductLieData& g, int r, const Vec& X, const Vec& Y) {
    if (r == 1) {
        Vec w = X;
        for (size_t i = 0; i < w.size(); ++i) w[i] += Y[i];
        return w;
    }
    return bch_term_generic<Vec>(
        r, X, Y, g.zero(), [&](const Vec& a, const Vec& b) { return g.bracket(a, b); },
        [](const Q& c, const Vec& v) {
            Vec w = v;
            for (auto& x : w) x = x * GQ(c);
            return w;
        },
        [](const Vec& a, const Vec& b) {
            Vec w = a;
            for (size_t i = 0; i < w.size(); ++i) w[i] += b[i];
            return w;
        });
}

}  // namespace lgq
