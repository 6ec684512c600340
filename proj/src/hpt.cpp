#include "lgq/hpt.hpp"

#include "lgq/io.hpp"

#include <stdexcept>

namespace lgq {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = Series(1);
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r = a;
    for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Series& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
        }
    return r;
}

Matrix Matrix::scaled(const Series& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * s;
    return r;
}

Matrix Matrix::truncated(int K) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x.with_prec(K);
    return r;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

int Matrix::valuation() const {
    int v = -1;
    for (const auto& x : a_) {
        int w = x.valuation();
        if (w >= 0 && (v < 0 || w < v)) v = w;
    }
    return v;
}

bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && (a - b).is_zero(); }

nlohmann::json Matrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < r_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < c_; ++j) row.push_back(series_to_json((*this)(i, j)));
        rows.push_back(row);
    }
    return {{"rows", r_}, {"cols", c_}, {"entries", rows}};
}

Matrix Matrix::from_json(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& e = j.at("entries");
    if (e.size() != static_cast<size_t>(m.r_)) throw std::invalid_argument("matrix row count mismatch");
    for (int i = 0; i < m.r_; ++i) {
        if (e[i].size() != static_cast<size_t>(m.c_)) throw std::invalid_argument("matrix column count mismatch");
        for (int k = 0; k < m.c_; ++k) m(i, k) = series_from_json(e[i][k]);
    }
    return m;
}

namespace {

nlohmann::json complex_json(const FiniteComplex& c) { return {{"degrees", c.deg}, {"d", c.d.to_json()}}; }

FiniteComplex complex_from(const nlohmann::json& j) {
    FiniteComplex c;
    c.deg = j.at("degrees").get<std::vector<int>>();
    c.d = Matrix::from_json(j.at("d"));
    if (c.d.rows() != c.dim() || c.d.cols() != c.dim()) throw std::invalid_argument("differential shape mismatch");
    return c;
}

}  // namespace

nlohmann::json Retract::to_json() const {
    return {{"C", complex_json(C)},        {"D", complex_json(D)},           {"i", i.to_json()},
            {"p", p.to_json()},            {"h", h.to_json()},               {"side_conditions", side_conditions},
            {"homotopy_sign", homotopy_sign}};
}

Retract Retract::from_json(const nlohmann::json& j) {
    Retract r;
    r.C = complex_from(j.at("C"));
    r.D = complex_from(j.at("D"));
    r.i = Matrix::from_json(j.at("i"));
    r.p = Matrix::from_json(j.at("p"));
    r.h = Matrix::from_json(j.at("h"));
    r.side_conditions = j.value("side_conditions", false);
    r.homotopy_sign = j.value("homotopy_sign", 1);
    if (r.homotopy_sign != 1 && r.homotopy_sign != -1) throw std::invalid_argument("homotopy_sign must be +1 or -1");
    return r;
}

bool has_degree(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols, int shift) {
    for (int a = 0; a < m.rows(); ++a)
        for (int b = 0; b < m.cols(); ++b)
            if (!m(a, b).is_zero() && rows[a] - cols[b] != shift) return false;
    return true;
}

Report validate_retract(const Retract& r, int K) {
    Report rep;
    rep.check = "validate_retract";
    auto fail = [&](const std::string& what, const Matrix* m) {
        if (!rep.pass) return;
        rep.pass = false;
        rep.witness = {{"violated", what}};
        if (m) {
            for (int a = 0; a < m->rows(); ++a)
                for (int b = 0; b < m->cols(); ++b)
                    if (!(*m)(a, b).is_zero()) {
                        rep.witness["row"] = a;
                        rep.witness["col"] = b;
                        rep.witness["value"] = (*m)(a, b).str();
                        return;
                    }
        }
    };
    const int nc = r.C.dim(), nd = r.D.dim();
    if (r.i.rows() != nd || r.i.cols() != nc || r.p.rows() != nc || r.p.cols() != nd || r.h.rows() != nd ||
        r.h.cols() != nd) {
        fail("shapes", nullptr);
        return rep;
    }
    if (!has_degree(r.C.d, r.C.deg, r.C.deg, 1)) fail("degree of delta", nullptr);
    if (!has_degree(r.D.d, r.D.deg, r.D.deg, 1)) fail("degree of d", nullptr);
    if (!has_degree(r.i, r.D.deg, r.C.deg, 0)) fail("degree of i", nullptr);
    if (!has_degree(r.p, r.C.deg, r.D.deg, 0)) fail("degree of p", nullptr);
    if (!has_degree(r.h, r.D.deg, r.D.deg, -1)) fail("degree of h", nullptr);
    auto check = [&](const std::string& what, const Matrix& m) {
        Matrix t = m.truncated(K);
        if (!t.is_zero()) fail(what, &t);
    };
    check("delta^2 = 0", r.C.d * r.C.d);
    check("d^2 = 0", r.D.d * r.D.d);
    check("d i = i delta", r.D.d * r.i - r.i * r.C.d);
    check("p d = delta p", r.p * r.D.d - r.C.d * r.p);
    check("p i = id", r.p * r.i - Matrix::identity(nc));
    Matrix hd = r.h * r.D.d + r.D.d * r.h;
    check("i p - id = sign (h d + d h)", r.i * r.p - Matrix::identity(nd) - (r.homotopy_sign > 0 ? hd : -hd));
    if (r.side_conditions) {
        check("h h = 0", r.h * r.h);
        check("h i = 0", r.h * r.i);
        check("p h = 0", r.p * r.h);
    }
    return rep;
}

Matrix neumann_inverse(const Matrix& A, int K) {
    const int n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("neumann_inverse needs a square matrix");
    Matrix Nm = A - Matrix::identity(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!Nm(a, b).coeff(0).is_zero()) throw std::invalid_argument("lambda^0 part of A is not the identity");
    Matrix term = Matrix::identity(n), acc = Matrix::identity(n);
    Matrix negN = (-Nm).truncated(K);
    for (int k = 1; k <= K; ++k) {
        term = (term * negN).truncated(K);
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc.truncated(K);
}

Retract perturb(const Retract& r, const Matrix& t, int K) {
    const int nd = r.D.dim();
    if (t.rows() != nd || t.cols() != nd) throw std::invalid_argument("perturbation has wrong shape");
    if (!has_degree(t, r.D.deg, r.D.deg, 1)) throw std::invalid_argument("perturbation must have degree +1");
    if (!(r.p * r.h).truncated(K).is_zero()) throw std::invalid_argument("side condition p h = 0 fails");
    Matrix Dd = r.D.d + t;
    if (!(Dd * Dd).truncated(K).is_zero()) throw std::invalid_argument("perturbed differential does not square to zero");
    Matrix th = t * r.h + r.h * t;
    int v = th.truncated(K).valuation();
    if (v == 0) throw std::invalid_argument("t h + h t does not raise the lambda filtration");
    Matrix tau = (r.p * t * r.i).truncated(K);
    if (!(tau * r.p - r.p * t).truncated(K).is_zero()) throw std::invalid_argument("tau p = p t fails");
    if (t.truncated(K).is_zero()) return r;
    const Matrix hs = r.homotopy_sign < 0 ? r.h : -r.h;
    Matrix A = Matrix::identity(nd) + t * hs + hs * t;
    Matrix H = (hs * neumann_inverse(A, K)).truncated(K);
    Retract out;
    out.C = {r.C.deg, (r.C.d + tau).truncated(K)};
    out.D = {r.D.deg, Dd.truncated(K)};
    out.p = r.p;
    out.h = r.homotopy_sign < 0 ? H : -H;
    out.i = (r.i - H * (t * r.i - r.i * tau)).truncated(K);
    out.side_conditions = r.side_conditions;
    out.homotopy_sign = r.homotopy_sign;
    return out;
}

namespace {

// Random invertible integer matrix preserving degrees (block diagonal by degree),
// built as a product of elementary operations within each degree.
std::pair<Matrix, Matrix> random_unimodular(const std::vector<int>& deg, const IntGenerator& gen) {
    const int n = static_cast<int>(deg.size());
    Matrix S = Matrix::identity(n), Si = Matrix::identity(n);
    for (int step = 0; step < 3 * n; ++step) {
        int a = static_cast<int>(gen(0, n - 1)), b = static_cast<int>(gen(0, n - 1));
        if (a == b || deg[a] != deg[b]) continue;
        long long c = gen(-2, 2);
        if (c == 0) continue;
        // row a += c row b ; inverse: column-wise inverse op
        Matrix E = Matrix::identity(n), Ei = Matrix::identity(n);
        E(a, b) = Series(GQ(Q(c)));
        Ei(a, b) = Series(GQ(Q(-c)));
        S = E * S;
        Si = Si * Ei;
    }
    return {S, Si};
}

Matrix random_degree0(const std::vector<int>& rows, const std::vector<int>& cols, const IntGenerator& gen, int K) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = 0; b < cols.size(); ++b) {
            if (rows[a] != cols[b]) continue;
            std::vector<GQ> c(static_cast<size_t>(K) + 1);
            bool any = false;
            for (int k = 1; k <= K; ++k) {
                c[k] = GQ(Q(gen(-2, 2)));
                any = any || !c[k].is_zero();
            }
            if (any) m(static_cast<int>(a), static_cast<int>(b)) = Series(c);
        }
    return m;
}

}  // namespace

Retract random_retract(const IntGenerator& gen, int max_degree_dim) {
    // Degrees 0..3; per degree a cohomology part H and an acyclic pair B' -> B.
    std::vector<int> cdeg, ddeg;
    struct Slot {
        int kind;  // 0 cohomology, 1 source of a pair, 2 target of a pair
        int partner;
        int cidx;
    };
    std::vector<Slot> slots;
    for (int k = 0; k <= 3; ++k) {
        int nh = static_cast<int>(gen(0, max_degree_dim));
        for (int a = 0; a < nh; ++a) {
            slots.push_back({0, -1, static_cast<int>(cdeg.size())});
            ddeg.push_back(k);
            cdeg.push_back(k);
        }
        if (k < 3) {
            int np = static_cast<int>(gen(0, max_degree_dim));
            for (int a = 0; a < np; ++a) {
                int src = static_cast<int>(ddeg.size());
                slots.push_back({1, src + 1, -1});
                ddeg.push_back(k);
                slots.push_back({2, src, -1});
                ddeg.push_back(k + 1);
            }
        }
    }
    // keep degrees ordered for readability
    const int nd = static_cast<int>(ddeg.size()), nc = static_cast<int>(cdeg.size());
    Matrix d(nd, nd), i(nd, nc), p(nc, nd), h(nd, nd);
    for (int s = 0; s < nd; ++s) {
        const Slot& sl = slots[s];
        if (sl.kind == 0) {
            i(s, sl.cidx) = Series(1);
            p(sl.cidx, s) = Series(1);
        } else if (sl.kind == 1) {
            d(sl.partner, s) = Series(1);
            h(s, sl.partner) = Series(-1);
        }
    }
    auto [S, Si] = random_unimodular(ddeg, gen);
    Retract r;
    r.C = {cdeg, Matrix(nc, nc)};
    r.D = {ddeg, S * d * Si};
    r.i = S * i;
    r.p = p * Si;
    r.h = S * h * Si;
    r.side_conditions = true;
    return r;
}

Matrix random_perturbation(const Retract& r, const IntGenerator& gen, int K) {
    const int nd = r.D.dim();
    Matrix P = r.i * r.p;
    Matrix Q1 = Matrix::identity(nd) - P;
    Matrix Y = random_degree0(r.C.deg, r.C.deg, gen, K);
    Matrix W = random_degree0(r.D.deg, r.D.deg, gen, K);
    Matrix Z = random_degree0(r.D.deg, r.C.deg, gen, K);
    Matrix X = r.i * Y * r.p + Q1 * W * Q1 + Q1 * Z * r.p;
    Matrix phi = Matrix::identity(nd) + X;
    Matrix phinv = neumann_inverse(phi, K);
    return (phinv * r.D.d * phi - r.D.d).truncated(K);
}

}  // namespace lgq
