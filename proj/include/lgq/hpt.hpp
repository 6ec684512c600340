// Homological perturbation over finite graded complexes with entries in the
// truncated lambda-series ring.
#pragma once

#include "lgq/scalar.hpp"
#include "lgq/sympgeo.hpp"

#include <functional>

namespace lgq {

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static Matrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Series& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const Series& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;
    Matrix scaled(const Series& s) const;
    Matrix truncated(int K) const;
    bool is_zero() const;
    // Smallest lambda-valuation over nonzero entries, -1 if zero.
    int valuation() const;
    friend bool operator==(const Matrix& a, const Matrix& b);

    nlohmann::json to_json() const;
    static Matrix from_json(const nlohmann::json& j);

private:
    int r_ = 0, c_ = 0;
    std::vector<Series> a_;
};

// Total space of a bounded cochain complex: degree label per basis vector.
struct FiniteComplex {
    std::vector<int> deg;
    Matrix d;
    int dim() const { return static_cast<int>(deg.size()); }
};

// ((C, delta) <-i,p-> (D, d), h) with i p - id = sign * (h d + d h).
// sign = +1 is the default; sign = -1 is the convention id - i p = h d + d h
// used by Koszul contractions.
struct Retract {
    FiniteComplex C, D;
    Matrix i, p, h;
    bool side_conditions = false;  // whether h h = 0, h i = 0, p h = 0 are claimed
    int homotopy_sign = 1;

    nlohmann::json to_json() const;
    static Retract from_json(const nlohmann::json& j);
};

// Checks degrees, d^2 = 0, chain maps, p i = id, the homotopy identity and,
// when flagged, the side conditions; everything modulo lambda^{K+1}.
Report validate_retract(const Retract& r, int K);

// Degree check: entry (a, b) may be nonzero only when deg_row[a] - deg_col[b] == shift.
bool has_degree(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols, int shift);

// A = id + (strictly lambda-raising); returns A^{-1} mod lambda^{K+1}.
Matrix neumann_inverse(const Matrix& A, int K);

// Perturbation Lemma: requires p h = 0, (d+t)^2 = 0, t h + h t raising and
// tau p = p t with tau = p t i.  Throws std::invalid_argument otherwise.
// For homotopy_sign = -1: H = h (id + t h + h t)^{-1}, i' = i - H (t i - i tau);
// for +1 the same formulas are applied to -h.
Retract perturb(const Retract& r, const Matrix& t, int K);

// Random special retract of a random complex.  gen(lo, hi) returns integers.
using IntGenerator = std::function<long long(long long, long long)>;
Retract random_retract(const IntGenerator& gen, int max_degree_dim = 2);
// Perturbation t = phi^{-1} d phi - d with phi = 1 + lambda X, X block lower
// triangular for D = im i (+) ker p, so tau p = p t holds.
Matrix random_perturbation(const Retract& r, const IntGenerator& gen, int K);

}  // namespace lgq
