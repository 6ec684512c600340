// Finite-dimensional Lie algebras given by structure constants, the product
// algebra g^N, adjoint/coadjoint actions and the BCH terms H_r.
#pragma once

#include "lgq/scalar.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lgq {

using Vec = std::vector<GQ>;

class LieData {
public:
    LieData() = default;
    LieData(int dim, std::vector<Q> structure, std::vector<Q> pairing);

    // Basis E_k = -(i/2) sigma_k, [E_i,E_j] = eps_ijk E_k, <X,Y> = -2 tr(XY).
    static LieData su2();

    int dim() const { return dim_; }
    // C_{ij}^k, i.e. [E_i,E_j] = sum_k C(i,j,k) E_k.
    const Q& C(int i, int j, int k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    const Q& pairing(int i, int j) const { return g_[i * dim_ + j]; }

    // Empty string when the data is a valid Lie algebra with invariant
    // nondegenerate pairing, otherwise the name of the first violated identity.
    std::string validate() const;

private:
    int dim_ = 0;
    std::vector<Q> c_;
    std::vector<Q> g_;
};

// g^N with basis E_I, I = n*d + i.
class ProductLieData {
public:
    ProductLieData(LieData base, int copies);
    const LieData& base() const { return base_; }
    int copies() const { return n_; }
    int dim() const { return n_ * base_.dim(); }
    int copy_of(int I) const { return I / base_.dim(); }
    int local(int I) const { return I % base_.dim(); }
    Q C(int I, int J, int K) const;

    Vec zero() const { return Vec(dim()); }
    Vec basis(int I) const;
    Vec bracket(const Vec& X, const Vec& Y) const;
    Vec ad(const Vec& X, const Vec& Y) const { return bracket(X, Y); }
    // <ad*(X) xi, Y> = -<xi, [X,Y]>
    Vec ad_star(const Vec& X, const Vec& xi) const;
    // dual pairing <xi, X> = sum xi_I X^I
    GQ dual(const Vec& xi, const Vec& X) const;
    GQ pairing(const Vec& X, const Vec& Y) const;
    // Modular form Delta(E_I) = tr ad(E_I).
    Vec modular_form() const;

private:
    void check(const Vec& v) const;
    LieData base_;
    int n_;
};

// Index triples (k1, k2, k) of the set K_r: vectors k1, k2 of common length
// kappa with k1[i] + k2[i] > 0 and |k1| + |k2| + k = r - 1.
struct KTriple {
    std::vector<int> k1, k2;
    int k = 0;
};
std::vector<KTriple> kr_index_set(int r);

// Rational coefficient of the K_r term, including the sign (-1)^kappa.
Q kr_coefficient(const KTriple& t);

// H_r(X, Y) for any vector type with a bracket, a scalar multiple and a sum.
template <class V, class Bracket, class Scale, class Add>
V bch_term_generic(int r, const V& X, const V& Y, V zero, Bracket br, Scale scale, Add add) {
    V acc = zero;
    for (const auto& t : kr_index_set(r)) {
        V w = Y;
        for (int j = 0; j < t.k; ++j) w = br(X, w);
        for (int i = static_cast<int>(t.k1.size()) - 1; i >= 0; --i) {
            for (int j = 0; j < t.k2[i]; ++j) w = br(Y, w);
            for (int j = 0; j < t.k1[i]; ++j) w = br(X, w);
        }
        acc = add(acc, scale(kr_coefficient(t), w));
    }
    return acc;
}

Vec bch_term(const ProductLieData& g, int r, const Vec& X, const Vec& Y);

}  // namespace lgq
