// Exact scalars: rationals with a machine-word fast path, Gaussian rationals,
// and truncated power series in lambda.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace lgq {

class Q {
public:
    Q() = default;
    Q(long long v) : n_(v) {}  // NOLINT(google-explicit-constructor)
    Q(long long num, long long den);
    explicit Q(const mpq_class& v);
    Q(const Q& o);
    Q(Q&&) noexcept = default;
    Q& operator=(const Q& o);
    Q& operator=(Q&&) noexcept = default;

    static Q parse(const std::string& s);

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    int sign() const;
    bool is_integer() const;
    mpq_class to_mpq() const;
    double to_double() const;
    std::string str() const;
    mpz_class num() const;
    mpz_class den() const;

    Q operator-() const;
    Q inv() const;
    friend Q operator+(const Q& a, const Q& b);
    friend Q operator-(const Q& a, const Q& b);
    friend Q operator*(const Q& a, const Q& b);
    friend Q operator/(const Q& a, const Q& b);
    Q& operator+=(const Q& b) { return *this = *this + b; }
    Q& operator-=(const Q& b) { return *this = *this - b; }
    Q& operator*=(const Q& b) { return *this = *this * b; }
    Q& operator/=(const Q& b) { return *this = *this / b; }
    friend bool operator==(const Q& a, const Q& b);
    friend bool operator!=(const Q& a, const Q& b) { return !(a == b); }
    friend bool operator<(const Q& a, const Q& b);

private:
    void set_big(const mpq_class& v);
    long long n_ = 0;
    long long d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

// Gaussian rational re + i*im.
struct GQ {
    Q re, im;
    GQ() = default;
    GQ(long long v) : re(v) {}  // NOLINT(google-explicit-constructor)
    GQ(Q r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}
    static GQ I() { return GQ(Q(0), Q(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_one() const { return re.is_one() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    GQ conj() const { return GQ(re, -im); }
    GQ inv() const;
    std::string str() const;

    GQ operator-() const { return GQ(-re, -im); }
    friend GQ operator+(const GQ& a, const GQ& b) { return GQ(a.re + b.re, a.im + b.im); }
    friend GQ operator-(const GQ& a, const GQ& b) { return GQ(a.re - b.re, a.im - b.im); }
    friend GQ operator*(const GQ& a, const GQ& b);
    friend GQ operator/(const GQ& a, const GQ& b) { return a * b.inv(); }
    GQ& operator+=(const GQ& b);
    GQ& operator-=(const GQ& b);
    GQ& operator*=(const GQ& b) { return *this = *this * b; }
    friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }
};

Q factorial(int n);
Q binomial(int n, int k);

// Truncated power series c_0 + c_1 lambda + ... + c_K lambda^K.  A series
// carries its own precision; kExact means "polynomial in lambda, untruncated".
// Binary operations keep the smaller precision.
class Series {
public:
    static constexpr int kExact = 255;

    Series() = default;
    Series(GQ c) : c_{std::move(c)} { trim(); }  // NOLINT(google-explicit-constructor)
    Series(long long v) : Series(GQ(v)) {}  // NOLINT(google-explicit-constructor)
    Series(std::vector<GQ> c, int prec = kExact);
    static Series lambda_pow(int k, int prec = kExact);

    int prec() const { return prec_; }
    Series with_prec(int prec) const;
    // Highest stored power plus one; 0 for the zero series.
    int size() const { return static_cast<int>(c_.size()); }
    const GQ& coeff(int k) const;
    const std::vector<GQ>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    int valuation() const;  // lowest nonzero power, -1 for zero
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Series inv() const;
    // Multiply by lambda^k (k may be negative only when the low coefficients vanish).
    Series shift(int k) const;
    Series scaled(const GQ& s) const;
    std::string str() const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series& operator+=(const Series& b);
    Series& operator-=(const Series& b);
    Series& operator*=(const Series& b) { return *this = *this * b; }
    // Equality of the common precision window.
    friend bool operator==(const Series& a, const Series& b);
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

private:
    void trim();
    std::vector<GQ> c_;
    int prec_ = kExact;
};

}  // namespace lgq
