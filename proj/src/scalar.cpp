#include "lgq/scalar.hpp"

#include <numeric>
#include <stdexcept>

namespace lgq {

namespace {

constexpr long long kMin = INT64_MIN;

bool fits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) && z != static_cast<long>(kMin); }

long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return std::gcd(a, b);
}

}  // namespace

Q::Q(long long num, long long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (num == kMin || den == kMin) {
        set_big(mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den))));
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = gcd_ll(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    n_ = num;
    d_ = den;
}

Q::Q(const mpq_class& v) { set_big(v); }

Q::Q(const Q& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Q& Q::operator=(const Q& o) {
    if (this == &o) return *this;
    n_ = o.n_;
    d_ = o.d_;
    if (o.big_)
        big_ = std::make_unique<mpq_class>(*o.big_);
    else
        big_.reset();
    return *this;
}

void Q::set_big(const mpq_class& v0) {
    mpq_class v(v0);
    v.canonicalize();
    if (fits(v.get_num()) && fits(v.get_den())) {
        n_ = v.get_num().get_si();
        d_ = v.get_den().get_si();
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(v);
    }
}

Q Q::parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    return Q(v);
}

int Q::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

bool Q::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

mpq_class Q::to_mpq() const {
    if (big_) return *big_;
    mpq_class r;
    mpz_set_si(mpq_numref(r.get_mpq_t()), n_);
    mpz_set_si(mpq_denref(r.get_mpq_t()), d_);
    return r;
}

double Q::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Q::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

mpz_class Q::num() const { return to_mpq().get_num(); }
mpz_class Q::den() const { return to_mpq().get_den(); }

Q Q::operator-() const {
    if (big_ || n_ == kMin) return Q(mpq_class(-to_mpq()));
    Q r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
}

Q Q::inv() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Q(mpq_class(1 / *big_));
    return Q(d_, n_);
}

Q operator+(const Q& a, const Q& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (!a.big_ && !b.big_) {
        long long g = std::gcd(a.d_, b.d_);
        long long da = a.d_ / g, db = b.d_ / g;
        long long x, y, num, den;
        if (!__builtin_mul_overflow(a.n_, db, &x) && !__builtin_mul_overflow(b.n_, da, &y) &&
            !__builtin_add_overflow(x, y, &num) && !__builtin_mul_overflow(a.d_, db, &den) && num != kMin) {
            if (num == 0) return Q();
            long long h = gcd_ll(num, g);
            Q r;
            r.n_ = num / h;
            r.d_ = den / h;
            return r;
        }
    }
    return Q(mpq_class(a.to_mpq() + b.to_mpq()));
}

Q operator-(const Q& a, const Q& b) { return a + (-b); }

Q operator*(const Q& a, const Q& b) {
    if (a.is_zero() || b.is_zero()) return Q();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (!a.big_ && !b.big_) {
        long long g1 = gcd_ll(a.n_, b.d_), g2 = gcd_ll(b.n_, a.d_);
        long long num, den;
        if (!__builtin_mul_overflow(a.n_ / g1, b.n_ / g2, &num) &&
            !__builtin_mul_overflow(a.d_ / g2, b.d_ / g1, &den) && num != kMin) {
            Q r;
            r.n_ = num;
            r.d_ = den;
            return r;
        }
    }
    return Q(mpq_class(a.to_mpq() * b.to_mpq()));
}

Q operator/(const Q& a, const Q& b) { return a * b.inv(); }

bool operator==(const Q& a, const Q& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a big value never fits in words
}

bool operator<(const Q& a, const Q& b) { return (a - b).sign() < 0; }

GQ GQ::inv() const {
    if (im.is_zero()) return GQ(re.inv());
    Q n = re * re + im * im;
    return GQ(re / n, -im / n);
}

std::string GQ::str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return im.str() + "i";
    std::string s = re.str();
    if (im.sign() > 0) s += "+";
    return s + im.str() + "i";
}

GQ operator*(const GQ& a, const GQ& b) {
    if (a.im.is_zero()) {
        if (b.im.is_zero()) return GQ(a.re * b.re);
        return GQ(a.re * b.re, a.re * b.im);
    }
    if (b.im.is_zero()) return GQ(a.re * b.re, a.im * b.re);
    return GQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

GQ& GQ::operator+=(const GQ& b) {
    if (!b.re.is_zero()) re += b.re;
    if (!b.im.is_zero()) im += b.im;
    return *this;
}

GQ& GQ::operator-=(const GQ& b) {
    if (!b.re.is_zero()) re -= b.re;
    if (!b.im.is_zero()) im -= b.im;
    return *this;
}

Q factorial(int n) {
    Q r(1);
    for (int k = 2; k <= n; ++k) r *= Q(k);
    return r;
}

Q binomial(int n, int k) {
    if (k < 0 || k > n) return Q(0);
    Q r(1);
    for (int j = 1; j <= k; ++j) r = r * Q(n - k + j) / Q(j);
    return r;
}

Series::Series(std::vector<GQ> c, int prec) : c_(std::move(c)), prec_(prec) {
    if (static_cast<int>(c_.size()) > prec_ + 1) c_.resize(prec_ + 1);
    trim();
}

Series Series::lambda_pow(int k, int prec) {
    if (k > prec) return Series({}, prec);
    std::vector<GQ> c(k + 1);
    c[k] = GQ(1);
    return Series(std::move(c), prec);
}

Series Series::with_prec(int prec) const {
    Series r = *this;
    r.prec_ = std::min(prec_, prec);
    if (static_cast<int>(r.c_.size()) > r.prec_ + 1) r.c_.resize(r.prec_ + 1);
    r.trim();
    return r;
}

const GQ& Series::coeff(int k) const {
    static const GQ zero;
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[k];
}

int Series::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return static_cast<int>(k);
    return -1;
}

void Series::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Series Series::inv() const {
    if (coeff(0).is_zero()) throw std::domain_error("series with zero constant term is not invertible");
    int K = prec_ == kExact ? (degree() == 0 ? 0 : -1) : prec_;
    if (K < 0) throw std::domain_error("inverse of an exact lambda-polynomial needs a precision");
    GQ c0inv = c_[0].inv();
    std::vector<GQ> r(K + 1);
    r[0] = c0inv;
    for (int k = 1; k <= K; ++k) {
        GQ s;
        for (int j = 1; j <= k; ++j) s += coeff(j) * r[k - j];
        r[k] = -(s * c0inv);
    }
    return Series(std::move(r), prec_);
}

Series Series::shift(int k) const {
    if (is_zero()) return *this;
    if (k >= 0) {
        std::vector<GQ> c(k, GQ());
        c.insert(c.end(), c_.begin(), c_.end());
        int p = prec_ == kExact ? kExact : std::min(kExact - 1, prec_ + k);
        return Series(std::move(c), p);
    }
    int s = -k;
    for (int j = 0; j < s && j < size(); ++j)
        if (!c_[j].is_zero()) throw std::domain_error("negative shift of a series with low-order terms");
    std::vector<GQ> c(c_.begin() + std::min(s, size()), c_.end());
    int p = prec_ == kExact ? kExact : prec_ - s;
    if (p < 0) throw std::domain_error("negative shift exhausts precision");
    return Series(std::move(c), p);
}

Series Series::scaled(const GQ& s) const {
    if (s.is_zero()) return Series({}, prec_);
    if (s.is_one()) return *this;
    Series r = *this;
    for (auto& x : r.c_) x = x * s;
    r.trim();
    return r;
}

std::string Series::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[k].str() + ")";
        if (k > 0) s += "*l^" + std::to_string(k);
    }
    if (prec_ != kExact) s += " + O(l^" + std::to_string(prec_ + 1) + ")";
    return s;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Series& Series::operator+=(const Series& b) {
    prec_ = std::min(prec_, b.prec_);
    size_t n = std::min<size_t>(b.c_.size(), prec_ + 1);
    if (c_.size() < n) c_.resize(n);
    for (size_t k = 0; k < n; ++k) c_[k] += b.c_[k];
    if (static_cast<int>(c_.size()) > prec_ + 1) c_.resize(prec_ + 1);
    trim();
    return *this;
}

Series& Series::operator-=(const Series& b) {
    prec_ = std::min(prec_, b.prec_);
    size_t n = std::min<size_t>(b.c_.size(), prec_ + 1);
    if (c_.size() < n) c_.resize(n);
    for (size_t k = 0; k < n; ++k) c_[k] -= b.c_[k];
    if (static_cast<int>(c_.size()) > prec_ + 1) c_.resize(prec_ + 1);
    trim();
    return *this;
}

Series operator+(const Series& a, const Series& b) {
    Series r = a;
    r += b;
    return r;
}

Series operator-(const Series& a, const Series& b) {
    Series r = a;
    r -= b;
    return r;
}

Series operator*(const Series& a, const Series& b) {
    int prec = std::min(a.prec_, b.prec_);
    if (a.c_.empty() || b.c_.empty()) return Series({}, prec);
    if (a.c_.size() == 1 && b.c_.size() == 1) {
        Series r;
        r.prec_ = prec;
        r.c_.push_back(a.c_[0] * b.c_[0]);
        r.trim();
        return r;
    }
    size_t n = std::min<size_t>(a.c_.size() + b.c_.size() - 1, prec + 1);
    std::vector<GQ> c(n);
    for (size_t i = 0; i < a.c_.size() && i < n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size() && i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Series(std::move(c), prec);
}

bool operator==(const Series& a, const Series& b) {
    int prec = std::min(a.prec_, b.prec_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t k = 0; k < n && static_cast<int>(k) <= prec; ++k)
        if (a.coeff(static_cast<int>(k)) != b.coeff(static_cast<int>(k))) return false;
    return true;
}

}  // namespace lgq
