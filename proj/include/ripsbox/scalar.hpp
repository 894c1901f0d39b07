#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ripsbox {

using BigInt = boost::multiprecision::cpp_int;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical rational: den > 0, gcd(|num|, den) == 1.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }
    bool is_zero() const { return num_ == 0; }

    Rat operator+(const Rat& o) const { return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    Rat operator-(const Rat& o) const { return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
    Rat operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw ScalarError("rational division by zero");
        return Rat(num_ * o.den_, den_ * o.num_);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::strong_ordering operator<=>(const Rat& o) const {
        BigInt lhs = num_ * o.den_, rhs = o.num_ * den_;
        return lhs == rhs ? std::strong_ordering::equal
                          : (lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater);
    }

    double to_double() const { return num_.convert_to<double>() / den_.convert_to<double>(); }
    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

private:
    void normalize() {
        if (den_ == 0) throw ScalarError("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_{0};
    BigInt den_{1};
};

/// Exact element of Q(sqrt(d)): rat + coef*sqrt(d), with d a fixed square-free
/// positive integer per complex. d == 0 encodes a plain rational (coef == 0).
/// All comparisons are algebraic; no floating point on any decision path.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long n) : a_(n) {}
    Scalar(Rat r) : a_(std::move(r)) {}
    Scalar(Rat rat, Rat coef, std::int64_t d) : a_(std::move(rat)), b_(std::move(coef)), d_(d) {
        if (b_.is_zero())
            d_ = 0;
        else if (d_ <= 0)
            throw ScalarError("quadratic part requires positive square-free d");
    }

    static Scalar of(long long num, long long den) { return Scalar(Rat(num, den)); }

    const Rat& rat() const { return a_; }
    const Rat& coef() const { return b_; }
    std::int64_t disc() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    /// Exact sign of rat + coef*sqrt(d).
    int sign() const {
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        int sa = a_.sign(), sb = b_.sign();
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against b^2*d
        BigInt lhs = a_.num() * a_.num() * b_.den() * b_.den();
        BigInt rhs = b_.num() * b_.num() * d_ * a_.den() * a_.den();
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sa : sb;
    }

    Scalar operator+(const Scalar& o) const {
        std::int64_t d = merged_disc(o);
        return make(a_ + o.a_, b_ + o.b_, d);
    }
    Scalar operator-(const Scalar& o) const {
        std::int64_t d = merged_disc(o);
        return make(a_ - o.a_, b_ - o.b_, d);
    }
    Scalar operator*(const Scalar& o) const {
        std::int64_t d = merged_disc(o);
        Rat rr = a_ * o.a_ + b_ * o.b_ * Rat(BigInt(d == 0 ? 0 : d), BigInt(1));
        Rat cc = a_ * o.b_ + b_ * o.a_;
        return make(rr, cc, d);
    }
    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw ScalarError("scalar division by zero");
        std::int64_t d = merged_disc(o);
        // multiply by the conjugate; o.a^2 - o.b^2 d is a nonzero rational
        Rat nrm = o.a_ * o.a_ - o.b_ * o.b_ * Rat(BigInt(d == 0 ? 0 : d), BigInt(1));
        if (nrm.is_zero()) throw ScalarError("d is a perfect square: conjugate norm vanished");
        Scalar conj = make(o.a_, -o.b_, d);
        Scalar prod = *this * conj;
        return make(prod.a_ / nrm, prod.b_ / nrm, d);
    }
    Scalar operator-() const { return make(-a_, -b_, d_); }

    bool operator==(const Scalar& o) const { return a_ == o.a_ && b_ == o.b_ && d_ == o.d_; }
    std::strong_ordering operator<=>(const Scalar& o) const {
        int s = (*this - o).sign();
        return s == 0 ? std::strong_ordering::equal
                      : (s < 0 ? std::strong_ordering::less : std::strong_ordering::greater);
    }

    /// Approximate value; export layers only, never used in decisions.
    double to_double() const {
        double v = a_.to_double();
        if (!b_.is_zero()) v += b_.to_double() * std::sqrt(static_cast<double>(d_));
        return v;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.is_zero() ? "" : a_.str();
        if (b_.sign() > 0 && !s.empty()) s += "+";
        s += b_.str() + "*sqrt(" + std::to_string(d_) + ")";
        return s;
    }

    /// Canonical key usable for hashing and state fingerprints.
    std::string key() const {
        return a_.num().str() + "/" + a_.den().str() + "|" + b_.num().str() + "/" + b_.den().str() +
               "|" + std::to_string(d_);
    }

private:
    static Scalar make(Rat a, Rat b, std::int64_t d) {
        Scalar s;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.d_ = s.b_.is_zero() ? 0 : d;
        if (s.d_ < 0) throw ScalarError("negative discriminant");
        return s;
    }

    std::int64_t merged_disc(const Scalar& o) const {
        if (d_ == 0) return o.d_;
        if (o.d_ == 0) return d_;
        if (d_ != o.d_) throw ScalarError("mismatched quadratic fields");
        return d_;
    }

    Rat a_;
    Rat b_;
    std::int64_t d_{0};
};

enum class Ordering { Less, Equal, Greater };

/// Exact three-way comparison; both operands must live in one field.
inline Ordering compare_scalar(const Scalar& a, const Scalar& b) {
    auto c = a <=> b;
    if (c == std::strong_ordering::equal) return Ordering::Equal;
    return c == std::strong_ordering::less ? Ordering::Less : Ordering::Greater;
}

inline Scalar min(const Scalar& a, const Scalar& b) { return a <= b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a >= b ? a : b; }

}  // namespace ripsbox
