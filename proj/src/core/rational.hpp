#pragma once

// Exact rational scalar type used for every coordinate in the library.
// Backed by GMP; always kept in canonical form (positive denominator,
// coprime numerator/denominator), so equality and ordering are exact.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace lenv {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d) : v_(n, d) { v_.canonicalize(); }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    const mpq_class& raw() const { return v_; }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    // Canonical "p/q" rendering, e.g. "-3/2", "0/1".
    std::string fraction_str() const { return numerator_str() + "/" + denominator_str(); }

    // Inexact conversion for display purposes only (SVG coordinates).
    double to_double() const { return v_.get_d(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rational& o) const {
        int c = cmp(v_, o.v_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

// Parses "7", "-12.5" (exact decimal expansion) or "p/q" (q != 0).
// Throws ParseError on malformed text or a zero denominator.
Rational rational_parse(const std::string& text);

// Text form accepted back by rational_parse: integers without the "/1".
std::string rational_compact_str(const Rational& r);

Rational rational_from_u64(std::uint64_t n);

}  // namespace lenv
