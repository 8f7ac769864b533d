#include "core/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "core/errors.hpp"

namespace lenv {

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::invalid_argument("rational division by zero");
    return Rational(mpq_class(v_ / o.v_));
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// [sign] digits, returned without the sign.
bool split_signed_int(const std::string& s, bool& neg, std::string& digits) {
    std::size_t i = 0;
    neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    digits = s.substr(i);
    return all_digits(digits);
}

}  // namespace

Rational rational_parse(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");

    if (auto slash = text.find('/'); slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        bool nneg = false, dneg = false;
        std::string nd, dd;
        if (!split_signed_int(num, nneg, nd) || !split_signed_int(den, dneg, dd))
            throw ParseError("malformed fraction '" + text + "'");
        mpz_class n(nd, 10), d(dd, 10);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        if (nneg) n = -n;
        if (dneg) d = -d;
        mpq_class q(n, d);
        q.canonicalize();
        return Rational(q);
    }

    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        bool neg = false;
        std::string wd;
        if (!split_signed_int(whole, neg, wd) || wd.empty() || !all_digits(frac))
            throw ParseError("malformed decimal '" + text + "'");
        mpz_class scaled(wd + frac, 10);
        mpz_class den(1);
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        if (neg) scaled = -scaled;
        mpq_class q(scaled, den);
        q.canonicalize();
        return Rational(q);
    }

    bool neg = false;
    std::string digits;
    if (!split_signed_int(text, neg, digits))
        throw ParseError("malformed integer '" + text + "'");
    mpz_class n(digits, 10);
    if (neg) n = -n;
    return Rational(mpq_class(n));
}

std::string rational_compact_str(const Rational& r) {
    if (r.denominator_str() == "1") return r.numerator_str();
    return r.fraction_str();
}

Rational rational_from_u64(std::uint64_t n) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
    return Rational(mpq_class(z));
}

}  // namespace lenv
