#include "fibarc/rational.hpp"

#include <cctype>

#include "fibarc/error.hpp"

namespace fibarc {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw PreconditionError("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) throw PreconditionError("division by zero");
    value_ /= o.value_;
    return *this;
}

bool Rational::try_parse(std::string_view text, Rational& out) {
    if (text.empty()) return false;
    bool negative = false;
    std::string_view body = text;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    mpq_class value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return false;
        mpz_class d(std::string(den), 10);
        if (d == 0) return false;
        value = mpq_class(mpz_class(std::string(num), 10), d);
    } else {
        auto dot = body.find('.');
        std::string_view int_part = body.substr(0, dot);
        std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) return false;
        if (!int_part.empty() && !all_digits(int_part)) return false;
        if (dot != std::string_view::npos && !frac_part.empty() && !all_digits(frac_part)) return false;
        if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) return false;
        std::string digits = std::string(int_part) + std::string(frac_part);
        if (digits.empty()) return false;
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
        value = mpq_class(num, den);
    }
    value.canonicalize();
    if (negative) value = -value;
    out = Rational(value);
    return true;
}

Rational Rational::parse(std::string_view text) {
    Rational r;
    if (!try_parse(text, r)) throw PreconditionError("not an exact number: '" + std::string(text) + "'");
    return r;
}

std::string Rational::to_string() const {
    const mpz_class& den = value_.get_den();
    if (den == 1) return value_.get_num().get_str();

    mpz_class rest = den;
    unsigned twos = 0;
    unsigned fives = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
        rest /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1) return value_.get_num().get_str() + "/" + den.get_str();

    const unsigned places = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = abs(value_.get_num()) * (scale / den);
    std::string digits = scaled.get_str();
    if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    return (sign() < 0 ? "-" : "") + digits;
}

std::size_t Rational::hash() const {
    std::size_t h = std::hash<std::string>{}(value_.get_num().get_str(16));
    h ^= std::hash<std::string>{}(value_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace fibarc
