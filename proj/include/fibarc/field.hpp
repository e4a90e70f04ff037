#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "fibarc/error.hpp"

namespace fibarc {

struct FieldElem {
    std::uint32_t value = 0;

    bool is_zero() const { return value == 0; }
    friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

bool is_prime(std::uint32_t n);

/// Arithmetic in GF(p) for a prime p < 2^16, so products fit in 32 bits.
class PrimeField {
  public:
    static constexpr std::uint32_t kMaxPrime = 65521;

    explicit PrimeField(std::uint32_t p = 2) : p_(p) {
        if (p > kMaxPrime || !is_prime(p)) throw PreconditionError("field modulus must be a prime below 2^16");
    }

    std::uint32_t prime() const { return p_; }

    FieldElem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return {static_cast<std::uint32_t>(r)};
    }

    FieldElem add(FieldElem a, FieldElem b) const {
        std::uint32_t s = a.value + b.value;
        return {s >= p_ ? s - p_ : s};
    }
    FieldElem neg(FieldElem a) const { return {a.value == 0 ? 0 : p_ - a.value}; }
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem mul(FieldElem a, FieldElem b) const { return {(a.value * b.value) % p_}; }

    FieldElem inv(FieldElem a) const {
        if (a.value == 0) throw PreconditionError("inverse of zero");
        // extended Euclid on (a, p)
        long long t = 0, new_t = 1;
        long long r = p_, new_r = a.value;
        while (new_r != 0) {
            long long q = r / new_r;
            long long tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        return from_int(t);
    }
    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    std::uint32_t p_;
};

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace fibarc
