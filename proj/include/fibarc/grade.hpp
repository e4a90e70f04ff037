#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fibarc/rational.hpp"

namespace fibarc {

/// A point of the plane carrying a bigraded position.
struct Grade {
    Rational x;
    Rational y;

    friend bool operator==(const Grade&, const Grade&) = default;

    /// Componentwise partial order.
    bool leq(const Grade& o) const { return x <= o.x && y <= o.y; }
    bool less(const Grade& o) const { return leq(o) && !(*this == o); }
    bool comparable(const Grade& o) const { return leq(o) || o.leq(*this); }

    std::string to_string() const { return "(" + x.to_string() + "," + y.to_string() + ")"; }
};

std::ostream& operator<<(std::ostream& os, const Grade& g);

/// Grade or infinity; `std::nullopt` is the point at infinity, above every grade.
using ExtGrade = std::optional<Grade>;

inline constexpr std::nullopt_t kInfinity = std::nullopt;

std::string to_string(const ExtGrade& g);

/// Strict lexicographic (x, then y) total order; used for canonical sorting.
struct LexLess {
    bool operator()(const Grade& a, const Grade& b) const {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

/// y-major total order: s before t iff s.y < t.y, or s.y = t.y and s.x < t.x.
struct ColexLess {
    bool operator()(const Grade& a, const Grade& b) const {
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

/// Lexicographic order on extended grades with infinity last.
bool ext_lex_less(const ExtGrade& a, const ExtGrade& b);

/// Least upper bound of a nonempty set of grades.
Grade join(std::span<const Grade> points);
inline Grade join(const Grade& a, const Grade& b) { return {max(a.x, b.x), max(a.y, b.y)}; }

/// Distinct grades that are incomparable or share a coordinate.
bool weakly_incomparable(const Grade& a, const Grade& b);

/// Stable permutation sorting `grades` colexicographically: entry k of the
/// result is the index of the k-th smallest grade.
std::vector<std::size_t> colex_sort(std::span<const Grade> grades);

}  // namespace fibarc

template <>
struct std::hash<fibarc::Grade> {
    std::size_t operator()(const fibarc::Grade& g) const {
        return g.x.hash() * 1000003u ^ g.y.hash();
    }
};
