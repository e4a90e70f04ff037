#pragma once

#include <string>
#include <vector>

#include "fibarc/grade.hpp"

namespace fibarc {

/// Half-open interval [birth, death) on a query line, endpoints as points of
/// the plane.
struct Interval {
    Grade birth;
    ExtGrade death;

    friend bool operator==(const Interval&, const Interval&) = default;
};

bool interval_less(const Interval& a, const Interval& b);

/// Multiset of intervals; canonical when sorted by `interval_less`.
using Barcode = std::vector<Interval>;

void canonicalize(Barcode& b);

/// `[(x,y), (x,y))` or `[(x,y), inf)`.
std::string to_string(const Interval& i);
std::string to_string(const Barcode& b);

}  // namespace fibarc
