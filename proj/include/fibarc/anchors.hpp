#pragma once

#include <span>
#include <vector>

#include "fibarc/grade.hpp"

namespace fibarc {

struct Anchor {
    Grade point;
    /// Join of two strictly incomparable points of S: one directly below and
    /// one directly to the left.
    bool generic = false;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// All joins s ∨ t of weakly incomparable s, t ∈ S, sorted lexicographically.
/// Scans the grid spanned by the coordinates of S once.
std::vector<Anchor> compute_anchors(std::span<const Grade> points);

}  // namespace fibarc
