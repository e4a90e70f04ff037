#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fibarc/augmented.hpp"
#include "fibarc/barcode.hpp"
#include "fibarc/line.hpp"

namespace fibarc {

enum class LineKind { InFace, OnEdge, OnVertex, Horizontal, Vertical, ThroughAnchor, Random };
const char* to_string(LineKind k);

struct SampledLine {
    QueryLine line;
    LineKind kind;
};

/// Random rational with numerator in [-span·den, span·den] and denominator in [1, 6].
Rational random_rational(std::mt19937_64& rng, long span);

/// Strictly interior point of a face, as a random positive combination of
/// its clipped corners.
Grade random_point_in_face(const Arrangement& arr, int face, std::mt19937_64& rng);

/// Query lines covering every kind, cycling through the kinds in order.
std::vector<SampledLine> sample_lines(const AugmentedArrangement& aug, std::mt19937_64& rng, std::size_t count);

struct Mismatch {
    SampledLine sample;
    Barcode fast;
    Barcode oracle;
};

/// First line (in order) on which the arrangement answer and the oracle differ.
std::optional<Mismatch> first_mismatch(const AugmentedArrangement& aug, const std::vector<SampledLine>& lines);

}  // namespace fibarc
