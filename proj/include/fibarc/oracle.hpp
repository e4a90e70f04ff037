#pragma once

#include <cstdint>
#include <vector>

#include "fibarc/barcode.hpp"
#include "fibarc/line.hpp"
#include "fibarc/presentation.hpp"

namespace fibarc {

/// Brute-force answers for a single line, sharing nothing with the
/// arrangement path apart from field arithmetic.

/// A one-parameter presentation along a line: labels are points of the line
/// in increasing order, the matrix is dense (rows × cols).
struct LinePresentation {
    std::uint32_t prime = 2;
    std::vector<Grade> row_labels;
    std::vector<Grade> col_labels;
    std::vector<std::vector<std::uint32_t>> entries;  // entries[row][col]
};

LinePresentation restrict_presentation(const Presentation& q, const QueryLine& line);

/// Barcode of the restriction by a dense left-to-right column reduction.
Barcode oracle_barcode(const Presentation& q, const QueryLine& line);

/// rank of M_a → M_b for a ≤ b.
std::size_t rank_invariant(const Presentation& q, const Grade& a, const Grade& b);

/// Barcode recovered from the rank invariant sampled at the pushed grades.
Barcode barcode_from_ranks(const Presentation& q, const QueryLine& line);

}  // namespace fibarc
