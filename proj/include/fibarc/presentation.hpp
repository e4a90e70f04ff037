#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fibarc/field.hpp"
#include "fibarc/grade.hpp"
#include "fibarc/sparse.hpp"

namespace fibarc {

/// Labeled sparse matrix over GF(p). Rows are generators (grades in
/// `row_grades`), columns are relations (grades in `col_grades`); each column
/// lists the generators it involves.
struct Presentation {
    std::uint32_t prime = 2;
    std::vector<Grade> row_grades;
    std::vector<Grade> col_grades;
    std::vector<SparseVec> columns;

    std::size_t num_rows() const { return row_grades.size(); }
    std::size_t num_cols() const { return col_grades.size(); }
    /// Total rows plus columns.
    std::size_t size() const { return row_grades.size() + col_grades.size(); }

    PrimeField field() const { return PrimeField(prime); }
    SparseMatrix matrix() const;

    friend bool operator==(const Presentation&, const Presentation&) = default;
};

struct Violation {
    enum class Kind { Structure, Homogeneity, Field };
    Kind kind;
    int row;  // -1 when not row specific
    int col;  // -1 when not column specific
    std::string message;
};

/// Empty iff every presentation invariant holds.
std::vector<Violation> validate_presentation(const Presentation& p);

/// Hints that the input is not minimal: zero relations, and relations with a
/// nonzero entry at a generator of the same grade.
std::vector<std::string> minimality_warnings(const Presentation& p);

/// Distinct grades among rows and columns, colexicographically sorted.
std::vector<Grade> support_grades(const Presentation& p);

/// Number of distinct x and y coordinates of a grade set; kappa = kx * ky.
struct GridSize {
    std::size_t kx = 0;
    std::size_t ky = 0;
    std::size_t kappa() const { return kx * ky; }
};
GridSize grid_size(const std::vector<Grade>& points);

}  // namespace fibarc
