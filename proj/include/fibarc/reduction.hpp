#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fibarc/error.hpp"
#include "fibarc/field.hpp"
#include "fibarc/sparse.hpp"

namespace fibarc {

/// A (row, column) pivot pair of a reduced matrix, or an unpaired row
/// (`col == -1`). Indices are logical positions.
struct PersistencePair {
    int row;
    int col;

    friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// Sparse RU-decomposition Q = R·U over GF(p).
///
/// R is column-sparse and U is row-sparse; R's columns and U's rows are
/// indexed by logical column position. Row permutations of R and column
/// permutations of U are implicit: R's entries and U's entries are keyed by
/// *physical* ids, mapped to logical positions through the permutation arrays.
/// Physical ids are the row/column indices of the matrix originally reduced.
class RUState {
  public:
    RUState() = default;

    /// Left-to-right standard reduction of `q`, starting from U = I.
    static RUState standard_reduce(const SparseMatrix& q, const PrimeField& field);

    /// Assembles a state from raw parts without reducing it; `verify` decides
    /// whether the parts form a valid decomposition.
    static RUState from_parts(const PrimeField& field, int rows, int cols, std::vector<SparseVec> r_columns,
                              std::vector<SparseVec> u_rows, std::vector<int> row_at, std::vector<int> col_at);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    /// Physical id of the row/column at a logical position, and the inverse.
    int row_at(int position) const { return row_at_[static_cast<std::size_t>(position)]; }
    int row_position(int physical) const { return row_pos_[static_cast<std::size_t>(physical)]; }
    int col_at(int position) const { return col_at_[static_cast<std::size_t>(position)]; }
    int col_position(int physical) const { return col_pos_[static_cast<std::size_t>(physical)]; }
    std::span<const int> row_order() const { return row_at_; }
    std::span<const int> col_order() const { return col_at_; }

    const SparseVec& r_column(int position) const { return r_[static_cast<std::size_t>(position)]; }
    const SparseVec& u_row(int position) const { return u_[static_cast<std::size_t>(position)]; }

    /// Logical pivot row of R's column at `position`, or -1 for a zero column.
    int pivot(int position) const { return pivot_of_col_[static_cast<std::size_t>(position)]; }

    /// Vineyard update after swapping logical rows k and k+1 of Q.
    void transpose_rows(int k);
    /// Vineyard update after swapping logical columns k and k+1 of Q.
    void transpose_cols(int k);

    /// Two-step global update to a decomposition of P·Q·P'. `row_perm[i]` and
    /// `col_perm[i]` give the new logical position of current row/column i.
    void global_update(std::span<const int> row_perm, std::span<const int> col_perm);

    /// R ← R·E with E adding `factor` times column `src` to column `dst`
    /// (src < dst), and U ← E⁻¹·U. Leaves R possibly unreduced.
    void add_column(int src, int dst, FieldElem factor);
    /// Rightward column additions until R is reduced (mirrored on U).
    void reduce();

    std::vector<PersistencePair> pairs() const;

    /// R·U in logical coordinates.
    SparseMatrix product() const;

    /// True iff R is reduced, U is upper-triangular with nonzero diagonal,
    /// the caches and permutations are consistent, and R·U == q.
    bool verify(const SparseMatrix& q) const;

    /// Cumulative count of sparse entries read or written by updates.
    std::size_t touched() const { return touched_; }
    void reset_touched() { touched_ = 0; }

  private:
    RUState(const PrimeField& field, int rows, int cols);

    int compute_pivot(const SparseVec& column) const;
    void refresh_pivot(int col);
    void clear_pivot(int col);
    void row_add(int dst, int src, FieldElem factor);
    void col_add(int dst, int src, FieldElem factor);

    PrimeField field_{2};
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseVec> r_;
    std::vector<SparseVec> u_;
    std::vector<int> row_at_, row_pos_;
    std::vector<int> col_at_, col_pos_;
    std::vector<int> pivot_of_col_;
    std::vector<int> col_of_pivot_;
    std::size_t touched_ = 0;
};

/// One bar read off a reduced matrix, with labels attached. `death` empty
/// means an unpaired row.
template <class Label>
struct LabeledBar {
    Label birth;
    std::optional<Label> death;
};

/// Reads the barcode from an RU-decomposition via its pivot pairs.
/// Labels are indexed by logical position and must be nondecreasing under
/// `leq`. Bars with equal birth and death labels are dropped.
template <class Label, class Leq>
std::vector<LabeledBar<Label>> barcode_from_ru(const RUState& state, std::span<const Label> row_labels,
                                               std::span<const Label> col_labels, Leq leq) {
    if (row_labels.size() != static_cast<std::size_t>(state.rows()) ||
        col_labels.size() != static_cast<std::size_t>(state.cols())) {
        throw PreconditionError("label count does not match matrix dimensions");
    }
    for (std::size_t i = 1; i < row_labels.size(); ++i) {
        if (!leq(row_labels[i - 1], row_labels[i])) throw PreconditionError("row labels are not ordered");
    }
    for (std::size_t i = 1; i < col_labels.size(); ++i) {
        if (!leq(col_labels[i - 1], col_labels[i])) throw PreconditionError("column labels are not ordered");
    }
    std::vector<LabeledBar<Label>> out;
    for (const PersistencePair& p : state.pairs()) {
        const Label& birth = row_labels[static_cast<std::size_t>(p.row)];
        if (p.col < 0) {
            out.push_back({birth, std::nullopt});
        } else {
            const Label& death = col_labels[static_cast<std::size_t>(p.col)];
            if (!(birth == death)) out.push_back({birth, death});
        }
    }
    return out;
}

}  // namespace fibarc
