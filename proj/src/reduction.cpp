#include "fibarc/reduction.hpp"

#include <algorithm>
#include <numeric>

namespace fibarc {

namespace {

void check_permutation(std::span<const int> perm, int n, const char* what) {
    if (perm.size() != static_cast<std::size_t>(n)) throw PreconditionError(std::string(what) + ": dimension mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw PreconditionError(std::string(what) + ": not a permutation");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

}  // namespace

RUState::RUState(const PrimeField& field, int rows, int cols)
    : field_(field),
      rows_(rows),
      cols_(cols),
      r_(static_cast<std::size_t>(cols)),
      u_(static_cast<std::size_t>(cols)),
      row_at_(static_cast<std::size_t>(rows)),
      row_pos_(static_cast<std::size_t>(rows)),
      col_at_(static_cast<std::size_t>(cols)),
      col_pos_(static_cast<std::size_t>(cols)),
      pivot_of_col_(static_cast<std::size_t>(cols), -1),
      col_of_pivot_(static_cast<std::size_t>(rows), -1) {
    std::iota(row_at_.begin(), row_at_.end(), 0);
    std::iota(row_pos_.begin(), row_pos_.end(), 0);
    std::iota(col_at_.begin(), col_at_.end(), 0);
    std::iota(col_pos_.begin(), col_pos_.end(), 0);
}

RUState RUState::standard_reduce(const SparseMatrix& q, const PrimeField& field) {
    RUState s(field, q.rows, q.cols);
    for (int j = 0; j < q.cols; ++j) {
        s.r_[static_cast<std::size_t>(j)] = q.columns[static_cast<std::size_t>(j)];
        s.u_[static_cast<std::size_t>(j)] = {{j, field.from_int(1)}};
    }
    s.reduce();
    s.touched_ = 0;
    return s;
}

RUState RUState::from_parts(const PrimeField& field, int rows, int cols, std::vector<SparseVec> r_columns,
                            std::vector<SparseVec> u_rows, std::vector<int> row_at, std::vector<int> col_at) {
    if (r_columns.size() != static_cast<std::size_t>(cols) || u_rows.size() != static_cast<std::size_t>(cols)) {
        throw PreconditionError("RU parts: dimension mismatch");
    }
    check_permutation(row_at, rows, "RU parts rows");
    check_permutation(col_at, cols, "RU parts cols");
    RUState s(field, rows, cols);
    s.r_ = std::move(r_columns);
    s.u_ = std::move(u_rows);
    s.row_at_ = std::move(row_at);
    s.col_at_ = std::move(col_at);
    for (int i = 0; i < rows; ++i) s.row_pos_[static_cast<std::size_t>(s.row_at_[static_cast<std::size_t>(i)])] = i;
    for (int j = 0; j < cols; ++j) s.col_pos_[static_cast<std::size_t>(s.col_at_[static_cast<std::size_t>(j)])] = j;
    for (int j = 0; j < cols; ++j) {
        int p = s.compute_pivot(s.r_[static_cast<std::size_t>(j)]);
        s.pivot_of_col_[static_cast<std::size_t>(j)] = p;
        // Caches keep the first claimant; verify() detects a clash.
        if (p >= 0 && s.col_of_pivot_[static_cast<std::size_t>(p)] < 0) s.col_of_pivot_[static_cast<std::size_t>(p)] = j;
    }
    return s;
}

int RUState::compute_pivot(const SparseVec& column) const {
    int best = -1;
    for (const Entry& e : column) best = std::max(best, row_pos_[static_cast<std::size_t>(e.index)]);
    return best;
}

void RUState::clear_pivot(int col) {
    int& p = pivot_of_col_[static_cast<std::size_t>(col)];
    if (p >= 0 && col_of_pivot_[static_cast<std::size_t>(p)] == col) col_of_pivot_[static_cast<std::size_t>(p)] = -1;
    p = -1;
}

void RUState::refresh_pivot(int col) {
    clear_pivot(col);
    const SparseVec& c = r_[static_cast<std::size_t>(col)];
    touched_ += c.size();
    int p = compute_pivot(c);
    pivot_of_col_[static_cast<std::size_t>(col)] = p;
    if (p >= 0) col_of_pivot_[static_cast<std::size_t>(p)] = col;
}

void RUState::col_add(int dst, int src, FieldElem factor) {
    touched_ += add_scaled(r_[static_cast<std::size_t>(dst)], r_[static_cast<std::size_t>(src)], factor, field_);
}

void RUState::row_add(int dst, int src, FieldElem factor) {
    touched_ += add_scaled(u_[static_cast<std::size_t>(dst)], u_[static_cast<std::size_t>(src)], factor, field_);
}

void RUState::add_column(int src, int dst, FieldElem factor) {
    if (src < 0 || dst >= cols_ || src >= dst) throw PreconditionError("add_column requires src < dst");
    col_add(dst, src, factor);
    row_add(src, dst, field_.neg(factor));
    refresh_pivot(dst);
    // src may have lost its claim on a pivot row that dst now shares.
    int ps = pivot_of_col_[static_cast<std::size_t>(src)];
    if (ps >= 0 && col_of_pivot_[static_cast<std::size_t>(ps)] != src) {
        // keep the leftmost claimant registered
        col_of_pivot_[static_cast<std::size_t>(ps)] = src;
    }
}

void RUState::reduce() {
    // Rebuild the pivot lookup from scratch; columns left of j are reduced.
    std::fill(col_of_pivot_.begin(), col_of_pivot_.end(), -1);
    for (int j = 0; j < cols_; ++j) {
        SparseVec& col = r_[static_cast<std::size_t>(j)];
        int p = compute_pivot(col);
        touched_ += col.size();
        while (p >= 0) {
            int k = col_of_pivot_[static_cast<std::size_t>(p)];
            if (k < 0 || k >= j) break;
            const int phys = row_at_[static_cast<std::size_t>(p)];
            FieldElem f = field_.neg(field_.div(entry_at(col, phys), entry_at(r_[static_cast<std::size_t>(k)], phys)));
            col_add(j, k, f);
            row_add(k, j, field_.neg(f));
            p = compute_pivot(col);
            touched_ += col.size();
        }
        pivot_of_col_[static_cast<std::size_t>(j)] = p;
        if (p >= 0) col_of_pivot_[static_cast<std::size_t>(p)] = j;
    }
}

void RUState::transpose_rows(int k) {
    if (k < 0 || k + 1 >= rows_) throw PreconditionError("row transposition index out of range");
    const int a = col_of_pivot_[static_cast<std::size_t>(k + 1)];
    const int b = col_of_pivot_[static_cast<std::size_t>(k)];
    const int phys_low = row_at_[static_cast<std::size_t>(k)];
    const int phys_high = row_at_[static_cast<std::size_t>(k + 1)];
    std::swap(row_at_[static_cast<std::size_t>(k)], row_at_[static_cast<std::size_t>(k + 1)]);
    row_pos_[static_cast<std::size_t>(phys_low)] = k + 1;
    row_pos_[static_cast<std::size_t>(phys_high)] = k;
    touched_ += 2;

    if (a >= 0 && b >= 0) {
        // After the swap both columns may have their lowest entry in row phys_low.
        FieldElem av = entry_at(r_[static_cast<std::size_t>(a)], phys_low);
        touched_ += r_[static_cast<std::size_t>(a)].size();
        if (!av.is_zero()) {
            FieldElem bv = entry_at(r_[static_cast<std::size_t>(b)], phys_low);
            if (a < b) {
                FieldElem f = field_.neg(field_.div(bv, av));
                col_add(b, a, f);
                row_add(a, b, field_.neg(f));
            } else {
                FieldElem f = field_.neg(field_.div(av, bv));
                col_add(a, b, f);
                row_add(b, a, field_.neg(f));
            }
        }
    }
    for (int c : {a, b}) {
        if (c >= 0) clear_pivot(c);
    }
    for (int c : {a, b}) {
        if (c >= 0) refresh_pivot(c);
    }
}

void RUState::transpose_cols(int k) {
    if (k < 0 || k + 1 >= cols_) throw PreconditionError("column transposition index out of range");
    const std::size_t lo = static_cast<std::size_t>(k);
    const std::size_t hi = lo + 1;
    FieldElem c = entry_at(u_[lo], col_at_[hi]);
    touched_ += u_[lo].size();

    std::swap(r_[lo], r_[hi]);
    std::swap(u_[lo], u_[hi]);
    std::swap(col_at_[lo], col_at_[hi]);
    col_pos_[static_cast<std::size_t>(col_at_[lo])] = k;
    col_pos_[static_cast<std::size_t>(col_at_[hi])] = k + 1;
    std::swap(pivot_of_col_[lo], pivot_of_col_[hi]);
    for (std::size_t i : {lo, hi}) {
        if (pivot_of_col_[i] >= 0) col_of_pivot_[static_cast<std::size_t>(pivot_of_col_[i])] = static_cast<int>(i);
    }
    touched_ += 4;
    if (c.is_zero()) return;

    // U now has c below the diagonal at (k+1, k): clear it with a downward
    // row operation, mirrored by a leftward column operation on R.
    FieldElem d = entry_at(u_[lo], col_at_[lo]);
    FieldElem f = field_.div(c, d);
    row_add(k + 1, k, field_.neg(f));
    col_add(k, k + 1, f);
    refresh_pivot(k);
    refresh_pivot(k + 1);
    const int p = pivot_of_col_[lo];
    if (p >= 0 && p == pivot_of_col_[hi]) {
        const int phys = row_at_[static_cast<std::size_t>(p)];
        FieldElem g = field_.div(entry_at(r_[hi], phys), entry_at(r_[lo], phys));
        col_add(k + 1, k, field_.neg(g));
        row_add(k, k + 1, g);
        refresh_pivot(k);
        refresh_pivot(k + 1);
    }
}

void RUState::global_update(std::span<const int> row_perm, std::span<const int> col_perm) {
    check_permutation(row_perm, rows_, "row permutation");
    check_permutation(col_perm, cols_, "column permutation");

    std::vector<int> new_row_at(row_at_.size());
    for (int i = 0; i < rows_; ++i) new_row_at[static_cast<std::size_t>(row_perm[static_cast<std::size_t>(i)])] = row_at_[static_cast<std::size_t>(i)];
    row_at_ = std::move(new_row_at);
    for (int i = 0; i < rows_; ++i) row_pos_[static_cast<std::size_t>(row_at_[static_cast<std::size_t>(i)])] = i;

    std::vector<SparseVec> new_r(r_.size()), new_u(u_.size());
    std::vector<int> new_col_at(col_at_.size());
    for (int j = 0; j < cols_; ++j) {
        const std::size_t to = static_cast<std::size_t>(col_perm[static_cast<std::size_t>(j)]);
        new_r[to] = std::move(r_[static_cast<std::size_t>(j)]);
        new_u[to] = std::move(u_[static_cast<std::size_t>(j)]);
        new_col_at[to] = col_at_[static_cast<std::size_t>(j)];
    }
    r_ = std::move(new_r);
    u_ = std::move(new_u);
    col_at_ = std::move(new_col_at);
    for (int j = 0; j < cols_; ++j) col_pos_[static_cast<std::size_t>(col_at_[static_cast<std::size_t>(j)])] = j;

    // Step 1: downward row operations make U upper-triangular; each is
    // mirrored by a leftward column operation on R. Principal submatrices of
    // a triangular matrix with nonzero diagonal are nonsingular, so no
    // pivoting is needed.
    for (int j = 0; j < cols_; ++j) {
        const int phys = col_at_[static_cast<std::size_t>(j)];
        FieldElem d = entry_at(u_[static_cast<std::size_t>(j)], phys);
        if (d.is_zero()) throw InternalError("global update: singular leading minor");
        for (int i = j + 1; i < cols_; ++i) {
            FieldElem e = entry_at(u_[static_cast<std::size_t>(i)], phys);
            if (e.is_zero()) continue;
            FieldElem f = field_.div(e, d);
            row_add(i, j, field_.neg(f));
            col_add(j, i, f);
        }
    }
    // Step 2: rightward column operations reduce R, mirrored upward on U.
    reduce();
}

std::vector<PersistencePair> RUState::pairs() const {
    std::vector<PersistencePair> out;
    std::vector<bool> paired(static_cast<std::size_t>(rows_), false);
    for (int j = 0; j < cols_; ++j) {
        int p = pivot_of_col_[static_cast<std::size_t>(j)];
        if (p >= 0) {
            out.push_back({p, j});
            paired[static_cast<std::size_t>(p)] = true;
        }
    }
    for (int i = 0; i < rows_; ++i) {
        if (!paired[static_cast<std::size_t>(i)]) out.push_back({i, -1});
    }
    return out;
}

SparseMatrix RUState::product() const {
    SparseMatrix out(rows_, cols_);
    for (int k = 0; k < cols_; ++k) {
        for (const Entry& e : u_[static_cast<std::size_t>(k)]) {
            add_scaled(out.columns[static_cast<std::size_t>(col_pos_[static_cast<std::size_t>(e.index)])],
                       r_[static_cast<std::size_t>(k)], e.coef, field_);
        }
    }
    for (SparseVec& col : out.columns) {
        for (Entry& e : col) e.index = row_pos_[static_cast<std::size_t>(e.index)];
        std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.index < y.index; });
    }
    return out;
}

bool RUState::verify(const SparseMatrix& q) const {
    if (q.rows != rows_ || q.cols != cols_) return false;
    for (int i = 0; i < rows_; ++i) {
        if (row_pos_[static_cast<std::size_t>(row_at_[static_cast<std::size_t>(i)])] != i) return false;
    }
    for (int j = 0; j < cols_; ++j) {
        if (col_pos_[static_cast<std::size_t>(col_at_[static_cast<std::size_t>(j)])] != j) return false;
    }
    auto well_formed = [&](const SparseVec& v, int bound) {
        for (std::size_t t = 0; t < v.size(); ++t) {
            if (v[t].index < 0 || v[t].index >= bound || v[t].coef.is_zero() || v[t].coef.value >= field_.prime()) return false;
            if (t > 0 && v[t - 1].index >= v[t].index) return false;
        }
        return true;
    };
    std::vector<int> owner(static_cast<std::size_t>(rows_), -1);
    for (int j = 0; j < cols_; ++j) {
        const SparseVec& col = r_[static_cast<std::size_t>(j)];
        if (!well_formed(col, rows_)) return false;
        int p = compute_pivot(col);
        if (p != pivot_of_col_[static_cast<std::size_t>(j)]) return false;
        if (p >= 0) {
            if (owner[static_cast<std::size_t>(p)] >= 0) return false;
            owner[static_cast<std::size_t>(p)] = j;
        }
    }
    if (owner != col_of_pivot_) return false;
    for (int k = 0; k < cols_; ++k) {
        const SparseVec& row = u_[static_cast<std::size_t>(k)];
        if (!well_formed(row, cols_)) return false;
        for (const Entry& e : row) {
            if (col_pos_[static_cast<std::size_t>(e.index)] < k) return false;
        }
        if (entry_at(row, col_at_[static_cast<std::size_t>(k)]).is_zero()) return false;
    }
    return product() == q;
}

}  // namespace fibarc
