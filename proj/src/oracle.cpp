#include "fibarc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "fibarc/error.hpp"
#include "fibarc/field.hpp"

namespace fibarc {

namespace {

using Dense = std::vector<std::vector<std::uint32_t>>;

// Least point t of the line with a ≤ t.
std::optional<Grade> lowest_point_above(const QueryLine& line, const Grade& a) {
    if (line.is_vertical()) {
        if (line.x() < a.x) return std::nullopt;
        return Grade{line.x(), a.y};
    }
    const Rational& q = line.slope();
    const Rational& r = line.intercept();
    if (q.sign() == 0) {
        if (r < a.y) return std::nullopt;
        return Grade{a.x, r};
    }
    // the smallest t ≥ a.x with q·t + r ≥ a.y
    const Rational t = max(a.x, (a.y - r) / q);
    return Grade{t, q * t + r};
}

// Order of points along a line of nonnegative slope.
bool along(const Grade& a, const Grade& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

class EchelonBasis {
  public:
    EchelonBasis(const PrimeField& f, std::size_t dim) : f_(f), pivot_row_(dim, -1) {}

    // Adds v to the span; returns true iff it was independent.
    bool insert(std::vector<std::uint32_t> v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            const int k = pivot_row_[i];
            if (k < 0) {
                const FieldElem s = f_.inv({v[i]});
                for (auto& x : v) x = f_.mul({x}, s).value;
                pivot_row_[i] = static_cast<int>(basis_.size());
                basis_.push_back(std::move(v));
                return true;
            }
            const auto& b = basis_[static_cast<std::size_t>(k)];
            const FieldElem c = {v[i]};
            for (std::size_t t = i; t < v.size(); ++t) v[t] = f_.sub({v[t]}, f_.mul(c, {b[t]})).value;
        }
        return false;
    }

    std::size_t rank() const { return basis_.size(); }

  private:
    PrimeField f_;
    std::vector<int> pivot_row_;
    Dense basis_;
};

std::vector<std::uint32_t> dense_column(const Presentation& q, std::size_t col, const std::vector<int>& coord) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(std::count_if(coord.begin(), coord.end(), [](int c) { return c >= 0; })), 0);
    for (const Entry& e : q.columns[col]) {
        const int c = coord[static_cast<std::size_t>(e.index)];
        if (c < 0) throw InternalError("relation involves a generator outside its down-set");
        v[static_cast<std::size_t>(c)] = e.coef.value;
    }
    return v;
}

}  // namespace

LinePresentation restrict_presentation(const Presentation& q, const QueryLine& line) {
    auto keep = [&](const std::vector<Grade>& grades, std::vector<Grade>& labels) {
        std::vector<std::pair<Grade, std::size_t>> kept;
        for (std::size_t i = 0; i < grades.size(); ++i) {
            if (auto p = lowest_point_above(line, grades[i])) kept.push_back({*p, i});
        }
        std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return along(a.first, b.first); });
        std::vector<std::size_t> order;
        for (auto& [p, i] : kept) {
            labels.push_back(p);
            order.push_back(i);
        }
        return order;
    };
    LinePresentation out;
    out.prime = q.prime;
    const auto rows = keep(q.row_grades, out.row_labels);
    const auto cols = keep(q.col_grades, out.col_labels);
    std::vector<int> row_slot(q.row_grades.size(), -1);
    for (std::size_t k = 0; k < rows.size(); ++k) row_slot[rows[k]] = static_cast<int>(k);
    out.entries.assign(rows.size(), std::vector<std::uint32_t>(cols.size(), 0));
    const PrimeField f(q.prime);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (const Entry& e : q.columns[cols[c]]) {
            const int r = row_slot[static_cast<std::size_t>(e.index)];
            if (r < 0) throw InternalError("kept relation involves a dropped generator");
            out.entries[static_cast<std::size_t>(r)][c] = f.from_int(e.coef.value).value;
        }
    }
    return out;
}

Barcode oracle_barcode(const Presentation& q, const QueryLine& line) {
    LinePresentation lp = restrict_presentation(q, line);
    const PrimeField f(lp.prime);
    const std::size_t n = lp.row_labels.size();
    const std::size_t m = lp.col_labels.size();
    auto& a = lp.entries;
    auto low = [&](std::size_t col) {
        for (std::size_t i = n; i-- > 0;) {
            if (a[i][col] != 0) return static_cast<long>(i);
        }
        return -1L;
    };
    std::vector<long> owner(n, -1);
    std::vector<bool> is_pivot(n, false);
    Barcode out;
    for (std::size_t j = 0; j < m; ++j) {
        long p = low(j);
        while (p >= 0 && owner[static_cast<std::size_t>(p)] >= 0) {
            const auto k = static_cast<std::size_t>(owner[static_cast<std::size_t>(p)]);
            const FieldElem factor = f.div({a[static_cast<std::size_t>(p)][j]}, {a[static_cast<std::size_t>(p)][k]});
            for (std::size_t i = 0; i < n; ++i) a[i][j] = f.sub({a[i][j]}, f.mul(factor, {a[i][k]})).value;
            p = low(j);
        }
        if (p < 0) continue;
        owner[static_cast<std::size_t>(p)] = static_cast<long>(j);
        is_pivot[static_cast<std::size_t>(p)] = true;
        const Grade& birth = lp.row_labels[static_cast<std::size_t>(p)];
        const Grade& death = lp.col_labels[j];
        if (!(birth == death)) out.push_back({birth, death});
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_pivot[i]) out.push_back({lp.row_labels[i], std::nullopt});
    }
    canonicalize(out);
    return out;
}

std::size_t rank_invariant(const Presentation& q, const Grade& a, const Grade& b) {
    if (!a.leq(b)) throw PreconditionError("rank invariant needs a ≤ b");
    const PrimeField f(q.prime);
    std::vector<int> coord(q.row_grades.size(), -1);
    int dim = 0;
    for (std::size_t i = 0; i < q.row_grades.size(); ++i) {
        if (q.row_grades[i].leq(b)) coord[i] = dim++;
    }
    EchelonBasis basis(f, static_cast<std::size_t>(dim));
    for (std::size_t c = 0; c < q.col_grades.size(); ++c) {
        if (q.col_grades[c].leq(b)) basis.insert(dense_column(q, c, coord));
    }
    const std::size_t rel = basis.rank();
    for (std::size_t i = 0; i < q.row_grades.size(); ++i) {
        if (!q.row_grades[i].leq(a)) continue;
        std::vector<std::uint32_t> e(static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(coord[i])] = 1;
        basis.insert(std::move(e));
    }
    return basis.rank() - rel;
}

Barcode barcode_from_ranks(const Presentation& q, const QueryLine& line) {
    std::vector<Grade> crit;
    for (const auto* grades : {&q.row_grades, &q.col_grades}) {
        for (const Grade& g : *grades) {
            if (auto p = lowest_point_above(line, g)) crit.push_back(*p);
        }
    }
    std::sort(crit.begin(), crit.end(), along);
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    const std::size_t k = crit.size();
    const PrimeField f(q.prime);

    // rk[i][j] = rank M_{c_i → c_j} for 1 ≤ i ≤ j ≤ k; row 0 is the zero sentinel.
    std::vector<std::vector<long>> rk(k + 1, std::vector<long>(k + 1, 0));
    for (std::size_t j = 1; j <= k; ++j) {
        const Grade& b = crit[j - 1];
        std::vector<int> coord(q.row_grades.size(), -1);
        int dim = 0;
        for (std::size_t i = 0; i < q.row_grades.size(); ++i) {
            if (q.row_grades[i].leq(b)) coord[i] = dim++;
        }
        EchelonBasis basis(f, static_cast<std::size_t>(dim));
        for (std::size_t c = 0; c < q.col_grades.size(); ++c) {
            if (q.col_grades[c].leq(b)) basis.insert(dense_column(q, c, coord));
        }
        const std::size_t rel = basis.rank();
        std::vector<bool> added(q.row_grades.size(), false);
        for (std::size_t i = 1; i <= j; ++i) {
            for (std::size_t g = 0; g < q.row_grades.size(); ++g) {
                if (added[g] || !q.row_grades[g].leq(crit[i - 1])) continue;
                added[g] = true;
                std::vector<std::uint32_t> e(static_cast<std::size_t>(dim), 0);
                e[static_cast<std::size_t>(coord[g])] = 1;
                basis.insert(std::move(e));
            }
            rk[i][j] = static_cast<long>(basis.rank() - rel);
        }
    }

    Barcode out;
    auto emit = [&](const Grade& birth, const ExtGrade& death, long mult) {
        if (mult < 0) throw InternalError("negative interval multiplicity");
        for (long t = 0; t < mult; ++t) out.push_back({birth, death});
    };
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = i + 1; j <= k; ++j) {
            emit(crit[i - 1], crit[j - 1], rk[i][j - 1] - rk[i][j] - rk[i - 1][j - 1] + rk[i - 1][j]);
        }
        emit(crit[i - 1], std::nullopt, rk[i][k] - rk[i - 1][k]);
    }
    canonicalize(out);
    return out;
}

}  // namespace fibarc
