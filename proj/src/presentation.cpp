#include "fibarc/presentation.hpp"

#include <algorithm>
#include <set>

namespace fibarc {

SparseMatrix Presentation::matrix() const {
    SparseMatrix m(static_cast<int>(num_rows()), static_cast<int>(num_cols()));
    m.columns = columns;
    return m;
}

std::vector<Violation> validate_presentation(const Presentation& p) {
    std::vector<Violation> out;
    if (p.prime > PrimeField::kMaxPrime || !is_prime(p.prime)) {
        out.push_back({Violation::Kind::Field, -1, -1, "field modulus " + std::to_string(p.prime) + " is not a prime below 2^16"});
    }
    if (p.columns.size() != p.col_grades.size()) {
        out.push_back({Violation::Kind::Structure, -1, -1, "column count does not match relation grade count"});
        return out;
    }
    const int rows = static_cast<int>(p.row_grades.size());
    for (std::size_t j = 0; j < p.columns.size(); ++j) {
        const int col = static_cast<int>(j);
        int previous = -1;
        for (const Entry& e : p.columns[j]) {
            if (e.index < 0 || e.index >= rows) {
                out.push_back({Violation::Kind::Structure, e.index, col, "row index out of range"});
                continue;
            }
            if (e.index == previous) {
                out.push_back({Violation::Kind::Structure, e.index, col, "duplicate row index in column"});
            } else if (e.index < previous) {
                out.push_back({Violation::Kind::Structure, e.index, col, "column entries not sorted by row"});
            }
            previous = std::max(previous, e.index);
            if (e.coef.is_zero()) {
                out.push_back({Violation::Kind::Structure, e.index, col, "explicitly stored zero coefficient"});
            } else if (e.coef.value >= p.prime) {
                out.push_back({Violation::Kind::Field, e.index, col, "coefficient not reduced modulo p"});
            }
            if (!p.row_grades[static_cast<std::size_t>(e.index)].leq(p.col_grades[j])) {
                out.push_back({Violation::Kind::Homogeneity, e.index, col,
                               "generator grade " + p.row_grades[static_cast<std::size_t>(e.index)].to_string() +
                                   " is not below relation grade " + p.col_grades[j].to_string()});
            }
        }
    }
    return out;
}

std::vector<std::string> minimality_warnings(const Presentation& p) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < p.columns.size(); ++j) {
        if (p.columns[j].empty()) {
            out.push_back("relation " + std::to_string(j) + " is zero");
        }
        for (const Entry& e : p.columns[j]) {
            if (p.row_grades[static_cast<std::size_t>(e.index)] == p.col_grades[j]) {
                out.push_back("relation " + std::to_string(j) + " has a unit entry at generator " +
                              std::to_string(e.index) + " of equal grade");
            }
        }
    }
    return out;
}

std::vector<Grade> support_grades(const Presentation& p) {
    std::vector<Grade> all = p.row_grades;
    all.insert(all.end(), p.col_grades.begin(), p.col_grades.end());
    std::sort(all.begin(), all.end(), ColexLess{});
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

GridSize grid_size(const std::vector<Grade>& points) {
    std::set<Rational> xs, ys;
    for (const Grade& g : points) {
        xs.insert(g.x);
        ys.insert(g.y);
    }
    return {xs.size(), ys.size()};
}

}  // namespace fibarc
