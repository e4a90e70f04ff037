#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "fibarc/field.hpp"
#include "fibarc/grade.hpp"
#include "fibarc/presentation.hpp"
#include "fibarc/sparse.hpp"

namespace testing_support {

using namespace fibarc;

inline Grade g(long x, long y) { return {Rational(x), Rational(y)}; }

inline SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, const PrimeField& field, double density) {
    SparseMatrix m(rows, cols);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            if (coin(rng) < density) {
                auto v = static_cast<std::uint32_t>(1 + rng() % (field.prime() - 1));
                m.columns[static_cast<std::size_t>(j)].push_back({i, {v}});
            }
        }
    }
    return m;
}

// Row i of the result is row perm^{-1}(i) of m: `perm[i]` is where row i goes.
inline SparseMatrix permute(const SparseMatrix& m, const std::vector<int>& row_perm, const std::vector<int>& col_perm) {
    SparseMatrix out(m.rows, m.cols);
    for (int j = 0; j < m.cols; ++j) {
        SparseVec col;
        for (const Entry& e : m.columns[static_cast<std::size_t>(j)]) col.push_back({row_perm[static_cast<std::size_t>(e.index)], e.coef});
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        out.columns[static_cast<std::size_t>(col_perm[static_cast<std::size_t>(j)])] = col;
    }
    return out;
}

inline std::vector<int> identity_perm(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<int> swap_perm(int n, int k) {
    auto p = identity_perm(n);
    std::swap(p[static_cast<std::size_t>(k)], p[static_cast<std::size_t>(k + 1)]);
    return p;
}

inline std::vector<int> random_perm(std::mt19937_64& rng, int n) {
    auto p = identity_perm(n);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

// Random presentation on an integer grid [0, side)^2. Every relation only
// involves generators whose grade lies below it.
inline Presentation random_presentation(std::mt19937_64& rng, std::uint32_t prime, int max_total, int side) {
    Presentation p;
    p.prime = prime;
    const int total = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_total - 1));
    const int n0 = 1 + static_cast<int>(rng() % static_cast<unsigned>(total));
    const int n1 = total - n0;
    auto coord = [&] { return static_cast<long>(rng() % static_cast<unsigned>(side)); };
    for (int i = 0; i < n0; ++i) p.row_grades.push_back(g(coord(), coord()));
    for (int j = 0; j < n1; ++j) {
        Grade c = g(coord(), coord());
        std::vector<int> below;
        for (int i = 0; i < n0; ++i) {
            if (p.row_grades[static_cast<std::size_t>(i)].leq(c)) below.push_back(i);
        }
        if (below.empty()) {
            // move the relation above some generator
            const Grade& r = p.row_grades[rng() % static_cast<unsigned>(n0)];
            c = join(c, r);
            for (int i = 0; i < n0; ++i) {
                if (p.row_grades[static_cast<std::size_t>(i)].leq(c)) below.push_back(i);
            }
        }
        SparseVec col;
        for (int i : below) {
            if (rng() % 3 == 0 || below.size() == 1) {
                col.push_back({i, {static_cast<std::uint32_t>(1 + rng() % (prime - 1))}});
            }
        }
        if (col.empty()) col.push_back({below[rng() % below.size()], {1}});
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        p.col_grades.push_back(c);
        p.columns.push_back(col);
    }
    return p;
}

}  // namespace testing_support
