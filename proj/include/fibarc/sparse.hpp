#pragma once

#include <cstddef>
#include <vector>

#include "fibarc/field.hpp"

namespace fibarc {

struct Entry {
    int index;
    FieldElem coef;

    friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector: entries strictly increasing by index, no stored zeros.
using SparseVec = std::vector<Entry>;

/// Coefficient at `index`, zero when absent.
FieldElem entry_at(const SparseVec& v, int index);

/// dst += factor * src. Returns the number of entries read or written.
std::size_t add_scaled(SparseVec& dst, const SparseVec& src, FieldElem factor, const PrimeField& field);

/// Column-major sparse matrix with explicit dimensions.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseVec> columns;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}

    static SparseMatrix identity(int n, const PrimeField& field);

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

}  // namespace fibarc
