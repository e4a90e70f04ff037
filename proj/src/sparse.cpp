#include "fibarc/sparse.hpp"

#include <algorithm>

namespace fibarc {

FieldElem entry_at(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, int i) { return e.index < i; });
    if (it != v.end() && it->index == index) return it->coef;
    return {};
}

std::size_t add_scaled(SparseVec& dst, const SparseVec& src, FieldElem factor, const PrimeField& field) {
    if (factor.is_zero() || src.empty()) return 0;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->index < b->index)) {
            out.push_back(*a++);
        } else if (a == dst.end() || b->index < a->index) {
            out.push_back({b->index, field.mul(factor, b->coef)});
            ++b;
        } else {
            FieldElem c = field.add(a->coef, field.mul(factor, b->coef));
            if (!c.is_zero()) out.push_back({a->index, c});
            ++a;
            ++b;
        }
    }
    std::size_t touched = dst.size() + src.size();
    dst = std::move(out);
    return touched;
}

SparseMatrix SparseMatrix::identity(int n, const PrimeField& field) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.columns[static_cast<std::size_t>(i)].push_back({i, field.from_int(1)});
    return m;
}

}  // namespace fibarc
