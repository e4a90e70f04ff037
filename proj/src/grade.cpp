#include "fibarc/grade.hpp"

#include <algorithm>
#include <numeric>

#include "fibarc/error.hpp"

namespace fibarc {

std::ostream& operator<<(std::ostream& os, const Grade& g) { return os << g.to_string(); }

std::string to_string(const ExtGrade& g) { return g ? g->to_string() : std::string("inf"); }

bool ext_lex_less(const ExtGrade& a, const ExtGrade& b) {
    if (!a) return false;
    if (!b) return true;
    return LexLess{}(*a, *b);
}

Grade join(std::span<const Grade> points) {
    if (points.empty()) throw PreconditionError("join of an empty set");
    Grade out = points.front();
    for (const Grade& p : points.subspan(1)) {
        if (out.x < p.x) out.x = p.x;
        if (out.y < p.y) out.y = p.y;
    }
    return out;
}

bool weakly_incomparable(const Grade& a, const Grade& b) {
    if (a == b) throw PreconditionError("weakly_incomparable requires distinct grades");
    return !a.comparable(b) || a.x == b.x || a.y == b.y;
}

std::vector<std::size_t> colex_sort(std::span<const Grade> grades) {
    std::vector<std::size_t> order(grades.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return ColexLess{}(grades[i], grades[j]); });
    return order;
}

}  // namespace fibarc
