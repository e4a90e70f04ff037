#include "fibarc/line.hpp"

#include "fibarc/error.hpp"

namespace fibarc {

QueryLine QueryLine::with_slope(Rational slope, Rational intercept) {
    if (slope.sign() < 0) throw DomainError("query line has negative slope " + slope.to_string());
    QueryLine l;
    l.slope_ = std::move(slope);
    l.intercept_ = std::move(intercept);
    return l;
}

QueryLine QueryLine::vertical(Rational c) {
    QueryLine l;
    l.vertical_ = true;
    l.x_ = std::move(c);
    return l;
}

bool QueryLine::contains(const Grade& p) const {
    if (vertical_) return p.x == x_;
    return p.y == slope_ * p.x + intercept_;
}

std::string QueryLine::to_string() const {
    if (vertical_) return "x = " + x_.to_string();
    return "y = " + slope_.to_string() + "x + " + intercept_.to_string();
}

ExtGrade push(const QueryLine& line, const Grade& a) {
    if (line.is_vertical()) {
        if (a.x <= line.x()) return Grade{line.x(), a.y};
        return kInfinity;
    }
    const Rational& q = line.slope();
    const Rational& r = line.intercept();
    if (q.sign() == 0) {
        if (a.y <= r) return Grade{a.x, r};
        return kInfinity;
    }
    Rational above = q * a.x + r;
    if (a.y <= above) return Grade{a.x, std::move(above)};
    return Grade{(a.y - r) / q, a.y};
}

Grade dual_point(const QueryLine& line) {
    if (line.is_vertical()) throw PreconditionError("vertical lines have no dual point");
    return {line.slope(), -line.intercept()};
}

PlaneLine dual_line(const Grade& p) { return {p.x, -p.y}; }

}  // namespace fibarc
