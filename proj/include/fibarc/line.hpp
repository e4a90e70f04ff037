#pragma once

#include <string>

#include "fibarc/grade.hpp"

namespace fibarc {

/// A line of non-negative slope, possibly vertical.
class QueryLine {
  public:
    /// y = slope·x + intercept; throws DomainError for negative slope.
    static QueryLine with_slope(Rational slope, Rational intercept);
    /// x = c.
    static QueryLine vertical(Rational c);

    bool is_vertical() const { return vertical_; }
    bool is_horizontal() const { return !vertical_ && slope_.sign() == 0; }
    const Rational& slope() const { return slope_; }
    const Rational& intercept() const { return intercept_; }
    const Rational& x() const { return x_; }

    bool contains(const Grade& p) const;

    /// The coordinate that orders points along the line: y for vertical
    /// lines, x otherwise.
    const Rational& parameter(const Grade& p) const { return vertical_ ? p.y : p.x; }

    std::string to_string() const;

    friend bool operator==(const QueryLine&, const QueryLine&) = default;

  private:
    QueryLine() = default;

    bool vertical_ = false;
    Rational slope_;
    Rational intercept_;
    Rational x_;
};

/// Least point of `line` above `a`, or infinity when there is none.
ExtGrade push(const QueryLine& line, const Grade& a);

/// Point-line duality: y = qx + r is dual to the point (q, -r).
Grade dual_point(const QueryLine& line);

/// A nonvertical line y = m·x + b of arbitrary slope, used for anchor duals.
struct PlaneLine {
    Rational slope;
    Rational intercept;

    Rational at(const Rational& x) const { return slope * x + intercept; }
    /// Sign of p.y - line(p.x).
    int side(const Grade& p) const { return (p.y - at(p.x)).sign(); }

    friend bool operator==(const PlaneLine&, const PlaneLine&) = default;
};

/// The line dual to a point: (a, b) gives y = a·x - b.
PlaneLine dual_line(const Grade& p);

}  // namespace fibarc
