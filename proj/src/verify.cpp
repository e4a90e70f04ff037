#include "fibarc/verify.hpp"

#include <algorithm>

#include "fibarc/error.hpp"
#include "fibarc/oracle.hpp"

namespace fibarc {

const char* to_string(LineKind k) {
    switch (k) {
        case LineKind::InFace: return "in-face";
        case LineKind::OnEdge: return "on-edge";
        case LineKind::OnVertex: return "on-vertex";
        case LineKind::Horizontal: return "horizontal";
        case LineKind::Vertical: return "vertical";
        case LineKind::ThroughAnchor: return "through-anchor";
        case LineKind::Random: return "random";
    }
    return "?";
}

Rational random_rational(std::mt19937_64& rng, long span) {
    const long den = 1 + static_cast<long>(rng() % 6);
    const long range = 2 * span * den + 1;
    const long num = static_cast<long>(rng() % static_cast<unsigned long>(range)) - span * den;
    return Rational(num, den);
}

Grade random_point_in_face(const Arrangement& arr, int face, std::mt19937_64& rng) {
    const auto corners = face_polygon(arr, face);
    Rational total(0), x(0), y(0);
    for (const Grade& c : corners) {
        const Rational w(1 + static_cast<long>(rng() % 9));
        total += w;
        x += w * c.x;
        y += w * c.y;
    }
    return {x / total, y / total};
}

namespace {

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
    return v[rng() % v.size()];
}

QueryLine dual_to(const Grade& p) { return QueryLine::with_slope(p.x, -p.y); }

}  // namespace

std::vector<SampledLine> sample_lines(const AugmentedArrangement& aug, std::mt19937_64& rng, std::size_t count) {
    const Arrangement& arr = aug.arrangement();
    const auto& pts = aug.support().points;

    std::vector<int> line_edges;
    for (std::size_t e = 0; e < arr.edges().size(); ++e) {
        if (arr.edges()[e].line >= 0) line_edges.push_back(static_cast<int>(e));
    }
    std::vector<int> real_vertices;
    for (std::size_t v = 0; v < arr.vertices().size(); ++v) {
        if (!arr.vertices()[v].artificial) real_vertices.push_back(static_cast<int>(v));
    }
    std::vector<Rational> xs, ys;
    for (const Grade& p : pts) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    for (const Anchor& a : arr.anchors()) {
        xs.push_back(a.point.x);
        ys.push_back(a.point.y);
    }
    auto random_slope = [&] {
        Rational q = random_rational(rng, 3);
        if (q.sign() < 0) q = -q;
        if (q.sign() == 0) q = Rational(1, 1 + static_cast<long>(rng() % 4));
        return q;
    };

    std::vector<SampledLine> out;
    const LineKind kinds[] = {LineKind::InFace,  LineKind::OnEdge,        LineKind::OnVertex, LineKind::Horizontal,
                              LineKind::Vertical, LineKind::ThroughAnchor, LineKind::Random};
    for (std::size_t k = 0; out.size() < count; ++k) {
        const LineKind kind = kinds[k % std::size(kinds)];
        switch (kind) {
            case LineKind::InFace: {
                const int f = static_cast<int>(rng() % arr.num_faces());
                out.push_back({dual_to(random_point_in_face(arr, f, rng)), kind});
                break;
            }
            case LineKind::OnEdge: {
                if (line_edges.empty()) break;
                const Edge& e = arr.edges()[static_cast<std::size_t>(pick(line_edges, rng))];
                const HalfEdge& h = arr.half_edges()[static_cast<std::size_t>(e.half_edge)];
                const Vertex& a = arr.vertices()[static_cast<std::size_t>(h.origin)];
                const Vertex& b = arr.vertices()[static_cast<std::size_t>(arr.half_edges()[static_cast<std::size_t>(h.twin)].origin)];
                const Rational t(1 + static_cast<long>(rng() % 7), 8);
                const Rational s = Rational(1) - t;
                out.push_back({dual_to({s * a.x + t * b.x, s * a.y + t * b.y}), kind});
                break;
            }
            case LineKind::OnVertex: {
                if (real_vertices.empty()) break;
                const Vertex& v = arr.vertices()[static_cast<std::size_t>(pick(real_vertices, rng))];
                out.push_back({dual_to({v.x, v.y}), kind});
                break;
            }
            case LineKind::Horizontal: {
                Rational c = ys.empty() || rng() % 3 == 0 ? random_rational(rng, 6) : pick(ys, rng);
                if (!ys.empty() && rng() % 4 == 0) c += Rational(1, 2);
                out.push_back({QueryLine::with_slope(Rational(0), c), kind});
                break;
            }
            case LineKind::Vertical: {
                Rational c = xs.empty() || rng() % 3 == 0 ? random_rational(rng, 6) : pick(xs, rng);
                if (!xs.empty() && rng() % 4 == 0) c -= Rational(1, 2);
                out.push_back({QueryLine::vertical(c), kind});
                break;
            }
            case LineKind::ThroughAnchor: {
                if (arr.anchors().empty()) break;
                const Grade& a = pick(arr.anchors(), rng).point;
                const Rational q = rng() % 5 == 0 ? Rational(0) : random_slope();
                out.push_back({QueryLine::with_slope(q, a.y - q * a.x), kind});
                break;
            }
            case LineKind::Random: {
                out.push_back({QueryLine::with_slope(random_slope(), random_rational(rng, 6)), kind});
                break;
            }
        }
    }
    return out;
}

std::optional<Mismatch> first_mismatch(const AugmentedArrangement& aug, const std::vector<SampledLine>& lines) {
    for (const SampledLine& s : lines) {
        Barcode fast = query_barcode(aug, s.line);
        Barcode oracle = oracle_barcode(aug.presentation(), s.line);
        if (fast != oracle) return Mismatch{s, std::move(fast), std::move(oracle)};
    }
    return std::nullopt;
}

}  // namespace fibarc
