#include "fibarc/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "fibarc/error.hpp"

namespace fibarc {

namespace {

using Point = std::pair<Rational, Rational>;

// 0 for directions in [0, pi), 1 for [pi, 2pi).
int half_plane(const Rational& dx, const Rational& dy) {
    if (dy.sign() > 0 || (dy.sign() == 0 && dx.sign() > 0)) return 0;
    return 1;
}

}  // namespace

std::string to_string(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::Face: return "face " + std::to_string(c.id);
        case Cell::Kind::Edge: return "edge " + std::to_string(c.id);
        case Cell::Kind::Vertex: return "vertex " + std::to_string(c.id);
    }
    return "cell";
}

Arrangement Arrangement::build(std::vector<Anchor> anchors) {
    std::sort(anchors.begin(), anchors.end(),
              [](const Anchor& a, const Anchor& b) { return LexLess{}(a.point, b.point); });
    anchors.erase(std::unique(anchors.begin(), anchors.end(),
                              [](const Anchor& a, const Anchor& b) { return a.point == b.point; }),
                  anchors.end());

    Arrangement arr;
    arr.anchors_ = std::move(anchors);
    for (const Anchor& a : arr.anchors_) arr.lines_.push_back(dual_line(a.point));
    const auto& lines = arr.lines_;
    const std::size_t n = lines.size();

    std::set<Point> real;
    std::vector<std::vector<Point>> on_line(n);
    for (std::size_t i = 0; i < n; ++i) {
        real.insert({Rational(0), lines[i].intercept});
        on_line[i].push_back({Rational(0), lines[i].intercept});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (lines[i].slope == lines[j].slope) continue;
            Rational x = (lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope);
            if (x.sign() < 0) continue;
            Point p{x, lines[i].at(x)};
            real.insert(p);
            on_line[i].push_back(p);
            on_line[j].push_back(p);
        }
    }

    Rational x_max(1);
    for (const Point& p : real) x_max = max(x_max, p.first);
    x_max += Rational(1);
    Rational y_lo(-1), y_hi(1);
    auto widen = [&](const Rational& y) {
        y_lo = min(y_lo, y - Rational(1));
        y_hi = max(y_hi, y + Rational(1));
    };
    for (const Point& p : real) widen(p.second);
    for (const PlaneLine& l : lines) widen(l.at(x_max));
    arr.box_ = {x_max, y_lo, y_hi};

    std::map<Point, int> id;
    auto add_vertex = [&](const Point& p, bool artificial) {
        auto [it, inserted] = id.emplace(p, static_cast<int>(arr.vertices_.size()));
        if (inserted) arr.vertices_.push_back({p.first, p.second, -1, artificial});
        return it->second;
    };
    for (const Point& p : real) add_vertex(p, false);
    const int bottom_left = add_vertex({Rational(0), y_lo}, true);
    const int top_left = add_vertex({Rational(0), y_hi}, true);
    const int bottom_right = add_vertex({x_max, y_lo}, true);
    const int top_right = add_vertex({x_max, y_hi}, true);

    std::vector<std::tuple<int, int, int>> segments;
    auto chain = [&](std::vector<int> ids, int tag, bool by_y) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            const Vertex& va = arr.vertices_[static_cast<std::size_t>(a)];
            const Vertex& vb = arr.vertices_[static_cast<std::size_t>(b)];
            return by_y ? va.y < vb.y : va.x < vb.x;
        });
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (std::size_t k = 1; k < ids.size(); ++k) segments.emplace_back(ids[k - 1], ids[k], tag);
    };

    std::vector<int> right_side = {bottom_right, top_right};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> ids;
        for (const Point& p : on_line[i]) ids.push_back(id.at(p));
        int end = add_vertex({x_max, lines[i].at(x_max)}, true);
        ids.push_back(end);
        right_side.push_back(end);
        chain(std::move(ids), static_cast<int>(i), false);
    }
    std::vector<int> left_side = {bottom_left, top_left};
    for (const Point& p : real) {
        if (p.first.sign() == 0) left_side.push_back(id.at(p));
    }
    chain(std::move(left_side), kBoundaryTag, true);
    chain(std::move(right_side), kBoxTag, true);
    chain({top_left, top_right}, kBoxTag, false);
    chain({bottom_left, bottom_right}, kBoxTag, false);

    auto& he = arr.half_edges_;
    he.resize(2 * segments.size());
    std::vector<std::vector<int>> outgoing(arr.vertices_.size());
    for (std::size_t k = 0; k < segments.size(); ++k) {
        auto [u, v, tag] = segments[k];
        const int a = static_cast<int>(2 * k);
        const int b = a + 1;
        he[static_cast<std::size_t>(a)] = {u, b, -1, -1, -1, tag};
        he[static_cast<std::size_t>(b)] = {v, a, -1, -1, -1, tag};
        outgoing[static_cast<std::size_t>(u)].push_back(a);
        outgoing[static_cast<std::size_t>(v)].push_back(b);
    }

    auto direction = [&](int h) {
        const Vertex& o = arr.vertices_[static_cast<std::size_t>(he[static_cast<std::size_t>(h)].origin)];
        const Vertex& d =
            arr.vertices_[static_cast<std::size_t>(he[static_cast<std::size_t>(he[static_cast<std::size_t>(h)].twin)].origin)];
        return std::pair<Rational, Rational>{d.x - o.x, d.y - o.y};
    };
    for (std::size_t v = 0; v < outgoing.size(); ++v) {
        auto& out = outgoing[v];
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            auto [ax, ay] = direction(a);
            auto [bx, by] = direction(b);
            const int ha = half_plane(ax, ay);
            const int hb = half_plane(bx, by);
            if (ha != hb) return ha < hb;
            return (ax * by - ay * bx).sign() > 0;
        });
        if (!out.empty()) arr.vertices_[v].half_edge = out.front();
    }
    for (std::size_t v = 0; v < outgoing.size(); ++v) {
        const auto& out = outgoing[v];
        for (std::size_t k = 0; k < out.size(); ++k) {
            // The half-edge arriving along twin(out[k]) continues with the
            // outgoing edge immediately clockwise from out[k].
            const int incoming = he[static_cast<std::size_t>(out[k])].twin;
            const int following = out[(k + out.size() - 1) % out.size()];
            he[static_cast<std::size_t>(incoming)].next = following;
            he[static_cast<std::size_t>(following)].prev = incoming;
        }
    }

    std::vector<bool> seen(he.size(), false);
    for (std::size_t start = 0; start < he.size(); ++start) {
        if (seen[start]) continue;
        std::vector<int> cycle;
        int h = static_cast<int>(start);
        do {
            seen[static_cast<std::size_t>(h)] = true;
            cycle.push_back(h);
            h = he[static_cast<std::size_t>(h)].next;
        } while (h != static_cast<int>(start));

        Rational area2;
        Rational sx, sy;
        bool unbounded = false;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const Vertex& a = arr.vertices_[static_cast<std::size_t>(he[static_cast<std::size_t>(cycle[k])].origin)];
            const Vertex& b =
                arr.vertices_[static_cast<std::size_t>(he[static_cast<std::size_t>(cycle[(k + 1) % cycle.size()])].origin)];
            area2 += a.x * b.y - b.x * a.y;
            sx += a.x;
            sy += a.y;
            if (he[static_cast<std::size_t>(cycle[k])].tag == kBoxTag) unbounded = true;
        }
        if (area2.sign() <= 0) continue;  // the outer cycle of the box
        const int face = static_cast<int>(arr.faces_.size());
        const Rational count(static_cast<long>(cycle.size()));
        arr.faces_.push_back({cycle.front(), unbounded, {sx / count, sy / count}});
        for (int c : cycle) he[static_cast<std::size_t>(c)].face = face;
    }

    arr.finalize();
    return arr;
}

Arrangement Arrangement::from_parts(std::vector<Anchor> anchors, Box box, std::vector<Vertex> vertices,
                                    std::vector<HalfEdge> half_edges, std::vector<Face> faces) {
    const int nv = static_cast<int>(vertices.size());
    const int nh = static_cast<int>(half_edges.size());
    const int nf = static_cast<int>(faces.size());
    const int nl = static_cast<int>(anchors.size());
    auto in = [](int v, int lo, int hi) { return v >= lo && v < hi; };
    for (const HalfEdge& h : half_edges) {
        if (!in(h.origin, 0, nv) || !in(h.twin, 0, nh) || !in(h.next, 0, nh) || !in(h.prev, 0, nh) ||
            !in(h.face, -1, nf) || !in(h.tag, kBoxTag, nl)) {
            throw PreconditionError("arrangement half-edge references out of range");
        }
    }
    for (const Vertex& v : vertices) {
        if (!in(v.half_edge, -1, nh)) throw PreconditionError("arrangement vertex references out of range");
    }
    for (const Face& f : faces) {
        if (!in(f.half_edge, 0, nh)) throw PreconditionError("arrangement face references out of range");
    }
    if (nf == 0) throw PreconditionError("arrangement without faces");

    Arrangement arr;
    arr.anchors_ = std::move(anchors);
    for (const Anchor& a : arr.anchors_) arr.lines_.push_back(dual_line(a.point));
    arr.box_ = std::move(box);
    arr.vertices_ = std::move(vertices);
    arr.half_edges_ = std::move(half_edges);
    arr.faces_ = std::move(faces);
    arr.finalize();
    auto problems = arr.audit();
    if (!problems.empty()) throw PreconditionError("invalid arrangement: " + problems.front());
    return arr;
}

void Arrangement::finalize() {
    real_vertices_ = static_cast<std::size_t>(
        std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return !v.artificial; }));
    build_edges();
    build_locator();
}

void Arrangement::build_edges() {
    edges_.clear();
    boundary_edge_above_.assign(vertices_.size(), -1);
    boundary_edge_below_.assign(vertices_.size(), -1);
    boundary_vertex_of_line_.assign(lines_.size(), -1);
    boundary_bottom_edge_ = -1;
    auto real_or_none = [&](int v) { return vertices_[static_cast<std::size_t>(v)].artificial ? -1 : v; };
    for (std::size_t h = 0; h < half_edges_.size(); ++h) {
        const HalfEdge& e = half_edges_[h];
        if (e.tag == kBoxTag || static_cast<int>(h) > e.twin) continue;
        const HalfEdge& t = half_edges_[static_cast<std::size_t>(e.twin)];
        const Vertex& a = vertices_[static_cast<std::size_t>(e.origin)];
        const Vertex& b = vertices_[static_cast<std::size_t>(t.origin)];
        Edge edge;
        edge.line = e.tag;
        const int id = static_cast<int>(edges_.size());
        if (e.tag == kBoundaryTag) {
            const bool down = b.y < a.y;
            edge.half_edge = down ? static_cast<int>(h) : e.twin;
            const HalfEdge& d = half_edges_[static_cast<std::size_t>(edge.half_edge)];
            edge.face_a = d.face;
            edge.v1 = real_or_none(d.origin);
            edge.v0 = real_or_none(half_edges_[static_cast<std::size_t>(d.twin)].origin);
            if (edge.v0 >= 0) boundary_edge_above_[static_cast<std::size_t>(edge.v0)] = id;
            if (edge.v1 >= 0) boundary_edge_below_[static_cast<std::size_t>(edge.v1)] = id;
            if (edge.v0 < 0) boundary_bottom_edge_ = id;
        } else {
            const bool rightward = a.x < b.x;
            edge.half_edge = rightward ? static_cast<int>(h) : e.twin;
            const HalfEdge& r = half_edges_[static_cast<std::size_t>(edge.half_edge)];
            edge.face_a = r.face;
            edge.face_b = half_edges_[static_cast<std::size_t>(r.twin)].face;
            edge.v0 = real_or_none(r.origin);
            edge.v1 = real_or_none(half_edges_[static_cast<std::size_t>(r.twin)].origin);
            if (edge.v0 >= 0 && vertices_[static_cast<std::size_t>(edge.v0)].x.sign() == 0) {
                boundary_vertex_of_line_[static_cast<std::size_t>(e.tag)] = edge.v0;
            }
        }
        edges_.push_back(edge);
    }
}

void Arrangement::build_locator() {
    slab_x_.clear();
    slabs_.clear();
    vertical_index_.clear();
    for (const Vertex& v : vertices_) {
        if (!v.artificial) slab_x_.push_back(v.x);
    }
    std::sort(slab_x_.begin(), slab_x_.end());
    slab_x_.erase(std::unique(slab_x_.begin(), slab_x_.end()), slab_x_.end());

    if (lines_.empty()) {
        slabs_.push_back({{}, {}, {0}});
        return;
    }
    if (slab_x_.empty() || slab_x_.front().sign() != 0) throw InternalError("lines without boundary vertices");

    std::vector<std::vector<int>> line_edges(lines_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].line >= 0) line_edges[static_cast<std::size_t>(edges_[e].line)].push_back(static_cast<int>(e));
    }
    auto left_x = [&](int e) -> const Rational& { return vertices_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].v0)].x; };
    for (auto& list : line_edges) {
        if (list.empty()) throw InternalError("line without edges");
        std::sort(list.begin(), list.end(), [&](int a, int b) { return left_x(a) < left_x(b); });
    }

    std::vector<std::size_t> cursor(lines_.size(), 0);
    for (std::size_t s = 0; s < slab_x_.size(); ++s) {
        const Rational sample =
            s + 1 < slab_x_.size() ? (slab_x_[s] + slab_x_[s + 1]) / Rational(2) : slab_x_[s] + Rational(1);
        Slab slab;
        slab.order.resize(lines_.size());
        for (std::size_t i = 0; i < lines_.size(); ++i) slab.order[i] = static_cast<int>(i);
        std::vector<Rational> value(lines_.size());
        for (std::size_t i = 0; i < lines_.size(); ++i) value[i] = lines_[i].at(sample);
        std::sort(slab.order.begin(), slab.order.end(),
                  [&](int a, int b) { return value[static_cast<std::size_t>(a)] < value[static_cast<std::size_t>(b)]; });
        for (int line : slab.order) {
            auto& list = line_edges[static_cast<std::size_t>(line)];
            auto& c = cursor[static_cast<std::size_t>(line)];
            while (c + 1 < list.size() && left_x(list[c + 1]) <= slab_x_[s]) ++c;
            slab.edge.push_back(list[c]);
        }
        slab.gap.push_back(edges_[static_cast<std::size_t>(slab.edge.front())].face_b);
        for (std::size_t k = 0; k < slab.edge.size(); ++k) {
            const Edge& e = edges_[static_cast<std::size_t>(slab.edge[k])];
            if (k > 0 && e.face_b != slab.gap.back()) throw InternalError("slab faces disagree between adjacent lines");
            slab.gap.push_back(e.face_a);
        }
        slabs_.push_back(std::move(slab));
    }

    const Slab& last = slabs_.back();
    for (std::size_t k = 0; k < last.order.size(); ++k) {
        const auto& line = lines_[static_cast<std::size_t>(last.order[k])];
        const bool top_of_group =
            k + 1 == last.order.size() || lines_[static_cast<std::size_t>(last.order[k + 1])].slope != line.slope;
        if (top_of_group) vertical_index_.push_back({last.order[k], last.edge[k]});
    }
}

Cell Arrangement::locate(const Grade& p, std::size_t* comparisons) const {
    std::size_t count = 0;
    auto finish = [&](Cell c) {
        if (comparisons) *comparisons += count;
        return c;
    };
    ++count;
    const int sx = p.x.sign();
    if (sx < 0) throw DomainError("point " + p.to_string() + " lies outside the half-plane x >= 0");

    if (lines_.empty()) {
        if (sx == 0) return finish({Cell::Kind::Edge, 0});
        return finish({Cell::Kind::Face, 0});
    }

    std::size_t s = 0;
    bool on_boundary = sx == 0;
    if (!on_boundary) {
        auto it = std::upper_bound(slab_x_.begin(), slab_x_.end(), p.x, [&](const Rational& a, const Rational& b) {
            ++count;
            return a < b;
        });
        s = static_cast<std::size_t>(it - slab_x_.begin()) - 1;
        ++count;
        on_boundary = slab_x_[s] == p.x;
    }
    const Slab& slab = slabs_[s];
    auto it = std::lower_bound(slab.order.begin(), slab.order.end(), p.y, [&](int line, const Rational& y) {
        ++count;
        return lines_[static_cast<std::size_t>(line)].at(p.x) < y;
    });
    const std::size_t g = static_cast<std::size_t>(it - slab.order.begin());
    bool on_line = false;
    if (it != slab.order.end()) {
        ++count;
        on_line = lines_[static_cast<std::size_t>(*it)].at(p.x) == p.y;
    }

    if (sx == 0) {
        if (on_line) return finish({Cell::Kind::Vertex, boundary_vertex_of_line_[static_cast<std::size_t>(*it)]});
        if (g == 0) return finish({Cell::Kind::Edge, boundary_bottom_edge_});
        const int below = boundary_vertex_of_line_[static_cast<std::size_t>(slab.order[g - 1])];
        return finish({Cell::Kind::Edge, boundary_edge_above_[static_cast<std::size_t>(below)]});
    }
    if (on_line) {
        const int e = slab.edge[g];
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (on_boundary) {
            ++count;
            if (vertices_[static_cast<std::size_t>(edge.v0)].x == p.x) return finish({Cell::Kind::Vertex, edge.v0});
        }
        return finish({Cell::Kind::Edge, e});
    }
    return finish({Cell::Kind::Face, slab.gap[g]});
}

std::vector<int> Arrangement::cofaces(const Cell& c) const {
    std::vector<int> out;
    switch (c.kind) {
        case Cell::Kind::Face: out.push_back(c.id); break;
        case Cell::Kind::Edge: {
            const Edge& e = edges_.at(static_cast<std::size_t>(c.id));
            out.push_back(e.face_a);
            if (e.face_b >= 0) out.push_back(e.face_b);
            break;
        }
        case Cell::Kind::Vertex: {
            const int start = vertices_.at(static_cast<std::size_t>(c.id)).half_edge;
            int h = start;
            do {
                const HalfEdge& e = half_edges_[static_cast<std::size_t>(h)];
                if (e.face >= 0) out.push_back(e.face);
                h = half_edges_[static_cast<std::size_t>(e.prev)].twin;
            } while (h != start);
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int Arrangement::top_face() const { return slabs_.front().gap.back(); }

int Arrangement::vertical_face(const Rational& c, std::size_t* comparisons) const {
    std::size_t count = 0;
    auto it = std::upper_bound(vertical_index_.begin(), vertical_index_.end(), c,
                               [&](const Rational& value, const VerticalEntry& entry) {
                                   ++count;
                                   return value < lines_[static_cast<std::size_t>(entry.line)].slope;
                               });
    if (comparisons) *comparisons += count;
    if (it == vertical_index_.begin()) return slabs_.back().gap.front();
    return edges_[static_cast<std::size_t>(std::prev(it)->edge)].face_a;
}

int Arrangement::boundary_edge_below(int vertex) const {
    if (vertex < 0 || static_cast<std::size_t>(vertex) >= vertices_.size() ||
        boundary_edge_below_[static_cast<std::size_t>(vertex)] < 0) {
        throw PreconditionError("vertex is not on the boundary x = 0");
    }
    return boundary_edge_below_[static_cast<std::size_t>(vertex)];
}

std::vector<std::string> Arrangement::audit() const {
    std::vector<std::string> out;
    const std::size_t nh = half_edges_.size();
    for (std::size_t h = 0; h < nh; ++h) {
        const HalfEdge& e = half_edges_[h];
        const HalfEdge& t = half_edges_[static_cast<std::size_t>(e.twin)];
        if (static_cast<std::size_t>(t.twin) != h) out.push_back("twin of twin differs at half-edge " + std::to_string(h));
        if (e.twin == static_cast<int>(h)) out.push_back("half-edge " + std::to_string(h) + " is its own twin");
        if (t.tag != e.tag) out.push_back("twin tags differ at half-edge " + std::to_string(h));
        if (static_cast<std::size_t>(half_edges_[static_cast<std::size_t>(e.next)].prev) != h) {
            out.push_back("next/prev mismatch at half-edge " + std::to_string(h));
        }
        if (half_edges_[static_cast<std::size_t>(e.next)].origin != t.origin) {
            out.push_back("face cycle not closed at half-edge " + std::to_string(h));
        }
        if (half_edges_[static_cast<std::size_t>(e.next)].face != e.face) {
            out.push_back("face label changes along cycle at half-edge " + std::to_string(h));
        }
    }
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        if (half_edges_[static_cast<std::size_t>(faces_[f].half_edge)].face != static_cast<int>(f)) {
            out.push_back("face " + std::to_string(f) + " does not own its half-edge");
        }
        std::size_t steps = 0;
        int h = faces_[f].half_edge;
        do {
            h = half_edges_[static_cast<std::size_t>(h)].next;
            if (++steps > nh) {
                out.push_back("face " + std::to_string(f) + " cycle does not close");
                break;
            }
        } while (h != faces_[f].half_edge);
    }
    for (const Edge& e : edges_) {
        if (e.line == kBoundaryTag) {
            if (e.face_a < 0) out.push_back("boundary edge without a face in H");
        } else if (e.face_a < 0 || e.face_b < 0 || e.face_a == e.face_b) {
            out.push_back("line edge does not separate two faces");
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const Vertex& vert = vertices_[v];
        if (vert.x.sign() < 0) out.push_back("vertex " + std::to_string(v) + " lies outside H");
        if (vert.half_edge < 0 || half_edges_[static_cast<std::size_t>(vert.half_edge)].origin != static_cast<int>(v)) {
            out.push_back("vertex " + std::to_string(v) + " has no outgoing half-edge");
        }
        if (!vert.artificial && !(vert.x < box_.x_max && box_.y_min < vert.y && vert.y < box_.y_max)) {
            out.push_back("vertex " + std::to_string(v) + " lies outside the clipping box");
        }
    }
    for (const HalfEdge& e : half_edges_) {
        const Vertex& a = vertices_[static_cast<std::size_t>(e.origin)];
        const Vertex& b = vertices_[static_cast<std::size_t>(half_edges_[static_cast<std::size_t>(e.twin)].origin)];
        if (e.tag >= 0) {
            const PlaneLine& l = lines_[static_cast<std::size_t>(e.tag)];
            if (l.at(a.x) != a.y || l.at(b.x) != b.y) out.push_back("line half-edge off its line");
        } else if (e.tag == kBoundaryTag && (a.x.sign() != 0 || b.x.sign() != 0)) {
            out.push_back("boundary half-edge off x = 0");
        }
    }
    // Euler's formula for the connected plane graph, counting the outside.
    const long euler = static_cast<long>(vertices_.size()) - static_cast<long>(nh / 2) + static_cast<long>(faces_.size()) + 1;
    if (euler != 2) out.push_back("Euler characteristic is " + std::to_string(euler));
    return out;
}

std::vector<Grade> face_polygon(const Arrangement& arr, int face) {
    std::vector<Grade> out;
    const Face& f = arr.faces().at(static_cast<std::size_t>(face));
    int h = f.half_edge;
    do {
        const HalfEdge& he = arr.half_edges()[static_cast<std::size_t>(h)];
        const Vertex& v = arr.vertices()[static_cast<std::size_t>(he.origin)];
        out.push_back({v.x, v.y});
        h = he.next;
    } while (h != f.half_edge);
    return out;
}

}  // namespace fibarc
