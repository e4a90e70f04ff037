#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fibarc/anchors.hpp"
#include "fibarc/grade.hpp"
#include "fibarc/line.hpp"

namespace fibarc {

/// Half-edge tags below zero; nonnegative tags are line indices.
inline constexpr int kBoundaryTag = -1;  // on the boundary x = 0 of H
inline constexpr int kBoxTag = -2;       // on the clipping box, not a real 1-cell

struct Vertex {
    Rational x;
    Rational y;
    int half_edge = -1;  // one outgoing half-edge
    bool artificial = false;  // clipping-box corner or crossing, not a real 0-cell
};

struct HalfEdge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int prev = -1;
    int face = -1;  // -1 outside the box
    int tag = kBoxTag;

    friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

struct Face {
    int half_edge = -1;
    bool unbounded = false;
    Grade rep;  // strictly interior sample point

    friend bool operator==(const Face&, const Face&) = default;
};

/// A real 1-cell: a piece of an anchor line or of the boundary x = 0.
struct Edge {
    int line = kBoundaryTag;
    int half_edge = -1;  // left to right on lines, downward on the boundary
    int face_a = -1;     // above the line, or the H side of the boundary
    int face_b = -1;     // below the line; -1 on the boundary
    int v0 = -1;         // left (lower) endpoint, -1 when unbounded
    int v1 = -1;         // right (upper) endpoint, -1 when unbounded
};

struct Cell {
    enum class Kind { Face, Edge, Vertex };
    Kind kind = Kind::Face;
    int id = -1;

    friend bool operator==(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& c);

/// Clipping box [0, x_max] × [y_min, y_max] containing every real vertex in
/// its interior (apart from x = 0).
struct Box {
    Rational x_max;
    Rational y_min;
    Rational y_max;

    friend bool operator==(const Box&, const Box&) = default;
};

/// Arrangement of the lines dual to a set of anchors, restricted to
/// H = [0,∞) × ℝ and stored as a DCEL clipped to a box. Carries a slab
/// point locator and the index used for vertical query lines.
class Arrangement {
  public:
    Arrangement() = default;

    static Arrangement build(std::vector<Anchor> anchors);

    /// Reassembles a stored arrangement and rebuilds the derived indices.
    /// Throws PreconditionError when the parts do not form a valid DCEL.
    static Arrangement from_parts(std::vector<Anchor> anchors, Box box, std::vector<Vertex> vertices,
                                  std::vector<HalfEdge> half_edges, std::vector<Face> faces);

    const std::vector<Anchor>& anchors() const { return anchors_; }
    const std::vector<PlaneLine>& lines() const { return lines_; }
    const Box& box() const { return box_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<HalfEdge>& half_edges() const { return half_edges_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t num_lines() const { return lines_.size() + 1; }  // including x = 0
    std::size_t num_vertices() const { return real_vertices_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    /// Open cell containing p; throws DomainError when p.x < 0. Adds the
    /// number of coordinate comparisons made to `*comparisons` when given.
    Cell locate(const Grade& p, std::size_t* comparisons = nullptr) const;

    /// Faces whose closure contains the cell.
    std::vector<int> cofaces(const Cell& c) const;

    /// The face lying above every line.
    int top_face() const;

    /// Face used for the vertical line x = c: the face directly above the
    /// rightmost edge of the highest line among those of maximal slope at
    /// most c, or the face below every line far to the right.
    int vertical_face(const Rational& c, std::size_t* comparisons = nullptr) const;

    /// Entries of the vertical index: for each distinct slope, the line with
    /// the largest intercept and its rightmost edge, sorted by slope.
    struct VerticalEntry {
        int line;
        int edge;
    };
    const std::vector<VerticalEntry>& vertical_index() const { return vertical_index_; }

    /// The boundary edge directly below a vertex on x = 0.
    int boundary_edge_below(int vertex) const;

    /// Structural problems; empty for a valid arrangement.
    std::vector<std::string> audit() const;

  private:
    void finalize();
    void build_edges();
    void build_locator();

    std::vector<Anchor> anchors_;
    std::vector<PlaneLine> lines_;
    Box box_;
    std::vector<Vertex> vertices_;
    std::vector<HalfEdge> half_edges_;
    std::vector<Face> faces_;

    // derived
    std::size_t real_vertices_ = 0;
    std::vector<Edge> edges_;
    std::vector<Rational> slab_x_;
    struct Slab {
        std::vector<int> order;  // line ids bottom to top
        std::vector<int> edge;   // edge of order[k] within the slab
        std::vector<int> gap;    // face between order[k-1] and order[k]; size order.size()+1
    };
    std::vector<Slab> slabs_;
    std::vector<int> boundary_vertex_of_line_;
    std::vector<int> boundary_edge_above_;  // per vertex, -1 unless on x = 0
    std::vector<int> boundary_edge_below_;
    int boundary_bottom_edge_ = -1;
    std::vector<VerticalEntry> vertical_index_;
};

/// Corners of a face clipped to the box, in boundary-cycle order. Faces are
/// convex, so every positive combination of the corners lies inside.
std::vector<Grade> face_polygon(const Arrangement& arr, int face);

}  // namespace fibarc
