#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibarc/arrangement.hpp"

namespace fibarc {

struct DualEdge {
    int a = -1;
    int b = -1;
    int line = -1;  // anchor line shared by the two faces
    std::uint64_t weight = 0;

    friend bool operator==(const DualEdge&, const DualEdge&) = default;
};

/// Faces as nodes, one edge per pair of faces sharing a line segment.
struct DualGraph {
    int num_faces = 0;
    std::vector<DualEdge> edges;

    friend bool operator==(const DualGraph&, const DualGraph&) = default;
};

/// Unweighted dual graph; edges ordered by first appearance along the edge list.
DualGraph dual_graph(const Arrangement& arr);

/// Sequence of faces with the dual edge used for each step
/// (`steps[k]` moves from faces[k] to faces[k+1]).
struct Walk {
    std::vector<int> faces;
    std::vector<int> steps;

    friend bool operator==(const Walk&, const Walk&) = default;
};

/// Kruskal minimum spanning tree; returns the dual-edge indices of the tree.
/// Throws InternalError when the graph is disconnected.
std::vector<int> minimum_spanning_tree(const DualGraph& g);

/// Depth-first traversal of the minimum spanning tree from `start`. Children
/// are visited in increasing face order and trailing returns are dropped.
Walk mst_walk(const DualGraph& g, int start);

std::uint64_t walk_weight(const DualGraph& g, const Walk& w);
std::uint64_t tree_weight(const DualGraph& g, const std::vector<int>& tree);

/// Problems with a walk: wrong start, a face never visited, consecutive faces
/// not joined by the recorded edge, an edge used more than twice.
std::vector<std::string> audit_walk(const DualGraph& g, const Walk& w, int start);

}  // namespace fibarc
