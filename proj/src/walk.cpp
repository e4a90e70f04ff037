#include "fibarc/walk.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fibarc/error.hpp"

namespace fibarc {

namespace {

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<int> rank_;
};

}  // namespace

DualGraph dual_graph(const Arrangement& arr) {
    DualGraph g;
    g.num_faces = static_cast<int>(arr.num_faces());
    std::map<std::pair<int, int>, int> seen;
    for (const Edge& e : arr.edges()) {
        if (e.line < 0) continue;
        std::pair<int, int> key = std::minmax(e.face_a, e.face_b);
        if (seen.emplace(key, static_cast<int>(g.edges.size())).second) {
            g.edges.push_back({key.first, key.second, e.line, 0});
        }
    }
    return g;
}

std::vector<int> minimum_spanning_tree(const DualGraph& g) {
    std::vector<int> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return g.edges[static_cast<std::size_t>(a)].weight < g.edges[static_cast<std::size_t>(b)].weight;
    });
    DisjointSets sets(static_cast<std::size_t>(g.num_faces));
    std::vector<int> tree;
    for (int k : order) {
        const DualEdge& e = g.edges[static_cast<std::size_t>(k)];
        if (sets.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b))) tree.push_back(k);
    }
    if (g.num_faces > 0 && tree.size() + 1 != static_cast<std::size_t>(g.num_faces)) {
        throw InternalError("dual graph is disconnected");
    }
    return tree;
}

Walk mst_walk(const DualGraph& g, int start) {
    if (start < 0 || start >= g.num_faces) throw PreconditionError("walk start is not a face");
    const auto tree = minimum_spanning_tree(g);
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.num_faces));
    for (int k : tree) {
        const DualEdge& e = g.edges[static_cast<std::size_t>(k)];
        adj[static_cast<std::size_t>(e.a)].push_back({e.b, k});
        adj[static_cast<std::size_t>(e.b)].push_back({e.a, k});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());

    Walk w;
    w.faces.push_back(start);
    struct Frame {
        int face;
        int via;
        std::size_t child;
    };
    std::vector<Frame> stack = {{start, -1, 0}};
    std::vector<bool> visited(static_cast<std::size_t>(g.num_faces), false);
    visited[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
        Frame& top = stack.back();
        const auto& list = adj[static_cast<std::size_t>(top.face)];
        if (top.child < list.size()) {
            auto [next, edge] = list[top.child++];
            if (visited[static_cast<std::size_t>(next)]) continue;
            visited[static_cast<std::size_t>(next)] = true;
            w.faces.push_back(next);
            w.steps.push_back(edge);
            stack.push_back({next, edge, 0});
            continue;
        }
        const Frame done = top;
        stack.pop_back();
        if (!stack.empty()) {
            w.faces.push_back(stack.back().face);
            w.steps.push_back(done.via);
        }
    }
    // The walk does not need to return to the start.
    std::size_t last_new = 0;
    std::vector<bool> first(static_cast<std::size_t>(g.num_faces), false);
    for (std::size_t k = 0; k < w.faces.size(); ++k) {
        if (!first[static_cast<std::size_t>(w.faces[k])]) {
            first[static_cast<std::size_t>(w.faces[k])] = true;
            last_new = k;
        }
    }
    w.faces.resize(last_new + 1);
    w.steps.resize(last_new);
    return w;
}

std::uint64_t walk_weight(const DualGraph& g, const Walk& w) {
    std::uint64_t total = 0;
    for (int k : w.steps) total += g.edges[static_cast<std::size_t>(k)].weight;
    return total;
}

std::uint64_t tree_weight(const DualGraph& g, const std::vector<int>& tree) {
    std::uint64_t total = 0;
    for (int k : tree) total += g.edges[static_cast<std::size_t>(k)].weight;
    return total;
}

std::vector<std::string> audit_walk(const DualGraph& g, const Walk& w, int start) {
    std::vector<std::string> out;
    if (w.faces.empty() || w.faces.front() != start) out.push_back("walk does not start at the initial face");
    if (w.steps.size() + 1 != w.faces.size()) {
        out.push_back("walk step count does not match its face count");
        return out;
    }
    std::vector<bool> visited(static_cast<std::size_t>(g.num_faces), false);
    std::vector<int> uses(g.edges.size(), 0);
    for (std::size_t k = 0; k < w.faces.size(); ++k) {
        const int f = w.faces[k];
        if (f < 0 || f >= g.num_faces) {
            out.push_back("walk visits a nonexistent face");
            return out;
        }
        visited[static_cast<std::size_t>(f)] = true;
        if (k == 0) continue;
        const int s = w.steps[k - 1];
        if (s < 0 || static_cast<std::size_t>(s) >= g.edges.size()) {
            out.push_back("walk uses a nonexistent edge");
            return out;
        }
        const DualEdge& e = g.edges[static_cast<std::size_t>(s)];
        const int prev = w.faces[k - 1];
        if (!((e.a == prev && e.b == f) || (e.b == prev && e.a == f))) {
            out.push_back("walk step " + std::to_string(k) + " does not follow a dual edge");
        }
        if (++uses[static_cast<std::size_t>(s)] == 3) out.push_back("dual edge " + std::to_string(s) + " used more than twice");
    }
    for (int f = 0; f < g.num_faces; ++f) {
        if (!visited[static_cast<std::size_t>(f)]) out.push_back("face " + std::to_string(f) + " never visited");
    }
    return out;
}

}  // namespace fibarc
