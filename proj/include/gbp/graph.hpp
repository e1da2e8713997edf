#ifndef GBP_GRAPH_HPP
#define GBP_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbp/error.hpp"

namespace gbp {

using Vertex = std::uint32_t;
using Distance = std::uint32_t;

/// Sentinel distance for unreachable vertices and disconnected diameters.
inline constexpr Distance kInfinite = std::numeric_limits<Distance>::max();

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Unordered vertex pair, stored with `u <= v`.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    constexpr Edge() = default;
    constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    [[nodiscard]] constexpr Vertex other(Vertex x) const { return x == u ? v : u; }
    [[nodiscard]] constexpr bool contains(Vertex x) const { return x == u || x == v; }

    constexpr auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

inline std::string to_string(const Edge& e) {
    return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

inline VertexSet normalized(std::span<const Vertex> vertices) {
    VertexSet out(vertices.begin(), vertices.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Simple undirected graph on the dense id range 0..n-1.
///
/// Edges are kept sorted; adjacency lists are sorted ascending so that every
/// traversal visits ties in increasing id order.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : n_(n), adjacency_(n) {}

    Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adjacency_(n) {
        for (const Edge& e : edges_) {
            if (e.u == e.v) {
                throw InputError(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(e.u));
            }
            if (e.v >= n_) {
                throw InputError(ErrorCode::kVertexOutOfRange,
                                 "edge " + to_string(e) + " exceeds n=" + std::to_string(n_));
            }
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end()) {
            throw InputError(ErrorCode::kDuplicateEdge, "edge " + to_string(*dup) + " listed twice");
        }
        for (const Edge& e : edges_) {
            adjacency_[e.u].push_back(e.v);
            adjacency_[e.v].push_back(e.u);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
        }
    }

    Graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs)
        : Graph(n, to_edges(pairs)) {}

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return edges_.size(); }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    [[nodiscard]] std::size_t max_degree() const {
        std::size_t best = 0;
        for (const auto& list : adjacency_) {
            best = std::max(best, list.size());
        }
        return best;
    }

    [[nodiscard]] bool has_edge(Vertex a, Vertex b) const {
        if (a >= n_ || b >= n_ || a == b) {
            return false;
        }
        const auto& list = adjacency_[a];
        return std::binary_search(list.begin(), list.end(), b);
    }

    /// Position of `e` in `edges()`, if present.
    [[nodiscard]] std::optional<std::size_t> edge_index(const Edge& e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - edges_.begin());
    }

    void check_vertex(Vertex v) const {
        if (v >= n_) {
            throw InputError(ErrorCode::kVertexOutOfRange,
                             "vertex " + std::to_string(v) + " not below n=" + std::to_string(n_));
        }
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    static std::vector<Edge> to_edges(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
        std::vector<Edge> out;
        out.reserve(pairs.size());
        for (auto [a, b] : pairs) {
            if (a == b) {
                throw InputError(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(a));
            }
            out.emplace_back(a, b);
        }
        return out;
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

/// Hop distances from `source`, cut off after `limit` hops (beyond it: kInfinite).
inline std::vector<Distance> bfs_bounded(const Graph& g, Vertex source, Distance limit) {
    g.check_vertex(source);
    std::vector<Distance> dist(g.n(), kInfinite);
    std::vector<Vertex> frontier{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        Vertex u = frontier[head];
        if (dist[u] >= limit) {
            continue;
        }
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kInfinite) {
                dist[w] = dist[u] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

inline std::vector<Distance> bfs_distances(const Graph& g, Vertex source) {
    return bfs_bounded(g, source, kInfinite);
}

inline void check_distance_bound(std::size_t d) {
    if (d == 0) {
        throw InputError(ErrorCode::kInvalidDistance, "distance bound must be at least 1");
    }
}

/// Graph on the same vertices joining every pair at distance 1..d.
inline Graph power_graph(const Graph& g, std::size_t d) {
    check_distance_bound(d);
    if (d == 1) {
        return g;
    }
    std::vector<Edge> edges;
    const auto limit = static_cast<Distance>(std::min<std::size_t>(d, kInfinite - 1));
    for (Vertex v = 0; v < g.n(); ++v) {
        auto dist = bfs_bounded(g, v, limit);
        for (Vertex w = v + 1; w < g.n(); ++w) {
            if (dist[w] != kInfinite) {
                edges.emplace_back(v, w);
            }
        }
    }
    return Graph(g.n(), std::move(edges));
}

struct EdgeSubgraph {
    Graph graph;       ///< all n vertices, edge set F
    VertexSet covered; ///< V(F)
};

/// The subgraph formed by F. Keeps every vertex so uncovered ones stay visible as isolated.
inline EdgeSubgraph edge_subgraph(const Graph& g, const EdgeSet& selected) {
    std::vector<Edge> edges;
    edges.reserve(selected.size());
    VertexSet covered;
    for (const Edge& e : selected) {
        if (!g.has_edge(e.u, e.v)) {
            throw InputError(ErrorCode::kNotAnEdge, to_string(e) + " is not an edge of the graph");
        }
        edges.push_back(e);
        covered.push_back(e.u);
        covered.push_back(e.v);
    }
    return {Graph(g.n(), std::move(edges)), normalized(covered)};
}

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> original_ids; ///< new id -> id in the parent graph
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
    VertexSet keep = normalized(subset);
    std::vector<Vertex> local(g.n(), kInfinite);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        g.check_vertex(keep[i]);
        local[keep[i]] = static_cast<Vertex>(i);
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (local[e.u] != kInfinite && local[e.v] != kInfinite) {
            edges.emplace_back(local[e.u], local[e.v]);
        }
    }
    return {Graph(keep.size(), std::move(edges)), std::move(keep)};
}

/// Component label per vertex; labels are numbered in order of smallest member.
inline std::vector<std::size_t> connected_components(const Graph& g) {
    constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> label(g.n(), kUnset);
    std::size_t next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (label[s] != kUnset) {
            continue;
        }
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (label[w] == kUnset) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

/// Whether the subgraph induced by `subset` is connected (sets of size <= 1 are).
inline bool is_connected_on(const Graph& g, std::span<const Vertex> subset) {
    if (subset.size() <= 1) {
        if (!subset.empty()) {
            g.check_vertex(subset.front());
        }
        return true;
    }
    auto sub = induced_subgraph(g, subset);
    auto label = connected_components(sub.graph);
    return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

inline Distance diameter_of(const Graph& g) {
    Distance best = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        for (Distance d : bfs_distances(g, v)) {
            if (d == kInfinite) {
                return kInfinite;
            }
            best = std::max(best, d);
        }
    }
    return best;
}

/// N^d[v]: every vertex within d hops of v, including v.
inline VertexSet closed_d_neighborhood(const Graph& g, Vertex v, std::size_t d) {
    check_distance_bound(d);
    const auto limit = static_cast<Distance>(std::min<std::size_t>(d, kInfinite - 1));
    auto dist = bfs_bounded(g, v, limit);
    VertexSet out;
    for (Vertex w = 0; w < g.n(); ++w) {
        if (dist[w] != kInfinite) {
            out.push_back(w);
        }
    }
    return out;
}

/// N(v) ⊆ N(w) on open neighborhoods.
inline bool neighborhood_dominated(const Graph& g, Vertex v, Vertex w) {
    g.check_vertex(v);
    g.check_vertex(w);
    if (v == w) {
        throw InputError(ErrorCode::kInvalidArgument, "domination test needs distinct vertices");
    }
    auto nv = g.neighbors(v);
    auto nw = g.neighbors(w);
    return std::includes(nw.begin(), nw.end(), nv.begin(), nv.end());
}

}  // namespace gbp

#endif  // GBP_GRAPH_HPP
