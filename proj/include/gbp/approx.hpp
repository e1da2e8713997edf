#ifndef GBP_APPROX_HPP
#define GBP_APPROX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"
#include "gbp/model.hpp"

namespace gbp {

/// A power-graph edge {u,w} together with the base-graph path u..w realizing it.
struct PathWitness {
    Edge power_edge;
    std::vector<Vertex> path;
};

struct ApproxResult {
    EdgeSet edges;
    std::vector<PathWitness> witnesses;
};

namespace detail {

/// Depth-bounded BFS tables shared between habitats.
class BfsCache {
public:
    BfsCache(const Graph& g, std::size_t d) : g_(g), limit_(clamp_bound(d)) {}

    const std::vector<Distance>& from(Vertex source) {
        auto it = tables_.find(source);
        if (it == tables_.end()) {
            it = tables_.emplace(source, bfs_bounded(g_, source, limit_)).first;
        }
        return it->second;
    }

    [[nodiscard]] Distance limit() const noexcept { return limit_; }

private:
    const Graph& g_;
    Distance limit_;
    std::unordered_map<Vertex, std::vector<Distance>> tables_;
};

/// Shortest path from `root` to `target`, walking back from the target and
/// always stepping to the lowest-id neighbor one hop closer to the root.
inline std::vector<Vertex> walk_to_root(const Graph& g, const std::vector<Distance>& dist, Vertex root, Vertex target) {
    std::vector<Vertex> reversed{target};
    Vertex x = target;
    while (x != root) {
        for (Vertex y : g.neighbors(x)) {
            if (dist[y] != kInfinite && dist[y] + 1 == dist[x]) {
                x = y;
                break;
            }
        }
        reversed.push_back(x);
    }
    return {reversed.rbegin(), reversed.rend()};
}

inline std::optional<ApproxResult> approx_habitat(const Graph& g, std::span<const Vertex> habitat, BfsCache& cache) {
    VertexSet members = normalized(habitat);
    if (members.empty()) {
        throw InputError(ErrorCode::kEmptyHabitat, "approximation needs a nonempty habitat");
    }
    for (Vertex v : members) {
        g.check_vertex(v);
    }
    ApproxResult out;
    std::vector<char> in_tree(members.size(), 0);
    std::vector<std::size_t> queue{0};
    in_tree[0] = 1;
    // BFS tree of G^d[habitat] from the smallest member; each tree edge is expanded to its path.
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex u = members[queue[head]];
        const auto& dist = cache.from(u);
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (in_tree[j] || dist[members[j]] == kInfinite) {
                continue;
            }
            in_tree[j] = 1;
            queue.push_back(j);
            PathWitness witness{Edge(u, members[j]), walk_to_root(g, dist, u, members[j])};
            for (std::size_t p = 0; p + 1 < witness.path.size(); ++p) {
                out.edges.insert(Edge(witness.path[p], witness.path[p + 1]));
            }
            out.witnesses.push_back(std::move(witness));
        }
    }
    if (queue.size() != members.size()) {
        return std::nullopt;
    }
    return out;
}

}  // namespace detail

/// d-approximation for one habitat: spanning tree of G^d[habitat], expanded to
/// base paths. Returns nullopt when G^d[habitat] is disconnected.
inline std::optional<ApproxResult> approx_single_habitat(const Graph& g, std::span<const Vertex> habitat, std::size_t d) {
    check_distance_bound(d);
    detail::BfsCache cache(g, d);
    return detail::approx_habitat(g, habitat, cache);
}

/// rd-approximation for Reach: the union of the per-habitat trees. The budget is
/// not enforced; callers compare the result size against k.
inline std::optional<ApproxResult> approx_reach(const Instance& inst) {
    if (inst.variant().kind() != VariantKind::kReach) {
        throw InputError(ErrorCode::kWrongVariant, "approximation is defined for reach instances");
    }
    detail::BfsCache cache(inst.graph(), *inst.variant().d());
    ApproxResult total;
    for (const auto& habitat : inst.habitats()) {
        auto part = detail::approx_habitat(inst.graph(), habitat, cache);
        if (!part) {
            return std::nullopt;
        }
        total.edges.insert(part->edges.begin(), part->edges.end());
        for (auto& w : part->witnesses) {
            total.witnesses.push_back(std::move(w));
        }
    }
    return total;
}

}  // namespace gbp

#endif  // GBP_APPROX_HPP
