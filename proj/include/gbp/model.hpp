#ifndef GBP_MODEL_HPP
#define GBP_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"

namespace gbp {

enum class VariantKind { kReach, kClosed, kDiam, kConnect };

inline std::string_view to_string(VariantKind kind) {
    switch (kind) {
        case VariantKind::kReach: return "reach";
        case VariantKind::kClosed: return "closed";
        case VariantKind::kDiam: return "diam";
        case VariantKind::kConnect: return "connect";
    }
    return "unknown";
}

/// Which habitat condition applies, with its distance bound d (none for Connect).
class Variant {
public:
    static Variant reach(std::size_t d) { return Variant(VariantKind::kReach, d); }
    static Variant closed(std::size_t d) { return Variant(VariantKind::kClosed, d); }
    static Variant diam(std::size_t d) { return Variant(VariantKind::kDiam, d); }
    static Variant connect() { return Variant(); }

    static Variant of(VariantKind kind, std::size_t d) {
        return kind == VariantKind::kConnect ? connect() : Variant(kind, d);
    }

    [[nodiscard]] VariantKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::optional<std::size_t> d() const noexcept { return d_; }

    /// Bound used by distance-based checks; Connect behaves as an unbounded reach.
    [[nodiscard]] std::size_t bound_or(std::size_t fallback) const { return d_.value_or(fallback); }

    [[nodiscard]] bool is(VariantKind kind, std::size_t d) const { return kind_ == kind && d_ == d; }

    friend bool operator==(const Variant&, const Variant&) = default;

private:
    Variant() : kind_(VariantKind::kConnect) {}
    Variant(VariantKind kind, std::size_t d) : kind_(kind), d_(d) { check_distance_bound(d); }

    VariantKind kind_;
    std::optional<std::size_t> d_;
};

inline std::string to_string(const Variant& variant) {
    std::string out(to_string(variant.kind()));
    if (variant.d()) {
        out += " d=" + std::to_string(*variant.d());
    }
    return out;
}

/// Graph, habitat family, budget and variant. Habitats are stored sorted.
class Instance {
public:
    Instance(Graph graph, std::vector<VertexSet> habitats, std::size_t k, Variant variant)
        : graph_(std::move(graph)), habitats_(std::move(habitats)), k_(k), variant_(variant) {
        for (std::size_t i = 0; i < habitats_.size(); ++i) {
            auto& habitat = habitats_[i];
            if (habitat.empty()) {
                throw InputError(ErrorCode::kEmptyHabitat, "habitat " + std::to_string(i) + " is empty");
            }
            std::sort(habitat.begin(), habitat.end());
            if (std::adjacent_find(habitat.begin(), habitat.end()) != habitat.end()) {
                throw InputError(ErrorCode::kDuplicateMember,
                                 "habitat " + std::to_string(i) + " lists a vertex twice");
            }
            if (habitat.back() >= graph_.n()) {
                throw InputError(ErrorCode::kHabitatOutOfRange,
                                 "habitat " + std::to_string(i) + " names vertex " +
                                     std::to_string(habitat.back()));
            }
        }
    }

    [[nodiscard]] const Graph& graph() const noexcept { return graph_; }
    [[nodiscard]] const std::vector<VertexSet>& habitats() const noexcept { return habitats_; }
    [[nodiscard]] std::size_t r() const noexcept { return habitats_.size(); }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] const Variant& variant() const noexcept { return variant_; }

    /// Distance bound for the habitat checks; Connect maps to n (any path length).
    [[nodiscard]] std::size_t effective_d() const { return variant_.bound_or(std::max<std::size_t>(graph_.n(), 1)); }

    [[nodiscard]] Instance with_k(std::size_t k) const { return Instance(graph_, habitats_, k, variant_); }

    /// Membership mask: true for vertices in at least one habitat.
    [[nodiscard]] std::vector<char> habitat_mask() const {
        std::vector<char> mask(graph_.n(), 0);
        for (const auto& habitat : habitats_) {
            for (Vertex v : habitat) {
                mask[v] = 1;
            }
        }
        return mask;
    }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    Graph graph_;
    std::vector<VertexSet> habitats_;
    std::size_t k_;
    Variant variant_;
};

struct Solution {
    EdgeSet edges;

    friend bool operator==(const Solution&, const Solution&) = default;
};

using VertexPair = std::pair<Vertex, Vertex>;

struct HabitatStatus {
    bool satisfied = true;
    /// Lexicographically first pair breaking the condition (unsatisfied habitats only).
    std::optional<VertexPair> violation;
};

struct VerifyReport {
    bool feasible = false;
    bool budget_ok = false;
    std::size_t size = 0;
    std::vector<HabitatStatus> habitats;
};

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

inline Distance clamp_bound(std::size_t d) {
    return static_cast<Distance>(std::min<std::size_t>(d, kInfinite - 1));
}

inline void check_members(const Graph& g, std::span<const Vertex> habitat) {
    for (Vertex v : habitat) {
        g.check_vertex(v);
    }
}

/// First pair (habitat[0], w) whose members fall into different classes of `sets`.
inline std::optional<VertexPair> first_split(std::span<const Vertex> habitat, DisjointSets& sets) {
    for (std::size_t j = 1; j < habitat.size(); ++j) {
        if (sets.find(0) != sets.find(j)) {
            return VertexPair{habitat[0], habitat[j]};
        }
    }
    return std::nullopt;
}

inline std::optional<VertexPair> reach_violation(const Graph& h, std::span<const Vertex> habitat, std::size_t d) {
    VertexSet members = normalized(habitat);
    DisjointSets sets(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto dist = bfs_bounded(h, members[i], clamp_bound(d));
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (dist[members[j]] != kInfinite) {
                sets.unite(i, j);
            }
        }
    }
    return first_split(members, sets);
}

inline std::optional<VertexPair> closed_violation(const Graph& h, std::span<const Vertex> habitat, std::size_t d) {
    VertexSet members = normalized(habitat);
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto dist = bfs_bounded(h, members[i], clamp_bound(d));
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (dist[members[j]] == kInfinite) {
                return VertexPair{members[i], members[j]};
            }
        }
    }
    return std::nullopt;
}

inline std::optional<VertexPair> diam_violation(const Graph& h, std::span<const Vertex> habitat, std::size_t d) {
    auto inner = induced_subgraph(h, habitat);
    const auto& ids = inner.original_ids;
    for (Vertex i = 0; i < ids.size(); ++i) {
        auto dist = bfs_bounded(inner.graph, i, clamp_bound(d));
        for (Vertex j = i + 1; j < ids.size(); ++j) {
            if (dist[j] == kInfinite) {
                return VertexPair{ids[i], ids[j]};
            }
        }
    }
    return std::nullopt;
}

inline std::optional<VertexPair> connect_violation(const Graph& h, std::span<const Vertex> habitat) {
    VertexSet members = normalized(habitat);
    if (members.size() <= 1) {
        return std::nullopt;
    }
    auto label = connected_components(h);
    for (std::size_t j = 1; j < members.size(); ++j) {
        if (label[members[j]] != label[members[0]]) {
            return VertexPair{members[0], members[j]};
        }
    }
    return std::nullopt;
}

inline std::optional<VertexPair> violation(const Graph& h, std::span<const Vertex> habitat, const Variant& variant) {
    switch (variant.kind()) {
        case VariantKind::kReach: return reach_violation(h, habitat, *variant.d());
        case VariantKind::kClosed: return closed_violation(h, habitat, *variant.d());
        case VariantKind::kDiam: return diam_violation(h, habitat, *variant.d());
        case VariantKind::kConnect: return connect_violation(h, habitat);
    }
    return std::nullopt;
}

}  // namespace detail

/// G[F]^d[habitat] is connected.
inline bool reach_ok(const Graph& g, const EdgeSet& f, std::span<const Vertex> habitat, std::size_t d) {
    check_distance_bound(d);
    detail::check_members(g, habitat);
    return !detail::reach_violation(edge_subgraph(g, f).graph, habitat, d);
}

/// Every habitat pair is within distance d in G[F].
inline bool closed_ok(const Graph& g, const EdgeSet& f, std::span<const Vertex> habitat, std::size_t d) {
    check_distance_bound(d);
    detail::check_members(g, habitat);
    return !detail::closed_violation(edge_subgraph(g, f).graph, habitat, d);
}

/// G[F][habitat] has diameter at most d; paths may not leave the habitat.
inline bool diam_ok(const Graph& g, const EdgeSet& f, std::span<const Vertex> habitat, std::size_t d) {
    check_distance_bound(d);
    detail::check_members(g, habitat);
    return !detail::diam_violation(edge_subgraph(g, f).graph, habitat, d);
}

/// The whole habitat lies in one connected component of G[F].
inline bool connect_ok(const Graph& g, const EdgeSet& f, std::span<const Vertex> habitat) {
    detail::check_members(g, habitat);
    return !detail::connect_violation(edge_subgraph(g, f).graph, habitat);
}

inline VerifyReport verify(const Instance& inst, const Solution& sol) {
    auto sub = edge_subgraph(inst.graph(), sol.edges);
    VerifyReport report;
    report.size = sol.edges.size();
    report.budget_ok = report.size <= inst.k();
    bool all = true;
    report.habitats.reserve(inst.r());
    for (const auto& habitat : inst.habitats()) {
        HabitatStatus status;
        status.violation = detail::violation(sub.graph, habitat, inst.variant());
        status.satisfied = !status.violation.has_value();
        all = all && status.satisfied;
        report.habitats.push_back(status);
    }
    report.feasible = report.budget_ok && all;
    return report;
}

/// Feasibility of `edges` ignoring the budget.
inline bool satisfies_habitats(const Instance& inst, const EdgeSet& edges) {
    auto sub = edge_subgraph(inst.graph(), edges);
    return std::all_of(inst.habitats().begin(), inst.habitats().end(), [&](const VertexSet& habitat) {
        return !detail::violation(sub.graph, habitat, inst.variant());
    });
}

}  // namespace gbp

#endif  // GBP_MODEL_HPP
