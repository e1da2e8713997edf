#ifndef GBP_KERNEL_HPP
#define GBP_KERNEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"
#include "gbp/model.hpp"

namespace gbp {

enum class RuleId {
    kSingletonHabitat,  // RR1.i
    kLowDegreeOutside,  // RR1.ii
    kIsolatedMember,    // RR1.iii
    kPendantMember,     // RR1.iv
    kBudget,            // RR2
    kOutsideEdge,       // RR3
    kDominatedOutside,  // RR4
    kDuplicateHabitat,  // RR5
    kDeleteNonHabitat,
    kDeltaKernel,
};

inline std::string_view to_string(RuleId rule) {
    switch (rule) {
        case RuleId::kSingletonHabitat: return "RR1.i";
        case RuleId::kLowDegreeOutside: return "RR1.ii";
        case RuleId::kIsolatedMember: return "RR1.iii";
        case RuleId::kPendantMember: return "RR1.iv";
        case RuleId::kBudget: return "RR2";
        case RuleId::kOutsideEdge: return "RR3";
        case RuleId::kDominatedOutside: return "RR4";
        case RuleId::kDuplicateHabitat: return "RR5";
        case RuleId::kDeleteNonHabitat: return "DeleteNonHabitat";
        case RuleId::kDeltaKernel: return "DeltaKernel";
    }
    return "unknown";
}

/// One rule firing. Ids refer to the instance the rule was applied to.
///
/// Single vertex deletions shift every larger id down by one; bulk deletions
/// list the surviving vertices in `kept` (new id -> previous id).
struct RuleApplication {
    RuleId rule;
    std::optional<Vertex> vertex;
    std::optional<Edge> edge;  ///< deleted edge, or the forced edge of RR1.iv
    std::optional<std::size_t> habitat;
    std::vector<Vertex> kept;
};

/// Result of trying a single rule: the rewritten instance, or none for a trivial no-instance.
struct RuleOutcome {
    RuleApplication application;
    std::optional<Instance> instance;
};

enum class Verdict { kReduced, kTrivialYes, kTrivialNo };

inline std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::kReduced: return "reduced";
        case Verdict::kTrivialYes: return "trivial-yes";
        case Verdict::kTrivialNo: return "trivial-no";
    }
    return "unknown";
}

struct KernelResult {
    Verdict verdict = Verdict::kReduced;
    std::optional<Instance> instance;  ///< present iff verdict is kReduced
    std::vector<RuleApplication> trace;
    EdgeSet forced_edges;              ///< original ids
    std::vector<Vertex> original_ids;  ///< reduced id -> original id
};

namespace detail {

inline Instance rebuild(const Instance& inst, std::vector<Edge> edges, std::vector<VertexSet> habitats, std::size_t k) {
    return Instance(Graph(inst.graph().n(), std::move(edges)), std::move(habitats), k, inst.variant());
}

/// Restricts `inst` to `kept` (ascending), renumbering densely. Habitats must lie inside `kept`.
inline Instance keep_vertices(const Instance& inst, const std::vector<Vertex>& kept, std::size_t k,
                              bool only_habitat_internal_edges = false) {
    std::vector<Vertex> local(inst.graph().n(), kInfinite);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        local[kept[i]] = static_cast<Vertex>(i);
    }
    std::vector<VertexSet> habitats;
    habitats.reserve(inst.r());
    for (const auto& habitat : inst.habitats()) {
        VertexSet mapped;
        for (Vertex v : habitat) {
            if (local[v] != kInfinite) {
                mapped.push_back(local[v]);
            }
        }
        habitats.push_back(std::move(mapped));
    }
    std::vector<std::vector<std::size_t>> member_of;
    if (only_habitat_internal_edges) {
        member_of.resize(inst.graph().n());
        for (std::size_t i = 0; i < inst.r(); ++i) {
            for (Vertex v : inst.habitats()[i]) {
                member_of[v].push_back(i);
            }
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : inst.graph().edges()) {
        if (local[e.u] == kInfinite || local[e.v] == kInfinite) {
            continue;
        }
        if (only_habitat_internal_edges) {
            const auto& a = member_of[e.u];
            const auto& b = member_of[e.v];
            std::vector<std::size_t> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (common.empty()) {
                continue;
            }
        }
        edges.emplace_back(local[e.u], local[e.v]);
    }
    return Instance(Graph(kept.size(), std::move(edges)), std::move(habitats), k, inst.variant());
}

inline Instance remove_vertex(const Instance& inst, Vertex v, std::size_t k) {
    std::vector<Vertex> kept;
    kept.reserve(inst.graph().n());
    for (Vertex w = 0; w < inst.graph().n(); ++w) {
        if (w != v) {
            kept.push_back(w);
        }
    }
    return keep_vertices(inst, kept, k);
}

inline std::size_t binomial_saturating(std::size_t n, std::size_t r) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    if (r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > kMax) {
            return kMax;
        }
    }
    return static_cast<std::size_t>(acc);
}

inline std::size_t pow2_saturating(std::size_t e) {
    return e >= 63 ? std::numeric_limits<std::size_t>::max() : (std::size_t{1} << e);
}

inline std::size_t add_saturating(std::size_t a, std::size_t b) {
    return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

inline std::size_t mul_saturating(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
        return std::numeric_limits<std::size_t>::max();
    }
    return a * b;
}

}  // namespace detail

// Individual rules. Each returns the first applicable firing, or nullopt.

inline std::optional<RuleOutcome> rr_singleton_habitat(const Instance& inst) {
    for (std::size_t i = 0; i < inst.r(); ++i) {
        if (inst.habitats()[i].size() == 1) {
            auto habitats = inst.habitats();
            habitats.erase(habitats.begin() + static_cast<std::ptrdiff_t>(i));
            RuleApplication app{RuleId::kSingletonHabitat, {}, {}, i, {}};
            return RuleOutcome{app, detail::rebuild(inst, inst.graph().edges(), std::move(habitats), inst.k())};
        }
    }
    return std::nullopt;
}

inline std::optional<RuleOutcome> rr_low_degree_outside(const Instance& inst) {
    auto mask = inst.habitat_mask();
    for (Vertex v = 0; v < inst.graph().n(); ++v) {
        if (!mask[v] && inst.graph().degree(v) <= 1) {
            RuleApplication app{RuleId::kLowDegreeOutside, v, {}, {}, {}};
            return RuleOutcome{app, detail::remove_vertex(inst, v, inst.k())};
        }
    }
    return std::nullopt;
}

inline std::optional<RuleOutcome> rr_isolated_member(const Instance& inst) {
    for (std::size_t i = 0; i < inst.r(); ++i) {
        const auto& habitat = inst.habitats()[i];
        if (habitat.size() < 2) {
            continue;
        }
        for (Vertex v : habitat) {
            if (inst.graph().degree(v) == 0) {
                return RuleOutcome{RuleApplication{RuleId::kIsolatedMember, v, {}, i, {}}, std::nullopt};
            }
        }
    }
    return std::nullopt;
}

/// A habitat vertex with a single incident edge {v,u} forces that edge.
///
/// The vertex is only deleted when that loses no constraint: for Reach and
/// Connect every habitat holding v must also hold u; for Closed and Diam every
/// habitat holding v must be exactly {u, v}.
inline std::optional<RuleOutcome> rr_pendant_member(const Instance& inst) {
    const auto& g = inst.graph();
    const bool pair_only = inst.variant().kind() == VariantKind::kClosed || inst.variant().kind() == VariantKind::kDiam;
    std::vector<std::vector<std::size_t>> member_of(g.n());
    for (std::size_t i = 0; i < inst.r(); ++i) {
        for (Vertex v : inst.habitats()[i]) {
            member_of[v].push_back(i);
        }
    }
    for (Vertex v = 0; v < g.n(); ++v) {
        if (member_of[v].empty() || g.degree(v) != 1) {
            continue;
        }
        Vertex u = g.neighbors(v)[0];
        bool constrained = false;
        bool safe = true;
        for (std::size_t i : member_of[v]) {
            const auto& habitat = inst.habitats()[i];
            if (habitat.size() >= 2) {
                constrained = true;
            }
            bool holds_u = std::binary_search(habitat.begin(), habitat.end(), u);
            if (!holds_u || (pair_only && habitat.size() != 2)) {
                safe = false;
            }
        }
        if (!constrained || !safe) {
            continue;
        }
        RuleApplication app{RuleId::kPendantMember, v, Edge(u, v), {}, {}};
        if (inst.k() == 0) {
            return RuleOutcome{app, std::nullopt};
        }
        return RuleOutcome{app, detail::remove_vertex(inst, v, inst.k() - 1)};
    }
    return std::nullopt;
}

/// RR1 (i)-(iv) in order.
inline std::optional<RuleOutcome> rr_immediate(const Instance& inst) {
    if (auto out = rr_singleton_habitat(inst)) return out;
    if (auto out = rr_low_degree_outside(inst)) return out;
    if (auto out = rr_isolated_member(inst)) return out;
    return rr_pendant_member(inst);
}

/// More than 2k vertices in habitats of size >= 2 cannot all be touched by k edges.
inline std::optional<RuleOutcome> rr_budget(const Instance& inst) {
    std::vector<char> constrained(inst.graph().n(), 0);
    std::size_t count = 0;
    for (const auto& habitat : inst.habitats()) {
        if (habitat.size() < 2) {
            continue;
        }
        for (Vertex v : habitat) {
            if (!constrained[v]) {
                constrained[v] = 1;
                ++count;
            }
        }
    }
    if (count > 2 * inst.k()) {
        return RuleOutcome{RuleApplication{RuleId::kBudget, {}, {}, {}, {}}, std::nullopt};
    }
    return std::nullopt;
}

inline std::optional<RuleOutcome> rr_outside_edges(const Instance& inst) {
    auto mask = inst.habitat_mask();
    const auto& edges = inst.graph().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!mask[edges[i].u] && !mask[edges[i].v]) {
            auto rest = edges;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            RuleApplication app{RuleId::kOutsideEdge, {}, edges[i], {}, {}};
            return RuleOutcome{app, detail::rebuild(inst, std::move(rest), inst.habitats(), inst.k())};
        }
    }
    return std::nullopt;
}

inline std::optional<RuleOutcome> rr_twins(const Instance& inst) {
    auto mask = inst.habitat_mask();
    const auto& g = inst.graph();
    for (Vertex v = 0; v < g.n(); ++v) {
        if (mask[v]) {
            continue;
        }
        for (Vertex w = 0; w < g.n(); ++w) {
            if (w == v || mask[w]) {
                continue;
            }
            if (neighborhood_dominated(g, v, w)) {
                RuleApplication app{RuleId::kDominatedOutside, v, {}, {}, {}};
                return RuleOutcome{app, detail::remove_vertex(inst, v, inst.k())};
            }
        }
    }
    return std::nullopt;
}

inline std::optional<RuleOutcome> rr_dedup_habitats(const Instance& inst) {
    const auto& habitats = inst.habitats();
    for (std::size_t j = 1; j < habitats.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (habitats[i] == habitats[j]) {
                auto rest = habitats;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                RuleApplication app{RuleId::kDuplicateHabitat, {}, {}, j, {}};
                return RuleOutcome{app, detail::rebuild(inst, inst.graph().edges(), std::move(rest), inst.k())};
            }
        }
    }
    return std::nullopt;
}

/// Drops every vertex outside all habitats and every edge not inside a common habitat.
inline std::optional<RuleOutcome> rr_delete_non_habitat(const Instance& inst) {
    auto mask = inst.habitat_mask();
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < inst.graph().n(); ++v) {
        if (mask[v]) {
            kept.push_back(v);
        }
    }
    Instance reduced = detail::keep_vertices(inst, kept, inst.k(), true);
    if (kept.size() == inst.graph().n() && reduced.graph().m() == inst.graph().m()) {
        return std::nullopt;
    }
    RuleApplication app{RuleId::kDeleteNonHabitat, {}, {}, {}, kept};
    return RuleOutcome{app, std::move(reduced)};
}

namespace detail {

using Rule = std::optional<RuleOutcome> (*)(const Instance&);

inline std::vector<Rule> licensed_rules(const Variant& variant) {
    if (variant.is(VariantKind::kReach, 2) || variant.is(VariantKind::kClosed, 2)) {
        return {rr_singleton_habitat, rr_low_degree_outside, rr_isolated_member, rr_budget,
                rr_dedup_habitats, rr_outside_edges, rr_twins, rr_pendant_member};
    }
    if (variant.kind() == VariantKind::kDiam) {
        return {rr_singleton_habitat, rr_isolated_member, rr_budget, rr_dedup_habitats, rr_delete_non_habitat};
    }
    return {rr_singleton_habitat, rr_low_degree_outside, rr_isolated_member, rr_budget, rr_dedup_habitats};
}

/// Updates the reduced-id -> original-id map after `app` was applied.
inline void compose_ids(std::vector<Vertex>& ids, const RuleApplication& app) {
    if (!app.kept.empty() || app.rule == RuleId::kDeleteNonHabitat || app.rule == RuleId::kDeltaKernel) {
        std::vector<Vertex> next;
        next.reserve(app.kept.size());
        for (Vertex old : app.kept) {
            next.push_back(ids[old]);
        }
        ids = std::move(next);
    } else if (app.vertex && (app.rule == RuleId::kLowDegreeOutside || app.rule == RuleId::kPendantMember ||
                              app.rule == RuleId::kDominatedOutside)) {
        ids.erase(ids.begin() + *app.vertex);
    }
}

}  // namespace detail

/// Applies the rules licensed for the instance's variant until none fires.
///
/// Reach/Closed with d=2 get RR1-RR5; Diam gets RR1.i, RR1.iii, RR2, RR5 and the
/// non-habitat deletion; every other variant gets RR1.i-iii, RR2 and RR5.
inline KernelResult kernelize(const Instance& inst) {
    KernelResult result;
    result.original_ids.resize(inst.graph().n());
    for (Vertex v = 0; v < inst.graph().n(); ++v) {
        result.original_ids[v] = v;
    }
    const auto rules = detail::licensed_rules(inst.variant());
    Instance work = inst;
    while (true) {
        if (work.r() == 0) {
            result.verdict = Verdict::kTrivialYes;
            return result;
        }
        std::optional<RuleOutcome> fired;
        for (auto rule : rules) {
            fired = rule(work);
            if (fired) {
                break;
            }
        }
        if (!fired) {
            break;
        }
        const RuleApplication& app = fired->application;
        if (app.rule == RuleId::kPendantMember && app.edge) {
            result.forced_edges.insert(Edge(result.original_ids[app.edge->u], result.original_ids[app.edge->v]));
        }
        result.trace.push_back(app);
        if (!fired->instance) {
            result.verdict = Verdict::kTrivialNo;
            return result;
        }
        detail::compose_ids(result.original_ids, app);
        work = std::move(*fired->instance);
    }
    result.verdict = Verdict::kReduced;
    result.instance = std::move(work);
    return result;
}

/// Checks the vertex and habitat counts of a reduced instance against the size
/// guarantees for its variant. Results without an instance pass trivially.
inline bool kernel_size_check(const KernelResult& res, std::size_t k, const Variant& variant, bool planar) {
    if (res.verdict != Verdict::kReduced || !res.instance) {
        return true;
    }
    using detail::add_saturating;
    using detail::binomial_saturating;
    using detail::mul_saturating;
    const std::size_t n = res.instance->graph().n();
    const std::size_t r = res.instance->r();
    const std::size_t habitat_bound = detail::pow2_saturating(2 * k);
    if (variant.is(VariantKind::kReach, 2) || variant.is(VariantKind::kClosed, 2)) {
        if (n > add_saturating(2 * k, binomial_saturating(2 * k, k)) || r > habitat_bound) {
            return false;
        }
        if (planar && variant.kind() == VariantKind::kReach) {
            // Habitat vertices, then the degree-two and degree->=3 outside vertices.
            std::size_t bound = add_saturating(3 * k, mul_saturating(2, binomial_saturating(2 * k, 2)));
            bound = add_saturating(bound, mul_saturating(3, binomial_saturating(2 * k, 3)));
            return n <= bound;
        }
        return true;
    }
    if (variant.kind() == VariantKind::kDiam) {
        return n <= 2 * k && r <= habitat_bound;
    }
    return true;
}

/// Closed kernel for bounded degree: keep only the ceil(3d/2)-balls around one
/// anchor (the smallest id) per habitat.
inline KernelResult delta_kernel_closed(const Instance& inst) {
    if (inst.variant().kind() != VariantKind::kClosed) {
        throw InputError(ErrorCode::kWrongVariant, "delta kernel needs a closed instance");
    }
    const std::size_t d = *inst.variant().d();
    const auto& g = inst.graph();
    std::vector<char> keep(g.n(), 0);
    KernelResult result;
    for (std::size_t i = 0; i < inst.r(); ++i) {
        const auto& habitat = inst.habitats()[i];
        Vertex anchor = habitat.front();
        auto dist = bfs_bounded(g, anchor, detail::clamp_bound((3 * d + 1) / 2));
        for (Vertex v : habitat) {
            if (dist[v] == kInfinite || dist[v] > d) {
                result.verdict = Verdict::kTrivialNo;
                result.trace.push_back(RuleApplication{RuleId::kDeltaKernel, v, {}, i, {}});
                return result;
            }
        }
        for (Vertex v = 0; v < g.n(); ++v) {
            if (dist[v] != kInfinite) {
                keep[v] = 1;
            }
        }
    }
    std::vector<Vertex> kept;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (keep[v]) {
            kept.push_back(v);
        }
    }
    result.verdict = Verdict::kReduced;
    result.instance = detail::keep_vertices(inst, kept, inst.k());
    result.trace.push_back(RuleApplication{RuleId::kDeltaKernel, {}, {}, {}, kept});
    result.original_ids = kept;
    return result;
}

/// Maps a solution of the reduced instance back to `original` and adds the forced edges.
inline Solution lift_solution(const Instance& original, const KernelResult& res, const Solution& kernel_sol) {
    if (res.verdict == Verdict::kTrivialNo) {
        throw InputError(ErrorCode::kInfeasibleSolution, "a trivial no-instance has no solution to lift");
    }
    Solution lifted{res.forced_edges};
    if (res.verdict == Verdict::kReduced) {
        if (!verify(*res.instance, kernel_sol).feasible) {
            throw InputError(ErrorCode::kInfeasibleSolution, "kernel solution is not feasible for the reduced instance");
        }
        for (const Edge& e : kernel_sol.edges) {
            lifted.edges.insert(Edge(res.original_ids.at(e.u), res.original_ids.at(e.v)));
        }
    } else if (!kernel_sol.edges.empty()) {
        throw InputError(ErrorCode::kInfeasibleSolution, "a trivial yes-instance takes an empty kernel solution");
    }
    if (!verify(original, lifted).feasible) {
        throw InputError(ErrorCode::kInfeasibleSolution, "lifted solution does not solve the original instance");
    }
    return lifted;
}

}  // namespace gbp

#endif  // GBP_KERNEL_HPP
