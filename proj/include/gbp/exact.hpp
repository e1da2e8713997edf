#ifndef GBP_EXACT_HPP
#define GBP_EXACT_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"
#include "gbp/kernel.hpp"
#include "gbp/model.hpp"

namespace gbp {

enum class Status { kYes, kNo };

inline std::string_view to_string(Status status) { return status == Status::kYes ? "yes" : "no"; }

struct SolveStats {
    std::size_t nodes = 0;
    double seconds = 0.0;
};

struct SolveResult {
    Status status = Status::kNo;
    std::optional<std::size_t> optimum;  ///< minimum |F|, when the answer is yes
    std::optional<Solution> witness;     ///< a minimum solution, when the answer is yes
    SolveStats stats;
};

namespace detail {

class Stopwatch {
public:
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline SolveResult yes(EdgeSet edges, SolveStats stats) {
    SolveResult out;
    out.status = Status::kYes;
    out.optimum = edges.size();
    out.witness = Solution{std::move(edges)};
    out.stats = stats;
    return out;
}

inline SolveResult no(SolveStats stats) {
    SolveResult out;
    out.stats = stats;
    return out;
}

using EdgeId = std::uint32_t;

/// Edge sets that each satisfy one open requirement; every completion of the
/// current partial solution contains at least one of them.
struct Requirement {
    std::vector<std::vector<EdgeId>> options;
    std::size_t min_size = 0;
    std::vector<EdgeId> support;  ///< union of all options
};

/// Complete branch-and-bound over "missing path" choices, run with an
/// iteratively deepened size bound so the first solution found is minimum.
class PathBranchingSearch {
public:
    explicit PathBranchingSearch(const Instance& inst)
        : inst_(inst),
          g_(inst.graph()),
          kind_(inst.variant().kind()),
          d_(std::max<std::size_t>(1, std::min(inst.effective_d(), g_.n() > 0 ? g_.n() - 1 : 1))),
          adjacency_(g_.n()),
          in_f_(g_.m(), 0),
          f_degree_(g_.n(), 0),
          words_((g_.m() + 63) / 64, 0),
          scratch_(g_.n(), 0),
          is_constrained_(g_.n(), 0) {
        for (EdgeId id = 0; id < g_.m(); ++id) {
            const Edge& e = g_.edges()[id];
            adjacency_[e.u].push_back({e.v, id});
            adjacency_[e.v].push_back({e.u, id});
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
        }
        for (const auto& habitat : inst.habitats()) {
            if (habitat.size() >= 2) {
                for (Vertex v : habitat) {
                    if (!is_constrained_[v]) {
                        is_constrained_[v] = 1;
                        constrained_.push_back(v);
                    }
                }
            }
        }
    }

    SolveResult run(std::size_t budget) {
        Stopwatch clock;
        EdgeSet all(g_.edges().begin(), g_.edges().end());
        if (!satisfies_habitats(inst_, all)) {
            return no({nodes_, clock.seconds()});
        }
        auto root = requirements();
        if (std::any_of(root.begin(), root.end(), [](const Requirement& r) { return r.options.empty(); })) {
            return no({nodes_, clock.seconds()});
        }
        const std::size_t cap = std::min(budget, g_.m());
        for (std::size_t bound = lower_bound(root); bound <= cap; ++bound) {
            visited_.clear();
            if (dfs(bound)) {
                EdgeSet witness;
                for (EdgeId id : chosen_) {
                    witness.insert(g_.edges()[id]);
                }
                return yes(std::move(witness), {nodes_, clock.seconds()});
            }
        }
        return no({nodes_, clock.seconds()});
    }

private:
    struct Arc {
        Vertex to;
        EdgeId id;
        bool operator<(const Arc& o) const { return to < o.to; }
    };

    struct WordsHash {
        std::size_t operator()(const std::vector<std::uint64_t>& w) const noexcept {
            std::uint64_t h = 1469598103934665603ULL;
            for (auto x : w) {
                h = (h ^ x) * 1099511628211ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    static constexpr std::size_t kVisitedCap = 1U << 20;

    bool dfs(std::size_t bound) {
        ++nodes_;
        auto reqs = requirements();
        if (reqs.empty()) {
            return true;
        }
        if (chosen_.size() + lower_bound(reqs) > bound) {
            return false;
        }
        for (const auto& r : reqs) {
            if (r.options.empty()) {
                return false;
            }
        }
        if (visited_.size() < kVisitedCap && !visited_.insert(words_).second) {
            return false;
        }
        std::size_t pick = 0;
        for (std::size_t i = 1; i < reqs.size(); ++i) {
            if (reqs[i].options.size() < reqs[pick].options.size()) {
                pick = i;
            }
        }
        for (const auto& option : reqs[pick].options) {
            if (chosen_.size() + option.size() > bound) {
                continue;
            }
            for (EdgeId id : option) {
                add(id);
            }
            if (dfs(bound)) {
                return true;
            }
            for (std::size_t i = 0; i < option.size(); ++i) {
                remove_last();
            }
        }
        return false;
    }

    void add(EdgeId id) {
        in_f_[id] = 1;
        words_[id / 64] |= std::uint64_t{1} << (id % 64);
        const Edge& e = g_.edges()[id];
        ++f_degree_[e.u];
        ++f_degree_[e.v];
        chosen_.push_back(id);
    }

    void remove_last() {
        EdgeId id = chosen_.back();
        chosen_.pop_back();
        in_f_[id] = 0;
        words_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
        const Edge& e = g_.edges()[id];
        --f_degree_[e.u];
        --f_degree_[e.v];
    }

    // Admissible bound on the edges still to add.
    std::size_t lower_bound(const std::vector<Requirement>& reqs) const {
        // Every uncovered constrained vertex needs a new incident edge, and one edge
        // serves two only when it joins two of them.
        std::size_t uncovered = 0;
        std::size_t pairable = 0;
        for (Vertex v : constrained_) {
            if (f_degree_[v] != 0) {
                continue;
            }
            ++uncovered;
            for (const Arc& a : adjacency_[v]) {
                if (is_constrained_[a.to] && f_degree_[a.to] == 0) {
                    ++pairable;
                    break;
                }
            }
        }
        std::size_t best = uncovered - pairable / 2;

        // Requirements with pairwise disjoint supports each cost their cheapest option.
        std::vector<std::size_t> order(reqs.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (reqs[a].min_size != reqs[b].min_size) {
                return reqs[a].min_size > reqs[b].min_size;
            }
            return reqs[a].support.size() < reqs[b].support.size();
        });
        std::vector<char> used(g_.m(), 0);
        std::size_t packed = 0;
        for (std::size_t i : order) {
            const auto& support = reqs[i].support;
            if (std::any_of(support.begin(), support.end(), [&](EdgeId id) { return used[id] != 0; })) {
                continue;
            }
            for (EdgeId id : support) {
                used[id] = 1;
            }
            packed += reqs[i].min_size;
        }
        best = std::max(best, packed);

        if (kind_ == VariantKind::kConnect || (kind_ == VariantKind::kReach && d_ == 1)) {
            best = std::max(best, component_bound());
        }
        return best;
    }

    // Each new edge merges at most two of the pieces a habitat is split into.
    std::size_t component_bound() const {
        std::size_t best = 0;
        if (kind_ == VariantKind::kConnect) {
            auto label = f_components();
            for (const auto& habitat : inst_.habitats()) {
                std::vector<std::size_t> seen;
                for (Vertex v : habitat) {
                    seen.push_back(label[v]);
                }
                std::sort(seen.begin(), seen.end());
                seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
                best = std::max(best, seen.size() - 1);
            }
            return best;
        }
        for (const auto& habitat : inst_.habitats()) {
            auto groups = aux_components(habitat);
            std::size_t count = *std::max_element(groups.begin(), groups.end()) + 1;
            best = std::max(best, count - 1);
        }
        return best;
    }

    std::vector<std::size_t> f_components() const {
        constexpr auto kUnset = static_cast<std::size_t>(-1);
        std::vector<std::size_t> label(g_.n(), kUnset);
        std::size_t next = 0;
        std::vector<Vertex> stack;
        for (Vertex s = 0; s < g_.n(); ++s) {
            if (label[s] != kUnset) {
                continue;
            }
            label[s] = next;
            stack.push_back(s);
            while (!stack.empty()) {
                Vertex u = stack.back();
                stack.pop_back();
                for (const Arc& a : adjacency_[u]) {
                    if (in_f_[a.id] && label[a.to] == kUnset) {
                        label[a.to] = next;
                        stack.push_back(a.to);
                    }
                }
            }
            ++next;
        }
        return label;
    }

    /// Distances in G[F] (optionally restricted to vertices with `scratch_` set), cut at d.
    std::vector<Distance> f_distances(Vertex source, bool inside_only) const {
        std::vector<Distance> dist(g_.n(), kInfinite);
        std::vector<Vertex> frontier{source};
        dist[source] = 0;
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            Vertex u = frontier[head];
            if (dist[u] >= d_) {
                continue;
            }
            for (const Arc& a : adjacency_[u]) {
                if (!in_f_[a.id] || dist[a.to] != kInfinite || (inside_only && !scratch_[a.to])) {
                    continue;
                }
                dist[a.to] = dist[u] + 1;
                frontier.push_back(a.to);
            }
        }
        return dist;
    }

    /// Component index (0-based, by first member) of each habitat member in G[F]^d[habitat].
    std::vector<std::size_t> aux_components(const VertexSet& habitat) const {
        DisjointSets sets(habitat.size());
        for (std::size_t i = 0; i < habitat.size(); ++i) {
            auto dist = f_distances(habitat[i], false);
            for (std::size_t j = i + 1; j < habitat.size(); ++j) {
                if (dist[habitat[j]] != kInfinite) {
                    sets.unite(i, j);
                }
            }
        }
        std::vector<std::size_t> group(habitat.size());
        std::vector<std::size_t> roots;
        for (std::size_t i = 0; i < habitat.size(); ++i) {
            std::size_t root = sets.find(i);
            auto it = std::find(roots.begin(), roots.end(), root);
            group[i] = static_cast<std::size_t>(it - roots.begin());
            if (it == roots.end()) {
                roots.push_back(root);
            }
        }
        return group;
    }

    /// Enumerates simple paths of length <= d from `source`. A path is reported
    /// (and not extended) once it reaches a vertex accepted by `is_target`;
    /// only vertices accepted by `may_pass` are used as interior vertices.
    template <class Target, class Pass>
    void enumerate_paths(Vertex source, Target is_target, Pass may_pass, std::vector<std::vector<EdgeId>>& out) {
        std::vector<EdgeId> path;
        std::vector<Vertex> on_path{source};
        std::function<void(Vertex)> extend = [&](Vertex u) {
            if (path.size() >= d_) {
                return;
            }
            for (const Arc& a : adjacency_[u]) {
                if (std::find(on_path.begin(), on_path.end(), a.to) != on_path.end()) {
                    continue;
                }
                path.push_back(a.id);
                if (is_target(a.to)) {
                    std::vector<EdgeId> missing;
                    for (EdgeId id : path) {
                        if (!in_f_[id]) {
                            missing.push_back(id);
                        }
                    }
                    std::sort(missing.begin(), missing.end());
                    out.push_back(std::move(missing));
                } else if (may_pass(a.to)) {
                    on_path.push_back(a.to);
                    extend(a.to);
                    on_path.pop_back();
                }
                path.pop_back();
            }
        };
        extend(source);
    }

    static Requirement finish(std::vector<std::vector<EdgeId>> raw) {
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        Requirement req;
        for (auto& option : raw) {
            bool dominated = std::any_of(req.options.begin(), req.options.end(), [&](const auto& kept) {
                return std::includes(option.begin(), option.end(), kept.begin(), kept.end());
            });
            if (!dominated) {
                req.options.push_back(std::move(option));
            }
        }
        if (!req.options.empty()) {
            req.min_size = req.options.front().size();
        }
        for (const auto& option : req.options) {
            req.support.insert(req.support.end(), option.begin(), option.end());
        }
        std::sort(req.support.begin(), req.support.end());
        req.support.erase(std::unique(req.support.begin(), req.support.end()), req.support.end());
        return req;
    }

    void mark(const VertexSet& habitat, char value) {
        for (Vertex v : habitat) {
            scratch_[v] = value;
        }
    }

    std::vector<Requirement> requirements() {
        std::vector<Requirement> reqs;
        std::vector<std::size_t> connect_label;
        if (kind_ == VariantKind::kConnect) {
            connect_label = f_components();
        }
        for (const auto& habitat : inst_.habitats()) {
            if (habitat.size() < 2) {
                continue;
            }
            switch (kind_) {
                case VariantKind::kReach: reach_requirements(habitat, reqs); break;
                case VariantKind::kClosed: pair_requirements(habitat, false, reqs); break;
                case VariantKind::kDiam: pair_requirements(habitat, true, reqs); break;
                case VariantKind::kConnect: connect_requirements(habitat, connect_label, reqs); break;
            }
        }
        return reqs;
    }

    // Some pair across each split of the auxiliary graph must come within distance d.
    void reach_requirements(const VertexSet& habitat, std::vector<Requirement>& reqs) {
        auto group = aux_components(habitat);
        std::size_t count = *std::max_element(group.begin(), group.end()) + 1;
        if (count == 1) {
            return;
        }
        mark(habitat, 1);
        std::vector<char> in_part(g_.n(), 0);
        for (std::size_t c = 0; c < count; ++c) {
            for (std::size_t i = 0; i < habitat.size(); ++i) {
                in_part[habitat[i]] = group[i] == c ? 1 : 0;
            }
            std::vector<std::vector<EdgeId>> raw;
            for (std::size_t i = 0; i < habitat.size(); ++i) {
                if (group[i] != c) {
                    continue;
                }
                enumerate_paths(
                    habitat[i], [&](Vertex w) { return scratch_[w] && !in_part[w]; },
                    [&](Vertex w) { return !scratch_[w]; }, raw);
            }
            reqs.push_back(finish(std::move(raw)));
        }
        for (Vertex v : habitat) {
            in_part[v] = 0;
        }
        mark(habitat, 0);
    }

    // Closed: every pair within distance d in G[F]; Diam: the same inside the habitat.
    void pair_requirements(const VertexSet& habitat, bool inside_only, std::vector<Requirement>& reqs) {
        mark(habitat, 1);
        for (std::size_t i = 0; i < habitat.size(); ++i) {
            auto dist = f_distances(habitat[i], inside_only);
            for (std::size_t j = i + 1; j < habitat.size(); ++j) {
                if (dist[habitat[j]] != kInfinite) {
                    continue;
                }
                Vertex target = habitat[j];
                std::vector<std::vector<EdgeId>> raw;
                enumerate_paths(
                    habitat[i], [&](Vertex w) { return w == target; },
                    [&](Vertex w) { return !inside_only || scratch_[w]; }, raw);
                reqs.push_back(finish(std::move(raw)));
            }
        }
        mark(habitat, 0);
    }

    // Some edge must leave each G[F]-component that holds only part of the habitat.
    void connect_requirements(const VertexSet& habitat, const std::vector<std::size_t>& label,
                              std::vector<Requirement>& reqs) {
        std::vector<std::size_t> parts;
        for (Vertex v : habitat) {
            parts.push_back(label[v]);
        }
        std::sort(parts.begin(), parts.end());
        parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        if (parts.size() <= 1) {
            return;
        }
        for (std::size_t part : parts) {
            std::vector<std::vector<EdgeId>> raw;
            for (EdgeId id = 0; id < g_.m(); ++id) {
                const Edge& e = g_.edges()[id];
                if ((label[e.u] == part) != (label[e.v] == part)) {
                    raw.push_back({id});
                }
            }
            reqs.push_back(finish(std::move(raw)));
        }
    }

    const Instance& inst_;
    const Graph& g_;
    VariantKind kind_;
    std::size_t d_;
    std::vector<std::vector<Arc>> adjacency_;
    std::vector<char> in_f_;
    std::vector<std::size_t> f_degree_;
    std::vector<std::uint64_t> words_;
    std::vector<char> scratch_;
    std::vector<char> is_constrained_;
    std::vector<Vertex> constrained_;
    std::vector<EdgeId> chosen_;
    std::unordered_set<std::vector<std::uint64_t>, WordsHash> visited_;
    std::size_t nodes_ = 0;
};

}  // namespace detail

/// Ground truth by enumeration: tries every edge subset of size 0, 1, ..., k in
/// lexicographic order and returns the first feasible one.
inline SolveResult brute_force_oracle(const Instance& inst) {
    detail::Stopwatch clock;
    const auto& edges = inst.graph().edges();
    const std::size_t m = edges.size();
    std::size_t nodes = 0;
    EdgeSet all(edges.begin(), edges.end());
    if (!satisfies_habitats(inst, all)) {
        return detail::no({1, clock.seconds()});
    }
    const std::size_t cap = std::min(inst.k(), m);
    for (std::size_t size = 0; size <= cap; ++size) {
        std::vector<std::size_t> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            ++nodes;
            EdgeSet candidate;
            for (std::size_t i : pick) {
                candidate.insert(edges[i]);
            }
            if (satisfies_habitats(inst, candidate)) {
                return detail::yes(std::move(candidate), {nodes, clock.seconds()});
            }
            // Advance to the next combination in lexicographic order.
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == m - size + (i - 1)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < size; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return detail::no({nodes, clock.seconds()});
}

struct ExactOptions {
    bool use_kernel = true;
};

/// Exact minimum via (optional) kernelization followed by path-branching search.
inline SolveResult solve_exact(const Instance& inst, ExactOptions options = {}) {
    detail::Stopwatch clock;
    if (!options.use_kernel) {
        return detail::PathBranchingSearch(inst).run(inst.k());
    }
    KernelResult kernel = kernelize(inst);
    switch (kernel.verdict) {
        case Verdict::kTrivialNo: return detail::no({0, clock.seconds()});
        case Verdict::kTrivialYes: return detail::yes(kernel.forced_edges, {0, clock.seconds()});
        case Verdict::kReduced: break;
    }
    const Instance& reduced = *kernel.instance;
    SolveResult inner = detail::PathBranchingSearch(reduced).run(reduced.k());
    if (inner.status == Status::kNo) {
        inner.stats.seconds = clock.seconds();
        return inner;
    }
    Solution lifted = lift_solution(inst, kernel, *inner.witness);
    return detail::yes(std::move(lifted.edges), {inner.stats.nodes, clock.seconds()});
}

/// Closed/Diam with d = 1: every habitat must already be a clique and all
/// habitat edges are needed, so the answer is the size of their union.
inline SolveResult solve_d1(const Instance& inst) {
    detail::Stopwatch clock;
    const auto& variant = inst.variant();
    if (!(variant.is(VariantKind::kClosed, 1) || variant.is(VariantKind::kDiam, 1))) {
        throw InputError(ErrorCode::kWrongVariant, "the d=1 solver handles closed or diam with d=1");
    }
    const auto& g = inst.graph();
    std::vector<Edge> needed;
    for (const auto& habitat : inst.habitats()) {
        for (std::size_t i = 0; i < habitat.size(); ++i) {
            for (std::size_t j = i + 1; j < habitat.size(); ++j) {
                if (!g.has_edge(habitat[i], habitat[j])) {
                    return detail::no({0, clock.seconds()});
                }
                needed.emplace_back(habitat[i], habitat[j]);
            }
        }
    }
    std::sort(needed.begin(), needed.end());
    needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
    if (needed.size() > inst.k()) {
        return detail::no({0, clock.seconds()});
    }
    return detail::yes(EdgeSet(needed.begin(), needed.end()), {0, clock.seconds()});
}

}  // namespace gbp

#endif  // GBP_EXACT_HPP
