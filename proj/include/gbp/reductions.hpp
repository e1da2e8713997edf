#ifndef GBP_REDUCTIONS_HPP
#define GBP_REDUCTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gbp/error.hpp"
#include "gbp/graph.hpp"
#include "gbp/model.hpp"

namespace gbp {

struct VertexCoverSource {
    Graph graph;
    std::size_t k = 0;
};

/// Universe elements are 0..universe-1.
struct SetCoverSource {
    std::size_t universe = 0;
    std::vector<std::vector<std::size_t>> family;
    std::size_t k = 0;
};

struct PartVertex {
    std::size_t part = 0;
    std::size_t index = 0;

    friend auto operator<=>(const PartVertex&, const PartVertex&) = default;
};

/// k = part_sizes.size(); every edge joins two different parts.
struct MulticoloredCliqueSource {
    std::vector<std::size_t> part_sizes;
    std::vector<std::pair<PartVertex, PartVertex>> edges;

    [[nodiscard]] std::size_t k() const noexcept { return part_sizes.size(); }
};

using SourceInstance = std::variant<VertexCoverSource, SetCoverSource, MulticoloredCliqueSource>;

struct GeneratedInstance {
    Instance instance;
    std::map<std::string, Vertex> legend;
    std::size_t expected_k_prime = 0;
};

struct SourceResult {
    bool yes = false;
    std::optional<std::size_t> optimum;  ///< minimum cover size (VC/SC) when one exists
};

namespace detail {

/// Accumulates named vertices, edges and habitats of a construction.
class Layout {
public:
    Vertex add(const std::string& name = {}) {
        Vertex id = count_++;
        if (!name.empty()) {
            legend_[name] = id;
        }
        return id;
    }

    void connect(Vertex u, Vertex v) { edges_.emplace_back(u, v); }

    /// Joins u and v by a path with `length` edges through fresh vertices.
    void path(Vertex u, Vertex v, std::size_t length) {
        Vertex prev = u;
        for (std::size_t step = 1; step < length; ++step) {
            Vertex mid = add();
            connect(prev, mid);
            prev = mid;
        }
        connect(prev, v);
    }

    void habitat(VertexSet members) { habitats_.push_back(std::move(members)); }

    GeneratedInstance finish(std::size_t k_prime, const Variant& variant) {
        Instance inst(Graph(count_, std::move(edges_)), std::move(habitats_), k_prime, variant);
        return GeneratedInstance{std::move(inst), std::move(legend_), k_prime};
    }

private:
    Vertex count_ = 0;
    std::vector<Edge> edges_;
    std::vector<VertexSet> habitats_;
    std::map<std::string, Vertex> legend_;
};

inline std::string indexed(const std::string& base, std::size_t i) { return base + "_" + std::to_string(i); }

inline void require_cubic(const Graph& g) {
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) != 3) {
            throw InputError(ErrorCode::kNotRegular,
                             "vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)));
        }
    }
}

inline void check_source(const SetCoverSource& src) {
    for (const auto& set : src.family) {
        std::set<std::size_t> seen;
        for (std::size_t x : set) {
            if (x >= src.universe) {
                throw InputError(ErrorCode::kInvalidSource, "set element " + std::to_string(x) + " outside universe");
            }
            if (!seen.insert(x).second) {
                throw InputError(ErrorCode::kInvalidSource, "set lists element " + std::to_string(x) + " twice");
            }
        }
    }
}

inline void check_source(const MulticoloredCliqueSource& src) {
    std::set<std::pair<PartVertex, PartVertex>> seen;
    for (auto [a, b] : src.edges) {
        for (const auto& p : {a, b}) {
            if (p.part >= src.k() || p.index >= src.part_sizes[p.part]) {
                throw InputError(ErrorCode::kInvalidSource, "edge endpoint " + std::to_string(p.part) + ":" +
                                                                std::to_string(p.index) + " does not exist");
            }
        }
        if (a.part == b.part) {
            throw InputError(ErrorCode::kInvalidSource, "edge inside part " + std::to_string(a.part));
        }
        if (b < a) {
            std::swap(a, b);
        }
        if (!seen.insert({a, b}).second) {
            throw InputError(ErrorCode::kInvalidSource, "duplicate cross edge");
        }
    }
}

inline std::size_t pairs(std::size_t k) { return k * (k - (k > 0 ? 1 : 0)) / 2; }

/// Graph shared by the Multicolored Clique constructions; returns the hub ids.
inline std::vector<Vertex> mcc_graph(const MulticoloredCliqueSource& src, std::size_t d, Layout& layout) {
    if (d < 3) {
        throw InputError(ErrorCode::kInvalidDistance, "the clique constructions need d >= 3");
    }
    check_source(src);
    const std::size_t odd = d % 2 == 1 ? d : d - 1;
    std::vector<std::vector<Vertex>> part(src.k());
    for (std::size_t i = 0; i < src.k(); ++i) {
        for (std::size_t j = 0; j < src.part_sizes[i]; ++j) {
            part[i].push_back(layout.add("u_" + std::to_string(i) + "_" + std::to_string(j)));
        }
    }
    std::vector<Vertex> hubs;
    for (std::size_t i = 0; i < src.k(); ++i) {
        hubs.push_back(layout.add(indexed("v", i)));
    }
    for (std::size_t i = 0; i < src.k(); ++i) {
        for (Vertex u : part[i]) {
            layout.path(hubs[i], u, (odd - 1) / 2);
        }
    }
    // Even d: the original edges are subdivided once.
    for (const auto& [a, b] : src.edges) {
        layout.path(part[a.part][a.index], part[b.part][b.index], d % 2 == 1 ? 1 : 2);
    }
    return hubs;
}

inline std::size_t mcc_budget(std::size_t k, std::size_t d) {
    if (d % 2 == 1) {
        return (d - 1) / 2 * k + pairs(k);
    }
    return (d - 2) / 2 * k + 2 * pairs(k);
}

}  // namespace detail

/// 1-Reach from 3-regular Vertex Cover; k' = 4m + k.
/// Layout: x_j, y_j per edge e_j, then v_i, w_i per vertex.
inline GeneratedInstance gen_1reach_vc(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    detail::require_cubic(g);
    detail::Layout out;
    std::vector<Vertex> x, y, v, w;
    for (std::size_t j = 0; j < g.m(); ++j) {
        x.push_back(out.add(detail::indexed("x", j)));
        y.push_back(out.add(detail::indexed("y", j)));
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        v.push_back(out.add(detail::indexed("v", i)));
        w.push_back(out.add(detail::indexed("w", i)));
    }
    std::vector<VertexSet> vh(g.n()), wh(g.n());
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(v[i], w[i]);
        vh[i].push_back(v[i]);
        wh[i].push_back(w[i]);
    }
    std::vector<VertexSet> zh;
    for (std::size_t j = 0; j < g.m(); ++j) {
        const Edge& e = g.edges()[j];
        VertexSet z{x[j], y[j]};
        for (Vertex i : {e.u, e.v}) {
            out.connect(v[i], x[j]);
            out.connect(w[i], y[j]);
            vh[i].push_back(x[j]);
            wh[i].push_back(y[j]);
            z.push_back(v[i]);
            z.push_back(w[i]);
        }
        zh.push_back(std::move(z));
    }
    for (auto* family : {&vh, &wh, &zh}) {
        for (auto& h : *family) {
            out.habitat(std::move(h));
        }
    }
    return out.finish(4 * g.m() + src.k, Variant::reach(1));
}

/// Planar 1-Reach from 3-regular Vertex Cover; k' = 2m + 2n + k.
/// Layout: x_j, y_j per edge, v_i, w_i per vertex, then s, t.
inline GeneratedInstance gen_1reach_planar_vc(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    detail::require_cubic(g);
    detail::Layout out;
    std::vector<Vertex> x, y, v, w;
    for (std::size_t j = 0; j < g.m(); ++j) {
        x.push_back(out.add(detail::indexed("x", j)));
        y.push_back(out.add(detail::indexed("y", j)));
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        v.push_back(out.add(detail::indexed("v", i)));
        w.push_back(out.add(detail::indexed("w", i)));
    }
    Vertex s = out.add("s");
    Vertex t = out.add("t");
    VertexSet sh{s}, th{t};
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(v[i], w[i]);
        out.connect(s, v[i]);
        out.connect(t, w[i]);
        sh.push_back(v[i]);
        th.push_back(w[i]);
    }
    for (std::size_t j = 0; j < g.m(); ++j) {
        out.connect(s, x[j]);
        out.connect(t, y[j]);
        sh.push_back(x[j]);
        th.push_back(y[j]);
    }
    out.habitat(std::move(sh));
    out.habitat(std::move(th));
    for (std::size_t j = 0; j < g.m(); ++j) {
        const Edge& e = g.edges()[j];
        out.habitat({x[j], y[j], v[e.u], w[e.u], v[e.v], w[e.v], s, t});
    }
    return out.finish(2 * g.m() + 2 * g.n() + src.k, Variant::reach(1));
}

/// d-Reach (d >= 2) from 3-regular Vertex Cover. Two habitats: k' = (d-1)m + (n-1) + k.
/// With `single_habitat` the x_i are contracted into one x: k' = (d-1)m + k.
/// Layout: v_e per edge, v_i per vertex, x_i per vertex (or x), then subdivision vertices.
inline GeneratedInstance gen_reach_vc(const VertexCoverSource& src, std::size_t d, bool single_habitat) {
    if (d < 2) {
        throw InputError(ErrorCode::kInvalidDistance, "this construction needs d >= 2");
    }
    const Graph& g = src.graph;
    detail::require_cubic(g);
    detail::Layout out;
    std::vector<Vertex> ve, vg, vx;
    for (std::size_t j = 0; j < g.m(); ++j) {
        ve.push_back(out.add(detail::indexed("v_e", j)));
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        vg.push_back(out.add(detail::indexed("v", i)));
    }
    if (single_habitat) {
        vx.push_back(out.add("x"));
    } else {
        for (Vertex i = 0; i < g.n(); ++i) {
            vx.push_back(out.add(detail::indexed("x", i)));
        }
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(vx[single_habitat ? 0 : i], vg[i]);
    }
    for (std::size_t i = 0; i + 1 < vx.size(); ++i) {
        out.connect(vx[i], vx[i + 1]);
    }
    for (std::size_t j = 0; j < g.m(); ++j) {
        const Edge& e = g.edges()[j];
        out.path(ve[j], vg[e.u], d - 1);
        out.path(ve[j], vg[e.v], d - 1);
    }
    VertexSet first = ve;
    first.insert(first.end(), vx.begin(), vx.end());
    out.habitat(std::move(first));
    std::size_t k_prime = (d - 1) * g.m() + src.k;
    if (!single_habitat) {
        out.habitat(vx);
        k_prime += g.n() > 0 ? g.n() - 1 : 0;
    }
    return out.finish(k_prime, Variant::reach(d));
}

/// 2-Reach with one habitat from Set Cover; k' = |U| + k.
/// Layout: u_e per element, v_F per set, then x.
inline GeneratedInstance gen_reach_setcover(const SetCoverSource& src) {
    detail::check_source(src);
    detail::Layout out;
    std::vector<Vertex> u, sets;
    for (std::size_t e = 0; e < src.universe; ++e) {
        u.push_back(out.add(detail::indexed("u", e)));
    }
    for (std::size_t f = 0; f < src.family.size(); ++f) {
        sets.push_back(out.add(detail::indexed("v_F", f)));
    }
    Vertex x = out.add("x");
    for (std::size_t f = 0; f < src.family.size(); ++f) {
        out.connect(x, sets[f]);
        for (std::size_t e : src.family[f]) {
            out.connect(sets[f], u[e]);
        }
    }
    VertexSet habitat = u;
    habitat.push_back(x);
    out.habitat(std::move(habitat));
    return out.finish(src.universe + src.k, Variant::reach(2));
}

/// d-Reach (d >= 3) from Multicolored Clique, one habitat {v_i, v_j} per part pair in
/// lexicographic order. Budget (d-1)/2 k + C(k,2) for odd d, (d-2)/2 k + 2 C(k,2) for even d.
/// Layout: u_i_j per part vertex, v_i per part, then path and subdivision vertices.
inline GeneratedInstance gen_reach_mcc(const MulticoloredCliqueSource& src, std::size_t d) {
    detail::Layout out;
    auto hubs = detail::mcc_graph(src, d, out);
    for (std::size_t i = 0; i < hubs.size(); ++i) {
        for (std::size_t j = i + 1; j < hubs.size(); ++j) {
            out.habitat({hubs[i], hubs[j]});
        }
    }
    return out.finish(detail::mcc_budget(src.k(), d), Variant::reach(d));
}

/// d-Closed (d >= 3) with the single habitat {v_1..v_k}; same graph and budget as gen_reach_mcc.
inline GeneratedInstance gen_closed_mcc(const MulticoloredCliqueSource& src, std::size_t d) {
    detail::Layout out;
    auto hubs = detail::mcc_graph(src, d, out);
    if (!hubs.empty()) {
        out.habitat(hubs);
    }
    return out.finish(detail::mcc_budget(src.k(), d), Variant::closed(d));
}

/// 2-Closed from Vertex Cover; k' = 2m + k + 3.
/// Layout: v_e per edge, y', y, x, z, then v_i per vertex.
inline GeneratedInstance gen_closed_vc(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    detail::Layout out;
    std::vector<Vertex> ve, vg;
    for (std::size_t j = 0; j < g.m(); ++j) {
        ve.push_back(out.add(detail::indexed("v_e", j)));
    }
    Vertex yp = out.add("y'");
    Vertex y = out.add("y");
    Vertex x = out.add("x");
    Vertex z = out.add("z");
    for (Vertex i = 0; i < g.n(); ++i) {
        vg.push_back(out.add(detail::indexed("v", i)));
    }
    out.connect(yp, y);
    for (Vertex e : ve) {
        out.connect(yp, e);
    }
    out.connect(x, z);
    out.connect(z, y);
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(vg[i], x);
    }
    for (std::size_t j = 0; j < g.m(); ++j) {
        out.connect(vg[g.edges()[j].u], ve[j]);
        out.connect(vg[g.edges()[j].v], ve[j]);
    }
    VertexSet habitat = ve;
    habitat.push_back(y);
    habitat.push_back(x);
    out.habitat(std::move(habitat));
    return out.finish(2 * g.m() + src.k + 3, Variant::closed(2));
}

/// 2-Diam with three habitats from Vertex Cover; k' = 2m + 2n + k + 4.
/// Layout: v_e per edge, v_i per vertex, then x, y, y', z, z'.
inline GeneratedInstance gen_diam2_vc(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    detail::Layout out;
    std::vector<Vertex> ve, vg;
    for (std::size_t j = 0; j < g.m(); ++j) {
        ve.push_back(out.add(detail::indexed("v_e", j)));
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        vg.push_back(out.add(detail::indexed("v", i)));
    }
    Vertex x = out.add("x");
    Vertex y = out.add("y");
    Vertex yp = out.add("y'");
    Vertex z = out.add("z");
    Vertex zp = out.add("z'");
    for (std::size_t j = 0; j < g.m(); ++j) {
        out.connect(ve[j], vg[g.edges()[j].u]);
        out.connect(ve[j], vg[g.edges()[j].v]);
        out.connect(ve[j], z);
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(vg[i], x);
        out.connect(vg[i], y);
        out.connect(vg[i], z);
    }
    out.connect(x, y);
    out.connect(y, yp);
    out.connect(z, zp);
    out.connect(z, y);
    VertexSet core = ve;
    core.insert(core.end(), vg.begin(), vg.end());
    VertexSet v1 = core;
    v1.insert(v1.end(), {x, y, z});
    VertexSet v2 = core;
    v2.insert(v2.end(), {z, zp});
    VertexSet v3 = vg;
    v3.insert(v3.end(), {x, z, y, yp});
    out.habitat(std::move(v1));
    out.habitat(std::move(v2));
    out.habitat(std::move(v3));
    return out.finish(2 * g.m() + 2 * g.n() + src.k + 4, Variant::diam(2));
}

/// 3-Diam with two habitats from Vertex Cover; k' = 2m + n + k + 4.
/// Layout: v_e per edge, v_i per vertex, then x, x', y, y', z.
/// Not answer-preserving on every source. Two v_e sharing an endpoint are within
/// three of z through each other, so {v_e, z} is not forced (P3 with k = 0 maps
/// to a yes-instance). An edgeless source with k = 0 maps to a no-instance.
inline GeneratedInstance gen_diam3_vc(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    detail::Layout out;
    std::vector<Vertex> ve, vg;
    for (std::size_t j = 0; j < g.m(); ++j) {
        ve.push_back(out.add(detail::indexed("v_e", j)));
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        vg.push_back(out.add(detail::indexed("v", i)));
    }
    Vertex x = out.add("x");
    Vertex xp = out.add("x'");
    Vertex y = out.add("y");
    Vertex yp = out.add("y'");
    Vertex z = out.add("z");
    for (std::size_t j = 0; j < g.m(); ++j) {
        out.connect(ve[j], vg[g.edges()[j].u]);
        out.connect(ve[j], vg[g.edges()[j].v]);
        out.connect(ve[j], z);
    }
    for (Vertex i = 0; i < g.n(); ++i) {
        out.connect(vg[i], x);
        out.connect(vg[i], y);
    }
    out.connect(x, xp);
    out.connect(y, yp);
    out.connect(z, yp);
    out.connect(yp, xp);
    VertexSet all(g.m() + g.n() + 5);
    std::iota(all.begin(), all.end(), 0);
    VertexSet v2 = vg;
    v2.insert(v2.end(), {y, yp});
    out.habitat(std::move(all));
    out.habitat(std::move(v2));
    return out.finish(2 * g.m() + g.n() + src.k + 4, Variant::diam(3));
}

namespace detail {

/// Calls `visit` on every size-`size` subset of 0..n-1 in lexicographic order until it returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t size, Visit visit) {
    if (size > n) {
        return false;
    }
    std::vector<std::size_t> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        if (visit(pick)) {
            return true;
        }
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

inline SourceResult solve_source(const VertexCoverSource& src) {
    const Graph& g = src.graph;
    for (std::size_t size = 0; size <= g.n(); ++size) {
        bool found = for_each_subset(g.n(), size, [&](const std::vector<std::size_t>& pick) {
            std::vector<char> in(g.n(), 0);
            for (auto v : pick) {
                in[v] = 1;
            }
            return std::all_of(g.edges().begin(), g.edges().end(),
                               [&](const Edge& e) { return in[e.u] || in[e.v]; });
        });
        if (found) {
            return {size <= src.k, size};
        }
    }
    return {};
}

inline SourceResult solve_source(const SetCoverSource& src) {
    check_source(src);
    for (std::size_t size = 0; size <= src.family.size(); ++size) {
        bool found = for_each_subset(src.family.size(), size, [&](const std::vector<std::size_t>& pick) {
            std::vector<char> hit(src.universe, 0);
            for (auto f : pick) {
                for (auto x : src.family[f]) {
                    hit[x] = 1;
                }
            }
            return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
        });
        if (found) {
            return {size <= src.k, size};
        }
    }
    return {};
}

inline SourceResult solve_source(const MulticoloredCliqueSource& src) {
    check_source(src);
    std::set<std::pair<PartVertex, PartVertex>> adjacent;
    for (auto [a, b] : src.edges) {
        adjacent.insert({a, b});
        adjacent.insert({b, a});
    }
    const std::size_t k = src.k();
    if (std::any_of(src.part_sizes.begin(), src.part_sizes.end(), [](std::size_t s) { return s == 0; })) {
        return {};
    }
    std::vector<std::size_t> choice(k, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t part) {
        if (part == k) {
            return true;
        }
        for (std::size_t idx = 0; idx < src.part_sizes[part]; ++idx) {
            bool ok = true;
            for (std::size_t q = 0; q < part && ok; ++q) {
                ok = adjacent.count({PartVertex{q, choice[q]}, PartVertex{part, idx}}) > 0;
            }
            if (ok) {
                choice[part] = idx;
                if (extend(part + 1)) {
                    return true;
                }
            }
        }
        return false;
    };
    return {extend(0), std::nullopt};
}

}  // namespace detail

/// Brute-force answer for the source problem (tiny inputs only).
inline SourceResult solve_source_exact(const SourceInstance& src) {
    return std::visit([](const auto& s) { return detail::solve_source(s); }, src);
}

struct RandomParams {
    std::size_t n = 8;
    double edge_probability = 0.3;
    std::optional<std::size_t> edge_count;                        ///< exact edge count instead of a probability
    std::optional<std::pair<std::size_t, std::size_t>> grid;      ///< rows x cols grid instead of a random graph
    std::size_t r = 2;
    std::size_t min_habitat = 2;
    std::size_t max_habitat = 4;
    Variant variant = Variant::reach(2);
    std::size_t k = 3;
};

/// Deterministic for a fixed seed. Habitats are grown as connected regions of the
/// sampled graph and may come out smaller than `min_habitat` when a region is exhausted.
inline Instance gen_random_instance(const RandomParams& params, std::uint64_t seed) {
    if (params.min_habitat == 0 || params.min_habitat > params.max_habitat) {
        throw InputError(ErrorCode::kInvalidArgument, "habitat size range must satisfy 1 <= min <= max");
    }
    std::mt19937_64 rng(seed);
    auto below = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    std::size_t n = params.n;
    std::vector<Edge> edges;
    if (params.grid) {
        auto [rows, cols] = *params.grid;
        n = rows * cols;
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                auto id = static_cast<Vertex>(i * cols + j);
                if (j + 1 < cols) {
                    edges.emplace_back(id, id + 1);
                }
                if (i + 1 < rows) {
                    edges.emplace_back(id, static_cast<Vertex>(id + cols));
                }
            }
        }
    } else if (params.edge_count) {
        const std::size_t total = n * (n > 0 ? n - 1 : 0) / 2;
        if (*params.edge_count > total) {
            throw InputError(ErrorCode::kInvalidArgument, "more edges requested than vertex pairs");
        }
        std::set<Edge> chosen;
        while (chosen.size() < *params.edge_count) {
            auto u = static_cast<Vertex>(below(n));
            auto v = static_cast<Vertex>(below(n));
            if (u != v) {
                chosen.insert(Edge(u, v));
            }
        }
        edges.assign(chosen.begin(), chosen.end());
    } else {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (coin(rng) < params.edge_probability) {
                    edges.emplace_back(u, v);
                }
            }
        }
    }
    Graph g(n, edges);
    std::vector<VertexSet> habitats;
    if (n > 0) {
        std::vector<char> in(n, 0);
        for (std::size_t h = 0; h < params.r; ++h) {
            std::size_t target = params.min_habitat + below(params.max_habitat - params.min_habitat + 1);
            VertexSet region{static_cast<Vertex>(below(n))};
            in[region[0]] = 1;
            std::vector<Vertex> frontier;
            auto push_neighbors = [&](Vertex v) {
                for (Vertex w : g.neighbors(v)) {
                    if (!in[w]) {
                        frontier.push_back(w);
                    }
                }
            };
            push_neighbors(region[0]);
            while (region.size() < target && !frontier.empty()) {
                std::size_t pick = below(frontier.size());
                Vertex v = frontier[pick];
                frontier[pick] = frontier.back();
                frontier.pop_back();
                if (in[v]) {
                    continue;
                }
                in[v] = 1;
                region.push_back(v);
                push_neighbors(v);
            }
            for (Vertex v : region) {
                in[v] = 0;
            }
            habitats.push_back(std::move(region));
        }
    }
    return Instance(std::move(g), std::move(habitats), params.k, params.variant);
}

}  // namespace gbp

#endif  // GBP_REDUCTIONS_HPP
