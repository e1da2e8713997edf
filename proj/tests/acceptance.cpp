// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "gbp/gbp.hpp"
#include "support/reference.hpp"

namespace {

using namespace gbp;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kOracleSeconds = 300.0;
constexpr double kD1Seconds = 1.0;
constexpr double kApproxSeconds = 10.0;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s C%d %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

Instance oracle_instance(std::mt19937_64& rng, const Variant& variant, std::size_t max_n, std::size_t max_m,
                         std::size_t max_k) {
    RandomParams params;
    params.n = 3 + rng() % (max_n - 2);
    const std::size_t pairs = params.n * (params.n - 1) / 2;
    params.edge_count = std::min({pairs, max_m, params.n - 2 + rng() % (params.n + 2)});
    params.r = 1 + rng() % 3;
    params.min_habitat = 1 + rng() % 2;
    params.max_habitat = 4;
    params.variant = variant;
    params.k = rng() % (max_k + 1);
    return gen_random_instance(params, rng());
}

bool yes(const Instance& inst) { return solve_exact(inst).status == Status::kYes; }

std::string count(std::size_t checked, std::size_t bad, const std::string& what) {
    return std::to_string(checked) + " " + what + ", " + std::to_string(bad) + " mismatches";
}

void oracle_equivalence() {
    auto start = Clock::now();
    std::size_t checked = 0;
    std::size_t bad = 0;
    std::size_t yes_count = 0;
    std::vector<Variant> variants;
    for (auto kind : {VariantKind::kReach, VariantKind::kClosed, VariantKind::kDiam}) {
        for (std::size_t d = 1; d <= 3; ++d) {
            variants.push_back(Variant::of(kind, d));
        }
    }
    variants.push_back(Variant::connect());
    for (std::size_t v = 0; v < variants.size(); ++v) {
        std::mt19937_64 rng(1000 + v);
        for (int i = 0; i < 200; ++i) {
            Instance inst = oracle_instance(rng, variants[v], 8, 14, 5);
            auto exact = solve_exact(inst);
            auto brute = brute_force_oracle(inst);
            ++checked;
            yes_count += brute.status == Status::kYes ? 1 : 0;
            if (exact.status != brute.status || exact.optimum != brute.optimum ||
                (exact.witness && !verify(inst, *exact.witness).feasible)) {
                ++bad;
            }
        }
    }
    double seconds = since(start);
    report(1, bad == 0 && seconds < kOracleSeconds,
           count(checked, bad, "instances") + " (" + std::to_string(yes_count) + " yes), " + std::to_string(seconds) +
               " s (limit 300 s)");
}

void approximation_ratio() {
    std::mt19937_64 rng(2000);
    std::size_t feasible = 0;
    std::size_t bad = 0;
    std::size_t single = 0;
    while (feasible < 150) {
        const std::size_t d = 1 + rng() % 3;
        Instance inst = oracle_instance(rng, Variant::reach(d), 8, 12, 0);
        auto opt = brute_force_oracle(inst.with_k(inst.graph().m()));
        auto out = approx_reach(inst);
        if (opt.status != Status::kYes) {
            bad += out ? 1 : 0;
            continue;
        }
        ++feasible;
        if (!out || !satisfies_habitats(inst, out->edges) || out->edges.size() > inst.r() * d * *opt.optimum) {
            ++bad;
        } else if (inst.r() == 1) {
            ++single;
            bad += out->edges.size() > d * *opt.optimum ? 1 : 0;
        }
    }
    report(2, bad == 0,
           std::to_string(feasible) + " feasible instances (" + std::to_string(single) + " with r=1), " +
               std::to_string(bad) + " violations");
}

struct KernelStats {
    std::size_t checked = 0;
    std::size_t unsound = 0;
    std::size_t oversized = 0;
    std::size_t reduced = 0;
};

KernelStats kernel_suite() {
    KernelStats stats;
    const std::vector<Variant> variants{Variant::reach(2), Variant::closed(2), Variant::diam(2), Variant::diam(3)};
    for (std::size_t v = 0; v < variants.size(); ++v) {
        std::mt19937_64 rng(3000 + v);
        for (int i = 0; i < 250; ++i) {
            Instance inst = oracle_instance(rng, variants[v], 10, 15, 4);
            auto truth = brute_force_oracle(inst);
            auto res = kernelize(inst);
            ++stats.checked;
            if (!kernel_size_check(res, res.instance ? res.instance->k() : inst.k(), inst.variant(), false)) {
                ++stats.oversized;
            }
            bool sound = true;
            if (res.verdict == Verdict::kTrivialNo) {
                sound = truth.status == Status::kNo;
            } else if (res.verdict == Verdict::kTrivialYes) {
                sound = truth.status == Status::kYes && verify(inst, Solution{res.forced_edges}).feasible;
            } else {
                ++stats.reduced;
                auto inner = brute_force_oracle(*res.instance);
                sound = inner.status == truth.status;
                if (sound && inner.status == Status::kYes) {
                    auto lifted = lift_solution(inst, res, *inner.witness);
                    sound = verify(inst, lifted).feasible && lifted.edges.size() <= inst.k();
                }
            }
            stats.unsound += sound ? 0 : 1;
        }
    }
    return stats;
}

std::size_t ball_size(const Graph& g, Vertex v, std::size_t radius) {
    auto dist = testing::floyd_warshall(g.n(), g.edges());
    std::size_t size = 0;
    for (Vertex w = 0; w < g.n(); ++w) {
        size += dist[v][w] <= radius ? 1 : 0;
    }
    return size;
}

void delta_kernel() {
    std::size_t checked = 0;
    std::size_t bad = 0;
    std::mt19937_64 rng(5000);
    for (int i = 0; i < 150; ++i) {
        const std::size_t d = 1 + i % 3;
        Instance inst = oracle_instance(rng, Variant::closed(d), 10, 12, 0);
        inst = inst.with_k(inst.graph().m());
        auto before = brute_force_oracle(inst);
        auto res = delta_kernel_closed(inst);
        ++checked;
        if (res.verdict == Verdict::kTrivialNo) {
            bad += before.status == Status::kNo ? 0 : 1;
            continue;
        }
        auto after = brute_force_oracle(*res.instance);
        std::size_t bound = 0;
        for (const auto& h : inst.habitats()) {
            bound += ball_size(inst.graph(), h.front(), (3 * d + 1) / 2);
        }
        if (after.status != before.status || after.optimum != before.optimum || res.instance->graph().n() > bound) {
            ++bad;
        }
    }
    report(5, bad == 0, count(checked, bad, "closed instances (d=1..3)"));
}

struct Faithfulness {
    std::size_t checked = 0;
    std::size_t mismatches = 0;
    std::size_t budget_errors = 0;

    void check(const GeneratedInstance& gen, std::size_t formula, bool expected) {
        ++checked;
        budget_errors += (gen.instance.k() == formula && gen.expected_k_prime == formula) ? 0 : 1;
        mismatches += yes(gen.instance) == expected ? 0 : 1;
    }

    // Instances generated from one source for budgets 0..max differ only in k'.
    // One exact optimum, taken at the largest budget, then answers all of them.
    void check_budgets(const std::function<GeneratedInstance(std::size_t)>& generate,
                       const std::function<std::size_t(std::size_t)>& formula,
                       const std::function<bool(std::size_t)>& expected, std::size_t max_k) {
        GeneratedInstance top = generate(max_k);
        auto opt = solve_exact(top.instance).optimum;
        for (std::size_t k = 0; k <= max_k; ++k) {
            GeneratedInstance gen = k == max_k ? top : generate(k);
            ++checked;
            const std::size_t budget = formula(k);
            budget_errors += (gen.instance.k() == budget && gen.expected_k_prime == budget) ? 0 : 1;
            if (!(gen.instance == top.instance.with_k(budget))) {
                ++mismatches;
                continue;
            }
            mismatches += (opt && *opt <= budget) == expected(k) ? 0 : 1;
        }
    }
};

std::vector<Graph> cubic_fixtures() {
    std::mt19937_64 rng(6000);
    std::vector<Graph> out{testing::random_cubic(4, rng)};
    std::set<std::vector<Edge>> seen{out.front().edges()};
    while (out.size() < 24) {
        Graph g = testing::random_cubic(out.size() % 2 == 0 ? 6 : 8, rng);
        if (seen.insert(g.edges()).second) {
            out.push_back(g);
        }
    }
    return out;
}

std::vector<Graph> small_graphs() {
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= 5; ++n) {
        auto batch = testing::graphs_up_to_isomorphism(n);
        out.insert(out.end(), batch.begin(), batch.end());
    }
    return out;
}

bool bipartite(const Graph& g) {
    std::vector<int> side(g.n(), -1);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (side[s] != -1) {
            continue;
        }
        side[s] = 0;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

void reduction_faithfulness() {
    auto start = Clock::now();
    Faithfulness cubic;
    for (const Graph& g : cubic_fixtures()) {
        const std::size_t n = g.n();
        const std::size_t m = g.m();
        auto vc = solve_source_exact(VertexCoverSource{g, n}).optimum;
        auto expected = [&](std::size_t k) { return vc && *vc <= k; };
        cubic.check_budgets([&](std::size_t k) { return gen_1reach_vc({g, k}); },
                            [&](std::size_t k) { return 4 * m + k; }, expected, n);
        cubic.check_budgets([&](std::size_t k) { return gen_1reach_planar_vc({g, k}); },
                            [&](std::size_t k) { return 2 * m + 2 * n + k; }, expected, n);
        cubic.check_budgets([&](std::size_t k) { return gen_reach_vc({g, k}, 2, false); },
                            [&](std::size_t k) { return m + (n - 1) + k; }, expected, n);
        cubic.check_budgets([&](std::size_t k) { return gen_reach_vc({g, k}, 3, true); },
                            [&](std::size_t k) { return 2 * m + k; }, expected, n);
        for (std::size_t k = 0; k <= n; ++k) {
            cubic.budget_errors += solve_source_exact(VertexCoverSource{g, k}).yes == expected(k) ? 0 : 1;
        }
    }

    Faithfulness setcover;
    for (std::size_t u = 1; u <= 4; ++u) {
        const std::size_t subsets = (std::size_t{1} << u) - 1;
        for (std::size_t size = 0; size <= 4; ++size) {
            detail::for_each_subset(subsets, size, [&](const std::vector<std::size_t>& chosen) {
                SetCoverSource src{u, {}, 0};
                for (std::size_t s : chosen) {
                    std::vector<std::size_t> set;
                    for (std::size_t x = 0; x < u; ++x) {
                        if ((s + 1) >> x & 1U) {
                            set.push_back(x);
                        }
                    }
                    src.family.push_back(set);
                }
                auto with_k = [src](std::size_t k) {
                    SetCoverSource out = src;
                    out.k = k;
                    return out;
                };
                setcover.check_budgets([&](std::size_t k) { return gen_reach_setcover(with_k(k)); },
                                       [&](std::size_t k) { return u + k; },
                                       [&](std::size_t k) { return solve_source_exact(with_k(k)).yes; }, size);
                return false;
            });
        }
    }

    Faithfulness mcc;
    for (std::size_t shape = 0; shape < 8; ++shape) {
        std::vector<std::size_t> sizes{1 + (shape & 1U), 1 + (shape >> 1 & 1U), 1 + (shape >> 2 & 1U)};
        std::vector<std::pair<PartVertex, PartVertex>> candidates;
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) {
                for (std::size_t i = 0; i < sizes[a]; ++i) {
                    for (std::size_t j = 0; j < sizes[b]; ++j) {
                        candidates.push_back({{a, i}, {b, j}});
                    }
                }
            }
        }
        for (std::size_t mask = 0; mask < (std::size_t{1} << candidates.size()); ++mask) {
            MulticoloredCliqueSource src{sizes, {}};
            for (std::size_t e = 0; e < candidates.size(); ++e) {
                if (mask >> e & 1U) {
                    src.edges.push_back(candidates[e]);
                }
            }
            bool expected = solve_source_exact(src).yes;
            mcc.check(gen_reach_mcc(src, 3), 3 + 3, expected);
            mcc.check(gen_closed_mcc(src, 3), 3 + 3, expected);
        }
    }

    Faithfulness general;
    Faithfulness diam3;
    for (const Graph& g : small_graphs()) {
        const std::size_t n = g.n();
        const std::size_t m = g.m();
        auto expected = [&](std::size_t k) { return solve_source_exact(VertexCoverSource{g, k}).yes; };
        general.check_budgets([&](std::size_t k) { return gen_closed_vc({g, k}); },
                              [&](std::size_t k) { return 2 * m + k + 3; }, expected, n);
        general.check_budgets([&](std::size_t k) { return gen_diam2_vc({g, k}); },
                              [&](std::size_t k) { return 2 * m + 2 * n + k + 4; }, expected, n);
        diam3.check_budgets([&](std::size_t k) { return gen_diam3_vc({g, k}); },
                            [&](std::size_t k) { return 2 * m + n + k + 4; }, expected, n);
    }

    std::size_t total = 0;
    std::size_t wrong = 0;
    std::size_t budgets = 0;
    std::string detail;
    for (const auto& [name, f] : {std::pair<const char*, const Faithfulness&>{"cubic", cubic},
                                  {"set cover", setcover}, {"mcc", mcc}, {"closed/diam2", general},
                                  {"diam3", diam3}}) {
        total += f.checked;
        wrong += f.mismatches;
        budgets += f.budget_errors;
        detail += std::string(", ") + name + " " + std::to_string(f.mismatches) + "/" + std::to_string(f.checked);
    }
    report(6, wrong == 0 && budgets == 0,
           std::to_string(total) + " generated instances, " + std::to_string(wrong) + " mismatches" + detail + ", " +
               std::to_string(budgets) + " budget errors, " + std::to_string(since(start)) + " s");
}

void d1_fast_path() {
    std::size_t checked = 0;
    std::size_t bad = 0;
    std::mt19937_64 rng(7000);
    for (int i = 0; i < 200; ++i) {
        Variant v = i % 2 == 0 ? Variant::closed(1) : Variant::diam(1);
        Instance inst = oracle_instance(rng, v, 8, 14, 5);
        auto fast = solve_d1(inst);
        auto brute = brute_force_oracle(inst);
        ++checked;
        if (fast.status != brute.status || fast.optimum != brute.optimum) {
            ++bad;
        }
    }

    // 1000 planted 4-cliques inside a sparse random graph on 100000 vertices.
    const std::size_t n = 100000;
    const std::size_t r = 1000;
    std::set<Edge> edges;
    std::vector<VertexSet> habitats;
    for (std::size_t i = 0; i < r; ++i) {
        VertexSet h;
        const std::size_t size = 1 + i % 4;
        for (std::size_t j = 0; j < size; ++j) {
            h.push_back(static_cast<Vertex>(4 * i + j));
        }
        for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = a + 1; b < size; ++b) {
                edges.insert(Edge(h[a], h[b]));
            }
        }
        habitats.push_back(h);
    }
    while (edges.size() < 3 * n) {
        auto u = static_cast<Vertex>(rng() % n);
        auto w = static_cast<Vertex>(rng() % n);
        if (u != w) {
            edges.insert(Edge(u, w));
        }
    }
    Instance big(Graph(n, std::vector<Edge>(edges.begin(), edges.end())), habitats, 6 * r, Variant::closed(1));
    auto start = Clock::now();
    auto out = solve_d1(big);
    double seconds = since(start);
    bool big_ok = out.status == Status::kYes && verify(big, *out.witness).feasible;
    report(7, bad == 0 && big_ok && seconds < kD1Seconds,
           count(checked, bad, "d=1 instances") + "; n=100000 r=1000 in " + std::to_string(seconds) +
               " s (limit 1 s), answer " + std::string(to_string(out.status)));
}

void approx_scale() {
    RandomParams params;
    params.n = 2000;
    params.edge_count = 6000;
    params.r = 50;
    params.min_habitat = 2;
    params.max_habitat = 20;
    params.variant = Variant::reach(3);
    params.k = 6000;
    Instance inst = gen_random_instance(params, 8000);
    auto start = Clock::now();
    auto out = approx_reach(inst);
    double seconds = since(start);
    bool valid = out && satisfies_habitats(inst, out->edges);
    report(8, valid && seconds < kApproxSeconds,
           "n=2000 m=6000 r=50 d=3 in " + std::to_string(seconds) + " s (limit 10 s), " +
               (valid ? std::to_string(out->edges.size()) + " edges, feasible" : std::string("invalid output")));
}

void structure() {
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (const Graph& g : cubic_fixtures()) {
        for (std::size_t k = 0; k <= g.n(); ++k) {
            checked += 2;
            bad += gen_1reach_vc({g, k}).instance.graph().max_degree() <= 4 ? 0 : 1;
            bad += gen_reach_vc({g, k}, 2, false).instance.graph().max_degree() <= 4 ? 0 : 1;
        }
    }
    std::size_t skipped = 0;
    for (const Graph& g : small_graphs()) {
        bool isolated = false;
        for (Vertex v = 0; v < g.n(); ++v) {
            isolated = isolated || g.degree(v) == 0;
        }
        if (isolated) {
            ++skipped;
            continue;
        }
        for (std::size_t k = 0; k <= g.n(); ++k) {
            Graph out = gen_closed_vc({g, k}).instance.graph();
            ++checked;
            bad += bipartite(out) && diameter_of(out) <= 3 ? 0 : 1;
        }
    }
    report(9, bad == 0,
           count(checked, bad, "generated graphs") + "; closed_vc skips " + std::to_string(skipped) +
               " sources with isolated vertices");
}

}  // namespace

int main() {
    oracle_equivalence();
    approximation_ratio();
    KernelStats kernels = kernel_suite();
    report(3, kernels.unsound == 0,
           count(kernels.checked, kernels.unsound, "kernelized instances") + " (" + std::to_string(kernels.reduced) +
               " reduced, rest decided by the rules)");
    report(4, kernels.oversized == 0,
           std::to_string(kernels.checked) + " kernels, " + std::to_string(kernels.oversized) + " over the size bound");
    delta_kernel();
    reduction_faithfulness();
    d1_fast_path();
    approx_scale();
    structure();
    std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
