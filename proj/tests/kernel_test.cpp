#include <random>

#include <gtest/gtest.h>

#include "gbp/exact.hpp"
#include "gbp/kernel.hpp"
#include "gbp/reductions.hpp"
#include "support/reference.hpp"

namespace gbp {
namespace {

Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) {
        edges.emplace_back(v, v + 1);
    }
    return Graph(n, edges);
}

TEST(Rules, SingletonHabitatIsDeleted) {
    Instance inst(path(4), {{3}, {0, 1}}, 2, Variant::reach(2));
    auto out = rr_immediate(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.rule, RuleId::kSingletonHabitat);
    EXPECT_EQ(out->application.habitat, 0U);
    EXPECT_EQ(out->instance->habitats(), (std::vector<VertexSet>{{0, 1}}));
}

TEST(Rules, LowDegreeOutsideVertexIsDeleted) {
    Graph g(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Instance inst(g, {{0, 1, 2, 3, 4}}, 4, Variant::reach(2));
    auto out = rr_immediate(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.rule, RuleId::kLowDegreeOutside);
    EXPECT_EQ(out->application.vertex, 5U);
    EXPECT_EQ(out->instance->graph().n(), 5U);
}

TEST(Rules, IsolatedMemberGivesTrivialNo) {
    Instance inst(Graph(3, {{1, 2}}), {{0, 1}, {1, 2}}, 2, Variant::reach(2));
    auto out = rr_immediate(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.rule, RuleId::kIsolatedMember);
    EXPECT_FALSE(out->instance);
}

TEST(Rules, PendantMemberForcesItsEdge) {
    // 0 is a leaf hanging off 1, and every habitat holding 0 also holds 1.
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    Instance inst(g, {{0, 1, 3}}, 3, Variant::reach(2));
    auto out = rr_pendant_member(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.edge, Edge(0, 1));
    EXPECT_EQ(out->instance->k(), 2U);
    EXPECT_EQ(out->instance->habitats(), (std::vector<VertexSet>{{0, 2}}));
    EXPECT_FALSE(rr_pendant_member(inst.with_k(0))->instance);
}

TEST(Rules, PendantMemberSkipsUnsafeCases) {
    // Habitat {0,2} on P3: deleting 0 would drop the only constraint.
    Instance inst(path(3), {{0, 2}}, 2, Variant::reach(2));
    EXPECT_FALSE(rr_pendant_member(inst));
    Instance closed(Graph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}), {{0, 1, 2}}, 3, Variant::closed(2));
    EXPECT_FALSE(rr_pendant_member(closed));
}

TEST(Rules, Budget) {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    Instance five(g, {{0, 1, 2, 3, 4}}, 2, Variant::reach(2));
    auto out = rr_budget(five);
    ASSERT_TRUE(out);
    EXPECT_FALSE(out->instance);
    Instance four(g, {{0, 1, 2, 3}}, 2, Variant::reach(2));
    EXPECT_FALSE(rr_budget(four));
    Instance none(g, {}, 0, Variant::reach(2));
    EXPECT_FALSE(rr_budget(none));
}

TEST(Rules, OutsideEdge) {
    Graph g(6, {{0, 1}, {0, 4}, {4, 5}, {1, 5}});
    Instance inst(g, {{0, 1}}, 2, Variant::reach(2));
    auto out = rr_outside_edges(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.edge, Edge(4, 5));
    EXPECT_FALSE(out->instance->graph().has_edge(4, 5));
    EXPECT_TRUE(out->instance->graph().has_edge(0, 4));
    EXPECT_FALSE(rr_outside_edges(*out->instance));
}

TEST(Rules, Twins) {
    // Vertices 2 and 3 are outside leaves... of both habitat vertices.
    Graph g(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
    Instance inst(g, {{0, 1}}, 2, Variant::reach(2));
    auto out = rr_twins(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.vertex, 2U);
    EXPECT_EQ(out->instance->graph().n(), 3U);
    EXPECT_FALSE(rr_twins(*out->instance));
    // Dominated habitat vertices are left alone.
    Instance members(Graph(3, {{0, 2}, {1, 2}}), {{0, 1}}, 2, Variant::reach(2));
    EXPECT_FALSE(rr_twins(members));
}

TEST(Rules, DuplicateHabitats) {
    Instance inst(path(3), {{0, 1}, {1, 0}, {1, 2}}, 2, Variant::reach(2));
    auto out = rr_dedup_habitats(inst);
    ASSERT_TRUE(out);
    EXPECT_EQ(out->application.habitat, 1U);
    EXPECT_EQ(out->instance->r(), 2U);
    EXPECT_FALSE(rr_dedup_habitats(*out->instance));
}

TEST(Kernelize, BudgetTrivialNo) {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    auto res = kernelize(Instance(g, {{0, 1, 2, 3, 4}}, 2, Variant::reach(2)));
    EXPECT_EQ(res.verdict, Verdict::kTrivialNo);
    EXPECT_EQ(res.trace.back().rule, RuleId::kBudget);
}

TEST(Kernelize, DiamP3IsNo) {
    Instance inst(path(3), {{0, 2}}, 2, Variant::diam(2));
    auto res = kernelize(inst);
    EXPECT_EQ(res.verdict, Verdict::kTrivialNo);
    EXPECT_EQ(brute_force_oracle(inst).status, Status::kNo);
}

TEST(Kernelize, RuleFreeInstanceIsUnchanged) {
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    Instance inst(g, {{0, 1, 2, 3}}, 4, Variant::reach(2));
    auto res = kernelize(inst);
    EXPECT_EQ(res.verdict, Verdict::kReduced);
    EXPECT_TRUE(res.trace.empty());
    EXPECT_EQ(*res.instance, inst);
}

TEST(Kernelize, NoHabitatsIsTrivialYes) {
    EXPECT_EQ(kernelize(Instance(path(3), {{1}}, 0, Variant::closed(2))).verdict, Verdict::kTrivialYes);
}

TEST(KernelSizeCheck, Examples) {
    KernelResult diam;
    diam.verdict = Verdict::kReduced;
    diam.instance = Instance(path(5), {{0, 1, 2, 3, 4}}, 2, Variant::diam(2));
    EXPECT_FALSE(kernel_size_check(diam, 2, Variant::diam(2), false));
    diam.instance = Instance(path(4), {{0, 1, 2, 3}}, 2, Variant::diam(2));
    EXPECT_TRUE(kernel_size_check(diam, 2, Variant::diam(2), false));

    KernelResult empty;
    empty.verdict = Verdict::kTrivialYes;
    EXPECT_TRUE(kernel_size_check(empty, 0, Variant::reach(2), true));

    KernelResult reach;
    reach.verdict = Verdict::kReduced;
    reach.instance = Instance(path(10), {{0, 9}}, 2, Variant::reach(2));
    EXPECT_TRUE(kernel_size_check(reach, 2, Variant::reach(2), false));
    reach.instance = Instance(path(11), {{0, 10}}, 2, Variant::reach(2));
    EXPECT_FALSE(kernel_size_check(reach, 2, Variant::reach(2), false));
}

TEST(DeltaKernel, Examples) {
    auto near = delta_kernel_closed(Instance(path(10), {{0, 1}}, 3, Variant::closed(2)));
    ASSERT_EQ(near.verdict, Verdict::kReduced);
    EXPECT_EQ(near.original_ids, (std::vector<Vertex>{0, 1, 2, 3}));
    EXPECT_EQ(near.instance->graph(), path(4));

    EXPECT_EQ(delta_kernel_closed(Instance(path(10), {{0, 5}}, 9, Variant::closed(2))).verdict, Verdict::kTrivialNo);

    Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    auto whole = delta_kernel_closed(Instance(star, {{0, 1, 2, 3, 4}}, 4, Variant::closed(2)));
    EXPECT_EQ(whole.instance->graph(), star);

    EXPECT_THROW(delta_kernel_closed(Instance(star, {{1, 2}}, 2, Variant::reach(2))), InputError);
}

TEST(LiftSolution, EmptyTraceIsIdentity) {
    Instance inst(path(3), {{0, 1, 2}}, 2, Variant::reach(1));
    KernelResult res;
    res.verdict = Verdict::kReduced;
    res.instance = inst;
    res.original_ids = {0, 1, 2};
    Solution sol{{Edge(0, 1), Edge(1, 2)}};
    EXPECT_EQ(lift_solution(inst, res, sol), sol);
    EXPECT_THROW(lift_solution(inst, res, Solution{{Edge(0, 1)}}), InputError);
}

TEST(LiftSolution, AddsForcedEdge) {
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
    Instance inst(g, {{0, 1, 3}}, 3, Variant::reach(2));
    auto res = kernelize(inst);
    ASSERT_EQ(res.verdict, Verdict::kReduced);
    EXPECT_EQ(res.forced_edges, (EdgeSet{Edge(0, 1)}));
    auto inner = brute_force_oracle(*res.instance);
    ASSERT_EQ(inner.status, Status::kYes);
    auto lifted = lift_solution(inst, res, *inner.witness);
    EXPECT_TRUE(lifted.edges.count(Edge(0, 1)));
    EXPECT_TRUE(verify(inst, lifted).feasible);
}

struct KernelCase {
    VariantKind kind;
    std::size_t d;
};

class KernelSoundness : public ::testing::TestWithParam<std::tuple<KernelCase, int>> {};

TEST_P(KernelSoundness, PreservesAnswerAndLifts) {
    auto [which, seed] = GetParam();
    std::mt19937_64 rng(seed * 31 + static_cast<int>(which.kind) * 7 + which.d);
    RandomParams params;
    params.n = 3 + rng() % 6;
    params.edge_count = std::min<std::size_t>(params.n * (params.n - 1) / 2, params.n - 1 + rng() % 6);
    params.r = 1 + rng() % 3;
    params.min_habitat = 1;
    params.max_habitat = 4;
    params.variant = Variant::of(which.kind, which.d);
    params.k = rng() % 5;
    Instance inst = gen_random_instance(params, rng());
    auto truth = testing::reference_optimum(inst);
    bool yes = truth && *truth <= inst.k();

    auto res = kernelize(inst);
    if (res.verdict == Verdict::kTrivialNo) {
        EXPECT_FALSE(yes);
        return;
    }
    if (res.verdict == Verdict::kTrivialYes) {
        EXPECT_TRUE(yes);
        EXPECT_TRUE(verify(inst, Solution{res.forced_edges}).feasible);
        return;
    }
    EXPECT_EQ(res.instance->k() + res.forced_edges.size(), inst.k());
    auto inner = brute_force_oracle(*res.instance);
    EXPECT_EQ(inner.status == Status::kYes, yes);
    if (inner.status == Status::kYes) {
        auto lifted = lift_solution(inst, res, *inner.witness);
        EXPECT_LE(lifted.edges.size(), inst.k());
        EXPECT_EQ(lifted.edges.size(), *truth);
    }
    // Fixpoint.
    EXPECT_TRUE(kernelize(*res.instance).trace.empty());
    EXPECT_TRUE(kernel_size_check(res, res.instance->k(), inst.variant(), false));
}

INSTANTIATE_TEST_SUITE_P(
    Variants, KernelSoundness,
    ::testing::Combine(::testing::Values(KernelCase{VariantKind::kReach, 2}, KernelCase{VariantKind::kClosed, 2},
                                         KernelCase{VariantKind::kDiam, 2}, KernelCase{VariantKind::kDiam, 3},
                                         KernelCase{VariantKind::kReach, 1}, KernelCase{VariantKind::kReach, 3},
                                         KernelCase{VariantKind::kClosed, 3}, KernelCase{VariantKind::kConnect, 1}),
                       ::testing::Range(0, 40)));

class SingleRuleSoundness : public ::testing::TestWithParam<int> {};

// Each licensed rule, applied once on its own, keeps the answer.
TEST_P(SingleRuleSoundness, EveryRuleAlone) {
    std::mt19937_64 rng(GetParam());
    for (auto variant : {Variant::reach(2), Variant::closed(2), Variant::diam(2)}) {
        RandomParams params;
        params.n = 4 + rng() % 5;
        params.edge_count = std::min<std::size_t>(params.n * (params.n - 1) / 2, params.n + rng() % 5);
        params.r = 1 + rng() % 3;
        params.min_habitat = 1;
        params.variant = variant;
        params.k = rng() % 5;
        Instance inst = gen_random_instance(params, rng());
        auto truth = testing::reference_optimum(inst);
        bool yes = truth && *truth <= inst.k();
        for (auto rule : detail::licensed_rules(variant)) {
            auto out = rule(inst);
            if (!out) {
                continue;
            }
            if (!out->instance) {
                EXPECT_FALSE(yes) << to_string(out->application.rule);
                continue;
            }
            auto after = testing::reference_optimum(*out->instance);
            EXPECT_EQ(after && *after <= out->instance->k(), yes) << to_string(out->application.rule);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SingleRuleSoundness, ::testing::Range(0, 60));

class DeltaKernelExactness : public ::testing::TestWithParam<int> {};

TEST_P(DeltaKernelExactness, PreservesOptimum) {
    std::mt19937_64 rng(GetParam());
    RandomParams params;
    params.n = 5 + rng() % 6;
    params.edge_count = std::min<std::size_t>(12, params.n + rng() % 4);
    params.r = 1 + rng() % 2;
    params.max_habitat = 3;
    params.variant = Variant::closed(1 + rng() % 3);
    params.k = 12;
    Instance inst = gen_random_instance(params, rng());
    auto before = testing::reference_optimum(inst);
    auto res = delta_kernel_closed(inst);
    if (res.verdict == Verdict::kTrivialNo) {
        EXPECT_FALSE(before);
        return;
    }
    EXPECT_EQ(testing::reference_optimum(*res.instance), before);
}

INSTANTIATE_TEST_SUITE_P(Seeds, DeltaKernelExactness, ::testing::Range(0, 60));

}  // namespace
}  // namespace gbp
