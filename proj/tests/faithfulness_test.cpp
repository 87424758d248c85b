/*
 * Copyright 2026 The covtree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "covtree/faithfulness.hpp"
#include "covtree/instance_gen.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace covtree;

namespace {

GaussianModel tree_model(std::size_t n, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.seed = seed;
    return GaussianModel(generate_covariance(spec));
}

/// 4-cycle 0-1-2-3-0 covariance whose two 0-2 path terms cancel in k_02, so
/// X_0 and X_2 are independent given X_{1,3} without any separation.
SymMatrix cancelling_four_cycle(std::uint64_t seed) {
    Random rng(seed);
    const double s01 = rng.uniform(0.2, 0.6);
    const double s12 = rng.uniform(0.2, 0.6);
    const double s03 = rng.uniform(0.2, 0.6);
    const double d1 = rng.uniform(1.5, 2.5);
    const double d3 = rng.uniform(1.5, 2.5);
    // s01 s12 d3 + s03 s32 d1 = 0
    const double s32 = -s01 * s12 * d3 / (s03 * d1);
    return SymMatrix::from_rows({{2.0, s01, 0.0, s03}, {s01, d1, s12, 0.0}, {0.0, s12, 2.0, s32}, {s03, 0.0, s32, d3}});
}

} // namespace

TEST(EnumerateTriples, TwoVertices) {
    const auto ts = enumerate_triples(2);
    ASSERT_EQ(ts.size(), 2u);
    EXPECT_TRUE(std::find(ts.begin(), ts.end(), Triple{VertexSet{0}, VertexSet{1}, VertexSet{}}) != ts.end());
    EXPECT_TRUE(std::find(ts.begin(), ts.end(), Triple{VertexSet{1}, VertexSet{0}, VertexSet{}}) != ts.end());
}

TEST(EnumerateTriples, CountsMatchClosedFormAndNestedLoops) {
    EXPECT_EQ(oracle::count_triples(3), 18u);
    EXPECT_EQ(enumerate_triples(3).size(), 18u);
    EXPECT_EQ(oracle::count_triples(7), 12138u);
    EXPECT_EQ(enumerate_triples(7).size(), 12138u);
    for (std::size_t n = 2; n <= 7; ++n) EXPECT_EQ(triple_count(n), oracle::count_triples(n));
}

TEST(EnumerateTriples, EachTripleOnceAndValid) {
    const auto ts = enumerate_triples(5);
    std::vector<std::uint64_t> codes;
    for (const Triple& t : ts) {
        EXPECT_NO_THROW(validate_triple(t, 5));
        codes.push_back(triple_code(t));
        EXPECT_EQ(triple_from_code(codes.back(), 5), t);
    }
    EXPECT_TRUE(std::is_sorted(codes.begin(), codes.end()));
    EXPECT_EQ(std::adjacent_find(codes.begin(), codes.end()), codes.end());
}

TEST(EnumerateTriples, Limits) {
    EXPECT_THROW(enumerate_triples(1), InputError);
    EXPECT_THROW(enumerate_triples(10), ResourceLimitError);
    EXPECT_THROW(enumerate_triples(6, 5), ResourceLimitError);
}

TEST(Audit, IdentityHasNoViolations) {
    const AuditReport r = audit_covariance_faithfulness(GaussianModel(SymMatrix::identity(5)));
    EXPECT_EQ(r.triples_checked, triple_count(5));
    EXPECT_TRUE(r.clean());
}

TEST(Audit, TreesAreFaithful) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 4 + seed % 3;
        const AuditReport r = audit_covariance_faithfulness(tree_model(n, seed));
        EXPECT_EQ(r.triples_checked, triple_count(n));
        EXPECT_TRUE(r.markov_violations.empty()) << seed;
        EXPECT_TRUE(r.faithfulness_violations.empty()) << seed;
        EXPECT_GT(r.margins.separation_ratio(), 1e3);
    }
}

TEST(Audit, ForestsAreFaithful) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenSpec spec;
        spec.n = 6;
        spec.pattern = Pattern::EdgeList;
        spec.edges = random_forest({2, 4}, seed).edges();
        spec.seed = seed;
        EXPECT_TRUE(audit_covariance_faithfulness(GaussianModel(generate_covariance(spec))).clean()) << seed;
    }
}

TEST(Audit, CancellingCycleBreaksFaithfulnessButNotMarkov) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const SymMatrix sigma = cancelling_four_cycle(seed);
        ASSERT_TRUE(is_positive_definite(sigma));
        // Verify the cancellation by direct inversion of the full matrix.
        const auto k = oracle::gauss_jordan_inverse(sigma.rows());
        ASSERT_LT(std::abs(k[0][2]), 1e-12);
        const GaussianModel model(sigma);
        ASSERT_EQ(model.covariance_graph(), cycle_graph(4));
        const AuditReport r = audit_covariance_faithfulness(model);
        EXPECT_TRUE(r.markov_violations.empty());
        ASSERT_FALSE(r.faithfulness_violations.empty());
        const Triple target{VertexSet{0}, VertexSet{2}, VertexSet{}};
        const auto hit = std::find_if(r.faithfulness_violations.begin(), r.faithfulness_violations.end(),
                                      [&](const Violation& v) { return v.verdict.triple == target; });
        ASSERT_NE(hit, r.faithfulness_violations.end());
        EXPECT_EQ(hit->form, ViolationForm::Direct);
        EXPECT_TRUE(hit->verdict.independent_given_complement);
        EXPECT_FALSE(hit->verdict.separated_direct);
    }
}

TEST(Audit, MarkovSoundOnArbitraryPatterns) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 4 + seed % 3;
        const GaussianModel m(seed % 3 == 0 ? fixtures::random_gram(n, seed) : fixtures::random_sparse_sigma(n, seed));
        EXPECT_TRUE(audit_covariance_faithfulness(m).markov_violations.empty()) << seed;
    }
}

TEST(Audit, TripleSymmetry) {
    const GaussianModel m(fixtures::random_sparse_sigma(5, 17));
    const auto verdicts = exhaustive_verdicts(m);
    for (const TripleVerdict& v : verdicts) {
        const TripleVerdict w = evaluate_triple(m, Triple{v.triple.b, v.triple.a, v.triple.s});
        EXPECT_TRUE(v.same_decisions(w));
    }
}

TEST(Audit, SingletonVerdictsAgreeWithSubmatrixInversion) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const GaussianModel m(seed % 2 ? tree_model(5, seed) : GaussianModel(fixtures::random_sparse_sigma(5, seed)));
        for (const TripleVerdict& v : exhaustive_verdicts(m)) {
            if (v.triple.a.size() != 1 || v.triple.b.size() != 1) continue;
            const Vertex a = v.triple.a.front();
            const Vertex b = v.triple.b.front();
            const auto idx = (v.triple.s | v.triple.a | v.triple.b).to_vector();
            const auto k = oracle::gauss_jordan_inverse(oracle::submatrix(m.sigma().rows(), idx));
            const auto pa = std::find(idx.begin(), idx.end(), a) - idx.begin();
            const auto pb = std::find(idx.begin(), idx.end(), b) - idx.begin();
            const bool k_zero = std::abs(k[pa][pb]) <= 1e-12 * std::abs(k[pa][pa]);
            EXPECT_EQ(v.independent_given_s, k_zero);
        }
    }
}

TEST(Audit, ThreadCountDoesNotChangeReport) {
    const GaussianModel m(cancelling_four_cycle(3));
    AuditOptions one;
    one.threads = 1;
    AuditOptions four;
    four.threads = 4;
    const auto a = exhaustive_verdicts(m, one);
    const auto b = exhaustive_verdicts(m, four);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].triple, b[i].triple);
        EXPECT_TRUE(a[i].same_decisions(b[i]));
    }
}

TEST(Audit, SampledModeBeyondCap) {
    const GaussianModel m = tree_model(12, 5);
    EXPECT_THROW(audit_covariance_faithfulness(m), ResourceLimitError);
    AuditOptions opts;
    opts.samples = 3000;
    opts.seed = 1;
    const AuditReport r = audit_covariance_faithfulness(m, opts);
    EXPECT_FALSE(r.exhaustive);
    EXPECT_EQ(r.triples_checked, 3000u);
    EXPECT_TRUE(r.clean());
}

TEST(Duality, HoldsOnTreesIdentityAndDenseModels) {
    EXPECT_TRUE(check_proposition1_duality(GaussianModel(SymMatrix::identity(4))));
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        EXPECT_TRUE(check_proposition1_duality(tree_model(4 + seed % 3, seed)));
        EXPECT_TRUE(check_proposition1_duality(GaussianModel(fixtures::random_gram(4 + seed % 3, seed))));
    }
    EXPECT_TRUE(check_proposition1_duality(GaussianModel(cancelling_four_cycle(0))));
}

TEST(Duality, DetectsTamperedTable) {
    const GaussianModel m = tree_model(4, 2);
    auto verdicts = exhaustive_verdicts(m);
    ASSERT_TRUE(check_proposition1_duality(verdicts, 4));
    verdicts[5].independent_given_s = !verdicts[5].independent_given_s;
    EXPECT_FALSE(check_proposition1_duality(verdicts, 4));
}

TEST(Lemma2, Examples) {
    const Lemma2Check fig = check_lemma2(GaussianModel(fixtures::example_tree_sigma()));
    EXPECT_TRUE(fig.components_equal);
    EXPECT_EQ(fig.tree_implies_complete, std::optional<bool>(true));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenSpec spec;
        spec.n = 8;
        spec.pattern = Pattern::EdgeList;
        spec.edges = random_forest({3, 5}, seed).edges();
        spec.seed = seed;
        const Lemma2Check r = check_lemma2(GaussianModel(generate_covariance(spec)));
        EXPECT_TRUE(r.components_equal);
        EXPECT_EQ(r.tree_implies_complete, std::optional<bool>(true));
    }

    const Lemma2Check id = check_lemma2(GaussianModel(SymMatrix::identity(4)));
    EXPECT_TRUE(id.components_equal);
    EXPECT_FALSE(id.tree_implies_complete.has_value());
}

TEST(Lemma2, NonTreeComponentsAreNotJudged) {
    // A 4-cycle component is not a tree, so only the path component counts.
    GenSpec spec;
    spec.n = 6;
    spec.pattern = Pattern::EdgeList;
    spec.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}};
    const Lemma2Check r = check_lemma2(GaussianModel(generate_covariance(spec)));
    EXPECT_TRUE(r.components_equal);
    EXPECT_EQ(r.tree_implies_complete, std::optional<bool>(true));
}

TEST(EvenCycle, PositiveEntriesGiveCompleteConcentrationGraph) {
    for (std::size_t n : {4u, 6u, 8u}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(check_even_cycle_remark(n, seed)) << n << " " << seed;
    }
    EXPECT_THROW(check_even_cycle_remark(5, 0), InputError);
    EXPECT_THROW(check_even_cycle_remark(2, 0), InputError);
}
