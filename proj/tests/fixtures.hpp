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

#ifndef COVTREE_TESTS_FIXTURES_HPP_
#define COVTREE_TESTS_FIXTURES_HPP_

#include <initializer_list>
#include <vector>

#include "covtree/graph.hpp"
#include "covtree/instance_gen.hpp"

namespace fixtures {

using covtree::Edge;
using covtree::Vertex;
using covtree::VertexSet;

/// The 8-vertex example tree, labels 1..8 mapped to ids 0..7.
inline std::vector<Edge> example_tree_edges() {
    const int pairs[][2] = {{1, 2}, {2, 3}, {3, 5}, {3, 4}, {4, 6}, {5, 7}, {7, 8}};
    std::vector<Edge> out;
    for (const auto& p : pairs) out.emplace_back(p[0] - 1, p[1] - 1);
    return out;
}

inline covtree::Graph example_tree() { return covtree::Graph(8, example_tree_edges()); }

/// 1-based label to internal id.
inline Vertex L(int label) { return static_cast<Vertex>(label - 1); }

inline VertexSet labels(std::initializer_list<int> ls) {
    VertexSet s;
    for (int l : ls) s.insert(L(l));
    return s;
}

inline covtree::SymMatrix example_tree_sigma(std::uint64_t seed = 7) {
    covtree::GenSpec spec;
    spec.n = 8;
    spec.pattern = covtree::Pattern::EdgeList;
    spec.edges = example_tree_edges();
    spec.seed = seed;
    return covtree::generate_covariance(spec);
}

/// A A^T + 0.1 I with A uniform on [-1, 1]: dense and not diagonally dominant.
inline covtree::SymMatrix random_gram(std::size_t n, std::uint64_t seed) {
    covtree::Random rng(seed);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (auto& row : a) {
        for (double& x : row) x = rng.uniform(-1.0, 1.0);
    }
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) m[i][j] += a[i][k] * a[j][k];
        }
        m[i][i] += 0.1;
    }
    return covtree::SymMatrix::from_rows(m);
}

/// Diagonally dominant covariance on a G(n, p) support with p drawn per seed.
inline covtree::SymMatrix random_sparse_sigma(std::size_t n, std::uint64_t seed) {
    covtree::Random rng(seed ^ 0x9e3779b97f4a7c15ULL);
    covtree::GenSpec spec;
    spec.n = n;
    spec.pattern = covtree::Pattern::EdgeList;
    spec.edges = covtree::random_graph(n, rng.uniform(0.15, 0.9), seed).edges();
    spec.seed = seed;
    return covtree::generate_covariance(spec);
}

} // namespace fixtures

#endif // COVTREE_TESTS_FIXTURES_HPP_
