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

#ifndef COVTREE_INSTANCE_GEN_HPP_
#define COVTREE_INSTANCE_GEN_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "covtree/errors.hpp"
#include "covtree/graph.hpp"
#include "covtree/sym_matrix.hpp"

namespace covtree {

// Seeded generation of positive-definite covariance matrices with a prescribed
// covariance-graph support. The random source is std::mt19937_64 (fully
// specified by the standard); doubles are drawn as (x >> 11) * 2^-53 and
// integers in [0, n) as floor(u * n), so streams do not depend on the
// standard library's distribution implementations.

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform on {0, ..., n-1}.
    std::size_t below(std::size_t n) {
        return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
    }

private:
    std::mt19937_64 engine_;
};

/// Decodes a Pruefer sequence (entries in [0, n), length n - 2) into a labelled tree.
inline Graph tree_from_pruefer(const std::vector<Vertex>& code) {
    const std::size_t n = code.size() + 2;
    std::vector<std::size_t> degree(n, 1);
    for (Vertex x : code) {
        if (x >= n) throw InputError("Pruefer entry out of range");
        ++degree[x];
    }
    std::vector<Edge> edges;
    // Linear-time decode: `leaf` is the smallest current leaf.
    std::size_t ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    Vertex leaf = ptr;
    for (Vertex x : code) {
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return Graph(n, edges);
}

inline Graph random_tree(std::size_t n, Random& rng) {
    if (n == 0) throw InputError("random_tree needs n >= 1");
    if (n == 1) return Graph(1);
    std::vector<Vertex> code(n - 2);
    for (Vertex& x : code) x = rng.below(n);
    return tree_from_pruefer(code);
}

/// Uniformly random labelled tree on n vertices.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
    Random rng(seed);
    return random_tree(n, rng);
}

/// Forest whose components are uniform random trees of the given sizes, with
/// vertex ids shuffled so components interleave.
inline Graph random_forest(const std::vector<std::size_t>& component_sizes, std::uint64_t seed) {
    Random rng(seed);
    const std::size_t n = std::accumulate(component_sizes.begin(), component_sizes.end(), std::size_t{0});
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
    std::vector<Edge> edges;
    std::size_t offset = 0;
    for (std::size_t size : component_sizes) {
        for (const Edge& e : random_tree(size, rng).edges()) edges.emplace_back(ids[offset + e.first], ids[offset + e.second]);
        offset += size;
    }
    return Graph(n, edges);
}

/// Erdos-Renyi G(n, p).
inline Graph random_graph(std::size_t n, double density, std::uint64_t seed) {
    Random rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (rng.uniform() < density) edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw InputError("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

enum class Pattern { RandomTree, EdgeList, Cycle, Dense };
enum class SignMode { Mixed, Positive };

struct GenSpec {
    std::size_t n = 0;
    Pattern pattern = Pattern::RandomTree;
    /// Support for Pattern::EdgeList.
    std::vector<Edge> edges;
    double weight_min = 0.1;
    double weight_max = 1.0;
    SignMode sign_mode = SignMode::Mixed;
    std::uint64_t seed = 0;
    double dominance_margin = 0.1;
    /// Diagonal jitter is uniform on [0, diagonal_jitter).
    double diagonal_jitter = 0.5;
    /// Structural-zero threshold the output must be unambiguous under.
    double tau = 1e-10;
};

struct Instance {
    Graph support;
    SymMatrix sigma;
};

inline void validate(const GenSpec& spec) {
    if (spec.n == 0 || spec.n > kMaxVertices) {
        throw InputError("n must be in [1, " + std::to_string(kMaxVertices) + "]");
    }
    if (!(spec.weight_min > 0.0) || !(spec.weight_min <= spec.weight_max) || !std::isfinite(spec.weight_max)) {
        throw InputError("weight range must satisfy 0 < min <= max < inf");
    }
    if (!(spec.dominance_margin > 0.0)) throw InputError("dominance margin must be positive");
    if (!(spec.diagonal_jitter >= 0.0)) throw InputError("diagonal jitter must be non-negative");
    const double scale_bound = spec.weight_max * static_cast<double>(spec.n - 1) + spec.dominance_margin +
                               spec.diagonal_jitter;
    if (spec.weight_min < 10.0 * spec.tau * scale_bound) {
        throw InputError("weight range lower bound is too close to zero for the structural-zero threshold");
    }
    if (spec.pattern == Pattern::Cycle && spec.n < 3) throw InputError("cycle pattern needs n >= 3");
}

/// Exact zeros off the support, magnitudes in the weight range on it, and a
/// strictly diagonally dominant diagonal (hence positive definite).
inline Instance generate_instance(const GenSpec& spec) {
    validate(spec);
    Random rng(spec.seed);
    Instance out;
    switch (spec.pattern) {
    case Pattern::RandomTree: out.support = random_tree(spec.n, rng); break;
    case Pattern::EdgeList: out.support = Graph(spec.n, spec.edges); break;
    case Pattern::Cycle: out.support = cycle_graph(spec.n); break;
    case Pattern::Dense: out.support = Graph::complete(spec.n); break;
    }
    std::vector<std::vector<double>> rows(spec.n, std::vector<double>(spec.n, 0.0));
    for (const Edge& e : out.support.edges()) {
        double w = rng.uniform(spec.weight_min, spec.weight_max);
        if (spec.sign_mode == SignMode::Mixed && rng.uniform() < 0.5) w = -w;
        rows[e.first][e.second] = w;
        rows[e.second][e.first] = w;
    }
    for (std::size_t i = 0; i < spec.n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < spec.n; ++j) off += i == j ? 0.0 : std::abs(rows[i][j]);
        rows[i][i] = off + spec.dominance_margin + spec.diagonal_jitter * rng.uniform();
    }
    out.sigma = SymMatrix::from_rows(rows);
    return out;
}

inline SymMatrix generate_covariance(const GenSpec& spec) { return generate_instance(spec).sigma; }

} // namespace covtree

#endif // COVTREE_INSTANCE_GEN_HPP_
