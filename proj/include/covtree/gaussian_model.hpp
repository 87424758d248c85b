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

#ifndef COVTREE_GAUSSIAN_MODEL_HPP_
#define COVTREE_GAUSSIAN_MODEL_HPP_

#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "covtree/errors.hpp"
#include "covtree/graph.hpp"
#include "covtree/sym_matrix.hpp"
#include "covtree/tolerances.hpp"

namespace covtree {

/// Graph with an edge (u, v) iff |m_uv| > tau * max|m|.
inline Graph zero_pattern_graph(const SymMatrix& m, double tau) {
    const double threshold = tau * m.max_abs();
    std::vector<Edge> edges;
    for (Vertex u = 0; u < m.size(); ++u) {
        for (Vertex v = u + 1; v < m.size(); ++v) {
            if (std::abs(m(u, v)) > threshold) edges.emplace_back(u, v);
        }
    }
    return Graph(m.size(), edges);
}

/// Zero-mean Gaussian N(0, Sigma). The covariance graph G0 is read off the
/// zero pattern of Sigma, the concentration graph G off that of K = Sigma^{-1}.
/// K and both graphs are computed on first use; copies share that cache.
class GaussianModel {
public:
    explicit GaussianModel(SymMatrix sigma, Tolerances tol = {})
        : sigma_(std::move(sigma)), tol_(tol), cache_(std::make_shared<Cache>()) {
        if (!(tol_.zero_threshold > 0.0)) throw InputError("tau must be positive");
        if (sigma_.size() > kMaxVertices) {
            throw InputError("models are limited to " + std::to_string(kMaxVertices) + " variables");
        }
        const PivotedCholesky chol(sigma_, tol_.pd_relative_pivot);
        if (!chol.ok()) {
            throw DomainError("covariance matrix is not positive definite (factorization failed at pivot index " +
                                  std::to_string(chol.failed_pivot()) + ")",
                              chol.failed_pivot());
        }
    }

    std::size_t size() const { return sigma_.size(); }
    const SymMatrix& sigma() const { return sigma_; }
    const Tolerances& tolerances() const { return tol_; }
    double tau() const { return tol_.zero_threshold; }

    /// Absolute cut-off below which a (conditional) covariance counts as zero.
    double zero_threshold() const { return tol_.zero_threshold * sigma_.max_abs(); }

    const SymMatrix& precision() const {
        std::call_once(cache_->k_once, [&] { cache_->k = inverse(sigma_, tol_); });
        return cache_->k;
    }

    const Graph& covariance_graph() const {
        std::call_once(cache_->g0_once, [&] { cache_->g0 = zero_pattern_graph(sigma_, tol_.zero_threshold); });
        return cache_->g0;
    }

    const Graph& concentration_graph() const {
        std::call_once(cache_->g_once, [&] { cache_->g = zero_pattern_graph(precision(), tol_.zero_threshold); });
        return cache_->g;
    }

    bool marginally_independent(Vertex u, Vertex v) const {
        check_pair(u, v);
        return std::abs(sigma_(u, v)) <= zero_threshold();
    }

    /// max |entry| of Cov(X_a, X_b | X_c).
    double dependence(VertexSet a, VertexSet b, VertexSet c) const {
        validate_triple(Triple{a, b, c}, size());
        return conditional_cross_cov(sigma_, a, b, c, tol_).max_abs();
    }

    bool conditionally_independent(VertexSet a, VertexSet b, VertexSet c) const {
        return dependence(a, b, c) <= zero_threshold();
    }

private:
    struct Cache {
        std::once_flag k_once;
        std::once_flag g0_once;
        std::once_flag g_once;
        SymMatrix k;
        Graph g0;
        Graph g;
    };

    void check_pair(Vertex u, Vertex v) const {
        if (u >= size() || v >= size()) throw InputError("vertex out of range");
        if (u == v) throw InputError("independence query needs two distinct variables");
    }

    SymMatrix sigma_;
    Tolerances tol_;
    std::shared_ptr<Cache> cache_;
};

} // namespace covtree

#endif // COVTREE_GAUSSIAN_MODEL_HPP_
