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

#ifndef COVTREE_PATH_EXPANSION_HPP_
#define COVTREE_PATH_EXPANSION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "covtree/errors.hpp"
#include "covtree/gaussian_model.hpp"
#include "covtree/graph.hpp"
#include "covtree/sym_matrix.hpp"
#include "covtree/tolerances.hpp"

namespace covtree {

// Path-sum identity for Gaussian precision/covariance entries. For u != v
//
//   k_uv = sum over simple u-v paths p in G0 of
//          (-1)^(m+1) * prod_{edges (a,b) of p} sigma_ab * det(Sigma \ p) / det(Sigma)
//
// where m is the number of vertices on p (so odd-edge paths enter negatively)
// and Sigma \ p drops the rows and columns of every vertex on p. Swapping the
// roles of Sigma and K (and G0 for G) gives sigma_uv from K.

/// One path's contribution: sign * weight_product * minor_ratio.
struct PathTerm {
    Path path;
    /// +1 iff the path has an even number of edges.
    int sign = 1;
    /// Product of the matrix entries along the path's edges.
    double weight_product = 0.0;
    /// det(M \ p) / det(M).
    double minor_ratio = 0.0;

    double contribution() const { return sign * weight_product * minor_ratio; }
};

struct PathExpansion {
    double value = 0.0;
    /// Lexicographic path order.
    std::vector<PathTerm> terms;
};

/// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

namespace detail {

inline void require_zero_pattern(const SymMatrix& m, const Graph& g, double threshold) {
    if (g.vertex_count() != m.size()) {
        throw InputError("graph has " + std::to_string(g.vertex_count()) + " vertices but matrix dimension is " +
                         std::to_string(m.size()));
    }
    for (Vertex u = 0; u < m.size(); ++u) {
        for (Vertex v = u + 1; v < m.size(); ++v) {
            if ((std::abs(m(u, v)) > threshold) != g.has_edge(u, v)) {
                throw InputError("graph does not match the matrix zero pattern at (" + std::to_string(u) + ", " +
                                 std::to_string(v) + ")");
            }
        }
    }
}

inline PathExpansion path_sum(const SymMatrix& m, const Graph& g, Vertex u, Vertex v, std::size_t cap,
                              double zero_threshold, const Tolerances& tol) {
    if (u >= m.size() || v >= m.size()) throw InputError("vertex out of range");
    if (u == v) throw InputError("path sums cover off-diagonal entries only (u == v)");
    require_zero_pattern(m, g, zero_threshold);
    const PivotedCholesky chol(m, tol.pd_relative_pivot);
    if (!chol.ok()) {
        throw DomainError("matrix is not positive definite (pivot index " + std::to_string(chol.failed_pivot()) +
                              ")",
                          chol.failed_pivot());
    }
    const double full_det = determinant(m);
    const VertexSet all = VertexSet::range(m.size());

    PathExpansion out;
    CompensatedSum total;
    for (Path& p : enumerate_paths(g, u, v, cap)) {
        PathTerm term;
        term.sign = p.length() % 2 == 0 ? 1 : -1;
        term.weight_product = 1.0;
        for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) term.weight_product *= m(p.vertices[i], p.vertices[i + 1]);
        term.minor_ratio = determinant(principal_submatrix(m, all - p.vertex_set())) / full_det;
        term.path = std::move(p);
        total.add(term.contribution());
        out.terms.push_back(std::move(term));
    }
    out.value = total.value();
    return out;
}

} // namespace detail

/// k_uv of inverse(sigma) as a signed sum over u-v paths of the covariance
/// graph g0, which must match sigma's thresholded zero pattern.
inline PathExpansion precision_entry_by_paths(const SymMatrix& sigma, const Graph& g0, Vertex u, Vertex v,
                                              std::size_t cap = kDefaultPathCap, const Tolerances& tol = {}) {
    return detail::path_sum(sigma, g0, u, v, cap, tol.zero_threshold * sigma.max_abs(), tol);
}

/// sigma_uv of inverse(k) as a signed sum over u-v paths of the concentration graph g.
inline PathExpansion covariance_entry_by_paths(const SymMatrix& k, const Graph& g, Vertex u, Vertex v,
                                               std::size_t cap = kDefaultPathCap, const Tolerances& tol = {}) {
    return detail::path_sum(k, g, u, v, cap, tol.zero_threshold * k.max_abs(), tol);
}

/// Entry (u, v) of inverse(Sigma(W)) with W = {u, v} u s, i.e. the precision
/// of the marginal of X_W, expanded over paths of the induced graph (G0)_W.
/// Term paths are reported in the model's vertex ids.
inline PathExpansion conditional_precision_by_paths(const GaussianModel& model, Vertex u, Vertex v, VertexSet s,
                                                    std::size_t cap = kDefaultPathCap) {
    if (u >= model.size() || v >= model.size()) throw InputError("vertex out of range");
    if (u == v) throw InputError("path sums cover off-diagonal entries only (u == v)");
    if (s.contains(u) || s.contains(v)) throw InputError("conditioning set must not contain u or v");
    const VertexSet w = s | VertexSet::single(u) | VertexSet::single(v);
    const InducedSubgraph sub = induced_subgraph(model.covariance_graph(), w);
    const SymMatrix sigma_w = principal_submatrix(model.sigma(), w);

    auto local = [&](Vertex x) {
        return static_cast<Vertex>(std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), x) -
                                   sub.to_parent.begin());
    };
    PathExpansion out =
        detail::path_sum(sigma_w, sub.graph, local(u), local(v), cap, model.zero_threshold(), model.tolerances());
    for (PathTerm& t : out.terms) {
        for (Vertex& x : t.path.vertices) x = sub.to_parent[x];
    }
    return out;
}

/// Fixed-width table of the terms, one row per path, ending with the total.
inline std::string explain_entry(const PathExpansion& e, const std::vector<std::string>& labels = {}) {
    if (e.terms.empty()) return "0 (no connecting paths)\n";
    auto name = [&](Vertex v) { return v < labels.size() ? labels[v] : std::to_string(v); };
    std::vector<std::string> paths;
    std::size_t width = 4;
    for (const PathTerm& t : e.terms) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.path.vertices.size(); ++i) s += (i ? "," : "") + name(t.path.vertices[i]);
        s += ")";
        width = std::max(width, s.size());
        paths.push_back(std::move(s));
    }
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-*s %5s %20s %20s %20s\n", static_cast<int>(width), "path", "sign", "product",
                  "minor_ratio", "contribution");
    out << buf;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        const PathTerm& t = e.terms[i];
        std::snprintf(buf, sizeof buf, "%-*s %5s %20.12g %20.12g %20.12g\n", static_cast<int>(width),
                      paths[i].c_str(), t.sign > 0 ? "+1" : "-1", t.weight_product, t.minor_ratio, t.contribution());
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "%-*s %5s %20s %20s %20.12g\n", static_cast<int>(width), "total", "", "", "",
                  e.value);
    out << buf;
    return out.str();
}

} // namespace covtree

#endif // COVTREE_PATH_EXPANSION_HPP_
