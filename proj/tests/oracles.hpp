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

// Brute-force reference implementations. Nothing here calls into the
// algorithms under test beyond the Graph container itself.

#ifndef COVTREE_TESTS_ORACLES_HPP_
#define COVTREE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "covtree/graph.hpp"

namespace oracle {

using covtree::Graph;
using covtree::Vertex;
using Rows = std::vector<std::vector<double>>;

/// Every ordering of every subset of the other vertices, kept if it forms a u-v path.
inline std::vector<std::vector<Vertex>> all_paths(const Graph& g, Vertex u, Vertex v) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> others;
    for (Vertex x = 0; x < n; ++x) {
        if (x != u && x != v) others.push_back(x);
    }
    std::vector<std::vector<Vertex>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
        std::vector<Vertex> mid;
        for (std::size_t i = 0; i < others.size(); ++i) {
            if ((mask >> i) & 1u) mid.push_back(others[i]);
        }
        std::sort(mid.begin(), mid.end());
        do {
            std::vector<Vertex> seq{u};
            seq.insert(seq.end(), mid.begin(), mid.end());
            seq.push_back(v);
            bool ok = true;
            for (std::size_t i = 0; i + 1 < seq.size() && ok; ++i) ok = g.has_edge(seq[i], seq[i + 1]);
            if (ok) out.push_back(seq);
        } while (std::next_permutation(mid.begin(), mid.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Every path from a to b meets s.
inline bool separates(const Graph& g, const std::vector<Vertex>& s, const std::vector<Vertex>& a,
                      const std::vector<Vertex>& b) {
    for (Vertex x : a) {
        for (Vertex y : b) {
            for (const auto& p : all_paths(g, x, y)) {
                bool hits = false;
                for (Vertex w : p) hits = hits || std::find(s.begin(), s.end(), w) != s.end();
                if (!hits) return false;
            }
        }
    }
    return true;
}

inline double cofactor_determinant(const Rows& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1.0;
    if (n == 1) return m[0][0];
    double det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Rows minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            minor.push_back(row);
        }
        det += (j % 2 == 0 ? 1.0 : -1.0) * m[0][j] * cofactor_determinant(minor);
    }
    return det;
}

/// Smallest root of det(M - x I) found by scanning [-R, R] (R = max absolute
/// row sum bounds the spectrum) for the first sign change and bisecting it.
inline double smallest_eigenvalue(const Rows& m) {
    const std::size_t n = m.size();
    double radius = 0.0;
    for (const auto& row : m) {
        double s = 0.0;
        for (double x : row) s += std::abs(x);
        radius = std::max(radius, s);
    }
    auto charpoly = [&](double x) {
        Rows shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= x;
        return cofactor_determinant(shifted);
    };
    const int steps = 4000;
    double lo = -radius - 1.0;
    double flo = charpoly(lo);
    for (int i = 1; i <= steps; ++i) {
        const double hi = -radius - 1.0 + (2.0 * radius + 2.0) * i / steps;
        const double fhi = charpoly(hi);
        if (fhi == 0.0) return hi;
        if ((flo < 0) != (fhi < 0)) {
            double a = lo, b = hi;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if ((charpoly(mid) < 0) == (flo < 0)) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        flo = fhi;
    }
    return radius + 1.0;
}

/// Gauss-Jordan with partial pivoting.
inline Rows gauss_jordan_inverse(Rows m) {
    const std::size_t n = m.size();
    Rows inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
        }
        std::swap(m[k], m[p]);
        std::swap(inv[k], inv[p]);
        const double d = m[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] /= d;
            inv[k][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = m[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

inline Rows submatrix(const Rows& m, const std::vector<Vertex>& idx) {
    Rows out(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] = m[idx[i]][idx[j]];
    }
    return out;
}

/// Number of (A, B, S) pairwise disjoint with A, B nonempty, by nested subset loops.
inline std::uint64_t count_triples(std::size_t n) {
    const std::uint64_t full = std::uint64_t{1} << n;
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a < full; ++a) {
        for (std::uint64_t b = 1; b < full; ++b) {
            if (a & b) continue;
            for (std::uint64_t s = 0; s < full; ++s) {
                if ((s & a) || (s & b)) continue;
                ++count;
            }
        }
    }
    return count;
}

} // namespace oracle

#endif // COVTREE_TESTS_ORACLES_HPP_
