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

#ifndef COVTREE_GRAPH_HPP_
#define COVTREE_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covtree/errors.hpp"
#include "covtree/tolerances.hpp"
#include "covtree/vertex_set.hpp"

namespace covtree {

/// Unordered vertex pair, stored with first < second.
struct Edge {
    Vertex first;
    Vertex second;

    Edge(Vertex u, Vertex v) : first(std::min(u, v)), second(std::max(u, v)) {}

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

/// Undirected simple graph on vertices 0..n-1 (n <= 64). Immutable once built.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t n) : adjacency_(check_size(n)) {}

    Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
        for (const Edge& e : edges) {
            if (e.first == e.second) throw InputError("self-loop on vertex " + std::to_string(e.first));
            if (e.second >= n) {
                throw InputError("edge endpoint " + std::to_string(e.second) +
                                 " out of range for " + std::to_string(n) + " vertices");
            }
            adjacency_[e.first].insert(e.second);
            adjacency_[e.second].insert(e.first);
        }
    }

    static Graph complete(std::size_t n) {
        Graph g(n);
        for (Vertex u = 0; u < n; ++u) g.adjacency_[u] = VertexSet::range(n) - VertexSet::single(u);
        return g;
    }

    std::size_t vertex_count() const { return adjacency_.size(); }
    VertexSet vertices() const { return VertexSet::range(vertex_count()); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adjacency_) twice += nb.size();
        return twice / 2;
    }

    bool has_vertex(Vertex v) const { return v < vertex_count(); }
    bool has_edge(Vertex u, Vertex v) const { return has_vertex(u) && adjacency_[u].contains(v); }
    VertexSet neighbors(Vertex v) const { return adjacency_.at(v); }

    /// Union of the neighbourhoods of every vertex in s.
    VertexSet neighbors(VertexSet s) const {
        VertexSet out;
        for (Vertex v : s) out |= adjacency_[v];
        return out;
    }

    /// Sorted edge list.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < vertex_count(); ++u) {
            for (Vertex v : adjacency_[u]) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }

    bool is_complete() const { return edge_count() * 2 == vertex_count() * (vertex_count() - (vertex_count() > 0)); }

    bool operator==(const Graph&) const = default;

private:
    static std::size_t check_size(std::size_t n) {
        if (n > kMaxVertices) {
            throw InputError("graphs are limited to " + std::to_string(kMaxVertices) + " vertices, got " +
                             std::to_string(n));
        }
        return n;
    }

    std::vector<VertexSet> adjacency_;
};

/// Simple path u_0, ..., u_k with k >= 1.
struct Path {
    std::vector<Vertex> vertices;

    /// Number of edges.
    std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    VertexSet vertex_set() const { return VertexSet::from(vertices); }

    bool operator==(const Path&) const = default;
    auto operator<=>(const Path&) const = default;
};

/// Pairwise-disjoint vertex sets with a and b nonempty.
struct Triple {
    VertexSet a;
    VertexSet b;
    VertexSet s;

    /// V \ (A u B u S)
    VertexSet complement(std::size_t n) const { return VertexSet::range(n) - (a | b | s); }

    bool operator==(const Triple&) const = default;
};

namespace detail {

inline void require_in_graph(const Graph& g, VertexSet s, const char* what) {
    if (!s.is_subset_of(g.vertices())) {
        throw InputError(std::string(what) + " contains a vertex outside the graph");
    }
}

inline void require_vertex(const Graph& g, Vertex v) {
    if (!g.has_vertex(v)) {
        throw InputError("unknown vertex " + std::to_string(v) + " (graph has " +
                         std::to_string(g.vertex_count()) + " vertices)");
    }
}

/// Vertices reachable from `from` using only vertices in `allowed`.
inline VertexSet reachable(const Graph& g, VertexSet from, VertexSet allowed) {
    VertexSet reach = from & allowed;
    VertexSet frontier = reach;
    while (!frontier.empty()) {
        VertexSet next = (g.neighbors(frontier) & allowed) - reach;
        reach |= next;
        frontier = next;
    }
    return reach;
}

} // namespace detail

inline void validate_triple(const Triple& t, std::size_t n) {
    if (t.a.empty() || t.b.empty()) throw InputError("triple sets A and B must be nonempty");
    if (t.a.intersects(t.b) || t.a.intersects(t.s) || t.b.intersects(t.s)) {
        throw InputError("triple sets A, B, S must be pairwise disjoint");
    }
    if (!(t.a | t.b | t.s).is_subset_of(VertexSet::range(n))) {
        throw InputError("triple contains a vertex id >= " + std::to_string(n));
    }
}

/// Components ordered by their smallest vertex.
inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> out;
    VertexSet unseen = g.vertices();
    while (!unseen.empty()) {
        VertexSet comp = detail::reachable(g, VertexSet::single(unseen.front()), g.vertices());
        out.push_back(comp);
        unseen -= comp;
    }
    return out;
}

inline std::size_t edges_within(const Graph& g, VertexSet s) {
    std::size_t twice = 0;
    for (Vertex v : s) twice += (g.neighbors(v) & s).size();
    return twice / 2;
}

/// True iff every component has exactly size - 1 edges.
inline bool is_forest(const Graph& g) {
    for (VertexSet comp : connected_components(g)) {
        if (edges_within(g, comp) + 1 != comp.size()) return false;
    }
    return true;
}

/// Connected forest.
inline bool is_tree(const Graph& g) {
    return g.vertex_count() > 0 && connected_components(g).size() == 1 && is_forest(g);
}

struct InducedSubgraph {
    Graph graph;
    /// to_parent[i] is the original id of local vertex i (ascending).
    std::vector<Vertex> to_parent;
};

inline InducedSubgraph induced_subgraph(const Graph& g, VertexSet keep) {
    detail::require_in_graph(g, keep, "vertex subset");
    InducedSubgraph out;
    out.to_parent = keep.to_vector();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
        for (std::size_t j = i + 1; j < out.to_parent.size(); ++j) {
            if (g.has_edge(out.to_parent[i], out.to_parent[j])) edges.emplace_back(i, j);
        }
    }
    out.graph = Graph(out.to_parent.size(), edges);
    return out;
}

/// All simple u-v paths in lexicographic order of their vertex sequences.
/// Throws ResourceLimitError once more than `cap` paths have been found.
inline std::vector<Path> enumerate_paths(const Graph& g, Vertex u, Vertex v, std::size_t cap = kDefaultPathCap) {
    detail::require_vertex(g, u);
    detail::require_vertex(g, v);
    if (u == v) throw InputError("path endpoints must be distinct");
    if (cap == 0) throw InputError("path cap must be positive");

    std::vector<Path> out;
    std::vector<Vertex> stack{u};
    VertexSet on_path = VertexSet::single(u);

    // Neighbours are visited in ascending order, so paths come out lexicographically.
    auto dfs = [&](auto&& self, Vertex at) -> void {
        for (Vertex w : g.neighbors(at) - on_path) {
            if (w == v) {
                if (out.size() == cap) {
                    throw ResourceLimitError("more than " + std::to_string(cap) + " paths between " +
                                             std::to_string(u) + " and " + std::to_string(v));
                }
                Path p{stack};
                p.vertices.push_back(v);
                out.push_back(std::move(p));
                continue;
            }
            stack.push_back(w);
            on_path.insert(w);
            self(self, w);
            on_path.erase(w);
            stack.pop_back();
        }
    };
    dfs(dfs, u);
    return out;
}

/// True iff every path from a to b meets s. Vacuously true when a and b lie
/// in different components.
inline bool separates(const Graph& g, VertexSet s, VertexSet a, VertexSet b) {
    validate_triple(Triple{a, b, s}, g.vertex_count());
    VertexSet reach = detail::reachable(g, a, g.vertices() - s);
    return !reach.intersects(b);
}

/// s separates u from v and no s \ {w} does.
inline bool is_minimal_separator(const Graph& g, VertexSet s, Vertex u, Vertex v) {
    detail::require_vertex(g, u);
    detail::require_vertex(g, v);
    detail::require_in_graph(g, s, "separator");
    if (u == v) throw InputError("separator endpoints must be distinct");
    if (s.contains(u) || s.contains(v)) throw InputError("separator must not contain the endpoints");
    if (g.has_edge(u, v)) {
        throw InputError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                         " are adjacent; no separator exists");
    }
    const VertexSet a = VertexSet::single(u);
    const VertexSet b = VertexSet::single(v);
    if (!separates(g, s, a, b)) return false;
    for (Vertex w : s) {
        if (separates(g, s - VertexSet::single(w), a, b)) return false;
    }
    return true;
}

// Edge-list text format: one "u v" pair per line. Blank lines and lines
// starting with '#' are ignored, except "# vertices: N" which fixes the
// vertex count (otherwise max id + 1). index_base = 1 reads 1-based ids.

inline Graph read_edge_list(std::istream& in, std::size_t index_base = 0) {
    std::vector<Edge> edges;
    std::size_t n = 0;
    bool n_fixed = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream hdr(line.substr(first + 1));
            std::string key;
            std::size_t count = 0;
            if (hdr >> key && key == "vertices:" && hdr >> count) {
                n = count;
                n_fixed = true;
            }
            continue;
        }
        std::istringstream ls(line);
        long long a = 0;
        long long b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra)) {
            throw InputError("edge list line " + std::to_string(line_no) + ": expected two integer vertex ids");
        }
        if (a < static_cast<long long>(index_base) || b < static_cast<long long>(index_base)) {
            throw InputError("edge list line " + std::to_string(line_no) + ": vertex id below " +
                             std::to_string(index_base));
        }
        Vertex u = static_cast<Vertex>(a) - index_base;
        Vertex v = static_cast<Vertex>(b) - index_base;
        if (u == v) throw InputError("edge list line " + std::to_string(line_no) + ": self-loop");
        edges.emplace_back(u, v);
        if (!n_fixed) n = std::max(n, std::max(u, v) + 1);
    }
    for (const Edge& e : edges) {
        if (e.second >= n) {
            throw InputError("edge list: vertex id " + std::to_string(e.second + index_base) +
                             " exceeds declared vertex count " + std::to_string(n));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n, edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g, std::size_t index_base = 0) {
    out << "# vertices: " << g.vertex_count() << '\n';
    for (const Edge& e : g.edges()) out << e.first + index_base << ' ' << e.second + index_base << '\n';
}

/// Undirected DOT. Node names come from `labels` when given, otherwise the ids.
inline void write_dot(std::ostream& out, const Graph& g, const std::string& name,
                      const std::vector<std::string>& labels = {}) {
    auto node = [&](Vertex v) {
        return "\"" + (v < labels.size() ? labels[v] : std::to_string(v)) + "\"";
    };
    out << "graph " << name << " {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << "  " << node(v) << ";\n";
    for (const Edge& e : g.edges()) out << "  " << node(e.first) << " -- " << node(e.second) << ";\n";
    out << "}\n";
}

} // namespace covtree

#endif // COVTREE_GRAPH_HPP_
