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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "covtree.hpp"

namespace covtree::cli {
namespace {

using Json = nlohmann::ordered_json;

/// External names of the internal 0-based vertex ids.
class LabelTable {
public:
    LabelTable(std::size_t n, std::size_t base, std::vector<std::string> names = {}) : names_(std::move(names)) {
        if (names_.empty()) {
            for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i + base));
        }
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Vertex v) const { return names_.at(v); }

    Vertex lookup(const std::string& label) const {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == label) return i;
        }
        throw InputError("unknown vertex label '" + label + "'");
    }

    VertexSet parse_set(const std::string& list) const {
        VertexSet s;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) s.insert(lookup(item));
        }
        return s;
    }

    Json to_json(VertexSet s) const {
        Json arr = Json::array();
        for (Vertex v : s) arr.push_back(names_[v]);
        return arr;
    }

    std::string to_text(VertexSet s) const {
        std::string out = "{";
        bool first = true;
        for (Vertex v : s) {
            out += (first ? "" : ",") + names_[v];
            first = false;
        }
        return out + "}";
    }

private:
    std::vector<std::string> names_;
};

std::size_t base_of(const RunConfig& c) { return c.one_based ? 1 : 0; }

Tolerances tolerances_of(const RunConfig& c) {
    if (!(c.tau > 0.0)) throw InputError("--tau must be positive");
    Tolerances t;
    t.zero_threshold = c.tau;
    return t;
}

std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw InputError("no input file given");
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return in;
}

bool is_matrix_input(const RunConfig& c) {
    if (c.input_kind != InputKind::Auto) return c.input_kind == InputKind::Matrix;
    return std::filesystem::path(c.input_path).extension() == ".csv";
}

struct LoadedMatrix {
    SymMatrix matrix;
    LabelTable labels;
};

LoadedMatrix load_matrix(const RunConfig& c, std::ostream& err) {
    std::ifstream in = open_input(c.input_path);
    CsvMatrix csv = read_csv_matrix(in);
    if (csv.max_relative_asymmetry > Tolerances{}.asymmetry_warning) {
        err << "warning: input matrix asymmetric (max relative asymmetry " << csv.max_relative_asymmetry
            << "); symmetrized as (M + M^T) / 2\n";
    }
    const std::size_t n = csv.matrix.size();
    return {std::move(csv.matrix), LabelTable(n, base_of(c), std::move(csv.labels))};
}

struct LoadedModel {
    GaussianModel model;
    LabelTable labels;
};

LoadedModel load_model(const RunConfig& c, std::ostream& err) {
    LoadedMatrix m = load_matrix(c, err);
    try {
        return {GaussianModel(std::move(m.matrix), tolerances_of(c)), std::move(m.labels)};
    } catch (const DomainError& e) {
        throw InputError("covariance matrix is not positive definite: factorization failed at pivot index " +
                         std::to_string(e.pivot()) + " (variable '" + m.labels.name(e.pivot()) + "')");
    }
}

struct LoadedGraph {
    Graph graph;
    LabelTable labels;
};

/// A CSV input contributes its covariance graph; anything else is an edge list.
LoadedGraph load_graph(const RunConfig& c, std::ostream& err) {
    if (is_matrix_input(c)) {
        LoadedMatrix m = load_matrix(c, err);
        return {zero_pattern_graph(m.matrix, tolerances_of(c).zero_threshold), std::move(m.labels)};
    }
    std::ifstream in = open_input(c.input_path);
    Graph g = read_edge_list(in, base_of(c));
    return {g, LabelTable(g.vertex_count(), base_of(c))};
}

Json graph_json(const Graph& g, const LabelTable& labels) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back(Json::array({labels.name(e.first), labels.name(e.second)}));
    return Json{{"vertices", labels.names()}, {"edges", edges}};
}

void write_graph_text(std::ostream& out, const Graph& g, const LabelTable& labels) {
    out << "# vertices: " << g.vertex_count() << '\n';
    for (const Edge& e : g.edges()) out << labels.name(e.first) << ' ' << labels.name(e.second) << '\n';
}

void emit_graph(std::ostream& out, OutputFormat f, const Graph& g, const std::string& name, const LabelTable& labels) {
    if (f == OutputFormat::Dot) {
        write_dot(out, g, name, labels.names());
    } else {
        out << "# " << name << '\n';
        write_graph_text(out, g, labels);
    }
}

int cmd_graphs(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedModel m = load_model(c, err);
    const Graph& g0 = m.model.covariance_graph();
    const Graph& g = m.model.concentration_graph();
    if (c.output_format == OutputFormat::Json) {
        const Json j{{"labels", m.labels.names()},
                     {"covariance_graph", graph_json(g0, m.labels)},
                     {"concentration_graph", graph_json(g, m.labels)}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    if (!c.out_dir.empty()) {
        const std::string ext = c.output_format == OutputFormat::Dot ? ".dot" : ".txt";
        std::filesystem::create_directories(c.out_dir);
        const auto p0 = std::filesystem::path(c.out_dir) / ("G0" + ext);
        const auto p1 = std::filesystem::path(c.out_dir) / ("G" + ext);
        std::ofstream f0(p0);
        std::ofstream f1(p1);
        if (!f0 || !f1) throw InputError("cannot write to output directory '" + c.out_dir + "'");
        emit_graph(f0, c.output_format, g0, "G0", m.labels);
        emit_graph(f1, c.output_format, g, "G", m.labels);
        out << p0.string() << '\n' << p1.string() << '\n';
        return kOk;
    }
    emit_graph(out, c.output_format, g0, "G0", m.labels);
    emit_graph(out, c.output_format, g, "G", m.labels);
    return kOk;
}

int cmd_separate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedGraph lg = load_graph(c, err);
    const VertexSet a = lg.labels.parse_set(c.set_a);
    const VertexSet b = lg.labels.parse_set(c.set_b);
    const VertexSet s = lg.labels.parse_set(c.set_s);
    const bool sep = separates(lg.graph, s, a, b);
    if (c.output_format == OutputFormat::Json) {
        const Json j{{"A", lg.labels.to_json(a)},
                     {"B", lg.labels.to_json(b)},
                     {"S", lg.labels.to_json(s)},
                     {"separated", sep}};
        out << j.dump(2) << '\n';
    } else {
        out << (sep ? "separated" : "not separated") << '\n';
    }
    return kOk;
}

std::string path_text(const Path& p, const LabelTable& labels) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.vertices.size(); ++i) s += (i ? "," : "") + labels.name(p.vertices[i]);
    return s + ")";
}

Json path_json(const Path& p, const LabelTable& labels) {
    Json arr = Json::array();
    for (Vertex v : p.vertices) arr.push_back(labels.name(v));
    return arr;
}

int cmd_paths(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedGraph lg = load_graph(c, err);
    const Vertex u = lg.labels.lookup(c.u);
    const Vertex v = lg.labels.lookup(c.v);
    const std::vector<Path> paths = enumerate_paths(lg.graph, u, v, c.max_paths);
    if (c.output_format == OutputFormat::Json) {
        Json arr = Json::array();
        for (const Path& p : paths) arr.push_back(Json{{"path", path_json(p, lg.labels)}, {"length", p.length()}});
        out << Json{{"u", c.u}, {"v", c.v}, {"count", paths.size()}, {"paths", arr}}.dump(2) << '\n';
    } else {
        for (const Path& p : paths) out << path_text(p, lg.labels) << " length " << p.length() << '\n';
        out << paths.size() << " path(s)\n";
    }
    return kOk;
}

int cmd_precision_entry(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedModel m = load_model(c, err);
    const Vertex u = m.labels.lookup(c.u);
    const Vertex v = m.labels.lookup(c.v);
    const VertexSet s = m.labels.parse_set(c.set_s);
    PathExpansion e;
    double direct = 0.0;
    if (c.from_precision) {
        if (!s.empty()) throw InputError("--S cannot be combined with --from-precision");
        // The input is K; its zero pattern is the concentration graph.
        e = covariance_entry_by_paths(m.model.sigma(), zero_pattern_graph(m.model.sigma(), c.tau), u, v, c.max_paths,
                                      m.model.tolerances());
        direct = m.model.precision()(u, v);
    } else if (s.empty()) {
        e = precision_entry_by_paths(m.model.sigma(), m.model.covariance_graph(), u, v, c.max_paths,
                                     m.model.tolerances());
        direct = m.model.precision()(u, v);
    } else {
        e = conditional_precision_by_paths(m.model, u, v, s, c.max_paths);
        const VertexSet w = s | VertexSet::single(u) | VertexSet::single(v);
        const SymMatrix kw = inverse(principal_submatrix(m.model.sigma(), w));
        const auto idx = w.to_vector();
        const auto pos = [&](Vertex x) {
            return static_cast<std::size_t>(std::find(idx.begin(), idx.end(), x) - idx.begin());
        };
        direct = kw(pos(u), pos(v));
    }
    if (c.output_format == OutputFormat::Json) {
        Json terms = Json::array();
        for (const PathTerm& t : e.terms) {
            terms.push_back(Json{{"path", path_json(t.path, m.labels)},
                                 {"sign", t.sign},
                                 {"product", t.weight_product},
                                 {"minor_ratio", t.minor_ratio},
                                 {"contribution", t.contribution()}});
        }
        Json j{{"u", c.u},
               {"v", c.v},
               {"given", m.labels.to_json(s)},
               {"entry", c.from_precision ? "covariance" : "precision"},
               {"terms", terms},
               {"total", e.value},
               {"direct_inverse", direct}};
        out << j.dump(2) << '\n';
    } else {
        out << explain_entry(e, m.labels.names());
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", direct);
        out << "direct inverse: " << buf << '\n';
    }
    return kOk;
}

Json verdict_json(const Violation& v, const LabelTable& labels) {
    const TripleVerdict& t = v.verdict;
    return Json{{"A", labels.to_json(t.triple.a)},
                {"B", labels.to_json(t.triple.b)},
                {"S", labels.to_json(t.triple.s)},
                {"details",
                 Json{{"form", to_string(v.form)},
                      {"separated_direct", t.separated_direct},
                      {"separated_dual", t.separated_dual},
                      {"independent_given_S", t.independent_given_s},
                      {"independent_given_complement", t.independent_given_complement},
                      {"dependence_given_S", t.dependence_given_s},
                      {"dependence_given_complement", t.dependence_given_complement}}}};
}

Json optional_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

int cmd_audit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedModel m = load_model(c, err);
    AuditOptions opts;
    opts.threads = c.threads;
    opts.samples = c.samples;
    opts.seed = c.seed;
    opts.exhaustive_cap = c.exhaustive_cap;
    const AuditReport r = audit_covariance_faithfulness(m.model, opts);
    const double elapsed = c.no_timing ? 0.0 : r.elapsed_seconds;
    if (c.output_format == OutputFormat::Json) {
        Json mv = Json::array();
        Json fv = Json::array();
        for (const Violation& v : r.markov_violations) mv.push_back(verdict_json(v, m.labels));
        for (const Violation& v : r.faithfulness_violations) fv.push_back(verdict_json(v, m.labels));
        const Json j{{"n", r.n},
                     {"mode", r.exhaustive ? "exhaustive" : "sampled"},
                     {"labels", m.labels.names()},
                     {"tau", c.tau},
                     {"triples_checked", r.triples_checked},
                     {"markov_violation_count", r.markov_violations.size()},
                     {"faithfulness_violation_count", r.faithfulness_violations.size()},
                     {"markov_violations", mv},
                     {"faithfulness_violations", fv},
                     {"margins",
                      Json{{"min_nonzero", optional_json(r.margins.min_nonzero)},
                           {"max_zero", optional_json(r.margins.max_zero)},
                           {"threshold", r.margins.threshold}}},
                     {"elapsed_s", elapsed}};
        out << j.dump(2) << '\n';
    } else {
        out << "n: " << r.n << '\n';
        out << "mode: " << (r.exhaustive ? "exhaustive" : "sampled") << '\n';
        out << "triples checked: " << r.triples_checked << '\n';
        out << "markov violations: " << r.markov_violations.size() << '\n';
        out << "faithfulness violations: " << r.faithfulness_violations.size() << '\n';
        auto line = [&](const char* kind, const Violation& v) {
            out << "  " << kind << " A=" << m.labels.to_text(v.verdict.triple.a)
                << " B=" << m.labels.to_text(v.verdict.triple.b) << " S=" << m.labels.to_text(v.verdict.triple.s)
                << " form=" << to_string(v.form) << '\n';
        };
        for (const Violation& v : r.markov_violations) line("markov", v);
        for (const Violation& v : r.faithfulness_violations) line("faithfulness", v);
        char buf[128];
        auto fmt = [&](const std::optional<double>& x) {
            if (!x) return std::string("none");
            std::snprintf(buf, sizeof buf, "%.6g", *x);
            return std::string(buf);
        };
        out << "margins: min_nonzero=" << fmt(r.margins.min_nonzero) << " max_zero=" << fmt(r.margins.max_zero)
            << '\n';
        std::snprintf(buf, sizeof buf, "%.3f", elapsed);
        out << "elapsed: " << buf << " s\n";
    }
    return r.clean() ? kOk : kViolations;
}

Pattern parse_pattern(const std::string& p) {
    if (p == "random-tree") return Pattern::RandomTree;
    if (p == "edges" || p == "given-edge-list") return Pattern::EdgeList;
    if (p == "cycle") return Pattern::Cycle;
    if (p == "dense") return Pattern::Dense;
    throw InputError("unknown pattern '" + p + "' (expected random-tree, edges, cycle or dense)");
}

int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream&) {
    GenSpec spec;
    spec.pattern = parse_pattern(c.pattern);
    spec.n = c.n;
    if (spec.pattern == Pattern::EdgeList) {
        if (c.edges_path.empty()) throw InputError("--pattern edges requires --edges <file>");
        std::ifstream in = open_input(c.edges_path);
        const Graph g = read_edge_list(in, base_of(c));
        if (spec.n == 0) spec.n = g.vertex_count();
        if (g.vertex_count() > spec.n) throw InputError("edge list mentions more vertices than --n");
        spec.edges = g.edges();
    }
    if (c.sign_mode == "mixed") {
        spec.sign_mode = SignMode::Mixed;
    } else if (c.sign_mode == "positive") {
        spec.sign_mode = SignMode::Positive;
    } else {
        throw InputError("unknown sign mode '" + c.sign_mode + "' (expected mixed or positive)");
    }
    spec.seed = c.seed;
    spec.dominance_margin = c.margin;
    spec.weight_min = c.weight_min;
    spec.weight_max = c.weight_max;
    spec.tau = c.tau;
    const Instance inst = generate_instance(spec);
    const LabelTable labels(spec.n, base_of(c));
    if (!c.edges_out.empty()) {
        std::ofstream eo(c.edges_out);
        if (!eo) throw InputError("cannot write '" + c.edges_out + "'");
        write_edge_list(eo, inst.support, base_of(c));
    }
    write_csv_matrix(out, inst.sigma, c.one_based ? labels.names() : std::vector<std::string>{});
    return kOk;
}

int cmd_check_lemma2(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const LoadedModel m = load_model(c, err);
    const Lemma2Check r = check_lemma2(m.model);
    const std::string tree = r.tree_implies_complete ? (*r.tree_implies_complete ? "true" : "false") : "not-applicable";
    if (c.output_format == OutputFormat::Json) {
        Json t = r.tree_implies_complete ? Json(*r.tree_implies_complete) : Json("not-applicable");
        out << Json{{"components_equal", r.components_equal}, {"tree_implies_complete", t}}.dump(2) << '\n';
    } else {
        out << "components_equal: " << (r.components_equal ? "true" : "false") << '\n';
        out << "tree_implies_complete: " << tree << '\n';
    }
    return r.components_equal && r.tree_implies_complete.value_or(true) ? kOk : kViolations;
}

int cmd_check_cycle(const RunConfig& c, std::ostream& out, std::ostream&) {
    const bool complete = check_even_cycle_remark(c.n, c.seed);
    if (c.output_format == OutputFormat::Json) {
        out << Json{{"n_cycle", c.n}, {"seed", c.seed}, {"concentration_graph_complete", complete}}.dump(2) << '\n';
    } else {
        out << "concentration graph complete: " << (complete ? "true" : "false") << '\n';
    }
    return complete ? kOk : kViolations;
}

} // namespace

void apply_environment(RunConfig& config) {
    if (const char* env = std::getenv("COVTREE_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long seed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw InputError(std::string("COVTREE_SEED is not an integer: ") + env);
        config.seed = seed;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.max_paths == 0) throw InputError("--max-paths must be at least 1");
        switch (config.command) {
        case Command::Graphs: return cmd_graphs(config, out, err);
        case Command::Separate: return cmd_separate(config, out, err);
        case Command::Paths: return cmd_paths(config, out, err);
        case Command::PrecisionEntry: return cmd_precision_entry(config, out, err);
        case Command::Audit: return cmd_audit(config, out, err);
        case Command::Gen: return cmd_gen(config, out, err);
        case Command::CheckLemma2: return cmd_check_lemma2(config, out, err);
        case Command::CheckCycle: return cmd_check_cycle(config, out, err);
        }
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace covtree::cli
