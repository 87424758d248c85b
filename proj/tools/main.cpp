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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cli.hpp"
#include "covtree/errors.hpp"

namespace {

using covtree::cli::Command;
using covtree::cli::InputKind;
using covtree::cli::OutputFormat;
using covtree::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& c, std::string& format, std::string& kind) {
    sub->add_option("--tau", c.tau, "Relative structural-zero threshold")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Output format: text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_flag("--one-based", c.one_based, "Integer vertex labels start at 1");
    sub->add_option("--input-kind", kind, "Input type: auto (by extension), matrix or edges")
        ->check(CLI::IsMember({"auto", "matrix", "edges"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"covtree: covariance graphs, path-sum precision entries and faithfulness audits"};
    app.require_subcommand(1);

    RunConfig c;
    std::string format = "text";
    std::string kind = "auto";

    auto* graphs = app.add_subcommand("graphs", "Covariance graph G0 and concentration graph G of a CSV matrix");
    graphs->add_option("input", c.input_path, "CSV covariance matrix")->required();
    graphs->add_option("--out-dir", c.out_dir, "Write G0 and G to files in this directory");

    auto* separate = app.add_subcommand("separate", "Does S separate A and B?");
    separate->add_option("input", c.input_path, "Edge list, or CSV matrix (uses its covariance graph)")->required();
    separate->add_option("--A", c.set_a, "Comma-separated vertex labels")->required();
    separate->add_option("--B", c.set_b, "Comma-separated vertex labels")->required();
    separate->add_option("--S", c.set_s, "Comma-separated vertex labels (may be empty)");

    auto* paths = app.add_subcommand("paths", "All simple paths between two vertices");
    paths->add_option("input", c.input_path, "Edge list, or CSV matrix")->required();
    paths->add_option("--u", c.u)->required();
    paths->add_option("--v", c.v)->required();

    auto* entry = app.add_subcommand("precision-entry", "Explain a precision entry as a sum over covariance paths");
    entry->add_option("input", c.input_path, "CSV covariance matrix")->required();
    entry->add_option("--u", c.u)->required();
    entry->add_option("--v", c.v)->required();
    entry->add_option("--S", c.set_s, "Marginalize onto {u,v} and S first (conditional precision)");
    entry->add_flag("--from-precision", c.from_precision, "Input is K; expand sigma_uv over concentration paths");

    auto* audit = app.add_subcommand("audit", "Audit covariance faithfulness over all triples (A, B, S)");
    audit->add_option("input", c.input_path, "CSV covariance matrix")->required();
    audit->add_option("--threads", c.threads, "Worker threads (0 = available parallelism)");
    audit->add_option("--samples", c.samples, "Sample this many triples instead of enumerating all");
    audit->add_option("--max-exhaustive", c.exhaustive_cap, "Largest n audited exhaustively");
    audit->add_flag("--no-timing", c.no_timing, "Report elapsed_s as 0 for reproducible output");

    auto* gen = app.add_subcommand("gen", "Generate a positive-definite covariance with a given support");
    gen->add_option("--n", c.n, "Number of variables");
    gen->add_option("--pattern", c.pattern, "random-tree, edges, cycle or dense")
        ->check(CLI::IsMember({"random-tree", "edges", "given-edge-list", "cycle", "dense"}));
    gen->add_option("--edges", c.edges_path, "Edge list for --pattern edges");
    gen->add_option("--edges-out", c.edges_out, "Also write the support as an edge list");
    gen->add_option("--sign-mode", c.sign_mode, "mixed or positive")->check(CLI::IsMember({"mixed", "positive"}));
    gen->add_option("--margin", c.margin, "Diagonal dominance margin")->check(CLI::PositiveNumber);
    gen->add_option("--weight-min", c.weight_min, "Smallest off-diagonal magnitude");
    gen->add_option("--weight-max", c.weight_max, "Largest off-diagonal magnitude");

    auto* lemma2 = app.add_subcommand("check-lemma2", "Shared components; tree components complete in G");
    lemma2->add_option("input", c.input_path, "CSV covariance matrix")->required();

    auto* cycle = app.add_subcommand("check-cycle", "Even positive cycle covariance has a complete concentration graph");
    cycle->add_option("--n", c.n, "Cycle length (even, >= 4)")->required();

    for (auto* sub : {graphs, separate, paths, entry, audit, gen, lemma2, cycle}) {
        add_common(sub, c, format, kind);
        sub->add_option("--max-paths", c.max_paths, "Path enumeration cap")->check(CLI::PositiveNumber);
    }
    for (auto* sub : {audit, gen, cycle}) sub->add_option("--seed", c.seed, "Random seed (COVTREE_SEED overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : covtree::cli::kInputError;
    }

    if (graphs->parsed()) c.command = Command::Graphs;
    if (separate->parsed()) c.command = Command::Separate;
    if (paths->parsed()) c.command = Command::Paths;
    if (entry->parsed()) c.command = Command::PrecisionEntry;
    if (audit->parsed()) c.command = Command::Audit;
    if (gen->parsed()) c.command = Command::Gen;
    if (lemma2->parsed()) c.command = Command::CheckLemma2;
    if (cycle->parsed()) c.command = Command::CheckCycle;

    c.output_format = format == "json" ? OutputFormat::Json : format == "dot" ? OutputFormat::Dot : OutputFormat::Text;
    c.input_kind = kind == "matrix" ? InputKind::Matrix : kind == "edges" ? InputKind::Edges : InputKind::Auto;

    try {
        covtree::cli::apply_environment(c);
    } catch (const covtree::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return covtree::cli::kInputError;
    }
    return covtree::cli::run(c, std::cout, std::cerr);
}
