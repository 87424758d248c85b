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

#ifndef COVTREE_TOOLS_CLI_HPP_
#define COVTREE_TOOLS_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace covtree::cli {

enum class Command { Graphs, Separate, Paths, PrecisionEntry, Audit, Gen, CheckLemma2, CheckCycle };
enum class OutputFormat { Text, Json, Dot };
enum class InputKind { Auto, Matrix, Edges };

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kViolations = 2,
    kResourceLimit = 3,
};

struct RunConfig {
    Command command = Command::Graphs;
    std::string input_path;
    InputKind input_kind = InputKind::Auto;
    double tau = 1e-10;
    std::uint64_t seed = 0;
    std::size_t max_paths = 1'000'000;
    OutputFormat output_format = OutputFormat::Text;
    /// Integer labels in inputs and flags are 1-based.
    bool one_based = false;
    unsigned threads = 0;

    // Vertex arguments, as labels.
    std::string set_a;
    std::string set_b;
    std::string set_s;
    std::string u;
    std::string v;

    // precision-entry
    bool from_precision = false;

    // audit
    std::size_t samples = 0;
    std::size_t exhaustive_cap = 9;
    bool no_timing = false;

    // graphs
    std::string out_dir;

    // gen / check-cycle
    std::size_t n = 0;
    std::string pattern = "random-tree";
    std::string edges_path;
    std::string edges_out;
    std::string sign_mode = "mixed";
    double margin = 0.1;
    double weight_min = 0.1;
    double weight_max = 1.0;
};

/// Overrides config.seed from COVTREE_SEED when that variable is set.
void apply_environment(RunConfig& config);

/// Runs one command. Results go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace covtree::cli

#endif // COVTREE_TOOLS_CLI_HPP_
