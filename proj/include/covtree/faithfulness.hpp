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

#ifndef COVTREE_FAITHFULNESS_HPP_
#define COVTREE_FAITHFULNESS_HPP_

#include <algorithm>
#include <chrono>
#include <limits>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "covtree/errors.hpp"
#include "covtree/gaussian_model.hpp"
#include "covtree/graph.hpp"
#include "covtree/instance_gen.hpp"
#include "covtree/tolerances.hpp"

namespace covtree {

// Triples (A, B, S) are encoded as base-4 numbers with one digit per vertex:
// 0 = unused, 1 = A, 2 = B, 3 = S. Enumeration walks codes in increasing
// order and skips those with A or B empty.

/// 4^n - 2 * 3^n + 2^n
inline std::uint64_t triple_count(std::size_t n) {
    std::uint64_t p4 = 1, p3 = 1, p2 = 1;
    for (std::size_t i = 0; i < n; ++i) {
        p4 *= 4;
        p3 *= 3;
        p2 *= 2;
    }
    return p4 - 2 * p3 + p2;
}

inline Triple triple_from_code(std::uint64_t code, std::size_t n) {
    Triple t;
    for (Vertex v = 0; v < n; ++v) {
        switch ((code >> (2 * v)) & 3u) {
        case 1: t.a.insert(v); break;
        case 2: t.b.insert(v); break;
        case 3: t.s.insert(v); break;
        default: break;
        }
    }
    return t;
}

inline std::uint64_t triple_code(const Triple& t) {
    std::uint64_t code = 0;
    for (Vertex v : t.a) code |= std::uint64_t{1} << (2 * v);
    for (Vertex v : t.b) code |= std::uint64_t{2} << (2 * v);
    for (Vertex v : t.s) code |= std::uint64_t{3} << (2 * v);
    return code;
}

namespace detail {

inline void require_exhaustive(std::size_t n, std::size_t cap) {
    if (n < 2) throw InputError("triples need at least 2 vertices");
    if (n > cap) {
        throw ResourceLimitError("exhaustive triple enumeration is capped at n = " + std::to_string(cap) + " (got n = " +
                                 std::to_string(n) + "); use sampled mode");
    }
}

} // namespace detail

template <typename Fn>
void for_each_triple(std::size_t n, Fn&& fn, std::size_t cap = kDefaultExhaustiveCap) {
    detail::require_exhaustive(n, cap);
    const std::uint64_t end = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < end; ++code) {
        Triple t = triple_from_code(code, n);
        if (t.a.empty() || t.b.empty()) continue;
        fn(t);
    }
}

inline std::vector<Triple> enumerate_triples(std::size_t n, std::size_t cap = kDefaultExhaustiveCap) {
    std::vector<Triple> out;
    detail::require_exhaustive(n, cap);
    out.reserve(triple_count(n));
    for_each_triple(n, [&](const Triple& t) { out.push_back(t); }, cap);
    return out;
}

/// Both separation forms and both independence forms for one triple.
/// "Direct" pairs S-separation with independence given the complement
/// C = V \ (A u B u S); "dual" pairs C-separation with independence given S.
struct TripleVerdict {
    Triple triple;
    bool separated_dual = false;
    bool separated_direct = false;
    bool independent_given_s = false;
    bool independent_given_complement = false;
    /// max |Cov(X_A, X_B | X_S)| and the same given the complement.
    double dependence_given_s = 0.0;
    double dependence_given_complement = 0.0;

    bool markov_violation_direct() const { return separated_direct && !independent_given_complement; }
    bool markov_violation_dual() const { return separated_dual && !independent_given_s; }
    bool faithfulness_violation_direct() const { return independent_given_complement && !separated_direct; }
    bool faithfulness_violation_dual() const { return independent_given_s && !separated_dual; }

    bool same_decisions(const TripleVerdict& o) const {
        return separated_dual == o.separated_dual && separated_direct == o.separated_direct &&
               independent_given_s == o.independent_given_s &&
               independent_given_complement == o.independent_given_complement;
    }
};

enum class ViolationForm { Direct, Dual, Both };

inline const char* to_string(ViolationForm f) {
    switch (f) {
    case ViolationForm::Direct: return "direct";
    case ViolationForm::Dual: return "dual";
    case ViolationForm::Both: return "both";
    }
    return "?";
}

struct Violation {
    TripleVerdict verdict;
    ViolationForm form = ViolationForm::Both;
};

/// Extremes of the dependence statistic on either side of the zero threshold.
struct Margins {
    std::optional<double> min_nonzero;
    std::optional<double> max_zero;
    double threshold = 0.0;

    /// min_nonzero / max_zero; infinite when nothing (or only exact zeros) fell below.
    double separation_ratio() const {
        if (!min_nonzero) return std::numeric_limits<double>::infinity();
        if (!max_zero || *max_zero == 0.0) return std::numeric_limits<double>::infinity();
        return *min_nonzero / *max_zero;
    }
};

struct AuditReport {
    std::size_t n = 0;
    std::uint64_t triples_checked = 0;
    bool exhaustive = true;
    std::vector<Violation> markov_violations;
    std::vector<Violation> faithfulness_violations;
    Margins margins;
    double elapsed_seconds = 0.0;

    bool clean() const { return markov_violations.empty() && faithfulness_violations.empty(); }
};

struct AuditOptions {
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
    std::size_t exhaustive_cap = kDefaultExhaustiveCap;
    /// 0 selects exhaustive mode; otherwise this many uniformly drawn triples.
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

inline TripleVerdict evaluate_triple(const GaussianModel& model, const Triple& t) {
    const Graph& g0 = model.covariance_graph();
    const VertexSet c = t.complement(model.size());
    TripleVerdict v;
    v.triple = t;
    v.separated_direct = separates(g0, t.s, t.a, t.b);
    v.separated_dual = separates(g0, c, t.a, t.b);
    v.dependence_given_s = model.dependence(t.a, t.b, t.s);
    v.dependence_given_complement = model.dependence(t.a, t.b, c);
    v.independent_given_s = v.dependence_given_s <= model.zero_threshold();
    v.independent_given_complement = v.dependence_given_complement <= model.zero_threshold();
    return v;
}

/// Verdicts in input order. Work is split into contiguous chunks across threads.
inline std::vector<TripleVerdict> evaluate_triples(const GaussianModel& model, const std::vector<Triple>& triples,
                                                   unsigned threads = 0) {
    // Force the lazy graph before fanning out.
    (void)model.covariance_graph();
    std::vector<TripleVerdict> out(triples.size());
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, triples.size() / 256)));
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = evaluate_triple(model, triples[i]);
    };
    if (workers <= 1) {
        run(0, triples.size());
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (triples.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(triples.size(), begin + chunk);
        if (begin < end) pool.emplace_back(run, begin, end);
    }
    return out;
}

/// Uniform per-vertex assignment to {unused, A, B, S}, rejecting empty A or B.
inline std::vector<Triple> sample_triples(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (n < 2) throw InputError("triples need at least 2 vertices");
    Random rng(seed);
    std::vector<Triple> out;
    out.reserve(count);
    while (out.size() < count) {
        std::uint64_t code = 0;
        for (Vertex v = 0; v < n; ++v) code |= static_cast<std::uint64_t>(rng.below(4)) << (2 * v);
        Triple t = triple_from_code(code, n);
        if (!t.a.empty() && !t.b.empty()) out.push_back(t);
    }
    return out;
}

inline AuditReport summarize(const std::vector<TripleVerdict>& verdicts, std::size_t n, double threshold,
                             bool exhaustive) {
    AuditReport r;
    r.n = n;
    r.exhaustive = exhaustive;
    r.triples_checked = verdicts.size();
    r.margins.threshold = threshold;
    auto form = [](bool direct, bool dual) {
        return direct && dual ? ViolationForm::Both : (direct ? ViolationForm::Direct : ViolationForm::Dual);
    };
    auto note = [&](double d) {
        std::optional<double>& slot = d <= threshold ? r.margins.max_zero : r.margins.min_nonzero;
        if (!slot) {
            slot = d;
        } else {
            slot = d <= threshold ? std::max(*slot, d) : std::min(*slot, d);
        }
    };
    for (const TripleVerdict& v : verdicts) {
        note(v.dependence_given_s);
        note(v.dependence_given_complement);
        const bool md = v.markov_violation_direct();
        const bool mu = v.markov_violation_dual();
        if (md || mu) r.markov_violations.push_back({v, form(md, mu)});
        const bool fd = v.faithfulness_violation_direct();
        const bool fu = v.faithfulness_violation_dual();
        if (fd || fu) r.faithfulness_violations.push_back({v, form(fd, fu)});
    }
    return r;
}

/// All verdicts of an exhaustive audit, in enumeration order.
inline std::vector<TripleVerdict> exhaustive_verdicts(const GaussianModel& model, const AuditOptions& opts = {}) {
    return evaluate_triples(model, enumerate_triples(model.size(), opts.exhaustive_cap), opts.threads);
}

/// Compares G0 separation with Gaussian conditional independence on every
/// triple (or on a uniform sample when opts.samples > 0). Markov violations are
/// separations without independence; faithfulness violations the converse.
inline AuditReport audit_covariance_faithfulness(const GaussianModel& model, const AuditOptions& opts = {}) {
    const auto start = std::chrono::steady_clock::now();
    const bool exhaustive = opts.samples == 0;
    const std::vector<Triple> triples = exhaustive ? enumerate_triples(model.size(), opts.exhaustive_cap)
                                                   : sample_triples(model.size(), opts.samples, opts.seed);
    AuditReport r = summarize(evaluate_triples(model, triples, opts.threads), model.size(), model.zero_threshold(),
                              exhaustive);
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// For every triple t = (A, B, S), the verdict of form (i) on t (C-separation,
/// independence given S) must equal the verdict of form (ii) on the triple
/// (A, B, C) (separation by its S, independence given its complement).
/// `verdicts` must be a full exhaustive table for n variables.
inline bool check_proposition1_duality(const std::vector<TripleVerdict>& verdicts, std::size_t n) {
    if (verdicts.size() != triple_count(n)) throw InputError("duality check needs the full triple table");
    std::vector<std::int64_t> position(std::size_t{1} << (2 * n), -1);
    for (std::size_t i = 0; i < verdicts.size(); ++i) position[triple_code(verdicts[i].triple)] = static_cast<std::int64_t>(i);
    for (const TripleVerdict& v : verdicts) {
        const Triple swapped{v.triple.a, v.triple.b, v.triple.complement(n)};
        const std::int64_t j = position[triple_code(swapped)];
        if (j < 0) return false;
        const TripleVerdict& w = verdicts[static_cast<std::size_t>(j)];
        if (v.separated_dual != w.separated_direct) return false;
        if (v.independent_given_s != w.independent_given_complement) return false;
    }
    return true;
}

inline bool check_proposition1_duality(const GaussianModel& model, const AuditOptions& opts = {}) {
    return check_proposition1_duality(exhaustive_verdicts(model, opts), model.size());
}

struct Lemma2Check {
    bool components_equal = false;
    /// nullopt when G0 has no tree component with two or more vertices.
    std::optional<bool> tree_implies_complete;
};

/// G and G0 share components; every tree component of G0 is complete in G.
inline Lemma2Check check_lemma2(const GaussianModel& model) {
    const Graph& g0 = model.covariance_graph();
    const Graph& g = model.concentration_graph();
    Lemma2Check out;
    const std::vector<VertexSet> comps = connected_components(g0);
    out.components_equal = comps == connected_components(g);
    for (VertexSet comp : comps) {
        if (comp.size() < 2 || edges_within(g0, comp) + 1 != comp.size()) continue;
        const bool complete = edges_within(g, comp) == comp.size() * (comp.size() - 1) / 2;
        out.tree_implies_complete = out.tree_implies_complete.value_or(true) && complete;
    }
    return out;
}

/// Generates a positive covariance supported on an even cycle of length
/// n_cycle and reports whether its concentration graph is complete.
inline bool check_even_cycle_remark(std::size_t n_cycle, std::uint64_t seed, std::size_t max_attempts = 8) {
    if (n_cycle < 4 || n_cycle % 2 != 0) throw InputError("cycle length must be even and at least 4");
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        GenSpec spec;
        spec.n = n_cycle;
        spec.pattern = Pattern::Cycle;
        spec.sign_mode = SignMode::Positive;
        spec.seed = seed + attempt;
        const SymMatrix sigma = generate_covariance(spec);
        if (!is_positive_definite(sigma)) continue;
        const GaussianModel model(sigma);
        if (model.covariance_graph() != cycle_graph(n_cycle)) continue;
        return model.concentration_graph().is_complete();
    }
    throw ResourceLimitError("could not generate a positive-definite cycle covariance in " +
                             std::to_string(max_attempts) + " attempts");
}

} // namespace covtree

#endif // COVTREE_FAITHFULNESS_HPP_
