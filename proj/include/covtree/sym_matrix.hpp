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

#ifndef COVTREE_SYM_MATRIX_HPP_
#define COVTREE_SYM_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covtree/errors.hpp"
#include "covtree/tolerances.hpp"
#include "covtree/vertex_set.hpp"

namespace covtree {

/// Dense symmetric matrix. Exactly symmetric and finite once constructed.
class SymMatrix {
public:
    /// The 0-dimensional matrix.
    SymMatrix() = default;

    /// n x n zero matrix.
    explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
        return m;
    }

    static SymMatrix diagonal(const std::vector<double>& d) {
        SymMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
        m.check_finite();
        return m;
    }

    /// Builds from square row data, replacing M by (M + M^T) / 2. When
    /// `max_relative_asymmetry` is given it receives max|m_ij - m_ji| / max|m|.
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows,
                               double* max_relative_asymmetry = nullptr) {
        const std::size_t n = rows.size();
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) {
                throw InputError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " entries, expected " + std::to_string(n));
            }
        }
        double asym = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!std::isfinite(rows[i][j])) {
                    throw InputError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
                }
                asym = std::max(asym, std::abs(rows[i][j] - rows[j][i]));
                m.data_[i * n + j] = i == j ? rows[i][j] : 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        if (max_relative_asymmetry != nullptr) {
            const double scale = m.max_abs();
            *max_relative_asymmetry = scale > 0.0 ? asym / scale : 0.0;
        }
        return m;
    }

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::vector<std::vector<double>> rows() const {
        std::vector<std::vector<double>> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i].assign(data_.begin() + i * n_, data_.begin() + (i + 1) * n_);
        return out;
    }

    double max_abs() const {
        double s = 0.0;
        for (double x : data_) s = std::max(s, std::abs(x));
        return s;
    }

    double max_diagonal() const {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) s = std::max(s, data_[i * n_ + i]);
        return s;
    }

    bool operator==(const SymMatrix&) const = default;

private:
    void check_finite() const {
        for (double x : data_) {
            if (!std::isfinite(x)) throw InputError("matrix entries must be finite");
        }
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// General dense rows x cols block, used for cross-covariance results.
class DenseBlock {
public:
    DenseBlock(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double max_abs() const {
        double s = 0.0;
        for (double x : data_) s = std::max(s, std::abs(x));
        return s;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Cholesky factorization with diagonal (symmetric) pivoting: P^T M P = L L^T.
/// Fails when the largest remaining diagonal drops to pd_relative_pivot * max
/// diagonal or below.
class PivotedCholesky {
public:
    explicit PivotedCholesky(const SymMatrix& m, double relative_pivot = Tolerances{}.pd_relative_pivot)
        : n_(m.size()), lower_(n_ * n_, 0.0), perm_(n_) {
        for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
        std::vector<double> work(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) work[i * n_ + j] = m(i, j);
        }
        const double threshold = relative_pivot * m.max_diagonal();
        auto at = [&](std::size_t i, std::size_t j) -> double& { return work[i * n_ + j]; };

        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t best = k;
            for (std::size_t j = k + 1; j < n_; ++j) {
                if (at(j, j) > at(best, best)) best = j;
            }
            if (!(at(best, best) > threshold) || !(at(best, best) > 0.0)) {
                ok_ = false;
                failed_pivot_ = perm_[best];
                return;
            }
            if (best != k) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(best, j));
                for (std::size_t i = 0; i < n_; ++i) std::swap(at(i, k), at(i, best));
                for (std::size_t j = 0; j < k; ++j) std::swap(lower_[k * n_ + j], lower_[best * n_ + j]);
                std::swap(perm_[k], perm_[best]);
            }
            const double pivot = std::sqrt(at(k, k));
            lower_[k * n_ + k] = pivot;
            for (std::size_t i = k + 1; i < n_; ++i) lower_[i * n_ + k] = at(i, k) / pivot;
            for (std::size_t i = k + 1; i < n_; ++i) {
                const double lik = lower_[i * n_ + k];
                if (lik == 0.0) continue;
                for (std::size_t j = k + 1; j <= i; ++j) {
                    at(i, j) -= lik * lower_[j * n_ + k];
                    at(j, i) = at(i, j);
                }
            }
        }
    }

    bool ok() const { return ok_; }
    /// Original index of the pivot that failed; meaningful only when !ok().
    std::size_t failed_pivot() const { return failed_pivot_; }

    /// Product of squared pivots; requires ok().
    double determinant() const {
        double d = 1.0;
        for (std::size_t k = 0; k < n_; ++k) d *= lower_[k * n_ + k] * lower_[k * n_ + k];
        return d;
    }

    /// Solves M x = b; requires ok().
    std::vector<double> solve(std::span<const double> b) const {
        std::vector<double> y(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lower_[i * n_ + j] * y[j];
            y[i] = s / lower_[i * n_ + i];
        }
        for (std::size_t i = n_; i-- > 0;) {
            double s = y[i];
            for (std::size_t j = i + 1; j < n_; ++j) s -= lower_[j * n_ + i] * y[j];
            y[i] = s / lower_[i * n_ + i];
        }
        std::vector<double> x(n_);
        for (std::size_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
        return x;
    }

private:
    std::size_t n_;
    std::vector<double> lower_;
    std::vector<std::size_t> perm_;
    bool ok_ = true;
    std::size_t failed_pivot_ = 0;
};

inline bool is_positive_definite(const SymMatrix& m, const Tolerances& tol = {}) {
    return PivotedCholesky(m, tol.pd_relative_pivot).ok();
}

/// Rows/columns in `keep`, ascending. Empty keep gives the 0-dimensional matrix.
inline SymMatrix principal_submatrix(const SymMatrix& m, VertexSet keep) {
    if (!keep.is_subset_of(VertexSet::range(m.size()))) {
        throw InputError("principal_submatrix: index out of range for dimension " + std::to_string(m.size()));
    }
    const std::vector<Vertex> idx = keep.to_vector();
    std::vector<std::vector<double>> rows(idx.size(), std::vector<double>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) rows[i][j] = m(idx[i], idx[j]);
    }
    return SymMatrix::from_rows(rows);
}

/// LU with partial pivoting, so indefinite and singular inputs work too.
/// The 0-dimensional determinant is exactly 1.
inline double determinant(const SymMatrix& m) {
    const std::size_t n = m.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    }
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
        }
        if (a[p * n + k] == 0.0) return 0.0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            det = -det;
        }
        const double pivot = a[k * n + k];
        det *= pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / pivot;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
        }
    }
    return det;
}

inline SymMatrix inverse(const SymMatrix& m, const Tolerances& tol = {}) {
    const PivotedCholesky chol(m, tol.pd_relative_pivot);
    if (!chol.ok()) {
        throw DomainError("matrix is not positive definite (factorization failed at pivot index " +
                              std::to_string(chol.failed_pivot()) + ")",
                          chol.failed_pivot());
    }
    const std::size_t n = m.size();
    std::vector<std::vector<double>> cols(n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        cols[j] = chol.solve(e);
        e[j] = 0.0;
    }
    // cols[j][i] = K(i, j); from_rows averages K with its transpose.
    return SymMatrix::from_rows(cols);
}

/// Sigma_ab - Sigma_ac Sigma_cc^{-1} Sigma_cb, rows ordered as a, columns as b.
inline DenseBlock conditional_cross_cov(const SymMatrix& m, VertexSet a, VertexSet b, VertexSet c,
                                        const Tolerances& tol = {}) {
    if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
        throw InputError("conditional_cross_cov: sets must be pairwise disjoint");
    }
    if (!(a | b | c).is_subset_of(VertexSet::range(m.size()))) {
        throw InputError("conditional_cross_cov: index out of range for dimension " + std::to_string(m.size()));
    }
    const std::vector<Vertex> ai = a.to_vector();
    const std::vector<Vertex> bi = b.to_vector();
    DenseBlock out(ai.size(), bi.size());
    for (std::size_t i = 0; i < ai.size(); ++i) {
        for (std::size_t j = 0; j < bi.size(); ++j) out(i, j) = m(ai[i], bi[j]);
    }
    if (c.empty()) return out;

    const std::vector<Vertex> ci = c.to_vector();
    const PivotedCholesky chol(principal_submatrix(m, c), tol.pd_relative_pivot);
    if (!chol.ok()) {
        throw DomainError("conditioning block is not positive definite (pivot index " +
                              std::to_string(ci[chol.failed_pivot()]) + ")",
                          ci[chol.failed_pivot()]);
    }
    std::vector<double> rhs(ci.size());
    for (std::size_t j = 0; j < bi.size(); ++j) {
        for (std::size_t k = 0; k < ci.size(); ++k) rhs[k] = m(ci[k], bi[j]);
        const std::vector<double> x = chol.solve(rhs);
        for (std::size_t i = 0; i < ai.size(); ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < ci.size(); ++k) s += m(ai[i], ci[k]) * x[k];
            out(i, j) -= s;
        }
    }
    return out;
}

// CSV matrix format: n lines of n comma-separated decimal literals. Lines
// starting with '#' are comments, except "# labels: a,b,c" which names the
// variables in column order.

struct CsvMatrix {
    SymMatrix matrix;
    std::vector<std::string> labels;
    double max_relative_asymmetry = 0.0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace detail

inline CsvMatrix read_csv_matrix(std::istream& in) {
    CsvMatrix out;
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string body = detail::trim(t.substr(1));
            if (body.rfind("labels:", 0) == 0) out.labels = detail::split_commas(detail::trim(body.substr(7)));
            continue;
        }
        std::vector<double> row;
        const std::vector<std::string> cells = detail::split_commas(t);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            char* end = nullptr;
            const double v = cell.empty() ? 0.0 : std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size()) {
                throw InputError("CSV row " + std::to_string(rows.size() + 1) + " (line " + std::to_string(line_no) +
                                 "), column " + std::to_string(c + 1) + ": not a number: '" + cell + "'");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InputError("CSV row " + std::to_string(rows.size() + 1) + " (line " + std::to_string(line_no) +
                             ") has " + std::to_string(row.size()) + " columns, expected " +
                             std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (!rows.empty() && rows.size() != rows.front().size()) {
        throw InputError("CSV matrix has " + std::to_string(rows.size()) + " rows but " +
                         std::to_string(rows.front().size()) + " columns");
    }
    if (!out.labels.empty() && out.labels.size() != rows.size()) {
        throw InputError("CSV labels line names " + std::to_string(out.labels.size()) + " variables, matrix has " +
                         std::to_string(rows.size()));
    }
    out.matrix = SymMatrix::from_rows(rows, &out.max_relative_asymmetry);
    return out;
}

/// Writes with 17 significant digits so values round-trip exactly.
inline void write_csv_matrix(std::ostream& out, const SymMatrix& m, const std::vector<std::string>& labels = {}) {
    if (!labels.empty()) {
        out << "# labels: ";
        for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
        out << '\n';
    }
    char buf[32];
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

} // namespace covtree

#endif // COVTREE_SYM_MATRIX_HPP_
