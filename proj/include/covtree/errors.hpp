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

#ifndef COVTREE_ERRORS_HPP_
#define COVTREE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covtree {

/// Malformed or inconsistent input (bad vertex ids, overlapping sets, ragged CSV rows).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical precondition failed, e.g. a matrix that must be positive definite is not.
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, std::size_t pivot)
        : std::domain_error(what), pivot_(pivot) {}

    /// Original row/column index at which factorization broke down.
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// An exhaustive computation would exceed a configured cap (path count, triple count, retries).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace covtree

#endif // COVTREE_ERRORS_HPP_
