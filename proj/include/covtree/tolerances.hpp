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

#ifndef COVTREE_TOLERANCES_HPP_
#define COVTREE_TOLERANCES_HPP_

#include <cstddef>

namespace covtree {

/// Every numerical threshold used by the library. Zero tests are relative to
/// the scale of the matrix they concern (max absolute entry or max diagonal).
struct Tolerances {
    /// Factorization pivots must exceed this times the max diagonal entry.
    double pd_relative_pivot = 1e-12;
    /// Structural-zero threshold tau, relative to max |entry|.
    double zero_threshold = 1e-10;
    /// Relative asymmetry above which loading a matrix emits a warning.
    double asymmetry_warning = 1e-8;
};

inline constexpr std::size_t kDefaultPathCap = 1'000'000;
inline constexpr std::size_t kDefaultExhaustiveCap = 9;

} // namespace covtree

#endif // COVTREE_TOLERANCES_HPP_
