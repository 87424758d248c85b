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

#ifndef COVTREE_COVTREE_HPP_
#define COVTREE_COVTREE_HPP_

#include "covtree/errors.hpp"
#include "covtree/faithfulness.hpp"
#include "covtree/gaussian_model.hpp"
#include "covtree/graph.hpp"
#include "covtree/instance_gen.hpp"
#include "covtree/path_expansion.hpp"
#include "covtree/sym_matrix.hpp"
#include "covtree/tolerances.hpp"
#include "covtree/vertex_set.hpp"

#endif // COVTREE_COVTREE_HPP_
