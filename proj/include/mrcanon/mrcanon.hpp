// Copyright 2026 The mrcanon Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MRCANON_MRCANON_HPP_
#define MRCANON_MRCANON_HPP_

#include "mrcanon/brute_force.hpp"
#include "mrcanon/errors.hpp"
#include "mrcanon/generators.hpp"
#include "mrcanon/graph.hpp"
#include "mrcanon/io.hpp"
#include "mrcanon/multi_refine.hpp"
#include "mrcanon/perm_group.hpp"
#include "mrcanon/refine.hpp"
#include "mrcanon/report.hpp"
#include "mrcanon/search.hpp"

#endif  // MRCANON_MRCANON_HPP_
