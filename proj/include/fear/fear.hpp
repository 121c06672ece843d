/*
 * Copyright 2026 The fear-grid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header for the core library. The HTTP layer is in fear/service.hpp.

#ifndef FEAR_FEAR_HPP_
#define FEAR_FEAR_HPP_

#include "fear/collision.hpp"
#include "fear/error.hpp"
#include "fear/feasibility.hpp"
#include "fear/fixtures.hpp"
#include "fear/grid.hpp"
#include "fear/intersection_search.hpp"
#include "fear/metric.hpp"
#include "fear/sampler.hpp"
#include "fear/scenario_io.hpp"

#endif  // FEAR_FEAR_HPP_
