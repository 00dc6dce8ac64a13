// Copyright 2026 The popgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POPGRAPH_POPGRAPH_HPP_
#define POPGRAPH_POPGRAPH_HPP_

#include "popgraph/core.hpp"
#include "popgraph/game.hpp"
#include "popgraph/learner.hpp"
#include "popgraph/metagame.hpp"
#include "popgraph/interaction_graph.hpp"
#include "popgraph/metrics.hpp"
#include "popgraph/config.hpp"
#include "popgraph/experiment.hpp"

#endif  // POPGRAPH_POPGRAPH_HPP_
