/*
 * Copyright 2026 The graphgame Authors.
 *
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


// Umbrella header.

#ifndef GRAPHGAME_GRAPHGAME_HPP_
#define GRAPHGAME_GRAPHGAME_HPP_

#include "graphgame/config.hpp"
#include "graphgame/external_backend.hpp"
#include "graphgame/graph.hpp"
#include "graphgame/interaction.hpp"
#include "graphgame/io.hpp"
#include "graphgame/metrics.hpp"
#include "graphgame/motif_search.hpp"
#include "graphgame/node_subset.hpp"
#include "graphgame/value_function.hpp"

#endif  // GRAPHGAME_GRAPHGAME_HPP_
