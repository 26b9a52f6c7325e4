// Copyright (c) 2026 The geoleo-rsma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <cstdint>

#include "rsma/model.hpp"

namespace rsma {

// Users per beam: ceil(U / M).
std::size_t users_per_beam(std::size_t num_beams, std::size_t num_users);

// Round-based greedy assignment. In each round every beam takes at most one
// user; the pick with the largest gain h(m,e,k) over the remaining pool and
// the beams not yet served this round is made first. A beam's subcarrier is
// fixed by its first user (that user's best subcarrier on the beam), so each
// beam serves its users on one subcarrier. Ties: lowest user, then lowest
// subcarrier, then lowest beam.
// Throws StructuralError when U exceeds the M*K*ceil(U/M) capacity or the
// gain tensor shape does not match (M, U, K).
Assignment greedy_assign(const ChannelSet& channels, std::size_t num_beams,
                         std::size_t num_subcarriers, std::size_t num_users);

// Random assignment: users are shuffled and dealt round-robin over a shuffled
// beam order, and each beam draws one subcarrier uniformly. Every beam carries
// floor or ceil of U/M users. Deterministic in the seed.
Assignment random_assign(std::size_t num_beams, std::size_t num_subcarriers,
                         std::size_t num_users, std::uint64_t seed);

} // namespace rsma
