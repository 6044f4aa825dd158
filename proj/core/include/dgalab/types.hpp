/*
   Copyright (c) 2026 The dgalab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DGALAB_TYPES_HPP
#define DGALAB_TYPES_HPP

#include <cstdint>
#include <limits>

namespace dgalab {

using Vertex = std::uint64_t;
using Weight = std::uint32_t;
using Dist = std::uint32_t;
using RankId = std::uint32_t;
using VTime = std::uint64_t;

// Sentinel for "not reached". Distances are stored as 32-bit values to keep
// the wire record at 12 bytes.
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();

}  // namespace dgalab

#endif  // DGALAB_TYPES_HPP
