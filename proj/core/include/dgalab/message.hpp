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

#ifndef DGALAB_MESSAGE_HPP
#define DGALAB_MESSAGE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dgalab/types.hpp"

namespace dgalab {

// The unit of all algorithm communication. On the wire each record is
// exactly 12 bytes: little-endian u64 vertex, little-endian u32 distance.
struct DistanceMessage {
  Vertex vertex = 0;
  Dist distance = 0;

  friend bool operator==(const DistanceMessage&, const DistanceMessage&) = default;
};

inline constexpr std::size_t kWireRecordBytes = 12;

void encode_message(const DistanceMessage& msg, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> encode_messages(std::span<const DistanceMessage> msgs);

// Faults unless the payload is a whole number of 12-byte records.
std::vector<DistanceMessage> decode_messages(std::span<const std::uint8_t> payload);

}  // namespace dgalab

#endif  // DGALAB_MESSAGE_HPP
