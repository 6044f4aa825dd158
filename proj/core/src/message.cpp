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

#include "dgalab/message.hpp"

#include <stdexcept>

namespace dgalab {

void encode_message(const DistanceMessage& msg, std::vector<std::uint8_t>& out) {
  for (unsigned i = 0; i < 8; ++i)
    out.push_back(static_cast<std::uint8_t>(msg.vertex >> (8 * i)));
  for (unsigned i = 0; i < 4; ++i)
    out.push_back(static_cast<std::uint8_t>(msg.distance >> (8 * i)));
}

std::vector<std::uint8_t> encode_messages(std::span<const DistanceMessage> msgs) {
  std::vector<std::uint8_t> out;
  out.reserve(msgs.size() * kWireRecordBytes);
  for (const DistanceMessage& m : msgs) encode_message(m, out);
  return out;
}

std::vector<DistanceMessage> decode_messages(std::span<const std::uint8_t> payload) {
  if (payload.size() % kWireRecordBytes != 0)
    throw std::runtime_error("decode_messages: payload length " +
                             std::to_string(payload.size()) +
                             " is not a multiple of 12");
  std::vector<DistanceMessage> msgs;
  msgs.reserve(payload.size() / kWireRecordBytes);
  for (std::size_t off = 0; off < payload.size(); off += kWireRecordBytes) {
    DistanceMessage m;
    for (unsigned i = 0; i < 8; ++i)
      m.vertex |= static_cast<Vertex>(payload[off + i]) << (8 * i);
    for (unsigned i = 0; i < 4; ++i)
      m.distance |= static_cast<Dist>(payload[off + 8 + i]) << (8 * i);
    msgs.push_back(m);
  }
  return msgs;
}

}  // namespace dgalab
