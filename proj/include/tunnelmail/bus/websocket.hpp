// Copyright 2026 The Tunnelmail Authors
//
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

#ifndef TUNNELMAIL_BUS_WEBSOCKET_HPP_
#define TUNNELMAIL_BUS_WEBSOCKET_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tunnelmail::bus::ws {

enum Opcode : std::uint8_t {
  kContinuation = 0x0,
  kText = 0x1,
  kBinary = 0x2,
  kClose = 0x8,
  kPing = 0x9,
  kPong = 0xA,
};

struct Frame {
  bool fin = true;
  std::uint8_t opcode = kText;
  std::string payload;
};

/// `Sec-WebSocket-Accept` value for a client's `Sec-WebSocket-Key`.
std::string accept_key(std::string_view client_key);

/// Value of header `name` (case-insensitive) in an HTTP request head, if present.
std::optional<std::string> header_value(std::string_view request, std::string_view name);

/// Full `101 Switching Protocols` response for a handshake request, or
/// nullopt if the request lacks a key.
std::optional<std::string> handshake_response(std::string_view request);

/// Serialises one unfragmented frame; `mask_key` non-zero masks the payload
/// as clients must.
std::string encode(const Frame& frame, std::uint32_t mask_key = 0);

/// Removes and returns one complete frame from the front of `buffer`, or
/// nullopt if more bytes are needed. Throws std::runtime_error on frames
/// larger than 16 MiB.
std::optional<Frame> decode(std::string& buffer);

}  // namespace tunnelmail::bus::ws

#endif  // TUNNELMAIL_BUS_WEBSOCKET_HPP_
