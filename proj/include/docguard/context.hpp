// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "docguard/common.hpp"

namespace docguard {

enum class DataState { in_use, in_transit, at_rest };
enum class ReceiverZone { internal, external };

/// Who is moving what, where: the contextual side of a transfer decision,
/// alongside the content classification.
struct TransferContext {
    std::string sender;
    std::string receiver;
    std::string format;  // file extension without the dot, e.g. "txt"
    std::chrono::system_clock::time_point timestamp{};
    std::uint64_t size_bytes = 0;
    DataState data_state = DataState::in_transit;
    ReceiverZone receiver_zone = ReceiverZone::external;
};

inline std::string to_string(DataState s) {
    switch (s) {
        case DataState::in_use: return "in_use";
        case DataState::in_transit: return "in_transit";
        case DataState::at_rest: return "at_rest";
    }
    throw Error("invalid DataState");
}

inline DataState parse_data_state(const std::string& token) {
    if (token == "in_use") return DataState::in_use;
    if (token == "in_transit") return DataState::in_transit;
    if (token == "at_rest") return DataState::at_rest;
    throw Error("unknown data_state token \"" + token + "\"");
}

inline std::string to_string(ReceiverZone z) {
    return z == ReceiverZone::internal ? "internal" : "external";
}

inline ReceiverZone parse_receiver_zone(const std::string& token) {
    if (token == "internal") return ReceiverZone::internal;
    if (token == "external") return ReceiverZone::external;
    throw Error("unknown receiver_zone token \"" + token + "\"");
}

}  // namespace docguard
