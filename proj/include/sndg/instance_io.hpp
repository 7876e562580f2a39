#ifndef SNDG_INSTANCE_IO_HPP
#define SNDG_INSTANCE_IO_HPP

#include "sndg/game.hpp"

#include <string>
#include <string_view>

namespace sndg {

// A game plus optional metadata, as stored in the line-oriented instance
// format:
//   # comment
//   name: <string>
//   note: <string>
//   directed: true|false
//   vertices: <n>
//   edge <u> <v> <const> [<eps>]
//   player <s> <t>
// Rationals are written `p/q` or as integers; the eps coefficient defaults to
// 0. Edge ids are 0-based record order; vertices are 0-based. Headers must
// precede the first edge/player record and may not repeat.
struct Instance {
    Game game;
    std::string name;
    std::string note;

    friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws ParseError with line/column on malformed input.
Instance parse_instance(std::string_view text);

// Canonical serialization; parse(serialize(x)) == x, including edge order.
std::string serialize_instance(const Instance& instance);

// 64-bit FNV-1a over the canonical serialization, as "fnv1a64:<hex>".
// Identification only, not cryptographic.
std::string instance_digest(const Instance& instance);

}  // namespace sndg

#endif
