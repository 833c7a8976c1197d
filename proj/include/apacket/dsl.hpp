#pragma once

#include <string>
#include <vector>

#include "apacket/langlands.hpp"
#include "apacket/packet.hpp"
#include "apacket/params.hpp"
#include "apacket/reduce.hpp"

namespace apacket {

// Text format for describing a parameter, one directive per line:
//
//   # comment (blank lines and trailing comments are ignored)
//   group Sp N=21
//   rho triv dim=1 orth
//   block triv a=3 b=3 zeta=+
//   block triv a=5 b=1
//
// Directives:
//   group <Sp|SOodd|SOeven> N=<int>   exactly once
//   rho <name> dim=<int> <orth|symp|nsd>
//   block <rho-name> a=<int> b=<int> [zeta=<+|->]
//
// zeta may only be given when a == b (otherwise it is determined by the sign
// of a - b); an omitted zeta on a tie defaults to '+'.  Blocks whose type does
// not match the dual group are automatically paired off.  Errors carry
// line/column positions.
ArthurParameter parse_parameter(const std::string& text);

// Inverse of parse_parameter, up to comments and spacing.
std::string serialize_parameter(const ArthurParameter& param);

// JSON outputs.  Both are deterministic: byte-identical output for equal
// inputs.  Schema (top level): {"schema": "1", "parameter": {...},
// "packet": [ ... ]}.  Packet entries always carry "index" ({"l": [...],
// "eta": ["+",...], "class": k?}); entries produced by serialize_resolution
// additionally carry "phi" ([{"rho", "twist", "dim", "mult"}]) and "epsilon"
// ([{"rho", "dim", "sign"}]).  Half-integers are rendered as strings "k" or
// "k/2".
std::string serialize_packet(const ArthurParameter& param,
                             const std::vector<PacketIndex>& packet);
std::string serialize_resolution(const ArthurParameter& param, const ResolveOutput& out,
                                 const std::vector<LanglandsParameter>& phis);

// Plain-text renderings of the same data for terminal use.
std::string format_packet_table(const ArthurParameter& param,
                                const std::vector<PacketIndex>& packet);
std::string format_resolution_table(const ArthurParameter& param, const ResolveOutput& out,
                                    const std::vector<LanglandsParameter>& phis);

} // namespace apacket
