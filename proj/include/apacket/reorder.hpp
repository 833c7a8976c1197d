#pragma once

#include "apacket/packet.hpp"
#include "apacket/params.hpp"

namespace apacket {

struct SwapResult {
    BlockOrder order;
    PacketIndex index; // canonical form
};

// Transports an index across the adjacent transposition of positions (pos,
// pos+1) in rho's sequence.  Requires the swapped order to be admissible,
// which for equal zeta forces one block's [B, A] interval to contain the
// other's.  Indices whose transported l leaves its range (the representation
// vanishes for the other order) raise ValidationError.
SwapResult swap_adjacent(const ArthurParameter& param, const BlockOrder& order,
                         const PacketIndex& index, int rho, int pos);

// Transports an index from one admissible order to another through adjacent
// transpositions (selection sort towards `to`; every intermediate order is
// admissible).  The result does not depend on the chosen path; the
// path-independence tests pin that down.
PacketIndex reorder_path(const ArthurParameter& param, const BlockOrder& from,
                         const BlockOrder& to, const PacketIndex& index);

} // namespace apacket
