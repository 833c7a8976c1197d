#pragma once

#include <cstdint>
#include <vector>

#include "apacket/params.hpp"

namespace apacket {

// A packet index: one (l, eta) pair per indexed block, aligned with
// param.blocks by position.  l lies in [0, floor((A - B + 1)/2)]; eta is a sign.
// When l = (A - B + 1)/2 (only possible for even A - B + 1) the two eta values
// label the same element; `canonical_index` normalizes that eta to +1.
struct PacketIndex {
    std::vector<std::int64_t> l;
    std::vector<Sign> eta;

    friend bool operator==(const PacketIndex&, const PacketIndex&) = default;
};

// Strict-weak order for deterministic listings (lexicographic in l, then eta).
bool index_less(const PacketIndex& a, const PacketIndex& b);

std::int64_t l_max(const JordanBlock& blk);
bool at_collapse(const JordanBlock& blk, std::int64_t l);

// eta^(A-B+1) * (-1)^(floor((A-B+1)/2) + l).
Sign epsilon_sign(HalfInt A, HalfInt B, std::int64_t l, Sign eta);

// Product of epsilon_sign over all indexed blocks equals +1.
bool sign_condition(const ArthurParameter& param, const PacketIndex& index);

// Normalizes eta to +1 at collapse points; idempotent.
PacketIndex canonical_index(const ArthurParameter& param, const PacketIndex& index);

// Whether the parameter-with-order is in the shape the direct nonvanishing
// test covers: per rho, all zeta = '+' and A, B nondecreasing along the order.
bool is_special_case(const ArthurParameter& param, const BlockOrder& order);

// The nonvanishing condition for special-case shape, per rho over adjacent
// pairs i < i+1 of the order:
//   if eta_{i+1} = (-1)^(A_i - B_i) eta_i :  A_{i+1} - l_{i+1} >= A_i - l_i
//                                            and B_{i+1} + l_{i+1} >= B_i + l_i
//   otherwise                             :  B_{i+1} + l_{i+1} >  A_i - l_i
// At a collapse point both eta readings are tried (they give the same answer;
// the equivalence class quotients eta away there).  Throws unless
// is_special_case holds.
bool nonvanishing_special(const ArthurParameter& param, const BlockOrder& order,
                          const PacketIndex& index);

// All canonical indices with every l in range, the sign condition, and
// nonvanishing_special; sorted by index_less.  Requires special-case shape.
std::vector<PacketIndex> enumerate_packet(const ArthurParameter& param, const BlockOrder& order);

// Range check used by several modules.
void validate_index(const ArthurParameter& param, const PacketIndex& index);

} // namespace apacket
