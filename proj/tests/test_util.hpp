#pragma once

// Shared fixtures for the unit tests: compact constructors for small
// parameters so each test names only the data it is about.

#include <apacket/packet.hpp>
#include <apacket/params.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace apacket::testutil {

// One self-dual rho of the given duality and dimension carrying all blocks;
// the group is derived so that the parameter validates (the dual type matches
// the blocks and N is the total dimension).
inline ArthurParameter single_rho(std::vector<JordanBlock> blocks,
                                  SelfDual duality = SelfDual::orthogonal,
                                  std::int64_t dim = 1) {
    std::int64_t N = 0;
    int ty = 1;
    for (auto& blk : blocks) {
        blk.rho = 0;
        auto [a, b] = block_to_ab(blk);
        N += dim * a * b;
        ty = (duality == SelfDual::orthogonal ? 1 : -1) * ((a + b) % 2 == 0 ? 1 : -1);
    }
    GroupKind g;
    g.N = N;
    g.family = ty < 0 ? GroupFamily::SOodd
                      : (N % 2 != 0 ? GroupFamily::Sp : GroupFamily::SOevenQuasisplit);
    return ArthurParameter::build(g, {RhoLabel{"rho", dim, duality}}, blocks);
}

// Same, but from (a, b) pairs.
inline ArthurParameter single_rho_ab(const std::vector<std::pair<std::int64_t, std::int64_t>>& ab,
                                     SelfDual duality = SelfDual::orthogonal,
                                     std::int64_t dim = 1) {
    std::vector<JordanBlock> blocks;
    blocks.reserve(ab.size());
    for (auto [a, b] : ab) blocks.push_back(block_from_ab(0, a, b));
    return single_rho(std::move(blocks), duality, dim);
}

// Shorthand for a block with explicit (A, B, zeta) in half-integer units.
inline JordanBlock blk2(std::int64_t twiceA, std::int64_t twiceB, char zeta) {
    JordanBlock b;
    b.rho = 0;
    b.A = HalfInt::from_twice(twiceA);
    b.B = HalfInt::from_twice(twiceB);
    b.zeta = zeta == '-' ? Sign::minus() : Sign::plus();
    return b;
}

inline PacketIndex idx(std::vector<std::int64_t> l, const char* etas) {
    PacketIndex ix;
    ix.l = std::move(l);
    for (const char* p = etas; *p != '\0'; ++p)
        ix.eta.push_back(*p == '-' ? Sign::minus() : Sign::plus());
    return ix;
}

} // namespace apacket::testutil
