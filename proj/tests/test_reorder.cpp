#include <apacket/errors.hpp>
#include <apacket/packet.hpp>
#include <apacket/params.hpp>
#include <apacket/reorder.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <vector>

using namespace apacket;
using namespace apacket::testutil;

namespace {

BlockOrder ord(std::vector<int> seq) {
    BlockOrder o;
    o.seq_by_rho = {std::move(seq)};
    return o;
}

} // namespace

TEST_CASE("opposite-zeta swap keeps l and twists eta") {
    // (2, 1, -) below (3, 1, +): swapping flips each eta by the other block's
    // (-1)^(A - B + 1).
    const ArthurParameter p = single_rho({blk2(4, 2, '-'), blk2(6, 2, '+')});
    const BlockOrder from = ord({0, 1});
    REQUIRE(is_admissible_order(p, from));

    const SwapResult s = swap_adjacent(p, from, idx({0, 0}, "++"), 0, 0);
    CHECK(s.order == ord({1, 0}));
    CHECK(s.index.l == std::vector<std::int64_t>{0, 0});
    // eta_1 picks up (-1)^(A_2 - B_2 + 1) = (-1)^3; eta_2 picks up (-1)^2.
    CHECK(s.index == idx({0, 0}, "-+"));

    // Swapping back restores the original index.
    const SwapResult back = swap_adjacent(p, s.order, s.index, 0, 0);
    CHECK(back.order == from);
    CHECK(back.index == idx({0, 0}, "++"));
}

TEST_CASE("equal-zeta swap with nested intervals, different-branch case") {
    // (2, 1, +) below (4, 0, +): [0, 4] contains [1, 2].
    const ArthurParameter p = single_rho({blk2(4, 2, '+'), blk2(8, 0, '+')});
    const BlockOrder from = ord({0, 1});
    REQUIRE(is_admissible_order(p, from));
    REQUIRE(is_admissible_order(p, ord({1, 0})));

    // Source eta_2 = +, (-1)^(A_1 - B_1) eta_1 = -: different branch, so the
    // container's l drops by (A_1 - B_1 - 2 l_1) + 1 = 2 and etas align.
    const SwapResult s = swap_adjacent(p, from, idx({0, 2}, "++"), 0, 0);
    CHECK(s.order == ord({1, 0}));
    CHECK(s.index == idx({0, 0}, "++"));

    const SwapResult back = swap_adjacent(p, s.order, s.index, 0, 0);
    CHECK(back.order == from);
    CHECK(back.index == idx({0, 2}, "++"));
}

TEST_CASE("swap is an involution across a whole packet") {
    // (1, 1, +) below (3, 1, +): equal B, nested intervals, both orders
    // admissible, and the canonical order is in special-case shape.
    const ArthurParameter p = single_rho({blk2(2, 2, '+'), blk2(6, 2, '+')});
    const BlockOrder from = ord({0, 1});
    const std::vector<PacketIndex> packet = enumerate_packet(p, canonical_order(p));
    REQUIRE(packet.size() == 2);
    for (const PacketIndex& ix : packet) {
        const SwapResult s = swap_adjacent(p, from, ix, 0, 0);
        const SwapResult back = swap_adjacent(p, s.order, s.index, 0, 0);
        CHECK(back.order == from);
        CHECK(back.index == canonical_index(p, ix));
    }
}

TEST_CASE("vanishing for the other order is reported, not fabricated") {
    // (0, 0, +) below (1, 0, +): same zeta, nested ([0,1] contains [0,0]).
    // The index l = (0, 1), eta = (+, +) has no transport target: both
    // exchange rules leave the admissible l range.
    const ArthurParameter p = single_rho({blk2(0, 0, '+'), blk2(2, 0, '+')});
    const BlockOrder from = ord({0, 1});
    REQUIRE(is_admissible_order(p, from));
    CHECK_THROWS_AS(swap_adjacent(p, from, idx({0, 0}, "-+"), 0, 0), ValidationError);
}

TEST_CASE("reorder_path: identity and round trips") {
    const ArthurParameter p = single_rho_ab({{3, 3}, {5, 3}});
    const BlockOrder canon = canonical_order(p);
    for (const PacketIndex& ix : enumerate_packet(p, canon)) {
        CHECK(reorder_path(p, canon, canon, ix) == ix);
    }

    // Through a genuine reorder and back.
    const ArthurParameter q = single_rho({blk2(2, 2, '+'), blk2(6, 2, '+')});
    const BlockOrder from = ord({0, 1});
    const BlockOrder to = ord({1, 0});
    for (const PacketIndex& ix : enumerate_packet(q, canonical_order(q))) {
        const PacketIndex there = reorder_path(q, from, to, ix);
        CHECK(reorder_path(q, to, from, there) == canonical_index(q, ix));
    }
}

TEST_CASE("path independence on a three-block parameter") {
    // Equal B throughout: no block dominates another, every permutation is
    // admissible, and the transport to a fixed target must not depend on the
    // route taken.
    const ArthurParameter p =
        single_rho({blk2(2, 2, '+'), blk2(4, 2, '+'), blk2(8, 2, '+')});
    const BlockOrder canon = canonical_order(p);
    const BlockOrder target = ord({2, 1, 0});
    REQUIRE(is_admissible_order(p, target));
    const BlockOrder mid = ord({1, 0, 2});
    REQUIRE(is_admissible_order(p, mid));

    for (const PacketIndex& ix : enumerate_packet(p, canon)) {
        // Route one: straight there; route two: through an intermediate order.
        const PacketIndex direct = reorder_path(p, canon, target, ix);
        const PacketIndex via = reorder_path(p, mid, target, reorder_path(p, canon, mid, ix));
        CHECK(direct == via);
    }
}

TEST_CASE("swap rejects inadmissible targets") {
    // (3, 2, +) strictly dominates (1, 0, +); the swapped order is not
    // admissible, so the transport request is invalid.
    const ArthurParameter p = single_rho({blk2(2, 0, '+'), blk2(6, 4, '+')});
    const BlockOrder from = ord({0, 1});
    CHECK_THROWS_AS(swap_adjacent(p, from, idx({0, 0}, "++"), 0, 0), ValidationError);
}
