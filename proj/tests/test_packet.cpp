#include <apacket/errors.hpp>
#include <apacket/packet.hpp>
#include <apacket/params.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace apacket;
using namespace apacket::testutil;

namespace {

std::vector<PacketIndex> sorted(std::vector<PacketIndex> v) {
    std::sort(v.begin(), v.end(), index_less);
    return v;
}

} // namespace

TEST_CASE("epsilon sign per block") {
    // A = B (one-column block): epsilon = eta.
    CHECK(epsilon_sign(HalfInt(2), HalfInt(2), 0, Sign::plus()) == Sign::plus());
    CHECK(epsilon_sign(HalfInt(2), HalfInt(2), 0, Sign::minus()) == Sign::minus());
    // A - B + 1 = 2: epsilon = (-1)^(1 + l), independent of eta.
    CHECK(epsilon_sign(HalfInt(1), HalfInt(0), 0, Sign::plus()) == Sign::minus());
    CHECK(epsilon_sign(HalfInt(1), HalfInt(0), 0, Sign::minus()) == Sign::minus());
    CHECK(epsilon_sign(HalfInt(1), HalfInt(0), 1, Sign::plus()) == Sign::plus());
    // A - B + 1 = 3: epsilon = eta * (-1)^(1 + l).
    CHECK(epsilon_sign(HalfInt(2), HalfInt(0), 1, Sign::plus()) == Sign::plus());
    CHECK(epsilon_sign(HalfInt(2), HalfInt(0), 0, Sign::plus()) == Sign::minus());
}

TEST_CASE("l range and collapse points") {
    const JordanBlock b33 = block_from_ab(0, 3, 3); // (2, 0, +): A - B + 1 = 3
    CHECK(l_max(b33) == 1);
    CHECK_FALSE(at_collapse(b33, 1)); // odd A - B + 1 never collapses
    const JordanBlock b42 = block_from_ab(0, 4, 2); // (2, 1, +): A - B + 1 = 2
    CHECK(l_max(b42) == 1);
    CHECK(at_collapse(b42, 1));
    CHECK_FALSE(at_collapse(b42, 0));
}

TEST_CASE("sign condition multiplies the block signs") {
    const ArthurParameter p33 = single_rho_ab({{3, 3}}); // D = 3
    CHECK(sign_condition(p33, idx({0}, "-")));  // eps = -eta = +
    CHECK_FALSE(sign_condition(p33, idx({0}, "+")));
    CHECK(sign_condition(p33, idx({1}, "+")));

    // Two blocks whose epsilons are each -1 multiply to +1.
    const ArthurParameter p2 = single_rho_ab({{2, 2}, {3, 3}});
    CHECK(sign_condition(p2, idx({0, 0}, "++"))); // (-1) * (-1)
    CHECK_FALSE(sign_condition(p2, idx({0, 1}, "++")));
}

TEST_CASE("canonical index normalizes eta at collapse points") {
    const ArthurParameter p = single_rho_ab({{4, 2}}); // (2, 1, +): collapse at l = 1
    CHECK(canonical_index(p, idx({1}, "-")) == idx({1}, "+"));
    CHECK(canonical_index(p, idx({0}, "-")) == idx({0}, "-"));
    // Idempotent.
    const PacketIndex once = canonical_index(p, idx({1}, "-"));
    CHECK(canonical_index(p, once) == once);
}

TEST_CASE("special-case shape recognizes nondecreasing zeta = '+' chains") {
    const ArthurParameter good = single_rho_ab({{3, 3}, {5, 3}});
    CHECK(is_special_case(good, canonical_order(good)));

    const ArthurParameter minus = single_rho({blk2(6, 2, '-')});
    CHECK_FALSE(is_special_case(minus, canonical_order(minus)));
}

TEST_CASE("nonvanishing conditions between adjacent blocks") {
    const ArthurParameter p = single_rho_ab({{3, 3}, {5, 3}}); // (2,0,+), (3,1,+)
    const BlockOrder ord = canonical_order(p);
    // Same-branch pair (eta_2 = (-1)^(A_1 - B_1) eta_1 = eta_1 here).
    CHECK(nonvanishing_special(p, ord, idx({0, 0}, "++")));
    CHECK(nonvanishing_special(p, ord, idx({0, 0}, "--")));
    // Different branch: needs B_2 + l_2 > A_1 - l_1, i.e. 1 + l_2 > 2 - l_1.
    CHECK_FALSE(nonvanishing_special(p, ord, idx({0, 0}, "+-")));
    CHECK(nonvanishing_special(p, ord, idx({1, 1}, "+-")));

    // Disjoint supports never obstruct each other.
    const ArthurParameter q = single_rho({blk2(2, 0, '+'), blk2(10, 4, '+')});
    const BlockOrder qord = canonical_order(q);
    for (std::int64_t l1 : {0, 1}) {
        for (Sign e1 : {Sign::plus(), Sign::minus()}) {
            for (std::int64_t l2 : {0, 1, 2}) {
                for (Sign e2 : {Sign::plus(), Sign::minus()}) {
                    PacketIndex ix;
                    ix.l = {l1, l2};
                    ix.eta = {e1, e2};
                    CHECK(nonvanishing_special(q, qord, ix));
                }
            }
        }
    }
}

TEST_CASE("single-block packets match the closed forms") {
    // a = b = 3: A - B + 1 = 3, packet {(0, -), (1, +)}.
    const ArthurParameter p33 = single_rho_ab({{3, 3}});
    CHECK(sorted(enumerate_packet(p33, canonical_order(p33))) ==
          std::vector<PacketIndex>{idx({0}, "-"), idx({1}, "+")});

    // a = 4, b = 2: A - B + 1 = 2, packet {(1, +)} (the collapse class).
    const ArthurParameter p42 = single_rho_ab({{4, 2}});
    CHECK(enumerate_packet(p42, canonical_order(p42)) ==
          std::vector<PacketIndex>{idx({1}, "+")});

    // a = b = 2 behaves the same.
    const ArthurParameter p22 = single_rho_ab({{2, 2}});
    CHECK(enumerate_packet(p22, canonical_order(p22)) ==
          std::vector<PacketIndex>{idx({1}, "+")});
}

TEST_CASE("a parameter with no indexed blocks has the one empty index") {
    GroupKind g;
    g.family = GroupFamily::SOevenQuasisplit;
    g.N = 24;
    const ArthurParameter p = ArthurParameter::build(
        g, {RhoLabel{"tau", 2, SelfDual::none}}, {block_from_ab(0, 2, 3)});
    const std::vector<PacketIndex> pk = enumerate_packet(p, canonical_order(p));
    REQUIRE(pk.size() == 1);
    CHECK(pk[0].l.empty());
    CHECK(pk[0].eta.empty());
}

TEST_CASE("index validation rejects out-of-range data") {
    const ArthurParameter p = single_rho_ab({{3, 3}});
    CHECK_NOTHROW(validate_index(p, idx({1}, "+")));
    CHECK_THROWS_AS(validate_index(p, idx({2}, "+")), ValidationError);
    CHECK_THROWS_AS(validate_index(p, idx({0, 0}, "++")), ValidationError);
    PacketIndex mismatched;
    mismatched.l = {0};
    CHECK_THROWS_AS(validate_index(p, mismatched), ValidationError);
}

TEST_CASE("enumeration requires special-case shape") {
    const ArthurParameter minus = single_rho({blk2(6, 2, '-')});
    CHECK_THROWS_AS(enumerate_packet(minus, canonical_order(minus)), ValidationError);
}
