#include <apacket/errors.hpp>
#include <apacket/params.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <vector>

using namespace apacket;
using namespace apacket::testutil;

TEST_CASE("half integers: construction, arithmetic, rendering") {
    CHECK(HalfInt(3).twice() == 6);
    CHECK(HalfInt::from_twice(5).twice() == 5);
    CHECK(HalfInt(3).is_integral());
    CHECK_FALSE(HalfInt::from_twice(5).is_integral());
    CHECK(HalfInt(2) + HalfInt::from_twice(1) == HalfInt::from_twice(5));
    CHECK(HalfInt(4) - HalfInt(1) == HalfInt(3));
    CHECK(HalfInt(3).str() == "3");
    CHECK(HalfInt::from_twice(-1).str() == "-1/2");
    CHECK(midpoint(HalfInt(1), HalfInt(2)) == HalfInt::from_twice(3));
    CHECK(HalfInt(2) < HalfInt::from_twice(5));
}

TEST_CASE("(a, b) to (A, B, zeta) and back") {
    const JordanBlock b31 = block_from_ab(0, 3, 1);
    CHECK(b31.A == HalfInt(1));
    CHECK(b31.B == HalfInt(1));
    CHECK(b31.zeta.positive());
    CHECK(block_to_ab(b31) == std::pair<std::int64_t, std::int64_t>{3, 1});

    const JordanBlock b15 = block_from_ab(0, 1, 5);
    CHECK(b15.A == HalfInt(2));
    CHECK(b15.B == HalfInt(2));
    CHECK_FALSE(b15.zeta.positive());
    CHECK(block_to_ab(b15) == std::pair<std::int64_t, std::int64_t>{1, 5});

    const JordanBlock b53 = block_from_ab(0, 5, 3);
    CHECK(b53.A == HalfInt(3));
    CHECK(b53.B == HalfInt(1));
    CHECK(block_to_ab(b53) == std::pair<std::int64_t, std::int64_t>{5, 3});
}

TEST_CASE("a = b ties take zeta = '+' unless overridden") {
    const JordanBlock tie = block_from_ab(0, 2, 2);
    CHECK(tie.A == HalfInt(1));
    CHECK(tie.B == HalfInt(0));
    CHECK(tie.zeta.positive());

    const JordanBlock tiem = block_from_ab(0, 2, 2, Sign::minus());
    CHECK_FALSE(tiem.zeta.positive());
    CHECK(block_to_ab(tiem) == std::pair<std::int64_t, std::int64_t>{2, 2});

    // Off a tie the sign of a - b decides; the override is inert.
    CHECK(block_from_ab(0, 3, 1, Sign::minus()).zeta.positive());
}

TEST_CASE("a * b = (A - B + 1)(A + B + 1) across a grid") {
    for (std::int64_t a = 1; a <= 6; ++a) {
        for (std::int64_t b = 1; b <= 6; ++b) {
            const JordanBlock blk = block_from_ab(0, a, b);
            const std::int64_t lo = (blk.A - blk.B + HalfInt(1)).to_int();
            const std::int64_t hi = (blk.A + blk.B + HalfInt(1)).to_int();
            CHECK(a * b == lo * hi);
        }
    }
}

TEST_CASE("admissible orders respect strict domination") {
    // (3, 2, +) strictly dominates (1, 0, +): it must sit higher.
    const ArthurParameter p = single_rho({blk2(6, 4, '+'), blk2(2, 0, '+')});
    BlockOrder up;
    up.seq_by_rho = {{1, 0}}; // (1,0,+) below (3,2,+)
    BlockOrder down;
    down.seq_by_rho = {{0, 1}};
    CHECK(is_admissible_order(p, up));
    CHECK_FALSE(is_admissible_order(p, down));

    // Nested intervals do not dominate; both orders are admissible.
    const ArthurParameter q = single_rho({blk2(8, 0, '+'), blk2(4, 2, '+')});
    BlockOrder o1;
    o1.seq_by_rho = {{0, 1}};
    BlockOrder o2;
    o2.seq_by_rho = {{1, 0}};
    CHECK(is_admissible_order(q, o1));
    CHECK(is_admissible_order(q, o2));
}

TEST_CASE("canonical order sorts by A, then B, with zeta = '-' first") {
    const ArthurParameter p = single_rho({blk2(6, 2, '+'), blk2(2, 2, '-')});
    const BlockOrder ord = canonical_order(p);
    REQUIRE(ord.seq_by_rho.size() == 1);
    CHECK(ord.seq_by_rho[0] == std::vector<int>{1, 0});

    const ArthurParameter single = single_rho({blk2(6, 2, '+')});
    CHECK(canonical_order(single).seq_by_rho[0] == std::vector<int>{0});

    // Equal blocks keep their input order (stable sort).
    const ArthurParameter twins = single_rho({blk2(4, 0, '+'), blk2(4, 0, '+')});
    CHECK(canonical_order(twins).seq_by_rho[0] == std::vector<int>{0, 1});
}

TEST_CASE("far-away blocks clear the quantitative bound") {
    const JordanBlock big = blk2(200, 180, '+');   // (A, B) = (100, 90)
    const JordanBlock small = blk2(6, 2, '+');     // (A, B) = (3, 1)
    const std::vector<JordanBlock> J = {small};
    const std::vector<JordanBlock> ctx = {small, big};
    // Bound: 2^1 * (3 + 1 * ((3-1+1) + (100-90+1))) = 34 < 90.
    CHECK(is_far_away(big, J, ctx));

    const JordanBlock near = blk2(10, 2, '+'); // (5, 1): B = 1 is far from 34
    const std::vector<JordanBlock> ctx2 = {small, near};
    CHECK_FALSE(is_far_away(near, J, ctx2));

    // Empty J: any positive B qualifies.
    CHECK(is_far_away(small, {}, ctx));
}

TEST_CASE("dominating shifts preserve A - B and zeta") {
    const ArthurParameter p = single_rho({blk2(6, 2, '+')}); // (3, 1, +)
    const BlockOrder ord = canonical_order(p);

    const std::vector<HalfInt> zero = {HalfInt(0)};
    const ArthurParameter same = dominate_shift(p, ord, zero);
    CHECK(same.blocks == p.blocks);

    const std::vector<HalfInt> ten = {HalfInt(10)};
    const ArthurParameter moved = dominate_shift(p, ord, ten);
    REQUIRE(moved.blocks.size() == 1);
    CHECK(moved.blocks[0].A == HalfInt(13));
    CHECK(moved.blocks[0].B == HalfInt(11));
    CHECK(moved.blocks[0].zeta == p.blocks[0].zeta);
    CHECK(moved.blocks[0].A - moved.blocks[0].B == p.blocks[0].A - p.blocks[0].B);
}

TEST_CASE("group and dimension invariants are validated") {
    // The derived fixtures validate by construction.
    const ArthurParameter ok = single_rho_ab({{3, 3}, {5, 3}});
    CHECK(ok.total_dim() == 24);
    CHECK(ok.group.family == GroupFamily::SOevenQuasisplit);
    CHECK(ok.np_pairs.empty());

    // A symplectic group needs odd N (dual SO(2n+1)).
    GroupKind bad;
    bad.family = GroupFamily::Sp;
    bad.N = 24;
    CHECK_THROWS_AS(bad.validate(), ValidationError);

    // N must equal the total dimension.
    GroupKind g;
    g.family = GroupFamily::Sp;
    g.N = 11; // should be 9
    CHECK_THROWS_AS(ArthurParameter::build(g, {RhoLabel{"rho", 1, SelfDual::orthogonal}},
                                           {block_from_ab(0, 3, 3)}),
                    ValidationError);
}

TEST_CASE("wrong-type blocks pair off; np entries count twice") {
    // rho non-self-dual: every block pairs off with its dual.
    GroupKind g;
    g.family = GroupFamily::SOevenQuasisplit;
    g.N = 24;
    const ArthurParameter p = ArthurParameter::build(
        g, {RhoLabel{"tau", 2, SelfDual::none}}, {block_from_ab(0, 2, 3)});
    CHECK(p.blocks.empty());
    REQUIRE(p.np_pairs.size() == 1);
    CHECK(p.total_dim() == 24); // 2 * (2 * 2 * 3)

    // A self-dual rho of the wrong parity also pairs off: symplectic rho with
    // a + b even gives a symplectic-type block inside an orthogonal dual.
    GroupKind g2;
    g2.family = GroupFamily::SOodd; // dual Sp(2n): symplectic type
    g2.N = 8;
    const ArthurParameter q = ArthurParameter::build(
        g2, {RhoLabel{"sigma", 2, SelfDual::symplectic}}, {block_from_ab(0, 2, 1)});
    // symplectic rho, a + b odd -> orthogonal type: pairs off inside SOodd.
    CHECK(q.blocks.empty());
    REQUIRE(q.np_pairs.size() == 1);
    CHECK(q.total_dim() == 8);
}

TEST_CASE("strict domination predicate") {
    CHECK(dominates(blk2(6, 4, '+'), blk2(2, 0, '+')));
    CHECK_FALSE(dominates(blk2(6, 4, '+'), blk2(2, 0, '-'))); // zeta differs
    CHECK_FALSE(dominates(blk2(8, 0, '+'), blk2(4, 2, '+'))); // B not above
    CHECK_FALSE(dominates(blk2(2, 0, '+'), blk2(6, 4, '+')));
}
