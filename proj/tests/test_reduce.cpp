#include <apacket/errors.hpp>
#include <apacket/packet.hpp>
#include <apacket/params.hpp>
#include <apacket/reduce.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace apacket;
using namespace apacket::testutil;

namespace {

Segment seg(std::int64_t twice_x, std::int64_t twice_y) {
    Segment s;
    s.rho = 0;
    s.x = HalfInt::from_twice(twice_x);
    s.y = HalfInt::from_twice(twice_y);
    return s;
}

std::vector<TemperedBlock> by_A(std::vector<TemperedBlock> v) {
    std::sort(v.begin(), v.end(), [](const TemperedBlock& a, const TemperedBlock& b) {
        return a.A < b.A;
    });
    return v;
}

} // namespace

TEST_CASE("push with no zeta = '-' blocks is the identity") {
    const ArthurParameter p = single_rho_ab({{3, 3}});
    const PushResult r = push_integral(p, canonical_order(p));
    CHECK(r.pushed.blocks == p.blocks);
    CHECK(r.speh.empty());
    // Identity on indices, one entry per packet element.
    REQUIRE(r.index_map.size() == 2);
    for (const auto& [src, dst] : r.index_map) CHECK(src == dst);
}

TEST_CASE("integral push eliminates a zeta = '-' block") {
    // {(3, 1, -), (5, 1, +)}: the '-' block becomes (2, 0, +) and leaves one
    // single-row matrix <-1, ..., -3>; the '+' block is untouched.
    const ArthurParameter p = single_rho({blk2(6, 2, '-'), blk2(10, 2, '+')});
    const PushResult r = push_integral(p, canonical_order(p));

    REQUIRE(r.pushed.blocks.size() == 2);
    CHECK(r.pushed.blocks[0] == blk2(4, 0, '+'));
    CHECK(r.pushed.blocks[1] == blk2(10, 2, '+'));

    REQUIRE(r.speh.size() == 1);
    CHECK(r.speh[0].origin == MatrixOrigin::push_integral);
    CHECK(r.speh[0].rows == std::vector<Segment>{seg(-2, 6)});

    // The map is the identity correspondence onto the pushed packet.
    const std::vector<PacketIndex> pk = enumerate_packet(r.pushed, canonical_order(r.pushed));
    CHECK(r.index_map.size() == pk.size());
    CHECK(pk.size() == 10);
    for (const auto& [src, dst] : r.index_map) CHECK(src == dst);
}

TEST_CASE("integral push rejects a '+' block below a '-' block's A") {
    // (A_1, B_1) = (5, 3) with zeta = '-' over (3, 1, +): the elimination
    // hypothesis fails and packets genuinely change size across it.
    const ArthurParameter p = single_rho({blk2(10, 6, '-'), blk2(6, 2, '+')});
    CHECK_THROWS_AS(push_integral(p, canonical_order(p)), ValidationError);
}

TEST_CASE("half-integral push produces one class per breakpoint") {
    // {(5/2, 3/2, -), (7/2, 3/2, +)}: two classes.
    const ArthurParameter p = single_rho({blk2(5, 3, '-'), blk2(7, 3, '+')});
    const auto classes = push_half_integral(p, canonical_order(p));
    REQUIRE(classes.size() == 2);

    CHECK(classes[0].cls == 0);
    REQUIRE(classes[0].pushed.blocks.size() == 2);
    CHECK(classes[0].pushed.blocks[0] == blk2(1, 1, '+'));
    CHECK(classes[0].pushed.blocks[1] == blk2(7, 3, '+'));
    CHECK(classes[0].constraints.empty());
    REQUIRE(classes[0].speh.size() == 1);
    CHECK(classes[0].speh[0].origin == MatrixOrigin::push_half_integral);
    CHECK(classes[0].speh[0].rows == std::vector<Segment>{seg(-3, 5), seg(-1, 3)});
    CHECK(classes[0].block_map == std::vector<int>{0, 1});

    CHECK(classes[1].cls == 1);
    REQUIRE(classes[1].pushed.blocks.size() == 2);
    CHECK(classes[1].pushed.blocks[0] == blk2(3, 1, '+'));
    CHECK(classes[1].pushed.blocks[1] == blk2(7, 3, '+'));
    REQUIRE(classes[1].constraints.size() == 1);
    CHECK(classes[1].constraints[0].block == 0);
    CHECK(classes[1].constraints[0].eta == Sign::minus());
    CHECK(classes[1].speh[0].rows == std::vector<Segment>{seg(-3, 5)});
}

TEST_CASE("half-integral push drops blocks that degenerate to b = 0") {
    // A = B = 1/2 with zeta = '-' (a = 1, b = 2): the non-breakpoint
    // replacement has A - B - 1/2 = -1/2, an empty block.
    const ArthurParameter p = single_rho({blk2(1, 1, '-')});
    const auto classes = push_half_integral(p, canonical_order(p));
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].pushed.blocks.empty());
    CHECK(classes[0].block_map == std::vector<int>{-1});
    REQUIRE(classes[1].pushed.blocks.size() == 1);
    CHECK(classes[1].pushed.blocks[0] == blk2(1, 1, '+'));

    // End to end the two classes still partition the packet (size 1 here).
    CHECK(resolve(p).elements.size() == 1);
}

TEST_CASE("change_sign re-seeds the bottom block") {
    // (3/2, 1/2, -), l = 0, eta = +: the block becomes (5/2, 1/2, +) and the
    // index is re-seeded to l* = 1, eta* = -.
    const ArthurParameter p = single_rho({blk2(3, 1, '-')});
    const BlockOrder ord = canonical_order(p);

    const ChangeSignResult up = change_sign(p, ord, idx({0}, "+"));
    REQUIRE(up.changed.blocks.size() == 1);
    CHECK(up.changed.blocks[0] == blk2(5, 1, '+'));
    CHECK(up.index == idx({1}, "-"));

    // eta = - keeps l and flips eta only.
    const ChangeSignResult flat = change_sign(p, ord, idx({0}, "-"));
    CHECK(flat.index == idx({0}, "+"));
}

TEST_CASE("change_sign lands on the collapse representative when it must") {
    // (1/2, 1/2, -), l = 0, eta = +: the image (l*, eta*) = (1, -) sits at the
    // collapse point of (3/2, 1/2, +) and is reported canonically as (1, +).
    const ArthurParameter p = single_rho({blk2(1, 1, '-')});
    const ChangeSignResult r = change_sign(p, canonical_order(p), idx({0}, "+"));
    CHECK(r.changed.blocks[0] == blk2(3, 1, '+'));
    CHECK(r.index == canonical_index(r.changed, idx({1}, "-")));
    CHECK(r.index == idx({1}, "+"));
}

TEST_CASE("special-case embedding: index rows and a single tempered block") {
    // (3, 1, +) with l = 1: one row <1, ..., -3>, residual (2, 2).
    const ArthurParameter p = single_rho({blk2(6, 2, '+')});
    const Resolution r = resolve_special(p, canonical_order(p), idx({1}, "+"));
    REQUIRE(r.speh.size() == 1);
    CHECK(r.speh[0].origin == MatrixOrigin::index_rows);
    CHECK(r.speh[0].rows == std::vector<Segment>{seg(2, 6)});
    CHECK(r.tempered == std::vector<TemperedBlock>{TemperedBlock{0, HalfInt(2), HalfInt(2), Sign::plus()}});
    CHECK(resolution_dim(p, r) == p.group.N);
}

TEST_CASE("special-case embedding: junction glue between overlapping residuals") {
    // (2, 0, +), (3, 1, +) with l = (0, 0), eta = (+, +): residuals [0, 2] and
    // [1, 3] overlap; t = 3/2, delta = 1/2; one junction row <1, ..., -2>;
    // tempered blocks (1, 0, +) and (3, 2, -).
    const ArthurParameter p = single_rho_ab({{3, 3}, {5, 3}});
    const Resolution r = resolve_special(p, canonical_order(p), idx({0, 0}, "++"));
    REQUIRE(r.speh.size() == 1);
    CHECK(r.speh[0].origin == MatrixOrigin::junction_rows);
    CHECK(r.speh[0].rows == std::vector<Segment>{seg(2, 4)});

    const auto temp = by_A(r.tempered);
    REQUIRE(temp.size() == 2);
    CHECK(temp[0] == TemperedBlock{0, HalfInt(1), HalfInt(0), Sign::plus()});
    CHECK(temp[1] == TemperedBlock{0, HalfInt(3), HalfInt(2), Sign::minus()});
    CHECK(resolution_dim(p, r) == 24);
}

TEST_CASE("paired-off part contributes one Speh matrix per pair") {
    // Non-self-dual rho with a = 2, b = 3: rows <(a-b)/2 + j, ..., -((a+b)/2 - 1 - j)>.
    GroupKind g;
    g.family = GroupFamily::SOevenQuasisplit;
    g.N = 24;
    const ArthurParameter p = ArthurParameter::build(
        g, {RhoLabel{"tau", 2, SelfDual::none}}, {block_from_ab(0, 2, 3)});

    const ResolveOutput out = resolve(p);
    REQUIRE(out.elements.size() == 1);
    const Resolution& r = out.elements[0].res;
    REQUIRE(r.speh.size() == 1);
    CHECK(r.speh[0].origin == MatrixOrigin::paired_off);
    CHECK(r.speh[0].rows ==
          std::vector<Segment>{seg(-1, 3), seg(1, 1), seg(3, -1)});
    CHECK(r.tempered.empty());
    CHECK(resolution_dim(p, r) == 24);
}

TEST_CASE("resolve runs the full pipeline and conserves dimension") {
    const ArthurParameter p = single_rho({blk2(6, 2, '-'), blk2(10, 2, '+')});
    const ResolveOutput out = resolve(p);
    CHECK(out.elements.size() == 10);
    for (const auto& el : out.elements) {
        CHECK_FALSE(el.cls.has_value()); // integral push: no classes
        CHECK(resolution_dim(p, el.res) == p.group.N);
    }

    const ArthurParameter h = single_rho({blk2(5, 3, '-'), blk2(7, 3, '+')});
    const ResolveOutput hout = resolve(h);
    for (const auto& el : hout.elements) {
        REQUIRE(el.cls.has_value());
        CHECK(resolution_dim(h, el.res) == h.group.N);
    }
}
