#include "apacket/reorder.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "apacket/errors.hpp"

namespace apacket {

namespace {

struct PairRef {
    const JordanBlock* contained; // S: the block whose interval sits inside
    const JordanBlock* container; // L: the block whose interval contains it
};

bool contains(const JordanBlock& outer, const JordanBlock& inner) {
    return outer.B <= inner.B && outer.A >= inner.A;
}

// The equal-zeta exchange relating the order with the container on top
// ("up" coordinates, unprimed) to the order with the container at the bottom
// ("down" coordinates, primed).  The contained block keeps its l; its eta
// picks up (-1)^(A_L - B_L).  The container's (l, eta) moves by one of three
// rules selected by the eta relation and, within the equal-relation branch,
// by the threshold l_L - l_S < (A_L - B_L)/2 - (A_S - B_S) + l_S.
struct UpCoords {
    std::int64_t l_s, l_l;
    Sign eta_s, eta_l;
};
using DownCoords = UpCoords; // same layout, primed meaning

std::optional<DownCoords> exchange_down(const PairRef& p, const UpCoords& up) {
    const HalfInt R = p.container->A - p.container->B;
    const std::int64_t u = (p.contained->A - p.contained->B).to_int() - 2 * up.l_s;
    const std::int64_t lmax_l = floor_half(R + HalfInt(1));
    DownCoords down;
    down.l_s = up.l_s;
    down.eta_s = pow_minus_one(R) * up.eta_s;
    const bool same_branch = (up.eta_l == pow_minus_one(p.contained->A - p.contained->B) * up.eta_s);
    if (!same_branch) {
        down.l_l = up.l_l - u - 1;
        down.eta_l = up.eta_s;
    } else if (2 * up.l_l < R.to_int() - 2 * u) {
        down.l_l = up.l_l + u + 1;
        down.eta_l = up.eta_s.flipped();
    } else {
        down.l_l = R.to_int() - u - up.l_l;
        down.eta_l = up.eta_s;
    }
    if (down.l_l < 0 || down.l_l > lmax_l) return std::nullopt;
    return down;
}

std::optional<UpCoords> exchange_up(const PairRef& p, const DownCoords& down) {
    const HalfInt R = p.container->A - p.container->B;
    const std::int64_t u = (p.contained->A - p.contained->B).to_int() - 2 * down.l_s;
    const std::int64_t lmax_l = floor_half(R + HalfInt(1));
    UpCoords up;
    up.l_s = down.l_s;
    up.eta_s = pow_minus_one(R) * down.eta_s;
    const Sign same_eta_l = pow_minus_one(p.contained->A - p.contained->B) * up.eta_s;
    if (down.eta_l != up.eta_s) {
        // Only the middle rule produces an unequal pair on the primed side; its
        // preimage must satisfy the rule's own threshold.
        const std::int64_t cand = down.l_l - u - 1;
        if (!(cand >= 0 && 2 * cand < R.to_int() - 2 * u)) return std::nullopt;
        up.l_l = cand;
        up.eta_l = same_eta_l;
        return up;
    }
    // First and third rules both give eta'_L = eta_S; try both preimages.
    const std::int64_t cand_a = down.l_l + u + 1;          // inverse of the first rule
    const std::int64_t cand_c = R.to_int() - u - down.l_l; // inverse of the third rule
    const bool a_ok = cand_a >= 0 && cand_a <= lmax_l;
    // The third rule only fires at or above the threshold.
    const bool c_ok = cand_c >= 0 && cand_c <= lmax_l && 2 * cand_c >= R.to_int() - 2 * u;
    if (a_ok && c_ok) {
        // Both survive only at the collapse point l_L = (A_L - B_L + 1)/2,
        // where the two candidates name the same equivalence class.
        APK_CHECK(cand_a == cand_c, "ambiguous exchange preimage away from a collapse point");
        up.l_l = cand_a;
        up.eta_l = Sign::plus(); // collapse point; canonical representative
        return up;
    }
    if (!(a_ok || c_ok)) return std::nullopt;
    up.l_l = a_ok ? cand_a : cand_c;
    up.eta_l = a_ok ? same_eta_l.flipped() : same_eta_l;
    return up;
}

// At a collapse point both eta readings label the same class; the exchange
// rules see the readings, so each admissible reading is tried.
std::vector<Sign> eta_readings(const JordanBlock& blk, std::int64_t l, Sign eta) {
    std::vector<Sign> v{eta};
    if (at_collapse(blk, l)) v.push_back(eta.flipped());
    return v;
}

} // namespace

SwapResult swap_adjacent(const ArthurParameter& param, const BlockOrder& order,
                         const PacketIndex& index, int rho, int pos) {
    APK_REQUIRE(is_admissible_order(param, order), "swap_adjacent: order is not admissible");
    APK_REQUIRE(rho >= 0 && static_cast<size_t>(rho) < order.seq_by_rho.size(),
                "swap_adjacent: no such rho");
    const auto& seq = order.seq_by_rho[static_cast<size_t>(rho)];
    APK_REQUIRE(pos >= 0 && static_cast<size_t>(pos) + 1 < seq.size(),
                "swap_adjacent: position is not an adjacent pair");
    validate_index(param, index);

    SwapResult res;
    res.order = order;
    auto& new_seq = res.order.seq_by_rho[static_cast<size_t>(rho)];
    std::swap(new_seq[static_cast<size_t>(pos)], new_seq[static_cast<size_t>(pos) + 1]);
    APK_REQUIRE(is_admissible_order(param, res.order),
                "swap_adjacent: swapped order is not admissible (one block dominates the other)");

    const int lo_id = seq[static_cast<size_t>(pos)];
    const int hi_id = seq[static_cast<size_t>(pos) + 1];
    const JordanBlock& lo = param.blocks[static_cast<size_t>(lo_id)];
    const JordanBlock& hi = param.blocks[static_cast<size_t>(hi_id)];

    PacketIndex idx = canonical_index(param, index);

    if (lo.zeta != hi.zeta) {
        // Opposite zeta: l is untouched; each eta picks up (-1)^(A-B+1) of the
        // block it moved past.
        idx.eta[static_cast<size_t>(hi_id)] =
            pow_minus_one(lo.A - lo.B + HalfInt(1)) * idx.eta[static_cast<size_t>(hi_id)];
        idx.eta[static_cast<size_t>(lo_id)] =
            pow_minus_one(hi.A - hi.B + HalfInt(1)) * idx.eta[static_cast<size_t>(lo_id)];
        res.index = canonical_index(param, idx);
        return res;
    }

    // Equal zeta: admissibility of both orders forces nesting.  The container
    // is moving down when it starts on top, up otherwise.
    const bool container_on_top = contains(hi, lo);
    APK_CHECK(container_on_top || contains(lo, hi),
              "admissible equal-zeta swap without nested intervals");
    const int s_id = container_on_top ? lo_id : hi_id;
    const int l_id = container_on_top ? hi_id : lo_id;
    const JordanBlock& blk_s = param.blocks[static_cast<size_t>(s_id)];
    const JordanBlock& blk_l = param.blocks[static_cast<size_t>(l_id)];
    const PairRef p{&blk_s, &blk_l};

    std::vector<PacketIndex> outcomes;
    for (const Sign es : eta_readings(blk_s, idx.l[static_cast<size_t>(s_id)],
                                      idx.eta[static_cast<size_t>(s_id)])) {
        for (const Sign el : eta_readings(blk_l, idx.l[static_cast<size_t>(l_id)],
                                          idx.eta[static_cast<size_t>(l_id)])) {
            const UpCoords src{idx.l[static_cast<size_t>(s_id)],
                               idx.l[static_cast<size_t>(l_id)], es, el};
            const std::optional<UpCoords> out =
                container_on_top ? exchange_down(p, src) : exchange_up(p, src);
            if (!out) continue;
            PacketIndex cand = idx;
            cand.l[static_cast<size_t>(s_id)] = out->l_s;
            cand.eta[static_cast<size_t>(s_id)] = out->eta_s;
            cand.l[static_cast<size_t>(l_id)] = out->l_l;
            cand.eta[static_cast<size_t>(l_id)] = out->eta_l;
            cand = canonical_index(param, cand);
            if (std::find(outcomes.begin(), outcomes.end(), cand) == outcomes.end())
                outcomes.push_back(std::move(cand));
        }
    }
    APK_REQUIRE(!outcomes.empty(),
                "index does not transport across this exchange (it vanishes for the other order)");
    APK_REQUIRE(outcomes.size() == 1,
                "index transport is ambiguous at this exchange (the index vanishes for the "
                "current order)");
    res.index = std::move(outcomes.front());
    return res;
}

PacketIndex reorder_path(const ArthurParameter& param, const BlockOrder& from,
                         const BlockOrder& to, const PacketIndex& index) {
    APK_REQUIRE(is_admissible_order(param, from), "reorder_path: source order is not admissible");
    APK_REQUIRE(is_admissible_order(param, to), "reorder_path: target order is not admissible");
    BlockOrder cur = from;
    PacketIndex idx = canonical_index(param, index);
    for (size_t rho = 0; rho < cur.seq_by_rho.size(); ++rho) {
        const auto& target = to.seq_by_rho[rho];
        APK_REQUIRE(target.size() == cur.seq_by_rho[rho].size(),
                    "reorder_path: orders list different blocks");
        for (size_t i = 0; i < target.size(); ++i) {
            auto& seq = cur.seq_by_rho[rho];
            const auto it = std::find(seq.begin() + static_cast<std::ptrdiff_t>(i), seq.end(),
                                      target[i]);
            APK_REQUIRE(it != seq.end(), "reorder_path: orders list different blocks");
            // Bubble the block down to position i; every intermediate order is
            // admissible because the blocks it passes are order-incomparable
            // with it (both endpoints are linear extensions).
            for (auto j = static_cast<size_t>(it - seq.begin()); j > i; --j) {
                SwapResult s = swap_adjacent(param, cur, idx, static_cast<int>(rho),
                                             static_cast<int>(j) - 1);
                cur = std::move(s.order);
                idx = std::move(s.index);
            }
        }
    }
    return idx;
}

} // namespace apacket
