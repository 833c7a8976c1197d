#include "apacket/packet.hpp"

#include <algorithm>

#include "apacket/errors.hpp"

namespace apacket {

bool index_less(const PacketIndex& a, const PacketIndex& b) {
    if (a.l != b.l) return a.l < b.l;
    for (size_t i = 0; i < a.eta.size() && i < b.eta.size(); ++i)
        if (a.eta[i] != b.eta[i]) return b.eta[i].positive(); // '-' < '+'
    return a.eta.size() < b.eta.size();
}

std::int64_t l_max(const JordanBlock& blk) {
    return floor_half(blk.A - blk.B + HalfInt(1));
}

bool at_collapse(const JordanBlock& blk, std::int64_t l) {
    return (blk.A - blk.B + HalfInt(1)).twice() == 4 * l; // l = (A - B + 1)/2
}

Sign epsilon_sign(HalfInt A, HalfInt B, std::int64_t l, Sign eta) {
    const HalfInt d = A - B + HalfInt(1);
    const Sign eta_part = sign_pow(eta, d);
    const std::int64_t exp = floor_half(d) + l;
    return (exp % 2 == 0) ? eta_part : eta_part.flipped();
}

void validate_index(const ArthurParameter& param, const PacketIndex& index) {
    APK_REQUIRE(index.l.size() == param.blocks.size() && index.eta.size() == param.blocks.size(),
                "index: one (l, eta) entry per indexed block is required");
    for (size_t i = 0; i < param.blocks.size(); ++i)
        APK_REQUIRE(index.l[i] >= 0 && index.l[i] <= l_max(param.blocks[i]),
                    "index: l out of range for block " + block_str(param, param.blocks[i]));
}

bool sign_condition(const ArthurParameter& param, const PacketIndex& index) {
    validate_index(param, index);
    Sign prod = Sign::plus();
    for (size_t i = 0; i < param.blocks.size(); ++i)
        prod = prod * epsilon_sign(param.blocks[i].A, param.blocks[i].B, index.l[i], index.eta[i]);
    return prod.positive();
}

PacketIndex canonical_index(const ArthurParameter& param, const PacketIndex& index) {
    validate_index(param, index);
    PacketIndex out = index;
    for (size_t i = 0; i < param.blocks.size(); ++i)
        if (at_collapse(param.blocks[i], out.l[i])) out.eta[i] = Sign::plus();
    return out;
}

bool is_special_case(const ArthurParameter& param, const BlockOrder& order) {
    if (!is_admissible_order(param, order)) return false;
    for (const auto& seq : order.seq_by_rho) {
        for (size_t i = 0; i < seq.size(); ++i) {
            const auto& blk = param.blocks[static_cast<size_t>(seq[i])];
            if (!blk.zeta.positive()) return false;
            if (i + 1 < seq.size()) {
                const auto& up = param.blocks[static_cast<size_t>(seq[i + 1])];
                if (up.A < blk.A || up.B < blk.B) return false;
            }
        }
    }
    return true;
}

// The adjacent-pair condition, evaluated for explicit eta readings.
static bool pair_condition(const JordanBlock& lo, std::int64_t l_lo, Sign eta_lo,
                           const JordanBlock& hi, std::int64_t l_hi, Sign eta_hi) {
    const HalfInt a_lo = lo.A - HalfInt(l_lo);
    const HalfInt b_hi = hi.B + HalfInt(l_hi);
    if (eta_hi == pow_minus_one(lo.A - lo.B) * eta_lo)
        return hi.A - HalfInt(l_hi) >= a_lo && b_hi >= lo.B + HalfInt(l_lo);
    return b_hi > a_lo;
}

bool nonvanishing_special(const ArthurParameter& param, const BlockOrder& order,
                          const PacketIndex& index) {
    APK_REQUIRE(is_special_case(param, order),
                "nonvanishing test requires all zeta = '+' and A, B nondecreasing per rho");
    validate_index(param, index);
    for (const auto& seq : order.seq_by_rho) {
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            const auto& lo = param.blocks[static_cast<size_t>(seq[i])];
            const auto& hi = param.blocks[static_cast<size_t>(seq[i + 1])];
            const std::int64_t l_lo = index.l[static_cast<size_t>(seq[i])];
            const std::int64_t l_hi = index.l[static_cast<size_t>(seq[i + 1])];
            // At a collapse point the constraint is eta-independent; trying
            // both readings keeps the quotient semantics explicit.
            std::vector<Sign> lo_etas{index.eta[static_cast<size_t>(seq[i])]};
            std::vector<Sign> hi_etas{index.eta[static_cast<size_t>(seq[i + 1])]};
            if (at_collapse(lo, l_lo)) lo_etas = {Sign::plus(), Sign::minus()};
            if (at_collapse(hi, l_hi)) hi_etas = {Sign::plus(), Sign::minus()};
            bool ok = false;
            for (Sign elo : lo_etas)
                for (Sign ehi : hi_etas)
                    ok = ok || pair_condition(lo, l_lo, elo, hi, l_hi, ehi);
            if (!ok) return false;
        }
    }
    return true;
}

std::vector<PacketIndex> enumerate_packet(const ArthurParameter& param, const BlockOrder& order) {
    APK_REQUIRE(is_special_case(param, order),
                "enumerate_packet requires all zeta = '+' and A, B nondecreasing per rho");
    const size_t n = param.blocks.size();
    std::vector<PacketIndex> out;
    PacketIndex cur;
    cur.l.assign(n, 0);
    cur.eta.assign(n, Sign::plus());

    // Depth-first over blocks (rho by rho along the order), pruning each
    // adjacent pair as soon as both members are chosen.
    std::vector<int> flat; // block ids in enumeration order
    std::vector<int> prev; // position in `flat` of the same-rho predecessor, -1 at rho start
    for (const auto& seq : order.seq_by_rho)
        for (size_t i = 0; i < seq.size(); ++i) {
            prev.push_back(i == 0 ? -1 : static_cast<int>(flat.size()) - 1);
            flat.push_back(seq[i]);
        }

    auto rec = [&](auto&& self, size_t pos) -> void {
        if (pos == flat.size()) {
            if (sign_condition(param, cur)) out.push_back(cur);
            return;
        }
        const int id = flat[pos];
        const auto& blk = param.blocks[static_cast<size_t>(id)];
        for (std::int64_t l = 0; l <= l_max(blk); ++l) {
            const bool collapse = at_collapse(blk, l);
            for (Sign eta : {Sign::plus(), Sign::minus()}) {
                if (collapse && !eta.positive()) continue; // canonical representative
                cur.l[static_cast<size_t>(id)] = l;
                cur.eta[static_cast<size_t>(id)] = eta;
                if (prev[pos] >= 0) {
                    const int lo_id = flat[static_cast<size_t>(prev[pos])];
                    const auto& lo = param.blocks[static_cast<size_t>(lo_id)];
                    const std::int64_t l_lo = cur.l[static_cast<size_t>(lo_id)];
                    std::vector<Sign> lo_etas{cur.eta[static_cast<size_t>(lo_id)]};
                    std::vector<Sign> hi_etas{eta};
                    if (at_collapse(lo, l_lo)) lo_etas = {Sign::plus(), Sign::minus()};
                    if (collapse) hi_etas = {Sign::plus(), Sign::minus()};
                    bool ok = false;
                    for (Sign elo : lo_etas)
                        for (Sign ehi : hi_etas)
                            ok = ok || pair_condition(lo, l_lo, elo, blk, l, ehi);
                    if (!ok) continue;
                }
                self(self, pos + 1);
            }
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), index_less);
    return out;
}

} // namespace apacket
