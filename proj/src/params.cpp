#include "apacket/params.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "apacket/errors.hpp"

namespace apacket {

void GroupKind::validate() const {
    // N = 0 is the degenerate rank-zero group; it arises when an elimination
    // step empties the parameter and carries a one-element packet.
    APK_REQUIRE(N >= 0, "group: N must be nonnegative");
    switch (family) {
    case GroupFamily::Sp:
        APK_REQUIRE(N % 2 == 1,
                    "group Sp: N must be odd (dual of Sp(2n) is SO(2n+1)); "
                    "an even total usually means the group is SOeven");
        break;
    case GroupFamily::SOodd:
        APK_REQUIRE(N % 2 == 0, "group SOodd: N must be even (dual of SO(2n+1) is Sp(2n))");
        break;
    case GroupFamily::SOevenQuasisplit:
        APK_REQUIRE(N % 2 == 0, "group SOeven: N must be even");
        break;
    }
}

std::string GroupKind::str() const {
    switch (family) {
    case GroupFamily::Sp: return "Sp N=" + std::to_string(N);
    case GroupFamily::SOodd: return "SOodd N=" + std::to_string(N);
    case GroupFamily::SOevenQuasisplit: return "SOeven N=" + std::to_string(N);
    }
    return "?";
}

std::optional<SelfDual> block_type(const RhoLabel& rho, std::int64_t a, std::int64_t b) {
    if (rho.duality == SelfDual::none) return std::nullopt;
    const int t = (rho.duality == SelfDual::orthogonal) ? 1 : -1;
    const int nu = ((a + b) % 2 == 0) ? 1 : -1; // (-1)^(a+b)
    return (t * nu > 0) ? SelfDual::orthogonal : SelfDual::symplectic;
}

int ArthurParameter::rho_id(std::string_view name) const {
    for (size_t i = 0; i < rhos.size(); ++i)
        if (rhos[i].name == name) return static_cast<int>(i);
    throw ValidationError("unknown rho label '" + std::string(name) + "'");
}

JordanBlock block_from_ab(int rho, std::int64_t a, std::int64_t b, std::optional<Sign> tie) {
    APK_REQUIRE(a >= 1 && b >= 1, "block: a and b must be positive");
    JordanBlock blk;
    blk.rho = rho;
    blk.A = HalfInt::from_twice(a + b - 2); // (a+b)/2 - 1
    blk.B = HalfInt::from_twice(std::llabs(a - b));
    if (a > b)
        blk.zeta = Sign::plus();
    else if (a < b)
        blk.zeta = Sign::minus();
    else
        blk.zeta = tie.value_or(Sign::plus());
    return blk;
}

std::pair<std::int64_t, std::int64_t> block_to_ab(const JordanBlock& blk) {
    const HalfInt sum = blk.A + blk.B + HalfInt(1);  // max(a, b)
    const HalfInt diff = blk.A - blk.B + HalfInt(1); // min(a, b)
    if (blk.zeta.positive()) return {sum.to_int(), diff.to_int()};
    return {diff.to_int(), sum.to_int()};
}

bool dominates(const JordanBlock& hi, const JordanBlock& lo) {
    return hi.rho == lo.rho && hi.zeta == lo.zeta && hi.A > lo.A && hi.B > lo.B;
}

std::vector<int> blocks_of_rho(const ArthurParameter& param, int rho) {
    std::vector<int> ids;
    for (size_t i = 0; i < param.blocks.size(); ++i)
        if (param.blocks[i].rho == rho) ids.push_back(static_cast<int>(i));
    return ids;
}

std::string block_str(const ArthurParameter& param, const JordanBlock& blk) {
    return "(" + param.rhos[static_cast<size_t>(blk.rho)].name + ", A=" + blk.A.str() +
           ", B=" + blk.B.str() + ", " + std::string(1, blk.zeta.ch()) + ")";
}

static void validate_block(const ArthurParameter& param, const JordanBlock& blk) {
    APK_REQUIRE(blk.rho >= 0 && static_cast<size_t>(blk.rho) < param.rhos.size(),
                "block refers to an unknown rho");
    APK_REQUIRE(blk.B >= HalfInt(0), "block: B must be >= 0");
    APK_REQUIRE(blk.A >= blk.B, "block: A must be >= B");
    APK_REQUIRE((blk.A - blk.B).is_integral(), "block: A - B must be integral");
}

std::int64_t ArthurParameter::total_dim() const {
    std::int64_t total = 0;
    for (const auto& blk : blocks) {
        auto [a, b] = block_to_ab(blk);
        total += rho_of(blk).dim * a * b;
    }
    for (const auto& blk : np_pairs) {
        auto [a, b] = block_to_ab(blk);
        total += 2 * rho_of(blk).dim * a * b;
    }
    return total;
}

void ArthurParameter::validate() const {
    group.validate();
    std::set<std::string> names;
    for (const auto& r : rhos) {
        APK_REQUIRE(!r.name.empty(), "rho: empty name");
        APK_REQUIRE(r.dim >= 1, "rho '" + r.name + "': dim must be positive");
        APK_REQUIRE(names.insert(r.name).second, "duplicate rho label '" + r.name + "'");
    }
    for (const auto& blk : blocks) {
        validate_block(*this, blk);
        auto [a, b] = block_to_ab(blk);
        const auto ty = block_type(rho_of(blk), a, b);
        APK_REQUIRE(ty && *ty == group.dual_type(),
                    "block " + block_str(*this, blk) +
                        " does not match the dual group's duality type; it belongs to the "
                        "paired-off part");
    }
    for (const auto& blk : np_pairs) {
        validate_block(*this, blk);
        auto [a, b] = block_to_ab(blk);
        const auto ty = block_type(rho_of(blk), a, b);
        APK_REQUIRE(!ty || *ty != group.dual_type(),
                    "np pair " + block_str(*this, blk) + " matches the dual group's type; "
                                                         "it belongs to the indexed part");
    }
    // Blocks of one rho in the indexed part share an integrality class; given
    // the parity matching above this is automatic, but it is cheap to assert.
    std::map<int, bool> integral_by_rho;
    for (const auto& blk : blocks) {
        auto [it, fresh] = integral_by_rho.emplace(blk.rho, blk.A.is_integral());
        (void)fresh;
        APK_REQUIRE(it->second == blk.A.is_integral(),
                    "blocks of rho '" + rho_of(blk).name + "' mix integral and half-integral A, B");
    }
    APK_REQUIRE(total_dim() == group.N,
                "parameter dimension " + std::to_string(total_dim()) +
                    " does not match N = " + std::to_string(group.N));
}

ArthurParameter ArthurParameter::build(GroupKind group, std::vector<RhoLabel> rhos,
                                       const std::vector<JordanBlock>& all_blocks) {
    ArthurParameter param;
    param.group = group;
    param.rhos = std::move(rhos);
    for (const auto& blk : all_blocks) {
        validate_block(param, blk);
        auto [a, b] = block_to_ab(blk);
        const auto ty = block_type(param.rho_of(blk), a, b);
        if (ty && *ty == group.dual_type())
            param.blocks.push_back(blk);
        else
            param.np_pairs.push_back(blk);
    }
    param.validate();
    return param;
}

bool is_admissible_order(const ArthurParameter& param, const BlockOrder& order) {
    if (order.seq_by_rho.size() != param.rhos.size()) return false;
    std::vector<char> seen(param.blocks.size(), 0);
    for (size_t rho = 0; rho < order.seq_by_rho.size(); ++rho) {
        const auto& seq = order.seq_by_rho[rho];
        for (size_t i = 0; i < seq.size(); ++i) {
            const int id = seq[i];
            if (id < 0 || static_cast<size_t>(id) >= param.blocks.size()) return false;
            if (param.blocks[static_cast<size_t>(id)].rho != static_cast<int>(rho)) return false;
            if (seen[static_cast<size_t>(id)]++) return false;
            // Any block dominated by seq[i] must already have appeared.
            for (size_t j = i + 1; j < seq.size(); ++j)
                if (dominates(param.blocks[static_cast<size_t>(id)],
                              param.blocks[static_cast<size_t>(seq[j])]))
                    return false;
        }
    }
    for (char s : seen)
        if (!s) return false;
    return true;
}

BlockOrder canonical_order(const ArthurParameter& param) {
    BlockOrder order;
    order.seq_by_rho.resize(param.rhos.size());
    for (size_t rho = 0; rho < param.rhos.size(); ++rho) {
        auto ids = blocks_of_rho(param, static_cast<int>(rho));
        std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) {
            const auto& bx = param.blocks[static_cast<size_t>(x)];
            const auto& by = param.blocks[static_cast<size_t>(y)];
            if (bx.A != by.A) return bx.A < by.A;
            if (bx.B != by.B) return bx.B < by.B;
            return !bx.zeta.positive() && by.zeta.positive(); // '-' first
        });
        order.seq_by_rho[rho] = std::move(ids);
    }
    APK_REQUIRE(is_admissible_order(param, order),
                "canonical sort produced an inadmissible order for this block multiset");
    return order;
}

bool is_far_away(const JordanBlock& blk, std::span<const JordanBlock> J,
                 std::span<const JordanBlock> context) {
    // bound = 2^|J| * (sum_J A' + |J| * sum_context (A' - B' + 1)), exact.
    HalfInt sum_a(0);
    for (const auto& j : J) sum_a += j.A;
    HalfInt sum_len(0);
    for (const auto& c : context) sum_len += c.A - c.B + HalfInt(1);
    const std::int64_t card = static_cast<std::int64_t>(J.size());
    APK_REQUIRE(card < 62, "far-away bound overflows for |J| >= 62");
    const std::int64_t pow2 = std::int64_t(1) << card;
    const HalfInt bound = pow2 * (sum_a + card * sum_len);
    return blk.B > bound;
}

ArthurParameter dominate_shift(const ArthurParameter& param, const BlockOrder& order,
                               std::span<const HalfInt> shifts) {
    APK_REQUIRE(shifts.size() == param.blocks.size(),
                "dominate_shift: one shift per indexed block is required");
    APK_REQUIRE(is_admissible_order(param, order), "dominate_shift: order is not admissible");
    ArthurParameter shifted = param;
    for (size_t i = 0; i < shifts.size(); ++i) {
        APK_REQUIRE(shifts[i].is_integral() && shifts[i] >= HalfInt(0),
                    "dominate_shift: shifts must be integral and >= 0");
        shifted.blocks[i].A += shifts[i];
        shifted.blocks[i].B += shifts[i];
    }
    // N changes with the blocks; keep the group family but recompute N so the
    // shifted parameter is self-consistent.
    shifted.group.N = shifted.total_dim();
    shifted.group.validate();
    APK_REQUIRE(is_admissible_order(shifted, order),
                "dominate_shift: the given order is not admissible after shifting");
    return shifted;
}

} // namespace apacket
