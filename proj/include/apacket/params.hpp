#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apacket/half_int.hpp"

namespace apacket {

// Self-duality type of a supercuspidal label.  The label itself is opaque: only
// its name, the dimension of the corresponding representation of the Weil
// group, and its duality class enter the combinatorics.
enum class SelfDual { orthogonal, symplectic, none };

struct RhoLabel {
    std::string name;
    std::int64_t dim = 1;
    SelfDual duality = SelfDual::orthogonal;
};

// One Jordan block rho (x) nu_a (x) nu_b in coordinates (A, B, zeta):
//   A = (a+b)/2 - 1,  B = |a-b|/2,  zeta = sign(a - b)  (zeta is a free choice
// when a = b; the library defaults it to '+' and lets callers override).
// Invariants: A >= B >= 0 and A - B integral.
struct JordanBlock {
    int rho = 0; // index into the owning parameter's rho table
    HalfInt A;
    HalfInt B;
    Sign zeta = Sign::plus();

    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

enum class GroupFamily { Sp, SOodd, SOevenQuasisplit };

// The group is recorded through the standard representation of its dual:
//   Sp(2n)   -> SO(2n+1),  N = 2n+1 (odd),  orthogonal dual
//   SO(2n+1) -> Sp(2n),    N = 2n   (even), symplectic dual
//   SO(2n)   -> SO(2n),    N = 2n   (even), orthogonal dual (quasisplit form)
struct GroupKind {
    GroupFamily family = GroupFamily::Sp;
    std::int64_t N = 1;

    SelfDual dual_type() const {
        return family == GroupFamily::SOodd ? SelfDual::symplectic : SelfDual::orthogonal;
    }
    bool sigma0_nontrivial() const { return family == GroupFamily::SOevenQuasisplit; }

    void validate() const;
    std::string str() const;
};

// Duality type of the block rho (x) nu_a (x) nu_b: nu_c is symplectic iff c is
// even, so the block is orthogonal iff type(rho) * (-1)^(a+b) = +1 (with
// orthogonal = +1, symplectic = -1).  Blocks with non-self-dual rho have no type.
std::optional<SelfDual> block_type(const RhoLabel& rho, std::int64_t a, std::int64_t b);

// A non-endoscopic parameter, split into the part whose blocks match the dual
// group's duality type (`blocks`, the part that carries packet indices) and the
// complement (`np_pairs`), which pairs off under duality and is stored once per
// pair; each np entry counts twice toward the total dimension.
struct ArthurParameter {
    GroupKind group;
    std::vector<RhoLabel> rhos;
    std::vector<JordanBlock> blocks;
    std::vector<JordanBlock> np_pairs;

    int rho_id(std::string_view name) const;
    const RhoLabel& rho_of(const JordanBlock& b) const { return rhos[static_cast<size_t>(b.rho)]; }

    // Splits `all_blocks` into matching/np by duality type and validates all
    // invariants (N parity and total, per-rho integrality classes).
    static ArthurParameter build(GroupKind group, std::vector<RhoLabel> rhos,
                                 const std::vector<JordanBlock>& all_blocks);

    void validate() const;
    std::int64_t total_dim() const; // sum d_rho * a * b, np pairs counted twice
};

// An admissible order, recorded per rho as the list of block ids (indices into
// param.blocks) from lowest to highest.
struct BlockOrder {
    std::vector<std::vector<int>> seq_by_rho; // indexed by rho id; empty when rho has no blocks

    friend bool operator==(const BlockOrder&, const BlockOrder&) = default;
};

// (a, b) -> (A, B, zeta).  `tie` fixes zeta when a = b (defaults to '+').
JordanBlock block_from_ab(int rho, std::int64_t a, std::int64_t b,
                          std::optional<Sign> tie = std::nullopt);

// (A, B, zeta) -> (a, b); for B = 0 this returns (a, a).
std::pair<std::int64_t, std::int64_t> block_to_ab(const JordanBlock& blk);

// An order is admissible when, whenever A > A' and B > B' with equal zeta (same
// rho), the dominating block sits higher.
bool is_admissible_order(const ArthurParameter& param, const BlockOrder& order);

// Per rho: sort by A ascending, tie-break B ascending, tie-break zeta = '-'
// first.  Signals (ValidationError) if the sorted order fails admissibility;
// nothing is silently reordered.
BlockOrder canonical_order(const ArthurParameter& param);

// Whether `blk` dominates the set J from far away relative to the blocks of its
// rho: B > 2^|J| * (sum_{J} A' + |J| * sum_{context} (A' - B' + 1)), evaluated
// exactly.
bool is_far_away(const JordanBlock& blk, std::span<const JordanBlock> J,
                 std::span<const JordanBlock> context);

// Shift block i by T_i >= 0 (integral): (A, B) -> (A + T, B + T), zeta fixed.
// `shifts` is indexed by block id.  The given order must remain admissible for
// the shifted parameter; otherwise a ValidationError is raised.
ArthurParameter dominate_shift(const ArthurParameter& param, const BlockOrder& order,
                               std::span<const HalfInt> shifts);

// Helpers shared by the rest of the library.

// Ids of the blocks of one rho, in block-array order.
std::vector<int> blocks_of_rho(const ArthurParameter& param, int rho);

// Strict domination partial order underlying admissibility.
bool dominates(const JordanBlock& hi, const JordanBlock& lo);

std::string block_str(const ArthurParameter& param, const JordanBlock& blk);

} // namespace apacket
