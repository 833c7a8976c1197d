#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apacket/langlands.hpp"
#include "apacket/packet.hpp"
#include "apacket/params.hpp"

namespace apacket {

// Where a Speh matrix came from, for auditable output.
enum class MatrixOrigin { push_integral, push_half_integral, index_rows, junction_rows, paired_off };

std::string origin_str(MatrixOrigin o);

// A matrix of segments (one per row); the representation it contributes is the
// corresponding product of Speh factors, together with its dual.
struct SpehMatrix {
    int rho = 0;
    MatrixOrigin origin = MatrixOrigin::index_rows;
    std::vector<Segment> rows;

    friend bool operator==(const SpehMatrix&, const SpehMatrix&) = default;
};

// Everything the embedding of one packet element needs besides the group: the
// Speh matrices (each implicitly paired with its dual) and the tempered blocks.
struct Resolution {
    std::vector<SpehMatrix> speh;
    std::vector<TemperedBlock> tempered;
};

// Result of eliminating zeta = '-' blocks with integral A, B.  Blocks stay
// aligned: pushed.blocks[i] replaces param.blocks[i], and packet indices carry
// over unchanged; index_map materializes that correspondence (source
// coordinates on the left, coordinates on `pushed` on the right), one entry
// per element of the pushed parameter's packet.
struct PushResult {
    ArthurParameter pushed;
    std::vector<SpehMatrix> speh;
    std::vector<std::pair<PacketIndex, PacketIndex>> index_map;
};

// pre: all indexed blocks have integral A, B; per rho the order must list the
// zeta = '-' blocks first with A ascending and B nonincreasing, then the
// zeta = '+' blocks with A ascending and B nondecreasing; in particular every
// zeta = '+' block needs A at least every zeta = '-' block's A.  A violation of
// that last constraint is rejected: packets genuinely change size across such a
// push (the verify module carries the witness).
// post: each zeta = '-' block (A, B, -) becomes (A - B, 0, +) plus a matrix
// with rows <-(B - j), ..., -(A - j)>, j = 0 .. B-1.
PushResult push_integral(const ArthurParameter& param, const BlockOrder& order);

// One class of the half-integral elimination: the pushed parameter, its
// matrices, and the constraints cutting out the class image inside its packet
// (l = 0 and a forced eta on an initial stretch of each rho's order).
struct EtaConstraint {
    int block = 0; // block id; the constraint is l = 0 and eta as given
    Sign eta = Sign::plus();
};

struct HalfIntegralClassification {
    std::int64_t cls = 0;                  // flattened class index
    std::vector<std::int64_t> per_rho_cls; // by rho id (0 where no classes arise)
    ArthurParameter pushed;
    std::vector<int> block_map; // source block id -> pushed id, or -1 when the
                                // block degenerates to b = 0 and disappears
    std::vector<SpehMatrix> speh;
    std::vector<EtaConstraint> constraints; // in pushed ids
};

// pre: all indexed blocks have half-odd A, B; order shape as for push_integral.
// Per rho with m zeta = '-' blocks, the class breakpoints are the positions
// 0 = s_0 < s_1 < ... < s_r = m where A - B changes between consecutive '-'
// blocks; class k turns block i <= m into (A_i - B_i - 1/2, 1/2, +), except the
// breakpoint block s_k which becomes (A - B + 1/2, 1/2, +), and constrains
// every block at position i <= s_k to l = 0, eta = -prod_{j<i} (-1)^(A_j-B_j+1).
// Several rhos with classes combine by cartesian product (mixed-radix `cls`).
std::vector<HalfIntegralClassification> push_half_integral(const ArthurParameter& param,
                                                           const BlockOrder& order);

// pre: per rho, blocks 1..m at the bottom of the order share A, have B = 1/2
// and a common zeta opposite to every other block's, and the index satisfies
// the chain conditions l_{i+1} = l_i, eta_{i+1} = (-1)^(A_i - 1/2) eta_i for
// i < m.  post: those blocks become (A + 1, 1/2, -zeta) and the index is
// re-seeded (eta*_1 = -eta_1; l*_1 = l_1 + 1 exactly when eta_1 = +1, with
// eta_1 read as -1 at its collapse point) and chained with the new signs.
struct ChangeSignResult {
    ArthurParameter changed;
    PacketIndex index;
};
ChangeSignResult change_sign(const ArthurParameter& param, const BlockOrder& order,
                             const PacketIndex& index);

// The special-case embedding: consumes a nonvanishing index for a parameter in
// special-case shape and produces its Speh matrices and tempered blocks.  The
// sign condition is not required here: for an index failing it, the assembled
// epsilon values multiply to -1 instead of +1 (packet members always give +1).
//   - per block, l rows <B + j, ..., -(A - j)>, j = 0 .. l-1;
//   - chains of overlapping residual intervals [B + l, A - l] are glued with
//     junction matrices running from <B_{j+1} + l_{j+1}, ..., -(A_j - l_j)>
//     down to <t - delta, ..., -(t + delta)>, where t is the midpoint of the
//     two residual endpoints and delta is 1 when t - A_j is integral, else 1/2;
//   - each chain contributes tempered blocks whose C-ranges tile it.
Resolution resolve_special(const ArthurParameter& param, const BlockOrder& order,
                           const PacketIndex& index);

// One fully resolved packet element.
struct ResolvedElement {
    std::optional<std::int64_t> cls; // present when half-integral classes arose
    ArthurParameter target;          // the parameter the index lives on
    PacketIndex index;               // canonical, on target's blocks
    Resolution res;                  // includes push and paired-off matrices
};

struct ResolveOutput {
    ArthurParameter param; // validated input
    BlockOrder order;      // canonical order used throughout
    std::vector<ResolvedElement> elements;
};

// The full pipeline: paired-off part to matrices, per-rho elimination of
// zeta = '-' blocks (integral push or half-integral classes), enumeration of
// the resulting packet, and the special-case embedding for every element.
// The canonical order must satisfy the elimination shape and the resulting
// parameters must land in special-case shape; anything else is rejected with
// a diagnostic.  Families with one b per rho always qualify.
// An explicit order may be supplied instead of the canonical one; it must be
// an admissible order putting the parameter itself in special-case shape
// (so it is only available when no elimination is needed).
ResolveOutput resolve(const ArthurParameter& param,
                      const std::optional<BlockOrder>& as_given = std::nullopt);

// Assembles (phi, epsilon) from a resolution: every matrix row contributes its
// piece and the dual piece; tempered blocks contribute the carriers and the
// epsilon values.  Checks self-duality, total dimension = N, and that no
// carrier collides with a twist-0 row.
LanglandsParameter assemble(const ArthurParameter& source, const Resolution& res);

// Product of the epsilon values weighted by piece multiplicity; +1 for every
// packet member, -1 for an index that fails the sign condition.
Sign epsilon_product(const LanglandsParameter& phi);

// Dimension contributed by a resolution (matrices counted twice).
std::int64_t resolution_dim(const ArthurParameter& source, const Resolution& res);

} // namespace apacket
