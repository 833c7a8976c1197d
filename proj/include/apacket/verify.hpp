#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "apacket/packet.hpp"
#include "apacket/params.hpp"

namespace apacket {

// Independent oracles and cross-checks.  Each suite re-derives its expected
// values from first principles (raw loops, closed forms, explicit transport)
// rather than reusing the library's pruned enumeration, so a bug cannot
// cancel itself out.

struct VerifyFailure {
    std::string detail; // parameter, index and expected-vs-got, rendered
};

struct VerifyReport {
    std::string suite;
    std::int64_t cases = 0;
    std::string note; // e.g. "hypothesis not met; skipped"
    std::vector<VerifyFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Counts the packet of a special-case parameter (all zeta = '+', A and B
// nondecreasing per rho) by raw nested loops over every (l, eta) tuple,
// checking the sign and adjacency conditions literally and deduplicating the
// collapse classes through a set.  Shares nothing with enumerate_packet
// beyond the parameter types.
std::int64_t brute_force_packet_size(const ArthurParameter& param);

// Fault-injection hook for the bijection check: mutates the materialized
// index correspondence before it is verified.
using IndexMapTamper = std::function<void(std::vector<std::pair<PacketIndex, PacketIndex>>&)>;

// Cardinality and distinctness checks across the elimination step.
//   - integral blocks: the pushed parameter's packet must be in bijection with
//     the recorded index correspondence, and the resolved elements must carry
//     pairwise distinct (phi, epsilon);
//   - half-integral blocks: the class images must partition the resolved
//     packet and the union must carry pairwise distinct (phi, epsilon);
//   - mixed integrality: distinctness only.
VerifyReport check_bijections(const ArthurParameter& param, const IndexMapTamper& tamper = {});

// The two-block configuration (A1, B1, zeta='-'), (A2, B2, zeta='+') with
// A1 > B1 + B2 > A2 > A1 - B1 witnesses that a '-' block may not be pushed
// past a '+' block with smaller A: the naive target's packet is strictly
// smaller than the packet obtained by pushing the '+' block instead (whose
// size follows from the disjoint-interval count).  The check enumerates both
// sides and also confirms the library refuses the naive push.  When the
// inequality chain fails the report is skipped with a note.
VerifyReport check_counterexample(std::int64_t A1 = 5, std::int64_t B1 = 3, std::int64_t A2 = 3,
                                  std::int64_t B2 = 1);

// Suite names accepted by run_suite, in run_all order.
const std::vector<std::string>& verify_suite_names();

// Runs one suite.  `seed` feeds the randomized suites; `cases <= 0` selects
// each suite's default volume (exhaustive suites ignore the case count).
VerifyReport run_suite(const std::string& name, std::uint64_t seed, std::int64_t cases);

std::vector<VerifyReport> run_all(std::uint64_t seed, std::int64_t cases);

// Fixed-width, deterministic pass/fail rendering with failure details.
std::string render_reports(const std::vector<VerifyReport>& reports);

} // namespace apacket
