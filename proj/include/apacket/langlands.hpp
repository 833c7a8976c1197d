#pragma once

#include <cstdint>
#include <vector>

#include "apacket/params.hpp"

namespace apacket {

// A segment <x, x-1, ..., -y> of exponents for one rho.  Its length x + y + 1
// must be a positive whole number (x and y share an integrality class).
struct Segment {
    int rho = 0;
    HalfInt x;
    HalfInt y;

    friend bool operator==(const Segment&, const Segment&) = default;
};

// A block of the tempered support: contributes rho (x) nu_{2C+1} for
// C = B, B+1, ..., A with epsilon(rho, 2C+1) = (-1)^(C-B) eta.  A block with
// A = B - 1 is empty and contributes nothing; otherwise A >= B >= 0.
struct TemperedBlock {
    int rho = 0;
    HalfInt A;
    HalfInt B;
    Sign eta = Sign::plus();

    bool empty() const { return A == B - HalfInt(1); }

    friend bool operator==(const TemperedBlock&, const TemperedBlock&) = default;
};

// One summand rho |.|^twist (x) nu_dim of the Langlands parameter.
struct LPiece {
    int rho = 0;
    HalfInt twist;
    std::int64_t dim = 1;
    std::int64_t mult = 1;

    friend bool operator==(const LPiece&, const LPiece&) = default;
};

struct EpsilonEntry {
    int rho = 0;
    std::int64_t dim = 1;
    Sign sign = Sign::plus();

    friend bool operator==(const EpsilonEntry&, const EpsilonEntry&) = default;
};

// The complete datum (phi, epsilon): a self-dual multiset of pieces plus the
// character values on the tempered carriers.
struct LanglandsParameter {
    std::vector<LPiece> pieces;          // sorted by (rho, twist, dim), merged
    std::vector<EpsilonEntry> epsilon;   // sorted by (rho, dim)

    friend bool operator==(const LanglandsParameter&, const LanglandsParameter&) = default;
};

// <x, ..., -y>  ->  rho |.|^((x-y)/2) (x) nu_{x+y+1}.
LPiece segment_to_piece(const Segment& seg);

// Expansion of a tempered block into carrier pieces with their epsilon values.
std::vector<std::pair<LPiece, Sign>> tempered_to_pieces(const TemperedBlock& blk);

std::int64_t segment_length(const Segment& seg);

} // namespace apacket
