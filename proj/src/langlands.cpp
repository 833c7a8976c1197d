#include "apacket/langlands.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "apacket/errors.hpp"
#include "apacket/reduce.hpp"

namespace apacket {

std::int64_t segment_length(const Segment& seg) {
    const HalfInt len = seg.x + seg.y + HalfInt(1);
    APK_CHECK(len.is_integral() && len.to_int() >= 1, "segment <x, ..., -y> must have x + y >= 0");
    return len.to_int();
}

LPiece segment_to_piece(const Segment& seg) {
    LPiece p;
    p.rho = seg.rho;
    p.twist = midpoint(seg.x, -seg.y);
    p.dim = segment_length(seg);
    p.mult = 1;
    return p;
}

std::vector<std::pair<LPiece, Sign>> tempered_to_pieces(const TemperedBlock& tb) {
    std::vector<std::pair<LPiece, Sign>> out;
    if (tb.empty()) return out;
    for (HalfInt C = tb.B; C <= tb.A; C += HalfInt(1)) {
        LPiece p;
        p.rho = tb.rho;
        p.twist = HalfInt(0);
        p.dim = (C + C + HalfInt(1)).to_int();
        p.mult = 1;
        out.emplace_back(p, pow_minus_one(C - tb.B) * tb.eta);
    }
    return out;
}

LanglandsParameter assemble(const ArthurParameter& source, const Resolution& res) {
    struct Slot {
        std::int64_t mult = 0;
        bool carrier = false;
        Sign sign = Sign::plus();
    };
    // Keyed by (rho, twist twice-value, dim).
    std::map<std::tuple<int, std::int64_t, std::int64_t>, Slot> slots;

    auto add_row = [&](int rho, HalfInt twist, std::int64_t dim) {
        Slot& s = slots[{rho, twist.twice(), dim}];
        APK_CHECK(!s.carrier || twist != HalfInt(0),
                  "a twisted row landed on a sign-carrying factor");
        s.mult += 1;
    };

    for (const auto& mat : res.speh) {
        for (const auto& row : mat.rows) {
            const LPiece p = segment_to_piece(row);
            // Each row contributes the factor and its dual partner.
            add_row(p.rho, p.twist, p.dim);
            add_row(p.rho, -p.twist, p.dim);
        }
    }
    for (const auto& tb : res.tempered) {
        for (const auto& [p, sign] : tempered_to_pieces(tb)) {
            Slot& s = slots[{p.rho, 0, p.dim}];
            if (s.carrier) {
                // Adjacent tempered blocks may share one endpoint; the signs
                // must agree there and the factor picks up multiplicity.
                APK_CHECK(s.sign == sign, "sign mismatch on a shared tempered factor");
                s.mult += 1;
                continue;
            }
            APK_CHECK(s.mult == 0, "a sign-carrying factor landed on a twisted-row factor");
            s.mult = 1;
            s.carrier = true;
            s.sign = sign;
        }
    }

    LanglandsParameter phi;
    std::int64_t total = 0;
    for (const auto& [key, s] : slots) {
        const auto& [rho, twist2, dim] = key;
        phi.pieces.push_back({rho, HalfInt::from_twice(twist2), dim, s.mult});
        total += s.mult * source.rhos[static_cast<size_t>(rho)].dim * dim;
        if (s.carrier) phi.epsilon.push_back({rho, dim, s.sign});
        // Self-duality: the reflected factor must appear with equal multiplicity.
        const auto it = slots.find({rho, -twist2, dim});
        APK_CHECK(it != slots.end() && it->second.mult == s.mult,
                  "assembled parameter is not self-dual");
    }
    APK_CHECK(total == source.group.N, "assembled parameter has the wrong dimension");

    std::sort(phi.pieces.begin(), phi.pieces.end(), [](const LPiece& a, const LPiece& b) {
        return std::tie(a.rho, a.twist, a.dim) < std::tie(b.rho, b.twist, b.dim);
    });
    std::sort(phi.epsilon.begin(), phi.epsilon.end(), [](const EpsilonEntry& a, const EpsilonEntry& b) {
        return std::tie(a.rho, a.dim) < std::tie(b.rho, b.dim);
    });
    return phi;
}

Sign epsilon_product(const LanglandsParameter& phi) {
    Sign product = Sign::plus();
    for (const auto& e : phi.epsilon) {
        // Weight by the multiplicity of the carrying piece: even-multiplicity
        // factors contribute their sign squared, i.e. nothing.
        std::int64_t mult = 0;
        for (const auto& p : phi.pieces)
            if (p.rho == e.rho && p.twist == HalfInt(0) && p.dim == e.dim) mult = p.mult;
        APK_CHECK(mult >= 1, "epsilon entry without a matching piece");
        if (mult % 2 != 0) product = product * e.sign;
    }
    return product;
}

} // namespace apacket
