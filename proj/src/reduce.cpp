#include "apacket/reduce.hpp"

#include <algorithm>
#include <map>

#include "apacket/errors.hpp"

namespace apacket {

std::string origin_str(MatrixOrigin o) {
    switch (o) {
    case MatrixOrigin::push_integral: return "push-integral";
    case MatrixOrigin::push_half_integral: return "push-half-integral";
    case MatrixOrigin::index_rows: return "index-rows";
    case MatrixOrigin::junction_rows: return "junction-rows";
    case MatrixOrigin::paired_off: return "paired-off";
    }
    return "?";
}

namespace {

// Shape required by the elimination steps, per rho: zeta = '-' blocks first
// with A ascending and B nonincreasing, then zeta = '+' blocks with A ascending
// and B nondecreasing.  Returns the number of '-' blocks.
size_t check_push_shape(const ArthurParameter& param, const std::vector<int>& seq) {
    size_t m = 0;
    while (m < seq.size() && !param.blocks[static_cast<size_t>(seq[m])].zeta.positive()) ++m;
    for (size_t i = m; i < seq.size(); ++i) {
        const auto& blk = param.blocks[static_cast<size_t>(seq[i])];
        if (!blk.zeta.positive()) {
            // A '-' block above a '+' block: with A ascending this is exactly
            // the configuration where the packet genuinely changes size under
            // the elimination, so it is rejected rather than mis-handled.
            throw ValidationError(
                "elimination not applicable: zeta='-' block " + block_str(param, blk) +
                " sits above a zeta='+' block with smaller A; packets are not preserved "
                "across this configuration");
        }
    }
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        const auto& lo = param.blocks[static_cast<size_t>(seq[i])];
        const auto& hi = param.blocks[static_cast<size_t>(seq[i + 1])];
        APK_REQUIRE(lo.A <= hi.A, "elimination requires A nondecreasing along the order");
        if (i + 1 < m)
            APK_REQUIRE(hi.B <= lo.B,
                        "elimination requires B nonincreasing along the zeta='-' prefix");
        if (i >= m)
            APK_REQUIRE(lo.B <= hi.B,
                        "elimination requires B nondecreasing along the zeta='+' part");
    }
    return m;
}

SpehMatrix negative_block_matrix(const JordanBlock& blk, HalfInt rows_from, MatrixOrigin origin) {
    // Rows <-(B - j), ..., -(A - j)> for j = 0 .. rows_from - 1.
    SpehMatrix mat;
    mat.rho = blk.rho;
    mat.origin = origin;
    for (HalfInt j(0); j < rows_from; j += HalfInt(1)) {
        Segment seg;
        seg.rho = blk.rho;
        seg.x = j - blk.B;
        seg.y = blk.A - j;
        mat.rows.push_back(seg);
    }
    return mat;
}

struct RhoPush {
    std::vector<std::pair<int, JordanBlock>> replaced; // (block id, new block)
    std::vector<SpehMatrix> speh;
};

RhoPush push_integral_rho(const ArthurParameter& param, const std::vector<int>& seq) {
    const size_t m = check_push_shape(param, seq);
    RhoPush out;
    for (size_t i = 0; i < m; ++i) {
        const int id = seq[i];
        const auto& blk = param.blocks[static_cast<size_t>(id)];
        JordanBlock repl = blk;
        repl.A = blk.A - blk.B;
        repl.B = HalfInt(0);
        repl.zeta = Sign::plus();
        out.replaced.emplace_back(id, repl);
        if (blk.B > HalfInt(0))
            out.speh.push_back(negative_block_matrix(blk, blk.B, MatrixOrigin::push_integral));
    }
    return out;
}

struct RhoClass {
    std::int64_t k = 0;
    std::vector<std::pair<int, JordanBlock>> replaced;
    std::vector<SpehMatrix> speh;
    std::vector<EtaConstraint> constraints;
};

std::vector<RhoClass> half_classes_rho(const ArthurParameter& param, const std::vector<int>& seq) {
    const size_t m = check_push_shape(param, seq);
    std::vector<RhoClass> classes;
    if (m == 0) return classes; // nothing to eliminate; no classes arise

    // Breakpoints: 0, every position where A - B changes inside the '-'
    // prefix, and m itself (positions are 1-based counts into the prefix).
    std::vector<size_t> s{0};
    for (size_t i = 0; i + 1 < m; ++i) {
        const auto& cur = param.blocks[static_cast<size_t>(seq[i])];
        const auto& nxt = param.blocks[static_cast<size_t>(seq[i + 1])];
        if (cur.A - cur.B != nxt.A - nxt.B) s.push_back(i + 1);
    }
    s.push_back(m);

    for (size_t k = 0; k < s.size(); ++k) {
        RhoClass cls;
        cls.k = static_cast<std::int64_t>(k);
        const size_t sk = s[k];
        for (size_t i = 0; i < m; ++i) {
            const int id = seq[i];
            const auto& blk = param.blocks[static_cast<size_t>(id)];
            JordanBlock repl = blk;
            repl.B = HalfInt::halves(1);
            repl.zeta = Sign::plus();
            const bool is_break = (i + 1 == sk);
            if (is_break) {
                repl.A = blk.A - blk.B + HalfInt::halves(1);
                if (blk.B > HalfInt::halves(1))
                    cls.speh.push_back(negative_block_matrix(blk, blk.B - HalfInt(1),
                                                             MatrixOrigin::push_half_integral));
            } else {
                repl.A = blk.A - blk.B - HalfInt::halves(1);
                cls.speh.push_back(
                    negative_block_matrix(blk, blk.B, MatrixOrigin::push_half_integral));
            }
            cls.replaced.emplace_back(id, repl);
        }
        // Constrained initial stretch: positions 1 .. s_k carry l = 0 and a
        // forced eta built from the A - B values below them.
        Sign running = Sign::plus();
        for (size_t i = 0; i < sk; ++i) {
            const int id = seq[i];
            cls.constraints.push_back({id, running.flipped()});
            const auto& blk = param.blocks[static_cast<size_t>(id)];
            running = running * pow_minus_one(blk.A - blk.B + HalfInt(1));
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

// A replacement with A < B stands for a block whose new b = A - B + 1 would be
// zero: it disappears from the parameter (its matrix rows absorb it whole).
bool replacement_vanishes(const JordanBlock& blk) { return blk.A < blk.B; }

struct BuiltTarget {
    ArthurParameter target;
    std::vector<int> block_map; // source block id -> target id, or -1 if dropped
};

BuiltTarget build_target(const ArthurParameter& param,
                         const std::vector<std::pair<int, JordanBlock>>& replaced) {
    std::vector<JordanBlock> blocks = param.blocks;
    std::vector<bool> drop(blocks.size(), false);
    for (const auto& [id, blk] : replaced) {
        if (replacement_vanishes(blk))
            drop[static_cast<size_t>(id)] = true;
        else
            blocks[static_cast<size_t>(id)] = blk;
    }
    BuiltTarget out;
    out.target = param;
    out.target.blocks.clear();
    out.block_map.assign(blocks.size(), -1);
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (drop[i]) continue;
        out.block_map[i] = static_cast<int>(out.target.blocks.size());
        out.target.blocks.push_back(blocks[i]);
    }
    out.target.group.N = out.target.total_dim();
    out.target.validate();
    return out;
}

// Remaps constraints onto the target's block ids; constraints on dropped
// blocks are vacuous (those blocks carry no coordinates).
std::vector<EtaConstraint> remap_constraints(const std::vector<EtaConstraint>& constraints,
                                             const std::vector<int>& block_map) {
    std::vector<EtaConstraint> out;
    for (const auto& c : constraints)
        if (block_map[static_cast<size_t>(c.block)] >= 0)
            out.push_back({block_map[static_cast<size_t>(c.block)], c.eta});
    return out;
}

} // namespace

PushResult push_integral(const ArthurParameter& param, const BlockOrder& order) {
    param.validate();
    APK_REQUIRE(is_admissible_order(param, order), "push: order is not admissible");
    for (const auto& blk : param.blocks)
        APK_REQUIRE(blk.A.is_integral(), "push: all indexed blocks must have integral A, B");
    PushResult out;
    std::vector<std::pair<int, JordanBlock>> replaced;
    for (const auto& seq : order.seq_by_rho) {
        if (seq.empty()) continue;
        RhoPush rp = push_integral_rho(param, seq);
        replaced.insert(replaced.end(), rp.replaced.begin(), rp.replaced.end());
        out.speh.insert(out.speh.end(), rp.speh.begin(), rp.speh.end());
    }
    // Integral replacements never vanish (A - B >= 0), so blocks stay aligned.
    out.pushed = build_target(param, replaced).target;
    APK_CHECK(out.pushed.blocks.size() == param.blocks.size(),
              "integral elimination must keep every block");
    // The theorem's correspondence keeps the (l, eta) labels; materialize it.
    for (const PacketIndex& idx : enumerate_packet(out.pushed, canonical_order(out.pushed)))
        out.index_map.emplace_back(idx, idx);
    return out;
}

std::vector<HalfIntegralClassification> push_half_integral(const ArthurParameter& param,
                                                           const BlockOrder& order) {
    param.validate();
    APK_REQUIRE(is_admissible_order(param, order), "push: order is not admissible");
    for (const auto& blk : param.blocks)
        APK_REQUIRE(!blk.A.is_integral(),
                    "half-integral push: all indexed blocks must have half-odd A, B");

    // Per-rho class lists, then their cartesian product (mixed radix, rho-major
    // with the lowest rho id fastest).
    std::vector<std::vector<RhoClass>> lists;
    for (const auto& seq : order.seq_by_rho) {
        if (seq.empty()) continue;
        auto classes = half_classes_rho(param, seq);
        if (!classes.empty()) lists.push_back(std::move(classes));
    }

    std::vector<HalfIntegralClassification> out;
    std::vector<size_t> pick(lists.size(), 0);
    while (true) {
        HalfIntegralClassification cl;
        cl.per_rho_cls.assign(param.rhos.size(), 0);
        std::vector<std::pair<int, JordanBlock>> replaced;
        std::vector<EtaConstraint> constraints; // in source ids until remapped
        std::int64_t flat = 0;
        std::int64_t stride = 1;
        for (size_t t = 0; t < lists.size(); ++t) {
            const RhoClass& rc = lists[t][pick[t]];
            replaced.insert(replaced.end(), rc.replaced.begin(), rc.replaced.end());
            cl.speh.insert(cl.speh.end(), rc.speh.begin(), rc.speh.end());
            constraints.insert(constraints.end(), rc.constraints.begin(), rc.constraints.end());
            if (!rc.replaced.empty())
                cl.per_rho_cls[static_cast<size_t>(
                    param.blocks[static_cast<size_t>(rc.replaced.front().first)].rho)] = rc.k;
            flat += rc.k * stride;
            stride *= static_cast<std::int64_t>(lists[t].size());
        }
        cl.cls = flat;
        BuiltTarget built = build_target(param, replaced);
        cl.pushed = std::move(built.target);
        cl.block_map = std::move(built.block_map);
        cl.constraints = remap_constraints(constraints, cl.block_map);
        out.push_back(std::move(cl));

        size_t t = 0;
        for (; t < lists.size(); ++t) {
            if (++pick[t] < lists[t].size()) break;
            pick[t] = 0;
        }
        if (t == lists.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.cls < b.cls; });
    return out;
}

ChangeSignResult change_sign(const ArthurParameter& param, const BlockOrder& order,
                             const PacketIndex& index) {
    param.validate();
    APK_REQUIRE(is_admissible_order(param, order), "change_sign: order is not admissible");
    PacketIndex idx = canonical_index(param, index);

    ChangeSignResult out;
    out.changed = param;
    out.index = idx;

    for (const auto& seq : order.seq_by_rho) {
        if (seq.empty()) continue;
        const auto& first = param.blocks[static_cast<size_t>(seq[0])];
        APK_REQUIRE(first.B == HalfInt::halves(1),
                    "change_sign: the bottom block of each rho must have B = 1/2");
        const Sign zeta = first.zeta;
        const HalfInt A = first.A;
        size_t m = 0;
        while (m < seq.size()) {
            const auto& blk = param.blocks[static_cast<size_t>(seq[m])];
            if (blk.B == HalfInt::halves(1) && blk.A == A && blk.zeta == zeta)
                ++m;
            else
                break;
        }
        for (size_t i = m; i < seq.size(); ++i) {
            const auto& blk = param.blocks[static_cast<size_t>(seq[i])];
            APK_REQUIRE(blk.zeta != zeta && blk.A <= A,
                        "change_sign: blocks above the bottom run must have opposite zeta and "
                        "A at most the run's A");
        }

        // Chain condition along the run, with eta read as -1 at the collapse
        // point of the first block.
        const std::int64_t l1 = idx.l[static_cast<size_t>(seq[0])];
        const bool collapsed = at_collapse(first, l1);
        Sign eta = collapsed ? Sign::minus() : idx.eta[static_cast<size_t>(seq[0])];
        std::vector<Sign> run_eta{eta};
        for (size_t i = 0; i + 1 < m; ++i) {
            const auto& blk = param.blocks[static_cast<size_t>(seq[i + 1])];
            APK_REQUIRE(idx.l[static_cast<size_t>(seq[i + 1])] == l1,
                        "change_sign: the index must be constant in l along the bottom run");
            eta = pow_minus_one(A - HalfInt::halves(1)) * eta;
            if (!at_collapse(blk, l1))
                APK_REQUIRE(idx.eta[static_cast<size_t>(seq[i + 1])] == eta,
                            "change_sign: the index must satisfy the eta chain along the run");
            run_eta.push_back(eta);
        }

        // Transform the run and re-seed the index.
        const Sign eta1 = run_eta[0];
        Sign star = eta1.flipped();
        std::int64_t lstar = eta1.positive() ? l1 + 1 : l1;
        for (size_t i = 0; i < m; ++i) {
            auto& blk = out.changed.blocks[static_cast<size_t>(seq[i])];
            blk.A += HalfInt(1);
            blk.zeta = zeta.flipped();
            APK_CHECK(lstar >= 0 && lstar <= l_max(blk),
                      "change_sign produced an out-of-range l");
            out.index.l[static_cast<size_t>(seq[i])] = lstar;
            out.index.eta[static_cast<size_t>(seq[i])] = star;
            star = pow_minus_one(A + HalfInt::halves(1)) * star;
        }
    }
    out.changed.group.N = out.changed.total_dim();
    out.changed.validate();
    out.index = canonical_index(out.changed, out.index);
    return out;
}

Resolution resolve_special(const ArthurParameter& param, const BlockOrder& order,
                           const PacketIndex& index) {
    APK_REQUIRE(is_special_case(param, order),
                "resolve_special requires all zeta = '+' and A, B nondecreasing per rho");
    APK_REQUIRE(nonvanishing_special(param, order, index),
                "resolve_special: the index fails the nonvanishing condition");
    const PacketIndex idx = canonical_index(param, index);

    Resolution res;
    for (const auto& seq : order.seq_by_rho) {
        const size_t n = seq.size();
        if (n == 0) continue;

        std::vector<HalfInt> Ahat(n), Bhat(n);
        std::vector<Sign> eta(n);
        for (size_t i = 0; i < n; ++i) {
            const auto& blk = param.blocks[static_cast<size_t>(seq[i])];
            const std::int64_t l = idx.l[static_cast<size_t>(seq[i])];
            Ahat[i] = blk.A - HalfInt(l);
            Bhat[i] = blk.B + HalfInt(l);
            eta[i] = idx.eta[static_cast<size_t>(seq[i])];
            if (l > 0) {
                SpehMatrix mat;
                mat.rho = blk.rho;
                mat.origin = MatrixOrigin::index_rows;
                for (std::int64_t j = 0; j < l; ++j)
                    mat.rows.push_back({blk.rho, blk.B + HalfInt(j), blk.A - HalfInt(j)});
                res.speh.push_back(std::move(mat));
            }
        }

        // Runs of overlapping residual intervals.
        std::vector<size_t> run_start;
        run_start.push_back(0);
        for (size_t i = 0; i + 1 < n; ++i)
            if (Ahat[i] < Bhat[i + 1]) run_start.push_back(i + 1);
        run_start.push_back(n);

        const int rho = param.blocks[static_cast<size_t>(seq[0])].rho;
        for (size_t r = 0; r + 1 < run_start.size(); ++r) {
            const size_t p = run_start[r];
            const size_t q = run_start[r + 1] - 1; // run is positions p..q
            if (p == q) {
                TemperedBlock tb{rho, Ahat[p], Bhat[p], eta[p]};
                APK_CHECK(tb.A >= tb.B - HalfInt(1), "residual interval below the empty shape");
                if (!tb.empty()) res.tempered.push_back(tb);
                continue;
            }
            // Junction data for consecutive members of the run.
            std::vector<HalfInt> t(n), delta(n);
            for (size_t j = p; j < q; ++j) {
                APK_CHECK(!(Ahat[j] < Bhat[j + 1]), "run built across a breakpoint");
                t[j] = midpoint(Ahat[j], Bhat[j + 1]);
                delta[j] = (t[j] - Ahat[j]).is_integral() ? HalfInt(1) : HalfInt::halves(1);
                const HalfInt last_first = t[j] - delta[j];
                if (last_first >= Bhat[j + 1]) {
                    SpehMatrix mat;
                    mat.rho = rho;
                    mat.origin = MatrixOrigin::junction_rows;
                    for (HalfInt x = Bhat[j + 1]; x <= last_first; x += HalfInt(1))
                        mat.rows.push_back({rho, x, Ahat[j] - (x - Bhat[j + 1])});
                    res.speh.push_back(std::move(mat));
                }
            }
            // Tempered blocks tiling the run: bottom, middles, top.
            auto emit = [&](HalfInt A, HalfInt B, Sign e) {
                TemperedBlock tb{rho, A, B, e};
                APK_CHECK(tb.A >= tb.B - HalfInt(1), "malformed chain: inverted tempered block");
                APK_CHECK(tb.B >= HalfInt(0), "malformed chain: negative B");
                if (!tb.empty()) res.tempered.push_back(tb);
            };
            emit(t[p] + delta[p] - HalfInt(1), Bhat[p], eta[p]);
            for (size_t j = p + 1; j < q; ++j)
                emit(t[j] + delta[j] - HalfInt(1), t[j - 1] - delta[j - 1] + HalfInt(1),
                     pow_minus_one(t[j - 1] - delta[j - 1] + HalfInt(1) - Bhat[j]) * eta[j]);
            emit(Ahat[q], t[q - 1] - delta[q - 1] + HalfInt(1),
                 pow_minus_one(t[q - 1] - delta[q - 1] + HalfInt(1) - Bhat[q]) * eta[q]);
        }
    }
    return res;
}

ResolveOutput resolve(const ArthurParameter& param, const std::optional<BlockOrder>& as_given) {
    param.validate();
    ResolveOutput out;
    out.param = param;
    if (as_given) {
        APK_REQUIRE(is_special_case(param, *as_given),
                    "an explicit order is only supported when it puts the parameter itself in "
                    "special-case shape (all zeta = '+', A and B nondecreasing per rho)");
        out.order = *as_given;
    } else {
        out.order = canonical_order(param);
    }

    // Paired-off part: one matrix per pair, rows <(a-b)/2 + j, ..., -( (a+b)/2 - 1 - j )>.
    std::vector<SpehMatrix> shared;
    for (const auto& blk : param.np_pairs) {
        auto [a, b] = block_to_ab(blk);
        SpehMatrix mat;
        mat.rho = blk.rho;
        mat.origin = MatrixOrigin::paired_off;
        for (std::int64_t j = 0; j < b; ++j)
            mat.rows.push_back({blk.rho, HalfInt::halves(a - b) + HalfInt(j),
                                HalfInt::halves(a + b) - HalfInt(1) - HalfInt(j)});
        shared.push_back(std::move(mat));
    }

    // Eliminate zeta = '-' blocks: integral rhos push directly, half-odd rhos
    // fan out into classes.
    std::vector<std::pair<int, JordanBlock>> integral_repl;
    std::vector<SpehMatrix> integral_speh;
    std::vector<std::vector<RhoClass>> class_lists;
    for (const auto& seq : out.order.seq_by_rho) {
        if (seq.empty()) continue;
        const bool integral = param.blocks[static_cast<size_t>(seq[0])].A.is_integral();
        if (integral) {
            RhoPush rp = push_integral_rho(param, seq);
            integral_repl.insert(integral_repl.end(), rp.replaced.begin(), rp.replaced.end());
            integral_speh.insert(integral_speh.end(), rp.speh.begin(), rp.speh.end());
        } else {
            auto classes = half_classes_rho(param, seq);
            if (!classes.empty()) class_lists.push_back(std::move(classes));
        }
    }
    const bool has_classes = !class_lists.empty();

    std::vector<size_t> pick(class_lists.size(), 0);
    while (true) {
        std::vector<std::pair<int, JordanBlock>> replaced = integral_repl;
        std::vector<SpehMatrix> class_speh = integral_speh;
        std::vector<EtaConstraint> constraints; // in source ids until remapped
        std::int64_t flat = 0;
        std::int64_t stride = 1;
        for (size_t t = 0; t < class_lists.size(); ++t) {
            const RhoClass& rc = class_lists[t][pick[t]];
            replaced.insert(replaced.end(), rc.replaced.begin(), rc.replaced.end());
            class_speh.insert(class_speh.end(), rc.speh.begin(), rc.speh.end());
            constraints.insert(constraints.end(), rc.constraints.begin(), rc.constraints.end());
            flat += rc.k * stride;
            stride *= static_cast<std::int64_t>(class_lists[t].size());
        }
        BuiltTarget built = build_target(param, replaced);
        const ArthurParameter& target = built.target;
        constraints = remap_constraints(constraints, built.block_map);
        const BlockOrder torder = as_given ? *as_given : canonical_order(target);

        for (const PacketIndex& idx : enumerate_packet(target, torder)) {
            bool keep = true;
            for (const auto& c : constraints) {
                if (idx.l[static_cast<size_t>(c.block)] != 0 ||
                    idx.eta[static_cast<size_t>(c.block)] != c.eta) {
                    keep = false;
                    break;
                }
            }
            if (!keep) continue;
            ResolvedElement el;
            el.cls = has_classes ? std::optional<std::int64_t>(flat) : std::nullopt;
            el.target = target;
            el.index = idx;
            el.res = resolve_special(target, torder, idx);
            // Shared and class-level matrices come first, in a stable order.
            std::vector<SpehMatrix> speh = shared;
            speh.insert(speh.end(), class_speh.begin(), class_speh.end());
            speh.insert(speh.end(), el.res.speh.begin(), el.res.speh.end());
            el.res.speh = std::move(speh);
            APK_CHECK(resolution_dim(param, el.res) == param.group.N,
                      "dimension not conserved through the pipeline");
            out.elements.push_back(std::move(el));
        }

        size_t t = 0;
        for (; t < class_lists.size(); ++t) {
            if (++pick[t] < class_lists[t].size()) break;
            pick[t] = 0;
        }
        if (t == class_lists.size()) break;
    }

    std::sort(out.elements.begin(), out.elements.end(),
              [](const ResolvedElement& a, const ResolvedElement& b) {
                  if (a.cls != b.cls) return a.cls < b.cls;
                  return index_less(a.index, b.index);
              });
    return out;
}

std::int64_t resolution_dim(const ArthurParameter& source, const Resolution& res) {
    std::int64_t total = 0;
    for (const auto& mat : res.speh) {
        const std::int64_t d = source.rhos[static_cast<size_t>(mat.rho)].dim;
        for (const auto& row : mat.rows) total += 2 * d * segment_length(row);
    }
    for (const auto& tb : res.tempered) {
        const std::int64_t d = source.rhos[static_cast<size_t>(tb.rho)].dim;
        // Sum of 2C+1 over C = B..A is (A-B+1)(A+B+1); zero for the empty shape.
        total += d * (tb.A - tb.B + HalfInt(1)).to_int() * (tb.A + tb.B + HalfInt(1)).to_int();
    }
    return total;
}

} // namespace apacket
