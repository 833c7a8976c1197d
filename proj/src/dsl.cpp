#include "apacket/dsl.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "apacket/errors.hpp"

namespace apacket {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Token {
    std::string text;
    size_t col = 0; // 1-based column of the first character
};

[[noreturn]] void fail(size_t line, size_t col, const std::string& msg) {
    throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + msg);
}

std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break; // trailing comment
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

std::int64_t parse_int(size_t line, const Token& tok, const std::string& key,
                       const std::string& value) {
    std::int64_t n = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last)
        fail(line, tok.col, "expected an integer after '" + key + "='");
    return n;
}

// Splits "key=value"; returns false if there is no '='.
bool split_kv(const Token& tok, std::string& key, std::string& value) {
    const auto eq = tok.text.find('=');
    if (eq == std::string::npos) return false;
    key = tok.text.substr(0, eq);
    value = tok.text.substr(eq + 1);
    return true;
}

std::string rho_name(const ArthurParameter& param, int rho) {
    return param.rhos[static_cast<size_t>(rho)].name;
}

std::string duality_str(SelfDual d) {
    switch (d) {
    case SelfDual::orthogonal: return "orth";
    case SelfDual::symplectic: return "symp";
    case SelfDual::none: return "nsd";
    }
    return "?";
}

std::string family_str(GroupFamily f) {
    switch (f) {
    case GroupFamily::Sp: return "Sp";
    case GroupFamily::SOodd: return "SOodd";
    case GroupFamily::SOevenQuasisplit: return "SOeven";
    }
    return "?";
}

ordered_json parameter_json(const ArthurParameter& param) {
    ordered_json jp;
    jp["group"] = {{"family", family_str(param.group.family)}, {"N", param.group.N}};
    jp["rhos"] = ordered_json::array();
    for (const auto& r : param.rhos)
        jp["rhos"].push_back(
            {{"name", r.name}, {"dim", r.dim}, {"duality", duality_str(r.duality)}});
    auto block_json = [&](const JordanBlock& blk, bool with_zeta) {
        auto [a, b] = block_to_ab(blk);
        ordered_json jb;
        jb["rho"] = rho_name(param, blk.rho);
        jb["a"] = a;
        jb["b"] = b;
        if (with_zeta) {
            jb["zeta"] = std::string(1, blk.zeta.ch());
            jb["A"] = blk.A.str();
            jb["B"] = blk.B.str();
        }
        return jb;
    };
    jp["blocks"] = ordered_json::array();
    for (const auto& blk : param.blocks) jp["blocks"].push_back(block_json(blk, true));
    jp["np_blocks"] = ordered_json::array();
    for (const auto& blk : param.np_pairs) jp["np_blocks"].push_back(block_json(blk, false));
    return jp;
}

ordered_json index_json(const PacketIndex& idx, const std::optional<std::int64_t>& cls) {
    ordered_json ji;
    ji["l"] = idx.l;
    ji["eta"] = ordered_json::array();
    for (const auto& e : idx.eta) ji["eta"].push_back(std::string(1, e.ch()));
    if (cls) ji["class"] = *cls;
    return ji;
}

ordered_json phi_json(const ArthurParameter& param, const LanglandsParameter& phi) {
    ordered_json jf = ordered_json::array();
    for (const auto& p : phi.pieces)
        jf.push_back({{"rho", rho_name(param, p.rho)},
                      {"twist", p.twist.str()},
                      {"dim", p.dim},
                      {"mult", p.mult}});
    return jf;
}

ordered_json epsilon_json(const ArthurParameter& param, const LanglandsParameter& phi) {
    ordered_json je = ordered_json::array();
    for (const auto& e : phi.epsilon)
        je.push_back({{"rho", rho_name(param, e.rho)},
                      {"dim", e.dim},
                      {"sign", std::string(1, e.sign.ch())}});
    return je;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

ArthurParameter parse_parameter(const std::string& text) {
    std::optional<GroupKind> group;
    std::vector<RhoLabel> rhos;
    struct RawBlock {
        int rho;
        std::int64_t a, b;
        Sign tie = Sign::plus();
    };
    std::vector<RawBlock> raw;

    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize_line(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0].text;

        if (head == "group") {
            if (group) fail(lineno, toks[0].col, "duplicate 'group' directive");
            if (toks.size() != 3) fail(lineno, toks[0].col, "usage: group <Sp|SOodd|SOeven> N=<int>");
            GroupKind g;
            if (toks[1].text == "Sp")
                g.family = GroupFamily::Sp;
            else if (toks[1].text == "SOodd")
                g.family = GroupFamily::SOodd;
            else if (toks[1].text == "SOeven")
                g.family = GroupFamily::SOevenQuasisplit;
            else
                fail(lineno, toks[1].col, "unknown group family '" + toks[1].text +
                                              "' (expected Sp, SOodd or SOeven)");
            std::string key, value;
            if (!split_kv(toks[2], key, value) || key != "N")
                fail(lineno, toks[2].col, "expected N=<int>");
            g.N = parse_int(lineno, toks[2], "N", value);
            group = g;
        } else if (head == "rho") {
            if (toks.size() != 4)
                fail(lineno, toks[0].col, "usage: rho <name> dim=<int> <orth|symp|nsd>");
            RhoLabel r;
            r.name = toks[1].text;
            std::string key, value;
            if (!split_kv(toks[2], key, value) || key != "dim")
                fail(lineno, toks[2].col, "expected dim=<int>");
            r.dim = parse_int(lineno, toks[2], "dim", value);
            if (toks[3].text == "orth")
                r.duality = SelfDual::orthogonal;
            else if (toks[3].text == "symp")
                r.duality = SelfDual::symplectic;
            else if (toks[3].text == "nsd")
                r.duality = SelfDual::none;
            else
                fail(lineno, toks[3].col, "unknown duality '" + toks[3].text +
                                              "' (expected orth, symp or nsd)");
            for (const auto& other : rhos)
                if (other.name == r.name)
                    fail(lineno, toks[1].col, "duplicate rho '" + r.name + "'");
            rhos.push_back(std::move(r));
        } else if (head == "block") {
            if (toks.size() != 4 && toks.size() != 5)
                fail(lineno, toks[0].col,
                     "usage: block <rho-name> a=<int> b=<int> [zeta=<+|->]");
            RawBlock blk{};
            blk.rho = -1;
            for (size_t r = 0; r < rhos.size(); ++r)
                if (rhos[r].name == toks[1].text) blk.rho = static_cast<int>(r);
            if (blk.rho < 0)
                fail(lineno, toks[1].col,
                     "unknown rho '" + toks[1].text + "' (declare it with a 'rho' line first)");
            std::string key, value;
            if (!split_kv(toks[2], key, value) || key != "a")
                fail(lineno, toks[2].col, "expected a=<int>");
            blk.a = parse_int(lineno, toks[2], "a", value);
            if (!split_kv(toks[3], key, value) || key != "b")
                fail(lineno, toks[3].col, "expected b=<int>");
            blk.b = parse_int(lineno, toks[3], "b", value);
            if (blk.a < 1 || blk.b < 1)
                fail(lineno, toks[2].col, "block sizes a, b must be positive");
            if (toks.size() == 5) {
                if (!split_kv(toks[4], key, value) || key != "zeta" ||
                    (value != "+" && value != "-"))
                    fail(lineno, toks[4].col, "expected zeta=+ or zeta=-");
                if (blk.a != blk.b)
                    fail(lineno, toks[4].col,
                         "zeta may only be specified when a == b (otherwise it is the sign "
                         "of a - b)");
                blk.tie = value == "+" ? Sign::plus() : Sign::minus();
            }
            raw.push_back(blk);
        } else {
            fail(lineno, toks[0].col,
                 "unknown directive '" + head + "' (expected group, rho or block)");
        }
    }

    if (!group) throw ValidationError("missing 'group' directive");
    std::vector<JordanBlock> blocks;
    for (const auto& rb : raw) blocks.push_back(block_from_ab(rb.rho, rb.a, rb.b, rb.tie));
    return ArthurParameter::build(*group, std::move(rhos), std::move(blocks));
}

std::string serialize_parameter(const ArthurParameter& param) {
    std::ostringstream out;
    out << "group " << family_str(param.group.family) << " N=" << param.group.N << "\n";
    for (const auto& r : param.rhos)
        out << "rho " << r.name << " dim=" << r.dim << " " << duality_str(r.duality) << "\n";
    auto emit = [&](const JordanBlock& blk) {
        auto [a, b] = block_to_ab(blk);
        out << "block " << rho_name(param, blk.rho) << " a=" << a << " b=" << b;
        if (a == b && !blk.zeta.positive()) out << " zeta=-";
        out << "\n";
    };
    for (const auto& blk : param.blocks) emit(blk);
    for (const auto& blk : param.np_pairs) emit(blk);
    return out.str();
}

std::string serialize_packet(const ArthurParameter& param,
                             const std::vector<PacketIndex>& packet) {
    ordered_json j;
    j["schema"] = "1";
    j["parameter"] = parameter_json(param);
    j["packet"] = ordered_json::array();
    for (const auto& idx : packet)
        j["packet"].push_back({{"index", index_json(idx, std::nullopt)}});
    return dump(j);
}

std::string serialize_resolution(const ArthurParameter& param, const ResolveOutput& out,
                                 const std::vector<LanglandsParameter>& phis) {
    APK_CHECK(out.elements.size() == phis.size(), "one Langlands parameter per element");
    ordered_json j;
    j["schema"] = "1";
    j["parameter"] = parameter_json(param);
    j["packet"] = ordered_json::array();
    for (size_t i = 0; i < out.elements.size(); ++i) {
        const auto& el = out.elements[i];
        ordered_json je;
        je["index"] = index_json(el.index, el.cls);
        je["phi"] = phi_json(param, phis[i]);
        je["epsilon"] = epsilon_json(param, phis[i]);
        j["packet"].push_back(std::move(je));
    }
    return dump(j);
}

std::string format_packet_table(const ArthurParameter& param,
                                const std::vector<PacketIndex>& packet) {
    std::ostringstream out;
    out << "packet of " << param.group.str() << ", " << packet.size() << " element"
        << (packet.size() == 1 ? "" : "s") << "\n";
    for (const auto& idx : packet) {
        out << "  l=(";
        for (size_t i = 0; i < idx.l.size(); ++i) out << (i ? "," : "") << idx.l[i];
        out << ") eta=(";
        for (size_t i = 0; i < idx.eta.size(); ++i) out << (i ? "," : "") << idx.eta[i].ch();
        out << ")\n";
    }
    return out.str();
}

std::string format_resolution_table(const ArthurParameter& param, const ResolveOutput& out,
                                    const std::vector<LanglandsParameter>& phis) {
    APK_CHECK(out.elements.size() == phis.size(), "one Langlands parameter per element");
    std::ostringstream os;
    os << "packet of " << param.group.str() << ", " << out.elements.size() << " element"
       << (out.elements.size() == 1 ? "" : "s") << "\n";
    for (size_t i = 0; i < out.elements.size(); ++i) {
        const auto& el = out.elements[i];
        os << "element " << i;
        if (el.cls) os << " (class " << *el.cls << ")";
        os << ": l=(";
        for (size_t k = 0; k < el.index.l.size(); ++k) os << (k ? "," : "") << el.index.l[k];
        os << ") eta=(";
        for (size_t k = 0; k < el.index.eta.size(); ++k)
            os << (k ? "," : "") << el.index.eta[k].ch();
        os << ")\n  phi =";
        for (const auto& p : phis[i].pieces) {
            for (std::int64_t m = 0; m < p.mult; ++m) {
                os << " " << rho_name(param, p.rho);
                if (p.twist != HalfInt(0)) os << "|.|^" << p.twist.str();
                os << "(x)nu_" << p.dim;
            }
        }
        os << "\n  eps =";
        if (phis[i].epsilon.empty()) os << " (none)";
        for (const auto& e : phis[i].epsilon)
            os << " " << rho_name(param, e.rho) << "(x)nu_" << e.dim << ":" << e.sign.ch();
        os << "\n";
    }
    return os.str();
}

} // namespace apacket
