// Command-line front end: packet enumeration, full resolution, index
// transport between block orders, and the self-check suites.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apacket/dsl.hpp"
#include "apacket/errors.hpp"
#include "apacket/langlands.hpp"
#include "apacket/packet.hpp"
#include "apacket/params.hpp"
#include "apacket/reduce.hpp"
#include "apacket/reorder.hpp"
#include "apacket/verify.hpp"

namespace {

using apacket::ArthurParameter;
using apacket::BlockOrder;
using apacket::PacketIndex;
using apacket::Sign;
using apacket::ValidationError;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// The order in which the blocks were written, grouped per rho.
BlockOrder as_given_order(const ArthurParameter& param) {
    BlockOrder o;
    o.seq_by_rho.assign(param.rhos.size(), {});
    for (int i = 0; i < static_cast<int>(param.blocks.size()); ++i)
        o.seq_by_rho[static_cast<size_t>(param.blocks[static_cast<size_t>(i)].rho)].push_back(i);
    return o;
}

BlockOrder pick_order(const ArthurParameter& param, const std::string& mode) {
    if (mode == "canonical") return apacket::canonical_order(param);
    return as_given_order(param);
}

// "1,0,2" for one rho; rho groups separated by ';'.
BlockOrder parse_order_text(const ArthurParameter& param, const std::string& text) {
    BlockOrder o;
    o.seq_by_rho.assign(param.rhos.size(), {});
    size_t rho = 0;
    std::string tok;
    auto flush = [&](bool end_group) {
        if (!tok.empty()) {
            if (rho >= o.seq_by_rho.size())
                throw ValidationError("order lists more rho groups than the parameter has");
            try {
                o.seq_by_rho[rho].push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ValidationError("bad block id '" + tok + "' in order");
            }
            tok.clear();
        }
        if (end_group) ++rho;
    };
    for (const char c : text) {
        if (c == ',')
            flush(false);
        else if (c == ';')
            flush(true);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            tok += c;
    }
    flush(false);
    return o;
}

PacketIndex parse_index_text(const std::string& l_text, const std::string& eta_text) {
    PacketIndex idx;
    std::string tok;
    for (const char c : l_text + ",") {
        if (c == ',') {
            if (tok.empty()) continue;
            try {
                idx.l.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ValidationError("bad l value '" + tok + "'");
            }
            tok.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            tok += c;
        }
    }
    for (const char c : eta_text) {
        if (c == '+')
            idx.eta.push_back(Sign::plus());
        else if (c == '-')
            idx.eta.push_back(Sign::minus());
        else if (c != ',' && !std::isspace(static_cast<unsigned char>(c)))
            throw ValidationError(std::string("bad eta character '") + c + "'");
    }
    return idx;
}

int cmd_packet(const std::string& input, const std::string& format, const std::string& order_mode) {
    const ArthurParameter param = apacket::parse_parameter(read_input(input));
    const BlockOrder order = pick_order(param, order_mode);
    const auto packet = apacket::enumerate_packet(param, order);
    std::cout << (format == "table" ? apacket::format_packet_table(param, packet)
                                    : apacket::serialize_packet(param, packet));
    return 0;
}

int cmd_resolve(const std::string& input, const std::string& format,
                const std::string& order_mode, const std::optional<std::int64_t>& cls) {
    const ArthurParameter param = apacket::parse_parameter(read_input(input));
    std::optional<BlockOrder> as_given;
    if (order_mode == "as-given") {
        as_given = as_given_order(param);
        if (!apacket::is_special_case(param, *as_given))
            throw ValidationError(
                "--order as-given applies only when the parameter needs no elimination; "
                "use --order canonical");
    }
    apacket::ResolveOutput out = apacket::resolve(param, as_given);
    if (cls) {
        std::vector<apacket::ResolvedElement> kept;
        for (auto& el : out.elements)
            if (el.cls && *el.cls == *cls) kept.push_back(std::move(el));
        out.elements = std::move(kept);
    }
    std::vector<apacket::LanglandsParameter> phis;
    phis.reserve(out.elements.size());
    for (const auto& el : out.elements) phis.push_back(apacket::assemble(param, el.res));
    std::cout << (format == "table" ? apacket::format_resolution_table(param, out, phis)
                                    : apacket::serialize_resolution(param, out, phis));
    return 0;
}

int cmd_reorder(const std::string& input, const std::string& format, const std::string& from_text,
                const std::string& to_text, const std::string& l_text,
                const std::string& eta_text) {
    const ArthurParameter param = apacket::parse_parameter(read_input(input));
    const BlockOrder from =
        from_text.empty() ? apacket::canonical_order(param) : parse_order_text(param, from_text);
    const BlockOrder to = parse_order_text(param, to_text);
    const PacketIndex idx = parse_index_text(l_text, eta_text);
    apacket::validate_index(param, idx);
    const PacketIndex out = apacket::reorder_path(param, from, to, idx);
    if (format == "table") {
        std::cout << "order:";
        for (const auto& seq : to.seq_by_rho) {
            for (const int b : seq) std::cout << ' ' << b;
            std::cout << " ;";
        }
        std::cout << "\nl:  ";
        for (size_t i = 0; i < out.l.size(); ++i) std::cout << (i ? "," : " ") << out.l[i];
        std::cout << "\neta:";
        for (size_t i = 0; i < out.eta.size(); ++i)
            std::cout << (i ? "," : " ") << out.eta[i].ch();
        std::cout << "\n";
    } else {
        nlohmann::ordered_json j;
        j["schema"] = "1";
        j["order"] = to.seq_by_rho;
        j["index"]["l"] = out.l;
        auto& etas = j["index"]["eta"] = nlohmann::ordered_json::array();
        for (const auto& e : out.eta) etas.push_back(std::string(1, e.ch()));
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed, std::int64_t cases,
               const std::string& format) {
    std::vector<apacket::VerifyReport> reports;
    if (suites.empty()) {
        reports = apacket::run_all(seed, cases);
    } else {
        reports.reserve(suites.size());
        for (const auto& name : suites) reports.push_back(apacket::run_suite(name, seed, cases));
    }
    if (format == "table") {
        std::cout << apacket::render_reports(reports);
    } else {
        nlohmann::ordered_json j;
        j["schema"] = "1";
        auto& arr = j["suites"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            nlohmann::ordered_json s;
            s["suite"] = r.suite;
            s["ok"] = r.ok();
            s["cases"] = r.cases;
            if (!r.note.empty()) s["note"] = r.note;
            auto& fs = s["failures"] = nlohmann::ordered_json::array();
            for (const auto& f : r.failures) fs.push_back(f.detail);
            arr.push_back(std::move(s));
        }
        std::cout << j.dump(2) << "\n";
    }
    for (const auto& r : reports)
        if (!r.ok()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arthur packets of quasisplit symplectic/orthogonal p-adic groups: "
                 "enumeration and Langlands data"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "json";
    std::string order_mode = "canonical";
    std::string from_text, to_text, l_text, eta_text;
    std::optional<std::int64_t> cls;
    std::vector<std::string> suites;
    std::uint64_t seed = 1;
    std::int64_t cases = 0;

    auto add_io = [&](CLI::App* sub, bool with_order) {
        sub->add_option("input", input, "parameter description file, or '-' for stdin");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "table"}));
        if (with_order)
            sub->add_option("--order", order_mode, "block order to use")
                ->check(CLI::IsMember({"canonical", "as-given"}));
    };

    CLI::App* sub_packet = app.add_subcommand("packet", "enumerate the packet's (l, eta) indices");
    add_io(sub_packet, true);

    CLI::App* sub_resolve =
        app.add_subcommand("resolve", "compute (phi, epsilon) for every packet element");
    add_io(sub_resolve, true);
    sub_resolve->add_option("--class", cls,
                            "keep only elements of this elimination class (half-integral)");

    CLI::App* sub_reorder =
        app.add_subcommand("reorder", "transport an index from one admissible order to another");
    add_io(sub_reorder, false);
    sub_reorder->add_option("--from", from_text,
                            "source order, block ids comma-separated, rho groups ';'-separated "
                            "(default: canonical)");
    sub_reorder->add_option("--to", to_text, "target order, same syntax")->required();
    sub_reorder->add_option("--l", l_text, "index l values, comma-separated over the source order")
        ->required();
    sub_reorder->add_option("--eta", eta_text, "index eta signs, e.g. '+,-'")->required();

    CLI::App* sub_verify = app.add_subcommand("verify", "run consistency suites");
    sub_verify->add_option("suites", suites, "suite names (default: all)");
    sub_verify->add_option("--seed", seed, "random seed for the sampled suites");
    sub_verify->add_option("--cases", cases, "case count for the sampled suites (0 = default)");
    sub_verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
        if (sub_packet->parsed()) return cmd_packet(input, format, order_mode);
        if (sub_resolve->parsed()) return cmd_resolve(input, format, order_mode, cls);
        if (sub_reorder->parsed())
            return cmd_reorder(input, format, from_text, to_text, l_text, eta_text);
        if (sub_verify->parsed()) return cmd_verify(suites, seed, cases, format);
        return 1; // unreachable: a subcommand is required
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const apacket::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const apacket::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
