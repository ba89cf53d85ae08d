#include "sofic/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sofic {

using nlohmann::json;

namespace {

Alphabet alphabet_from_json(const json& j) {
    std::vector<std::string> tokens;
    for (const auto& t : j.at("alphabet"))
        tokens.push_back(t.get<std::string>());
    return Alphabet(std::move(tokens));
}

} // namespace

ShiftDefinition load_shift_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad shift file: ") + e.what());
    }
    Alphabet alpha = alphabet_from_json(j);
    const std::string kind = j.at("kind").get<std::string>();
    FischerCover cover = [&] {
        if (kind == "sft") {
            SftSpec spec{alpha, {}};
            for (const auto& f : j.at("forbidden"))
                spec.forbidden.push_back(parse_word(alpha, f.get<std::string>()));
            return FischerCover::from_sft(spec);
        }
        if (kind == "graph") {
            LabeledGraph g;
            g.alphabet = alpha;
            std::map<std::string, int> state_ids;
            for (const auto& s : j.at("states")) {
                std::string name = s.get<std::string>();
                state_ids.emplace(name, static_cast<int>(g.states.size()));
                g.states.push_back(name);
            }
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 3)
                    throw ParseError("edges must be [from, label, to] triples");
                auto from = state_ids.find(e[0].get<std::string>());
                auto to = state_ids.find(e[2].get<std::string>());
                if (from == state_ids.end() || to == state_ids.end())
                    throw ParseError("edge references an unknown state");
                Word label = parse_word(alpha, e[1].get<std::string>());
                if (label.size() != 1)
                    throw ParseError("edge labels must be single symbols");
                g.edges.push_back({from->second, label[0], to->second});
            }
            return FischerCover::build(g);
        }
        throw ParseError("kind must be \"sft\" or \"graph\"");
    }();
    return ShiftDefinition{j.dump(), std::move(cover)};
}

ShiftDefinition load_shift_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open shift file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_shift_json(buf.str());
}

std::string format_point(const Alphabet& a, const EvPeriodicPoint& x) {
    return "(" + format_word(a, x.left()) + ")^inf . " + format_word(a, x.center()) + " . (" +
           format_word(a, x.right()) + ")^inf @ " + std::to_string(x.anchor());
}

EvPeriodicPoint parse_point(const Alphabet& a, const std::string& text) {
    // (left)^inf . center . (right)^inf [@ anchor]
    auto fail = [&]() -> EvPeriodicPoint {
        throw ParseError("bad point notation: \"" + text + "\"");
    };
    auto lp1 = text.find('(');
    auto rp1 = text.find(")^inf", lp1);
    if (lp1 == std::string::npos || rp1 == std::string::npos)
        return fail();
    auto dot1 = text.find('.', rp1 + 5);
    if (dot1 == std::string::npos)
        return fail();
    auto lp2 = text.find('(', dot1);
    auto dot2 = text.rfind('.', lp2 == std::string::npos ? std::string::npos : lp2);
    auto rp2 = text.find(")^inf", lp2);
    if (lp2 == std::string::npos || dot2 == std::string::npos || rp2 == std::string::npos)
        return fail();
    long anchor = 0;
    auto at = text.find('@', rp2);
    if (at != std::string::npos)
        anchor = std::stol(text.substr(at + 1));
    Word left = parse_word(a, text.substr(lp1 + 1, rp1 - lp1 - 1));
    Word center = parse_word(a, text.substr(dot1 + 1, dot2 - dot1 - 1));
    Word right = parse_word(a, text.substr(lp2 + 1, rp2 - lp2 - 1));
    return EvPeriodicPoint::make(left, center, right, anchor);
}

std::string block_code_to_json(const FischerCover& c, const BlockCode& g, std::uint64_t budget) {
    const int width = 2 * g.radius() + 1;
    if (c.word_count(width) > budget)
        throw Error("rule table too large to serialize");
    json rule = json::array();
    c.for_each_word(width, [&](const Word& w) {
        Sym out = g.eval(std::span<const Sym>(w.syms()));
        rule.push_back(json::array(
            {format_word(c.alphabet(), w), c.alphabet().token(out)}));
        return true;
    });
    json j{{"radius", g.radius()}, {"rule", rule}};
    return j.dump(2);
}

std::string marker_system_to_json(const Alphabet& a, const MarkerSystem& ms) {
    json data = json::array();
    for (const auto& d : ms.data)
        data.push_back(format_word(a, d));
    json j{{"left", format_word(a, ms.left_marker)},
           {"right", format_word(a, ms.right_marker)},
           {"data", data},
           {"perm", ms.perm}};
    return j.dump();
}

MarkerSystem marker_system_from_json(const Alphabet& a, const std::string& text) {
    json j = json::parse(text);
    MarkerSystem ms;
    ms.left_marker = parse_word(a, j.at("left").get<std::string>());
    ms.right_marker = parse_word(a, j.at("right").get<std::string>());
    for (const auto& d : j.at("data"))
        ms.data.push_back(parse_word(a, d.get<std::string>()));
    ms.perm = j.at("perm").get<std::vector<int>>();
    return ms;
}

namespace {

json certificate_body(const Alphabet& a, const Prop31Certificate& cert) {
    json pieces = json::array();
    for (const auto& p : cert.pieces) {
        json jp{{"identity", p.identity_piece}};
        if (!p.rotation.empty())
            jp["rotation"] = format_word(a, p.rotation);
        jp["w_full"] = format_word(a, p.w_full);
        jp["u_full"] = format_word(a, p.u_full);
        if (!p.identity_piece) {
            jp["u_tilde"] = format_word(a, p.u_tilde);
            jp["spacer"] = format_word(a, p.spacer);
            jp["r"] = p.r;
            jp["marker_system"] = json::parse(marker_system_to_json(a, *p.system));
        }
        pieces.push_back(jp);
    }
    json samples = json::array();
    for (const auto& s : cert.samples)
        samples.push_back(json{{"point", format_point(a, s.point)},
                               {"image", format_point(a, s.image)},
                               {"in_target", s.in_target}});
    json j{{"kind", "prop-cylinder-map"},
           {"k", cert.k},
           {"m", format_word(a, cert.m.word())},
           {"w", format_word(a, cert.w_stem)},
           {"u", format_word(a, cert.u_stem)},
           {"case", cert.case_used},
           {"pieces", pieces},
           {"samples", samples},
           {"fixes_per_k", cert.fixes_per_k},
           {"involution_structural", cert.involution_structural},
           {"involution_sampled", cert.involution_sampled},
           {"verified", cert.verified()}};
    if (cert.involution_exhaustive)
        j["involution_exhaustive"] = *cert.involution_exhaustive;
    return j;
}

} // namespace

std::string certificate_to_json(const ShiftDefinition& shift, const Prop31Certificate& cert) {
    const Alphabet& a = shift.cover.alphabet();
    json j = certificate_body(a, cert);
    j["shift"] = json::parse(shift.json_text);
    return j.dump(2);
}

std::string verify_certificate_json(const std::string& cert_text, bool& ok) {
    json j;
    try {
        j = json::parse(cert_text);
    } catch (const json::exception& e) {
        ok = false;
        return std::string("verified: false (bad certificate: ") + e.what() + ")";
    }
    ShiftDefinition shift = load_shift_json(j.at("shift").dump());
    const Alphabet& a = shift.cover.alphabet();
    const int k = j.at("k").get<int>();
    OrbitId m = OrbitId::of(parse_word(a, j.at("m").get<std::string>()));
    Word w = parse_word(a, j.at("w").get<std::string>());
    Word u = parse_word(a, j.at("u").get<std::string>());

    Prop31Certificate fresh = prop31(shift.cover, k, m, w, u);
    json expected = certificate_body(a, fresh);
    json recorded = j;
    recorded.erase("shift");

    std::ostringstream out;
    ok = fresh.verified() && expected == recorded;
    out << "verified: " << (ok ? "true" : "false") << "\n";
    out << "fresh run verified: " << (fresh.verified() ? "true" : "false") << "\n";
    out << "transcript match: " << (expected == recorded ? "true" : "false") << "\n";
    return out.str();
}

} // namespace sofic
