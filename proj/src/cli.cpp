#include "sofic/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sofic/io.hpp"

namespace sofic {

using nlohmann::json;

namespace {

struct Ctx {
    std::string shift_path;
    bool as_json = false;
    std::string out_path;
    std::ostream* out = nullptr;
};

std::string quoted_args(const std::vector<std::string>& args) {
    std::string s;
    for (const auto& a : args) {
        if (!s.empty())
            s += ' ';
        s += a;
    }
    return s;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f)
        throw Error("cannot write: " + path);
    f << text;
}

std::vector<Word> parse_words_csv(const Alphabet& a, const std::string& csv) {
    std::vector<Word> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_word(a, item));
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"soficshift: language, synchronization and automorphism "
                 "computations on finite presentations of sofic shifts"};
    app.require_subcommand(1);

    Ctx ctx;
    ctx.out = &out;
    app.add_flag("--json", ctx.as_json, "machine-readable reports");

    std::string word_text, left_text, right_text, data_csv, perm_csv;
    std::string m_text, w_text, u_text, a_text, b_text;
    int n_arg = 0, k_arg = 1, range_arg = 1, len_arg = 4, j_arg = 0;

    auto add_shift_arg = [&](CLI::App* cmd) {
        cmd->add_option("shift", ctx.shift_path, "shift definition file (JSON)")->required();
    };

    auto* c_check = app.add_subcommand("check", "transitivity, mixing and period");
    add_shift_arg(c_check);

    auto* c_words = app.add_subcommand("words", "enumerate the length-n language");
    add_shift_arg(c_words);
    c_words->add_option("-n,--length", n_arg, "word length")->required();

    auto* c_sync = app.add_subcommand("sync", "is a word synchronizing");
    add_shift_arg(c_sync);
    c_sync->add_option("--word", word_text, "word to test")->required();

    auto* c_syncext = app.add_subcommand("sync-extend", "extend a word to a synchronizing one");
    add_shift_arg(c_syncext);
    c_syncext->add_option("--word", word_text, "word to extend")->required();

    auto* c_mval = app.add_subcommand("marker-validate", "validate a marker system");
    add_shift_arg(c_mval);
    c_mval->add_option("--left", left_text)->required();
    c_mval->add_option("--right", right_text)->required();
    c_mval->add_option("--data", data_csv, "comma-separated data words")->required();
    c_mval->add_option("--perm", perm_csv, "comma-separated image indices (default: swap/identity)");

    auto* c_mbuild = app.add_subcommand("marker-build", "compile a marker automorphism");
    add_shift_arg(c_mbuild);
    c_mbuild->add_option("--left", left_text)->required();
    c_mbuild->add_option("--right", right_text)->required();
    c_mbuild->add_option("--data", data_csv)->required();
    c_mbuild->add_option("--perm", perm_csv);
    c_mbuild->add_option("--out", ctx.out_path, "write the rule table here");

    auto* c_perk = app.add_subcommand("per-k", "orbits of least period k");
    add_shift_arg(c_perk);
    c_perk->add_option("-k", k_arg)->required();

    std::vector<std::string> marker_files;
    auto* c_classify = app.add_subcommand("classify", "synchronization type of a periodic point");
    add_shift_arg(c_classify);
    c_classify->add_option("--word", word_text, "period word")->required();
    c_classify->add_option("--marker", marker_files, "marker-system JSON files used as generators");

    auto* c_ryan = app.add_subcommand("ryan", "marker system covering all words of length 2R+1");
    add_shift_arg(c_ryan);
    c_ryan->add_option("--range", range_arg)->required();

    auto* c_center = app.add_subcommand("center-test", "shift powers are identified, markers are not");
    add_shift_arg(c_center);
    c_center->add_option("--range", range_arg, "range of the ryan system (default 1)");
    c_center->add_option("-j", j_arg, "largest shift power tested (default 3)");

    auto* c_prop = app.add_subcommand("prop31", "cylinder-mapping automorphism certificate");
    add_shift_arg(c_prop);
    c_prop->add_option("-k", k_arg)->required();
    c_prop->add_option("-m", m_text, "periodic orbit, e.g. \"(01)\"")->required();
    c_prop->add_option("-w", w_text, "source cylinder stem")->required();
    c_prop->add_option("-u", u_text, "target cylinder stem")->required();
    c_prop->add_option("--out", ctx.out_path, "certificate path");

    auto* c_min = app.add_subcommand("minimality", "reversed-containment recheck of prop31");
    add_shift_arg(c_min);
    c_min->add_option("-k", k_arg)->required();
    c_min->add_option("-m", m_text)->required();
    c_min->add_option("-u", u_text)->required();
    c_min->add_option("-w", w_text)->required();
    c_min->add_option("--out", ctx.out_path);

    auto* c_ping = app.add_subcommand("pingpong", "free-group evidence on disjoint cylinders");
    add_shift_arg(c_ping);
    c_ping->add_option("-k", k_arg)->required();
    c_ping->add_option("-m", m_text)->required();
    c_ping->add_option("-a", a_text, "first cylinder stem")->required();
    c_ping->add_option("-b", b_text, "second cylinder stem")->required();
    c_ping->add_option("-L,--length", len_arg, "maximal reduced word length (default 4)");

    std::string cert_path;
    auto* c_verify = app.add_subcommand("verify", "re-run a certificate and compare transcripts");
    c_verify->add_option("certificate", cert_path, "certificate JSON")->required();

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    auto header = [&](const std::string& verb, const std::string& rest) {
        if (!ctx.as_json)
            out << "# " << verb << (rest.empty() ? "" : " " + rest) << "\n";
    };

    try {
        if (c_verify->parsed()) {
            std::ifstream in(cert_path);
            if (!in)
                throw ParseError("cannot open certificate: " + cert_path);
            std::stringstream buf;
            buf << in.rdbuf();
            bool ok = false;
            std::string report = verify_certificate_json(buf.str(), ok);
            header("verify", cert_path);
            out << report;
            return ok ? 0 : 1;
        }

        ShiftDefinition shift = load_shift_file(ctx.shift_path);
        const FischerCover& cover = shift.cover;
        const Alphabet& alpha = cover.alphabet();

        auto parse_perm = [&](std::size_t n) {
            std::vector<int> perm;
            if (perm_csv.empty()) {
                // Default: swap for two data words, identity otherwise.
                for (std::size_t i = 0; i < n; ++i)
                    perm.push_back(static_cast<int>(i));
                if (n == 2)
                    std::swap(perm[0], perm[1]);
            } else {
                std::stringstream ss(perm_csv);
                std::string item;
                while (std::getline(ss, item, ','))
                    perm.push_back(std::stoi(item));
            }
            return perm;
        };

        if (c_check->parsed()) {
            header("check", ctx.shift_path);
            if (ctx.as_json)
                out << json{{"transitive", cover.is_transitive()},
                            {"mixing", cover.is_mixing()},
                            {"period", cover.period()},
                            {"states", cover.state_count()}}
                           .dump()
                    << "\n";
            else
                out << "transitive: " << (cover.is_transitive() ? "true" : "false")
                    << ", mixing: " << (cover.is_mixing() ? "true" : "false")
                    << ", period: " << cover.period() << "\n";
        } else if (c_words->parsed()) {
            header("words", ctx.shift_path + " n=" + std::to_string(n_arg));
            if (ctx.as_json) {
                json arr = json::array();
                for (const Word& w : cover.enumerate_words(n_arg))
                    arr.push_back(format_word(alpha, w));
                out << arr.dump() << "\n";
            } else {
                for (const Word& w : cover.enumerate_words(n_arg))
                    out << format_word(alpha, w) << "\n";
            }
        } else if (c_sync->parsed()) {
            Word w = parse_word(alpha, word_text);
            bool s = cover.is_synchronizing(w);
            header("sync", ctx.shift_path + " word=" + word_text);
            if (ctx.as_json)
                out << json{{"word", word_text}, {"synchronizing", s}}.dump() << "\n";
            else
                out << "synchronizing: " << (s ? "true" : "false") << "\n";
        } else if (c_syncext->parsed()) {
            Word w = parse_word(alpha, word_text);
            Word ext = cover.extend_to_synchronizing(w);
            header("sync-extend", ctx.shift_path + " word=" + word_text);
            if (ctx.as_json)
                out << json{{"word", word_text}, {"extended", format_word(alpha, ext)}}.dump()
                    << "\n";
            else
                out << "extended: " << format_word(alpha, ext) << "\n";
        } else if (c_mval->parsed() || c_mbuild->parsed()) {
            MarkerSystem ms;
            ms.left_marker = parse_word(alpha, left_text);
            ms.right_marker = parse_word(alpha, right_text);
            ms.data = parse_words_csv(alpha, data_csv);
            ms.perm = parse_perm(ms.data.size());
            if (c_mval->parsed()) {
                header("marker-validate", ctx.shift_path + " left=" + left_text +
                                              " right=" + right_text + " data=" + data_csv);
                auto violation = validate_marker_system(cover, ms);
                if (ctx.as_json) {
                    json j{{"ok", !violation.has_value()}};
                    if (violation)
                        j["violation"] = violation->message(alpha);
                    else
                        j["max_overlap"] = max_nontrivial_overlap(ms);
                    out << j.dump() << "\n";
                } else if (violation) {
                    out << "violation: " << violation->message(alpha) << "\n";
                    return 1;
                } else {
                    out << "ok, max nontrivial overlap " << max_nontrivial_overlap(ms) << "\n";
                }
            } else {
                header("marker-build", ctx.shift_path + " left=" + left_text +
                                           " right=" + right_text + " data=" + data_csv);
                Automorphism aut = marker_to_code(cover, ms);
                if (!ctx.out_path.empty()) {
                    std::string text;
                    try {
                        text = block_code_to_json(cover, aut.code);
                    } catch (const Error&) {
                        text = marker_system_to_json(alpha, ms);
                    }
                    write_file(ctx.out_path, text);
                }
                if (ctx.as_json)
                    out << json{{"radius", aut.code.radius()},
                                {"order", aut.certificate.order}}
                               .dump()
                        << "\n";
                else
                    out << "radius: " << aut.code.radius()
                        << ", order: " << aut.certificate.order << "\n";
            }
        } else if (c_perk->parsed()) {
            header("per-k", ctx.shift_path + " k=" + std::to_string(k_arg));
            auto orbits = enumerate_per_k(cover, k_arg);
            if (ctx.as_json) {
                json arr = json::array();
                for (const auto& o : orbits)
                    arr.push_back(format_word(alpha, o.word()));
                out << arr.dump() << "\n";
            } else {
                for (const auto& o : orbits)
                    out << "(" << format_word(alpha, o.word()) << ")^inf\n";
            }
        } else if (c_classify->parsed()) {
            header("classify", ctx.shift_path + " word=" + word_text);
            PeriodicPoint x = PeriodicPoint::make(cover, parse_word(alpha, word_text));
            std::vector<Automorphism> auts;
            for (const auto& path : marker_files) {
                std::ifstream in(path);
                if (!in)
                    throw ParseError("cannot open marker file: " + path);
                std::stringstream buf;
                buf << in.rdbuf();
                auts.push_back(marker_to_code(cover, marker_system_from_json(alpha, buf.str())));
            }
            ClassifyResult res = classify_type(cover, x, auts);
            std::string type = res.type == PointType::Type1   ? "1"
                               : res.type == PointType::Type2 ? "2"
                                                              : "unknown";
            if (ctx.as_json) {
                json j{{"type", type}};
                if (res.type == PointType::Type2)
                    j["witness"] = res.witness_word;
                out << j.dump() << "\n";
            } else {
                out << "type: " << type;
                if (res.type == PointType::Type2)
                    out << " (witness " << res.witness_word << ")";
                out << "\n";
            }
        } else if (c_ryan->parsed()) {
            header("ryan", ctx.shift_path + " range=" + std::to_string(range_arg));
            RyanSystem rs = ryan_system(cover, range_arg);
            if (ctx.as_json) {
                json data = json::array();
                for (const auto& d : rs.data)
                    data.push_back(format_word(alpha, d));
                out << json{{"marker", format_word(alpha, rs.marker)},
                            {"data_length", rs.data_length},
                            {"data_count", rs.data.size()},
                            {"data", data}}
                           .dump()
                    << "\n";
            } else {
                out << "marker: " << format_word(alpha, rs.marker) << "\n";
                out << "data length: " << rs.data_length << "\n";
                out << "data words: " << rs.data.size() << "\n";
                if (rs.data.size() <= 50)
                    for (const auto& d : rs.data)
                        out << d.size() << " " << format_word(alpha, d) << "\n";
            }
        } else if (c_center->parsed()) {
            header("center-test", ctx.shift_path + " range=" + std::to_string(range_arg));
            int jmax = j_arg > 0 ? j_arg : 3;
            bool ok = true;
            for (int j = -jmax; j <= jmax; ++j) {
                auto found = identify_power_of_shift(cover, BlockCode::shift_power(j, alpha));
                bool pass = found && *found == j;
                ok = ok && pass;
                if (!ctx.as_json)
                    out << "sigma^" << j << " identified: " << (pass ? "true" : "false") << "\n";
            }
            RyanSystem rs = ryan_system(cover, range_arg);
            std::vector<int> perm(rs.data.size());
            for (std::size_t i = 0; i < perm.size(); ++i)
                perm[i] = static_cast<int>(i);
            std::swap(perm[0], perm[1]);
            Automorphism g = orbit_permutation_auto(cover, rs, perm);
            auto found = identify_power_of_shift(cover, g.code);
            bool marker_pass = !found.has_value();
            ok = ok && marker_pass;
            if (ctx.as_json)
                out << json{{"passed", ok}}.dump() << "\n";
            else {
                out << "marker automorphism identified as shift power: "
                    << (found ? "true" : "false") << "\n";
                out << "center-test: " << (ok ? "passed" : "failed") << "\n";
            }
            if (!ok)
                return 1;
        } else if (c_prop->parsed() || c_min->parsed()) {
            bool reversed = c_min->parsed();
            header(reversed ? "minimality" : "prop31",
                   ctx.shift_path + " k=" + std::to_string(k_arg) + " m=" + m_text +
                       " w=" + w_text + " u=" + u_text);
            OrbitId m = OrbitId::of(parse_word(alpha, m_text));
            Word w = parse_word(alpha, w_text);
            Word u = parse_word(alpha, u_text);
            Prop31Certificate cert = reversed ? minimality_witness(cover, k_arg, m, u, w)
                                              : prop31(cover, k_arg, m, w, u);
            if (!ctx.out_path.empty())
                write_file(ctx.out_path, certificate_to_json(shift, cert));
            if (ctx.as_json)
                out << json{{"verified", cert.verified()},
                            {"case", cert.case_used},
                            {"pieces", cert.pieces.size()},
                            {"samples", cert.samples.size()}}
                           .dump()
                    << "\n";
            else {
                if (!ctx.out_path.empty())
                    out << "certificate: " << ctx.out_path << "\n";
                out << "case: " << cert.case_used << ", pieces: " << cert.pieces.size()
                    << ", samples: " << cert.samples.size() << "\n";
                out << "verified: " << (cert.verified() ? "true" : "false") << "\n";
            }
            if (!cert.verified())
                return 1;
        } else if (c_ping->parsed()) {
            header("pingpong", ctx.shift_path + " k=" + std::to_string(k_arg) + " m=" + m_text +
                                   " a=" + a_text + " b=" + b_text +
                                   " L=" + std::to_string(len_arg));
            OrbitId m = OrbitId::of(parse_word(alpha, m_text));
            PingPongReport rep = pingpong_check(cover, k_arg, m, parse_word(alpha, a_text),
                                                parse_word(alpha, b_text), len_arg);
            if (ctx.as_json) {
                json j{{"success", rep.success},
                       {"words_checked", rep.words_checked},
                       {"samples", rep.sample_size}};
                if (!rep.success)
                    j["first_violation"] = rep.first_violation;
                out << j.dump() << "\n";
            } else {
                for (const auto& line : rep.log)
                    out << line << "\n";
                out << "words checked: " << rep.words_checked
                    << ", samples: " << rep.sample_size << "\n";
                if (rep.success)
                    out << "success: no word of length <= " << rep.max_word_length
                        << " acts as the identity (evidence, not proof)\n";
                else
                    out << "violation: " << rep.first_violation << " acts as the identity\n";
            }
            if (!rep.success)
                return 1;
        }
        return 0;
    } catch (const SearchExhaustedError& e) {
        err << "search exhausted: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sofic
