#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growthforge/errors.hpp"
#include "growthforge/group.hpp"
#include "growthforge/growth.hpp"
#include "growthforge/specfile.hpp"
#include "growthforge/spectra.hpp"
#include "growthforge/version.hpp"
#include "growthforge/witness.hpp"

namespace growthforge {

// Exit codes: 0 success, 1 usage/parse errors, 2 domain conditions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

namespace detail {

/// --group accepts a file path or inline JSON (detected by a leading '{').
inline std::string read_group_input(const std::string& path_or_text) {
    if (!path_or_text.empty() && path_or_text.front() == '{') return path_or_text;
    std::ifstream in(path_or_text, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path_or_text + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline int witness_power(const FreeSemigroupWitness& w) {
    if (const auto* sp = std::get_if<StandardPairConstruction>(&w.construction))
        return sp->power;
    int p = 1;
    for (const auto& level : std::get<SearchConstruction>(w.construction).levels)
        p = std::max(p, level.power);
    return p;
}

inline json witness_to_json(const FreeSemigroupWitness& w) {
    json out;
    out["word_a"] = word_to_string(w.word_a);
    out["word_b"] = word_to_string(w.word_b);
    out["max_length"] = static_cast<std::int64_t>(w.max_length);
    out["rate_lower_bound"] = format_double(w.rate_lower_bound);
    out["verified_depth"] = w.verified_depth;
    if (int n = witness_power(w); n > 1) {
        // The pair passes through the index-n subgroup generated by the n-th
        // power; the bound 2^(1/L) uses realized word lengths, and the
        // subgroup-transfer route would give beta >= beta_sub^(1/(2n-1)).
        out["finite_index_power"] = n;
    }
    if (const auto* sp = std::get_if<StandardPairConstruction>(&w.construction)) {
        out["construction"] = {{"kind", "standard_pair"},
                               {"power", sp->power},
                               {"cyclic_vector", sp->cyclic_vector}};
    } else {
        const auto& sc = std::get<SearchConstruction>(w.construction);
        json levels = json::array();
        for (const auto& level : sc.levels) {
            levels.push_back({{"ambient_rank", static_cast<std::int64_t>(level.ambient_rank)},
                              {"invariant_rank", static_cast<std::int64_t>(level.invariant_rank)},
                              {"pivot", level.pivot},
                              {"pivot_exponent", level.pivot_exponent},
                              {"power", level.power},
                              {"branch", level.branch},
                              {"cyclic_vector", level.cyclic_vector}});
        }
        out["construction"] = {{"kind", "search"}, {"levels", std::move(levels)}};
    }
    return out;
}

inline void print_witness(std::ostream& os, const FreeSemigroupWitness& w) {
    os << "  word_a: " << word_to_string(w.word_a) << "\n";
    os << "  word_b: " << word_to_string(w.word_b) << "\n";
    os << "  max_length: " << w.max_length << "\n";
    os << "  rate_lower_bound: " << format_double(w.rate_lower_bound) << "\n";
    os << "  verified_depth: " << w.verified_depth << "\n";
    if (int n = witness_power(w); n > 1)
        os << "  finite-index reduction: power " << n << " (index-" << n
           << " subgroup route; the bound above uses the realized word lengths)\n";
    if (const auto* sp = std::get_if<StandardPairConstruction>(&w.construction)) {
        os << "  construction: standard pair, power n = " << sp->power
           << ", cyclic vector " << sp->cyclic_vector << "\n";
    } else {
        const auto& sc = std::get<SearchConstruction>(w.construction);
        os << "  construction: generating-set search\n";
        for (const auto& level : sc.levels) {
            os << "    level: rank " << level.ambient_rank << ", invariant rank "
               << level.invariant_rank << ", pivot " << level.pivot << " (t-exponent "
               << level.pivot_exponent << ", power " << level.power << "), branch "
               << level.branch;
            if (!level.cyclic_vector.empty()) os << ", v = " << level.cyclic_vector;
            os << "\n";
        }
    }
}

inline json report_shell(const std::string& command, const std::string& digest) {
    json report;
    report["tool"] = "growthforge";
    report["version"] = kVersion;
    report["command"] = command;
    report["inputs_digest"] = digest;
    return report;
}

inline void emit(std::ostream& os, json report, bool json_mode, double wall_ms,
                 const std::string& human) {
    if (json_mode) {
        report["timing_ms"] = wall_ms;
        os << report.dump(2) << "\n";
    } else {
        os << human;
    }
}

/// Parse a --gens value: comma-separated entries, each `label=word` or a bare
/// word (auto-labeled g1, g2, ...). Words are over the spec's base labels.
inline std::vector<std::pair<std::string, Word>> parse_gens_option(const std::string& text) {
    std::vector<std::pair<std::string, Word>> entries;
    std::size_t start = 0, index = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        ++index;
        std::string label;
        std::string body = piece;
        auto eq = piece.find('=');
        if (eq != std::string::npos) {
            label = piece.substr(0, eq);
            body = piece.substr(eq + 1);
        } else {
            label = "g" + std::to_string(index);
        }
        while (!label.empty() && label.front() == ' ') label.erase(label.begin());
        while (!label.empty() && label.back() == ' ') label.pop_back();
        if (label.empty()) throw ParseError("empty generator label in --gens");
        entries.emplace_back(label, parse_word(body));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (entries.empty()) throw ParseError("--gens needs at least one word");
    return entries;
}

} // namespace detail

struct CommandIo {
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

inline int cmd_classify(const std::string& group_path, int verify_depth, bool json_mode,
                        CommandIo io) {
    auto t0 = std::chrono::steady_clock::now();
    GroupSpec spec = parse_group_spec(read_group_input(group_path));
    std::string digest = fnv1a_hex("classify\n" + serialize_group_spec(spec));
    json report = report_shell("classify", digest);
    std::ostringstream human;

    if (spec.is_split()) {
        const auto& se = spec.split();
        IntPolynomial p = char_poly(se.action);
        Classification c = classify_split_extension(spec, verify_depth);
        human << "group: split_extension, rank " << se.action.rows() << "\n";
        human << "characteristic polynomial: " << p.to_string() << "\n";
        human << "verdict: " << verdict_name(c.verdict) << "\n";
        json result;
        result["kind"] = "split_extension";
        result["characteristic_polynomial"] = p.to_string();
        result["verdict"] = verdict_name(c.verdict);
        if (c.witness) {
            human << "witness:\n";
            print_witness(human, *c.witness);
            result["evidence"] = "witness";
            result["witness"] = witness_to_json(*c.witness);
        } else {
            human << "evidence: kronecker_true (every eigenvalue is a root of unity)\n";
            result["evidence"] = "kronecker_true";
        }
        report["result"] = std::move(result);
    } else {
        // Matrix groups get the advisory per-generator spectrum test only: it
        // inspects single elements, so it cannot certify polynomial growth.
        const auto& mg = spec.matrix();
        human << "group: matrix_group, degree " << mg.degree << "\n";
        human << "advisory per-generator spectrum test (no classification claimed):\n";
        json gens = json::array();
        bool all = true;
        for (const auto& [label, m] : mg.generators) {
            bool rou = spectrum_all_roots_of_unity(m);
            all = all && rou;
            human << "  " << label << ": "
                  << (rou ? "all eigenvalues are roots of unity"
                          : "has an eigenvalue that is not a root of unity")
                  << "\n";
            gens.push_back({{"label", label}, {"all_roots_of_unity", rou}});
        }
        human << "advisory: " << (all ? "all generator spectra are roots of unity"
                                      : "some generator has growth-forcing spectrum")
              << "\n";
        json result;
        result["kind"] = "matrix_group";
        result["advisory_generators"] = std::move(gens);
        result["advisory_all_roots_of_unity"] = all;
        report["result"] = std::move(result);
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    emit(io.out, std::move(report), json_mode, ms, human.str());
    return kExitOk;
}

inline int cmd_growth(const std::string& group_path, unsigned radius, std::uint64_t budget,
                      const std::string& csv_path, bool json_mode, CommandIo io) {
    auto t0 = std::chrono::steady_clock::now();
    GroupSpec spec = parse_group_spec(read_group_input(group_path));
    std::string digest = fnv1a_hex("growth\n" + serialize_group_spec(spec) + "\n" +
                                   std::to_string(radius) + "\n" + std::to_string(budget));
    GeneratingSet gens = default_generating_set(spec);
    GrowthReport g = enumerate_ball(spec, gens, radius, budget);

    std::ostringstream csv;
    write_growth_csv(g, csv);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw ValidationError("cannot write CSV to '" + csv_path + "'");
        out << csv.str();
    }

    json report = report_shell("growth", digest);
    json result;
    result["radius_requested"] = static_cast<std::int64_t>(radius);
    result["radius_completed"] = static_cast<std::int64_t>(g.max_radius());
    result["budget"] = std::to_string(g.budget);
    result["budget_exhausted"] = g.budget_exhausted;
    result["elements_visited"] = std::to_string(g.elements_visited);
    json sizes = json::array();
    for (std::uint64_t b : g.ball_sizes) sizes.push_back(std::to_string(b));
    result["ball_sizes"] = std::move(sizes);
    json roots = json::array();
    for (std::size_t n = 1; n < g.nth_roots.size(); ++n)
        roots.push_back(format_double(g.nth_roots[n]));
    result["nth_roots"] = std::move(roots);
    if (g.ball_sizes.size() >= 2) {
        RateBounds rb = rate_bounds(g);
        result["upper_bound"] = format_double(rb.upper);
    }
    report["result"] = std::move(result);

    std::ostringstream human;
    human << csv.str();
    if (g.budget_exhausted)
        human << "# budget exhausted after radius " << g.max_radius() << " ("
              << g.elements_visited << " elements visited)\n";

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    emit(io.out, std::move(report), json_mode, ms, human.str());
    if (g.budget_exhausted) {
        io.err << "error: BudgetExceeded: enumeration stopped at radius " << g.max_radius()
               << " of " << radius << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

inline int cmd_witness(const std::string& group_path, const std::string& gens_text,
                       int verify_depth, bool json_mode, CommandIo io) {
    auto t0 = std::chrono::steady_clock::now();
    GroupSpec spec = parse_group_spec(read_group_input(group_path));
    std::string digest = fnv1a_hex("witness\n" + serialize_group_spec(spec) + "\n" +
                                   gens_text + "\n" + std::to_string(verify_depth));
    GeneratingSet gens = gens_text.empty()
                             ? default_generating_set(spec)
                             : generating_set_from_words(spec, parse_gens_option(gens_text));
    FreeSemigroupWitness w = witness_search(spec, gens, verify_depth);

    json report = report_shell("witness", digest);
    json result;
    json gen_list = json::array();
    for (const auto& item : gens.items)
        gen_list.push_back({{"label", item.label}, {"word", word_to_string(item.word)}});
    result["generating_set"] = std::move(gen_list);
    result["witness"] = witness_to_json(w);
    report["result"] = std::move(result);

    std::ostringstream human;
    human << "generating set:\n";
    for (const auto& item : gens.items)
        human << "  " << item.label << " = " << word_to_string(item.word) << "\n";
    human << "witness:\n";
    print_witness(human, w);

    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    emit(io.out, std::move(report), json_mode, ms, human.str());
    return kExitOk;
}

inline int cmd_verify(const std::string& group_path, const std::string& word_a,
                      const std::string& word_b, int depth, bool json_mode, CommandIo io) {
    auto t0 = std::chrono::steady_clock::now();
    GroupSpec spec = parse_group_spec(read_group_input(group_path));
    std::string digest = fnv1a_hex("verify\n" + serialize_group_spec(spec) + "\n" + word_a +
                                   "\n" + word_b + "\n" + std::to_string(depth));
    VerifyResult r =
        verify_free_semigroup(spec, parse_word(word_a), parse_word(word_b), depth);

    json report = report_shell("verify", digest);
    json result;
    result["ok"] = r.ok;
    result["distinct_count"] = std::to_string(r.distinct_count);
    result["depth"] = depth;
    std::ostringstream human;
    if (r.ok) {
        human << "ok: all " << r.distinct_count << " products of length <= " << depth
              << " are distinct\n";
    } else {
        human << "counterexample: '" << r.counterexample->first << "' = '"
              << r.counterexample->second << "'\n";
        result["counterexample"] = {{"first", r.counterexample->first},
                                    {"second", r.counterexample->second}};
    }
    report["result"] = std::move(result);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    emit(io.out, std::move(report), json_mode, ms, human.str());
    return kExitOk;
}

inline int cmd_kronecker(const std::string& poly_text, bool json_mode, CommandIo io) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Int> coeffs;
    std::size_t start = 0;
    while (start <= poly_text.size()) {
        std::size_t comma = poly_text.find(',', start);
        std::string piece = poly_text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        coeffs.push_back(parse_decimal(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (coeffs.empty() || coeffs.front() != 1)
        throw NotMonic("--poly expects highest-degree-first coefficients starting with 1");
    IntPolynomial p = IntPolynomial::from_coeffs_desc(coeffs);
    bool result = kronecker_all_roots_of_unity(p);

    std::string digest = fnv1a_hex("kronecker\n" + poly_text);
    json report = report_shell("kronecker", digest);
    report["result"] = {{"polynomial", p.to_string()}, {"all_roots_of_unity", result}};
    std::ostringstream human;
    human << p.to_string() << ": " << (result ? "true" : "false") << "\n";
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    emit(io.out, std::move(report), json_mode, ms, human.str());
    return kExitOk;
}

inline int error_exit_code(const Error& e) {
    const std::string tag = e.tag();
    if (tag == "ParseError" || tag == "ValidationError" || tag == "UnknownLabel" ||
        tag == "InvalidTable" || tag == "NotMonic")
        return kExitUsage;
    return kExitDomain;
}

} // namespace detail

/// Dispatch a full command line (without the program name). Writes the report
/// to `out`, a one-line machine-parsable error to `err` on failure, and
/// returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"exact growth classification and free-semigroup witnesses for "
                 "abelian-by-cyclic matrix groups"};
    app.set_version_flag("--version", std::string("growthforge ") + kVersion);
    app.require_subcommand(1);

    std::string group_path, gens_text, csv_path, word_a, word_b, poly_text;
    unsigned radius = 0;
    std::uint64_t budget = 5000000;
    int verify_depth = 8;
    int depth = 8;
    bool json_mode = false;

    CLI::App* classify = app.add_subcommand("classify", "growth alternative for a group spec");
    classify->add_option("--group", group_path, "group spec file")->required();
    classify->add_option("--verify-depth", verify_depth, "oracle depth for the witness");
    classify->add_flag("--json", json_mode, "machine-readable report");

    CLI::App* growth = app.add_subcommand("growth", "exhaustive Cayley-ball enumeration");
    growth->add_option("--group", group_path, "group spec file")->required();
    growth->add_option("--radius", radius, "maximum radius N")->required();
    growth->add_option("--budget", budget, "visited-element cap");
    growth->add_option("--csv", csv_path, "write the CSV table to this file");
    growth->add_flag("--json", json_mode, "machine-readable report");

    CLI::App* witness = app.add_subcommand("witness", "free-semigroup witness search");
    witness->add_option("--group", group_path, "group spec file")->required();
    witness->add_option("--gens", gens_text,
                        "generating set: comma-separated words, optionally label=word");
    witness->add_option("--verify-depth", verify_depth, "oracle depth");
    witness->add_flag("--json", json_mode, "machine-readable report");

    CLI::App* verify = app.add_subcommand("verify", "brute-force free-semigroup oracle");
    verify->add_option("--group", group_path, "group spec file")->required();
    verify->add_option("--word-a", word_a, "first word")->required();
    verify->add_option("--word-b", word_b, "second word")->required();
    verify->add_option("--depth", depth, "product length bound");
    verify->add_flag("--json", json_mode, "machine-readable report");

    CLI::App* kronecker = app.add_subcommand("kronecker", "root-of-unity test for a monic polynomial");
    kronecker->add_option("--poly", poly_text,
                          "comma-separated coefficients, highest degree first, monic")
        ->required();
    kronecker->add_flag("--json", json_mode, "machine-readable report");

    std::vector<const char*> argv;
    argv.push_back("growthforge");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: UsageError: " << e.what() << "\n";
        return kExitUsage;
    }

    CommandIo io{out, err};
    try {
        if (classify->parsed()) return detail::cmd_classify(group_path, verify_depth, json_mode, io);
        if (growth->parsed()) return detail::cmd_growth(group_path, radius, budget, csv_path, json_mode, io);
        if (witness->parsed()) return detail::cmd_witness(group_path, gens_text, verify_depth, json_mode, io);
        if (verify->parsed()) return detail::cmd_verify(group_path, word_a, word_b, depth, json_mode, io);
        if (kronecker->parsed()) return detail::cmd_kronecker(poly_text, json_mode, io);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return detail::error_exit_code(e);
    } catch (const std::exception& e) {
        err << "error: InternalError: " << e.what() << "\n";
        return kExitDomain;
    }
    err << "error: UsageError: no subcommand\n";
    return kExitUsage;
}

} // namespace growthforge
