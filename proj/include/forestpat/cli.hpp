#pragma once

#include "forestpat/forestpat.hpp"
#include "forestpat/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace forestpat {

// Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 cap/resource.
enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitResource = 3 };

namespace cli_detail {

struct Range {
    int lo = 0, hi = 0;
};

inline Range parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw error(errc::parse_error, "bad range '" + s + "' (want N or A..B)");
    }
}

// Recurrence-side value for `count`, when some registered machinery covers
// the set: the section-by-section registry, the descending family, or the
// higher-order Bell route for {12, k(k-1)...1}.
inline std::optional<BigInt> recurrence_value(const PatternSet& s, int n, Universe universe,
                                              std::string* how) {
    if (RecurrenceCounter::supported(s)) {
        RecurrenceCounter rc(s);
        if (how) *how = "registry";
        return universe == Universe::Forest ? rc.forests(n) : rc.trees(n);
    }
    auto descending_k = [](const Pattern& p) -> std::optional<int> {
        int k = p.size();
        for (int i = 1; i <= k; ++i)
            if (p(i) != k + 1 - i) return std::nullopt;
        return k;
    };
    if (s.size() == 1) {
        const Pattern& p = *s.patterns().begin();
        auto k = descending_k(p);
        if (!k) k = descending_k(p.complement());
        if (k && *k >= 2) {
            DescendingCounter dc(*k);
            if (how) *how = "descending";
            return universe == Universe::Forest ? dc.forests(n) : dc.trees(n);
        }
    }
    if (s.size() == 2) {
        // {12, k(k-1)...1} or its complement {21, 12...k}
        for (const PatternSet& cand : {s, s.complement()}) {
            std::optional<int> k;
            bool has12 = false;
            for (const auto& p : cand.patterns()) {
                if (p == Pattern({1, 2})) {
                    has12 = true;
                } else {
                    k = descending_k(p);
                }
            }
            if (has12 && k && *k >= 2) {
                if (how) *how = "bell";
                if (universe == Universe::Forest) return higher_order_bell(*k - 2, n);
                // decreasing trees of depth <= k-1: the root carries the top
                // label, below it sits a depth-limited decreasing forest
                if (n == 0) return BigInt(0);
                if (*k == 2) return BigInt(n == 1 ? 1 : 0);
                return higher_order_bell(*k - 3, n - 1);
            }
        }
    }
    return std::nullopt;
}

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

// One exported sequence: rows of (params, n, value) under a family id.
struct SequenceRecord {
    std::string family;
    std::string params;
    std::string provenance; // oracle | recurrence | closed-form
    std::string timestamp;
    std::vector<std::tuple<std::string, int, std::string>> rows; // (params, n, value)
};

inline json record_to_json(const SequenceRecord& rec) {
    json j;
    j["family"] = rec.family;
    j["params"] = rec.params;
    j["provenance"] = rec.provenance;
    j["timestamp"] = rec.timestamp;
    json rows = json::array();
    for (const auto& [p, n, v] : rec.rows) rows.push_back({{"params", p}, {"n", n}, {"value", v}});
    j["rows"] = rows;
    return j;
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw error(errc::io_error, "cannot write " + tmp.string());
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string record_csv(const SequenceRecord& rec) {
    std::string csv = "family,params,n,value,provenance\n";
    for (const auto& [p, n, v] : rec.rows)
        csv += rec.family + "," + p + "," + std::to_string(n) + "," + v + "," + rec.provenance +
               "\n";
    return csv;
}

inline SequenceRecord build_sequence(const std::string& family, int max_n,
                                     const RunConfig& cfg) {
    SequenceRecord rec;
    rec.family = family;
    rec.params = "max_n=" + std::to_string(max_n);
    auto add = [&](const std::string& p, int n, const BigInt& v) {
        rec.rows.emplace_back(p, n, v.str());
    };
    if (family.rfind("rec:", 0) == 0) {
        PatternSet s = PatternSet::parse(family.substr(4));
        RecurrenceCounter rc(s, cfg.memo_cap);
        rec.provenance = "recurrence";
        for (int n = 0; n <= max_n; ++n) add("", n, rc.forests(n));
    } else if (family.rfind("desc:", 0) == 0) {
        int k = std::stoi(family.substr(5));
        DescendingCounter dc(k, cfg.memo_cap);
        rec.provenance = "recurrence";
        for (int n = 0; n <= max_n; ++n) add("", n, dc.forests(n));
    } else if (family.rfind("bell:", 0) == 0) {
        int order = std::stoi(family.substr(5));
        rec.provenance = "recurrence";
        auto seq = higher_order_bell_sequence(order, max_n);
        for (int n = 0; n <= max_n; ++n) add("", n, seq[static_cast<size_t>(n)]);
    } else if (family == "extranice") {
        rec.provenance = "closed-form";
        for (int n = 2; n <= max_n; n += 2) add("", n, extranice_count(n));
    } else if (family.rfind("cluster:", 0) == 0) {
        Pattern sigma = Pattern::parse(family.substr(8));
        rec.provenance = "oracle";
        auto table = cluster_table(sigma, max_n, cfg);
        for (const auto& [nm, v] : table.entries()) add("m=" + std::to_string(nm.second),
                                                        nm.first, v);
    } else {
        throw error(errc::parse_error,
                    "unknown family '" + family +
                        "' (want rec:<set>, desc:<k>, bell:<i>, extranice, cluster:<sigma>)");
    }
    return rec;
}

inline void print_report(const CampaignReport& rep, std::ostream& out) {
    for (const auto& r : rep.results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.pass && !r.witness.empty()) out << "  [" << r.witness << "]";
        out << "\n";
    }
}

} // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"pattern avoidance in unordered rooted labeled forests"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    RunConfig cfg;
    app.add_option("--cap", cfg.oracle_cap, "enumeration cap for brute-force oracles");
    app.add_option("--workers", cfg.workers, "worker threads for enumeration");
    app.add_option("--cache-dir", cfg.cache_dir, "cache directory (env FORESTPAT_CACHE_DIR)");

    // count
    auto* count_cmd = app.add_subcommand("count", "count pattern-avoiding forests/trees");
    std::string set_str, range_str = "1..6", method = "both", mode_str = "classical",
                universe_str = "forest", format_str = "table";
    count_cmd->add_option("--set", set_str, "pattern set, e.g. 213 or 213,231")->required();
    count_cmd->add_option("--n", range_str, "n or range a..b");
    count_cmd->add_option("--method", method, "brute | recurrence | both")
        ->check(CLI::IsMember({"brute", "recurrence", "both"}));
    count_cmd->add_option("--mode", mode_str, "classical | consecutive")
        ->check(CLI::IsMember({"classical", "consecutive"}));
    count_cmd->add_option("--universe", universe_str, "forest | tree")
        ->check(CLI::IsMember({"forest", "tree"}));
    count_cmd->add_option("--format", format_str, "table | csv | json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification campaign");
    std::string campaign, tau_str = "123";
    int verify_max_n = 6, verify_max_vertices = 4;
    verify_cmd->add_option("campaign", campaign,
                           "westbijection | shapewilf | clusters-1324-1423 | gamma | "
                           "extranice | recurrences")
        ->required();
    verify_cmd->add_option("--tau", tau_str, "pattern for westbijection");
    verify_cmd->add_option("--max-n", verify_max_n, "exhaustive bound");
    verify_cmd->add_option("--max-vertices", verify_max_vertices, "diagram vertex bound");

    // sequence
    auto* seq_cmd = app.add_subcommand("sequence", "export a counting sequence with caching");
    std::string family;
    int seq_max_n = 10;
    seq_cmd->add_option("--family", family, "rec:<set> | desc:<k> | bell:<i> | extranice | "
                                            "cluster:<sigma>")
        ->required();
    seq_cmd->add_option("--max-n", seq_max_n, "largest n to export");

    // bijection
    auto* bij_cmd = app.add_subcommand("bijection", "apply alpha or beta to a forest");
    std::string bij_input, bij_tau, bij_dir = "alpha", bij_output;
    bij_cmd->add_option("--input", bij_input, "forest JSON file")->required();
    bij_cmd->add_option("--tau", bij_tau, "pattern ending (k-1)k")->required();
    bij_cmd->add_option("--direction", bij_dir, "alpha | beta")
        ->check(CLI::IsMember({"alpha", "beta"}));
    bij_cmd->add_option("--output", bij_output, "output file (default stdout)");

    // clusters
    auto* clusters_cmd = app.add_subcommand("clusters", "forest cluster numbers");
    std::string cluster_pattern;
    int cluster_max_n = 7;
    clusters_cmd->add_option("--pattern", cluster_pattern, "consecutive pattern");
    clusters_cmd->add_option("--max-n", cluster_max_n, "largest cluster size");
    auto* compare_cmd = clusters_cmd->add_subcommand("compare", "compare two cluster tables");
    std::string lhs_str, rhs_str;
    int compare_max_n = 7;
    compare_cmd->add_option("--lhs", lhs_str, "first pattern")->required();
    compare_cmd->add_option("--rhs", rhs_str, "second pattern")->required();
    compare_cmd->add_option("--max-n", compare_max_n, "largest cluster size");

    // shapewilf
    auto* sw_cmd = app.add_subcommand("shapewilf", "forest-shape-Wilf comparisons");
    auto* sw_verify = sw_cmd->add_subcommand("verify", "class sizes over generated diagrams");
    std::string sw_taus = "123";
    int sw_max_vertices = 4;
    sw_verify->add_option("--taus", sw_taus, "comma-separated patterns ending (k-1)k");
    sw_verify->add_option("--max-vertices", sw_max_vertices, "diagram vertex bound");

    // nice
    auto* nice_cmd = app.add_subcommand("nice", "sigma-nice trees and twig collections");
    auto* nice_count = nice_cmd->add_subcommand("count", "count nice trees/forests on [n]");
    std::string nice_sigma = "1423";
    int nice_n = 6;
    bool nice_extra = false;
    nice_count->add_option("--sigma", nice_sigma, "pattern");
    nice_count->add_option("--n", nice_n, "label count");
    nice_count->add_flag("--extranice", nice_extra, "count extranice instead of nice");
    auto* nice_gamma = nice_cmd->add_subcommand("gamma", "apply the involution to twigs");
    std::string gamma_input, gamma_output;
    nice_gamma->add_option("--input", gamma_input, "twig collection JSON file")->required();
    nice_gamma->add_option("--output", gamma_output, "output file (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*count_cmd) {
            PatternSet s = PatternSet::parse(set_str);
            Range range = parse_range(range_str);
            AvoidanceMode mode = mode_str == "classical" ? AvoidanceMode::Classical
                                                         : AvoidanceMode::Consecutive;
            Universe universe = universe_str == "forest" ? Universe::Forest : Universe::Tree;
            bool want_brute = method != "recurrence";
            bool want_rec = method != "brute";
            if (want_rec && mode == AvoidanceMode::Consecutive)
                throw error(errc::unsupported_set,
                            "recurrences cover classical avoidance; use --method brute");
            bool disagreement = false;
            json jrows = json::array();
            std::string csv = "set,n,brute,recurrence,status\n";
            if (format_str == "table")
                out << "set={" << s.str() << "} mode=" << mode_str << " universe="
                    << universe_str << "\n";
            for (int n = range.lo; n <= range.hi; ++n) {
                std::optional<BigInt> brute, rec;
                std::string how;
                if (want_brute) brute = count_avoiding(n, s, mode, universe, cfg);
                if (want_rec) {
                    rec = recurrence_value(s, n, universe, &how);
                    if (!rec && method == "recurrence")
                        throw error(errc::unsupported_set,
                                    "no registered recurrence for {" + s.str() + "}");
                }
                std::string status;
                if (brute && rec) {
                    status = (*brute == *rec) ? "AGREE" : "DISAGREE";
                    if (*brute != *rec) disagreement = true;
                }
                std::string bs = brute ? brute->str() : "";
                std::string rs = rec ? rec->str() : "";
                if (format_str == "table") {
                    out << "n=" << n;
                    if (brute) out << "  brute=" << bs;
                    if (rec) out << "  recurrence=" << rs;
                    if (!status.empty()) out << "  " << status;
                    out << "\n";
                } else if (format_str == "csv") {
                    csv += s.str() + "," + std::to_string(n) + "," + bs + "," + rs + "," +
                           status + "\n";
                } else {
                    jrows.push_back({{"n", n}, {"brute", bs}, {"recurrence", rs},
                                     {"status", status}});
                }
            }
            if (format_str == "csv") out << csv;
            if (format_str == "json") out << jrows.dump(2) << "\n";
            if (disagreement) {
                err << "FAIL: brute force and recurrence disagree\n";
                return kExitVerifyFailed;
            }
            return kExitOk;
        }

        if (*verify_cmd) {
            std::vector<CampaignReport> reports;
            if (campaign == "westbijection") {
                reports.push_back(verify_westbijection(Pattern::parse(tau_str), verify_max_n));
                reports.push_back(verify_west_restrictions(verify_max_n, verify_max_n));
            } else if (campaign == "shapewilf") {
                reports.push_back(verify_shapewilf(verify_max_vertices + 1, verify_max_vertices));
            } else if (campaign == "clusters-1324-1423") {
                reports.push_back(
                    verify_clusters_1324_1423(verify_max_n, std::min(verify_max_n - 1, 5), cfg));
            } else if (campaign == "gamma") {
                reports.push_back(verify_gamma(verify_max_n));
            } else if (campaign == "extranice") {
                reports.push_back(verify_extranice(std::min(verify_max_n, 6), 8, 12));
            } else if (campaign == "recurrences") {
                reports.push_back(verify_recurrences(verify_max_n, cfg));
            } else {
                err << "usage error: unknown campaign '" << campaign << "'\n";
                return kExitUsage;
            }
            bool all = true;
            for (const auto& rep : reports) {
                out << "== " << rep.campaign << " ==\n";
                print_report(rep, out);
                all = all && rep.pass();
            }
            out << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
            return all ? kExitOk : kExitVerifyFailed;
        }

        if (*seq_cmd) {
            namespace fs = std::filesystem;
            fs::path dir(cfg.cache_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec) throw error(errc::io_error, "cannot create " + dir.string());
            std::string key = family + "|max_n=" + std::to_string(seq_max_n) +
                              "|cap=" + std::to_string(cfg.oracle_cap);
            std::string stem_name = family;
            std::replace(stem_name.begin(), stem_name.end(), ':', '_');
            std::replace(stem_name.begin(), stem_name.end(), ',', '-');
            fs::path jpath = dir / (stem_name + "-" + hex64(fnv1a(key)) + ".json");
            fs::path cpath = jpath;
            cpath.replace_extension(".csv");
            SequenceRecord rec;
            if (fs::exists(jpath)) {
                out << "cache hit: " << jpath.string() << "\n";
                std::ifstream f(jpath);
                json j = json::parse(f);
                rec.family = j["family"];
                rec.params = j["params"];
                rec.provenance = j["provenance"];
                rec.timestamp = j["timestamp"];
                for (const auto& row : j["rows"])
                    rec.rows.emplace_back(row["params"], row["n"], row["value"]);
            } else {
                rec = build_sequence(family, seq_max_n, cfg);
                rec.params = "max_n=" + std::to_string(seq_max_n);
                auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
                std::ostringstream ts;
                ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
                rec.timestamp = ts.str();
                atomic_write(jpath, record_to_json(rec).dump(2) + "\n");
                out << "wrote " << jpath.string() << "\n";
            }
            atomic_write(cpath, record_csv(rec));
            out << "wrote " << cpath.string() << "\n";
            return kExitOk;
        }

        if (*bij_cmd) {
            std::ifstream f(bij_input);
            if (!f) throw error(errc::io_error, "cannot read " + bij_input);
            LabeledForest forest = forest_from_json(json::parse(f));
            TauPair pair(Pattern::parse(bij_tau));
            LabeledForest image =
                bij_dir == "alpha" ? alpha(forest, pair) : beta(forest, pair);
            json j;
            j["input"] = forest_to_json(forest);
            j["image"] = forest_to_json(image);
            j["special"] = special_vertices(forest, pair);
            j["direction"] = bij_dir;
            std::string text = j.dump(2) + "\n";
            if (bij_output.empty()) {
                out << text;
            } else {
                atomic_write(bij_output, text);
                out << "wrote " << bij_output << "\n";
            }
            return kExitOk;
        }

        if (*clusters_cmd) {
            if (*compare_cmd) {
                auto verdict = strong_cfw_equivalent(Pattern::parse(lhs_str),
                                                     Pattern::parse(rhs_str), compare_max_n, cfg);
                if (verdict.equal) {
                    out << "EQUAL-UP-TO(" << compare_max_n << ")\n";
                    return kExitOk;
                }
                auto [n, m, l, r] = *verdict.witness;
                out << "DIFFER at n=" << n << " m=" << m << ": " << l.str() << " vs " << r.str()
                    << "\n";
                return kExitVerifyFailed;
            }
            if (cluster_pattern.empty()) {
                err << "usage error: clusters needs --pattern or the compare subcommand\n";
                return kExitUsage;
            }
            auto table = cluster_table(Pattern::parse(cluster_pattern), cluster_max_n, cfg);
            out << "pattern,n,m,r\n";
            for (const auto& [nm, v] : table.entries())
                out << cluster_pattern << "," << nm.first << "," << nm.second << "," << v.str()
                    << "\n";
            return kExitOk;
        }

        if (*sw_cmd) {
            if (!*sw_verify) {
                err << "usage error: shapewilf needs the verify subcommand\n";
                return kExitUsage;
            }
            std::vector<Pattern> taus;
            {
                PatternSet parsed = PatternSet::parse(sw_taus);
                taus.assign(parsed.patterns().begin(), parsed.patterns().end());
            }
            std::vector<PermMatrix> ms, ms_tilde;
            for (const auto& tau : taus) {
                TauPair tp(tau);
                ms.push_back(PermMatrix::from_pattern(tp.tau));
                ms_tilde.push_back(PermMatrix::from_pattern(tp.tau_tilde));
            }
            out << "diagram,avoiding_taus,avoiding_tildes\n";
            bool all_equal = true;
            int id = 0;
            for (int n = 1; n <= sw_max_vertices; ++n) {
                for (const auto& y : all_diagrams(n, sw_max_vertices)) {
                    long lhs = 0, rhs = 0;
                    for (const auto& t : enumerate_transversals(y)) {
                        if (transversal_avoids_all(y, t, ms)) ++lhs;
                        if (transversal_avoids_all(y, t, ms_tilde)) ++rhs;
                    }
                    out << "d" << id++ << "," << lhs << "," << rhs << "\n";
                    all_equal = all_equal && lhs == rhs;
                }
            }
            out << (all_equal ? "ALL EQUAL" : "MISMATCH") << "\n";
            return all_equal ? kExitOk : kExitVerifyFailed;
        }

        if (*nice_cmd) {
            if (*nice_count) {
                Pattern sigma = Pattern::parse(nice_sigma);
                if (nice_n > cfg.oracle_cap)
                    throw error(errc::cap_exceeded, "n exceeds the enumeration cap");
                BigInt trees = 0, forests = 0;
                for_each_forest(range_labels(nice_n), [&](const LabeledForest& f) {
                    bool hit = nice_extra ? is_extranice(f, sigma) : is_nice(f, sigma);
                    if (!hit) return;
                    forests += 1;
                    if (f.is_tree()) trees += 1;
                });
                out << (nice_extra ? "extranice" : "nice") << " sigma=" << sigma.str()
                    << " n=" << nice_n << " trees=" << trees.str()
                    << " forests=" << forests.str() << "\n";
                if (nice_extra &&
                    (sigma == Pattern({1, 2, 3, 4}) || sigma == Pattern({1, 4, 2, 3}) ||
                     sigma == Pattern({1, 3, 2, 4}))) {
                    if (nice_n % 2 == 0)
                        out << "closed-form trees=" << extranice_count(nice_n).str() << "\n";
                }
                return kExitOk;
            }
            if (*nice_gamma) {
                std::ifstream f(gamma_input);
                if (!f) throw error(errc::io_error, "cannot read " + gamma_input);
                json j = json::parse(f);
                std::vector<Twig> twigs;
                for (const auto& tj : j) {
                    Twig t;
                    t.parent = tj["parent"];
                    for (int c : tj["children"]) t.children.push_back(c);
                    twigs.push_back(std::move(t));
                }
                TwigCollection w = TwigCollection::make(std::move(twigs));
                TwigCollection g = gamma(w);
                json outj = json::array();
                for (const auto& t : g.twigs())
                    outj.push_back({{"parent", t.parent}, {"children", t.children}});
                std::string text = outj.dump(2) + "\n";
                if (gamma_output.empty()) {
                    out << text;
                } else {
                    atomic_write(gamma_output, text);
                    out << "wrote " << gamma_output << "\n";
                }
                return kExitOk;
            }
            err << "usage error: nice needs count or gamma\n";
            return kExitUsage;
        }
    } catch (const error& e) {
        err << e.what() << "\n";
        switch (e.code()) {
            case errc::cap_exceeded:
            case errc::io_error:
                return kExitResource;
            case errc::parse_error:
            case errc::unsupported_set:
            case errc::unsupported_pattern:
                return kExitUsage;
            default:
                return kExitVerifyFailed;
        }
    }
    err << "usage error: no subcommand\n";
    return kExitUsage;
}

} // namespace forestpat
