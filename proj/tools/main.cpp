#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "homfly/errors.hpp"
#include "homfly/fpt.hpp"
#include "homfly/kauffman.hpp"
#include "homfly/link.hpp"
#include "homfly/poly.hpp"
#include "homfly/treewidth.hpp"

namespace fs = std::filesystem;
using namespace homfly;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitWidthBudget = 3;
constexpr int kExitMismatch = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LinkDiagram load_diagram(const std::string& text, const std::string& format,
                         const std::string& origin) {
    std::string fmt = format;
    if (fmt.empty()) {
        if (origin.size() > 5 && origin.ends_with(".json"))
            fmt = "json";
        else if (origin.empty() || origin == "<inline>") {
            auto first = text.find_first_not_of(" \t\r\n");
            fmt = (first != std::string::npos && text[first] == '{') ? "json" : "pd";
        } else {
            fmt = "pd";
        }
    }
    return fmt == "json" ? diagram_from_json(text) : parse_pd(text);
}

Heuristic parse_heuristic(const std::string& name) {
    return name == "min-fill" ? Heuristic::MinFill : Heuristic::MinDegree;
}

struct ComputeOutcome {
    BiLaurent polynomial;
    nlohmann::ordered_json stats;
};

ComputeOutcome run_algorithms(const LinkDiagram& d, const std::string& algorithm,
                              Heuristic heuristic, std::uint64_t width_budget,
                              int threads) {
    ComputeOutcome out;
    bool run_kauffman = algorithm == "kauffman" || algorithm == "both";
    bool run_fpt = algorithm == "fpt" || algorithm == "both";
    double wall = 0.0;

    BiLaurent kauffman_poly;
    if (run_kauffman) {
        KauffmanOptions ko;
        ko.threads = threads;
        auto kr = homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()), ko);
        kauffman_poly = kr.polynomial;
        out.stats["leaves_visited"] = kr.stats.leaves;
        wall += kr.stats.wall_ms;
    }
    if (run_fpt) {
        FptOptions fo;
        fo.heuristic = heuristic;
        fo.table_budget = width_budget;
        fo.threads = threads;
        auto fr = homfly_fpt(d, fo);
        out.polynomial = fr.polynomial;
        out.stats["width"] = fr.stats.width;
        out.stats["bags"] = fr.stats.bags;
        out.stats["peak_configs"] = fr.stats.peak_configs;
        out.stats["total_configs"] = fr.stats.total_configs;
        wall += fr.stats.wall_ms;
    }
    out.stats["wall_ms"] = wall;
    if (run_kauffman && run_fpt) {
        if (!(kauffman_poly == out.polynomial)) {
            std::cerr << "algorithm disagreement:\n  kauffman: "
                      << render(kauffman_poly) << "\n  fpt:      "
                      << render(out.polynomial) << "\n";
            std::exit(kExitMismatch);
        }
    } else if (run_kauffman) {
        out.polynomial = kauffman_poly;
    }
    return out;
}

nlohmann::json polynomial_json(const BiLaurent& p) {
    return nlohmann::json::parse(render(p, RenderStyle::Machine));
}

int cmd_compute(const std::string& input, const std::string& inline_code,
                std::string algorithm, const std::string& format,
                const std::string& output, const std::string& heuristic,
                bool stats, std::uint64_t width_budget, int threads) {
    std::string text, origin;
    if (!inline_code.empty()) {
        text = inline_code;
        origin = "<inline>";
    } else {
        text = read_file(input);
        origin = input;
    }
    LinkDiagram d = load_diagram(text, format, origin);
    if (algorithm.empty())
        algorithm = d.crossing_count() <= 12 ? "both" : "fpt";

    ComputeOutcome res = run_algorithms(d, algorithm, parse_heuristic(heuristic),
                                        width_budget, threads);
    if (output == "json") {
        nlohmann::ordered_json j;
        j["polynomial"] = polynomial_json(res.polynomial);
        j["algorithm"] = algorithm;
        if (stats) j["stats"] = res.stats;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render(res.polynomial) << "\n";
        if (stats) std::cout << res.stats.dump() << "\n";
    }
    return kExitOk;
}

int cmd_gen(int strands, int length, int count, std::uint64_t seed,
            const std::string& out_dir) {
    if (strands < 2 || length < 1 || count < 1) {
        std::cerr << "gen: strands must be >= 2, length and count >= 1\n";
        return kExitParse;
    }
    fs::create_directories(out_dir);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> gen(1, strands - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    for (int i = 0; i < count; ++i) {
        std::vector<int> word(length);
        for (auto& w : word) w = gen(rng) * (flip(rng) ? 1 : -1);
        LinkDiagram d = generate_braid_closure(word, strands);
        char name[64];
        std::snprintf(name, sizeof(name), "braid_s%d_l%d_%04d.json", strands,
                      length, i);
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        out << diagram_to_json(d);
    }
    std::cout << count << " diagram(s) written to " << out_dir << "\n";
    return kExitOk;
}

struct VerifyResult {
    std::string name;
    bool skipped = false;
    bool parse_failed = false;
    bool equal = false;
    bool expected_ok = true;
    std::string kauffman, fpt, expected;
    std::string error;
};

int cmd_verify(const std::string& dir, std::uint64_t max_crossings, int threads,
               const std::string& heuristic, std::uint64_t width_budget) {
    std::vector<fs::path> files;
    if (!fs::exists(dir)) {
        std::cerr << "verify: no such directory " << dir << "\n";
        return kExitParse;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".json" || ext == ".pd") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<VerifyResult> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= files.size()) break;
            VerifyResult& r = results[i];
            r.name = files[i].filename().string();
            try {
                std::string text = read_file(files[i].string());
                LinkDiagram d = load_diagram(text, "", files[i].string());
                if (max_crossings && d.crossing_count() > max_crossings) {
                    r.skipped = true;
                    continue;
                }
                auto k = homfly_kauffman(d);
                FptOptions fo;
                fo.heuristic = parse_heuristic(heuristic);
                fo.table_budget = width_budget;
                auto f = homfly_fpt(d, fo).polynomial;
                r.kauffman = render(k, RenderStyle::Machine);
                r.fpt = render(f, RenderStyle::Machine);
                r.equal = r.kauffman == r.fpt;
                if (files[i].extension() == ".json") {
                    auto j = nlohmann::json::parse(text);
                    if (j.contains("expected_homfly")) {
                        r.expected = j["expected_homfly"].dump();
                        BiLaurent want = parse_bilaurent_machine(r.expected);
                        r.expected_ok = want == f;
                    }
                }
            } catch (const Error& e) {
                r.parse_failed = true;
                r.error = e.what();
            } catch (const nlohmann::json::exception& e) {
                r.parse_failed = true;
                r.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, threads); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::size_t checked = 0, mismatches = 0, parse_failures = 0;
    const VerifyResult* first_bad = nullptr;
    for (const auto& r : results) {
        if (r.skipped) {
            std::cout << r.name << ": skipped (crossing limit)\n";
            continue;
        }
        if (r.parse_failed) {
            std::cout << r.name << ": parse error (" << r.error << ")\n";
            ++parse_failures;
            continue;
        }
        ++checked;
        if (r.equal && r.expected_ok) {
            std::cout << r.name << ": ok\n";
        } else {
            std::cout << r.name << (r.equal ? ": expected-value MISMATCH\n"
                                            : ": algorithm MISMATCH\n");
            ++mismatches;
            if (!first_bad) first_bad = &r;
        }
    }
    if (checked == 0 && mismatches == 0 && parse_failures == 0)
        std::cout << "warning: 0 checked\n";
    else
        std::cout << checked << " checked, " << mismatches << " mismatch(es)\n";
    if (first_bad) {
        std::cerr << "first disagreement in " << first_bad->name
                  << "\n  kauffman: " << first_bad->kauffman
                  << "\n  fpt:      " << first_bad->fpt << "\n";
        if (!first_bad->expected.empty())
            std::cerr << "  expected: " << first_bad->expected << "\n";
        return kExitMismatch;
    }
    return parse_failures ? kExitParse : kExitOk;
}

int cmd_td_stats(const std::string& input, const std::string& format,
                 const std::string& heuristic) {
    LinkDiagram d = load_diagram(read_file(input), format, input);
    auto stripped = d.untwist_and_strip();
    DiagramGraph g = stripped.diagram.diagram_graph();
    TreeDecomposition td = greedy_decomposition(g, parse_heuristic(heuristic));
    NiceTreeDecomposition ntd = make_nice(td, g);
    auto rep = validate_nice(ntd, g);
    if (!rep.ok()) {
        std::cerr << "invalid decomposition: " << rep.describe() << "\n";
        return kExitError;
    }
    std::cout << nice_to_json(ntd);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact HOMFLY-PT polynomials of oriented link diagrams"};
    app.require_subcommand(1);

    std::string input, inline_code, algorithm, format, output = "human";
    std::string heuristic = "min-degree";
    bool stats = false;
    std::uint64_t seed = 0, width_budget = 10'000'000;
    int threads = 1;

    auto* compute = app.add_subcommand("compute", "Compute the HOMFLY-PT polynomial");
    compute->add_option("input", input, "diagram file (PD or JSON)");
    compute->add_option("--code", inline_code, "inline diagram text instead of a file");
    compute->add_option("--algorithm", algorithm,
                        "kauffman|fpt|both (default: both for <= 12 crossings, else fpt)")
        ->check(CLI::IsMember({"kauffman", "fpt", "both"}));
    compute->add_option("--format", format, "pd|json (default: by file extension)")
        ->check(CLI::IsMember({"pd", "json"}));
    compute->add_option("--output", output, "human|json")
        ->check(CLI::IsMember({"human", "json"}));
    compute->add_option("--heuristic", heuristic, "min-degree|min-fill")
        ->check(CLI::IsMember({"min-degree", "min-fill"}));
    compute->add_flag("--stats", stats, "append run statistics as JSON");
    compute->add_option("--seed", seed, "accepted for interface parity; unused");
    compute->add_option("--width-budget", width_budget, "max evaluation-table entries");
    compute->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    int strands = 2, length = 1, count = 1;
    std::string out_dir = ".";
    auto* gen = app.add_subcommand("gen", "Generate random braid-closure diagrams");
    gen->add_option("--strands", strands, "braid strand count (>= 2)");
    gen->add_option("--length", length, "braid word length");
    gen->add_option("--count", count, "number of diagrams");
    gen->add_option("--seed", seed, "RNG seed");
    gen->add_option("--out", out_dir, "output directory");

    std::string dir;
    std::uint64_t max_crossings = 0;
    auto* verify = app.add_subcommand("verify", "Cross-check both algorithms over a corpus");
    verify->add_option("dir", dir, "corpus directory")->required();
    verify->add_option("--max-crossings", max_crossings,
                       "skip larger diagrams (0 = no limit)");
    verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--heuristic", heuristic, "min-degree|min-fill")
        ->check(CLI::IsMember({"min-degree", "min-fill"}));
    verify->add_option("--width-budget", width_budget, "max evaluation-table entries");

    auto* td = app.add_subcommand("td-stats", "Print the nice tree decomposition as JSON");
    td->add_option("input", input, "diagram file")->required();
    td->add_option("--format", format, "pd|json")->check(CLI::IsMember({"pd", "json"}));
    td->add_option("--heuristic", heuristic, "min-degree|min-fill")
        ->check(CLI::IsMember({"min-degree", "min-fill"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            if (input.empty() && inline_code.empty()) {
                std::cerr << "compute: provide an input file or --code\n";
                return kExitParse;
            }
            return cmd_compute(input, inline_code, algorithm, format, output,
                               heuristic, stats, width_budget, threads);
        }
        if (gen->parsed()) return cmd_gen(strands, length, count, seed, out_dir);
        if (verify->parsed())
            return cmd_verify(dir, max_crossings, threads, heuristic, width_budget);
        if (td->parsed()) return cmd_td_stats(input, format, heuristic);
    } catch (const WidthBudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitWidthBudget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
