// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Criteria and tolerances are fixed here; nothing is calibrated at
// run time.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "homfly/errors.hpp"
#include "homfly/fpt.hpp"
#include "homfly/kauffman.hpp"
#include "homfly/link.hpp"
#include "homfly/poly.hpp"
#include "homfly/treewidth.hpp"

using namespace homfly;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass,
            const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << " ["
              << label << "]";
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    if (!pass) ++failures;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct CorpusEntry {
    std::vector<int> word;
    int strands;
};

// Fixed-seed corpus: 512 braid closures, 2..5 strands, <= 10 crossings.
std::vector<CorpusEntry> make_corpus() {
    std::vector<CorpusEntry> corpus;
    for (int strands = 2; strands <= 5; ++strands) {
        for (int len = 3; len <= 10; ++len) {
            for (int rep = 0; rep < 16; ++rep) {
                std::mt19937_64 rng(12345 + strands * 1000 + len * 10 + rep);
                corpus.push_back(
                    {testutil::random_word(rng, strands, len), strands});
            }
        }
    }
    return corpus;
}

BiLaurent figure8_polynomial() {
    BiLaurent p;
    p.add_term({2, 0}, 1);
    p.add_term({-2, 0}, 1);
    p.add_term({0, 2}, -1);
    p.add_term({0, 0}, -1);
    return p;
}

void criterion1() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    try {
        LinkDiagram d = parse_pd(testutil::kFigureEightPd);
        std::multiset<std::string> terms;
        KauffmanOptions opt;
        opt.leaf_observer = [&](const LeafStats&, const TriLaurent& term) {
            terms.insert(render(term, RenderStyle::Machine));
        };
        auto kr = homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()), opt);
        auto fr = homfly_fpt(d);
        BiLaurent want = figure8_polynomial();
        std::multiset<std::string> want_terms{
            render(TriLaurent::mono(1, 2, 0, 0), RenderStyle::Machine),
            render(TriLaurent::mono(-1, -1, 1, 1), RenderStyle::Machine),
            render(TriLaurent::mono(-1, 2, 2, 0), RenderStyle::Machine),
            render(TriLaurent::mono(1, 1, 3, 1), RenderStyle::Machine)};
        pass = kr.polynomial == want && fr.polynomial == want &&
               kr.stats.leaves == 4 && terms == want_terms &&
               render(kr.polynomial) == "a^2 + a^-2 - z^2 - 1";
        double elapsed = ms_since(t0);
        if (elapsed >= 1000.0) pass = false;
        std::ostringstream ss;
        ss << "both algorithms a^2 + a^-2 - z^2 - 1, 4 leaves, "
           << elapsed << " ms";
        detail = ss.str();
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    report(1, "worked example", pass, detail);
}

void criterion2(const std::vector<CorpusEntry>& corpus) {
    auto t0 = Clock::now();
    bool pass = true;
    std::size_t checked = 0;
    std::string detail;
    try {
        for (const auto& entry : corpus) {
            LinkDiagram d = generate_braid_closure(entry.word, entry.strands);
            std::string k = render(homfly_kauffman(d), RenderStyle::Machine);
            std::string f = render(homfly_fpt(d).polynomial, RenderStyle::Machine);
            ++checked;
            if (k != f) {
                pass = false;
                detail = "disagreement on corpus diagram " +
                         std::to_string(checked - 1);
                break;
            }
        }
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    double elapsed = ms_since(t0);
    if (elapsed >= 5.0 * 60.0 * 1000.0) pass = false;
    if (detail.empty()) {
        std::ostringstream ss;
        ss << checked << " diagrams bit-identical in " << elapsed / 1000.0 << " s";
        detail = ss.str();
    }
    report(2, "oracle equivalence", pass, detail);
}

void criterion3() {
    bool pass = true;
    std::string detail;
    try {
        LinkDiagram fig8 = parse_pd(testutil::kFigureEightPd);
        pass = fig8.writhe() == 0 && fig8.sign(0) == Sign::Positive &&
               fig8.sign(1) == Sign::Negative && fig8.sign(2) == Sign::Negative &&
               fig8.sign(3) == Sign::Positive;
        LinkDiagram link5 = generate_braid_closure({-1, 2, -1, 2, -1}, 3);
        pass = pass && link5.writhe() == -1 && link5.crossing_count() == 5 &&
               link5.components() == 2;
        detail = "writhes 0 and -1, signs (+,-,-,+)";
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    report(3, "writhe fixtures", pass, detail);
}

void criterion4(const std::vector<CorpusEntry>& corpus) {
    // The (2|bag|)!^2 and 2^n bounds are always-on assertions inside the
    // pipelines; any violation surfaces as InternalError.  Run the corpus
    // with per-configuration validation on a sample as well.
    bool pass = true;
    std::string detail = "no bound assertion fired";
    try {
        std::size_t i = 0;
        for (const auto& entry : corpus) {
            LinkDiagram d = generate_braid_closure(entry.word, entry.strands);
            ArcOrder order = ArcOrder::identity(d.arc_count());
            auto kr = homfly_kauffman_run(d, order);
            if (d.crossing_count() < 64 &&
                kr.stats.leaves > (std::uint64_t{1} << d.crossing_count())) {
                pass = false;
                detail = "leaf bound exceeded";
                break;
            }
            FptOptions opt;
            opt.validate_configs = (i++ % 16 == 0);
            homfly_fpt(d, opt);
        }
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    report(4, "structural bounds", pass, detail);
}

void criterion5(const std::vector<CorpusEntry>& corpus) {
    bool pass = true;
    std::string detail;
    std::size_t graphs = 0;
    try {
        for (const auto& entry : corpus) {
            LinkDiagram d = generate_braid_closure(entry.word, entry.strands);
            LinkDiagram link = d.untwist_and_strip().diagram;
            if (link.empty()) continue;
            DiagramGraph g = link.diagram_graph();
            ++graphs;
            for (Heuristic h : {Heuristic::MinDegree, Heuristic::MinFill}) {
                TreeDecomposition td = greedy_decomposition(g, h);
                auto rep = validate(td, g);
                if (!rep.ok()) {
                    pass = false;
                    detail = rep.describe();
                    break;
                }
                NiceTreeDecomposition ntd = make_nice(td, g);
                auto nrep = validate_nice(ntd, g);
                if (!nrep.ok() || ntd.width() != width(td)) {
                    pass = false;
                    detail = nrep.describe();
                    break;
                }
            }
            if (!pass) break;
        }
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    if (detail.empty())
        detail = std::to_string(graphs) + " graphs, both heuristics, all valid";
    report(5, "decomposition validity", pass, detail);
}

void criterion6(const std::vector<CorpusEntry>& corpus) {
    bool pass = true;
    std::string detail;
    try {
        for (std::size_t i = 0; i < corpus.size() && pass; i += 20) {
            LinkDiagram d =
                generate_braid_closure(corpus[i].word, corpus[i].strands);
            std::string base = render(homfly_kauffman(d), RenderStyle::Machine);
            // (a) five random arc orders
            for (std::uint64_t seed = 1; seed <= 5 && pass; ++seed)
                pass = render(homfly_kauffman(
                                  d, ArcOrder::shuffled(d.arc_count(), seed)),
                              RenderStyle::Machine) == base;
            // (b) three distinct tree-based orderings
            LinkDiagram link = d.untwist_and_strip().diagram;
            if (!link.empty()) {
                std::string stripped_base =
                    render(homfly_kauffman(link), RenderStyle::Machine);
                DiagramGraph g = link.diagram_graph();
                NiceTreeDecomposition ntd =
                    make_nice(greedy_decomposition(g, Heuristic::MinDegree), g);
                std::set<std::vector<std::uint32_t>> distinct;
                for (unsigned variant = 0; variant < 3 && pass; ++variant) {
                    TreeArcOrder tao = tree_arc_order(link, ntd, variant);
                    distinct.insert(tao.order.rank);
                    pass = render(homfly_kauffman(link, tao.order),
                                  RenderStyle::Machine) == stripped_base;
                }
                if (link.arc_count() >= 4 && distinct.size() < 2) pass = false;
            }
            // (c) heuristics agree
            FptOptions deg, fill;
            fill.heuristic = Heuristic::MinFill;
            pass = pass &&
                   render(homfly_fpt(d, deg).polynomial, RenderStyle::Machine) ==
                       base &&
                   render(homfly_fpt(d, fill).polynomial, RenderStyle::Machine) ==
                       base;
            // (d) one vs four threads
            KauffmanOptions k4;
            k4.threads = 4;
            FptOptions f4;
            f4.threads = 4;
            pass = pass &&
                   render(homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()), k4)
                              .polynomial,
                          RenderStyle::Machine) == base &&
                   render(homfly_fpt(d, f4).polynomial, RenderStyle::Machine) == base;
            if (!pass) detail = "invariance broken on corpus diagram " + std::to_string(i);
        }
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    if (detail.empty())
        detail = "orders, orderings, heuristics and thread counts byte-equal";
    report(6, "invariance suite", pass, detail);
}

void criterion7(const std::vector<CorpusEntry>& corpus) {
    bool pass = true;
    std::string detail;
    try {
        std::mt19937_64 rng(2026);
        int done = 0;
        for (std::size_t i = 0; i < corpus.size() && done < 50; i += 9, ++done) {
            LinkDiagram d =
                generate_braid_closure(corpus[i].word, corpus[i].strands);
            LinkDiagram t = d;
            int twists = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < twists; ++k)
                t = insert_twist(t, static_cast<ArcId>(rng() % t.arc_count()),
                                 rng() % 2 ? Sign::Positive : Sign::Negative);
            std::string k = render(homfly_kauffman(t), RenderStyle::Machine);
            std::string f = render(homfly_fpt(t).polynomial, RenderStyle::Machine);
            if (k != f) {
                pass = false;
                detail = "twisted diagram " + std::to_string(i) + " disagrees";
                break;
            }
        }
        if (pass) {
            pass = homfly_fpt(parse_pd("X(2,2,1,1)")).polynomial == BiLaurent::one();
            if (!pass) detail = "stripped-to-empty twist is not 1";
        }
        if (detail.empty())
            detail = "50 twisted diagrams agree; single twist strips to 1";
    } catch (const std::exception& e) {
        pass = false;
        detail = e.what();
    }
    report(7, "preprocessing correctness", pass, detail);
}

void criterion8() {
    // Asymptotic running-time claims are out of scope as measurements; the
    // bounded quantities are only instrumented.
    auto res = homfly_fpt(parse_pd(testutil::kFigureEightPd));
    std::cout << "INFO criterion 8 [asymptotics out of scope]: instrumentation"
                 " only; sample stats width=" << res.stats.width
              << " bags=" << res.stats.bags
              << " peak_configs=" << res.stats.peak_configs
              << " total_configs=" << res.stats.total_configs << "\n";
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    auto corpus = make_corpus();
    criterion1();
    criterion2(corpus);
    criterion3();
    criterion4(corpus);
    criterion5(corpus);
    criterion6(corpus);
    criterion7(corpus);
    criterion8();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT")
              << " (" << ms_since(t0) / 1000.0 << " s total)\n";
    return failures == 0 ? 0 : 1;
}
