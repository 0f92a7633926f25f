#include <doctest.h>

#include <json.hpp>

#include <random>
#include <set>

#include "helpers.hpp"
#include "homfly/errors.hpp"
#include "homfly/kauffman.hpp"
#include "homfly/link.hpp"

using namespace homfly;

static LinkDiagram fig8() { return parse_pd(testutil::kFigureEightPd); }

static BiLaurent fig8_polynomial() {
    BiLaurent p;
    p.add_term({2, 0}, 1);
    p.add_term({-2, 0}, 1);
    p.add_term({0, 2}, -1);
    p.add_term({0, 0}, -1);
    return p;
}

TEST_CASE("leaf terms") {
    CHECK(leaf_term({0, 0, 2, 0, 1}) == TriLaurent::mono(1, 2, 0, 0));
    CHECK(leaf_term({1, 1, -1, 0, 2}) == TriLaurent::mono(-1, -1, 1, 1));
    CHECK(leaf_term({0, 0, 0, 0, 1}) == TriLaurent::one());
    CHECK(leaf_term({3, 2, 1, 0, 2}) == TriLaurent::mono(1, 1, 3, 1));
}

TEST_CASE("figure-eight reproduces the four-leaf run") {
    LinkDiagram d = fig8();
    std::multiset<std::string> terms;
    std::multiset<std::tuple<int, int, int, int>> rows;
    KauffmanOptions opt;
    opt.leaf_observer = [&](const LeafStats& s, const TriLaurent& term) {
        terms.insert(render(term, RenderStyle::Machine));
        rows.insert({s.splices, s.negative_splices, s.writhe_modified, s.components});
        CHECK(s.writhe_original == 0);
    };
    auto res = homfly_kauffman_run(d, ArcOrder::identity(8), opt);
    CHECK(res.stats.leaves == 4);
    CHECK(res.polynomial == fig8_polynomial());
    CHECK(render(res.polynomial) == "a^2 + a^-2 - z^2 - 1");

    std::multiset<std::string> want_terms{
        render(TriLaurent::mono(1, 2, 0, 0), RenderStyle::Machine),    // a^2
        render(TriLaurent::mono(-1, -1, 1, 1), RenderStyle::Machine),  // -a^-1 z d
        render(TriLaurent::mono(-1, 2, 2, 0), RenderStyle::Machine),   // -a^2 z^2
        render(TriLaurent::mono(1, 1, 3, 1), RenderStyle::Machine),    // a z^3 d
    };
    CHECK(terms == want_terms);
    std::multiset<std::tuple<int, int, int, int>> want_rows{
        {0, 0, 2, 1}, {1, 1, -1, 2}, {2, 1, 2, 1}, {3, 2, 1, 2}};
    CHECK(rows == want_rows);
}

TEST_CASE("single twist evaluates to one") {
    LinkDiagram d = parse_pd("X(2,2,1,1)");
    CHECK(homfly_kauffman(d) == BiLaurent::one());
    // starting on the loop arc, the first encounter is from above: no fork
    CHECK(leaf_count(d, ArcOrder::identity(2)) == 1);
    // starting on the other arc forks once, same polynomial
    ArcOrder reversed;
    reversed.rank = {1, 0};
    CHECK(leaf_count(d, reversed) == 2);
    CHECK(homfly_kauffman(d, reversed) == BiLaurent::one());
}

TEST_CASE("result is invariant under the arc order") {
    std::vector<LinkDiagram> diagrams{fig8(), generate_braid_closure({1, 1, 1}, 2),
                                      generate_braid_closure({-1, 2, -1, 2, -1}, 3)};
    std::mt19937_64 rng(31);
    for (int i = 0; i < 6; ++i)
        diagrams.push_back(
            generate_braid_closure(testutil::random_word(rng, 3, 7), 3));
    for (const auto& d : diagrams) {
        BiLaurent base = homfly_kauffman(d);
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            CHECK(homfly_kauffman(d, ArcOrder::shuffled(d.arc_count(), seed)) == base);
    }
}

TEST_CASE("committed fixtures match their expected polynomials") {
    for (const char* name : {"figure8", "trefoil", "hopf", "unlink2",
                             "twist_unknot", "link5_2comp"}) {
        std::string path = testutil::fixture_dir() + "/" + name + ".json";
        std::string text = testutil::read_file(path);
        REQUIRE_MESSAGE(!text.empty(), path);
        LinkDiagram d = diagram_from_json(text);
        std::string expected = nlohmann::json::parse(text)["expected_homfly"].dump();
        BiLaurent want = parse_bilaurent_machine(expected);
        CHECK_MESSAGE(homfly_kauffman(d) == want, name);
    }
}

TEST_CASE("exponential-time traversal stays in linear space") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 20; ++i) {
        int strands = 2 + static_cast<int>(rng() % 3);
        auto word = testutil::random_word(rng, strands, 8);
        LinkDiagram d = generate_braid_closure(word, strands);
        auto res = homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()));
        std::size_t n = d.crossing_count();
        CHECK(res.stats.leaves <= (std::uint64_t{1} << n));
        CHECK(res.stats.peak_journal <= 3 * n + 4);
        CHECK(res.stats.max_fork_depth <= static_cast<int>(n));
    }
}

TEST_CASE("parallel exploration matches sequential byte for byte") {
    for (const auto& d : {fig8(), generate_braid_closure({1, -2, 1, -2, 1, 2, -1, 2, 1, 2}, 3)}) {
        auto seq = homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()));
        KauffmanOptions par;
        par.threads = 4;
        auto con = homfly_kauffman_run(d, ArcOrder::identity(d.arc_count()), par);
        CHECK(render(seq.polynomial, RenderStyle::Machine) ==
              render(con.polynomial, RenderStyle::Machine));
        CHECK(seq.stats.leaves == con.stats.leaves);
    }
}

TEST_CASE("degenerate diagrams") {
    CHECK_THROWS_AS(homfly_kauffman(LinkDiagram{}), ValidationError);
    LinkDiagram two_circles = generate_braid_closure({}, 2);
    // two crossingless circles: delta
    BiLaurent delta;
    delta.add_term({1, -1}, 1);
    delta.add_term({-1, -1}, -1);
    CHECK(homfly_kauffman(two_circles) == delta);
    LinkDiagram d = fig8();
    ArcOrder bad;
    bad.rank = {0, 0, 1, 2, 3, 4, 5, 6};
    CHECK_THROWS_AS(homfly_kauffman(d, bad), ValidationError);
}
