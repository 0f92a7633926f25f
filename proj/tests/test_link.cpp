#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "homfly/errors.hpp"
#include "homfly/link.hpp"

using namespace homfly;

static LinkDiagram fig8() { return parse_pd(testutil::kFigureEightPd); }

TEST_CASE("figure-eight parses with the documented signs") {
    LinkDiagram d = fig8();
    CHECK(d.crossing_count() == 4);
    CHECK(d.arc_count() == 8);
    CHECK(d.sign(0) == Sign::Positive);
    CHECK(d.sign(1) == Sign::Negative);
    CHECK(d.sign(2) == Sign::Negative);
    CHECK(d.sign(3) == Sign::Positive);
    CHECK(d.writhe() == 0);
    CHECK(d.components() == 1);
    CHECK(testutil::component_count_oracle(d) == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_pd(""), ParseError);
    CHECK_THROWS_AS(parse_pd("# only a comment\n"), ParseError);
    CHECK_THROWS_AS(parse_pd("Y(1,2,3,4)"), ParseError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3)"), ParseError);
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4) junk"), ParseError);
    // label 5 appears once
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4)\nX(2,1,4,5)\n"), NonQuadrivalentError);
    // label 1 is the incoming under-strand at both crossings
    CHECK_THROWS_AS(parse_pd("X(1,2,3,4)\nX(1,4,2,3)\n"), OrientationConflictError);
    CHECK_THROWS_AS(parse_pd("X(0,1,1,0)"), ParseError);
}

TEST_CASE("single positive twist") {
    LinkDiagram d = parse_pd("X(2,2,1,1)");
    CHECK(d.crossing_count() == 1);
    CHECK(d.sign(0) == Sign::Positive);
    CHECK(d.writhe() == 1);
    CHECK(d.components() == 1);
    CHECK_THROWS_AS(d.sign(5), UnknownCrossingError);
}

TEST_CASE("writhe fixtures") {
    CHECK(fig8().writhe() == 0);
    LinkDiagram link5 = generate_braid_closure({-1, 2, -1, 2, -1}, 3);
    CHECK(link5.crossing_count() == 5);
    CHECK(link5.writhe() == -1);
    CHECK(link5.components() == 2);
    CHECK(LinkDiagram{}.writhe() == 0);
    CHECK(LinkDiagram{}.components() == 0);
}

TEST_CASE("switch flips the sign and nothing else") {
    LinkDiagram d = fig8();
    LinkDiagram s = d.switch_crossing(0);
    CHECK(s.sign(0) == Sign::Negative);
    CHECK(s.writhe() == -2);
    CHECK(s.components() == d.components());
    CHECK(s.switch_crossing(0) == d);  // involution
    for (CrossingId c = 0; c < d.crossing_count(); ++c)
        CHECK(d.switch_crossing(c).components() == d.components());
    CHECK_THROWS_AS(d.switch_crossing(9), UnknownCrossingError);
}

TEST_CASE("splice removes one crossing and two arcs") {
    LinkDiagram d = fig8();
    LinkDiagram s = d.splice(1);  // crossing B
    CHECK(s.crossing_count() == 3);
    CHECK(s.arc_count() == 6);
    CHECK(testutil::component_count_oracle(s) == 2);
    // the split leaves a 2-arc loop and a 4-arc component
    std::map<std::pair<CrossingId, int>, ArcId> source_at;
    for (ArcId a = 0; a < s.arc_count(); ++a)
        source_at[{s.arc(a).from.crossing, static_cast<int>(s.arc(a).from.slot)}] = a;
    std::vector<int> sizes;
    std::vector<bool> seen(s.arc_count(), false);
    for (ArcId start = 0; start < s.arc_count(); ++start) {
        if (seen[start]) continue;
        int size = 0;
        ArcId a = start;
        while (!seen[a]) {
            seen[a] = true;
            ++size;
            Slot out = s.arc(a).to.slot == Slot::UnderIn ? Slot::UnderOut
                                                         : Slot::OverOut;
            a = source_at.at({s.arc(a).to.crossing, static_cast<int>(out)});
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{2, 4});
}

TEST_CASE("splicing a self-crossing splits the component") {
    LinkDiagram trefoil = generate_braid_closure({1, 1, 1}, 2);
    for (CrossingId c = 0; c < 3; ++c) {
        LinkDiagram s = trefoil.splice(c);
        CHECK(s.crossing_count() == 2);
        CHECK(testutil::component_count_oracle(s) == 2);
    }
    // smoothing the kink of the twist unknot frees two circles
    LinkDiagram twist = parse_pd("X(2,2,1,1)");
    LinkDiagram s = twist.splice(0);
    CHECK(s.empty());
    CHECK(s.zero_components_removed() == 2);
}

TEST_CASE("untwisting") {
    auto r = parse_pd("X(2,2,1,1)").untwist_and_strip();
    CHECK(r.diagram.empty());
    CHECK(r.twists_removed == 1);
    CHECK(r.zero_components == 1);

    auto fig = fig8().untwist_and_strip();
    CHECK(fig.diagram == fig8());
    CHECK(fig.twists_removed == 0);
    CHECK(fig.zero_components == 0);

    auto two = parse_pd("X(2,2,1,1)\nX(4,4,3,3)\n").untwist_and_strip();
    CHECK(two.diagram.empty());
    CHECK(two.twists_removed == 2);
    CHECK(two.zero_components == 2);

    // untwisting the inner kink re-forms the outer loop; iterated to a fixed
    // point (kink inserted on the loop arc itself)
    LinkDiagram chain = insert_twist(parse_pd("X(2,2,1,1)"), 0, Sign::Negative);
    auto c = chain.untwist_and_strip();
    CHECK(c.diagram.empty());
    CHECK(c.twists_removed == 2);
    CHECK(c.zero_components == 1);

    LinkDiagram braid = generate_braid_closure({1, -2, 1, 2}, 3);
    CHECK_FALSE(braid.untwist_and_strip().diagram.diagram_graph().has_loop());
}

TEST_CASE("diagram graph") {
    DiagramGraph g = fig8().diagram_graph();
    CHECK(g.vertices == 4);
    CHECK(g.edges.size() == 8);
    CHECK_FALSE(g.has_loop());

    DiagramGraph t = parse_pd("X(2,2,1,1)").diagram_graph();
    CHECK(t.vertices == 1);
    CHECK(t.edges.size() == 2);
    CHECK(t.has_loop());

    CHECK(LinkDiagram{}.diagram_graph().vertices == 0);
    CHECK(LinkDiagram{}.diagram_graph().edges.empty());
}

TEST_CASE("braid closures") {
    LinkDiagram trefoil = generate_braid_closure({1, 1, 1}, 2);
    CHECK(trefoil.crossing_count() == 3);
    CHECK(trefoil.writhe() == 3);
    CHECK(testutil::component_count_oracle(trefoil) == 1);
    for (CrossingId c = 0; c < 3; ++c) CHECK(trefoil.sign(c) == Sign::Positive);

    LinkDiagram rm2 = generate_braid_closure({1, -1}, 2);
    CHECK(rm2.crossing_count() == 2);
    CHECK(rm2.writhe() == 0);

    LinkDiagram empty = generate_braid_closure({}, 2);
    CHECK(empty.empty());
    CHECK(empty.zero_components_removed() == 2);

    LinkDiagram gap = generate_braid_closure({1}, 3);
    CHECK(gap.crossing_count() == 1);
    CHECK(gap.zero_components_removed() == 1);

    CHECK_THROWS_AS(generate_braid_closure({2}, 2), BadGeneratorIndexError);
    CHECK_THROWS_AS(generate_braid_closure({0}, 2), BadGeneratorIndexError);
    CHECK_THROWS_AS(generate_braid_closure({1}, 1), BadGeneratorIndexError);
}

TEST_CASE("random braid corpus is structurally valid and deterministic") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        int strands = 2 + static_cast<int>(rng() % 4);
        int len = 1 + static_cast<int>(rng() % 10);
        auto word = testutil::random_word(rng, strands, len);
        LinkDiagram d = generate_braid_closure(word, strands);  // validates slots
        CHECK(d.arc_count() == 2 * d.crossing_count());
        CHECK(generate_braid_closure(word, strands) == d);
        CHECK(diagram_to_json(generate_braid_closure(word, strands)) ==
              diagram_to_json(d));
    }
}

TEST_CASE("JSON round-trip is exact") {
    std::mt19937_64 rng(29);
    std::vector<LinkDiagram> diagrams{fig8(), parse_pd("X(2,2,1,1)"),
                                      generate_braid_closure({1, 1, 1}, 2)};
    for (int i = 0; i < 20; ++i) {
        auto word = testutil::random_word(rng, 3, 6);
        diagrams.push_back(generate_braid_closure(word, 3));
    }
    for (const auto& d : diagrams) {
        std::string text = diagram_to_json(d);
        CHECK(diagram_from_json(text) == d);
        CHECK(diagram_to_json(diagram_from_json(text)) == text);
    }
    CHECK_THROWS_AS(diagram_from_json("{}"), ParseError);
    CHECK_THROWS_AS(diagram_from_json("not json"), ParseError);
}

TEST_CASE("PD write round-trip on table diagrams") {
    for (const auto& d :
         {fig8(), generate_braid_closure({1, 1, 1}, 2),
          generate_braid_closure({1, 1}, 2), generate_braid_closure({-1, 2, -1, 2, -1}, 3)}) {
        CHECK(parse_pd(write_pd(d)) == d);
    }
}

TEST_CASE("insert_twist adds one kink in place") {
    LinkDiagram d = generate_braid_closure({1, 1, 1}, 2);
    for (Sign s : {Sign::Positive, Sign::Negative}) {
        LinkDiagram t = insert_twist(d, 2, s);
        CHECK(t.crossing_count() == d.crossing_count() + 1);
        CHECK(t.arc_count() == d.arc_count() + 2);
        CHECK(t.writhe() == d.writhe() + sign_value(s));
        CHECK(testutil::component_count_oracle(t) ==
              testutil::component_count_oracle(d));
        auto back = t.untwist_and_strip();
        CHECK(back.twists_removed == 1);
    }
    CHECK_THROWS_AS(insert_twist(d, 99, Sign::Positive), ValidationError);
}

TEST_CASE("slot invariant violations are rejected") {
    // two arcs claiming the same slot
    std::vector<Sign> signs{Sign::Positive};
    std::vector<Arc> arcs{
        Arc{{0, Slot::UnderOut}, {0, Slot::OverIn}},
        Arc{{0, Slot::UnderOut}, {0, Slot::UnderIn}},
    };
    CHECK_THROWS_AS(LinkDiagram::from_parts(signs, arcs), ValidationError);
    // arc count off
    CHECK_THROWS_AS(LinkDiagram::from_parts({Sign::Positive}, {}), ValidationError);
}
