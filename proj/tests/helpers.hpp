#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homfly/link.hpp"
#include "homfly/poly.hpp"

namespace testutil {

inline const char* kFigureEightPd =
    "X(4,2,5,1)\n"
    "X(2,7,3,8)\n"
    "X(6,3,7,4)\n"
    "X(8,6,1,5)\n";

inline std::string fixture_dir() {
    const char* env = std::getenv("HOMFLY_FIXTURES");
    return env ? env : "tests/fixtures";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Independent component counter: follows strand continuity over the raw arc
// records, without going through LinkDiagram's traversal helpers.
inline std::size_t component_count_oracle(const homfly::LinkDiagram& d) {
    using namespace homfly;
    std::map<std::pair<CrossingId, int>, ArcId> source_at;
    for (ArcId a = 0; a < d.arc_count(); ++a) {
        const Arc& arc = d.arc(a);
        source_at[{arc.from.crossing, static_cast<int>(arc.from.slot)}] = a;
    }
    std::vector<bool> seen(d.arc_count(), false);
    std::size_t components = 0;
    for (ArcId start = 0; start < d.arc_count(); ++start) {
        if (seen[start]) continue;
        ++components;
        ArcId a = start;
        while (!seen[a]) {
            seen[a] = true;
            const Arc& arc = d.arc(a);
            Slot out = arc.to.slot == Slot::UnderIn ? Slot::UnderOut : Slot::OverOut;
            a = source_at.at({arc.to.crossing, static_cast<int>(out)});
        }
    }
    return components;
}

// Deterministic random braid word corpus shared across tests.
inline std::vector<int> random_word(std::mt19937_64& rng, int strands, int length) {
    std::uniform_int_distribution<int> gen(1, strands - 1);
    std::uniform_int_distribution<int> flip(0, 1);
    std::vector<int> word(length);
    for (auto& w : word) w = gen(rng) * (flip(rng) ? 1 : -1);
    return word;
}

inline homfly::BiLaurent random_bilaurent(std::mt19937_64& rng, int max_terms = 6) {
    std::uniform_int_distribution<int> e(-5, 5), c(-9, 9), n(1, max_terms);
    homfly::BiLaurent p;
    int terms = n(rng);
    for (int i = 0; i < terms; ++i)
        p.add_term({e(rng), e(rng)}, homfly::Int(c(rng)));
    return p;
}

inline homfly::TriLaurent random_trilaurent(std::mt19937_64& rng, int min_delta = -3,
                                            int max_terms = 6) {
    std::uniform_int_distribution<int> e(-5, 5), ed(min_delta, 5), c(-9, 9),
        n(1, max_terms);
    homfly::TriLaurent p;
    int terms = n(rng);
    for (int i = 0; i < terms; ++i)
        p.add_term({e(rng), e(rng), ed(rng)}, homfly::Int(c(rng)));
    return p;
}

// Quadratic-time reference multiplication over flat term lists, summed by
// sorting; an independent route from the map-accumulating operator*.
inline homfly::BiLaurent naive_mul(const homfly::BiLaurent& a,
                                   const homfly::BiLaurent& b) {
    using namespace homfly;
    std::vector<std::pair<BiKey, Int>> products;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms())
            products.push_back({BiKey{ka.ea + kb.ea, ka.ez + kb.ez}, ca * cb});
    std::sort(products.begin(), products.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    BiLaurent out;
    std::size_t i = 0;
    while (i < products.size()) {
        Int sum = 0;
        std::size_t j = i;
        while (j < products.size() && products[j].first == products[i].first)
            sum += products[j++].second;
        out.add_term(products[i].first, sum);
        i = j;
    }
    return out;
}

}  // namespace testutil
