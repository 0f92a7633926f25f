#include <cstdlib>
#include <optional>

#include "homfly/errors.hpp"
#include "homfly/link.hpp"

namespace homfly {

// Strands run top to bottom; positions are 0-based.  For a positive letter
// sigma_g the strand entering at position g passes over the strand entering
// at position g-1 (they swap places); for a negative letter the left strand
// passes over.  This makes the closure of sigma_1^3 the all-positive trefoil.
LinkDiagram generate_braid_closure(const std::vector<int>& word, int strands) {
    if (strands < 2) throw BadGeneratorIndexError("need at least 2 strands");
    for (int letter : word) {
        int g = std::abs(letter);
        if (letter == 0 || g >= strands)
            throw BadGeneratorIndexError("generator index " + std::to_string(letter) +
                                         " out of range for " +
                                         std::to_string(strands) + " strands");
    }

    std::vector<Sign> signs;
    signs.reserve(word.size());
    std::vector<Arc> arcs;
    std::vector<std::optional<EndPoint>> pending_out(strands);  // open strand below
    std::vector<std::optional<EndPoint>> first_in(strands);     // where it first dove in

    auto feed = [&](int pos, EndPoint in) {
        if (pending_out[pos])
            arcs.push_back(Arc{*pending_out[pos], in});
        else
            first_in[pos] = in;
    };

    for (std::size_t k = 0; k < word.size(); ++k) {
        CrossingId c = static_cast<CrossingId>(k);
        int g = std::abs(word[k]);
        int i = g - 1, j = g;
        bool positive = word[k] > 0;
        signs.push_back(positive ? Sign::Positive : Sign::Negative);
        if (positive) {
            feed(i, {c, Slot::UnderIn});
            feed(j, {c, Slot::OverIn});
            pending_out[i] = EndPoint{c, Slot::OverOut};   // over strand exits left
            pending_out[j] = EndPoint{c, Slot::UnderOut};  // under strand exits right
        } else {
            feed(i, {c, Slot::OverIn});
            feed(j, {c, Slot::UnderIn});
            pending_out[i] = EndPoint{c, Slot::UnderOut};
            pending_out[j] = EndPoint{c, Slot::OverOut};
        }
    }

    int zero_components = 0;
    for (int p = 0; p < strands; ++p) {
        if (pending_out[p]) {
            arcs.push_back(Arc{*pending_out[p], *first_in[p]});
        } else {
            ++zero_components;  // strand never crossed anything
        }
    }

    return LinkDiagram::from_parts(std::move(signs), std::move(arcs), zero_components);
}

}  // namespace homfly
