#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "homfly/errors.hpp"
#include "homfly/link.hpp"

namespace homfly {

// PD convention: X(a,b,c,d) lists the four incident arc labels
// counterclockwise starting from the incoming under-strand, so a = UnderIn
// and c = UnderOut.  The over strand runs d -> b at a positive crossing and
// b -> d at a negative one; which of the two holds is inferred globally from
// the requirement that every label is used once as a source and once as a
// target.

namespace {

struct Occurrence {
    std::size_t crossing;
    int pos;  // 0..3 = a,b,c,d
};

// In/Out polarity of tuple position `pos` given the crossing's orientation
// bit (neg = true means the over strand runs b -> d, i.e. the crossing is
// negative).
std::optional<bool> fixed_in(int pos) {
    if (pos == 0) return true;   // a = UnderIn
    if (pos == 2) return false;  // c = UnderOut
    return std::nullopt;
}

bool var_in(int pos, bool neg) { return pos == 1 ? neg : !neg; }

Slot slot_of(int pos, bool neg) {
    switch (pos) {
        case 0: return Slot::UnderIn;
        case 1: return neg ? Slot::OverIn : Slot::OverOut;
        case 2: return Slot::UnderOut;
        default: return neg ? Slot::OverOut : Slot::OverIn;
    }
}

}  // namespace

LinkDiagram parse_pd(const std::string& text) {
    std::vector<std::array<long, 4>> tuples;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        };
        skip_ws();
        if (i == line.size()) continue;
        auto fail = [&](const std::string& what) -> ParseError {
            return ParseError("line " + std::to_string(lineno) + ": " + what);
        };
        if (line[i] != 'X') throw fail("expected X(a,b,c,d)");
        ++i;
        skip_ws();
        if (i == line.size() || line[i] != '(') throw fail("expected '('");
        ++i;
        std::array<long, 4> tup{};
        for (int k = 0; k < 4; ++k) {
            skip_ws();
            std::size_t start = i;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
            if (i == start) throw fail("expected an arc label");
            tup[k] = std::stol(line.substr(start, i - start));
            if (tup[k] <= 0) throw fail("arc labels must be positive");
            skip_ws();
            char expect = (k < 3) ? ',' : ')';
            if (i == line.size() || line[i] != expect)
                throw fail(std::string("expected '") + expect + "'");
            ++i;
        }
        skip_ws();
        if (i != line.size()) throw fail("trailing characters after tuple");
        tuples.push_back(tup);
    }
    if (tuples.empty()) throw ParseError("no crossings in input");

    std::map<long, std::vector<Occurrence>> labels;
    for (std::size_t c = 0; c < tuples.size(); ++c)
        for (int pos = 0; pos < 4; ++pos)
            labels[tuples[c][pos]].push_back({c, pos});
    for (const auto& [label, occ] : labels) {
        if (occ.size() != 2)
            throw NonQuadrivalentError("arc label " + std::to_string(label) +
                                       " appears " + std::to_string(occ.size()) +
                                       " time(s), expected exactly 2");
    }

    // Infer per-crossing orientation bits: propagate forced values, then
    // parity constraints between over-only label pairs.
    const std::size_t n = tuples.size();
    std::vector<std::optional<bool>> neg(n);
    std::vector<std::vector<std::pair<std::size_t, bool>>> rel(n);  // (other, parity)
    std::vector<std::pair<std::size_t, bool>> forced;

    for (const auto& [label, occ] : labels) {
        auto in1 = fixed_in(occ[0].pos);
        auto in2 = fixed_in(occ[1].pos);
        auto conflict = [&, label = label] {
            return OrientationConflictError(
                "no consistent orientation: arc label " + std::to_string(label) +
                " cannot be both endpoints' " + (in1.value_or(true) ? "target" : "source"));
        };
        if (in1 && in2) {
            if (*in1 == *in2) throw conflict();
        } else if (in1 || in2) {
            const Occurrence& fix = in1 ? occ[0] : occ[1];
            const Occurrence& var = in1 ? occ[1] : occ[0];
            bool need_in = !(in1 ? *in1 : *in2);
            // var_in(pos, neg) == need_in
            bool value = (var.pos == 1) ? need_in : !need_in;
            forced.push_back({var.crossing, value});
        } else {
            // both over slots: In differs  <=>  parity between the two bits
            // pos 1 vs 1: neg1 != neg2; 1 vs 3: neg1 == neg2; 3 vs 3: neg1 != neg2
            bool parity = (occ[0].pos == occ[1].pos);
            if (occ[0].crossing == occ[1].crossing) {
                // same crossing: 1 vs 3 is always consistent, 1 vs 1 / 3 vs 3
                // can never be (both would be In or both Out)
                if (parity) throw conflict();
                continue;
            }
            rel[occ[0].crossing].push_back({occ[1].crossing, parity});
            rel[occ[1].crossing].push_back({occ[0].crossing, parity});
        }
    }

    std::vector<std::size_t> queue;
    auto assign = [&](std::size_t c, bool value) {
        if (neg[c]) {
            if (*neg[c] != value)
                throw OrientationConflictError(
                    "no consistent orientation exists (conflict at crossing " +
                    std::to_string(c) + ")");
            return;
        }
        neg[c] = value;
        queue.push_back(c);
    };
    auto propagate = [&] {
        while (!queue.empty()) {
            std::size_t c = queue.back();
            queue.pop_back();
            for (const auto& [other, parity] : rel[c])
                assign(other, parity ? !*neg[c] : *neg[c]);
        }
    };
    for (const auto& [c, v] : forced) assign(c, v);
    propagate();
    for (std::size_t c = 0; c < n; ++c) {
        if (!neg[c]) {
            // Orientation of an always-over component is not determined by
            // the labels; default it to the positive convention.
            assign(c, false);
            propagate();
        }
    }

    std::vector<Sign> signs(n);
    for (std::size_t c = 0; c < n; ++c)
        signs[c] = *neg[c] ? Sign::Negative : Sign::Positive;

    std::vector<Arc> arcs;
    arcs.reserve(labels.size());
    for (const auto& [label, occ] : labels) {  // std::map: ascending labels
        EndPoint ep[2];
        bool in[2];
        for (int k = 0; k < 2; ++k) {
            Slot s = slot_of(occ[k].pos, *neg[occ[k].crossing]);
            ep[k] = {static_cast<CrossingId>(occ[k].crossing), s};
            in[k] = is_in_slot(s);
        }
        if (in[0] == in[1])
            throw OrientationConflictError(
                "no consistent orientation exists for arc label " +
                std::to_string(label));
        int src = in[0] ? 1 : 0;
        arcs.push_back(Arc{ep[src], ep[1 - src]});
    }

    return LinkDiagram::from_parts(std::move(signs), std::move(arcs));
}

std::string write_pd(const LinkDiagram& d) {
    std::string out;
    for (CrossingId c = 0; c < d.crossing_count(); ++c) {
        bool neg = d.sign(c) == Sign::Negative;
        ArcId a = d.arc_at(c, Slot::UnderIn);
        ArcId b = d.arc_at(c, neg ? Slot::OverIn : Slot::OverOut);
        ArcId cc = d.arc_at(c, Slot::UnderOut);
        ArcId dd = d.arc_at(c, neg ? Slot::OverOut : Slot::OverIn);
        out += "X(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
               std::to_string(cc + 1) + "," + std::to_string(dd + 1) + ")\n";
    }
    return out;
}

}  // namespace homfly
