#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace homfly {

using CrossingId = std::uint32_t;
using ArcId = std::uint32_t;

/// Strand role of an arc endpoint at a crossing.  At every crossing the
/// under strand runs UnderIn -> UnderOut and the over strand OverIn -> OverOut.
enum class Slot : std::uint8_t { UnderIn = 0, UnderOut = 1, OverIn = 2, OverOut = 3 };

inline bool is_in_slot(Slot s) { return s == Slot::UnderIn || s == Slot::OverIn; }

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
inline Sign opposite(Sign s) {
    return s == Sign::Positive ? Sign::Negative : Sign::Positive;
}

struct EndPoint {
    CrossingId crossing;
    Slot slot;
    bool operator==(const EndPoint&) const = default;
};

struct Arc {
    EndPoint from;  ///< always an Out slot
    EndPoint to;    ///< always an In slot
    bool operator==(const Arc&) const = default;
};

/// Directed 4-valent multigraph of a diagram: vertices are crossings and
/// edges are arcs.  Parallel edges and loops stay distinct, keyed by ArcId.
struct DiagramGraph {
    std::size_t vertices = 0;
    struct Edge {
        ArcId arc;
        CrossingId from, to;
        bool operator==(const Edge&) const = default;
    };
    std::vector<Edge> edges;

    bool has_loop() const {
        for (const auto& e : edges)
            if (e.from == e.to) return true;
        return false;
    }
};

struct UntwistResult;

/// An oriented link diagram: crossings with signs plus slot-level arc wiring.
/// Crossing and arc ids are dense from 0.  A diagram with n crossings has
/// exactly 2n arcs; circles stripped by surgery are only remembered through
/// zero_components_removed, since the arc model cannot hold a crossingless
/// circle.  All operations are pure: they never modify their input.
class LinkDiagram {
public:
    LinkDiagram() = default;

    /// Builds and validates a diagram.  Throws ValidationError when the slot
    /// coverage invariant fails (some slot unused or used twice, an arc
    /// sourced at an In slot, etc.).
    static LinkDiagram from_parts(std::vector<Sign> signs, std::vector<Arc> arcs,
                                  int zero_components_removed = 0);

    std::size_t crossing_count() const { return signs_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    bool empty() const { return signs_.empty(); }

    const std::vector<Sign>& signs() const { return signs_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const Arc& arc(ArcId a) const { return arcs_[a]; }
    int zero_components_removed() const { return zero_components_removed_; }

    Sign sign(CrossingId c) const;
    int writhe() const;

    /// Arc occupying the given slot: the arc sourced there for Out slots,
    /// the arc targeting it for In slots.
    ArcId arc_at(CrossingId c, Slot s) const;

    /// Arc that a traversal continues on after entering `c` through in-slot
    /// `s` and passing straight through (no splice).
    ArcId pass_through(CrossingId c, Slot s) const;

    /// Number of closed oriented strands under strand-continuity traversal.
    /// Does not include zero_components_removed.
    std::size_t components() const;

    /// Moves the upper strand beneath the lower at `c`: slot roles swap,
    /// the sign flips, strand connectivity is untouched.
    LinkDiagram switch_crossing(CrossingId c) const;

    /// Removes `c` by the oriented smoothing: UnderIn joins to OverOut and
    /// OverIn to UnderOut.  Arc count drops by 2 and crossing count by 1;
    /// circles produced by the smoothing are counted into
    /// zero_components_removed.
    LinkDiagram splice(CrossingId c) const;

    /// Repeatedly removes crossings that carry a loop arc (trivial twists),
    /// to a fixed point, stripping any crossingless circles this creates.
    /// The result's DiagramGraph is loop-free.
    UntwistResult untwist_and_strip() const;

    DiagramGraph diagram_graph() const;

    bool operator==(const LinkDiagram&) const = default;

private:
    void check_crossing(CrossingId c) const;
    void rebuild_slot_index();

    std::vector<Sign> signs_;
    std::vector<Arc> arcs_;
    int zero_components_removed_ = 0;
    // slot_arcs_[c][slot] -> ArcId, rebuilt on construction
    std::vector<std::array<ArcId, 4>> slot_arcs_;
};

struct UntwistResult {
    LinkDiagram diagram;
    int twists_removed = 0;
    int zero_components = 0;  ///< circles stripped by this call
};

/// Parses planar-diagram text: one `X(a,b,c,d)` per line, labels listed
/// counterclockwise from the incoming under-strand, `#` comments and blank
/// lines ignored.  Arc orientations of the over strands are inferred and
/// validated globally.
LinkDiagram parse_pd(const std::string& text);

/// Writes the diagram back out as PD text (labels are ArcId + 1).
std::string write_pd(const LinkDiagram& d);

/// JSON diagram serialization; parse(serialize(d)) == d, bit-exact.
std::string diagram_to_json(const LinkDiagram& d);
LinkDiagram diagram_from_json(const std::string& text);

/// Closure of a braid word on `strands` strands.  Letters are signed
/// generator indices (+g / -g, 1 <= g < strands).  Crossing count equals the
/// word length; strand positions never touched by a letter close into
/// crossingless circles counted in zero_components_removed.
LinkDiagram generate_braid_closure(const std::vector<int>& word, int strands);

/// Inserts a trivial twist (an R1 kink of the given handedness) in the
/// middle of arc `a`.  Adds one crossing and two arcs; the underlying link
/// is unchanged.
LinkDiagram insert_twist(const LinkDiagram& d, ArcId a, Sign handedness);

}  // namespace homfly
