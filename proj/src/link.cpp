#include "homfly/link.hpp"

#include <algorithm>
#include <optional>

#include "homfly/errors.hpp"

namespace homfly {

namespace {

constexpr ArcId kNoArc = static_cast<ArcId>(-1);

Slot swap_strands(Slot s) {
    switch (s) {
        case Slot::UnderIn: return Slot::OverIn;
        case Slot::UnderOut: return Slot::OverOut;
        case Slot::OverIn: return Slot::UnderIn;
        case Slot::OverOut: return Slot::UnderOut;
    }
    return s;
}

}  // namespace

LinkDiagram LinkDiagram::from_parts(std::vector<Sign> signs, std::vector<Arc> arcs,
                                    int zero_components_removed) {
    LinkDiagram d;
    d.signs_ = std::move(signs);
    d.arcs_ = std::move(arcs);
    d.zero_components_removed_ = zero_components_removed;
    if (zero_components_removed < 0)
        throw ValidationError("negative zero-component count");
    if (d.arcs_.size() != 2 * d.signs_.size())
        throw ValidationError("diagram must have exactly 2 arcs per crossing (got " +
                              std::to_string(d.arcs_.size()) + " arcs, " +
                              std::to_string(d.signs_.size()) + " crossings)");
    d.rebuild_slot_index();
    return d;
}

void LinkDiagram::rebuild_slot_index() {
    slot_arcs_.assign(signs_.size(), {kNoArc, kNoArc, kNoArc, kNoArc});
    auto claim = [&](const EndPoint& ep, ArcId a, bool as_source) {
        if (ep.crossing >= signs_.size())
            throw ValidationError("arc endpoint references unknown crossing " +
                                  std::to_string(ep.crossing));
        if (as_source != !is_in_slot(ep.slot))
            throw ValidationError(as_source ? "arc sourced at an In slot"
                                            : "arc targeting an Out slot");
        ArcId& slot = slot_arcs_[ep.crossing][static_cast<int>(ep.slot)];
        if (slot != kNoArc)
            throw ValidationError("slot used by two arcs at crossing " +
                                  std::to_string(ep.crossing));
        slot = a;
    };
    for (ArcId a = 0; a < arcs_.size(); ++a) {
        claim(arcs_[a].from, a, true);
        claim(arcs_[a].to, a, false);
    }
    for (CrossingId c = 0; c < signs_.size(); ++c)
        for (int s = 0; s < 4; ++s)
            if (slot_arcs_[c][s] == kNoArc)
                throw ValidationError("unused slot at crossing " + std::to_string(c));
}

void LinkDiagram::check_crossing(CrossingId c) const {
    if (c >= signs_.size())
        throw UnknownCrossingError("unknown crossing " + std::to_string(c));
}

Sign LinkDiagram::sign(CrossingId c) const {
    check_crossing(c);
    return signs_[c];
}

int LinkDiagram::writhe() const {
    int w = 0;
    for (Sign s : signs_) w += sign_value(s);
    return w;
}

ArcId LinkDiagram::arc_at(CrossingId c, Slot s) const {
    check_crossing(c);
    return slot_arcs_[c][static_cast<int>(s)];
}

ArcId LinkDiagram::pass_through(CrossingId c, Slot s) const {
    check_crossing(c);
    Slot out = (s == Slot::UnderIn) ? Slot::UnderOut : Slot::OverOut;
    return slot_arcs_[c][static_cast<int>(out)];
}

std::size_t LinkDiagram::components() const {
    std::vector<bool> seen(arcs_.size(), false);
    std::size_t count = 0;
    for (ArcId start = 0; start < arcs_.size(); ++start) {
        if (seen[start]) continue;
        ++count;
        ArcId a = start;
        while (!seen[a]) {
            seen[a] = true;
            a = pass_through(arcs_[a].to.crossing, arcs_[a].to.slot);
        }
    }
    return count;
}

LinkDiagram LinkDiagram::switch_crossing(CrossingId c) const {
    check_crossing(c);
    std::vector<Sign> signs = signs_;
    signs[c] = opposite(signs[c]);
    std::vector<Arc> arcs = arcs_;
    for (Arc& a : arcs) {
        if (a.from.crossing == c) a.from.slot = swap_strands(a.from.slot);
        if (a.to.crossing == c) a.to.slot = swap_strands(a.to.slot);
    }
    return from_parts(std::move(signs), std::move(arcs), zero_components_removed_);
}

namespace {

struct ScratchArc {
    EndPoint from, to;
    bool alive = true;
};

// Removes crossing c by joining its two strand passages.  crossed = false
// joins UnderIn->UnderOut and OverIn->OverOut (plain pass-through, used when
// untwisting); crossed = true joins UnderIn->OverOut and OverIn->UnderOut
// (the oriented smoothing).  Returns the number of crossingless circles the
// removal produced.
int remove_crossing(std::vector<ScratchArc>& arcs, CrossingId c, bool crossed) {
    auto find_target = [&](Slot s) -> ScratchArc& {
        for (auto& a : arcs)
            if (a.alive && a.to == EndPoint{c, s}) return a;
        throw InternalError("missing arc at in-slot during crossing removal");
    };
    auto find_source = [&](Slot s) -> ScratchArc& {
        for (auto& a : arcs)
            if (a.alive && a.from == EndPoint{c, s}) return a;
        throw InternalError("missing arc at out-slot during crossing removal");
    };
    const std::pair<Slot, Slot> passages[2] = {
        {Slot::UnderIn, crossed ? Slot::OverOut : Slot::UnderOut},
        {Slot::OverIn, crossed ? Slot::UnderOut : Slot::OverOut},
    };
    int circles = 0;
    for (const auto& [sin, sout] : passages) {
        ScratchArc& x = find_target(sin);
        ScratchArc& y = find_source(sout);
        if (&x == &y) {
            x.alive = false;
            ++circles;
        } else {
            x.to = y.to;
            y.alive = false;
        }
    }
    return circles;
}

LinkDiagram compact(const std::vector<Sign>& signs,
                    const std::vector<ScratchArc>& arcs,
                    const std::vector<bool>& crossing_alive, int zero_removed) {
    std::vector<CrossingId> cross_map(signs.size(), 0);
    std::vector<Sign> new_signs;
    for (CrossingId c = 0; c < signs.size(); ++c) {
        if (!crossing_alive[c]) continue;
        cross_map[c] = static_cast<CrossingId>(new_signs.size());
        new_signs.push_back(signs[c]);
    }
    std::vector<Arc> new_arcs;
    for (const auto& a : arcs) {
        if (!a.alive) continue;
        new_arcs.push_back(Arc{{cross_map[a.from.crossing], a.from.slot},
                               {cross_map[a.to.crossing], a.to.slot}});
    }
    return LinkDiagram::from_parts(std::move(new_signs), std::move(new_arcs),
                                   zero_removed);
}

}  // namespace

LinkDiagram LinkDiagram::splice(CrossingId c) const {
    check_crossing(c);
    std::vector<ScratchArc> arcs;
    arcs.reserve(arcs_.size());
    for (const Arc& a : arcs_) arcs.push_back({a.from, a.to, true});
    int circles = remove_crossing(arcs, c, /*crossed=*/true);
    std::vector<bool> alive(signs_.size(), true);
    alive[c] = false;
    return compact(signs_, arcs, alive, zero_components_removed_ + circles);
}

UntwistResult LinkDiagram::untwist_and_strip() const {
    std::vector<ScratchArc> arcs;
    arcs.reserve(arcs_.size());
    for (const Arc& a : arcs_) arcs.push_back({a.from, a.to, true});
    std::vector<bool> alive(signs_.size(), true);

    UntwistResult res;
    res.zero_components = 0;
    for (;;) {
        std::optional<CrossingId> twisted;
        for (const auto& a : arcs) {
            if (a.alive && a.from.crossing == a.to.crossing &&
                (!twisted || a.from.crossing < *twisted)) {
                twisted = a.from.crossing;
            }
        }
        if (!twisted) break;
        res.zero_components += remove_crossing(arcs, *twisted, /*crossed=*/false);
        alive[*twisted] = false;
        ++res.twists_removed;
    }
    res.diagram = compact(signs_, arcs, alive,
                          zero_components_removed_ + res.zero_components);
    return res;
}

DiagramGraph LinkDiagram::diagram_graph() const {
    DiagramGraph g;
    g.vertices = signs_.size();
    g.edges.reserve(arcs_.size());
    for (ArcId a = 0; a < arcs_.size(); ++a)
        g.edges.push_back({a, arcs_[a].from.crossing, arcs_[a].to.crossing});
    return g;
}

LinkDiagram insert_twist(const LinkDiagram& d, ArcId a, Sign handedness) {
    if (a >= d.arc_count())
        throw ValidationError("unknown arc " + std::to_string(a));
    std::vector<Sign> signs = d.signs();
    std::vector<Arc> arcs = d.arcs();
    CrossingId c = static_cast<CrossingId>(signs.size());
    signs.push_back(handedness);
    EndPoint old_to = arcs[a].to;
    if (handedness == Sign::Positive) {
        // strand dives under itself: in via UnderIn, loop UnderOut -> OverIn,
        // out via OverOut
        arcs[a].to = {c, Slot::UnderIn};
        arcs.push_back(Arc{{c, Slot::UnderOut}, {c, Slot::OverIn}});
        arcs.push_back(Arc{{c, Slot::OverOut}, old_to});
    } else {
        arcs[a].to = {c, Slot::OverIn};
        arcs.push_back(Arc{{c, Slot::OverOut}, {c, Slot::UnderIn}});
        arcs.push_back(Arc{{c, Slot::UnderOut}, old_to});
    }
    return LinkDiagram::from_parts(std::move(signs), std::move(arcs),
                                   d.zero_components_removed());
}

}  // namespace homfly
