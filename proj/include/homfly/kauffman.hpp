#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homfly/link.hpp"
#include "homfly/poly.hpp"

namespace homfly {

/// Total order on the arcs of a diagram, driving where traversals restart.
/// Any bijection ArcId -> rank is legal; the computed polynomial does not
/// depend on the choice.
struct ArcOrder {
    std::vector<std::uint32_t> rank;

    static ArcOrder identity(std::size_t arc_count);
    static ArcOrder shuffled(std::size_t arc_count, std::uint64_t seed);

    bool is_permutation() const;
};

/// Counters describing one leaf of the skein-template decision tree.
struct LeafStats {
    int splices = 0;           ///< t: splices on this branch
    int negative_splices = 0;  ///< t_-: splices at negative crossings
    int writhe_modified = 0;   ///< w: writhe after switching/splicing
    int writhe_original = 0;   ///< w0: writhe of the input diagram
    int components = 0;        ///< c: components of the modified link
};

/// The monomial (-1)^{t_-} z^t alpha^{w-w0} delta^{c-1} of one leaf.
TriLaurent leaf_term(const LeafStats& s);

struct KauffmanStats {
    std::uint64_t leaves = 0;
    std::size_t peak_journal = 0;  ///< peak undo-stack size (stays O(n))
    int max_fork_depth = 0;
    double wall_ms = 0.0;
};

struct KauffmanOptions {
    int threads = 1;
    /// Called once per leaf visited.  Only honored with threads == 1.
    std::function<void(const LeafStats&, const TriLaurent&)> leaf_observer;
};

struct KauffmanResult {
    BiLaurent polynomial;
    /// Sum of leaf terms with delta still symbolic.  Unlike the expanded
    /// polynomial this depends on the arc order.
    TriLaurent delta_sum;
    KauffmanStats stats;
};

/// Runs the full decision-tree traversal: pass over-crossings, fork
/// (splice | switch) at first under-encounters, pass on second encounters,
/// restart at the lowest untraversed arc when a component closes.  Splices
/// and switches are applied and rolled back on an undo stack, so a run uses
/// memory linear in the diagram size.
KauffmanResult homfly_kauffman_run(const LinkDiagram& d, const ArcOrder& order,
                                   const KauffmanOptions& options = {});

BiLaurent homfly_kauffman(const LinkDiagram& d);
BiLaurent homfly_kauffman(const LinkDiagram& d, const ArcOrder& order);

/// Number of decision-tree leaves actually visited; always <= 2^n.
std::uint64_t leaf_count(const LinkDiagram& d, const ArcOrder& order);

}  // namespace homfly
