#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "homfly/kauffman.hpp"
#include "homfly/link.hpp"
#include "homfly/poly.hpp"
#include "homfly/treewidth.hpp"

namespace homfly {

/// Matched pair of arcs in a configuration; a pair with a == b is trivial.
using ConfigPair = std::pair<ArcId, ArcId>;

/// Ordered sequence of matched pairs (a_1, b_1, ..., a_u, b_u): the a_i are
/// exactly the arcs from current crossings into current-or-forgotten ones,
/// the b_i the reverse, and arcs between two current crossings sit in
/// trivial pairs.  This is the DP state at a bag.
using Configuration = std::vector<ConfigPair>;

/// One bag's association from configurations to their evaluations.  Sparse:
/// only realizable configurations are ever stored.
using EvaluationTable = std::map<Configuration, TriLaurent>;

/// Arc order induced by a nice tree decomposition: arcs ranked by the
/// depth-first preorder position of the forget bag of their head crossing.
/// `variant` flips the child visit order and/or the intra-bag tie direction;
/// every variant satisfies both ordering conditions, and feeding any of them
/// to the Kauffman traversal yields the same polynomial.
struct TreeArcOrder {
    ArcOrder order;
    std::vector<int> forget_node;  ///< by crossing: node forgetting it
};

TreeArcOrder tree_arc_order(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                            unsigned variant = 0);

struct DpStats {
    int width = -1;
    std::size_t bags = 0;
    std::size_t peak_configs = 0;
    std::size_t total_configs = 0;
    std::size_t joins_processed = 0;
    double wall_ms = 0.0;
};

struct FptOptions {
    Heuristic heuristic = Heuristic::MinDegree;
    /// Hard cap on realized table entries; exceeding it raises
    /// WidthBudgetExceededError instead of exhausting memory.
    std::uint64_t table_budget = 10'000'000;
    int threads = 1;
    /// Validate every stored configuration against the definition (slow;
    /// meant for tests).
    bool validate_configs = false;
};

struct FptResult {
    BiLaurent polynomial;
    DpStats stats;
};

/// Full pipeline: untwist and strip, decompose the crossing graph, convert
/// to nice form, run the per-bag dynamic program, extract the root
/// evaluation, restore stripped-circle factors and expand delta.  Agrees
/// with homfly_kauffman on every diagram.
FptResult homfly_fpt(const LinkDiagram& d, const FptOptions& options = {});

namespace fpt_detail {

/// Single-bag transitions, exposed for direct testing.  `d` must be the
/// preprocessed (loop-free) diagram the decomposition was built from.
EvaluationTable process_leaf(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                             int node, int w0);
EvaluationTable process_introduce(const LinkDiagram& d,
                                  const NiceTreeDecomposition& ntd, int node,
                                  const EvaluationTable& child);
EvaluationTable process_join(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                             int node, const EvaluationTable& left,
                             const EvaluationTable& right, int w0, int threads = 1);
EvaluationTable process_forget(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                               int node, const EvaluationTable& child);

/// Definition-level check of one configuration at one bag.
void validate_configuration(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                            int node, const Configuration& kappa);

}  // namespace fpt_detail

}  // namespace homfly
