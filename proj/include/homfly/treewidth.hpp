#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homfly/link.hpp"

namespace homfly {

enum class Heuristic { MinDegree, MinFill };

/// Tree decomposition of a crossing graph: an undirected tree of bags.
struct TreeDecomposition {
    std::vector<std::vector<CrossingId>> bags;     // sorted contents
    std::vector<std::pair<int, int>> tree_edges;   // between bag indices
};

/// Width = max bag size - 1 (-1 for a single empty bag).
int width(const TreeDecomposition& td);

struct Violation {
    enum class Kind { MissingVertex, UncoveredEdge, DisconnectedTrace };
    Kind kind;
    CrossingId vertex = 0;
    ArcId arc = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

/// Checks the three decomposition conditions exhaustively: every vertex in
/// some bag, every edge's endpoints co-bagged, every vertex's bags forming a
/// connected subtree.
ValidationReport validate(const TreeDecomposition& td, const DiagramGraph& g);

/// Greedy elimination-ordering decomposition.  Parallel edges collapse to a
/// single adjacency; the input graph must be loop-free.  Deterministic:
/// ties break toward the smallest crossing id.
TreeDecomposition greedy_decomposition(const DiagramGraph& g, Heuristic h);

enum class BagType : std::uint8_t { Leaf, Introduce, Forget, Join };

struct NiceNode {
    BagType type;
    std::vector<CrossingId> bag;  // sorted
    int child1 = -1;
    int child2 = -1;
    /// The introduced / forgotten vertex, or the single vertex of a leaf bag.
    CrossingId vertex = 0;
};

enum class CrossingStatus : std::uint8_t { Unvisited, Current, Forgotten };

/// Rooted nice tree decomposition: empty root, singleton leaves, and
/// introduce / forget / join interior bags.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
    std::size_t vertex_count = 0;

    std::vector<int> postorder;            // every node after its children
    std::vector<int> forget_node;          // by crossing: its unique forget bag
    std::vector<std::vector<bool>> in_subtree;  // [node][crossing]

    bool in_bag(int node, CrossingId c) const;
    CrossingStatus status(int node, CrossingId c) const;
    int width() const;
};

/// Converts a valid decomposition to nice form: same graph, same width,
/// empty root, one Forget node per vertex.
NiceTreeDecomposition make_nice(const TreeDecomposition& td, const DiagramGraph& g);

/// Checks Definition-level shape constraints plus the underlying
/// decomposition conditions and the linear bag-count bound.
ValidationReport validate_nice(const NiceTreeDecomposition& ntd, const DiagramGraph& g);

/// Decomposition JSON for CLI output and debugging (not a stable format).
std::string nice_to_json(const NiceTreeDecomposition& ntd);

}  // namespace homfly
