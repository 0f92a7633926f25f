#include "homfly/treewidth.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "homfly/errors.hpp"

namespace homfly {

int width(const TreeDecomposition& td) {
    int w = -1;
    for (const auto& b : td.bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

std::string ValidationReport::describe() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.message;
    }
    return out.empty() ? "ok" : out;
}

namespace {

std::vector<std::vector<int>> tree_adjacency(std::size_t n,
                                             const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

bool bag_contains(const std::vector<CrossingId>& bag, CrossingId v) {
    return std::binary_search(bag.begin(), bag.end(), v);
}

}  // namespace

ValidationReport validate(const TreeDecomposition& td, const DiagramGraph& g) {
    ValidationReport rep;
    auto add = [&](Violation::Kind k, CrossingId vertex, ArcId arc, std::string msg) {
        rep.violations.push_back({k, vertex, arc, std::move(msg)});
    };
    if (td.bags.empty()) {
        add(Violation::Kind::MissingVertex, 0, 0,
            "decomposition has no bags (at least one empty bag required)");
        return rep;
    }
    const std::size_t m = td.bags.size();
    for (const auto& [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= m ||
            static_cast<std::size_t>(b) >= m) {
            add(Violation::Kind::DisconnectedTrace, 0, 0, "tree edge out of range");
            return rep;
        }
    }
    auto adj = tree_adjacency(m, td.tree_edges);
    // must be a tree: connected with m-1 edges
    if (td.tree_edges.size() + 1 != m) {
        add(Violation::Kind::DisconnectedTrace, 0, 0,
            "bag graph has " + std::to_string(td.tree_edges.size()) +
                " edges for " + std::to_string(m) + " bags; not a tree");
    } else {
        std::vector<bool> seen(m, false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        std::size_t reached = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = true;
                    ++reached;
                    q.push(y);
                }
        }
        if (reached != m)
            add(Violation::Kind::DisconnectedTrace, 0, 0, "bag tree is disconnected");
    }

    // (i) vertex coverage
    for (CrossingId v = 0; v < g.vertices; ++v) {
        bool found = false;
        for (const auto& b : td.bags)
            if (bag_contains(b, v)) {
                found = true;
                break;
            }
        if (!found)
            add(Violation::Kind::MissingVertex, v, 0,
                "vertex " + std::to_string(v) + " is in no bag");
    }
    // (ii) edge coverage
    for (const auto& e : g.edges) {
        bool found = false;
        for (const auto& b : td.bags)
            if (bag_contains(b, e.from) && bag_contains(b, e.to)) {
                found = true;
                break;
            }
        if (!found)
            add(Violation::Kind::UncoveredEdge, e.from, e.arc,
                "edge (arc " + std::to_string(e.arc) + ") between " +
                    std::to_string(e.from) + " and " + std::to_string(e.to) +
                    " shares no bag");
    }
    // (iii) connected traces
    for (CrossingId v = 0; v < g.vertices; ++v) {
        int first = -1;
        std::size_t total = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (bag_contains(td.bags[i], v)) {
                if (first < 0) first = static_cast<int>(i);
                ++total;
            }
        if (first < 0 || total == 0) continue;
        std::vector<bool> seen(m, false);
        std::queue<int> q;
        q.push(first);
        seen[first] = true;
        std::size_t reached = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (!seen[y] && bag_contains(td.bags[y], v)) {
                    seen[y] = true;
                    ++reached;
                    q.push(y);
                }
            }
        }
        if (reached != total)
            add(Violation::Kind::DisconnectedTrace, v, 0,
                "bags containing vertex " + std::to_string(v) +
                    " do not form a connected subtree");
    }
    return rep;
}

TreeDecomposition greedy_decomposition(const DiagramGraph& g, Heuristic h) {
    if (g.has_loop())
        throw ValidationError("greedy decomposition requires a loop-free graph");
    const std::size_t n = g.vertices;
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<CrossingId>> adj(n);
    for (const auto& e : g.edges) {
        if (e.from != e.to) {
            adj[e.from].insert(e.to);
            adj[e.to].insert(e.from);
        }
    }

    std::vector<bool> alive(n, true);
    std::vector<int> elim_index(n, -1);
    std::vector<std::vector<CrossingId>> elim_neighbors(n);

    auto fill_in = [&](CrossingId v) {
        long fill = 0;
        for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
            for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                if (!adj[*it].count(*jt)) ++fill;
        return fill;
    };

    for (std::size_t k = 0; k < n; ++k) {
        CrossingId best = 0;
        long best_score = std::numeric_limits<long>::max();
        for (CrossingId v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            long score = (h == Heuristic::MinDegree)
                             ? static_cast<long>(adj[v].size())
                             : fill_in(v);
            if (score < best_score) {
                best_score = score;
                best = v;
            }
        }
        CrossingId v = best;
        elim_index[v] = static_cast<int>(k);
        elim_neighbors[v].assign(adj[v].begin(), adj[v].end());
        std::vector<CrossingId> bag = elim_neighbors[v];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        for (CrossingId x : elim_neighbors[v])
            for (CrossingId y : elim_neighbors[v])
                if (x < y) {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
        for (CrossingId x : elim_neighbors[v]) adj[x].erase(v);
        adj[v].clear();
        alive[v] = false;
    }

    // Bag k hangs off the bag of its first-eliminated neighbor; component
    // roots are chained so the result is a single tree.
    std::vector<int> roots;
    std::vector<CrossingId> by_elim(n);
    for (CrossingId v = 0; v < n; ++v) by_elim[elim_index[v]] = v;
    for (std::size_t k = 0; k < n; ++k) {
        CrossingId v = by_elim[k];
        int parent_elim = std::numeric_limits<int>::max();
        for (CrossingId u : elim_neighbors[v])
            parent_elim = std::min(parent_elim, elim_index[u]);
        if (parent_elim == std::numeric_limits<int>::max())
            roots.push_back(static_cast<int>(k));
        else
            td.tree_edges.push_back({static_cast<int>(k), parent_elim});
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.tree_edges.push_back({roots[i - 1], roots[i]});
    return td;
}

bool NiceTreeDecomposition::in_bag(int node, CrossingId c) const {
    return bag_contains(nodes[node].bag, c);
}

CrossingStatus NiceTreeDecomposition::status(int node, CrossingId c) const {
    if (in_bag(node, c)) return CrossingStatus::Current;
    if (in_subtree[node][c]) return CrossingStatus::Forgotten;
    return CrossingStatus::Unvisited;
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
    return w;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td, const DiagramGraph& g) {
    NiceTreeDecomposition ntd;
    ntd.vertex_count = g.vertices;
    if (g.vertices == 0) {
        // Degenerate: one empty bag.  The DP never runs on this; callers
        // handle crossingless diagrams before decomposing.
        ntd.nodes.push_back({BagType::Leaf, {}, -1, -1, 0});
        ntd.root = 0;
        ntd.postorder = {0};
        ntd.in_subtree = {std::vector<bool>(0)};
        return ntd;
    }
    if (td.bags.empty()) throw ValidationError("decomposition has no bags");

    auto adj = tree_adjacency(td.bags.size(), td.tree_edges);

    auto add_node = [&](BagType type, std::vector<CrossingId> bag, int child,
                        CrossingId vertex) {
        ntd.nodes.push_back({type, std::move(bag), child, -1, vertex});
        return static_cast<int>(ntd.nodes.size() - 1);
    };

    // Morphs the chain topped by `node` (with bag `from`) into bag `to` by
    // forgetting from\to then introducing to\from, one vertex per node.
    auto transition = [&](int node, const std::vector<CrossingId>& from,
                          const std::vector<CrossingId>& to) {
        std::vector<CrossingId> cur = from;
        for (CrossingId v : from) {
            if (bag_contains(to, v)) continue;
            cur.erase(std::find(cur.begin(), cur.end(), v));
            node = add_node(BagType::Forget, cur, node, v);
        }
        for (CrossingId v : to) {
            if (bag_contains(from, v)) continue;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            node = add_node(BagType::Introduce, cur, node, v);
        }
        return node;
    };

    // Builds the nice subtree for td node `x`; returns a nice node whose bag
    // equals td.bags[x], or -1 for an all-empty subtree.
    std::function<int(int, int)> build = [&](int x, int parent) -> int {
        std::vector<int> kids;
        for (int y : adj[x]) {
            if (y == parent) continue;
            int sub = build(y, x);
            if (sub < 0) continue;
            kids.push_back(transition(sub, td.bags[y], td.bags[x]));
        }
        if (kids.empty()) {
            const auto& bag = td.bags[x];
            if (bag.empty()) return -1;
            std::vector<CrossingId> cur = {bag[0]};
            int node = add_node(BagType::Leaf, cur, -1, bag[0]);
            for (std::size_t i = 1; i < bag.size(); ++i) {
                cur.push_back(bag[i]);  // bag sorted: stays sorted
                node = add_node(BagType::Introduce, cur, node, bag[i]);
            }
            return node;
        }
        int top = kids.back();
        for (int i = static_cast<int>(kids.size()) - 2; i >= 0; --i) {
            ntd.nodes.push_back({BagType::Join, td.bags[x], kids[i], top, 0});
            top = static_cast<int>(ntd.nodes.size() - 1);
        }
        return top;
    };

    int top = build(0, -1);
    if (top < 0) throw ValidationError("decomposition covers no vertices");
    // forget chain up to the empty root
    std::vector<CrossingId> cur = td.bags[0];
    while (!cur.empty()) {
        CrossingId v = cur.front();
        cur.erase(cur.begin());
        top = add_node(BagType::Forget, cur, top, v);
    }
    ntd.root = top;

    // postorder + subtree membership + forget map
    ntd.postorder.reserve(ntd.nodes.size());
    ntd.in_subtree.assign(ntd.nodes.size(), {});
    ntd.forget_node.assign(g.vertices, -1);
    std::vector<std::pair<int, bool>> stack{{ntd.root, false}};
    while (!stack.empty()) {
        auto [x, expanded] = stack.back();
        stack.pop_back();
        if (!expanded) {
            stack.push_back({x, true});
            if (ntd.nodes[x].child1 >= 0) stack.push_back({ntd.nodes[x].child1, false});
            if (ntd.nodes[x].child2 >= 0) stack.push_back({ntd.nodes[x].child2, false});
            continue;
        }
        ntd.postorder.push_back(x);
        auto& sub = ntd.in_subtree[x];
        sub.assign(g.vertices, false);
        for (int ch : {ntd.nodes[x].child1, ntd.nodes[x].child2})
            if (ch >= 0)
                for (std::size_t v = 0; v < g.vertices; ++v)
                    if (ntd.in_subtree[ch][v]) sub[v] = true;
        for (CrossingId v : ntd.nodes[x].bag) sub[v] = true;
        if (ntd.nodes[x].type == BagType::Forget)
            ntd.forget_node[ntd.nodes[x].vertex] = x;
    }
    return ntd;
}

ValidationReport validate_nice(const NiceTreeDecomposition& ntd, const DiagramGraph& g) {
    ValidationReport rep;
    auto shape = [&](const std::string& msg) {
        rep.violations.push_back({Violation::Kind::DisconnectedTrace, 0, 0, msg});
    };
    if (ntd.nodes.empty() || ntd.root < 0 ||
        static_cast<std::size_t>(ntd.root) >= ntd.nodes.size()) {
        shape("nice decomposition has no root");
        return rep;
    }
    if (g.vertices == 0) {
        if (ntd.nodes.size() != 1 || !ntd.nodes[0].bag.empty())
            shape("empty graph must decompose to a single empty bag");
        return rep;
    }

    // underlying decomposition conditions
    TreeDecomposition td;
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        td.bags.push_back(ntd.nodes[i].bag);
        for (int ch : {ntd.nodes[i].child1, ntd.nodes[i].child2})
            if (ch >= 0) td.tree_edges.push_back({static_cast<int>(i), ch});
    }
    ValidationReport base = validate(td, g);
    rep.violations.insert(rep.violations.end(), base.violations.begin(),
                          base.violations.end());

    if (!ntd.nodes[ntd.root].bag.empty()) shape("root bag is not empty");

    auto diff_one = [](const std::vector<CrossingId>& big,
                       const std::vector<CrossingId>& small, CrossingId v) {
        if (big.size() != small.size() + 1) return false;
        std::vector<CrossingId> expect = small;
        expect.insert(std::upper_bound(expect.begin(), expect.end(), v), v);
        return expect == big;
    };

    std::vector<int> forget_count(g.vertices, 0);
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const NiceNode& nd = ntd.nodes[i];
        switch (nd.type) {
            case BagType::Leaf:
                if (nd.child1 >= 0 || nd.child2 >= 0)
                    shape("leaf bag with children at node " + std::to_string(i));
                if (nd.bag.size() != 1)
                    shape("leaf bag must hold exactly one vertex (node " +
                          std::to_string(i) + ")");
                break;
            case BagType::Introduce:
                if (nd.child1 < 0 || nd.child2 >= 0)
                    shape("introduce bag needs exactly one child");
                else if (!diff_one(nd.bag, ntd.nodes[nd.child1].bag, nd.vertex))
                    shape("introduce bag must add exactly its vertex (node " +
                          std::to_string(i) + ")");
                break;
            case BagType::Forget:
                if (nd.child1 < 0 || nd.child2 >= 0)
                    shape("forget bag needs exactly one child");
                else if (!diff_one(ntd.nodes[nd.child1].bag, nd.bag, nd.vertex))
                    shape("forget bag must drop exactly its vertex (node " +
                          std::to_string(i) + ")");
                else
                    ++forget_count[nd.vertex];
                break;
            case BagType::Join:
                if (nd.child1 < 0 || nd.child2 < 0)
                    shape("join bag needs two children");
                else if (ntd.nodes[nd.child1].bag != nd.bag ||
                         ntd.nodes[nd.child2].bag != nd.bag)
                    shape("join children bags must equal the join bag (node " +
                          std::to_string(i) + ")");
                break;
        }
    }
    for (CrossingId v = 0; v < g.vertices; ++v) {
        if (forget_count[v] != 1)
            shape("vertex " + std::to_string(v) + " forgotten " +
                  std::to_string(forget_count[v]) + " times, expected once");
    }

    // Linear size: the conversion emits at most 8 bags per (width+1) per
    // vertex; 8 is generous but fixed.
    std::size_t bound = 8 * static_cast<std::size_t>(ntd.width() + 1) * g.vertices + 2;
    if (ntd.nodes.size() > bound)
        shape("nice decomposition too large: " + std::to_string(ntd.nodes.size()) +
              " bags > bound " + std::to_string(bound));
    return rep;
}

std::string nice_to_json(const NiceTreeDecomposition& ntd) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const NiceNode& nd = ntd.nodes[i];
        nlohmann::ordered_json j;
        j["id"] = i;
        switch (nd.type) {
            case BagType::Leaf: j["type"] = "leaf"; break;
            case BagType::Introduce: j["type"] = "introduce"; break;
            case BagType::Forget: j["type"] = "forget"; break;
            case BagType::Join: j["type"] = "join"; break;
        }
        j["bag"] = nd.bag;
        if (nd.type == BagType::Introduce || nd.type == BagType::Forget ||
            nd.type == BagType::Leaf)
            j["vertex"] = nd.vertex;
        auto children = nlohmann::ordered_json::array();
        if (nd.child1 >= 0) children.push_back(nd.child1);
        if (nd.child2 >= 0) children.push_back(nd.child2);
        j["children"] = children;
        nodes.push_back(j);
    }
    nlohmann::ordered_json out;
    out["root"] = ntd.root;
    out["width"] = ntd.width();
    out["bags"] = ntd.nodes.size();
    out["nodes"] = nodes;
    return out.dump(2) + "\n";
}

}  // namespace homfly
