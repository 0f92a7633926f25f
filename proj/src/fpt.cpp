#include "homfly/fpt.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>

#include "homfly/errors.hpp"

namespace homfly {

TreeArcOrder tree_arc_order(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                            unsigned variant) {
    for (CrossingId c = 0; c < d.crossing_count(); ++c)
        if (ntd.forget_node[c] < 0)
            throw InternalError("crossing " + std::to_string(c) + " has no forget bag");

    // Depth-first preorder of nodes; an ancestor is always visited before
    // its descendants and each subtree occupies a contiguous block.
    std::vector<int> pre(ntd.nodes.size(), -1);
    int counter = 0;
    std::vector<int> stack{ntd.root};
    bool swap_children = variant & 1u;
    bool descending_ties = variant & 2u;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        pre[x] = counter++;
        int c1 = ntd.nodes[x].child1, c2 = ntd.nodes[x].child2;
        if (swap_children) std::swap(c1, c2);
        // pushed in reverse so c1 is visited first
        if (c2 >= 0) stack.push_back(c2);
        if (c1 >= 0) stack.push_back(c1);
    }

    std::vector<ArcId> arcs(d.arc_count());
    for (ArcId a = 0; a < d.arc_count(); ++a) arcs[a] = a;
    auto key = [&](ArcId a) {
        return pre[ntd.forget_node[d.arc(a).to.crossing]];
    };
    std::sort(arcs.begin(), arcs.end(), [&](ArcId x, ArcId y) {
        int kx = key(x), ky = key(y);
        if (kx != ky) return kx < ky;
        return descending_ties ? x > y : x < y;
    });

    TreeArcOrder out;
    out.order.rank.resize(d.arc_count());
    for (std::uint32_t r = 0; r < arcs.size(); ++r) out.order.rank[arcs[r]] = r;
    out.forget_node = ntd.forget_node;
    return out;
}

namespace fpt_detail {

namespace {

// Position of the pair whose b component (incoming occurrence) is `arc`.
std::optional<std::size_t> pos_b(const Configuration& kappa, ArcId arc) {
    for (std::size_t i = 0; i < kappa.size(); ++i)
        if (kappa[i].second == arc) return i;
    return std::nullopt;
}

std::optional<std::size_t> pos_a(const Configuration& kappa, ArcId arc) {
    for (std::size_t i = 0; i < kappa.size(); ++i)
        if (kappa[i].first == arc) return i;
    return std::nullopt;
}

void accumulate(EvaluationTable& table, const Configuration& kappa,
                const TriLaurent& value) {
    if (value.is_zero()) return;
    auto it = table.find(kappa);
    if (it == table.end()) {
        table.emplace(kappa, value);
    } else {
        it->second += value;
        if (it->second.is_zero()) table.erase(it);
    }
}

}  // namespace

EvaluationTable process_leaf(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                             int node, int w0) {
    CrossingId v = ntd.nodes[node].vertex;
    for (Slot s : {Slot::UnderIn, Slot::UnderOut, Slot::OverIn, Slot::OverOut}) {
        ArcId a = d.arc_at(v, s);
        const Arc& arc = d.arc(a);
        CrossingId other = is_in_slot(s) ? arc.from.crossing : arc.to.crossing;
        if (ntd.status(node, other) != CrossingStatus::Unvisited)
            throw InternalError(
                "leaf bag has an internal arc: neighbor " + std::to_string(other) +
                " of crossing " + std::to_string(v) + " is not unvisited");
    }
    EvaluationTable table;
    table.emplace(Configuration{}, TriLaurent::mono(1, -w0, 0, -1));
    return table;
}

EvaluationTable process_introduce(const LinkDiagram& d,
                                  const NiceTreeDecomposition& ntd, int node,
                                  const EvaluationTable& child) {
    CrossingId c = ntd.nodes[node].vertex;
    std::vector<ArcId> new_arcs;
    for (Slot s : {Slot::UnderIn, Slot::UnderOut, Slot::OverIn, Slot::OverOut}) {
        ArcId a = d.arc_at(c, s);
        const Arc& arc = d.arc(a);
        CrossingId other = is_in_slot(s) ? arc.from.crossing : arc.to.crossing;
        CrossingStatus st = ntd.status(node, other);
        if (st == CrossingStatus::Forgotten)
            throw InternalError("introduced crossing " + std::to_string(c) +
                                " sees forgotten neighbor " + std::to_string(other));
        if (st == CrossingStatus::Current) new_arcs.push_back(a);
    }
    if (new_arcs.empty()) return child;
    std::sort(new_arcs.begin(), new_arcs.end());

    EvaluationTable table;
    // Every placement of the new trivial pairs, in every relative order,
    // keeping the child's pairs in their original order.
    Configuration built;
    std::vector<bool> used(new_arcs.size(), false);
    std::function<void(std::size_t, std::size_t, const Configuration&, const TriLaurent&)>
        place = [&](std::size_t child_idx, std::size_t remaining,
                    const Configuration& kappa, const TriLaurent& value) {
            if (child_idx == kappa.size() && remaining == 0) {
                accumulate(table, built, value);
                return;
            }
            if (child_idx < kappa.size()) {
                built.push_back(kappa[child_idx]);
                place(child_idx + 1, remaining, kappa, value);
                built.pop_back();
            }
            if (remaining > 0) {
                for (std::size_t k = 0; k < new_arcs.size(); ++k) {
                    if (used[k]) continue;
                    used[k] = true;
                    built.push_back({new_arcs[k], new_arcs[k]});
                    place(child_idx, remaining - 1, kappa, value);
                    built.pop_back();
                    used[k] = false;
                }
            }
        };
    for (const auto& [kappa, value] : child)
        place(0, new_arcs.size(), kappa, value);
    return table;
}

namespace {

bool is_trivial(const ConfigPair& p) { return p.first == p.second; }

std::vector<ArcId> trivial_arcs(const Configuration& kappa) {
    std::vector<ArcId> out;
    for (const auto& p : kappa)
        if (is_trivial(p)) out.push_back(p.first);
    return out;
}

// Enumerates every interleaving of k1 and k2 that preserves both internal
// orders and identifies the shared trivial pairs (which must appear in the
// same relative order in both).
void merge_configs(const Configuration& k1, const Configuration& k2,
                   const TriLaurent& value, EvaluationTable& table) {
    Configuration built;
    built.reserve(k1.size() + k2.size());
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                           std::size_t j) {
        if (i == k1.size() && j == k2.size()) {
            accumulate(table, built, value);
            return;
        }
        bool t1 = i < k1.size() && is_trivial(k1[i]);
        bool t2 = j < k2.size() && is_trivial(k2[j]);
        if (i < k1.size() && !t1) {
            built.push_back(k1[i]);
            go(i + 1, j);
            built.pop_back();
        }
        if (j < k2.size() && !t2) {
            built.push_back(k2[j]);
            go(i, j + 1);
            built.pop_back();
        }
        if (t1 && t2) {  // equal by the shared-order pre-check
            built.push_back(k1[i]);
            go(i + 1, j + 1);
            built.pop_back();
        }
    };
    go(0, 0);
}

void join_range(const LinkDiagram&, const NiceTreeDecomposition&,
                const std::vector<const std::pair<const Configuration, TriLaurent>*>& left,
                std::size_t begin, std::size_t end, const EvaluationTable& right,
                const TriLaurent& factor, EvaluationTable& out) {
    for (std::size_t i = begin; i < end; ++i) {
        const auto& [k1, e1] = *left[i];
        std::vector<ArcId> shared1 = trivial_arcs(k1);
        for (const auto& [k2, e2] : right) {
            std::vector<ArcId> shared2 = trivial_arcs(k2);
            if (shared1 != shared2) {
                auto s1 = shared1, s2 = shared2;
                std::sort(s1.begin(), s1.end());
                std::sort(s2.begin(), s2.end());
                if (s1 != s2)
                    throw InternalError(
                        "join children disagree on current-current arcs");
                continue;  // same arcs, incompatible order: contributes nothing
            }
            merge_configs(k1, k2, e1 * e2 * factor, out);
        }
    }
}

}  // namespace

EvaluationTable process_join(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                             int /*node*/, const EvaluationTable& left,
                             const EvaluationTable& right, int w0, int threads) {
    TriLaurent factor = TriLaurent::mono(1, w0, 0, 1);
    std::vector<const std::pair<const Configuration, TriLaurent>*> lefts;
    lefts.reserve(left.size());
    for (const auto& entry : left) lefts.push_back(&entry);

    if (threads <= 1 || lefts.size() < 2 * static_cast<std::size_t>(threads)) {
        EvaluationTable out;
        join_range(d, ntd, lefts, 0, lefts.size(), right, factor, out);
        return out;
    }
    std::vector<EvaluationTable> partial(threads);
    std::vector<std::thread> pool;
    std::size_t chunk = (lefts.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t b = std::min(lefts.size(), t * chunk);
        std::size_t e = std::min(lefts.size(), (t + 1) * chunk);
        pool.emplace_back([&, b, e, t] {
            join_range(d, ntd, lefts, b, e, right, factor, partial[t]);
        });
    }
    for (auto& th : pool) th.join();
    EvaluationTable out = std::move(partial[0]);
    for (int t = 1; t < threads; ++t)
        for (const auto& [k, v] : partial[t]) accumulate(out, k, v);
    return out;
}

namespace {

// Result of wiring crossing c's two strand connections through a child
// configuration: the rewritten sequence, the number of components closed,
// and which incoming arc the traversal meets first.
struct ForgetResolution {
    Configuration config;
    int closed = 0;
    bool first_under = false;
};

// Applies the two connections (in_u -> out_for_under, in_o -> out_for_over)
// to kappa.  Pairs linked end-to-start fuse into longer segments; linked
// groups that wrap around close into components.  The rewrite is valid only
// when it keeps the sequence consistent with the traversal it encodes:
//  - fused pairs must be consecutive, in traversal direction;
//  - closed components are traversed after all segments, ordered by their
//    minimal arc and entered at it, so closing groups must already form a
//    suffix of the sequence, mutually ordered by minimal arc, and a
//    component passing c twice must have its wrap-around arrival at the
//    smaller incoming arc.
std::optional<ForgetResolution> wire_through(const Configuration& kappa,
                                             CrossingId c, ArcId in_u, ArcId in_o,
                                             ArcId out_u, ArcId out_o) {
    auto pe_u = pos_b(kappa, in_u), ps_u = pos_a(kappa, out_u);
    auto pe_o = pos_b(kappa, in_o), ps_o = pos_a(kappa, out_o);
    if (!pe_u || !ps_u || !pe_o || !ps_o)
        throw InternalError("forget bag: not all four arcs of crossing " +
                            std::to_string(c) +
                            " are present in the child configuration");

    ForgetResolution res;
    std::vector<std::size_t> erase;                 // pairs consumed
    std::vector<std::pair<std::size_t, ArcId>> fuse;  // head pair <- new b arc
    std::vector<std::pair<std::size_t, ArcId>> cycles;  // first position, min arc
    // host cycle of each incoming arc: -1 while it stays inside a segment
    int host_u = -1, host_o = -1;

    bool self_u = *pe_u == *ps_u;
    bool self_o = *pe_o == *ps_o;
    auto fuse_pair = [&](std::size_t from, std::size_t to, ArcId new_b) {
        if (to != from + 1) return false;
        fuse.push_back({from, new_b});
        erase.push_back(to);
        return true;
    };

    if (self_u && self_o) {
        erase.push_back(*pe_u);
        erase.push_back(*pe_o);
        cycles.push_back({*pe_u, in_u});
        cycles.push_back({*pe_o, in_o});
        host_u = 0;
        host_o = 1;
    } else if (self_u) {
        erase.push_back(*pe_u);
        cycles.push_back({*pe_u, in_u});
        host_u = 0;
        if (!fuse_pair(*pe_o, *ps_o, kappa[*ps_o].second)) return std::nullopt;
    } else if (self_o) {
        erase.push_back(*pe_o);
        cycles.push_back({*pe_o, in_o});
        host_o = 0;
        if (!fuse_pair(*pe_u, *ps_u, kappa[*ps_u].second)) return std::nullopt;
    } else if (*ps_u == *pe_o && *ps_o == *pe_u) {
        // the two connections wrap two pairs into one closed component that
        // passes through c twice
        std::size_t lo = std::min(*pe_u, *pe_o), hi = std::max(*pe_u, *pe_o);
        if (hi != lo + 1) return std::nullopt;
        ArcId forward_in = (*pe_u == lo) ? in_u : in_o;
        ArcId wrap_in = (*pe_u == lo) ? in_o : in_u;
        // entered at its minimal arc: the wrap arrival must be the smaller
        if (wrap_in > forward_in) return std::nullopt;
        erase.push_back(lo);
        erase.push_back(hi);
        cycles.push_back({lo, std::min(in_u, in_o)});
        host_u = host_o = 0;
    } else if (*ps_u == *pe_o) {
        // chain: pair(pe_u) -> pair(pe_o) -> pair(ps_o)
        if (*ps_u != *pe_u + 1 || *ps_o != *pe_o + 1) return std::nullopt;
        fuse.push_back({*pe_u, kappa[*ps_o].second});
        erase.push_back(*pe_o);
        erase.push_back(*ps_o);
    } else if (*ps_o == *pe_u) {
        if (*ps_o != *pe_o + 1 || *ps_u != *pe_u + 1) return std::nullopt;
        fuse.push_back({*pe_o, kappa[*ps_u].second});
        erase.push_back(*pe_u);
        erase.push_back(*ps_u);
    } else {
        if (!fuse_pair(*pe_u, *ps_u, kappa[*ps_u].second)) return std::nullopt;
        if (!fuse_pair(*pe_o, *ps_o, kappa[*ps_o].second)) return std::nullopt;
    }

    if (!cycles.empty()) {
        // suffix: every surviving pair must precede every closing pair
        std::size_t min_cycle = kappa.size();
        for (const auto& [pos, arc] : cycles) min_cycle = std::min(min_cycle, pos);
        std::vector<bool> consumed(kappa.size(), false);
        for (std::size_t p : erase) consumed[p] = true;
        for (std::size_t p = min_cycle; p < kappa.size(); ++p)
            if (!consumed[p]) return std::nullopt;
        // two components closing at once are traversed minimal-arc first
        if (cycles.size() == 2 &&
            (cycles[0].first < cycles[1].first) != (cycles[0].second < cycles[1].second))
            return std::nullopt;
    }

    // first encounter of c: segments are traversed before closed components,
    // segments in sequence order, components in minimal-arc order
    if (host_u < 0 && host_o < 0)
        res.first_under = *pe_u < *pe_o;
    else if (host_u >= 0 && host_o >= 0)
        res.first_under = in_u < in_o;
    else
        res.first_under = host_u < 0;

    res.closed = static_cast<int>(cycles.size());
    std::vector<bool> drop(kappa.size(), false);
    for (std::size_t p : erase) drop[p] = true;
    Configuration out;
    out.reserve(kappa.size() - erase.size());
    for (std::size_t p = 0; p < kappa.size(); ++p) {
        if (drop[p]) continue;
        ConfigPair pr = kappa[p];
        for (const auto& [head, new_b] : fuse)
            if (head == p) pr.second = new_b;
        out.push_back(pr);
    }
    res.config = std::move(out);
    return res;
}

}  // namespace

EvaluationTable process_forget(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                               int node, const EvaluationTable& child) {
    const CrossingId c = ntd.nodes[node].vertex;
    const int sv = sign_value(d.sign(c));
    const ArcId in_under = d.arc_at(c, Slot::UnderIn);
    const ArcId in_over = d.arc_at(c, Slot::OverIn);
    const ArcId out_under = d.arc_at(c, Slot::UnderOut);
    const ArcId out_over = d.arc_at(c, Slot::OverOut);

    EvaluationTable table;
    for (const auto& [kappa, value] : child) {
        // pass / switch keep the strand wiring; first arrival decides which
        auto straight =
            wire_through(kappa, c, in_under, in_over, out_under, out_over);
        if (straight) {
            TriLaurent mult =
                straight->first_under
                    ? TriLaurent::mono(1, -sv, 0, straight->closed)   // switch
                    : TriLaurent::mono(1, sv, 0, straight->closed);   // pass
            accumulate(table, straight->config, value * mult);
        }
        // splice crosses the strands; only legal on a lower first arrival
        auto crossed =
            wire_through(kappa, c, in_under, in_over, out_over, out_under);
        if (crossed && crossed->first_under) {
            TriLaurent mult =
                TriLaurent::mono(sv < 0 ? -1 : 1, 0, 1, crossed->closed);
            accumulate(table, crossed->config, value * mult);
        }
    }
    return table;
}

void validate_configuration(const LinkDiagram& d, const NiceTreeDecomposition& ntd,
                            int node, const Configuration& kappa) {
    auto fail = [&](const std::string& msg) {
        throw InternalError("invalid configuration at node " + std::to_string(node) +
                            ": " + msg);
    };
    std::vector<ArcId> want_a, want_b;
    for (ArcId a = 0; a < d.arc_count(); ++a) {
        CrossingStatus tail = ntd.status(node, d.arc(a).from.crossing);
        CrossingStatus head = ntd.status(node, d.arc(a).to.crossing);
        if (tail == CrossingStatus::Current && head != CrossingStatus::Unvisited)
            want_a.push_back(a);
        if (head == CrossingStatus::Current && tail != CrossingStatus::Unvisited)
            want_b.push_back(a);
    }
    std::vector<ArcId> got_a, got_b;
    for (const auto& [a, b] : kappa) {
        got_a.push_back(a);
        got_b.push_back(b);
    }
    std::sort(got_a.begin(), got_a.end());
    std::sort(got_b.begin(), got_b.end());
    if (got_a != want_a) fail("outgoing arcs do not match the bag's a-list");
    if (got_b != want_b) fail("incoming arcs do not match the bag's b-list");
    for (const auto& [a, b] : kappa) {
        bool a_cc = ntd.status(node, d.arc(a).from.crossing) == CrossingStatus::Current &&
                    ntd.status(node, d.arc(a).to.crossing) == CrossingStatus::Current;
        if (a_cc && a != b) fail("current-current arc not in a trivial pair");
        if (a != b) {
            if (ntd.status(node, d.arc(a).to.crossing) != CrossingStatus::Forgotten)
                fail("nontrivial pair's a-arc does not enter the forgotten region");
            if (ntd.status(node, d.arc(b).from.crossing) != CrossingStatus::Forgotten)
                fail("nontrivial pair's b-arc does not leave the forgotten region");
        }
    }
}

}  // namespace fpt_detail

namespace {

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

FptResult homfly_fpt(const LinkDiagram& d, const FptOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    FptResult res;

    auto stripped_result = d.untwist_and_strip();
    const LinkDiagram& link = stripped_result.diagram;
    if (link.empty()) {
        int k = link.zero_components_removed();
        if (k == 0)
            throw ValidationError(
                "the empty link has no HOMFLY-PT value under this normalization");
        res.polynomial = expand_delta(TriLaurent::mono(1, 0, 0, k - 1));
        res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    }

    DiagramGraph g = link.diagram_graph();
    TreeDecomposition td = greedy_decomposition(g, options.heuristic);
    if (auto rep = validate(td, g); !rep.ok())
        throw InternalError("greedy decomposition invalid: " + rep.describe());
    NiceTreeDecomposition ntd = make_nice(td, g);
    if (auto rep = validate_nice(ntd, g); !rep.ok())
        throw InternalError("nice decomposition invalid: " + rep.describe());
    TreeArcOrder tao = tree_arc_order(link, ntd);
    (void)tao;  // the ordering is inherent to the decomposition; the DP
                // consults it only through the forget-bag structure

    // No arc may join a forgotten crossing with an unvisited one, anywhere.
    for (int node : ntd.postorder) {
        for (const auto& e : g.edges) {
            CrossingStatus sf = ntd.status(node, e.from);
            CrossingStatus st = ntd.status(node, e.to);
            if ((sf == CrossingStatus::Forgotten && st == CrossingStatus::Unvisited) ||
                (sf == CrossingStatus::Unvisited && st == CrossingStatus::Forgotten))
                throw InternalError("arc between forgotten and unvisited crossings");
        }
    }

    const int w0 = link.writhe();
    res.stats.width = ntd.width();
    res.stats.bags = ntd.nodes.size();

    std::vector<EvaluationTable> tables(ntd.nodes.size());
    for (int node : ntd.postorder) {
        const NiceNode& nd = ntd.nodes[node];
        EvaluationTable table;
        switch (nd.type) {
            case BagType::Leaf:
                table = fpt_detail::process_leaf(link, ntd, node, w0);
                break;
            case BagType::Introduce:
                table = fpt_detail::process_introduce(link, ntd, node, tables[nd.child1]);
                tables[nd.child1].clear();
                break;
            case BagType::Forget:
                table = fpt_detail::process_forget(link, ntd, node, tables[nd.child1]);
                tables[nd.child1].clear();
                break;
            case BagType::Join:
                table = fpt_detail::process_join(link, ntd, node, tables[nd.child1],
                                                 tables[nd.child2], w0, options.threads);
                tables[nd.child1].clear();
                tables[nd.child2].clear();
                ++res.stats.joins_processed;
                break;
        }
        if (table.size() > options.table_budget)
            throw WidthBudgetExceededError(
                "evaluation table exceeded the budget of " +
                    std::to_string(options.table_budget) + " entries at width " +
                    std::to_string(ntd.width()),
                ntd.width());
        Int bound = factorial(2 * static_cast<int>(nd.bag.size()));
        bound *= bound;
        if (Int(table.size()) > bound)
            throw InternalError("table size exceeds the (2|bag|)!^2 bound");
        if (options.validate_configs)
            for (const auto& [kappa, value] : table)
                fpt_detail::validate_configuration(link, ntd, node, kappa);
        res.stats.peak_configs = std::max(res.stats.peak_configs, table.size());
        res.stats.total_configs += table.size();
        tables[node] = std::move(table);
    }

    EvaluationTable& root = tables[ntd.root];
    if (root.size() != 1 || root.begin()->first != Configuration{})
        throw InternalError("root table must hold exactly the empty configuration");
    TriLaurent q = root.begin()->second;
    for (const auto& [key, coeff] : q.terms())
        if (key.ed < 0)
            throw InternalError("negative delta exponent at the root");
    if (link.zero_components_removed() > 0)
        q *= TriLaurent::mono(1, 0, 0, link.zero_components_removed());
    res.polynomial = expand_delta(q);
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return res;
}

}  // namespace homfly
