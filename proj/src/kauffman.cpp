#include "homfly/kauffman.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <numeric>
#include <random>
#include <thread>

#include "homfly/errors.hpp"

namespace homfly {

ArcOrder ArcOrder::identity(std::size_t arc_count) {
    ArcOrder o;
    o.rank.resize(arc_count);
    std::iota(o.rank.begin(), o.rank.end(), 0u);
    return o;
}

ArcOrder ArcOrder::shuffled(std::size_t arc_count, std::uint64_t seed) {
    ArcOrder o = identity(arc_count);
    std::mt19937_64 rng(seed);
    std::shuffle(o.rank.begin(), o.rank.end(), rng);
    return o;
}

bool ArcOrder::is_permutation() const {
    std::vector<bool> seen(rank.size(), false);
    for (auto r : rank) {
        if (r >= rank.size() || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

TriLaurent leaf_term(const LeafStats& s) {
    Int coeff = (s.negative_splices % 2 == 0) ? 1 : -1;
    return TriLaurent::mono(coeff, s.writhe_modified - s.writhe_original,
                            s.splices, s.components - 1);
}

namespace {

constexpr ArcId kNone = static_cast<ArcId>(-1);

enum class Op : std::uint8_t { None, Passed, Switched, Spliced };

struct Counters {
    int t = 0;
    int tminus = 0;
    int w = 0;
    int closures = 0;
};

// Mutable traversal state; copyable so fork branches can be explored on
// clones when running multi-threaded.
struct State {
    std::vector<bool> traversed;
    std::vector<Op> ops;
    Counters k;
    ArcId next = kNone;  // kNone: restart at the lowest untraversed arc
};

struct FirstUnderFork {
    CrossingId crossing;
};

class Walker {
public:
    Walker(const LinkDiagram& d, const ArcOrder& order,
           const KauffmanOptions& options)
        : d_(d), order_(order), options_(options), w0_(d.writhe()) {
        arcs_by_rank_.resize(d.arc_count());
        for (ArcId a = 0; a < d.arc_count(); ++a)
            arcs_by_rank_[order.rank[a]] = a;
    }

    State initial_state() const {
        State s;
        s.traversed.assign(d_.arc_count(), false);
        s.ops.assign(d_.crossing_count(), Op::None);
        s.k.w = w0_;
        s.next = kNone;
        return s;
    }

    // Advances the state until it either reaches a leaf (returns nullopt,
    // leaf already accounted) or the next first-under fork (returned; the
    // state is positioned with the fork's crossing unresolved and
    // state.next the arc just consumed).
    std::optional<FirstUnderFork> advance(State& s) {
        for (;;) {
            if (s.next == kNone) {
                ArcId start = lowest_untraversed(s);
                if (start == kNone) {
                    emit_leaf(s);
                    return std::nullopt;
                }
                s.next = start;
            }
            ArcId a = s.next;
            mark(s, a);
            const EndPoint& head = d_.arc(a).to;
            CrossingId c = head.crossing;
            Op op = s.ops[c];
            if (op == Op::None && head.slot == Slot::UnderIn)
                return FirstUnderFork{c};
            Slot out;
            if (op == Op::None) {
                set_op(s, c, Op::Passed);
                out = Slot::OverOut;
            } else if (op == Op::Spliced) {
                out = (head.slot == Slot::UnderIn) ? Slot::OverOut : Slot::UnderOut;
            } else {
                out = (head.slot == Slot::UnderIn) ? Slot::UnderOut : Slot::OverOut;
            }
            follow(s, c, out);
        }
    }

    // Resolves a pending fork on `s` with the given operation and positions
    // the state on the continuation arc.
    void resolve_fork(State& s, CrossingId c, Op op) {
        int sv = sign_value(d_.sign(c));
        if (op == Op::Spliced) {
            set_op(s, c, Op::Spliced);
            ++s.k.t;
            if (sv < 0) ++s.k.tminus;
            s.k.w -= sv;
            follow(s, c, Slot::OverOut);
        } else {
            set_op(s, c, Op::Switched);
            s.k.w -= 2 * sv;
            follow(s, c, Slot::UnderOut);
        }
    }

    // Depth-first exploration with rollback; both branches of every fork.
    void explore(State& s, int depth) {
        auto fork = advance(s);
        if (!fork) return;
        stats.max_fork_depth = std::max(stats.max_fork_depth, depth + 1);
        std::size_t checkpoint = journal_.size();
        Counters saved = s.k;
        ArcId saved_next = s.next;
        for (Op op : {Op::Spliced, Op::Switched}) {
            resolve_fork(s, fork->crossing, op);
            explore(s, depth + 1);
            rollback(s, checkpoint);
            s.k = saved;
            s.next = saved_next;
        }
    }

    TriLaurent acc;
    KauffmanStats stats;

private:
    ArcId lowest_untraversed(const State& s) const {
        for (ArcId a : arcs_by_rank_)
            if (!s.traversed[a]) return a;
        return kNone;
    }

    void follow(State& s, CrossingId c, Slot out) {
        ArcId nx = d_.arc_at(c, out);
        if (s.traversed[nx]) {
            ++s.k.closures;
            s.next = kNone;
        } else {
            s.next = nx;
        }
    }

    void emit_leaf(const State& s) {
        ++stats.leaves;
        LeafStats ls{s.k.t, s.k.tminus, s.k.w, w0_, s.k.closures};
        TriLaurent term = leaf_term(ls);
        if (options_.leaf_observer) options_.leaf_observer(ls, term);
        acc += term;
    }

    void mark(State& s, ArcId a) {
        s.traversed[a] = true;
        journal_.push_back({true, a});
        stats.peak_journal = std::max(stats.peak_journal, journal_.size());
    }

    void set_op(State& s, CrossingId c, Op op) {
        s.ops[c] = op;
        journal_.push_back({false, c});
        stats.peak_journal = std::max(stats.peak_journal, journal_.size());
    }

    void rollback(State& s, std::size_t to) {
        while (journal_.size() > to) {
            auto [is_arc, id] = journal_.back();
            journal_.pop_back();
            if (is_arc)
                s.traversed[id] = false;
            else
                s.ops[id] = Op::None;
        }
    }

    const LinkDiagram& d_;
    const ArcOrder& order_;
    const KauffmanOptions& options_;
    const int w0_;
    std::vector<ArcId> arcs_by_rank_;
    std::vector<std::pair<bool, std::uint32_t>> journal_;
};

}  // namespace

KauffmanResult homfly_kauffman_run(const LinkDiagram& d, const ArcOrder& order,
                                   const KauffmanOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    KauffmanResult res;
    if (d.empty()) {
        int k = d.zero_components_removed();
        if (k == 0)
            throw ValidationError(
                "the empty link has no HOMFLY-PT value under this normalization");
        res.delta_sum = TriLaurent::mono(1, 0, 0, k - 1);
        res.polynomial = expand_delta(res.delta_sum);
        res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    }
    if (order.rank.size() != d.arc_count() || !order.is_permutation())
        throw ValidationError("arc order must be a bijection over the diagram's arcs");

    if (options.threads <= 1) {
        Walker walker(d, order, options);
        State s = walker.initial_state();
        walker.explore(s, 0);
        res.delta_sum = std::move(walker.acc);
        res.stats = walker.stats;
    } else {
        // Explore the top of the decision tree breadth-first on cloned
        // states, then hand the frontier to worker threads.  Summation is
        // exact and commutative, so the result is identical to a
        // single-threaded run.
        KauffmanOptions seq_options;  // observer not supported concurrently
        Walker shared(d, order, seq_options);
        std::deque<State> frontier;
        frontier.push_back(shared.initial_state());
        std::size_t want = static_cast<std::size_t>(options.threads) * 4;
        TriLaurent done_acc;
        std::uint64_t done_leaves = 0;
        while (!frontier.empty() && frontier.size() < want) {
            State s = std::move(frontier.front());
            frontier.pop_front();
            std::uint64_t leaves_before = shared.stats.leaves;
            auto fork = shared.advance(s);
            if (!fork) {
                done_leaves += shared.stats.leaves - leaves_before;
                continue;
            }
            for (Op op : {Op::Spliced, Op::Switched}) {
                State branch = s;
                shared.resolve_fork(branch, fork->crossing, op);
                frontier.push_back(std::move(branch));
            }
        }
        done_acc = std::move(shared.acc);

        std::vector<State> jobs(frontier.begin(), frontier.end());
        std::atomic<std::size_t> next_job{0};
        std::vector<TriLaurent> sums(options.threads);
        std::vector<KauffmanStats> stats(options.threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < options.threads; ++t) {
            pool.emplace_back([&, t] {
                Walker w(d, order, seq_options);
                for (;;) {
                    std::size_t j = next_job.fetch_add(1);
                    if (j >= jobs.size()) break;
                    State s = jobs[j];
                    w.explore(s, 0);
                }
                sums[t] = std::move(w.acc);
                stats[t] = w.stats;
            });
        }
        for (auto& th : pool) th.join();
        res.delta_sum = std::move(done_acc);
        res.stats.leaves = done_leaves;
        for (int t = 0; t < options.threads; ++t) {
            res.delta_sum += sums[t];
            res.stats.leaves += stats[t].leaves;
            res.stats.peak_journal = std::max(res.stats.peak_journal, stats[t].peak_journal);
            res.stats.max_fork_depth = std::max(res.stats.max_fork_depth, stats[t].max_fork_depth);
        }
    }

    // We fork at most once per crossing, so 2^n caps the leaf count.
    if (d.crossing_count() < 64 &&
        res.stats.leaves > (std::uint64_t{1} << d.crossing_count()))
        throw InternalError("decision tree exceeded 2^n leaves");

    TriLaurent total = res.delta_sum;
    if (d.zero_components_removed() > 0)
        total *= TriLaurent::mono(1, 0, 0, d.zero_components_removed());
    res.polynomial = expand_delta(total);
    res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return res;
}

BiLaurent homfly_kauffman(const LinkDiagram& d, const ArcOrder& order) {
    return homfly_kauffman_run(d, order).polynomial;
}

BiLaurent homfly_kauffman(const LinkDiagram& d) {
    return homfly_kauffman(d, ArcOrder::identity(d.arc_count()));
}

std::uint64_t leaf_count(const LinkDiagram& d, const ArcOrder& order) {
    return homfly_kauffman_run(d, order).stats.leaves;
}

}  // namespace homfly
