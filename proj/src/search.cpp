#include "leekit/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace leekit {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted_none: return "exhausted_none";
        case SearchStatus::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Index-level group tables; a dense addition table when the order is small
// enough for the hot loop.
struct GroupTables {
    AbelianGroup group;
    std::int64_t order = 0;
    bool dense = false;
    std::vector<std::int32_t> add_table;  // order x order when dense
    std::vector<std::int32_t> neg_table;
    std::vector<std::int32_t> twice_table;
    std::vector<std::int32_t> triple_table;

    explicit GroupTables(const AbelianGroup& g) : group(g), order(g.order()) {
        dense = order <= 1024;
        neg_table.resize(static_cast<size_t>(order));
        twice_table.resize(static_cast<size_t>(order));
        triple_table.resize(static_cast<size_t>(order));
        for (std::int64_t i = 0; i < order; ++i) {
            neg_table[static_cast<size_t>(i)] = static_cast<std::int32_t>(g.index_inverse(i));
            twice_table[static_cast<size_t>(i)] = static_cast<std::int32_t>(g.index_scale(i, 2));
            triple_table[static_cast<size_t>(i)] = static_cast<std::int32_t>(g.index_scale(i, 3));
        }
        if (dense) {
            add_table.resize(static_cast<size_t>(order * order));
            for (std::int64_t a = 0; a < order; ++a)
                for (std::int64_t b = 0; b < order; ++b)
                    add_table[static_cast<size_t>(a * order + b)] =
                        static_cast<std::int32_t>(g.index_combine(a, b));
        }
    }

    std::int32_t add(std::int32_t a, std::int32_t b) const {
        if (dense) return add_table[static_cast<size_t>(static_cast<std::int64_t>(a) * order + b)];
        return static_cast<std::int32_t>(group.index_combine(a, b));
    }
    std::int32_t neg(std::int32_t a) const { return neg_table[static_cast<size_t>(a)]; }
    std::int32_t twice(std::int32_t a) const { return twice_table[static_cast<size_t>(a)]; }
    std::int32_t triple(std::int32_t a) const { return triple_table[static_cast<size_t>(a)]; }
};

struct InversePair {
    std::int32_t rep = 0;  // lexicographically smaller member
    std::int32_t inv = 0;
};

std::vector<InversePair> inverse_pairs(const GroupTables& t) {
    std::vector<InversePair> pairs;
    for (std::int32_t i = 1; i < t.order; ++i) {
        const std::int32_t j = t.neg(i);
        if (i < j) pairs.push_back({i, j});
        if (i == j) throw std::logic_error("inverse_pairs: self-inverse element in odd group");
    }
    return pairs;
}

// Per-branch DFS engine. All arrays are indexed by flat element index.
class Engine {
  public:
    Engine(const GroupTables& tables, const std::vector<InversePair>& pairs, int n,
           bool prune, bool canon, const std::vector<std::int32_t>& orbit_min,
           Clock::time_point deadline)
        : t_(tables),
          pairs_(pairs),
          n_(n),
          prune_(prune),
          canon_(canon),
          orbit_min_(orbit_min),
          deadline_(deadline),
          sq_(static_cast<size_t>(tables.order), 0),
          in_set_(static_cast<size_t>(tables.order), 0),
          in_doubled_(static_cast<size_t>(tables.order), 0),
          tripled_count_(static_cast<size_t>(tables.order), 0) {}

    std::int64_t nodes = 0;
    std::int64_t found_count = 0;
    std::vector<int> best_selection;  // lex-least accepted selection
    bool aborted = false;             // deadline hit
    std::function<void(const std::vector<std::int32_t>&)> leaf_visitor;
    std::function<void(std::int64_t, int)> tick;  // nodes, depth

    // Applies a pair and reports whether the branch stays alive.
    bool add_pair(int p) {
        const std::int32_t a = pairs_[static_cast<size_t>(p)].rep;
        const std::int32_t b = pairs_[static_cast<size_t>(p)].inv;
        touched_.clear();
        bool alive = true;

        in_set_[static_cast<size_t>(a)] = 1;
        in_set_[static_cast<size_t>(b)] = 1;
        const std::int32_t ta = t_.triple(a);
        const std::int32_t tb = t_.neg(ta);
        ++tripled_count_[static_cast<size_t>(ta)];
        ++tripled_count_[static_cast<size_t>(tb)];
        if (prune_) {
            // The set must stay disjoint from its tripled image.
            if (in_set_[static_cast<size_t>(ta)] || in_set_[static_cast<size_t>(tb)] ||
                tripled_count_[static_cast<size_t>(a)] || tripled_count_[static_cast<size_t>(b)])
                alive = false;
        }

        const std::int32_t d = t_.twice(a);
        const std::int32_t di = t_.neg(d);
        in_doubled_[static_cast<size_t>(d)] = 1;
        in_doubled_[static_cast<size_t>(di)] = 1;

        // Square coefficients: cross terms against the previous members,
        // the two doubles, and the identity.
        for (std::int32_t s : members_) {
            bump(t_.add(s, a), 2);
            bump(t_.add(s, b), 2);
        }
        bump(d, 1);
        bump(di, 1);
        sq_[0] += 2;

        if (prune_ && alive) {
            for (std::int32_t h : touched_) {
                const std::int16_t c = sq_[static_cast<size_t>(h)];
                if (c > 2 || (c == 2 && in_doubled_[static_cast<size_t>(h)])) {
                    alive = false;
                    break;
                }
            }
        }

        members_.push_back(a);
        members_.push_back(b);
        selection_.push_back(p);
        return alive;
    }

    void remove_pair(int p) {
        const std::int32_t a = pairs_[static_cast<size_t>(p)].rep;
        const std::int32_t b = pairs_[static_cast<size_t>(p)].inv;
        selection_.pop_back();
        members_.pop_back();
        members_.pop_back();
        sq_[0] -= 2;
        const std::int32_t d = t_.twice(a);
        const std::int32_t di = t_.neg(d);
        sq_[static_cast<size_t>(d)] -= 1;
        sq_[static_cast<size_t>(di)] -= 1;
        for (std::int32_t s : members_) {
            sq_[static_cast<size_t>(t_.add(s, a))] -= 2;
            sq_[static_cast<size_t>(t_.add(s, b))] -= 2;
        }
        in_doubled_[static_cast<size_t>(d)] = 0;
        in_doubled_[static_cast<size_t>(di)] = 0;
        const std::int32_t ta = t_.triple(a);
        const std::int32_t tb = t_.neg(ta);
        --tripled_count_[static_cast<size_t>(ta)];
        --tripled_count_[static_cast<size_t>(tb)];
        in_set_[static_cast<size_t>(a)] = 0;
        in_set_[static_cast<size_t>(b)] = 0;
    }

    // Full validation of a complete selection: every non-identity element
    // carries coefficient 1 on the doubled image and 2 off it.
    bool leaf_is_witness() const {
        for (std::int64_t h = 1; h < t_.order; ++h) {
            const std::int16_t want = in_doubled_[static_cast<size_t>(h)] ? 1 : 2;
            if (sq_[static_cast<size_t>(h)] != want) return false;
        }
        return true;
    }

    void dfs(int depth, int start, std::int32_t min_orbit) {
        if (aborted) return;
        if (depth == n_) {
            if (leaf_is_witness()) {
                ++found_count;
                if (best_selection.empty()) best_selection = selection_;
                if (leaf_visitor) leaf_visitor(members_);
            }
            return;
        }
        const int limit = static_cast<int>(pairs_.size()) - (n_ - depth);
        for (int p = start; p <= limit; ++p) {
            if (canon_ && orbit_min_[static_cast<size_t>(p)] < min_orbit) continue;
            ++nodes;
            if ((nodes & 1023) == 0) {
                if (Clock::now() >= deadline_) {
                    aborted = true;
                    return;
                }
                if (tick) tick(nodes, depth);
            }
            if (add_pair(p)) dfs(depth + 1, p + 1, min_orbit);
            remove_pair(p);
            if (aborted) return;
        }
    }

    const std::vector<std::int32_t>& members() const { return members_; }
    const std::vector<int>& selection() const { return selection_; }

  private:
    void bump(std::int32_t h, std::int16_t delta) {
        sq_[static_cast<size_t>(h)] += delta;
        touched_.push_back(h);
    }

    const GroupTables& t_;
    const std::vector<InversePair>& pairs_;
    int n_;
    bool prune_;
    bool canon_;
    const std::vector<std::int32_t>& orbit_min_;
    Clock::time_point deadline_;

    std::vector<std::int16_t> sq_;
    std::vector<std::uint8_t> in_set_;
    std::vector<std::uint8_t> in_doubled_;
    std::vector<std::int16_t> tripled_count_;
    std::vector<std::int32_t> members_;
    std::vector<int> selection_;
    std::vector<std::int32_t> touched_;
};

struct Branch {
    std::vector<int> prefix;  // 1 or 2 pair indices
    std::int64_t nodes = 0;
    bool complete = false;
    std::int64_t found_count = 0;
    std::vector<int> best_selection;
};

struct Preparation {
    GroupTables tables;
    std::vector<InversePair> pairs;
    bool canon = false;
    std::vector<std::int32_t> orbit_min;

    Preparation(const SearchTask& task)
        : tables(task.group), pairs(inverse_pairs(tables)) {
        canon = task.options.canonicalize.value_or(task.group.rank() == 1);
        orbit_min.assign(pairs.size(), 0);
        if (canon) {
            const auto maps = search_detail::automorphism_index_maps(task.group);
            std::vector<std::int32_t> pair_of(static_cast<size_t>(tables.order), -1);
            for (size_t p = 0; p < pairs.size(); ++p) {
                pair_of[static_cast<size_t>(pairs[p].rep)] = static_cast<std::int32_t>(p);
                pair_of[static_cast<size_t>(pairs[p].inv)] = static_cast<std::int32_t>(p);
            }
            for (size_t p = 0; p < pairs.size(); ++p) {
                std::int32_t best = static_cast<std::int32_t>(p);
                for (const auto& m : maps)
                    best = std::min(best, pair_of[static_cast<size_t>(m[static_cast<size_t>(pairs[p].rep)])]);
                orbit_min[p] = best;
            }
        } else {
            std::iota(orbit_min.begin(), orbit_min.end(), 0);
        }
    }

    bool first_pair_allowed(int p) const {
        return !canon || orbit_min[static_cast<size_t>(p)] == static_cast<std::int32_t>(p);
    }
};

Witness selection_to_witness(const SearchTask& task, const Preparation& prep,
                             const std::vector<int>& selection) {
    std::vector<GroupElement> elems;
    for (int p : selection) {
        elems.push_back(task.group.element_at(prep.pairs[static_cast<size_t>(p)].rep));
        elems.push_back(task.group.element_at(prep.pairs[static_cast<size_t>(p)].inv));
    }
    return make_witness(task.n, task.group, std::move(elems));
}

SearchOutcome run_search(const SearchTask& task, const std::vector<std::vector<int>>* resume_prefixes) {
    if (task.n < 3) throw std::invalid_argument("search_witness: n must be >= 3");
    if (task.group.order() != 2 * task.n * task.n + 1)
        throw std::invalid_argument("search_witness: group order must equal 2n^2+1");

    const auto start_time = Clock::now();
    const auto deadline = task.options.time_budget.count() <= 0
                              ? start_time
                              : start_time + task.options.time_budget;
    Preparation prep(task);
    const int n = static_cast<int>(task.n);
    const int pair_count = static_cast<int>(prep.pairs.size());

    SearchOutcome out;
    std::int64_t frontier_nodes = 0;
    std::vector<Branch> branches;

    if (resume_prefixes) {
        for (const auto& prefix : *resume_prefixes) {
            if (prefix.empty() || prefix.size() > 2)
                throw std::invalid_argument("search resume: malformed prefix");
            for (int p : prefix)
                if (p < 0 || p >= pair_count)
                    throw std::invalid_argument("search resume: prefix index out of range");
            Branch b;
            b.prefix = prefix;
            branches.push_back(std::move(b));
        }
    } else {
        // Frontier split at the top two levels; each placement counts once.
        Engine probe(prep.tables, prep.pairs, n, task.options.prune_level > 0, prep.canon,
                     prep.orbit_min, Clock::time_point::max());
        const int limit1 = pair_count - n;
        for (int i1 = 0; i1 <= limit1; ++i1) {
            if (!prep.first_pair_allowed(i1)) continue;
            ++frontier_nodes;
            const std::int32_t min_orbit = prep.canon ? static_cast<std::int32_t>(i1) : 0;
            if (probe.add_pair(i1)) {
                const int limit2 = pair_count - n + 1;
                for (int i2 = i1 + 1; i2 <= limit2; ++i2) {
                    if (prep.canon && prep.orbit_min[static_cast<size_t>(i2)] < min_orbit) continue;
                    ++frontier_nodes;
                    if (probe.add_pair(i2)) branches.push_back(Branch{{i1, i2}, 0, false, 0, {}});
                    probe.remove_pair(i2);
                }
            }
            probe.remove_pair(i1);
        }
    }

    // Progress reporting across workers.
    std::atomic<std::int64_t> shared_nodes{frontier_nodes};
    std::mutex progress_mu;
    auto last_report = start_time;
    auto report_progress = [&](std::int64_t local_nodes, int depth) {
        if (!task.options.progress || task.options.progress_interval_ms <= 0) return;
        (void)local_nodes;
        std::lock_guard<std::mutex> lk(progress_mu);
        const auto now = Clock::now();
        if (now - last_report <
            std::chrono::milliseconds(task.options.progress_interval_ms))
            return;
        last_report = now;
        ProgressEvent ev;
        ev.nodes = shared_nodes.load();
        ev.depth = depth;
        ev.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(now - start_time).count();
        task.options.progress(ev);
    };

    // Branch execution: workers pull indices; results merge in branch order.
    std::atomic<size_t> next{0};
    const int width = std::max(1, task.options.parallel_width);
    auto work = [&]() {
        while (true) {
            const size_t bi = next.fetch_add(1);
            if (bi >= branches.size()) return;
            Branch& b = branches[bi];
            Engine engine(prep.tables, prep.pairs, n, task.options.prune_level > 0, prep.canon,
                          prep.orbit_min, deadline);
            engine.tick = [&](std::int64_t nodes_now, int depth) {
                shared_nodes.fetch_add(1024);
                (void)nodes_now;
                report_progress(nodes_now, depth);
            };
            if (Clock::now() >= deadline) {
                b.complete = false;
                continue;
            }
            // Re-apply the prefix without recounting it (counted at frontier
            // generation); resumed prefixes are counted fresh.
            bool alive = true;
            std::int32_t min_orbit = 0;
            int depth = 0;
            for (int p : b.prefix) {
                if (resume_prefixes) ++engine.nodes;
                if (depth == 0 && prep.canon) min_orbit = static_cast<std::int32_t>(p);
                alive = engine.add_pair(p) && alive;
                ++depth;
            }
            if (alive) engine.dfs(depth, b.prefix.back() + 1, min_orbit);
            b.nodes = engine.nodes;
            b.complete = !engine.aborted;
            b.found_count = engine.found_count;
            b.best_selection = engine.best_selection;
        }
    };
    if (width == 1 || branches.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < width; ++i) threads.emplace_back(work);
        for (auto& th : threads) th.join();
    }

    out.nodes_explored = frontier_nodes;
    std::vector<std::vector<int>> unfinished;
    for (const Branch& b : branches) {
        out.nodes_explored += b.nodes;
        out.witnesses_found += b.found_count;
        if (!b.best_selection.empty() && !out.witness) {
            Witness w = selection_to_witness(task, prep, b.best_selection);
            if (!verify_witness(w).ok())
                throw std::logic_error("search_witness: found selection fails verification");
            out.witness = std::move(w);
        }
        if (!b.complete) unfinished.push_back(b.prefix);
    }
    if (out.witness) {
        out.status = SearchStatus::found;
    } else if (!unfinished.empty()) {
        out.status = SearchStatus::budget_exceeded;
    } else {
        out.status = SearchStatus::exhausted_none;
    }
    if (!unfinished.empty())
        out.resume = ResumeToken{task.n, task.group, prep.canon, std::move(unfinished)};
    out.wall_time =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_time);
    return out;
}

}  // namespace

SearchOutcome search_witness(const SearchTask& task) { return run_search(task, nullptr); }

SearchOutcome search_witness(const SearchTask& task, const ResumeToken& token) {
    if (!(token.group == task.group) || token.n != task.n)
        throw std::invalid_argument("search_witness: resume token does not match the task");
    return run_search(task, &token.prefixes);
}

std::vector<std::pair<AbelianGroup, SearchOutcome>> search_all_groups(
    std::int64_t n, const SearchOptions& options) {
    if (n < 3) throw std::invalid_argument("search_all_groups: n must be >= 3");
    std::vector<std::pair<AbelianGroup, SearchOutcome>> out;
    for (const AbelianGroup& g : abelian_groups_of_order(2 * n * n + 1)) {
        SearchTask task{n, g, options};
        out.emplace_back(g, search_witness(task));
    }
    return out;
}

namespace search_detail {

std::vector<std::vector<std::int64_t>> automorphism_index_maps(const AbelianGroup& group) {
    if (group.order() > 100'000)
        throw std::overflow_error("automorphism_index_maps: group too large");
    const std::vector<std::int64_t>& f = group.invariant_factors();
    const int k = group.rank();
    // Scalar multipliers coprime to the exponent.
    std::vector<std::int64_t> scalars;
    for (std::int64_t u = 1; u < group.exponent(); ++u)
        if (std::gcd(u, group.exponent()) == 1) scalars.push_back(u);
    // Coordinate permutations preserving the factor list.
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool valid = true;
        for (int i = 0; i < k && valid; ++i)
            valid = f[static_cast<size_t>(perm[static_cast<size_t>(i)])] == f[static_cast<size_t>(i)];
        if (valid) perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<std::int64_t>> maps;
    maps.reserve(scalars.size() * perms.size());
    for (std::int64_t u : scalars) {
        for (const std::vector<int>& p : perms) {
            std::vector<std::int64_t> map(static_cast<size_t>(group.order()));
            for (std::int64_t idx = 0; idx < group.order(); ++idx) {
                const GroupElement e = group.element_at(idx);
                std::vector<std::int64_t> res(static_cast<size_t>(k));
                for (int i = 0; i < k; ++i)
                    res[static_cast<size_t>(i)] =
                        (e.residues[static_cast<size_t>(p[static_cast<size_t>(i)])] * u) % f[static_cast<size_t>(i)];
                map[static_cast<size_t>(idx)] = group.index_of(group.element(std::move(res)));
            }
            maps.push_back(std::move(map));
        }
    }
    return maps;
}

void enumerate_witnesses(const SearchTask& task,
                         const std::function<void(const std::vector<GroupElement>&)>& visit) {
    SearchTask seq = task;
    seq.options.canonicalize = false;
    seq.options.parallel_width = 1;
    if (seq.n < 3) throw std::invalid_argument("enumerate_witnesses: n must be >= 3");
    if (seq.group.order() != 2 * seq.n * seq.n + 1)
        throw std::invalid_argument("enumerate_witnesses: group order must equal 2n^2+1");
    GroupTables tables(seq.group);
    std::vector<InversePair> pairs = inverse_pairs(tables);
    std::vector<std::int32_t> orbit_min(pairs.size());
    std::iota(orbit_min.begin(), orbit_min.end(), 0);
    Engine engine(tables, pairs, static_cast<int>(seq.n), seq.options.prune_level > 0, false,
                  orbit_min, Clock::time_point::max());
    engine.leaf_visitor = [&](const std::vector<std::int32_t>& members) {
        std::vector<GroupElement> elems;
        elems.reserve(members.size());
        for (std::int32_t idx : members) elems.push_back(seq.group.element_at(idx));
        std::sort(elems.begin(), elems.end());
        visit(elems);
    };
    engine.dfs(0, 0, 0);
}

}  // namespace search_detail

std::vector<GroupElement> canonical_form(const std::vector<GroupElement>& t,
                                         const AbelianGroup& group) {
    std::vector<std::int64_t> base;
    base.reserve(t.size());
    for (const GroupElement& e : t) {
        if (!group.contains(e))
            throw std::invalid_argument("canonical_form: element outside the group");
        base.push_back(group.index_of(e));
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    for (std::int64_t idx : base)
        if (std::find(base.begin(), base.end(), group.index_inverse(idx)) == base.end())
            throw std::invalid_argument("canonical_form: set is not inverse-closed");

    std::vector<std::int64_t> best = base;
    std::vector<std::int64_t> image(base.size());
    for (const auto& map : search_detail::automorphism_index_maps(group)) {
        for (size_t i = 0; i < base.size(); ++i) image[i] = map[static_cast<size_t>(base[i])];
        std::sort(image.begin(), image.end());
        if (image < best) best = image;
    }
    std::vector<GroupElement> out;
    out.reserve(best.size());
    for (std::int64_t idx : best) out.push_back(group.element_at(idx));
    return out;
}

}  // namespace leekit
