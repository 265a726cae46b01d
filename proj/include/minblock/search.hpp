// Search for strong blocking sets of a given size: plain exhaustive sweep,
// a rank-pruned depth-first search able to prove nonexistence, and a seeded
// randomized search over unions of pairwise disjoint lines.
//
// All modes are deterministic for a fixed (budget, seed) pair regardless of
// worker count: the exhaustive sweep partitions subsets by combination rank,
// the pruned search splits its node budget over a fixed set of depth-two
// work units, and the randomized search derives one independent stream per
// worker from the base seed.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "minblock/blocking.hpp"
#include "minblock/classify.hpp"
#include "minblock/errors.hpp"
#include "minblock/geometry.hpp"

namespace minblock {

namespace defaults {
inline constexpr std::uint64_t exhaustive_budget = 1'000'000'000;
inline constexpr std::uint64_t pruned_budget = 1'000'000'000;
inline constexpr std::uint64_t trial_budget = 100'000;
}

enum class SearchMode { Exhaustive, PrunedExhaustive, RandomLineUnion };

struct SearchConfig {
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t budget = 0; // 0 picks the per-mode default
    std::uint64_t seed = 0;   // randomized mode only
    unsigned workers = 1;
};

struct SearchResult {
    std::vector<std::uint64_t> found; // masks, ascending, no duplicates
    // subsets examined / tree nodes visited / trials run, depending on mode
    std::uint64_t nodes_explored = 0;
    bool exhausted = false; // true when the whole space was covered
};

namespace detail {

inline unsigned clamp_workers(unsigned w) { return std::min(std::max(w, 1u), 64u); }

inline std::uint64_t mode_budget(const SearchConfig& cfg) {
    if (cfg.budget != 0) return cfg.budget;
    switch (cfg.mode) {
    case SearchMode::Exhaustive: return defaults::exhaustive_budget;
    case SearchMode::PrunedExhaustive: return defaults::pruned_budget;
    case SearchMode::RandomLineUnion: return defaults::trial_budget;
    }
    return defaults::exhaustive_budget;
}

// Every reported set goes through the verifier once more after the search
// proper; a mismatch means the search data structures are corrupt.
inline void reverify_found(const Geometry& g, const std::vector<std::uint64_t>& found) {
    for (std::uint64_t m : found)
        if (!is_strong_blocking_set(PointSet(g, m)).is_strong)
            throw std::logic_error("search produced a set that fails re-verification");
}

// Lexicographically r-th size-t subset of {0..n-1}.
inline std::vector<unsigned> unrank_combination(unsigned n, unsigned t, std::uint64_t r) {
    std::vector<unsigned> c(t);
    unsigned next = 0;
    for (unsigned i = 0; i < t; ++i) {
        for (unsigned x = next;; ++x) {
            std::uint64_t below = binomial(n - 1 - x, t - 1 - i);
            if (r < below) {
                c[i] = x;
                next = x + 1;
                break;
            }
            r -= below;
        }
    }
    return c;
}

inline bool next_combination(std::vector<unsigned>& c, unsigned n) {
    const unsigned t = static_cast<unsigned>(c.size());
    for (unsigned i = t; i-- > 0;) {
        if (c[i] < n - t + i) {
            ++c[i];
            for (unsigned j = i + 1; j < t; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Checks span(S ∩ H) = H for all H without building a report.
inline bool strong_quick(const Geometry& g, std::uint64_t mask) {
    const unsigned need = g.k() - 1;
    for (std::size_t h = 0; h < g.num_hyperplanes(); ++h) {
        std::uint64_t inter = mask & g.hyperplane_member_mask(h);
        if (static_cast<unsigned>(std::popcount(inter)) < need) return false;
        if (intersection_rank(g, inter, need) < need) return false;
    }
    return true;
}

} // namespace detail

// Examines every size-subset of the point set. Throws BudgetExceeded up
// front when there are more subsets than the budget allows; the pruned mode
// handles those spaces.
inline SearchResult find_all_sbs(const Geometry& g, unsigned size, const SearchConfig& cfg = {}) {
    const auto n = static_cast<unsigned>(g.num_points());
    if (size == 0 || size > n) throw std::invalid_argument("target size out of range");
    const std::uint64_t total = binomial(n, size);
    const std::uint64_t budget = detail::mode_budget(cfg);
    if (total > budget)
        throw BudgetExceeded("exhaustive search needs subset budget " + std::to_string(total) +
                                 "; the pruned mode avoids full enumeration",
                             total);

    const unsigned workers = std::min<std::uint64_t>(detail::clamp_workers(cfg.workers), total);
    std::vector<std::vector<std::uint64_t>> found(workers);
    auto run = [&](unsigned w) {
        const std::uint64_t lo = total * w / workers;
        const std::uint64_t hi = total * (w + 1) / workers;
        if (lo >= hi) return;
        std::vector<unsigned> comb = detail::unrank_combination(n, size, lo);
        for (std::uint64_t r = lo; r < hi; ++r) {
            std::uint64_t mask = 0;
            for (unsigned c : comb) mask |= std::uint64_t{1} << c;
            if (detail::strong_quick(g, mask)) found[w].push_back(mask);
            if (r + 1 < hi) detail::next_combination(comb, n);
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    SearchResult result;
    for (auto& part : found)
        result.found.insert(result.found.end(), part.begin(), part.end());
    std::sort(result.found.begin(), result.found.end());
    result.nodes_explored = total;
    result.exhausted = true;
    detail::reverify_found(g, result.found);
    return result;
}

namespace detail {

// Depth-first search state for the pruned mode, q = 2 only. Per hyperplane
// it keeps a reduced basis of the chosen points lying on it, indexed by
// pivot bit, so rank updates are a few XORs.
struct PrunedState {
    std::array<std::array<std::uint8_t, 8>, 63> pivot{};
    std::array<std::uint8_t, 63> rank{};
};

class PrunedEngine {
  public:
    PrunedEngine(const Geometry& g, unsigned size) : g_(g), size_(size) {
        if (g.q() != 2)
            throw std::invalid_argument("pruned search handles q = 2 only");
        n_ = static_cast<unsigned>(g.num_points());
        if (size == 0 || size > n_) throw std::invalid_argument("target size out of range");
        required_ = g.k() - 1;
        num_hyp_ = static_cast<unsigned>(g.num_hyperplanes());
        pbits_.resize(n_);
        hyps_of_point_.resize(n_);
        for (unsigned p = 0; p < n_; ++p) {
            pbits_[p] = static_cast<std::uint8_t>(g.point_bits(p));
            hyps_of_point_[p] = g.hyperplanes_of_point(p);
        }
        pts_of_hyp_.resize(num_hyp_);
        for (unsigned h = 0; h < num_hyp_; ++h) pts_of_hyp_[h] = g.hyperplane_member_mask(h);
    }

    struct Node {
        std::uint64_t chosen = 0;
        std::uint64_t eligible = 0;
        std::uint64_t deficient = 0;
        unsigned count = 0;
        PrunedState state;
    };

    struct Outcome {
        std::vector<std::uint64_t> found;
        std::uint64_t nodes = 0;
        bool hit_budget = false;
    };

    Node root() const {
        Node r;
        r.eligible = g_.full_mask();
        r.deficient = (num_hyp_ == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << num_hyp_) - 1;
        return r;
    }

    // Expands the tree below `node`. The visit of `node` itself (budget
    // check, prune, branch) happens here, so handing a frontier node to
    // this function reproduces exactly what an uninterrupted recursion
    // would have done.
    void run(const Node& node, std::uint64_t budget, Outcome& out) const {
        dfs(node, budget, out);
    }

    // Splits the search into the surviving depth-`frontier_depth` subtrees
    // without visiting them, counting only the shallower nodes in
    // `out.nodes`. Frontier nodes come back in the order the serial search
    // would reach them.
    void frontier(unsigned frontier_depth, Outcome& out, std::vector<Node>& units) const {
        expand(root(), frontier_depth, out, units);
    }

  private:
    bool prune(const Node& node) const {
        const unsigned rem = size_ - node.count;
        if (static_cast<unsigned>(std::popcount(node.eligible)) < rem) return true;
        for (std::uint64_t m = node.deficient; m; m &= m - 1) {
            const auto h = static_cast<unsigned>(std::countr_zero(m));
            const auto avail =
                static_cast<unsigned>(std::popcount(node.eligible & pts_of_hyp_[h]));
            if (node.state.rank[h] + std::min(avail, rem) < required_) return true;
        }
        return false;
    }

    // Candidates sorted by how many still-deficient hyperplanes pass
    // through them, most first; ties keep point order. Failing branches
    // close faster this way.
    unsigned order_candidates(const Node& node, std::array<std::uint8_t, 63>& cand) const {
        std::array<std::uint8_t, 63> score;
        unsigned nc = 0;
        for (std::uint64_t m = node.eligible; m; m &= m - 1) {
            const auto p = static_cast<unsigned>(std::countr_zero(m));
            cand[nc] = static_cast<std::uint8_t>(p);
            score[nc] =
                static_cast<std::uint8_t>(std::popcount(hyps_of_point_[p] & node.deficient));
            ++nc;
        }
        for (unsigned i = 1; i < nc; ++i) {
            const std::uint8_t c = cand[i], s = score[i];
            unsigned j = i;
            while (j > 0 && score[j - 1] < s) {
                cand[j] = cand[j - 1];
                score[j] = score[j - 1];
                --j;
            }
            cand[j] = c;
            score[j] = s;
        }
        return nc;
    }

    Node child_of(const Node& node, unsigned p, std::uint64_t remaining) const {
        Node child;
        child.chosen = node.chosen | (std::uint64_t{1} << p);
        child.eligible = remaining;
        child.count = node.count + 1;
        child.state = node.state;
        child.deficient = node.deficient;
        const std::uint8_t v = pbits_[p];
        for (std::uint64_t hm = hyps_of_point_[p] & node.deficient; hm; hm &= hm - 1) {
            const auto h = static_cast<unsigned>(std::countr_zero(hm));
            std::uint8_t w = v;
            while (w) {
                const unsigned piv = std::bit_width(w) - 1;
                std::uint8_t& row = child.state.pivot[h][piv];
                if (row == 0) {
                    row = w;
                    if (++child.state.rank[h] == required_)
                        child.deficient &= ~(std::uint64_t{1} << h);
                    break;
                }
                w ^= row;
            }
        }
        return child;
    }

    void dfs(const Node& node, std::uint64_t budget, Outcome& out) const {
        if (out.nodes >= budget) {
            out.hit_budget = true;
            return;
        }
        ++out.nodes;
        if (node.count == size_) {
            if (node.deficient == 0) out.found.push_back(node.chosen);
            return;
        }
        if (prune(node)) return;
        std::array<std::uint8_t, 63> cand;
        const unsigned nc = order_candidates(node, cand);
        std::uint64_t remaining = node.eligible;
        for (unsigned i = 0; i < nc; ++i) {
            remaining &= ~(std::uint64_t{1} << cand[i]);
            dfs(child_of(node, cand[i], remaining), budget, out);
            if (out.hit_budget) return;
        }
    }

    void expand(const Node& node, unsigned frontier_depth, Outcome& out,
                std::vector<Node>& units) const {
        if (node.count == frontier_depth) {
            units.push_back(node);
            return;
        }
        ++out.nodes;
        if (node.count == size_) {
            if (node.deficient == 0) out.found.push_back(node.chosen);
            return;
        }
        if (prune(node)) return;
        std::array<std::uint8_t, 63> cand;
        const unsigned nc = order_candidates(node, cand);
        std::uint64_t remaining = node.eligible;
        for (unsigned i = 0; i < nc; ++i) {
            remaining &= ~(std::uint64_t{1} << cand[i]);
            expand(child_of(node, cand[i], remaining), frontier_depth, out, units);
        }
    }

    const Geometry& g_;
    unsigned size_, n_, required_, num_hyp_;
    std::vector<std::uint8_t> pbits_;
    std::vector<std::uint64_t> hyps_of_point_;
    std::vector<std::uint64_t> pts_of_hyp_;
};

} // namespace detail

// Rank-pruned exhaustive search. When the result says exhausted, the found
// list is complete: in particular an empty list proves no strong blocking
// set of the given size exists. A branch is cut as soon as some hyperplane
// can no longer reach full intersection rank even if every remaining
// eligible point on it were taken.
//
// The node budget is divided evenly over the depth-two work units up front,
// so a budget-limited run covers the same nodes no matter how many workers
// execute it. Unused shares are not redistributed.
inline SearchResult prove_nonexistence(const Geometry& g, unsigned size,
                                       const SearchConfig& cfg = {}) {
    if (cfg.mode != SearchMode::PrunedExhaustive)
        throw std::invalid_argument("prove_nonexistence requires the pruned-exhaustive mode");
    const detail::PrunedEngine engine(g, size);
    const std::uint64_t budget = detail::mode_budget(cfg);

    SearchResult result;
    detail::PrunedEngine::Outcome shallow;
    std::vector<detail::PrunedEngine::Node> units;
    const unsigned frontier_depth = size > 2 ? 2 : 0;
    if (frontier_depth == 0) {
        detail::PrunedEngine::Outcome out;
        engine.run(engine.root(), budget, out);
        result.found = std::move(out.found);
        result.nodes_explored = out.nodes;
        result.exhausted = !out.hit_budget;
    } else {
        engine.frontier(frontier_depth, shallow, units);
        const std::uint64_t pool = budget > shallow.nodes ? budget - shallow.nodes : 0;
        const auto nu = static_cast<std::uint64_t>(units.size());
        std::vector<detail::PrunedEngine::Outcome> outcomes(units.size());
        std::atomic<std::size_t> cursor{0};
        auto work = [&] {
            for (;;) {
                const std::size_t u = cursor.fetch_add(1);
                if (u >= units.size()) return;
                const std::uint64_t share = nu ? pool / nu + (u < pool % nu ? 1 : 0) : 0;
                engine.run(units[u], share, outcomes[u]);
            }
        };
        const unsigned workers =
            std::min<std::size_t>(detail::clamp_workers(cfg.workers), units.size());
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool_threads;
            for (unsigned w = 0; w < workers; ++w) pool_threads.emplace_back(work);
            for (auto& t : pool_threads) t.join();
        }
        result.found = std::move(shallow.found);
        result.nodes_explored = shallow.nodes;
        result.exhausted = true;
        for (auto& out : outcomes) {
            result.found.insert(result.found.end(), out.found.begin(), out.found.end());
            result.nodes_explored += out.nodes;
            if (out.hit_budget) result.exhausted = false;
        }
    }
    std::sort(result.found.begin(), result.found.end());
    result.found.erase(std::unique(result.found.begin(), result.found.end()),
                       result.found.end());
    detail::reverify_found(g, result.found);
    return result;
}

// Randomized construction for q = 2: each trial draws pairwise disjoint
// lines uniformly until `line_count` are placed (or the trial dies), then
// the union is tested. Trials are split across workers; worker w uses the
// stream seeded with seed + w, so any fixed worker count reproduces.
inline SearchResult search_line_union(const Geometry& g, unsigned line_count,
                                      const SearchConfig& cfg = {}) {
    if (cfg.mode != SearchMode::RandomLineUnion)
        throw std::invalid_argument("search_line_union requires the random-line-union mode");
    if (g.q() != 2) throw std::invalid_argument("line-union search handles q = 2 only");
    if (line_count == 0 || 3 * line_count > g.num_points())
        throw std::invalid_argument("line count out of range");
    const std::uint64_t trials = detail::mode_budget(cfg);
    const unsigned workers = detail::clamp_workers(cfg.workers);

    std::vector<std::vector<std::uint64_t>> found(workers);
    auto run = [&](unsigned w) {
        std::mt19937_64 rng(cfg.seed + w);
        const std::uint64_t share = trials / workers + (w < trials % workers ? 1 : 0);
        std::unordered_set<std::uint64_t> seen;
        std::vector<std::uint32_t> pool;
        for (std::uint64_t t = 0; t < share; ++t) {
            std::uint64_t mask = 0;
            unsigned placed = 0;
            pool.clear();
            for (std::uint32_t l = 0; l < g.num_lines(); ++l) pool.push_back(l);
            while (placed < line_count) {
                std::erase_if(pool, [&](std::uint32_t l) {
                    return (g.line(l).member_mask & mask) != 0;
                });
                if (pool.empty()) break;
                const std::uint32_t pick =
                    pool[static_cast<std::size_t>(rng() % pool.size())];
                mask |= g.line(pick).member_mask;
                ++placed;
            }
            if (placed == line_count && detail::strong_quick(g, mask)) seen.insert(mask);
        }
        found[w].assign(seen.begin(), seen.end());
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    SearchResult result;
    for (auto& part : found)
        result.found.insert(result.found.end(), part.begin(), part.end());
    std::sort(result.found.begin(), result.found.end());
    result.found.erase(std::unique(result.found.begin(), result.found.end()),
                       result.found.end());
    result.nodes_explored = trials;
    result.exhausted = false;
    detail::reverify_found(g, result.found);
    return result;
}

// Single entry point used by the command line: `target` is always a point
// count; the randomized mode requires it to be a multiple of the line size.
inline SearchResult run_search(const Geometry& g, unsigned target, const SearchConfig& cfg = {}) {
    switch (cfg.mode) {
    case SearchMode::Exhaustive:
        return find_all_sbs(g, target, cfg);
    case SearchMode::PrunedExhaustive:
        return prove_nonexistence(g, target, cfg);
    case SearchMode::RandomLineUnion: {
        const unsigned per_line = g.q() + 1;
        if (target % per_line != 0)
            throw std::invalid_argument("line-union target must be a multiple of " +
                                        std::to_string(per_line));
        return search_line_union(g, target / per_line, cfg);
    }
    }
    throw std::invalid_argument("unknown search mode");
}

} // namespace minblock
