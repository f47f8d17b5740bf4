#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "leekit/abelian.hpp"
#include "leekit/witness.hpp"

namespace leekit {

struct ProgressEvent {
    std::int64_t nodes = 0;
    int depth = 0;
    std::int64_t elapsed_ms = 0;
};

struct SearchOptions {
    /// 0 disables the coefficient/dichotomy/triple prunes (completeness
    /// testing only); 1 enables them.
    int prune_level = 1;
    /// Worker threads for the frontier split. Outcomes and node counts do
    /// not depend on this value.
    int parallel_width = 1;
    /// Orbit symmetry quotient. Unset selects the default: on for cyclic
    /// groups, off otherwise.
    std::optional<bool> canonicalize;
    std::chrono::milliseconds time_budget{std::chrono::minutes(30)};
    /// Progress callback cadence; 0 disables reporting.
    std::int64_t progress_interval_ms = 0;
    std::function<void(const ProgressEvent&)> progress;
};

struct SearchTask {
    std::int64_t n = 0;
    AbelianGroup group;
    SearchOptions options;
};

enum class SearchStatus { found, exhausted_none, budget_exceeded };

std::string to_string(SearchStatus s);

/// Unfinished work: pair-index prefixes of the frontier branches that were
/// not completed within the budget.
struct ResumeToken {
    std::int64_t n = 0;
    AbelianGroup group;
    bool canonicalize = false;
    std::vector<std::vector<int>> prefixes;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted_none;
    std::optional<Witness> witness;  // lexicographically least, when found
    std::int64_t nodes_explored = 0;
    std::chrono::milliseconds wall_time{0};
    std::int64_t witnesses_found = 0;
    std::optional<ResumeToken> resume;
};

/// Depth-first search over selections of n inverse pairs out of the
/// (|H|-1)/2 available ones, with the coefficient-cap, dichotomy and
/// tripled-image prunes, exhaustive up to the optional symmetry quotient.
SearchOutcome search_witness(const SearchTask& task);

/// Continues a budget-interrupted run: only the token's branches are
/// explored.
SearchOutcome search_witness(const SearchTask& task, const ResumeToken& token);

/// Runs every isomorphism class of order 2n^2+1 in deterministic order.
std::vector<std::pair<AbelianGroup, SearchOutcome>> search_all_groups(
    std::int64_t n, const SearchOptions& options);

/// Minimum of the orbit of an inverse-closed set under the group's scalar
/// automorphisms and the coordinate permutations that preserve the factor
/// list (for cyclic groups this is the full automorphism group). Idempotent.
std::vector<GroupElement> canonical_form(const std::vector<GroupElement>& t,
                                         const AbelianGroup& group);

namespace search_detail {

/// Applies every automorphism of the generated family to an element index.
/// Exposed for orbit tests.
std::vector<std::vector<std::int64_t>> automorphism_index_maps(const AbelianGroup& group);

/// Visits every complete selection that survives pruning (canonicalization
/// off); used by the completeness tests.
void enumerate_witnesses(const SearchTask& task,
                         const std::function<void(const std::vector<GroupElement>&)>& visit);

}  // namespace search_detail

}  // namespace leekit
