#pragma once

#include "padicdyn/value_table.hpp"

namespace padicdyn {

/// Brute-force ground truth: the induced map on Z/p^n is m -> V[m] mod p^n
/// over the canonical representatives m < p^n.

struct LevelReport {
    uint32_t level = 0;
    bool is_permutation = false;
    bool is_single_cycle = false;
    std::vector<uint64_t> cycle_lengths; // sorted; empty when not a permutation
};

struct CycleReport {
    uint32_t checked_to = 0; // highest level examined
    std::vector<LevelReport> levels;
    std::optional<uint32_t> first_failure;      // first non-transitive level
    std::optional<uint32_t> first_perm_failure; // first non-bijective level

    bool permutation_through(uint32_t n) const;
    bool transitive_through(uint32_t n) const;
};

/// true iff {V[m] mod p^n : m < p^n} has p^n distinct elements.
bool permutation_check(const ValueTable& t, uint32_t level);

/// Cycle decomposition at one level. Throws precondition_error when the map
/// is not a permutation at that level.
LevelReport cycle_structure(const ValueTable& t, uint32_t level);

/// Levels 1..max_level (default n_cert). For 1-Lipschitz inputs a failure
/// at level n forces failure at every higher level, so the transitivity walk
/// short-circuits; bijectivity keeps being tracked afterwards so
/// measure-preservation is still decided across the full ladder. Pass
/// assume_monotone = false to scan every level of an arbitrary table.
CycleReport transitivity_ladder(const ValueTable& t, uint32_t max_level = 0, bool assume_monotone = true);

/// Permutation at every level 1..max_level (default n_cert).
bool oracle_measure_preserving(const ValueTable& t, uint32_t max_level = 0);

/// The parity step of the transitivity ladder at p = 2: given that f is
/// measure-preserving and transitive mod 2^level, f is transitive mod
/// 2^(level+1) iff the digit sum S_level is odd. Returns that parity bit;
/// verifies the preconditions and throws precondition_error if they fail.
bool sn_ladder_step(const ValueTable& t, uint32_t level);

} // namespace padicdyn
