#include "padicdyn/oracle.hpp"

#include <algorithm>

namespace padicdyn {

namespace {

uint64_t level_modulus(const ValueTable& t, uint32_t level) {
    if (level < 1 || level > t.n_cert)
        throw precondition_error("oracle level outside [1, n_cert]");
    uint64_t pk = 1;
    for (uint32_t i = 0; i < level; ++i) pk *= t.cfg.p;
    return pk;
}

} // namespace

bool CycleReport::permutation_through(uint32_t n) const {
    return n <= checked_to && (!first_perm_failure || *first_perm_failure > n);
}

bool CycleReport::transitive_through(uint32_t n) const {
    return n <= checked_to && (!first_failure || *first_failure > n);
}

bool permutation_check(const ValueTable& t, uint32_t level) {
    const uint64_t pk = level_modulus(t, level);
    std::vector<bool> seen(pk, false);
    for (uint64_t m = 0; m < pk; ++m) {
        uint64_t y = t.v[m] % pk;
        if (seen[y]) return false;
        seen[y] = true;
    }
    return true;
}

LevelReport cycle_structure(const ValueTable& t, uint32_t level) {
    const uint64_t pk = level_modulus(t, level);
    LevelReport r;
    r.level = level;
    if (!permutation_check(t, level))
        throw precondition_error("cycle_structure: not a permutation at level " + std::to_string(level));
    r.is_permutation = true;
    std::vector<bool> visited(pk, false);
    for (uint64_t start = 0; start < pk; ++start) {
        if (visited[start]) continue;
        uint64_t len = 0;
        uint64_t x = start;
        do {
            visited[x] = true;
            x = t.v[x] % pk;
            ++len;
        } while (x != start);
        r.cycle_lengths.push_back(len);
    }
    std::sort(r.cycle_lengths.begin(), r.cycle_lengths.end());
    r.is_single_cycle = r.cycle_lengths.size() == 1 && r.cycle_lengths[0] == pk;
    return r;
}

CycleReport transitivity_ladder(const ValueTable& t, uint32_t max_level, bool assume_monotone) {
    if (max_level == 0 || max_level > t.n_cert) max_level = t.n_cert;
    CycleReport rep;
    rep.checked_to = max_level;
    bool cycles_alive = true;
    for (uint32_t n = 1; n <= max_level; ++n) {
        LevelReport lr;
        lr.level = n;
        lr.is_permutation = permutation_check(t, n);
        if (!lr.is_permutation) {
            if (!rep.first_perm_failure) rep.first_perm_failure = n;
            if (!rep.first_failure) rep.first_failure = n;
            rep.levels.push_back(std::move(lr));
            if (assume_monotone) break; // bijectivity cannot recover for a compatible map
            continue;
        }
        if (cycles_alive) {
            LevelReport full = cycle_structure(t, n);
            lr = std::move(full);
            if (!lr.is_single_cycle) {
                if (!rep.first_failure) rep.first_failure = n;
                // a single p^(n+1)-cycle reduces to a single p^n-cycle, so
                // once transitivity breaks it stays broken
                if (assume_monotone) cycles_alive = false;
            }
        }
        rep.levels.push_back(std::move(lr));
    }
    return rep;
}

bool oracle_measure_preserving(const ValueTable& t, uint32_t max_level) {
    if (max_level == 0 || max_level > t.n_cert) max_level = t.n_cert;
    for (uint32_t n = 1; n <= max_level; ++n)
        if (!permutation_check(t, n)) return false;
    return true;
}

bool sn_ladder_step(const ValueTable& t, uint32_t level) {
    if (t.cfg.p != 2)
        throw precondition_error("the parity ladder step is a p = 2 statement");
    if (level + 1 > t.n_cert)
        throw precondition_error("digit sum S_n needs digit n: level + 1 must not exceed n_cert");
    if (!oracle_measure_preserving(t))
        throw precondition_error("parity ladder step needs a measure-preserving table");
    LevelReport lr = cycle_structure(t, level);
    if (!lr.is_single_cycle)
        throw precondition_error("parity ladder step needs transitivity at the current level");
    uint64_t pk = level_modulus(t, level);
    uint64_t s = 0;
    for (uint64_t m = 0; m < pk; ++m)
        s += t.digit(m, level);
    return (s & 1) == 1;
}

} // namespace padicdyn
