#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "padicdyn/bases.hpp"
#include "padicdyn/value_table.hpp"

namespace padicdyn {

using bigint = boost::multiprecision::cpp_int;

struct Condition {
    std::string label;
    bool satisfied = true;
    std::optional<uint64_t> witness; // first violating index / level
    std::string note;
};

/// Outcome of one criterion: the conjunction of its labeled conditions.
/// Conditions quantified over all m or all n are checked for every index the
/// table certifies; verified_to_level records that scope and verdicts are
/// never extrapolated beyond it.
struct Verdict {
    bool passed = true;
    std::vector<Condition> conditions;
    uint32_t verified_to_level = 0;

    const Condition* find(const std::string& label) const;
};

// --- Mahler-coefficient criteria -------------------------------------------

/// 1-Lipschitz iff valuation(a_m) >= floor(log_p m) for every m.
Verdict mahler_lipschitz(const MahlerTable& t);

/// Measure-preserving whenever a_1 is a unit and
/// valuation(a_m) >= floor(log_p m) + 1 for all m >= 2.
Verdict mahler_mp_sufficient(const MahlerTable& t);

/// Ergodic whenever a_0 is a unit, a_1 ≡ 1 (mod p) and
/// a_m ≡ 0 (mod p^(floor(log_p(m+1)) + 1)) for all m >= 2.
Verdict mahler_ergodic_sufficient_p(const MahlerTable& t);

/// Exact criterion at p = 2: ergodic iff a_0 ≡ 1 (mod 2), a_1 ≡ 1 (mod 4)
/// and a_m ≡ 0 (mod 2^(floor(log2(m+1)) + 1)) for all m >= 2.
Verdict mahler_ergodic_exact_2(const MahlerTable& t);

// --- van der Put-coefficient criteria ---------------------------------------

/// 1-Lipschitz iff valuation(B_m) >= floor(log_p m) for every m.
Verdict vdp_lipschitz(const VdpTable& t);

/// Measure-preserving whenever B_0..B_{p-1} are distinct mod p and
/// B_m ≡ q(m) (mod p^(floor(log_p m) + 1)) for all m >= p.
Verdict vdp_mp_sufficient_p(const VdpTable& t);

/// Necessary for measure preservation: B_0..B_{p-1} distinct mod p and
/// valuation(B_m) exactly floor(log_p m) for all m >= p.
Verdict vdp_mp_necessary(const VdpTable& t);

/// Exact at p = 2: measure-preserving iff b_0 + b_1 is odd and every b_m
/// (m >= 2) is a unit.
Verdict vdp_mp_exact_2(const NormalizedVdp& t);

/// Exact at p = 2: ergodic iff b_0 odd, b_0 + b_1 ≡ 3 (mod 4),
/// b_2 + b_3 ≡ 2 (mod 4), every b_m (m >= 2) a unit, and each block sum
/// sum_{m=2^(n-1)}^{2^n - 1} b_m ≡ 0 (mod 4) for n >= 3. Needs n_cert >= 3.
Verdict vdp_ergodic_exact_2(const NormalizedVdp& t);

/// Sufficient for any p: the five core block/sum congruences for the shape
/// d + eps*x + p*Delta(g), plus B_m ≡ B_0 + m (mod p) for 0 < m < p.
/// Needs n_cert >= 3.
Verdict vdp_ergodic_sufficient_p(const VdpTable& t);

// --- Digit statistics and equivalences --------------------------------------

/// S[n] = sum of digit n of f(m) over m < p^n (valid for 1 <= n < n_cert);
/// T[n] = sum of the second normalized digits b_{m,1} over the level-n
/// coefficient block (valid for 2 <= n < n_cert). Slots outside those ranges
/// are zero-filled.
struct DigitStats {
    uint32_t n_cert = 0;
    std::vector<uint64_t> S;
    std::vector<uint64_t> T;
};

DigitStats digit_stats(const ValueTable& t);

/// Block-sum identity for any 1-Lipschitz table, checked mod p^n_cert for
/// every 2 <= n < n_cert:
///   sum_{m=p^(n-1)}^{p^n - 1} B_m = sum_{m<p^n} f(m) - p * sum_{m<p^(n-1)} f(m).
Verdict block_sum_identity_check(const ValueTable& t);

/// For oracle-verified measure-preserving tables, each level-n coefficient
/// block satisfies
///   sum B_m ≡ (p-1)p^(2n-1)/2 + T_n p^n (mod p^(n+1)),
/// for 2 <= n < n_cert. Refuses non-measure-preserving input.
Verdict mp_block_sum_congruence_check(const ValueTable& t);

/// For oracle-verified measure-preserving tables, the four quantities
///   sum B_m mod p^(n+1), sum b_m mod p^2, S_n - S_{n-1} mod p, T_n mod p
/// must cohere around a single residue r per level (with the sign of the
/// block-sum side flipped at (p, n) = (2, 2)). Reports the common r.
Verdict equivalence_chain_check(const ValueTable& t);

// --- Polynomial criterion over Z_2 -------------------------------------------

/// Parity-split coefficient sums of a polynomial with constant term 1:
/// A0 over even positive degrees, A1 over odd degrees. Exact integers.
struct PolyParitySums {
    bigint A0 = 0;
    bigint A1 = 0;
};

PolyParitySums poly_parity_sums(const std::vector<bigint>& coeffs);

/// Ergodicity of f = 1 + a_1 x + ... + a_d x^d over Z_2, decided by
///   a_1 ≡ 1 (mod 2), A_1 ≡ 1 (mod 2), A_0 + A_1 ≡ 1 (mod 4),
///   a_1 + 2 a_2 + A_1 ≡ 2 (mod 4).
/// Throws precondition_error unless the constant term is exactly 1.
Verdict poly_ergodic_z2(const std::vector<bigint>& coeffs);

} // namespace padicdyn
