#pragma once

#include "padicdyn/value_table.hpp"

namespace padicdyn {

// ---------------------------------------------------------------------------
// van der Put basis
//
// chi(m, .) is the characteristic function of the ball of radius
// p^(-floor(log_p m) - 1) around m; chi(0, .) of the ball p*Z_p around 0.
// Every continuous f has f(x) = sum_m B_m chi(m, x), and the coefficients
// are recovered from values as B_m = f(m) - f(m - q(m)) for m >= p,
// B_m = f(m) below.
// ---------------------------------------------------------------------------

/// 1 iff x ≡ m (mod p^(floor(log_p m)+1)); m = 0 uses x ≡ 0 (mod p).
/// pre: m < p^N so the congruence is decidable at precision N.
int chi(uint64_t m, const PadicTrunc& x);
int chi_residue(uint64_t m, uint64_t x, const PrimeConfig& cfg, uint32_t n_cert);

/// Coefficients B_m for m < p^n_cert, canonical residues mod p^n_cert.
struct VdpTable {
    PrimeConfig cfg;
    uint32_t n_cert = 0;
    std::vector<uint64_t> B;

    uint64_t modulus() const;
    uint64_t size() const { return B.size(); }
    uint64_t at(uint64_t m) const;
};

VdpTable make_vdp_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> coeffs);

/// valuation(B_m) >= floor(log_p m) for all m — the coefficient form of the
/// 1-Lipschitz bound.
bool vdp_admissible(const VdpTable& t);

/// The normalized view b_m with B_m = p^floor(log_p m) * b_m, together with
/// its digit accessors. Defined only for admissible tables; entry m carries
/// n_cert - floor(log_p m) certified digits.
struct NormalizedVdp {
    PrimeConfig cfg;
    uint32_t n_cert = 0;
    std::vector<uint64_t> b;

    uint64_t at(uint64_t m) const;
    uint64_t digit(uint64_t m, uint32_t i) const; // b_{m,i}
};

/// Throws precision_error if t is not Lipschitz-admissible.
NormalizedVdp normalize(const VdpTable& t);

/// Series evaluation at a single point (the canonical representative of x).
uint64_t vdp_evaluate(const VdpTable& t, uint64_t x);
PadicTrunc vdp_evaluate(const VdpTable& t, const PadicTrunc& x);

/// Full value table, via the telescoped recurrence f(m) = B_m + f(m - q(m)).
ValueTable vdp_compile(const VdpTable& t);

/// Coefficient recovery from a value table.
VdpTable vdp_extract(const ValueTable& values);

// ---------------------------------------------------------------------------
// Mahler basis
//
// f(x) = sum_m a_m C(x, m) with C(x, m) the binomial-coefficient polynomial.
// Coefficients are recovered as iterated forward differences at 0:
// a_m = (Delta^m f)(0).
// ---------------------------------------------------------------------------

struct MahlerTable {
    PrimeConfig cfg;
    uint32_t n_cert = 0;
    std::vector<uint64_t> a;

    uint64_t modulus() const;
    uint64_t size() const { return a.size(); }
    uint64_t at(uint64_t m) const;
};

MahlerTable make_mahler_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> coeffs);

/// valuation(a_m) >= floor(log_p m) for all m.
bool mahler_admissible(const MahlerTable& t);

/// C(x, m) mod p^N for the canonical representative of x. Falling-factorial
/// product with powers of p tracked exactly and unit parts divided via
/// Hensel inverses, so no division by a non-unit ever happens.
PadicTrunc binom_eval(const PadicTrunc& x, uint64_t m);

/// Series evaluation at the canonical representative of x. For admissible
/// tables this equals the function's value mod p^n_cert; for non-admissible
/// tables the sum is still exact over the stored coefficients, but callers
/// must opt in (the table does not certify a 1-Lipschitz function).
PadicTrunc mahler_evaluate(const MahlerTable& t, const PadicTrunc& x, bool require_admissible = true);
uint64_t mahler_evaluate(const MahlerTable& t, uint64_t x, bool require_admissible = true);

/// Full value table via the Pascal-row recurrence (additions only),
/// O(p^n_cert * support).
ValueTable mahler_compile(const MahlerTable& t, bool require_admissible = true);

/// Difference triangle; O(len^2).
MahlerTable mahler_extract(const ValueTable& values);

// ---------------------------------------------------------------------------
// Difference operator on value tables
// ---------------------------------------------------------------------------

/// (Delta f)(m) = f(m+1) - f(m), same length and n_cert as the input. The
/// top entry wraps with f(p^k) := f(0), which is exact when f is
/// 1-Lipschitz (f(m + p^k) ≡ f(m) mod p^k); for arbitrary tables use
/// delta_strict.
ValueTable delta(const ValueTable& values);

/// In-range differences only: output at n_cert - 1 with no wrap assumption.
ValueTable delta_strict(const ValueTable& values);

} // namespace padicdyn
