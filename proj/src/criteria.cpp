#include "padicdyn/criteria.hpp"

#include "padicdyn/oracle.hpp"

namespace padicdyn {

namespace {

uint64_t pow_u64(uint64_t p, uint32_t k) {
    uint64_t r = 1;
    while (k--) r *= p;
    return r;
}

Condition scan_valuation_at_least(const char* label, const std::vector<uint64_t>& c, uint64_t p,
                                  uint32_t extra, uint64_t first_m, uint32_t cap) {
    // valuation(c_m) >= floor(log_p m) + extra, exponent capped at the
    // certified precision; c_m == 0 passes at any finite requirement.
    Condition cond{label, true, std::nullopt, {}};
    for (uint64_t m = first_m; m < c.size(); ++m) {
        if (c[m] == 0) continue;
        uint32_t need = std::min(floor_log(p, m) + extra, cap);
        if (valuation_u64(p, c[m]) < need) {
            cond.satisfied = false;
            cond.witness = m;
            return cond;
        }
    }
    return cond;
}

void finish(Verdict& v) {
    v.passed = true;
    for (const Condition& c : v.conditions) v.passed = v.passed && c.satisfied;
}

void require_mp_oracle(const ValueTable& t, const char* who) {
    if (!oracle_measure_preserving(t))
        throw precondition_error(std::string(who) + ": table is not measure-preserving at some level <= n_cert");
}

} // namespace

const Condition* Verdict::find(const std::string& label) const {
    for (const Condition& c : conditions)
        if (c.label == label) return &c;
    return nullptr;
}

// --- Mahler ------------------------------------------------------------------

Verdict mahler_lipschitz(const MahlerTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back(
        scan_valuation_at_least("valuation(a_m) >= floor(log m)", t.a, t.cfg.p, 0, 1, t.n_cert));
    finish(v);
    return v;
}

Verdict mahler_mp_sufficient(const MahlerTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back({"a_1 is a unit", t.a.size() > 1 && t.a[1] % t.cfg.p != 0, std::nullopt, {}});
    v.conditions.push_back(
        scan_valuation_at_least("valuation(a_m) >= floor(log m) + 1 for m >= 2", t.a, t.cfg.p, 1, 2, t.n_cert));
    finish(v);
    return v;
}

namespace {

Condition mahler_ergodic_tail(const MahlerTable& t) {
    // a_m ≡ 0 (mod p^(floor(log(m+1)) + 1)) for m >= 2, capped at n_cert.
    Condition cond{"a_m ≡ 0 (mod p^(floor(log(m+1)) + 1)) for m >= 2", true, std::nullopt, {}};
    for (uint64_t m = 2; m < t.a.size(); ++m) {
        if (t.a[m] == 0) continue;
        uint32_t need = std::min(floor_log(t.cfg.p, m + 1) + 1, t.n_cert);
        if (valuation_u64(t.cfg.p, t.a[m]) < need) {
            cond.satisfied = false;
            cond.witness = m;
            return cond;
        }
    }
    return cond;
}

} // namespace

Verdict mahler_ergodic_sufficient_p(const MahlerTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back({"a_0 is a unit", !t.a.empty() && t.a[0] % t.cfg.p != 0, std::nullopt, {}});
    v.conditions.push_back({"a_1 ≡ 1 (mod p)", t.a.size() > 1 && t.a[1] % t.cfg.p == 1, std::nullopt, {}});
    v.conditions.push_back(mahler_ergodic_tail(t));
    finish(v);
    return v;
}

Verdict mahler_ergodic_exact_2(const MahlerTable& t) {
    if (t.cfg.p != 2) throw config_error("exact Mahler ergodicity criterion is a p = 2 statement");
    if (t.n_cert < 2) throw precision_error("exact Mahler ergodicity criterion needs n_cert >= 2");
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back({"a_0 ≡ 1 (mod 2)", t.a[0] % 2 == 1, std::nullopt, {}});
    v.conditions.push_back({"a_1 ≡ 1 (mod 4)", t.a[1] % 4 == 1, std::nullopt, {}});
    v.conditions.push_back(mahler_ergodic_tail(t));
    finish(v);
    return v;
}

// --- van der Put --------------------------------------------------------------

Verdict vdp_lipschitz(const VdpTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back(
        scan_valuation_at_least("valuation(B_m) >= floor(log m)", t.B, t.cfg.p, 0, 1, t.n_cert));
    finish(v);
    return v;
}

namespace {

Condition low_block_distinct(const VdpTable& t) {
    Condition cond{"B_0..B_{p-1} distinct mod p", true, std::nullopt, {}};
    std::vector<bool> seen(t.cfg.p, false);
    for (uint64_t m = 0; m < t.cfg.p; ++m) {
        uint64_t r = t.B[m] % t.cfg.p;
        if (seen[r]) {
            cond.satisfied = false;
            cond.witness = m;
            return cond;
        }
        seen[r] = true;
    }
    return cond;
}

Condition tail_congruent_to_q(const VdpTable& t) {
    Condition cond{"B_m ≡ q(m) (mod p^(floor(log m) + 1)) for m >= p", true, std::nullopt, {}};
    for (uint64_t m = t.cfg.p; m < t.B.size(); ++m) {
        IndexDecomposition d = decompose_index(m, t.cfg.p);
        uint64_t mod = pow_u64(t.cfg.p, d.s + 1);
        if (t.B[m] % mod != d.q % mod) {
            cond.satisfied = false;
            cond.witness = m;
            return cond;
        }
    }
    return cond;
}

} // namespace

Verdict vdp_mp_sufficient_p(const VdpTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back(low_block_distinct(t));
    v.conditions.push_back(tail_congruent_to_q(t));
    finish(v);
    return v;
}

Verdict vdp_mp_necessary(const VdpTable& t) {
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back(low_block_distinct(t));
    Condition cond{"valuation(B_m) = floor(log m) for m >= p", true, std::nullopt, {}};
    for (uint64_t m = t.cfg.p; m < t.B.size(); ++m) {
        if (t.B[m] == 0 || valuation_u64(t.cfg.p, t.B[m]) != floor_log(t.cfg.p, m)) {
            cond.satisfied = false;
            cond.witness = m;
            break;
        }
    }
    v.conditions.push_back(cond);
    finish(v);
    return v;
}

namespace {

Condition units_from_two(const NormalizedVdp& t) {
    Condition cond{"b_m is a unit for m >= 2", true, std::nullopt, {}};
    for (uint64_t m = 2; m < t.b.size(); ++m) {
        if (t.b[m] % t.cfg.p == 0) {
            cond.satisfied = false;
            cond.witness = m;
            return cond;
        }
    }
    return cond;
}

} // namespace

Verdict vdp_mp_exact_2(const NormalizedVdp& t) {
    if (t.cfg.p != 2) throw config_error("exact van der Put MP criterion is a p = 2 statement");
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back({"b_0 + b_1 ≡ 1 (mod 2)", (t.b[0] + t.b[1]) % 2 == 1, std::nullopt, {}});
    v.conditions.push_back(units_from_two(t));
    finish(v);
    return v;
}

Verdict vdp_ergodic_exact_2(const NormalizedVdp& t) {
    if (t.cfg.p != 2) throw config_error("exact van der Put ergodicity criterion is a p = 2 statement");
    if (t.n_cert < 3) throw precision_error("exact van der Put ergodicity criterion needs n_cert >= 3");
    Verdict v;
    v.verified_to_level = t.n_cert;
    v.conditions.push_back({"b_0 ≡ 1 (mod 2)", t.b[0] % 2 == 1, std::nullopt, {}});
    v.conditions.push_back({"b_0 + b_1 ≡ 3 (mod 4)", (t.b[0] + t.b[1]) % 4 == 3, std::nullopt, {}});
    v.conditions.push_back({"b_2 + b_3 ≡ 2 (mod 4)", (t.b[2] + t.b[3]) % 4 == 2, std::nullopt, {}});
    v.conditions.push_back(units_from_two(t));
    Condition blocks{"block sums of b ≡ 0 (mod 4) for 3 <= n < n_cert", true, std::nullopt, {}};
    for (uint32_t n = 3; n < t.n_cert; ++n) {
        uint64_t lo = pow_u64(2, n - 1), hi = pow_u64(2, n);
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m) sum += t.b[m] % 4;
        if (sum % 4 != 0) {
            blocks.satisfied = false;
            blocks.witness = n;
            break;
        }
    }
    blocks.note = "verified up to level " + std::to_string(t.n_cert);
    v.conditions.push_back(blocks);
    finish(v);
    return v;
}

Verdict vdp_ergodic_sufficient_p(const VdpTable& t) {
    if (t.n_cert < 3) throw precision_error("the ergodicity congruence family needs n_cert >= 3");
    const uint64_t p = t.cfg.p;
    Verdict v;
    v.verified_to_level = t.n_cert;

    uint64_t s = t.B[0] % p;
    v.conditions.push_back({"B_0 ≡ s (mod p) with 0 < s < p", s != 0, std::nullopt,
                            s != 0 ? "s = " + std::to_string(s) : std::string{}});

    // sum_{m<p} B_m ≡ p s + p(p-1)/2 (mod p^2)
    uint64_t p2 = p * p;
    uint64_t low_sum = 0;
    for (uint64_t m = 0; m < p; ++m) low_sum = (low_sum + t.B[m]) % p2;
    uint64_t want_low = (p * s + p * (p - 1) / 2) % p2;
    Condition c2{"sum_{m<p} B_m ≡ p s + p(p-1)/2 (mod p^2)", low_sum == want_low, std::nullopt, {}};
    if (!c2.satisfied && s != 0) {
        // Diagnostic only: does some other residue 0 < s' < p satisfy the sum?
        for (uint64_t s2 = 1; s2 < p; ++s2) {
            if (s2 != s && low_sum == (p * s2 + p * (p - 1) / 2) % p2) {
                c2.note = "would hold for s' = " + std::to_string(s2) + " instead of s = B_0 mod p";
                break;
            }
        }
    }
    v.conditions.push_back(c2);

    // sum_{m=p}^{p^2-1} B_m ≡ (p-1)p^3/2 (mod p^3): 4 mod 8 at p = 2, else 0.
    uint64_t p3 = p2 * p;
    uint64_t mid_sum = 0;
    for (uint64_t m = p; m < p2; ++m) mid_sum = (mid_sum + t.B[m]) % p3;
    uint64_t want_mid = (p == 2) ? 4 : 0;
    v.conditions.push_back(
        {"sum_{p<=m<p^2} B_m ≡ (p-1)p^3/2 (mod p^3)", mid_sum == want_mid, std::nullopt, {}});

    v.conditions.push_back(tail_congruent_to_q(t));

    Condition blocks{"block sums of B ≡ 0 (mod p^(n+1)) for 3 <= n < n_cert", true, std::nullopt, {}};
    for (uint32_t n = 3; n < t.n_cert; ++n) {
        uint64_t lo = pow_u64(p, n - 1), hi = lo * p;
        uint64_t mod = hi * p; // p^(n+1)
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m) sum = (sum + t.B[m]) % mod;
        if (sum != 0) {
            blocks.satisfied = false;
            blocks.witness = n;
            break;
        }
    }
    blocks.note = "verified up to level " + std::to_string(t.n_cert);
    v.conditions.push_back(blocks);

    Condition affine{"B_m ≡ B_0 + m (mod p) for 0 < m < p", true, std::nullopt, {}};
    for (uint64_t m = 1; m < p; ++m) {
        if (t.B[m] % p != (t.B[0] + m) % p) {
            affine.satisfied = false;
            affine.witness = m;
            break;
        }
    }
    v.conditions.push_back(affine);
    finish(v);
    return v;
}

// --- Digit statistics ----------------------------------------------------------

DigitStats digit_stats(const ValueTable& t) {
    DigitStats d;
    d.n_cert = t.n_cert;
    d.S.assign(t.n_cert, 0);
    d.T.assign(t.n_cert, 0);
    const uint64_t p = t.cfg.p;
    for (uint32_t n = 1; n < t.n_cert; ++n) {
        uint64_t pn = pow_u64(p, n);
        uint64_t sum = 0;
        for (uint64_t m = 0; m < pn; ++m)
            sum += (t.v[m] / pn) % p;
        d.S[n] = sum;
    }
    VdpTable B = vdp_extract(t);
    for (uint32_t n = 2; n < t.n_cert; ++n) {
        uint64_t lo = pow_u64(p, n - 1), hi = lo * p, pn = hi;
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m)
            sum += (B.B[m] / pn) % p; // b_{m,1} is digit n of B_m in block n
        d.T[n] = sum;
    }
    return d;
}

Verdict block_sum_identity_check(const ValueTable& t) {
    const uint64_t p = t.cfg.p;
    const uint64_t mod = t.modulus();
    VdpTable B = vdp_extract(t);
    Verdict v;
    v.verified_to_level = t.n_cert;
    Condition cond{"sum of block B_m = sum_{m<p^n} f(m) - p sum_{m<p^(n-1)} f(m) (mod p^n_cert)",
                   true, std::nullopt, {}};
    // prefix[k] = sum_{m<p^k} f(m) mod p^n_cert
    for (uint32_t n = 2; n < t.n_cert; ++n) {
        uint64_t lo = pow_u64(p, n - 1), hi = lo * p;
        uint64_t bsum = 0, flo = 0, fhi = 0;
        for (uint64_t m = lo; m < hi; ++m) bsum = (bsum + B.B[m]) % mod;
        for (uint64_t m = 0; m < lo; ++m) flo = (flo + t.v[m]) % mod;
        for (uint64_t m = 0; m < hi; ++m) fhi = (fhi + t.v[m]) % mod;
        uint64_t rhs = static_cast<uint64_t>(
            (fhi + static_cast<__uint128_t>(mod) * p - static_cast<__uint128_t>(p) * flo % mod) % mod);
        if (bsum != rhs % mod) {
            cond.satisfied = false;
            cond.witness = n;
            break;
        }
    }
    v.conditions.push_back(cond);
    finish(v);
    return v;
}

Verdict mp_block_sum_congruence_check(const ValueTable& t) {
    require_mp_oracle(t, "block-sum congruence");
    const uint64_t p = t.cfg.p;
    VdpTable B = vdp_extract(t);
    DigitStats d = digit_stats(t);
    Verdict v;
    v.verified_to_level = t.n_cert;
    Condition cond{"block B-sum ≡ (p-1)p^(2n-1)/2 + T_n p^n (mod p^(n+1))", true, std::nullopt, {}};
    for (uint32_t n = 2; n < t.n_cert; ++n) {
        uint64_t pn = pow_u64(p, n);
        uint64_t mod = pn * p;
        uint64_t lo = pn / p, hi = pn;
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m) sum = (sum + B.B[m]) % mod;
        // (p-1)p^(2n-1)/2 mod p^(n+1) is 4 at (p, n) = (2, 2) and 0 otherwise.
        uint64_t half_term = (p == 2 && n == 2) ? 4 : 0;
        uint64_t want = static_cast<uint64_t>(
            (half_term + static_cast<__uint128_t>(d.T[n]) % p * pn) % mod);
        if (sum != want) {
            cond.satisfied = false;
            cond.witness = n;
            break;
        }
    }
    v.conditions.push_back(cond);
    finish(v);
    return v;
}

Verdict equivalence_chain_check(const ValueTable& t) {
    require_mp_oracle(t, "equivalence chain");
    const uint64_t p = t.cfg.p;
    VdpTable B = vdp_extract(t);
    NormalizedVdp nb = normalize(B);
    DigitStats d = digit_stats(t);
    Verdict v;
    v.verified_to_level = t.n_cert;

    for (uint32_t n = 2; n < t.n_cert; ++n) {
        Condition cond{"four-way residue agreement at n = " + std::to_string(n), true, std::nullopt, {}};
        uint64_t pn = pow_u64(p, n);
        uint64_t mod = pn * p;
        uint64_t lo = pn / p, hi = pn;

        uint64_t bsum = 0, nsum = 0;
        for (uint64_t m = lo; m < hi; ++m) {
            bsum = (bsum + B.B[m]) % mod;
            nsum = (nsum + nb.b[m]) % (p * p);
        }
        bool ok = true;
        std::string why;
        if (bsum % pn != 0) {
            ok = false;
            why = "block B-sum not divisible by p^n";
        }
        if (ok && nsum % p != 0) {
            ok = false;
            why = "block b-sum not divisible by p";
        }
        if (ok) {
            uint64_t r_B = (bsum / pn) % p;
            uint64_t r_b = (nsum / p) % p;
            uint64_t r_S = (d.S[n] % p + p - d.S[n - 1] % p) % p;
            uint64_t r_T = d.T[n] % p;
            // At (p, n) = (2, 2) the residue of the coefficient sums is the
            // complement of the digit-sum residue; everywhere else all four agree.
            uint64_t want_B = (p == 2 && n == 2) ? (1 - r_T) : r_T;
            if (r_b != r_B)
                ok = false, why = "coefficient sums disagree";
            else if (r_S != r_T)
                ok = false, why = "digit sums disagree";
            else if (r_B != want_B)
                ok = false, why = "coefficient and digit residues disagree";
            else
                cond.note = "r = " + std::to_string(r_T);
        }
        if (!ok) {
            cond.satisfied = false;
            cond.witness = n;
            cond.note = why;
        }
        v.conditions.push_back(cond);
    }
    finish(v);
    return v;
}

// --- Polynomials over Z_2 --------------------------------------------------------

PolyParitySums poly_parity_sums(const std::vector<bigint>& coeffs) {
    PolyParitySums s;
    for (size_t i = 1; i < coeffs.size(); ++i) {
        if (i % 2 == 0)
            s.A0 += coeffs[i];
        else
            s.A1 += coeffs[i];
    }
    return s;
}

namespace {

uint64_t nonneg_mod(const bigint& v, uint64_t m) {
    bigint r = v % m;
    if (r < 0) r += m;
    return r.convert_to<uint64_t>();
}

} // namespace

Verdict poly_ergodic_z2(const std::vector<bigint>& coeffs) {
    if (coeffs.empty() || coeffs[0] != 1)
        throw precondition_error("normalization unsupported: the constant term must be exactly 1");
    PolyParitySums s = poly_parity_sums(coeffs);
    bigint a1 = coeffs.size() > 1 ? coeffs[1] : 0;
    bigint a2 = coeffs.size() > 2 ? coeffs[2] : 0;
    Verdict v;
    v.conditions.push_back({"a_1 ≡ 1 (mod 2)", nonneg_mod(a1, 2) == 1, std::nullopt, {}});
    v.conditions.push_back({"A_1 ≡ 1 (mod 2)", nonneg_mod(s.A1, 2) == 1, std::nullopt, {}});
    v.conditions.push_back({"A_0 + A_1 ≡ 1 (mod 4)", nonneg_mod(s.A0 + s.A1, 4) == 1, std::nullopt, {}});
    v.conditions.push_back({"a_1 + 2 a_2 + A_1 ≡ 2 (mod 4)", nonneg_mod(a1 + 2 * a2 + s.A1, 4) == 2, std::nullopt, {}});
    finish(v);
    return v;
}

} // namespace padicdyn
