#pragma once

#include "padicdyn/bases.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/function_spec.hpp"

namespace padicdyn {

/// Coefficient table of Delta(g) computed purely from g's coefficients:
///   B_m = G_{m+1} - G_m                      for 0 <= m <= p-2
///   B_{p-1} = G_p + G_0 - G_{p-1}
///   B_m = G_{m+1} - G_m                      inside a block, no carry
///   B_m = G_{m+1} - G_m - G_{p^(n-1)}        when m+1 carries into the top digit
/// Certified one level below the input. Requires an admissible g.
VdpTable delta_vdp(const VdpTable& g);

/// Coefficient-level hypotheses for solving Delta(g) = f:
///   (1) sum_{m<p} B_m ≡ 0 (mod p)
///   (2) each level-n block sums to 0 mod p^n (2 <= n <= n_cert).
Verdict anti_delta_hypotheses(const VdpTable& f);

/// Right inverse of delta_vdp: builds g with Delta(g) = f by block-wise
/// prefix sums, with the free coefficient G_0 = b0_choice. The result keeps
/// the input's certification level; delta_vdp of it reproduces f one level
/// lower. Throws precondition_error when the hypotheses fail (the message
/// names the failing level).
VdpTable anti_delta(const VdpTable& f, uint64_t b0_choice);

/// For an ergodic table over Z_2, recover g with f = 1 + x + 2*Delta(g):
/// subtract the coefficients of 1 + x, halve (exact because ergodicity
/// forces them even), and solve anti_delta. Certified one level below f.
VdpTable decompose_ergodic_form_2(const VdpTable& f);

/// Spec for d + eps*x + p*Delta(g). Requires d a unit, eps ≡ 1 (mod p), and
/// g certified one level deeper than cfg so the Delta layer compiles without
/// a wrap assumption.
FunctionSpec make_ergodic(const PrimeConfig& cfg, const bigint& d, const bigint& epsilon, FunctionSpec g);

/// Spec for d + x + p*g(x); measure-preserving for any d and 1-Lipschitz g.
FunctionSpec make_mp(const PrimeConfig& cfg, const bigint& d, FunctionSpec g);

enum class Profile {
    lipschitz,     // valuation(B_m) >= floor(log m), uniform over admissible residues
    mp_sufficient, // distinct low block + B_m ≡ q(m) envelope
    ergodic_core,  // the full ergodicity congruence family, built constructively
};

std::string to_string(Profile p);
Profile profile_from_string(const std::string& s);

/// Seeded, reproducible table generation; identical seed + profile gives an
/// identical table. Draws come from mt19937_64 with rejection sampling, so
/// every free digit is exactly uniform.
struct RandomSpec {
    uint64_t seed = 0;
    PrimeConfig cfg;
    Profile profile = Profile::lipschitz;
};

VdpTable random_admissible(const RandomSpec& r);

enum class MahlerProfile {
    lipschitz,
    mp_sufficient,
    ergodic_sufficient,
    ergodic_exact2, // p = 2 envelope of the exact criterion
};

/// Random Mahler coefficient tables. max_support of 0 means full length;
/// otherwise coefficients at indices >= max_support are zero (keeps bulk
/// evaluation cheap at large p^n).
MahlerTable random_mahler(uint64_t seed, const PrimeConfig& cfg, MahlerProfile profile,
                          uint64_t max_support = 0);

} // namespace padicdyn
