#include "padicdyn/construct.hpp"

#include <random>

namespace padicdyn {

namespace {

uint64_t pow_u64(uint64_t p, uint32_t k) {
    uint64_t r = 1;
    while (k--) r *= p;
    return r;
}

uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t reject = (0 - bound) % bound; // 2^64 mod bound
    for (;;) {
        uint64_t r = rng();
        if (r >= reject) return r % bound;
    }
}

} // namespace

VdpTable delta_vdp(const VdpTable& g) {
    if (!vdp_admissible(g))
        throw precision_error("delta_vdp needs a Lipschitz-admissible table");
    if (g.n_cert < 2)
        throw precision_error("delta_vdp needs n_cert >= 2");
    const uint64_t p = g.cfg.p;
    const uint32_t out_level = g.n_cert - 1;
    const uint64_t out_len = pow_u64(p, out_level);
    const uint64_t mod = out_len; // p^(n_cert - 1)

    VdpTable f;
    f.cfg = g.cfg;
    f.n_cert = out_level;
    f.B.resize(out_len);
    for (uint64_t m = 0; m < out_len; ++m) {
        uint64_t val;
        if (m + 1 < p) {
            val = (g.B[m + 1] + mod - g.B[m] % mod) % mod;
        } else if (m + 1 == p) {
            val = (g.B[p] % mod + g.B[0] % mod + 2 * mod - g.B[p - 1] % mod) % mod;
        } else {
            uint32_t block = floor_log(p, m) + 1;       // m lives in [p^(block-1), p^block)
            uint64_t pb = pow_u64(p, block - 1);
            bool carries = (m + 1) % pb == 0;           // m+1 = (m_top + 1) p^(block-1)
            uint64_t t = (g.B[m + 1] % mod + mod - g.B[m] % mod) % mod;
            if (carries) t = (t + mod - g.B[pb] % mod) % mod;
            val = t;
        }
        f.B[m] = val % mod;
    }
    return f;
}

Verdict anti_delta_hypotheses(const VdpTable& f) {
    const uint64_t p = f.cfg.p;
    Verdict v;
    v.verified_to_level = f.n_cert;
    uint64_t low = 0;
    for (uint64_t m = 0; m < p && m < f.B.size(); ++m) low = (low + f.B[m]) % p;
    v.conditions.push_back({"sum_{m<p} B_m ≡ 0 (mod p)", low == 0, std::nullopt, {}});
    Condition blocks{"block sums ≡ 0 (mod p^n) for 2 <= n <= n_cert", true, std::nullopt, {}};
    for (uint32_t n = 2; n <= f.n_cert; ++n) {
        uint64_t lo = pow_u64(p, n - 1), hi = lo * p;
        uint64_t mod = hi; // p^n
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m) sum = (sum + f.B[m]) % mod;
        if (sum != 0) {
            blocks.satisfied = false;
            blocks.witness = n;
            break;
        }
    }
    v.conditions.push_back(blocks);
    v.passed = v.conditions[0].satisfied && v.conditions[1].satisfied;
    return v;
}

VdpTable anti_delta(const VdpTable& f, uint64_t b0_choice) {
    Verdict hyp = anti_delta_hypotheses(f);
    if (!hyp.passed) {
        uint64_t level = 1;
        if (!hyp.conditions[0].satisfied)
            level = 1;
        else if (hyp.conditions[1].witness)
            level = *hyp.conditions[1].witness;
        throw precondition_error("anti_delta hypotheses fail at level " + std::to_string(level));
    }
    const uint64_t p = f.cfg.p;
    const uint64_t mod = f.modulus();
    VdpTable g;
    g.cfg = f.cfg;
    g.n_cert = f.n_cert;
    g.B.assign(f.B.size(), 0);

    g.B[0] = b0_choice % mod;
    // G_m = G_0 + prefix sums of B below p; G_p = the full low-block sum.
    uint64_t prefix = 0;
    for (uint64_t m = 1; m < p && m < g.B.size(); ++m) {
        prefix = (prefix + f.B[m - 1]) % mod;
        g.B[m] = (g.B[0] + prefix) % mod;
    }
    if (g.B.size() > p) {
        uint64_t low_sum = (prefix + f.B[p - 1]) % mod;
        g.B[p] = low_sum;
    }
    // Block n: G_(i p^(n-1) + alpha) = i G_(p^(n-1)) + sum of B over the
    // block prefix; the block's own top index p^n lands in the next block
    // and is produced by i = p, alpha = 0.
    for (uint32_t n = 2; n <= f.n_cert; ++n) {
        uint64_t lo = pow_u64(p, n - 1);
        uint64_t hi = lo * p;
        uint64_t base = g.B[lo];
        uint64_t running = 0;
        for (uint64_t tIdx = lo + 1; tIdx <= hi && tIdx < g.B.size(); ++tIdx) {
            running = (running + f.B[tIdx - 1]) % mod;
            uint64_t i = tIdx / lo;
            g.B[tIdx] = static_cast<uint64_t>((static_cast<__uint128_t>(i) * base + running) % mod);
        }
    }
    return g;
}

VdpTable decompose_ergodic_form_2(const VdpTable& f) {
    if (f.cfg.p != 2)
        throw precondition_error("the 1 + x + 2*Delta(g) decomposition is a p = 2 statement");
    if (f.n_cert < 2)
        throw precision_error("decomposition needs n_cert >= 2");
    const uint64_t mod = f.modulus();
    // Coefficients of 1 + x: B_0 = 1, B_1 = 2, B_m = q(m) beyond.
    std::vector<uint64_t> h(f.B.size());
    for (uint64_t m = 0; m < f.B.size(); ++m) {
        uint64_t c;
        if (m == 0)
            c = 1;
        else if (m == 1)
            c = 2 % mod;
        else
            c = decompose_index(m, 2).q % mod;
        uint64_t diff = (f.B[m] + mod - c) % mod;
        if (diff % 2 != 0)
            throw precondition_error("table is not of ergodic shape: coefficient " + std::to_string(m) +
                                     " of f - (1 + x) is odd");
        h[m] = diff / 2;
    }
    // Halving certifies one level less; drop the top block accordingly.
    VdpTable half;
    half.cfg = f.cfg;
    half.n_cert = f.n_cert - 1;
    uint64_t half_mod = mod / 2;
    half.B.assign(h.begin(), h.begin() + half_mod);
    for (uint64_t& x : half.B) x %= half_mod;
    return anti_delta(half, 0);
}

FunctionSpec make_ergodic(const PrimeConfig& cfg, const bigint& d, const bigint& epsilon, FunctionSpec g) {
    if (d % cfg.p == 0)
        throw precondition_error("ergodic construction needs d not divisible by p");
    if ((epsilon % cfg.p + cfg.p) % cfg.p != 1)
        throw precondition_error("ergodic construction needs epsilon ≡ 1 (mod p)");
    if (g.cfg.p != cfg.p)
        throw config_error("g must live over the same prime");
    if (g.cfg.precision < cfg.precision + 1)
        throw precision_error("g must be certified one level deeper than the construction");
    ConstructionParams c;
    c.form = epsilon == 1 ? ConstructionForm::d_plus_x_plus_pDeltaG : ConstructionForm::d_plus_epsx_plus_pDeltaG;
    c.d = d;
    c.epsilon = epsilon;
    c.g = std::make_shared<FunctionSpec>(std::move(g));
    FunctionSpec spec;
    spec.cfg = cfg;
    spec.payload = std::move(c);
    return spec;
}

FunctionSpec make_mp(const PrimeConfig& cfg, const bigint& d, FunctionSpec g) {
    if (g.cfg.p != cfg.p)
        throw config_error("g must live over the same prime");
    if (g.cfg.precision < cfg.precision)
        throw precision_error("g must be certified at least to the construction precision");
    ConstructionParams c;
    c.form = ConstructionForm::d_plus_x_plus_pG;
    c.d = d;
    c.epsilon = 1;
    c.g = std::make_shared<FunctionSpec>(std::move(g));
    FunctionSpec spec;
    spec.cfg = cfg;
    spec.payload = std::move(c);
    return spec;
}

std::string to_string(Profile p) {
    switch (p) {
        case Profile::lipschitz: return "lipschitz";
        case Profile::mp_sufficient: return "mp_sufficient";
        case Profile::ergodic_core: return "ergodic_core";
    }
    throw error("unreachable profile");
}

Profile profile_from_string(const std::string& s) {
    if (s == "lipschitz") return Profile::lipschitz;
    if (s == "mp_sufficient") return Profile::mp_sufficient;
    if (s == "ergodic_core") return Profile::ergodic_core;
    throw parse_error("unknown profile '" + s + "'");
}

VdpTable random_admissible(const RandomSpec& r) {
    const uint64_t p = r.cfg.p;
    const uint32_t N = r.cfg.precision;
    auto len_opt = checked_pow_u64(p, N);
    if (!len_opt) throw budget_error("p^precision too large for a coefficient table");
    const uint64_t len = *len_opt;
    const uint64_t mod = len;
    if (r.profile == Profile::ergodic_core && N < 3)
        throw precision_error("the ergodic profile needs precision >= 3");

    std::mt19937_64 rng(r.seed);
    VdpTable t;
    t.cfg = r.cfg;
    t.n_cert = N;
    t.B.assign(len, 0);

    switch (r.profile) {
        case Profile::lipschitz: {
            for (uint64_t m = 0; m < len; ++m) {
                uint32_t s = floor_log(p, m);
                uint64_t scale = pow_u64(p, s);
                t.B[m] = scale * uniform_below(rng, mod / scale);
            }
            break;
        }
        case Profile::mp_sufficient: {
            // Random permutation of the residues mod p for the low block.
            std::vector<uint64_t> sigma(p);
            for (uint64_t i = 0; i < p; ++i) sigma[i] = i;
            for (uint64_t i = p; i-- > 1;) std::swap(sigma[i], sigma[uniform_below(rng, i + 1)]);
            for (uint64_t m = 0; m < p; ++m)
                t.B[m] = sigma[m] + p * uniform_below(rng, mod / p);
            for (uint64_t m = p; m < len; ++m) {
                IndexDecomposition didx = decompose_index(m, p);
                uint64_t scale = pow_u64(p, didx.s + 1);
                t.B[m] = didx.q + scale * uniform_below(rng, mod / scale);
            }
            break;
        }
        case Profile::ergodic_core: {
            // Low block: B_m = (s + m mod p) + p u_m with sum u_m ≡ s (mod p),
            // fixed through u_0. This yields the required low-block sum.
            uint64_t s = 1 + uniform_below(rng, p - 1);
            std::vector<uint64_t> u(p);
            uint64_t usum = 0;
            for (uint64_t m = 1; m < p; ++m) {
                u[m] = uniform_below(rng, mod / p);
                usum += u[m] % p;
            }
            uint64_t u0_low = (s + p - usum % p) % p;
            u[0] = u0_low + p * uniform_below(rng, mod / (p * p));
            for (uint64_t m = 0; m < p; ++m)
                t.B[m] = ((s + m) % p) + p * u[m];
            // Blocks: B_m = q(m) + p^n u_m with each block's u-sum ≡ 0 (mod p),
            // fixed through the block's first index.
            for (uint32_t n = 2; n <= N; ++n) {
                uint64_t lo = pow_u64(p, n - 1), hi = lo * p;
                uint64_t scale = hi;              // p^n
                uint64_t room = mod / scale;      // p^(N-n)
                uint64_t block_sum = 0;
                for (uint64_t m = lo + 1; m < hi; ++m) {
                    uint64_t um = uniform_below(rng, room);
                    block_sum += um % p;
                    t.B[m] = decompose_index(m, p).q + scale * um;
                }
                uint64_t first_low = (p - block_sum % p) % p;
                uint64_t first = room > 1 ? first_low + p * uniform_below(rng, room / p) : 0;
                t.B[lo] = lo + scale * first;
            }
            break;
        }
    }
    return t;
}

MahlerTable random_mahler(uint64_t seed, const PrimeConfig& cfg, MahlerProfile profile, uint64_t max_support) {
    const uint64_t p = cfg.p;
    const uint32_t N = cfg.precision;
    auto len_opt = checked_pow_u64(p, N);
    if (!len_opt) throw budget_error("p^precision too large for a coefficient table");
    const uint64_t len = *len_opt;
    const uint64_t mod = len;
    if (profile == MahlerProfile::ergodic_exact2 && p != 2)
        throw config_error("the exact ergodic envelope is a p = 2 profile");
    uint64_t support = max_support == 0 ? len : std::min(max_support, len);

    std::mt19937_64 rng(seed);
    MahlerTable t;
    t.cfg = cfg;
    t.n_cert = N;
    t.a.assign(len, 0);

    for (uint64_t m = 0; m < support; ++m) {
        uint64_t v = 0;
        switch (profile) {
            case MahlerProfile::lipschitz: {
                uint64_t scale = pow_u64(p, floor_log(p, m));
                v = scale * uniform_below(rng, mod / scale);
                break;
            }
            case MahlerProfile::mp_sufficient: {
                if (m == 0) {
                    v = uniform_below(rng, mod);
                } else if (m == 1) {
                    v = 1 + uniform_below(rng, p - 1) + p * uniform_below(rng, mod / p);
                } else {
                    uint32_t need = std::min(floor_log(p, m) + 1, N);
                    uint64_t scale = pow_u64(p, need);
                    v = scale * uniform_below(rng, mod / scale);
                }
                break;
            }
            case MahlerProfile::ergodic_sufficient:
            case MahlerProfile::ergodic_exact2: {
                bool exact2 = profile == MahlerProfile::ergodic_exact2;
                if (m == 0) {
                    v = exact2 ? 1 + 2 * uniform_below(rng, mod / 2)
                               : 1 + uniform_below(rng, p - 1) + p * uniform_below(rng, mod / p);
                } else if (m == 1) {
                    v = exact2 ? 1 + 4 * uniform_below(rng, mod / 4)
                               : 1 + p * uniform_below(rng, mod / p);
                } else {
                    uint32_t need = std::min(floor_log(p, m + 1) + 1, N);
                    uint64_t scale = pow_u64(p, need);
                    v = scale * uniform_below(rng, mod / scale);
                }
                break;
            }
        }
        t.a[m] = v % mod;
    }
    return t;
}

} // namespace padicdyn
