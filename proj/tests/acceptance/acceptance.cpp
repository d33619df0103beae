// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Everything here is anchored to the brute-force cycle oracle; expected
// values never come from the code paths under test.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padicdyn/cli.hpp"
#include "padicdyn/construct.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/function_spec.hpp"
#include "padicdyn/oracle.hpp"

using namespace padicdyn;

namespace {

uint64_t pw(uint64_t p, uint32_t k) {
    uint64_t r = 1;
    while (k--) r *= p;
    return r;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Criterion = Outcome (*)();

// --- helpers -----------------------------------------------------------------

// Admissibility-preserving mutations that perturb individual conditions of
// the p = 2 criteria: parity of b_0 / b_1, unit-ness of a b_m, one block sum.
VdpTable mutate_vdp(VdpTable t, std::mt19937_64& rng) {
    const uint64_t p = t.cfg.p;
    const uint64_t mod = t.modulus();
    switch (rng() % 4) {
        case 0: t.B[0] = (t.B[0] + 1) % mod; break;
        case 1: t.B[1] = (t.B[1] + 2) % mod; break;
        case 2: {
            uint64_t m = 2 + rng() % (t.B.size() - 2);
            t.B[m] = (t.B[m] + pw(p, floor_log(p, m))) % mod; // flips b_{m,0}
            break;
        }
        default: {
            uint32_t n = 2 + rng() % (t.n_cert - 2);
            uint64_t m = pw(p, n - 1) + rng() % (pw(p, n) - pw(p, n - 1));
            t.B[m] = (t.B[m] + 2 * pw(p, n - 1)) % mod; // shifts one block sum by 2p^(n-1)
            break;
        }
    }
    return t;
}

MahlerTable mutate_mahler(MahlerTable t, std::mt19937_64& rng) {
    const uint64_t mod = t.modulus();
    switch (rng() % 3) {
        case 0: t.a[0] = (t.a[0] + 1) % mod; break;
        case 1: t.a[1] = (t.a[1] + 2) % mod; break;
        default: {
            uint64_t m = 2 + rng() % (std::min<uint64_t>(t.a.size(), 64) - 2);
            t.a[m] = (t.a[m] + pw(t.cfg.p, floor_log(t.cfg.p, m))) % mod; // stays admissible
            break;
        }
    }
    return t;
}

// --- criterion 1: exact p = 2 agreement, van der Put ---------------------------

Outcome exact_p2_vdp_agreement() {
    const uint32_t n = 10;
    std::mt19937_64 rng(0xC0FFEE);
    std::vector<VdpTable> corpus;
    for (int i = 0; i < 180; ++i)
        corpus.push_back(random_admissible({rng(), PrimeConfig(2, n), Profile::lipschitz}));
    for (int i = 0; i < 120; ++i)
        corpus.push_back(random_admissible({rng(), PrimeConfig(2, n), Profile::mp_sufficient}));
    for (int i = 0; i < 120; ++i)
        corpus.push_back(random_admissible({rng(), PrimeConfig(2, n), Profile::ergodic_core}));
    const size_t bases = corpus.size();
    for (int i = 0; i < 120; ++i)
        corpus.push_back(mutate_vdp(corpus[rng() % bases], rng));

    size_t disagreements = 0, ergodic_seen = 0, nonergodic_seen = 0;
    for (const VdpTable& t : corpus) {
        NormalizedVdp nb = normalize(t);
        bool mp_claim = vdp_mp_exact_2(nb).passed;
        bool erg_claim = vdp_ergodic_exact_2(nb).passed;
        CycleReport rep = transitivity_ladder(vdp_compile(t), n);
        bool mp_fact = rep.permutation_through(n);
        bool erg_fact = rep.transitive_through(n);
        if (mp_claim != mp_fact || erg_claim != erg_fact) ++disagreements;
        (erg_fact ? ergodic_seen : nonergodic_seen)++;
    }
    std::ostringstream os;
    os << corpus.size() << " tables, " << disagreements << " disagreements (" << ergodic_seen << " ergodic, "
       << nonergodic_seen << " not)";
    return {disagreements == 0 && ergodic_seen > 0 && nonergodic_seen > 0, os.str()};
}

// --- criterion 2: exact p = 2 agreement, Mahler --------------------------------

Outcome exact_p2_mahler_agreement() {
    const uint32_t n = 10;
    std::mt19937_64 rng(0xBADA55);
    std::vector<MahlerTable> corpus;
    for (int i = 0; i < 120; ++i)
        corpus.push_back(random_mahler(rng(), PrimeConfig(2, n), MahlerProfile::ergodic_exact2));
    for (int i = 0; i < 40; ++i)
        corpus.push_back(random_mahler(rng(), PrimeConfig(2, n), MahlerProfile::lipschitz));
    const size_t bases = corpus.size();
    for (int i = 0; i < 60; ++i)
        corpus.push_back(mutate_mahler(corpus[rng() % bases], rng));

    size_t disagreements = 0, cross_mismatches = 0;
    for (const MahlerTable& t : corpus) {
        bool claim = mahler_ergodic_exact_2(t).passed;
        ValueTable v = mahler_compile(t, /*require_admissible=*/false);
        bool fact = transitivity_ladder(v, n).transitive_through(n);
        if (claim != fact) ++disagreements;
        bool via_vdp = vdp_ergodic_exact_2(normalize(vdp_extract(v))).passed;
        if (via_vdp != claim) ++cross_mismatches;
    }
    std::ostringstream os;
    os << corpus.size() << " tables, " << disagreements << " oracle disagreements, " << cross_mismatches
       << " cross-basis mismatches";
    return {disagreements == 0 && cross_mismatches == 0, os.str()};
}

// --- criterion 3: sufficiency for odd p ----------------------------------------

Outcome odd_p_sufficiency() {
    size_t violations = 0, passes_confirmed = 0;
    std::ostringstream os;
    for (uint64_t p : {3ull, 5ull}) {
        uint32_t n = p == 3 ? 10 : 7; // largest level with p^n <= 1e5
        std::mt19937_64 rng(p * 1000003);
        PrimeConfig cfg(p, n);

        for (int i = 0; i < 200; ++i) {
            VdpTable t = random_admissible({rng(), cfg, Profile::mp_sufficient});
            if (!vdp_mp_sufficient_p(t).passed) return {false, "mp envelope failed its own criterion"};
            if (!oracle_measure_preserving(vdp_compile(t), n))
                ++violations;
            else
                ++passes_confirmed;
        }
        for (int i = 0; i < 200; ++i) {
            VdpTable t = random_admissible({rng(), cfg, Profile::ergodic_core});
            if (!vdp_ergodic_sufficient_p(t).passed) return {false, "ergodic envelope failed its own criterion"};
            if (!transitivity_ladder(vdp_compile(t), n).transitive_through(n))
                ++violations;
            else
                ++passes_confirmed;
        }
        uint64_t support = p == 3 ? 81 : 125;
        for (int i = 0; i < 200; ++i) {
            MahlerTable t = random_mahler(rng(), cfg, MahlerProfile::ergodic_sufficient, support);
            if (!mahler_ergodic_sufficient_p(t).passed) return {false, "mahler envelope failed its own criterion"};
            if (!transitivity_ladder(mahler_compile(t), n).transitive_through(n))
                ++violations;
            else
                ++passes_confirmed;
        }
        for (int i = 0; i < 200; ++i) {
            // d + x + p*Delta(g) with random compatible g and unit d
            FunctionSpec g;
            g.cfg = PrimeConfig(p, n + 1);
            g.payload = VdpSpec{random_admissible({rng(), g.cfg, Profile::lipschitz}).B};
            FunctionSpec f = make_ergodic(cfg, 1 + rng() % (p - 1), 1, std::move(g));
            ValueTable v = compile(f, n);
            bool erg = transitivity_ladder(v, n).transitive_through(n);
            bool criterion = vdp_ergodic_sufficient_p(vdp_extract(v)).passed;
            if (!criterion) return {false, "construction output failed the congruence family"};
            if (!erg)
                ++violations;
            else
                ++passes_confirmed;
        }
    }
    os << passes_confirmed << " criterion passes oracle-confirmed, " << violations << " sufficiency violations";
    return {violations == 0, os.str()};
}

// --- criterion 4: exhaustive polynomial sweep -----------------------------------

Outcome polynomial_sweep() {
    const uint32_t n = 10;
    size_t mismatches = 0, positives = 0;
    uint32_t latest_failure = 0;
    const uint64_t mod = pw(2, n);
    std::vector<uint64_t> values(mod);
    for (uint64_t a1 = 0; a1 < 16; ++a1) {
        for (uint64_t a2 = 0; a2 < 16; ++a2) {
            for (uint64_t a3 = 0; a3 < 16; ++a3) {
                for (uint64_t x = 0; x < mod; ++x) {
                    uint64_t x2 = x * x % mod;
                    values[x] = (1 + a1 * x + a2 * x2 + a3 * (x2 * x % mod)) % mod;
                }
                ValueTable t = make_value_table(PrimeConfig(2, n), n, values);
                t.lipschitz = true;
                bool claim = poly_ergodic_z2({1, bigint(a1), bigint(a2), bigint(a3)}).passed;
                CycleReport rep = transitivity_ladder(t, n);
                bool fact = rep.transitive_through(n);
                if (claim != fact) ++mismatches;
                if (claim) ++positives;
                if (!fact && rep.first_failure) latest_failure = std::max(latest_failure, *rep.first_failure);
            }
        }
    }
    std::ostringstream os;
    os << "4096 polynomials, " << mismatches << " mismatches, " << positives
       << " ergodic, negatives all fail by level " << latest_failure;
    return {mismatches == 0 && positives > 0, os.str()};
}

// --- criterion 5: identity and equivalence suites --------------------------------

Outcome identity_suites() {
    std::mt19937_64 rng(0x5EED);
    size_t identity_checks = 0, congruence_checks = 0, parity_checks = 0;
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        uint32_t n = p == 2 ? 10 : 6;
        PrimeConfig cfg(p, n);
        for (int i = 0; i < 60; ++i) {
            ValueTable t = vdp_compile(random_admissible({rng(), cfg, Profile::lipschitz}));
            if (!block_sum_identity_check(t).passed) return {false, "block-sum identity violated"};
            ++identity_checks;
        }
        for (int i = 0; i < 60; ++i) {
            Profile prof = i % 2 ? Profile::mp_sufficient : Profile::ergodic_core;
            ValueTable t = vdp_compile(random_admissible({rng(), cfg, prof}));
            if (!oracle_measure_preserving(t)) return {false, "mp envelope not oracle-preserving"};
            if (!mp_block_sum_congruence_check(t).passed) return {false, "block-sum congruence violated"};
            if (!equivalence_chain_check(t).passed) return {false, "equivalence chain incoherent"};
            ++congruence_checks;
        }
    }
    // parity prediction vs the cycle walk, p = 2 only
    for (int i = 0; i < 60; ++i) {
        Profile prof = i % 2 ? Profile::mp_sufficient : Profile::ergodic_core;
        ValueTable t = vdp_compile(random_admissible({rng(), PrimeConfig(2, 10), prof}));
        if (!oracle_measure_preserving(t)) continue;
        CycleReport ladder = transitivity_ladder(t);
        for (uint32_t lvl = 1; lvl + 1 <= 10; ++lvl) {
            if (!ladder.transitive_through(lvl)) break;
            if (sn_ladder_step(t, lvl) != ladder.transitive_through(lvl + 1))
                return {false, "parity prediction mismatched the cycle walk"};
            ++parity_checks;
        }
    }
    std::ostringstream os;
    os << identity_checks << " identity, " << congruence_checks << " congruence, " << parity_checks
       << " parity checks, all exact";
    return {parity_checks > 100, os.str()};
}

// --- criterion 6: constructive round trips ----------------------------------------

Outcome constructive_roundtrips() {
    std::mt19937_64 rng(0xD1CE);
    size_t delta_points = 0, inverses = 0, decompositions = 0;
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        uint32_t n = p == 2 ? 9 : 5;
        PrimeConfig cfg(p, n);
        for (int i = 0; i < 25; ++i) {
            VdpTable g = random_admissible({rng(), cfg, Profile::lipschitz});
            VdpTable f = delta_vdp(g);
            ValueTable gv = vdp_compile(g), fv = vdp_compile(f);
            for (uint64_t x = 0; x < fv.size(); ++x) {
                if (fv.v[x] != (gv.v[x + 1] + gv.modulus() - gv.v[x]) % fv.modulus())
                    return {false, "coefficient and pointwise differences disagree"};
                ++delta_points;
            }
            if (!anti_delta_hypotheses(f).passed) return {false, "difference table missed its own hypotheses"};
            VdpTable solved = anti_delta(f, rng() % f.modulus());
            if (!vdp_admissible(solved)) return {false, "anti-difference output not admissible"};
            VdpTable back = delta_vdp(solved);
            for (uint64_t m = 0; m < back.B.size(); ++m)
                if (back.B[m] != f.B[m] % back.modulus()) return {false, "anti-difference round trip failed"};
            ++inverses;
        }
    }
    // oracle-ergodic corpus from three unrelated sources: the ergodic
    // envelope generator, Mahler-built maps, and polynomials
    std::vector<VdpTable> ergodic_corpus;
    for (int i = 0; i < 40; ++i)
        ergodic_corpus.push_back(random_admissible({rng(), PrimeConfig(2, 10), Profile::ergodic_core}));
    for (int i = 0; i < 10; ++i) {
        MahlerTable t = random_mahler(rng(), PrimeConfig(2, 10), MahlerProfile::ergodic_exact2);
        ergodic_corpus.push_back(vdp_extract(mahler_compile(t)));
    }
    for (auto coeffs : {std::vector<bigint>{1, 1}, {1, 1, 4}, {1, 3, 2}}) {
        FunctionSpec s;
        s.cfg = PrimeConfig(2, 10);
        s.payload = PolynomialSpec{coeffs};
        ergodic_corpus.push_back(vdp_extract(compile(s, 10)));
    }
    for (const VdpTable& f : ergodic_corpus) {
        if (!transitivity_ladder(vdp_compile(f)).transitive_through(10))
            return {false, "decomposition corpus member not oracle-ergodic"};
        VdpTable g = decompose_ergodic_form_2(f);
        if (!vdp_admissible(g)) return {false, "decomposition produced a non-admissible g"};
        VdpTable dg = delta_vdp(g);
        uint64_t mod = dg.modulus();
        for (uint64_t m = 0; m < dg.B.size(); ++m) {
            uint64_t affine = m == 0 ? 1 : (m == 1 ? 2 : decompose_index(m, 2).q);
            if (f.B[m] % mod != (affine + 2 * dg.B[m]) % mod)
                return {false, "decomposition does not reassemble the table"};
        }
        ++decompositions;
    }
    std::ostringstream os;
    os << delta_points << " pointwise agreements, " << inverses << " right inverses, " << decompositions
       << " ergodic decompositions";
    return {true, os.str()};
}

// --- criterion 7: infrastructure ----------------------------------------------------

Outcome infrastructure() {
    namespace fs = std::filesystem;
    size_t corpus = 0;
    for (const auto& entry : fs::directory_iterator(PADICDYN_DATA_DIR)) {
        if (entry.path().extension() != ".json") continue;
        FunctionSpec spec = load_spec_file(entry.path().string());
        std::string once = serialize(spec);
        FunctionSpec again = parse_spec(once);
        if (serialize(again) != once) return {false, "serialize round trip drifted: " + entry.path().string()};
        ++corpus;
    }

    for (uint32_t n : {8u, 12u, 16u}) {
        VdpTable t = random_admissible({n * 7919, PrimeConfig(2, n), Profile::ergodic_core});
        ValueTable v = vdp_compile(t);
        if (stream_period(v, 1) != v.size())
            return {false, "stream period is not 2^" + std::to_string(n)};
    }

    for (uint64_t seed : {1ull, 42ull, 31337ull}) {
        cli::GenOptions opt;
        opt.profile = Profile::ergodic_core;
        opt.p = 2;
        opt.precision = 10;
        opt.seed = seed;
        std::ostringstream a, b, err;
        if (cli::cmd_gen(opt, a, err) != 0 || cli::cmd_gen(opt, b, err) != 0)
            return {false, "generation failed"};
        if (a.str() != b.str()) return {false, "generation is not byte-deterministic"};
    }
    std::ostringstream os;
    os << corpus << " corpus round trips, stream periods exact through 2^16, deterministic regeneration";
    return {true, os.str()};
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        Criterion fn;
        double budget_s; // hard runtime ceiling for this criterion
    };
    const Entry entries[] = {
        {"exact p=2 criterion agreement (van der Put)", exact_p2_vdp_agreement, 60.0},
        {"exact p=2 criterion agreement (Mahler)", exact_p2_mahler_agreement, 60.0},
        {"sufficiency for odd p", odd_p_sufficiency, 300.0},
        {"exhaustive polynomial sweep", polynomial_sweep, 120.0},
        {"identity and equivalence suites", identity_suites, 120.0},
        {"constructive round trips", constructive_roundtrips, 120.0},
        {"infrastructure", infrastructure, 120.0},
    };
    int failures = 0;
    int idx = 0;
    for (const Entry& e : entries) {
        ++idx;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = secs <= e.budget_s;
        bool ok = o.pass && in_budget;
        std::printf("[%d/7] %-46s %s (%s, %.2fs)\n", idx, e.name, ok ? "PASS" : "FAIL", o.detail.c_str(), secs);
        if (!in_budget) std::printf("      runtime budget of %.0fs exceeded\n", e.budget_s);
        if (!ok) ++failures;
    }
    std::printf("ACCEPTANCE: %d/7 criteria passed\n", 7 - failures);
    return failures == 0 ? 0 : 1;
}
