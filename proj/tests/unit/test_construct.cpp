#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "padicdyn/construct.hpp"
#include "padicdyn/oracle.hpp"

using namespace padicdyn;
using testutil::bigint;
using testutil::pw;

namespace {

VdpTable identity_vdp(uint64_t p, uint32_t n) {
    uint64_t len = pw(p, n);
    std::vector<uint64_t> B(len);
    for (uint64_t m = 0; m < len; ++m) B[m] = m < p ? m : decompose_index(m, p).q;
    return make_vdp_table(PrimeConfig(p, n), n, std::move(B));
}

FunctionSpec vdp_spec(const VdpTable& t) {
    FunctionSpec s;
    s.cfg = PrimeConfig(t.cfg.p, t.n_cert);
    s.payload = VdpSpec{t.B};
    return s;
}

FunctionSpec zero_spec(uint64_t p, uint32_t n) {
    FunctionSpec s;
    s.cfg = PrimeConfig(p, n);
    s.payload = VdpSpec{std::vector<uint64_t>(pw(p, n), 0)};
    return s;
}

} // namespace

TEST_CASE("coefficient-level difference of the identity is constant one") {
    VdpTable f = delta_vdp(identity_vdp(2, 4));
    CHECK(f.n_cert == 3);
    CHECK(f.B[0] == 1);
    CHECK(f.B[1] == 1); // G_2 + G_0 - G_1 = 2 + 0 - 1
    for (uint64_t m = 2; m < f.B.size(); ++m) CHECK(f.B[m] == 0);
    // cross-route: extraction of the pointwise-constant table
    ValueTable one = testutil::poly_table({bigint(1)}, 2, 3);
    CHECK(vdp_extract(one).B == f.B);
}

TEST_CASE("coefficient-level difference of a constant vanishes") {
    VdpTable c = vdp_extract(testutil::poly_table({bigint(9)}, 3, 3));
    VdpTable d = delta_vdp(c);
    for (uint64_t m = 0; m < d.B.size(); ++m) CHECK(d.B[m] == 0);
}

TEST_CASE("coefficient-level difference matches the pointwise one") {
    std::mt19937_64 rng(101);
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        uint32_t n = p == 2 ? 8 : 4;
        for (int rep = 0; rep < 8; ++rep) {
            RandomSpec rs{rng(), PrimeConfig(p, n), Profile::lipschitz};
            VdpTable g = random_admissible(rs);
            VdpTable f = delta_vdp(g);
            ValueTable gv = vdp_compile(g);
            ValueTable fv = vdp_compile(f);
            uint64_t mod = fv.modulus();
            for (uint64_t x = 0; x < fv.size(); ++x)
                CHECK(fv.v[x] == (gv.v[x + 1] + gv.modulus() - gv.v[x]) % mod);
        }
    }
}

TEST_CASE("block sums of a difference telescope to the endpoints") {
    std::mt19937_64 rng(103);
    RandomSpec rs{rng(), PrimeConfig(3, 5), Profile::lipschitz};
    VdpTable g = random_admissible(rs);
    VdpTable f = delta_vdp(g);
    uint64_t mod = f.modulus();
    for (uint32_t n = 1; n < f.n_cert; ++n) {
        uint64_t lo = pw(3, n), hi = lo * 3;
        uint64_t sum = 0;
        for (uint64_t m = lo; m < hi; ++m) sum = (sum + f.B[m]) % mod;
        uint64_t want = (g.B[hi] % mod + 3 * mod - 3 * (g.B[lo] % mod)) % mod;
        CHECK(sum == want);
    }
}

TEST_CASE("anti-difference of zero and of one") {
    VdpTable zero = make_vdp_table(PrimeConfig(2, 4), 4, std::vector<uint64_t>(16, 0));
    VdpTable g0 = anti_delta(zero, 0);
    for (uint64_t m = 0; m < g0.B.size(); ++m) CHECK(g0.B[m] == 0);

    // constant one: the solved coefficients walk the identity's shape
    VdpTable one = vdp_extract(testutil::poly_table({bigint(1)}, 2, 4));
    VdpTable g1 = anti_delta(one, 0);
    CHECK(vdp_admissible(g1));
    VdpTable back = delta_vdp(g1);
    for (uint64_t m = 0; m < back.B.size(); ++m) CHECK(back.B[m] == one.B[m] % back.modulus());
}

TEST_CASE("anti-difference hypotheses are enforced") {
    VdpTable bad = make_vdp_table(PrimeConfig(2, 3), 3, {1, 0, 0, 0, 0, 0, 0, 0});
    Verdict hyp = anti_delta_hypotheses(bad);
    CHECK_FALSE(hyp.passed);
    CHECK_FALSE(hyp.conditions[0].satisfied);
    CHECK_THROWS_WITH_AS(anti_delta(bad, 0), "anti_delta hypotheses fail at level 1", precondition_error);
}

TEST_CASE("anti-difference is a right inverse") {
    std::mt19937_64 rng(107);
    for (uint64_t p : {2ull, 3ull}) {
        uint32_t n = p == 2 ? 7 : 4;
        for (int rep = 0; rep < 10; ++rep) {
            RandomSpec rs{rng(), PrimeConfig(p, n), Profile::lipschitz};
            VdpTable g = random_admissible(rs);
            VdpTable f = delta_vdp(g); // meets the hypotheses by construction
            REQUIRE(anti_delta_hypotheses(f).passed);
            uint64_t c = rng() % f.modulus();
            VdpTable solved = anti_delta(f, c);
            CHECK(vdp_admissible(solved));
            VdpTable back = delta_vdp(solved);
            for (uint64_t m = 0; m < back.B.size(); ++m) CHECK(back.B[m] == f.B[m] % back.modulus());
        }
    }
}

TEST_CASE("the free coefficient only shifts the low block") {
    std::mt19937_64 rng(109);
    RandomSpec rs{rng(), PrimeConfig(3, 4), Profile::lipschitz};
    VdpTable f = delta_vdp(random_admissible(rs));
    VdpTable a = anti_delta(f, 5);
    VdpTable b = anti_delta(f, 20);
    uint64_t mod = f.modulus();
    uint64_t diff = (a.B[0] + mod - b.B[0]) % mod;
    for (uint64_t m = 0; m < 3; ++m) CHECK((a.B[m] + mod - b.B[m]) % mod == diff);
    for (uint64_t m = 3; m < a.B.size(); ++m) CHECK(a.B[m] == b.B[m]);
}

TEST_CASE("ergodic factory") {
    // d = 1, eps = 1, g = 0 gives x + 1
    FunctionSpec f = make_ergodic(PrimeConfig(2, 6), 1, 1, zero_spec(2, 7));
    ValueTable t = compile(f, 6);
    for (uint64_t m = 0; m < t.size(); ++m) CHECK(t.v[m] == (m + 1) % 64);
    CHECK(transitivity_ladder(t).transitive_through(6));

    // d = 2 at p = 3
    FunctionSpec f3 = make_ergodic(PrimeConfig(3, 8), 2, 1, zero_spec(3, 9));
    CHECK(transitivity_ladder(compile(f3, 8)).transitive_through(8));

    // eps = 1 + p with a random compatible g at p = 5
    std::mt19937_64 rng(113);
    RandomSpec rs{rng(), PrimeConfig(5, 7), Profile::lipschitz};
    FunctionSpec f5 = make_ergodic(PrimeConfig(5, 6), 1, 6, vdp_spec(random_admissible(rs)));
    CHECK(transitivity_ladder(compile(f5, 6)).transitive_through(6));

    CHECK_THROWS_AS(make_ergodic(PrimeConfig(3, 4), 3, 1, zero_spec(3, 5)), precondition_error);
    CHECK_THROWS_AS(make_ergodic(PrimeConfig(3, 4), 1, 2, zero_spec(3, 5)), precondition_error);
    CHECK_THROWS_AS(make_ergodic(PrimeConfig(3, 4), 1, 1, zero_spec(3, 4)), precision_error);
}

TEST_CASE("measure-preserving factory") {
    FunctionSpec id = make_mp(PrimeConfig(2, 6), 0, zero_spec(2, 6));
    ValueTable t = compile(id, 6);
    for (uint64_t m = 0; m < t.size(); ++m) CHECK(t.v[m] == m);
    CHECK(oracle_measure_preserving(t));

    // d = 1, g = x gives 1 + 3x: a permutation at every level
    FunctionSpec lin = make_mp(PrimeConfig(2, 8), 1, vdp_spec(identity_vdp(2, 8)));
    ValueTable lt = compile(lin, 8);
    for (uint64_t m = 0; m < 16; ++m) CHECK(lt.v[m] == (1 + 3 * m) % 256);
    CHECK(oracle_measure_preserving(lt));

    // the d + x + p*g shape stays bijective at every level for odd p too
    std::mt19937_64 rng(127);
    for (uint64_t p : {3ull, 5ull}) {
        uint32_t n = p == 3 ? 8 : 6;
        for (int rep = 0; rep < 8; ++rep) {
            RandomSpec rs{rng(), PrimeConfig(p, n), Profile::lipschitz};
            FunctionSpec f = make_mp(PrimeConfig(p, n), rng() % (p * p), vdp_spec(random_admissible(rs)));
            CHECK(oracle_measure_preserving(compile(f, n)));
        }
    }
}

TEST_CASE("random tables honor their profiles") {
    std::mt19937_64 rng(131);
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        uint32_t n = p == 2 ? 9 : 4;
        for (int rep = 0; rep < 6; ++rep) {
            RandomSpec lip{rng(), PrimeConfig(p, n), Profile::lipschitz};
            CHECK(vdp_lipschitz(random_admissible(lip)).passed);

            RandomSpec mp{rng(), PrimeConfig(p, n), Profile::mp_sufficient};
            VdpTable mt = random_admissible(mp);
            CHECK(vdp_mp_sufficient_p(mt).passed);
            CHECK(oracle_measure_preserving(vdp_compile(mt)));

            RandomSpec erg{rng(), PrimeConfig(p, n), Profile::ergodic_core};
            VdpTable et = random_admissible(erg);
            CHECK(vdp_ergodic_sufficient_p(et).passed);
            CHECK(transitivity_ladder(vdp_compile(et)).transitive_through(n));
        }
    }
}

TEST_CASE("same seed, same table") {
    RandomSpec a{424242, PrimeConfig(3, 5), Profile::ergodic_core};
    CHECK(random_admissible(a).B == random_admissible(a).B);
    MahlerTable m1 = random_mahler(7, PrimeConfig(2, 8), MahlerProfile::ergodic_exact2);
    MahlerTable m2 = random_mahler(7, PrimeConfig(2, 8), MahlerProfile::ergodic_exact2);
    CHECK(m1.a == m2.a);
}

TEST_CASE("mahler profiles satisfy their envelopes") {
    std::mt19937_64 rng(137);
    for (int rep = 0; rep < 8; ++rep) {
        CHECK(mahler_lipschitz(random_mahler(rng(), PrimeConfig(3, 4), MahlerProfile::lipschitz)).passed);
        CHECK(mahler_mp_sufficient(random_mahler(rng(), PrimeConfig(3, 4), MahlerProfile::mp_sufficient)).passed);
        MahlerTable e = random_mahler(rng(), PrimeConfig(5, 4), MahlerProfile::ergodic_sufficient, 25);
        CHECK(mahler_ergodic_sufficient_p(e).passed);
        for (uint64_t m = 25; m < e.a.size(); ++m) REQUIRE(e.a[m] == 0);
        MahlerTable x = random_mahler(rng(), PrimeConfig(2, 9), MahlerProfile::ergodic_exact2);
        CHECK(mahler_ergodic_exact_2(x).passed);
        CHECK(transitivity_ladder(mahler_compile(x)).transitive_through(9));
    }
}

TEST_CASE("ergodic tables over Z_2 decompose through the anti-difference") {
    std::mt19937_64 rng(139);
    for (int rep = 0; rep < 10; ++rep) {
        RandomSpec rs{rng(), PrimeConfig(2, 9), Profile::ergodic_core};
        VdpTable f = random_admissible(rs);
        REQUIRE(transitivity_ladder(vdp_compile(f)).transitive_through(9));
        VdpTable g = decompose_ergodic_form_2(f);
        CHECK(vdp_admissible(g));
        // f = 1 + x + 2*Delta(g) at the decomposition's certified level
        VdpTable dg = delta_vdp(g);
        uint64_t mod = dg.modulus();
        for (uint64_t m = 0; m < dg.B.size(); ++m) {
            uint64_t affine = m == 0 ? 1 : (m == 1 ? 2 : decompose_index(m, 2).q);
            CHECK(f.B[m] % mod == (affine + 2 * dg.B[m]) % mod);
        }
    }
    // a non-ergodic table is rejected on the evenness check
    CHECK_THROWS_AS(decompose_ergodic_form_2(identity_vdp(2, 5)), precondition_error);
}
