#pragma once

#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "padicdyn/construct.hpp"
#include "padicdyn/function_spec.hpp"

namespace testutil {

using padicdyn::PrimeConfig;
using padicdyn::ValueTable;
using bigint = boost::multiprecision::cpp_int;

inline uint64_t pw(uint64_t p, uint32_t k) {
    uint64_t r = 1;
    while (k--) r *= p;
    return r;
}

/// Independent route to a polynomial value table: exact bigint Horner,
/// reduced only at the end.
inline ValueTable poly_table(const std::vector<bigint>& coeffs, uint64_t p, uint32_t n) {
    PrimeConfig cfg(p, n);
    uint64_t mod = pw(p, n);
    std::vector<uint64_t> v(mod);
    for (uint64_t x = 0; x < mod; ++x) {
        bigint acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        bigint r = acc % mod;
        if (r < 0) r += mod;
        v[x] = r.convert_to<uint64_t>();
    }
    return padicdyn::make_value_table(cfg, n, std::move(v));
}

/// f(x) = x + c as a table.
inline ValueTable shift_table(uint64_t c, uint64_t p, uint32_t n) {
    return poly_table({bigint(c), bigint(1)}, p, n);
}

/// Uniformly random value table (usually nowhere near 1-Lipschitz).
inline ValueTable random_table(uint64_t seed, uint64_t p, uint32_t n) {
    PrimeConfig cfg(p, n);
    uint64_t mod = pw(p, n);
    std::mt19937_64 rng(seed);
    std::vector<uint64_t> v(mod);
    for (auto& x : v) x = rng() % mod;
    return padicdyn::make_value_table(cfg, n, std::move(v));
}

inline ValueTable random_lipschitz_table(uint64_t seed, uint64_t p, uint32_t n) {
    padicdyn::RandomSpec rs{seed, PrimeConfig(p, n), padicdyn::Profile::lipschitz};
    return vdp_compile(padicdyn::random_admissible(rs));
}

} // namespace testutil
