#pragma once

#include <optional>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

/// f(m) mod p^n_cert for all m < p^n_cert, stored as canonical residues.
/// n_cert is the certified precision: nothing beyond digit n_cert-1 of any
/// entry is claimed. Tables only exist while p^n_cert fits the table budget,
/// so residues fit in 64 bits.
struct ValueTable {
    PrimeConfig cfg;
    uint32_t n_cert = 0;
    std::vector<uint64_t> v;
    /// Set when 1-Lipschitzness is known (from the producing spec or from a
    /// completed scan); nullopt means unknown.
    std::optional<bool> lipschitz;

    uint64_t modulus() const; // p^n_cert
    uint64_t size() const { return v.size(); }
    uint64_t at(uint64_t m) const;
    /// Base-p digit i of f(m), 0 <= i < n_cert.
    uint64_t digit(uint64_t m, uint32_t i) const;
    PadicTrunc value(uint64_t m) const;
};

ValueTable make_value_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> values);

/// Restriction to k <= n_cert digits and p^k entries.
ValueTable truncate_table(const ValueTable& t, uint32_t k);

struct LipschitzWitness {
    uint64_t x = 0; // representative (x < p^level)
    uint64_t y = 0; // x ≡ y mod p^level but f(x) ≢ f(y) mod p^level
    uint32_t level = 0;
};

struct LipschitzCheck {
    bool ok = true;
    std::optional<LipschitzWitness> witness;
};

/// Full scan of the compatibility condition
///   m ≡ m' (mod p^k)  =>  f(m) ≡ f(m') (mod p^k)   for every k <= n_cert.
/// O(p^n_cert * n_cert) by comparing each m against its low-residue
/// representative.
LipschitzCheck check_lipschitz_table(const ValueTable& t);

} // namespace padicdyn
