#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicdyn {

// Error hierarchy. Contract violations throw; mathematical pass/fail goes
// through Verdict (see criteria.hpp).
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class config_error : public error {
public:
    using error::error;
};
class budget_error : public error {
public:
    using error::error;
};
class precondition_error : public error {
public:
    using error::error;
};
class precision_error : public error {
public:
    using error::error;
};
class parse_error : public error {
public:
    using error::error;
};

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(uint64_t n);

/// p^k if it fits in 64 bits, nullopt otherwise.
std::optional<uint64_t> checked_pow_u64(uint64_t p, uint32_t k);

/// floor(log_p m); 0 for m = 0 by convention.
uint32_t floor_log(uint64_t p, uint64_t m);

/// p-adic valuation of a nonzero uint64 (number of trailing factors p).
uint32_t valuation_u64(uint64_t p, uint64_t v);

/// A prime p together with a working precision of N base-p digits.
/// Every operation in the library reduces its results mod p^N.
struct PrimeConfig {
    uint64_t p = 2;
    uint32_t precision = 1;

    PrimeConfig() = default;
    PrimeConfig(uint64_t prime, uint32_t digits);

    bool operator==(const PrimeConfig&) const = default;
};

/// A p-adic integer known to N digits, little-endian: digits[i] is the
/// coefficient of p^i. Canonical: equal values have equal digit vectors.
/// Immutable after construction; all operations are pure.
class PadicTrunc {
public:
    explicit PadicTrunc(const PrimeConfig& cfg); // zero

    static PadicTrunc from_integer(int64_t v, const PrimeConfig& cfg);
    static PadicTrunc from_residue_u64(uint64_t v, const PrimeConfig& cfg); // pre: v < p^N
    static PadicTrunc from_decimal(const std::string& dec, const PrimeConfig& cfg);
    static PadicTrunc from_digits(std::vector<uint64_t> digits, const PrimeConfig& cfg);

    const PrimeConfig& cfg() const { return cfg_; }
    const std::vector<uint64_t>& digits() const { return digits_; }

    /// digits[i]; throws std::out_of_range for i >= N.
    uint64_t digit(uint32_t i) const;

    /// Index of the lowest nonzero digit; nullopt means the value is
    /// congruent to 0 mod p^N ("infinite" valuation at this precision).
    std::optional<uint32_t> valuation() const;

    bool is_zero() const;
    bool is_unit() const { return !digits_.empty() && digits_[0] != 0; }

    /// Value as an integer in [0, p^N); throws precision_error if it does
    /// not fit in 64 bits.
    uint64_t to_u64() const;
    std::string to_decimal() const;

    /// Drop k low digits (divide by p^k); the result keeps N digits with
    /// zeros shifted in at the top. Digits above N-k are uncertified.
    PadicTrunc shift_down(uint32_t k) const;
    /// Multiply by p^k.
    PadicTrunc shift_up(uint32_t k) const;

    PadicTrunc operator+(const PadicTrunc& rhs) const;
    PadicTrunc operator-(const PadicTrunc& rhs) const;
    PadicTrunc operator*(const PadicTrunc& rhs) const;
    PadicTrunc operator-() const;
    bool operator==(const PadicTrunc& rhs) const;
    bool operator!=(const PadicTrunc& rhs) const { return !(*this == rhs); }

private:
    void require_same_cfg(const PadicTrunc& rhs) const;

    PrimeConfig cfg_;
    std::vector<uint64_t> digits_;
};

inline PadicTrunc add(const PadicTrunc& a, const PadicTrunc& b) { return a + b; }
inline PadicTrunc sub(const PadicTrunc& a, const PadicTrunc& b) { return a - b; }
inline PadicTrunc mul(const PadicTrunc& a, const PadicTrunc& b) { return a * b; }

/// Inverse of a unit mod p^N (Hensel lifting from the inverse mod p).
/// Throws precondition_error on a non-unit.
PadicTrunc inverse_unit(const PadicTrunc& a);

/// m = tail + q with q = m_s * p^s the leading base-p digit term.
/// For m = 0, s = 0 and q = tail = 0.
struct IndexDecomposition {
    uint64_t m = 0;
    uint32_t s = 0;
    uint64_t q = 0;
    uint64_t tail = 0;
};

IndexDecomposition decompose_index(uint64_t m, uint64_t p);

} // namespace padicdyn
