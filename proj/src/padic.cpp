#include "padicdyn/padic.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace padicdyn {

namespace {

using boost::multiprecision::cpp_int;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    uint32_t r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set decides primality for all 64-bit integers.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (uint32_t i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::optional<uint64_t> checked_pow_u64(uint64_t p, uint32_t k) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < k; ++i) {
        __uint128_t t = static_cast<__uint128_t>(r) * p;
        if (t > UINT64_MAX) return std::nullopt;
        r = static_cast<uint64_t>(t);
    }
    return r;
}

uint32_t floor_log(uint64_t p, uint64_t m) {
    uint32_t s = 0;
    while (m >= p) {
        m /= p;
        ++s;
    }
    return s;
}

uint32_t valuation_u64(uint64_t p, uint64_t v) {
    uint32_t k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

PrimeConfig::PrimeConfig(uint64_t prime, uint32_t digits) : p(prime), precision(digits) {
    if (prime >= (1ull << 32))
        throw config_error("p must be below 2^32");
    if (!is_prime_u64(prime))
        throw config_error("p = " + std::to_string(prime) + " is not prime");
    if (digits < 1 || digits > 64)
        throw config_error("precision must be in [1, 64]");
}

PadicTrunc::PadicTrunc(const PrimeConfig& cfg) : cfg_(cfg), digits_(cfg.precision, 0) {}

PadicTrunc PadicTrunc::from_integer(int64_t v, const PrimeConfig& cfg) {
    PadicTrunc r(cfg);
    bool neg = v < 0;
    uint64_t u = neg ? (~static_cast<uint64_t>(v) + 1) : static_cast<uint64_t>(v);
    for (uint32_t i = 0; i < cfg.precision && u != 0; ++i) {
        r.digits_[i] = u % cfg.p;
        u /= cfg.p;
    }
    return neg ? -r : r;
}

PadicTrunc PadicTrunc::from_residue_u64(uint64_t v, const PrimeConfig& cfg) {
    PadicTrunc r(cfg);
    for (uint32_t i = 0; i < cfg.precision && v != 0; ++i) {
        r.digits_[i] = v % cfg.p;
        v /= cfg.p;
    }
    if (v != 0) throw precision_error("residue exceeds p^N");
    return r;
}

PadicTrunc PadicTrunc::from_decimal(const std::string& dec, const PrimeConfig& cfg) {
    if (dec.empty()) throw parse_error("empty integer literal");
    size_t i = 0;
    bool neg = false;
    if (dec[0] == '-' || dec[0] == '+') {
        neg = dec[0] == '-';
        i = 1;
    }
    if (i == dec.size()) throw parse_error("bad integer literal: " + dec);
    cpp_int v = 0;
    for (; i < dec.size(); ++i) {
        if (dec[i] < '0' || dec[i] > '9')
            throw parse_error("bad integer literal: " + dec);
        v = v * 10 + (dec[i] - '0');
    }
    PadicTrunc r(cfg);
    for (uint32_t d = 0; d < cfg.precision && v != 0; ++d) {
        r.digits_[d] = static_cast<uint64_t>(v % cfg.p);
        v /= cfg.p;
    }
    return neg ? -r : r;
}

PadicTrunc PadicTrunc::from_digits(std::vector<uint64_t> digits, const PrimeConfig& cfg) {
    if (digits.size() != cfg.precision)
        throw config_error("digit vector length must equal precision");
    for (uint64_t d : digits)
        if (d >= cfg.p) throw config_error("digit out of range [0, p)");
    PadicTrunc r(cfg);
    r.digits_ = std::move(digits);
    return r;
}

uint64_t PadicTrunc::digit(uint32_t i) const {
    if (i >= digits_.size()) throw std::out_of_range("digit index out of range");
    return digits_[i];
}

std::optional<uint32_t> PadicTrunc::valuation() const {
    for (uint32_t i = 0; i < digits_.size(); ++i)
        if (digits_[i] != 0) return i;
    return std::nullopt;
}

bool PadicTrunc::is_zero() const {
    return std::all_of(digits_.begin(), digits_.end(), [](uint64_t d) { return d == 0; });
}

uint64_t PadicTrunc::to_u64() const {
    __uint128_t acc = 0;
    for (uint32_t i = digits_.size(); i-- > 0;) {
        acc = acc * cfg_.p + digits_[i];
        if (acc > UINT64_MAX) throw precision_error("value does not fit in 64 bits");
    }
    return static_cast<uint64_t>(acc);
}

std::string PadicTrunc::to_decimal() const {
    cpp_int acc = 0;
    for (uint32_t i = digits_.size(); i-- > 0;)
        acc = acc * cfg_.p + digits_[i];
    return acc.str();
}

PadicTrunc PadicTrunc::shift_down(uint32_t k) const {
    PadicTrunc r(cfg_);
    for (uint32_t i = 0; i + k < digits_.size(); ++i)
        r.digits_[i] = digits_[i + k];
    return r;
}

PadicTrunc PadicTrunc::shift_up(uint32_t k) const {
    PadicTrunc r(cfg_);
    for (uint32_t i = 0; i + k < digits_.size(); ++i)
        r.digits_[i + k] = digits_[i];
    return r;
}

void PadicTrunc::require_same_cfg(const PadicTrunc& rhs) const {
    if (!(cfg_ == rhs.cfg_))
        throw config_error("operands have different PrimeConfig");
}

PadicTrunc PadicTrunc::operator+(const PadicTrunc& rhs) const {
    require_same_cfg(rhs);
    PadicTrunc r(cfg_);
    uint64_t carry = 0;
    for (uint32_t i = 0; i < digits_.size(); ++i) {
        uint64_t t = digits_[i] + rhs.digits_[i] + carry;
        r.digits_[i] = t % cfg_.p;
        carry = t / cfg_.p;
    }
    return r;
}

PadicTrunc PadicTrunc::operator-(const PadicTrunc& rhs) const {
    require_same_cfg(rhs);
    PadicTrunc r(cfg_);
    uint64_t borrow = 0;
    for (uint32_t i = 0; i < digits_.size(); ++i) {
        uint64_t need = rhs.digits_[i] + borrow;
        if (digits_[i] >= need) {
            r.digits_[i] = digits_[i] - need;
            borrow = 0;
        } else {
            r.digits_[i] = digits_[i] + cfg_.p - need;
            borrow = 1;
        }
    }
    return r;
}

PadicTrunc PadicTrunc::operator*(const PadicTrunc& rhs) const {
    require_same_cfg(rhs);
    PadicTrunc r(cfg_);
    // Schoolbook base-p multiply; p < 2^32 keeps the column sums in range.
    __uint128_t carry = 0;
    for (uint32_t i = 0; i < digits_.size(); ++i) {
        __uint128_t acc = carry;
        for (uint32_t j = 0; j <= i; ++j)
            acc += static_cast<__uint128_t>(digits_[j]) * rhs.digits_[i - j];
        r.digits_[i] = static_cast<uint64_t>(acc % cfg_.p);
        carry = acc / cfg_.p;
    }
    return r;
}

PadicTrunc PadicTrunc::operator-() const {
    return PadicTrunc(cfg_) - *this;
}

bool PadicTrunc::operator==(const PadicTrunc& rhs) const {
    return cfg_ == rhs.cfg_ && digits_ == rhs.digits_;
}

PadicTrunc inverse_unit(const PadicTrunc& a) {
    if (!a.is_unit()) throw precondition_error("inverse of a non-unit mod p^N");
    const PrimeConfig& cfg = a.cfg();
    // Inverse mod p by Fermat, then Hensel lifting doubles the precision.
    uint64_t z0 = powmod_u64(a.digit(0), cfg.p - 2, cfg.p);
    PadicTrunc z = PadicTrunc::from_integer(static_cast<int64_t>(z0), cfg);
    PadicTrunc two = PadicTrunc::from_integer(2, cfg);
    for (uint32_t bits = 1; bits < cfg.precision; bits *= 2)
        z = z * (two - a * z);
    return z;
}

IndexDecomposition decompose_index(uint64_t m, uint64_t p) {
    IndexDecomposition d;
    d.m = m;
    if (m == 0) return d; // floor(log_p 0) = 0 by convention
    d.s = floor_log(p, m);
    uint64_t ps = 1;
    for (uint32_t i = 0; i < d.s; ++i) ps *= p;
    d.q = (m / ps) * ps;
    d.tail = m - d.q;
    return d;
}

} // namespace padicdyn
