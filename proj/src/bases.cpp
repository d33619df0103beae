#include "padicdyn/bases.hpp"

namespace padicdyn {

namespace {

uint64_t table_modulus(const PrimeConfig& cfg, uint32_t n_cert) {
    if (n_cert < 1 || n_cert > cfg.precision)
        throw config_error("n_cert must be in [1, precision]");
    auto m = checked_pow_u64(cfg.p, n_cert);
    if (!m) throw precision_error("p^n_cert exceeds 64 bits");
    return *m;
}

void check_coeffs(const std::vector<uint64_t>& c, uint64_t mod) {
    if (c.size() != mod)
        throw config_error("coefficient table must have exactly p^n_cert entries");
    for (uint64_t x : c)
        if (x >= mod) throw config_error("coefficient out of range [0, p^n_cert)");
}

} // namespace

int chi(uint64_t m, const PadicTrunc& x) {
    const PrimeConfig& cfg = x.cfg();
    uint32_t s = floor_log(cfg.p, m);
    if (s + 1 > cfg.precision)
        throw precision_error("chi undecidable: m >= p^N");
    // x ≡ m mod p^(s+1), digit by digit.
    uint64_t mm = m;
    for (uint32_t i = 0; i <= s; ++i) {
        if (x.digit(i) != mm % cfg.p) return 0;
        mm /= cfg.p;
    }
    return 1;
}

int chi_residue(uint64_t m, uint64_t x, const PrimeConfig& cfg, uint32_t n_cert) {
    uint32_t s = floor_log(cfg.p, m);
    if (s + 1 > n_cert)
        throw precision_error("chi undecidable: m >= p^n_cert");
    uint64_t pk = 1;
    for (uint32_t i = 0; i <= s; ++i) pk *= cfg.p;
    return (x % pk) == (m % pk) ? 1 : 0;
}

uint64_t VdpTable::modulus() const { return table_modulus(cfg, n_cert); }

uint64_t VdpTable::at(uint64_t m) const {
    if (m >= B.size()) throw std::out_of_range("coefficient index out of range");
    return B[m];
}

VdpTable make_vdp_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> coeffs) {
    VdpTable t;
    t.cfg = cfg;
    t.n_cert = n_cert;
    t.B = std::move(coeffs);
    check_coeffs(t.B, table_modulus(cfg, n_cert));
    return t;
}

bool vdp_admissible(const VdpTable& t) {
    for (uint64_t m = 0; m < t.B.size(); ++m) {
        if (t.B[m] == 0) continue;
        if (valuation_u64(t.cfg.p, t.B[m]) < floor_log(t.cfg.p, m)) return false;
    }
    return true;
}

uint64_t NormalizedVdp::at(uint64_t m) const {
    if (m >= b.size()) throw std::out_of_range("coefficient index out of range");
    return b[m];
}

uint64_t NormalizedVdp::digit(uint64_t m, uint32_t i) const {
    uint64_t x = at(m);
    for (uint32_t k = 0; k < i; ++k) x /= cfg.p;
    return x % cfg.p;
}

NormalizedVdp normalize(const VdpTable& t) {
    if (!vdp_admissible(t))
        throw precision_error("normalized coefficients need a Lipschitz-admissible table");
    NormalizedVdp n;
    n.cfg = t.cfg;
    n.n_cert = t.n_cert;
    n.b.resize(t.B.size());
    for (uint64_t m = 0; m < t.B.size(); ++m) {
        uint64_t shift = 1;
        for (uint32_t k = floor_log(t.cfg.p, m); k > 0; --k) shift *= t.cfg.p;
        n.b[m] = t.B[m] / shift;
    }
    return n;
}

uint64_t vdp_evaluate(const VdpTable& t, uint64_t x) {
    const uint64_t mod = t.modulus();
    if (x >= mod) throw std::out_of_range("argument out of range [0, p^n_cert)");
    // One term per level: the m < p level always fires, level j >= 1 fires
    // iff digit j of x is nonzero.
    uint64_t acc = t.B[x % t.cfg.p];
    uint64_t pk = t.cfg.p;
    uint64_t rest = x / t.cfg.p;
    while (rest != 0) {
        uint64_t digit = rest % t.cfg.p;
        uint64_t next = pk * t.cfg.p;
        if (digit != 0) acc = (acc + t.B[x % next]) % mod;
        pk = next;
        rest /= t.cfg.p;
    }
    return acc % mod;
}

PadicTrunc vdp_evaluate(const VdpTable& t, const PadicTrunc& x) {
    if (x.cfg().p != t.cfg.p)
        throw config_error("argument and table use different primes");
    PrimeConfig c(t.cfg.p, t.n_cert);
    uint64_t r = 0;
    uint64_t pk = 1;
    for (uint32_t i = 0; i < t.n_cert && i < x.cfg().precision; ++i) {
        r += x.digit(i) * pk;
        pk *= t.cfg.p;
    }
    return PadicTrunc::from_residue_u64(vdp_evaluate(t, r), c);
}

ValueTable vdp_compile(const VdpTable& t) {
    const uint64_t mod = t.modulus();
    ValueTable v;
    v.cfg = t.cfg;
    v.n_cert = t.n_cert;
    v.v.resize(mod);
    for (uint64_t m = 0; m < mod; ++m) {
        if (m < t.cfg.p) {
            v.v[m] = t.B[m] % mod;
        } else {
            IndexDecomposition d = decompose_index(m, t.cfg.p);
            v.v[m] = (t.B[m] + v.v[d.tail]) % mod;
        }
    }
    if (vdp_admissible(t)) v.lipschitz = true;
    return v;
}

VdpTable vdp_extract(const ValueTable& values) {
    const uint64_t mod = values.modulus();
    VdpTable t;
    t.cfg = values.cfg;
    t.n_cert = values.n_cert;
    t.B.resize(values.v.size());
    for (uint64_t m = 0; m < values.v.size(); ++m) {
        if (m < values.cfg.p) {
            t.B[m] = values.v[m];
        } else {
            IndexDecomposition d = decompose_index(m, values.cfg.p);
            t.B[m] = (values.v[m] + mod - values.v[d.tail]) % mod;
        }
    }
    return t;
}

uint64_t MahlerTable::modulus() const { return table_modulus(cfg, n_cert); }

uint64_t MahlerTable::at(uint64_t m) const {
    if (m >= a.size()) throw std::out_of_range("coefficient index out of range");
    return a[m];
}

MahlerTable make_mahler_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> coeffs) {
    MahlerTable t;
    t.cfg = cfg;
    t.n_cert = n_cert;
    t.a = std::move(coeffs);
    check_coeffs(t.a, table_modulus(cfg, n_cert));
    return t;
}

bool mahler_admissible(const MahlerTable& t) {
    for (uint64_t m = 0; m < t.a.size(); ++m) {
        if (t.a[m] == 0) continue;
        if (valuation_u64(t.cfg.p, t.a[m]) < floor_log(t.cfg.p, m)) return false;
    }
    return true;
}

PadicTrunc binom_eval(const PadicTrunc& x, uint64_t m) {
    const PrimeConfig& cfg = x.cfg();
    PadicTrunc one = PadicTrunc::from_integer(1, cfg);
    if (m == 0) return one;

    // x as an integer when it fits; only then can a factor x - i + 1 be
    // exactly zero for i - 1 < 2^64.
    std::optional<uint64_t> x_small;
    try {
        x_small = x.to_u64();
    } catch (const precision_error&) {
    }

    PadicTrunc factor = x;   // x - (i - 1)
    PadicTrunc unit = one;   // product of unit parts, numerator / denominator
    int64_t shift = 0;       // net power of p
    PadicTrunc den = PadicTrunc(cfg); // running i as a truncated value
    for (uint64_t i = 1; i <= m; ++i) {
        if (x_small && *x_small == i - 1) return PadicTrunc(cfg); // factor hits zero
        auto vnum = factor.valuation();
        if (!vnum) throw precision_error("binomial factor indistinguishable from 0 at this precision");
        unit = unit * factor.shift_down(*vnum);
        shift += *vnum;
        den = den + one;
        uint32_t vden = valuation_u64(cfg.p, i);
        unit = unit * inverse_unit(den.shift_down(vden));
        shift -= vden;
        factor = factor - one;
    }
    if (shift < 0) throw error("internal: negative valuation in an integer binomial");
    if (static_cast<uint32_t>(shift) >= cfg.precision) return PadicTrunc(cfg);
    return unit.shift_up(static_cast<uint32_t>(shift));
}

PadicTrunc mahler_evaluate(const MahlerTable& t, const PadicTrunc& x, bool require_admissible) {
    if (x.cfg().p != t.cfg.p)
        throw config_error("argument and table use different primes");
    if (require_admissible && !mahler_admissible(t))
        throw precision_error("precision-unsafe: Mahler table is not Lipschitz-admissible");
    PrimeConfig c(t.cfg.p, t.n_cert);
    PadicTrunc acc(c);
    PadicTrunc xr = PadicTrunc::from_decimal(x.to_decimal(), c);
    for (uint64_t m = 0; m < t.a.size(); ++m) {
        if (t.a[m] == 0) continue;
        acc = acc + PadicTrunc::from_residue_u64(t.a[m], c) * binom_eval(xr, m);
    }
    return acc;
}

uint64_t mahler_evaluate(const MahlerTable& t, uint64_t x, bool require_admissible) {
    PrimeConfig c(t.cfg.p, t.n_cert);
    return mahler_evaluate(t, PadicTrunc::from_residue_u64(x, c), require_admissible).to_u64();
}

ValueTable mahler_compile(const MahlerTable& t, bool require_admissible) {
    if (require_admissible && !mahler_admissible(t))
        throw precision_error("precision-unsafe: Mahler table is not Lipschitz-admissible");
    const uint64_t mod = t.modulus();
    uint64_t support = t.a.size();
    while (support > 0 && t.a[support - 1] == 0) --support;

    ValueTable v;
    v.cfg = t.cfg;
    v.n_cert = t.n_cert;
    v.v.assign(mod, 0);
    if (support == 0) return v;

    // row[k] = C(x, k) mod p^n_cert, advanced by Pascal's rule per x.
    std::vector<uint64_t> row(support, 0);
    row[0] = 1 % mod;
    for (uint64_t x = 0; x < mod; ++x) {
        if (x > 0) {
            uint64_t top = std::min<uint64_t>(x, support - 1);
            for (uint64_t k = top; k >= 1; --k)
                row[k] = (row[k] + row[k - 1]) % mod;
        }
        __uint128_t acc = 0;
        for (uint64_t k = 0; k < support; ++k) {
            if (t.a[k] == 0) continue;
            acc += static_cast<__uint128_t>(t.a[k]) * row[k] % mod;
        }
        v.v[x] = static_cast<uint64_t>(acc % mod);
    }
    if (mahler_admissible(t)) v.lipschitz = true;
    return v;
}

MahlerTable mahler_extract(const ValueTable& values) {
    const uint64_t mod = values.modulus();
    const uint64_t len = values.v.size();
    MahlerTable t;
    t.cfg = values.cfg;
    t.n_cert = values.n_cert;
    t.a.resize(len);
    std::vector<uint64_t> work = values.v;
    t.a[0] = work[0];
    for (uint64_t k = 1; k < len; ++k) {
        for (uint64_t j = 0; j + k < len; ++j)
            work[j] = (work[j + 1] + mod - work[j]) % mod;
        t.a[k] = work[0];
    }
    return t;
}

ValueTable delta(const ValueTable& values) {
    const uint64_t mod = values.modulus();
    const uint64_t len = values.v.size();
    ValueTable d;
    d.cfg = values.cfg;
    d.n_cert = values.n_cert;
    d.v.resize(len);
    for (uint64_t m = 0; m + 1 < len; ++m)
        d.v[m] = (values.v[m + 1] + mod - values.v[m]) % mod;
    d.v[len - 1] = (values.v[0] + mod - values.v[len - 1]) % mod; // f(p^k) ≡ f(0)
    // Differences of a 1-Lipschitz function are 1-Lipschitz.
    if (values.lipschitz == true) d.lipschitz = true;
    return d;
}

ValueTable delta_strict(const ValueTable& values) {
    if (values.n_cert < 2)
        throw precision_error("delta_strict needs n_cert >= 2");
    const uint64_t p = values.cfg.p;
    uint64_t mod = values.modulus() / p;
    ValueTable d;
    d.cfg = values.cfg;
    d.n_cert = values.n_cert - 1;
    d.v.resize(mod);
    for (uint64_t m = 0; m < mod; ++m)
        d.v[m] = (values.v[m + 1] + values.modulus() - values.v[m]) % mod;
    if (values.lipschitz == true) d.lipschitz = true;
    return d;
}

} // namespace padicdyn
