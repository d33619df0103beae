#include "padicdyn/value_table.hpp"

namespace padicdyn {

uint64_t ValueTable::modulus() const {
    auto m = checked_pow_u64(cfg.p, n_cert);
    if (!m) throw precision_error("p^n_cert exceeds 64 bits");
    return *m;
}

uint64_t ValueTable::at(uint64_t m) const {
    if (m >= v.size()) throw std::out_of_range("table index out of range");
    return v[m];
}

uint64_t ValueTable::digit(uint64_t m, uint32_t i) const {
    if (i >= n_cert) throw std::out_of_range("digit index beyond certified precision");
    uint64_t x = at(m);
    for (uint32_t k = 0; k < i; ++k) x /= cfg.p;
    return x % cfg.p;
}

PadicTrunc ValueTable::value(uint64_t m) const {
    PrimeConfig c(cfg.p, n_cert);
    return PadicTrunc::from_residue_u64(at(m), c);
}

ValueTable make_value_table(const PrimeConfig& cfg, uint32_t n_cert, std::vector<uint64_t> values) {
    if (n_cert < 1 || n_cert > cfg.precision)
        throw config_error("n_cert must be in [1, precision]");
    ValueTable t;
    t.cfg = cfg;
    t.n_cert = n_cert;
    t.v = std::move(values);
    uint64_t mod = t.modulus();
    if (t.v.size() != mod)
        throw config_error("value table must have exactly p^n_cert entries");
    for (uint64_t x : t.v)
        if (x >= mod) throw config_error("value table entry out of range [0, p^n_cert)");
    return t;
}

ValueTable truncate_table(const ValueTable& t, uint32_t k) {
    if (k < 1 || k > t.n_cert) throw config_error("truncation level out of range");
    ValueTable r;
    r.cfg = t.cfg;
    r.n_cert = k;
    uint64_t mod = *checked_pow_u64(t.cfg.p, k);
    r.v.resize(mod);
    for (uint64_t m = 0; m < mod; ++m) r.v[m] = t.v[m] % mod;
    r.lipschitz = t.lipschitz;
    return r;
}

LipschitzCheck check_lipschitz_table(const ValueTable& t) {
    const uint64_t len = t.v.size();
    uint64_t pk = 1;
    for (uint32_t k = 1; k <= t.n_cert; ++k) {
        pk *= t.cfg.p;
        for (uint64_t m = pk; m < len; ++m) {
            uint64_t rep = m % pk;
            if ((t.v[m] % pk) != (t.v[rep] % pk))
                return {false, LipschitzWitness{rep, m, k}};
        }
    }
    return {true, std::nullopt};
}

} // namespace padicdyn
