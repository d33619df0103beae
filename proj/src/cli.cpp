#include "padicdyn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace padicdyn {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string hex64(uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

// full_scope: the ladder reached the table's certified precision, so "fails
// at some level" claims are decidable. A capped ladder can only check the
// pass => oracle-pass direction.
void judge(CriterionRow& row, bool oracle_fact, bool full_scope) {
    if (!row.applicable) {
        row.agreement = "not-applicable";
        return;
    }
    if (row.direction == "exact") {
        if (row.verdict.passed) {
            row.agreement = oracle_fact ? "agree" : "disagree";
            if (!oracle_fact) row.agreement_note = "criterion passes but the oracle fails";
        } else if (full_scope) {
            row.agreement = oracle_fact ? "disagree" : "agree";
            if (oracle_fact) row.agreement_note = "criterion fails but the oracle passes";
        } else {
            row.agreement = "not-applicable";
            row.agreement_note = "converse needs the uncapped ladder";
        }
    } else if (row.direction == "sufficient") {
        if (!row.verdict.passed) {
            row.agreement = "not-applicable"; // a failed sufficient test claims nothing
        } else {
            row.agreement = oracle_fact ? "agree" : "disagree";
            if (!oracle_fact) row.agreement_note = "criterion passes but the oracle fails";
        }
    } else { // necessary
        if (!oracle_fact || !full_scope) {
            row.agreement = "not-applicable";
        } else {
            row.agreement = row.verdict.passed ? "agree" : "disagree";
            if (!row.verdict.passed) row.agreement_note = "oracle passes but the necessary condition fails";
        }
    }
}

json verdict_json(const Verdict& v) {
    json out;
    out["passed"] = v.passed;
    out["verified_to_level"] = v.verified_to_level;
    json conds = json::array();
    for (const Condition& c : v.conditions) {
        json jc;
        jc["label"] = c.label;
        jc["ok"] = c.satisfied;
        if (c.witness) jc["witness"] = *c.witness;
        if (!c.note.empty()) jc["note"] = c.note;
        conds.push_back(std::move(jc));
    }
    out["conditions"] = std::move(conds);
    return out;
}

// Mahler extraction is quadratic in the table size; past this it is skipped
// in reports (the van der Put side still runs).
constexpr uint64_t kMahlerExtractCap = uint64_t(1) << 14;

} // namespace

uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

Report run_checks(const FunctionSpec& spec, uint32_t precision, uint32_t max_level, const Limits& limits) {
    Report rep;
    rep.precision = precision;
    rep.digest = "fnv1a:" + hex64(fnv1a64(serialize(spec)));

    auto t0 = std::chrono::steady_clock::now();
    ValueTable table = compile(spec, precision, limits);
    rep.timings_ms["compile"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    rep.lipschitz = check_lipschitz_table(table);
    table.lipschitz = rep.lipschitz.ok;

    VdpTable B = vdp_extract(table);
    bool admissible = vdp_admissible(B);
    std::optional<NormalizedVdp> nb;
    if (admissible) nb = normalize(B);
    std::optional<MahlerTable> mah;
    if (table.size() <= kMahlerExtractCap) mah = mahler_extract(table);
    rep.stats = digit_stats(table);
    rep.timings_ms["extract"] = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    uint32_t levels = std::min(max_level == 0 ? precision : max_level, precision);
    rep.oracle_levels = levels;
    rep.oracle = transitivity_ladder(table, levels, /*assume_monotone=*/rep.lipschitz.ok);
    const bool perm_all = rep.oracle.permutation_through(levels);
    const bool cyc_all = rep.oracle.transitive_through(levels);
    rep.timings_ms["oracle"] = ms_since(t0);

    const bool full_scope = levels == precision;
    t0 = std::chrono::steady_clock::now();
    auto add = [&](CriterionRow row, bool fact) {
        judge(row, fact, full_scope);
        rep.criteria.push_back(std::move(row));
    };
    auto add_scan = [&](CriterionRow row, bool fact) {
        judge(row, fact, /*full_scope=*/true); // the compatibility scan covers the whole table
        rep.criteria.push_back(std::move(row));
    };
    auto skipped = [&](std::string name, std::string target, std::string direction, std::string why) {
        CriterionRow row;
        row.name = std::move(name);
        row.target = std::move(target);
        row.direction = std::move(direction);
        row.applicable = false;
        row.skip_reason = std::move(why);
        rep.criteria.push_back(std::move(row));
    };

    add_scan({"vdp lipschitz bound", "lipschitz", "exact", true, {}, vdp_lipschitz(B)}, rep.lipschitz.ok);
    add({"vdp mp sufficient", "measure-preserving", "sufficient", true, {}, vdp_mp_sufficient_p(B)}, perm_all);
    add({"vdp mp necessary", "measure-preserving", "necessary", true, {}, vdp_mp_necessary(B)}, perm_all);
    if (precision >= 3)
        add({"vdp ergodic sufficient", "ergodic", "sufficient", true, {}, vdp_ergodic_sufficient_p(B)}, cyc_all);
    else
        skipped("vdp ergodic sufficient", "ergodic", "sufficient", "needs precision >= 3");

    if (spec.cfg.p == 2) {
        if (nb) {
            add({"vdp mp exact (p=2)", "measure-preserving", "exact", true, {}, vdp_mp_exact_2(*nb)}, perm_all);
            if (precision >= 3)
                add({"vdp ergodic exact (p=2)", "ergodic", "exact", true, {}, vdp_ergodic_exact_2(*nb)}, cyc_all);
            else
                skipped("vdp ergodic exact (p=2)", "ergodic", "exact", "needs precision >= 3");
        } else {
            skipped("vdp mp exact (p=2)", "measure-preserving", "exact", "table is not 1-Lipschitz");
            skipped("vdp ergodic exact (p=2)", "ergodic", "exact", "table is not 1-Lipschitz");
        }
    }

    if (mah) {
        add_scan({"mahler lipschitz bound", "lipschitz", "exact", true, {}, mahler_lipschitz(*mah)},
                 rep.lipschitz.ok);
        add({"mahler mp sufficient", "measure-preserving", "sufficient", true, {}, mahler_mp_sufficient(*mah)},
            perm_all);
        add({"mahler ergodic sufficient", "ergodic", "sufficient", true, {}, mahler_ergodic_sufficient_p(*mah)},
            cyc_all);
        if (spec.cfg.p == 2 && precision >= 2)
            add({"mahler ergodic exact (p=2)", "ergodic", "exact", true, {}, mahler_ergodic_exact_2(*mah)}, cyc_all);
    } else {
        skipped("mahler criteria", "ergodic", "exact",
                "extraction skipped above " + std::to_string(kMahlerExtractCap) + " entries");
    }

    if (const auto* poly = std::get_if<PolynomialSpec>(&spec.payload)) {
        if (spec.cfg.p == 2 && !poly->coeffs.empty() && poly->coeffs[0] == 1)
            add({"polynomial ergodic (p=2)", "ergodic", "exact", true, {}, poly_ergodic_z2(poly->coeffs)}, cyc_all);
        else if (spec.cfg.p == 2)
            skipped("polynomial ergodic (p=2)", "ergodic", "exact", "needs constant term exactly 1");
    }

    rep.equivalences.emplace_back("block-sum identity", block_sum_identity_check(table));
    rep.equivalences_applicable = oracle_measure_preserving(table);
    if (rep.equivalences_applicable) {
        rep.equivalences.emplace_back("mp block-sum congruence", mp_block_sum_congruence_check(table));
        rep.equivalences.emplace_back("equivalence chain", equivalence_chain_check(table));
    }
    rep.timings_ms["criteria"] = ms_since(t0);

    for (const CriterionRow& row : rep.criteria)
        if (row.agreement == "disagree") ++rep.disagreements;
    for (const auto& [name, v] : rep.equivalences)
        if (!v.passed) ++rep.disagreements; // identities must hold on every valid input
    return rep;
}

std::string report_to_json(const FunctionSpec& spec, const Report& rep) {
    json j = json::parse(serialize(spec));
    json r;
    r["digest"] = rep.digest;
    r["precision"] = rep.precision;
    r["lipschitz"] = json{{"ok", rep.lipschitz.ok}};
    if (rep.lipschitz.witness) {
        r["lipschitz"]["witness"] = json{{"x", rep.lipschitz.witness->x},
                                         {"y", rep.lipschitz.witness->y},
                                         {"level", rep.lipschitz.witness->level}};
    }
    json levels = json::array();
    for (const LevelReport& lr : rep.oracle.levels) {
        json jl;
        jl["level"] = lr.level;
        jl["permutation"] = lr.is_permutation;
        jl["single_cycle"] = lr.is_single_cycle;
        if (!lr.cycle_lengths.empty()) jl["cycles"] = lr.cycle_lengths.size();
        levels.push_back(std::move(jl));
    }
    r["oracle"] = json{{"levels", std::move(levels)}, {"checked_to", rep.oracle.checked_to}};
    if (rep.oracle.first_failure) r["oracle"]["first_failure"] = *rep.oracle.first_failure;
    if (rep.oracle.first_perm_failure) r["oracle"]["first_perm_failure"] = *rep.oracle.first_perm_failure;

    json rows = json::array();
    for (const CriterionRow& row : rep.criteria) {
        json jr;
        jr["name"] = row.name;
        jr["target"] = row.target;
        jr["direction"] = row.direction;
        if (!row.applicable) {
            jr["skipped"] = row.skip_reason;
        } else {
            jr["verdict"] = verdict_json(row.verdict);
            jr["agreement"] = row.agreement;
            if (!row.agreement_note.empty()) jr["note"] = row.agreement_note;
        }
        rows.push_back(std::move(jr));
    }
    r["criteria"] = std::move(rows);

    json eqs = json::array();
    for (const auto& [name, v] : rep.equivalences) {
        json je = verdict_json(v);
        je["name"] = name;
        eqs.push_back(std::move(je));
    }
    r["equivalences"] = std::move(eqs);
    r["digit_sums"] = json{{"S", rep.stats.S}, {"T", rep.stats.T}};
    r["timings_ms"] = rep.timings_ms;
    r["disagreements"] = rep.disagreements;
    j["report"] = std::move(r);
    return j.dump(2) + "\n";
}

void print_report(std::ostream& out, const std::string& source, const Report& rep) {
    out << "input: " << source << " (" << rep.digest << ")\n";
    out << "working precision: " << rep.precision << ", oracle levels: 1.." << rep.oracle_levels << "\n";
    out << "1-Lipschitz: " << (rep.lipschitz.ok ? "yes" : "no");
    if (rep.lipschitz.witness)
        out << "  (witness x=" << rep.lipschitz.witness->x << " y=" << rep.lipschitz.witness->y
            << " level=" << rep.lipschitz.witness->level << ")";
    out << "\n";
    out << "oracle: ";
    if (rep.oracle.first_perm_failure)
        out << "bijectivity fails at level " << *rep.oracle.first_perm_failure;
    else
        out << "permutation through level " << rep.oracle_levels;
    out << "; ";
    if (rep.oracle.first_failure)
        out << "transitivity fails at level " << *rep.oracle.first_failure;
    else
        out << "single cycle through level " << rep.oracle_levels;
    out << "\n\ncriteria:\n";
    for (const CriterionRow& row : rep.criteria) {
        if (!row.applicable) {
            out << "  [skip] " << row.name << " - " << row.skip_reason << "\n";
            continue;
        }
        out << "  [" << (row.verdict.passed ? "pass" : "fail") << "] " << row.name << " (" << row.direction
            << ", " << row.target << ") vs oracle: " << row.agreement;
        if (!row.agreement_note.empty()) out << " -- " << row.agreement_note;
        if (!row.verdict.passed) {
            for (const Condition& c : row.verdict.conditions) {
                if (c.satisfied) continue;
                out << "\n         first violated: " << c.label;
                if (c.witness) out << " (witness " << *c.witness << ")";
                break;
            }
        }
        out << "\n";
    }
    out << "\nidentities:\n";
    for (const auto& [name, v] : rep.equivalences) {
        out << "  [" << (v.passed ? "ok" : "VIOLATED") << "] " << name;
        for (const Condition& c : v.conditions)
            if (!c.satisfied && c.witness) out << " at n=" << *c.witness;
        out << "\n";
    }
    if (!rep.equivalences_applicable)
        out << "  (measure-preservation-gated identities skipped: table is not an oracle permutation)\n";
    out << "\nagreement: "
        << (rep.disagreements == 0 ? "no disagreements" : std::to_string(rep.disagreements) + " DISAGREEMENT(S)")
        << "\n";
}

std::vector<uint8_t> stream_bytes(const ValueTable& table, uint64_t count, uint64_t x0) {
    std::vector<uint8_t> out;
    out.reserve(count);
    uint64_t x = x0 % table.size();
    for (uint64_t i = 0; i < count; ++i) {
        x = table.v[x];
        out.push_back(static_cast<uint8_t>(x & 0xFF));
    }
    return out;
}

uint64_t stream_period(const ValueTable& table, uint64_t x0) {
    uint64_t x = x0 % table.size();
    uint64_t steps = 0;
    do {
        x = table.v[x];
        ++steps;
    } while (x != x0 % table.size() && steps <= table.size());
    return steps;
}

namespace cli {

namespace {

int finish_report(const FunctionSpec& spec, const Report& rep, const std::string& source, bool json_output,
                  const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (json_output) {
        out << report_to_json(spec, rep);
    } else {
        print_report(out, source, rep);
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << out_path << "'\n";
            return 2;
        }
        f << report_to_json(spec, rep);
    }
    return rep.disagreements == 0 ? 0 : 1;
}

} // namespace

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        FunctionSpec spec = load_spec_file(opt.path);
        uint32_t precision = opt.precision.value_or(spec.cfg.precision);
        Limits limits{opt.budget};
        Report rep = run_checks(spec, precision, opt.max_level.value_or(0), limits);
        return finish_report(spec, rep, opt.path, opt.json_output, opt.out_path, out, err);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_poly(const PolyOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.coeffs.empty() || opt.coeffs[0] != 1) {
            err << "error: the polynomial criterion needs constant term exactly 1\n";
            return 2;
        }
        FunctionSpec spec;
        spec.cfg = PrimeConfig(2, opt.precision);
        spec.payload = PolynomialSpec{opt.coeffs};
        Limits limits{opt.budget};
        Report rep = run_checks(spec, opt.precision, opt.max_level.value_or(0), limits);
        return finish_report(spec, rep, "polynomial", opt.json_output, {}, out, err);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        uint32_t precision = opt.precision.value_or(opt.p == 2 ? 10 : 6);
        RandomSpec rs{opt.seed, PrimeConfig(opt.p, precision), opt.profile};
        VdpTable t = random_admissible(rs);
        FunctionSpec spec;
        spec.cfg = rs.cfg;
        spec.payload = VdpSpec{t.B};
        spec.meta_json = std::string("{\"generator\":\"mt19937_64\",\"profile\":\"") + to_string(opt.profile) +
                         "\",\"seed\":" + std::to_string(opt.seed) + "}";
        std::string doc = serialize(spec);
        if (opt.out_path.empty()) {
            out << doc;
        } else {
            std::ofstream f(opt.out_path, std::ios::binary);
            if (!f) {
                err << "error: cannot write '" << opt.out_path << "'\n";
                return 2;
            }
            f << doc;
        }
        return 0;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_stream(const StreamOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        FunctionSpec spec = load_spec_file(opt.path);
        if (spec.cfg.p != 2) {
            err << "error: the keystream generator needs p = 2\n";
            return 2;
        }
        ValueTable table = compile(spec, spec.cfg.precision);
        CycleReport ladder = transitivity_ladder(table);
        bool ergodic = ladder.transitive_through(spec.cfg.precision);
        if (!ergodic && !opt.force) {
            err << "error: map is not a single cycle through level " << spec.cfg.precision
                << " (first failure at level "
                << (ladder.first_failure ? std::to_string(*ladder.first_failure) : "?")
                << "); refusing to stream without --force\n";
            return 2;
        }
        std::vector<uint8_t> bytes = stream_bytes(table, opt.count, opt.state);
        if (opt.out_path.empty()) {
            out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        } else {
            std::ofstream f(opt.out_path, std::ios::binary);
            if (!f) {
                err << "error: cannot write '" << opt.out_path << "'\n";
                return 2;
            }
            f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        }
        err << "state space 2^" << spec.cfg.precision << ", period "
            << (ergodic ? std::to_string(table.size()) : std::string("not guaranteed")) << ", " << bytes.size()
            << " bytes emitted\n";
        return 0;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::directory_iterator(opt.dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    std::sort(files.begin(), files.end());
    int exit_code = 0;
    json rows = json::array();
    for (const auto& f : files) {
        std::string status, detail;
        try {
            FunctionSpec spec = load_spec_file(f.string());
            Report rep = run_checks(spec, spec.cfg.precision, opt.max_level.value_or(0), Limits{opt.budget});
            bool erg = rep.oracle.transitive_through(rep.oracle_levels);
            bool mp = rep.oracle.permutation_through(rep.oracle_levels);
            status = rep.disagreements == 0 ? "ok" : "DISAGREE";
            detail = std::string(rep.lipschitz.ok ? "lipschitz" : "non-lipschitz") + ", " +
                     (mp ? "mp" : "non-mp") + ", " + (erg ? "ergodic" : "non-ergodic") + " (to level " +
                     std::to_string(rep.oracle_levels) + ")";
            if (rep.disagreements != 0) exit_code = std::max(exit_code, 1);
        } catch (const error& e) {
            status = "ERROR";
            detail = e.what();
            exit_code = 2;
        }
        if (opt.json_output) {
            rows.push_back(json{{"file", f.filename().string()}, {"status", status}, {"detail", detail}});
        } else {
            out << std::left << std::setw(36) << f.filename().string() << " " << std::setw(9) << status << " "
                << detail << "\n";
        }
    }
    if (opt.json_output) out << json{{"sweep", rows}}.dump(2) << "\n";
    return exit_code;
}

} // namespace cli

} // namespace padicdyn
