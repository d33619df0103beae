#pragma once

#include <iosfwd>
#include <map>

#include "padicdyn/construct.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/function_spec.hpp"
#include "padicdyn/oracle.hpp"

namespace padicdyn {

/// One criterion line of a report: the verdict plus how it relates to the
/// brute-force oracle. "sufficient" claims pass => oracle pass, "necessary"
/// claims oracle pass => pass, "exact" claims equality; agreement is the
/// tri-state outcome of that claim against the oracle ladder.
struct CriterionRow {
    std::string name;
    std::string target;    // "lipschitz" | "measure-preserving" | "ergodic"
    std::string direction; // "sufficient" | "necessary" | "exact"
    bool applicable = true;
    std::string skip_reason;
    Verdict verdict;
    std::string agreement = "not-applicable"; // "agree" | "disagree" | "not-applicable"
    std::string agreement_note;
};

struct Report {
    std::string digest;
    uint32_t precision = 0;
    uint32_t oracle_levels = 0;
    LipschitzCheck lipschitz;
    CycleReport oracle;
    std::vector<CriterionRow> criteria;
    std::vector<std::pair<std::string, Verdict>> equivalences;
    bool equivalences_applicable = false;
    DigitStats stats;
    std::map<std::string, double> timings_ms;
    uint32_t disagreements = 0;
};

/// Compile, extract both coefficient bases, run every applicable criterion,
/// the oracle ladder, and the equivalence suites.
Report run_checks(const FunctionSpec& spec, uint32_t precision, uint32_t max_level,
                  const Limits& limits = {});

std::string report_to_json(const FunctionSpec& spec, const Report& rep);
void print_report(std::ostream& out, const std::string& source, const Report& rep);

uint64_t fnv1a64(const std::string& bytes);

/// Iterated state sequence x <- f(x) starting from x0; emits one byte per
/// step (the low eight base-2 digits of the new state).
std::vector<uint8_t> stream_bytes(const ValueTable& table, uint64_t count, uint64_t x0);

/// Steps until the state first returns to x0 (at most p^n_cert + 1).
uint64_t stream_period(const ValueTable& table, uint64_t x0);

namespace cli {

struct CheckOptions {
    std::string path;
    std::optional<uint32_t> precision;
    std::optional<uint32_t> max_level;
    uint64_t budget = uint64_t(1) << 24;
    bool json_output = false;
    std::string out_path;
};
int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);

struct PolyOptions {
    std::vector<bigint> coeffs;
    uint32_t precision = 10;
    std::optional<uint32_t> max_level;
    uint64_t budget = uint64_t(1) << 24;
    bool json_output = false;
};
int cmd_poly(const PolyOptions& opt, std::ostream& out, std::ostream& err);

struct GenOptions {
    Profile profile = Profile::ergodic_core;
    uint64_t p = 2;
    std::optional<uint32_t> precision;
    uint64_t seed = 0;
    std::string out_path; // empty: stdout
};
int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err);

struct StreamOptions {
    std::string path;
    uint64_t count = 0;
    uint64_t state = 0;
    bool force = false;
    std::string out_path; // empty: stdout
};
int cmd_stream(const StreamOptions& opt, std::ostream& out, std::ostream& err);

struct SweepOptions {
    std::string dir;
    std::optional<uint32_t> max_level;
    uint64_t budget = uint64_t(1) << 24;
    bool json_output = false;
};
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);

} // namespace cli

} // namespace padicdyn
