#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicdyn/cli.hpp"
#include "padicdyn/construct.hpp"
#include "padicdyn/criteria.hpp"
#include "padicdyn/function_spec.hpp"
#include "padicdyn/oracle.hpp"

namespace py = pybind11;
using namespace padicdyn;

namespace {

// Arbitrary-size python ints travel as decimal strings.
bigint to_bigint(const py::object& o) { return bigint(py::str(o).cast<std::string>()); }

std::vector<bigint> to_bigints(const py::sequence& seq) {
    std::vector<bigint> out;
    out.reserve(seq.size());
    for (const auto& o : seq) out.push_back(to_bigint(py::reinterpret_borrow<py::object>(o)));
    return out;
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["passed"] = v.passed;
    d["verified_to_level"] = v.verified_to_level;
    py::list conds;
    for (const Condition& c : v.conditions) {
        py::dict jc;
        jc["label"] = c.label;
        jc["ok"] = c.satisfied;
        if (c.witness) jc["witness"] = *c.witness;
        if (!c.note.empty()) jc["note"] = c.note;
        conds.append(std::move(jc));
    }
    d["conditions"] = std::move(conds);
    return d;
}

FunctionSpec spec_from_vdp(const VdpTable& t) {
    FunctionSpec s;
    s.cfg = PrimeConfig(t.cfg.p, t.n_cert);
    s.payload = VdpSpec{t.B};
    return s;
}

} // namespace

PYBIND11_MODULE(_padicdyn, m) {
    m.doc() = "criteria, brute-force dynamics and constructions for 1-Lipschitz maps on the p-adic integers";
#ifdef PADICDYN_VERSION
    m.attr("__version__") = PADICDYN_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ValueError);

    m.def("is_prime", &is_prime_u64, py::arg("n"));

    py::class_<FunctionSpec>(m, "FunctionSpec")
        .def_property_readonly("p", [](const FunctionSpec& s) { return s.cfg.p; })
        .def_property_readonly("precision", [](const FunctionSpec& s) { return s.cfg.precision; })
        .def_property_readonly("kind", &FunctionSpec::kind)
        .def("serialize", [](const FunctionSpec& s) { return serialize(s); })
        .def("__repr__", [](const FunctionSpec& s) {
            return "<FunctionSpec kind=" + s.kind() + " p=" + std::to_string(s.cfg.p) +
                   " precision=" + std::to_string(s.cfg.precision) + ">";
        });

    py::class_<ValueTable>(m, "ValueTable")
        .def_property_readonly("p", [](const ValueTable& t) { return t.cfg.p; })
        .def_property_readonly("n_cert", [](const ValueTable& t) { return t.n_cert; })
        .def("values", [](const ValueTable& t) { return t.v; })
        .def("__len__", [](const ValueTable& t) { return t.v.size(); })
        .def("__getitem__", [](const ValueTable& t, uint64_t m) { return t.at(m); })
        .def("digit", &ValueTable::digit, py::arg("m"), py::arg("i"));

    py::class_<VdpTable>(m, "VdpTable")
        .def_property_readonly("p", [](const VdpTable& t) { return t.cfg.p; })
        .def_property_readonly("n_cert", [](const VdpTable& t) { return t.n_cert; })
        .def("coefficients", [](const VdpTable& t) { return t.B; })
        .def("as_spec", &spec_from_vdp);

    py::class_<NormalizedVdp>(m, "NormalizedVdp")
        .def("coefficients", [](const NormalizedVdp& t) { return t.b; })
        .def("digit", &NormalizedVdp::digit, py::arg("m"), py::arg("i"));

    py::class_<MahlerTable>(m, "MahlerTable")
        .def_property_readonly("p", [](const MahlerTable& t) { return t.cfg.p; })
        .def_property_readonly("n_cert", [](const MahlerTable& t) { return t.n_cert; })
        .def("coefficients", [](const MahlerTable& t) { return t.a; });

    py::class_<LevelReport>(m, "LevelReport")
        .def_readonly("level", &LevelReport::level)
        .def_readonly("is_permutation", &LevelReport::is_permutation)
        .def_readonly("is_single_cycle", &LevelReport::is_single_cycle)
        .def_readonly("cycle_lengths", &LevelReport::cycle_lengths);

    py::class_<CycleReport>(m, "CycleReport")
        .def_readonly("checked_to", &CycleReport::checked_to)
        .def_readonly("levels", &CycleReport::levels)
        .def_property_readonly("first_failure",
                               [](const CycleReport& r) { return r.first_failure; })
        .def_property_readonly("first_perm_failure",
                               [](const CycleReport& r) { return r.first_perm_failure; })
        .def("permutation_through", &CycleReport::permutation_through, py::arg("n"))
        .def("transitive_through", &CycleReport::transitive_through, py::arg("n"));

    // documents
    m.def("parse_spec", &parse_spec, py::arg("document"));
    m.def("load_spec_file", &load_spec_file, py::arg("path"));
    m.def("serialize", [](const FunctionSpec& s) { return serialize(s); }, py::arg("spec"));

    // tables
    m.def(
        "compile_table",
        [](const FunctionSpec& spec, uint32_t n, uint64_t budget) {
            Limits limits;
            if (budget) limits.max_table_entries = budget;
            return compile(spec, n ? n : spec.cfg.precision, limits);
        },
        py::arg("spec"), py::arg("precision") = 0, py::arg("budget") = 0);
    m.def("vdp_table", [](uint64_t p, uint32_t precision, std::vector<uint64_t> B) {
        return make_vdp_table(PrimeConfig(p, precision), precision, std::move(B));
    });
    m.def("mahler_table", [](uint64_t p, uint32_t precision, std::vector<uint64_t> a) {
        return make_mahler_table(PrimeConfig(p, precision), precision, std::move(a));
    });
    m.def("value_table", [](uint64_t p, uint32_t precision, std::vector<uint64_t> v) {
        return make_value_table(PrimeConfig(p, precision), precision, std::move(v));
    });
    m.def("check_lipschitz", [](const ValueTable& t) {
        LipschitzCheck c = check_lipschitz_table(t);
        py::dict d;
        d["ok"] = c.ok;
        if (c.witness) d["witness"] = py::make_tuple(c.witness->x, c.witness->y, c.witness->level);
        return d;
    });
    m.def("vdp_extract", &vdp_extract);
    m.def("vdp_compile", &vdp_compile);
    m.def("mahler_extract", &mahler_extract);
    m.def("mahler_compile", &mahler_compile, py::arg("table"), py::arg("require_admissible") = true);
    m.def("normalize", &normalize);
    m.def("vdp_admissible", &vdp_admissible);
    m.def("mahler_admissible", &mahler_admissible);

    // criteria
    m.def("mahler_lipschitz", [](const MahlerTable& t) { return verdict_dict(mahler_lipschitz(t)); });
    m.def("mahler_mp_sufficient", [](const MahlerTable& t) { return verdict_dict(mahler_mp_sufficient(t)); });
    m.def("mahler_ergodic_sufficient",
          [](const MahlerTable& t) { return verdict_dict(mahler_ergodic_sufficient_p(t)); });
    m.def("mahler_ergodic_exact_2", [](const MahlerTable& t) { return verdict_dict(mahler_ergodic_exact_2(t)); });
    m.def("vdp_lipschitz", [](const VdpTable& t) { return verdict_dict(vdp_lipschitz(t)); });
    m.def("vdp_mp_sufficient", [](const VdpTable& t) { return verdict_dict(vdp_mp_sufficient_p(t)); });
    m.def("vdp_mp_necessary", [](const VdpTable& t) { return verdict_dict(vdp_mp_necessary(t)); });
    m.def("vdp_mp_exact_2", [](const NormalizedVdp& t) { return verdict_dict(vdp_mp_exact_2(t)); });
    m.def("vdp_ergodic_exact_2", [](const NormalizedVdp& t) { return verdict_dict(vdp_ergodic_exact_2(t)); });
    m.def("vdp_ergodic_sufficient", [](const VdpTable& t) { return verdict_dict(vdp_ergodic_sufficient_p(t)); });
    m.def("poly_ergodic_z2",
          [](const py::sequence& coeffs) { return verdict_dict(poly_ergodic_z2(to_bigints(coeffs))); });
    m.def("digit_stats", [](const ValueTable& t) {
        DigitStats s = digit_stats(t);
        py::dict d;
        d["S"] = s.S;
        d["T"] = s.T;
        return d;
    });
    m.def("block_sum_identity_check",
          [](const ValueTable& t) { return verdict_dict(block_sum_identity_check(t)); });
    m.def("mp_block_sum_congruence_check",
          [](const ValueTable& t) { return verdict_dict(mp_block_sum_congruence_check(t)); });
    m.def("equivalence_chain_check",
          [](const ValueTable& t) { return verdict_dict(equivalence_chain_check(t)); });

    // oracle
    m.def("permutation_check", &permutation_check, py::arg("table"), py::arg("level"));
    m.def("cycle_structure", &cycle_structure, py::arg("table"), py::arg("level"));
    m.def("transitivity_ladder", &transitivity_ladder, py::arg("table"), py::arg("max_level") = 0,
          py::arg("assume_monotone") = true);
    m.def("measure_preserving", &oracle_measure_preserving, py::arg("table"), py::arg("max_level") = 0);
    m.def("sn_ladder_step", &sn_ladder_step, py::arg("table"), py::arg("level"));

    // constructions
    m.def("delta_vdp", &delta_vdp);
    m.def("anti_delta", &anti_delta, py::arg("table"), py::arg("b0") = 0);
    m.def("anti_delta_hypotheses",
          [](const VdpTable& t) { return verdict_dict(anti_delta_hypotheses(t)); });
    m.def("decompose_ergodic_form_2", &decompose_ergodic_form_2);
    m.def(
        "make_ergodic",
        [](uint64_t p, uint32_t precision, const py::object& d, const py::object& eps, const FunctionSpec& g) {
            return make_ergodic(PrimeConfig(p, precision), to_bigint(d), to_bigint(eps), g);
        },
        py::arg("p"), py::arg("precision"), py::arg("d"), py::arg("epsilon"), py::arg("g"));
    m.def(
        "make_mp",
        [](uint64_t p, uint32_t precision, const py::object& d, const FunctionSpec& g) {
            return make_mp(PrimeConfig(p, precision), to_bigint(d), g);
        },
        py::arg("p"), py::arg("precision"), py::arg("d"), py::arg("g"));
    m.def(
        "random_admissible",
        [](uint64_t seed, uint64_t p, uint32_t precision, const std::string& profile) {
            return random_admissible({seed, PrimeConfig(p, precision), profile_from_string(profile)});
        },
        py::arg("seed"), py::arg("p"), py::arg("precision"), py::arg("profile") = "lipschitz");
    m.def(
        "random_mahler",
        [](uint64_t seed, uint64_t p, uint32_t precision, const std::string& profile, uint64_t max_support) {
            MahlerProfile mp;
            if (profile == "lipschitz")
                mp = MahlerProfile::lipschitz;
            else if (profile == "mp_sufficient")
                mp = MahlerProfile::mp_sufficient;
            else if (profile == "ergodic_sufficient")
                mp = MahlerProfile::ergodic_sufficient;
            else if (profile == "ergodic_exact2")
                mp = MahlerProfile::ergodic_exact2;
            else
                throw parse_error("unknown mahler profile '" + profile + "'");
            return random_mahler(seed, PrimeConfig(p, precision), mp, max_support);
        },
        py::arg("seed"), py::arg("p"), py::arg("precision"), py::arg("profile") = "lipschitz",
        py::arg("max_support") = 0);

    // reports and streaming
    m.def(
        "check_report",
        [](const FunctionSpec& spec, uint32_t precision, uint32_t max_level) {
            Report rep = run_checks(spec, precision ? precision : spec.cfg.precision, max_level);
            return report_to_json(spec, rep);
        },
        py::arg("spec"), py::arg("precision") = 0, py::arg("max_level") = 0);
    m.def(
        "stream_bytes",
        [](const ValueTable& t, uint64_t count, uint64_t state) {
            std::vector<uint8_t> b = stream_bytes(t, count, state);
            return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
        },
        py::arg("table"), py::arg("count"), py::arg("state") = 0);
    m.def("stream_period", &stream_period, py::arg("table"), py::arg("state") = 0);
}
