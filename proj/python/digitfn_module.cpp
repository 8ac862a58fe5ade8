#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "digitfn/analysis.hpp"
#include "digitfn/config_json.hpp"
#include "digitfn/error.hpp"
#include "digitfn/maps.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/salem.hpp"

namespace py = pybind11;

namespace {

using namespace digitfn;

// Rationals cross the boundary as "p/q" strings so no precision is lost;
// Python's fractions.Fraction parses them directly.
Rational rat(const std::string& text) { return parse_rational(text); }
std::string str(const Rational& value) { return format_rational(value); }

NumberSystem system_from(const std::string& tag, const std::string& base_json,
                         const std::string& qmatrix_json) {
    if (tag == "D" || tag == "-D") {
        if (base_json.empty()) throw ValidationError("system '" + tag + "' needs base_json");
        const CantorBase base = parse_cantor_base(base_json);
        return tag == "D" ? NumberSystem::cantor(base) : NumberSystem::alternating_cantor(base);
    }
    if (tag == "-Q") {
        if (qmatrix_json.empty()) throw ValidationError("system '-Q' needs qmatrix_json");
        return NumberSystem::nega_q(parse_q_matrix(qmatrix_json));
    }
    const int s = std::stoi(tag);
    return s < 0 ? NumberSystem::nega_s_adic(-s) : NumberSystem::s_adic(s);
}

DigitMap named_map(const std::string& name_or_json, int s) {
    if (!name_or_json.empty() && name_or_json.front() == '{') {
        return DigitMap(LambdaSFunction::block(parse_block_permutation(name_or_json)));
    }
    return builtin_map(name_or_json, s);
}

py::dict probe_dict(const QuotientProbe& probe) {
    py::dict out;
    out["point"] = str(probe.point);
    out["depth"] = probe.depth;
    switch (probe.verdict) {
        case ProbeVerdict::OscillatingDivergent: out["verdict"] = "oscillating-divergent"; break;
        case ProbeVerdict::SignAlternating: out["verdict"] = "sign-alternating"; break;
        case ProbeVerdict::Inconclusive: out["verdict"] = "inconclusive"; break;
    }
    out["positive"] = probe.positive_count;
    out["negative"] = probe.negative_count;
    out["sign_flips"] = probe.sign_flips;
    py::list quotients;
    for (const Rational& q : probe.quotients) quotients.append(str(q));
    out["quotients"] = quotients;
    return out;
}

py::dict dim_dict(const DimensionEstimate& estimate) {
    py::dict out;
    out["empty"] = estimate.empty_set;
    py::list counts;
    for (const auto& [rank, count] : estimate.counts) {
        counts.append(py::make_tuple(rank, count.str()));
    }
    out["counts"] = counts;
    out["slope"] = estimate.slope;
    if (!estimate.exact_law.empty()) out["law"] = estimate.exact_law;
    return out;
}

}  // namespace

PYBIND11_MODULE(digitfn, m) {
    m.doc() = "exact arithmetic for digit-defined functions";

    py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def(
        "to_digits",
        [](const std::string& x, const std::string& system, const std::string& base_json,
           const std::string& qmatrix_json) {
            return to_digits(rat(x), system_from(system, base_json, qmatrix_json)).to_string();
        },
        py::arg("x"), py::arg("system"), py::arg("base_json") = "", py::arg("qmatrix_json") = "",
        "Canonical digit expansion of a rational, e.g. to_digits('1/3', '3') -> 'Δ3:1()'");

    m.def(
        "from_digits",
        [](const std::string& digits, const std::string& system, const std::string& base_json,
           const std::string& qmatrix_json) {
            std::optional<NumberSystem> context;
            if (!system.empty()) context = system_from(system, base_json, qmatrix_json);
            return str(from_digits(DigitString::parse(digits, context)));
        },
        py::arg("digits"), py::arg("system") = "", py::arg("base_json") = "",
        py::arg("qmatrix_json") = "", "Exact value of a digit string");

    m.def(
        "canonicalize",
        [](const std::string& digits, const std::string& system, const std::string& base_json,
           const std::string& qmatrix_json) {
            std::optional<NumberSystem> context;
            if (!system.empty()) context = system_from(system, base_json, qmatrix_json);
            return canonicalize(DigitString::parse(digits, context)).to_string();
        },
        py::arg("digits"), py::arg("system") = "", py::arg("base_json") = "",
        py::arg("qmatrix_json") = "");

    m.def(
        "cylinder",
        [](const std::vector<int>& prefix, const std::string& system, const std::string& base_json,
           const std::string& qmatrix_json) {
            const Interval interval =
                cylinder(prefix, system_from(system, base_json, qmatrix_json));
            return py::make_tuple(str(interval.lo), str(interval.hi));
        },
        py::arg("prefix"), py::arg("system"), py::arg("base_json") = "",
        py::arg("qmatrix_json") = "");

    m.def(
        "cantor_dual",
        [](const std::string& digits, const std::string& system, const std::string& base_json) {
            return cantor_dual(DigitString::parse(digits, system_from(system, base_json, "")))
                .to_string();
        },
        py::arg("digits"), py::arg("system"), py::arg("base_json"));

    m.def(
        "eval_map",
        [](const std::string& map, const std::string& x, int s) {
            return str(eval(named_map(map, s), rat(x)));
        },
        py::arg("map"), py::arg("x"), py::arg("s") = 3,
        "Evaluate a built-in map (or a JSON block-map definition) at x");

    m.def(
        "integral", [](const std::string& map, int s) { return str(exact_integral(named_map(map, s))); },
        py::arg("map"), py::arg("s") = 3);

    m.def(
        "jumps",
        [](const std::string& map, const std::string& x0, int s) {
            const JumpReport report = one_sided_limits(named_map(map, s), rat(x0));
            py::dict out;
            out["point"] = str(report.point);
            out["left"] = str(report.left_limit);
            out["right"] = str(report.right_limit);
            out["value"] = str(report.value);
            out["jump"] = str(report.jump);
            return out;
        },
        py::arg("map"), py::arg("x0"), py::arg("s") = 3);

    m.def(
        "graph_box_counts",
        [](const std::string& map, int max_rank, int s) {
            return dim_dict(graph_box_count(named_map(map, s), max_rank));
        },
        py::arg("map"), py::arg("max_rank"), py::arg("s") = 3);

    m.def(
        "level_set_counts",
        [](const std::string& map, const std::string& y0, int max_rank, int s) {
            const DigitMap resolved = named_map(map, s);
            const TableMap* table = std::get_if<TableMap>(&resolved);
            if (table == nullptr) throw ValidationError("level sets need a digit table map");
            return dim_dict(level_set_count(*table, rat(y0), max_rank));
        },
        py::arg("map"), py::arg("y0"), py::arg("max_rank"), py::arg("s") = 3);

    m.def(
        "invariant_counts",
        [](const std::string& map, int max_rank, int s) {
            const DigitMap resolved = named_map(map, s);
            const LambdaSFunction* chain = std::get_if<LambdaSFunction>(&resolved);
            if (chain == nullptr) throw ValidationError("invariant counting needs a block or sign map");
            return dim_dict(invariant_prefix_count(*chain, max_rank));
        },
        py::arg("map"), py::arg("max_rank"), py::arg("s") = 3);

    m.def(
        "group",
        [](int s, int k) {
            const GroupReport report = group_enumerate(s, k);
            return py::make_tuple(report.order, report.closure_ok);
        },
        py::arg("s"), py::arg("k"));

    m.def(
        "probe",
        [](const std::string& map, const std::string& x, std::size_t depth, int s) {
            return probe_dict(derivative_probe(named_map(map, s), rat(x), depth));
        },
        py::arg("map"), py::arg("x"), py::arg("depth") = 40, py::arg("s") = 3);

    m.def(
        "salem",
        [](const std::string& q0, const std::string& x) {
            return str(salem_eval(SalemParams(rat(q0)), rat(x)));
        },
        py::arg("q0"), py::arg("x"));

    m.def(
        "f_cantor",
        [](const std::string& p_json, const std::string& base_json, const std::string& x) {
            return str(eval_F_cantor(parse_p_matrix(p_json), parse_cantor_base(base_json), rat(x)));
        },
        py::arg("p_json"), py::arg("base_json"), py::arg("x"));

    m.def(
        "f_tilde",
        [](const std::string& p_json, const std::string& base_json, const std::string& x) {
            return str(eval_F_tilde(parse_p_matrix(p_json), parse_cantor_base(base_json), rat(x)));
        },
        py::arg("p_json"), py::arg("base_json"), py::arg("x"));

    m.def(
        "f_negaq",
        [](const std::string& p_json, const std::string& q_json, const std::string& x) {
            return str(eval_F_negaq(parse_p_matrix(p_json), parse_q_matrix(q_json), rat(x)));
        },
        py::arg("p_json"), py::arg("q_json"), py::arg("x"));

    m.def(
        "bush",
        [](const std::string& x, int s) { return str(bush_wunderlich(s, rat(x))); },
        py::arg("x"), py::arg("s") = 3);

    m.def(
        "identity_check",
        [](std::size_t samples, std::uint64_t seed) {
            const IdentityReport report = identity_suite(samples, seed);
            py::dict out;
            out["samples"] = report.samples;
            out["all_ok"] = report.all_ok;
            py::list items;
            for (const IdentityReport::Item& item : report.items) {
                py::dict entry;
                entry["name"] = item.name;
                entry["checked"] = item.checked;
                entry["failures"] = item.failures;
                items.append(entry);
            }
            out["identities"] = items;
            return out;
        },
        py::arg("samples") = 1000, py::arg("seed") = 1);

    m.def(
        "check_conditions",
        [](const std::string& p_json, const std::string& base_json, std::size_t depth) {
            const ConditionReport report =
                check_conditions(parse_p_matrix(p_json), parse_cantor_base(base_json), depth);
            py::dict out;
            out["sign_condition_ok"] = report.sign_condition_ok;
            const auto verdict = [](ProductVerdict v) {
                switch (v) {
                    case ProductVerdict::NonzeroLimitPlausible: return "nonzero-limit-plausible";
                    case ProductVerdict::TendsToZero: return "tends-to-zero";
                    case ProductVerdict::Inconclusive: return "inconclusive";
                }
                return "inconclusive";
            };
            out["verdict_low"] = verdict(report.verdict_low);
            out["verdict_high"] = verdict(report.verdict_high);
            py::list low, high;
            for (const Rational& v : report.products_low) low.append(str(v));
            for (const Rational& v : report.products_high) high.append(str(v));
            out["products_low"] = low;
            out["products_high"] = high;
            return out;
        },
        py::arg("p_json"), py::arg("base_json"), py::arg("depth") = 40);

    m.def(
        "cylinder_ratio",
        [](const std::string& p_json, const std::string& base_json, const std::vector<int>& prefix) {
            return str(cylinder_ratio(parse_p_matrix(p_json), parse_cantor_base(base_json), prefix));
        },
        py::arg("p_json"), py::arg("base_json"), py::arg("prefix"));
}
