#include "digitfn/cli_app.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "digitfn/analysis.hpp"
#include "digitfn/config_json.hpp"
#include "digitfn/error.hpp"
#include "digitfn/maps.hpp"
#include "digitfn/numbers.hpp"
#include "digitfn/salem.hpp"

namespace digitfn::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

int rank_guard() {
    if (const char* env = std::getenv("DIGITFN_MAX_RANK")) {
        try {
            const int value = std::stoi(env);
            if (value >= 1) return value;
        } catch (const std::exception&) {
        }
        throw ValidationError("DIGITFN_MAX_RANK must be a positive integer");
    }
    return 12;
}

struct CommonFlags {
    std::string format = "json";
    std::uint64_t seed = 1;
};

void emit(const ordered_json& payload, const CommonFlags& flags, std::ostream& out) {
    if (flags.format == "csv") {
        if (payload.contains("counts")) {
            out << "m,N,logN\n";
            for (const auto& row : payload["counts"]) {
                const double n = std::stod(row[1].get<std::string>());
                out << row[0].get<int>() << "," << row[1].get<std::string>() << ","
                    << std::log(n) << "\n";
            }
            return;
        }
        for (const auto& [key, value] : payload.items()) {
            out << key << "," << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
        }
        return;
    }
    out << payload.dump() << "\n";
}

std::string verdict_name(ProbeVerdict verdict) {
    switch (verdict) {
        case ProbeVerdict::OscillatingDivergent: return "oscillating-divergent";
        case ProbeVerdict::SignAlternating: return "sign-alternating";
        case ProbeVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ordered_json counts_json(const DimensionEstimate& estimate) {
    ordered_json rows = ordered_json::array();
    for (const auto& [rank, count] : estimate.counts) {
        rows.push_back(ordered_json::array({rank, count.str()}));
    }
    return rows;
}

struct MapChoice {
    std::string name;
    std::string map_file;
    int s = 3;

    bool is_bush() const { return name == "bush" || name == "wunderlich"; }

    DigitMap resolve() const {
        if (!map_file.empty()) {
            return DigitMap(LambdaSFunction::block(load_block_permutation(map_file)));
        }
        if (name.empty()) throw ValidationError("no map given (use --map or --map-file)");
        return builtin_map(name, s);
    }
};

NumberSystem context_system(const std::string& tag, const std::string& base_file,
                            const std::string& qmatrix_file) {
    if (tag == "D" || tag == "-D") {
        if (base_file.empty()) throw ValidationError("system '" + tag + "' needs --base");
        const CantorBase base = load_cantor_base(base_file);
        return tag == "D" ? NumberSystem::cantor(base) : NumberSystem::alternating_cantor(base);
    }
    if (tag == "-Q") {
        if (qmatrix_file.empty()) throw ValidationError("system '-Q' needs --qmatrix");
        return NumberSystem::nega_q(load_q_matrix(qmatrix_file));
    }
    try {
        const int s = std::stoi(tag);
        return s < 0 ? NumberSystem::nega_s_adic(-s) : NumberSystem::s_adic(s);
    } catch (const std::exception&) {
        throw ValidationError("unknown system tag '" + tag + "'");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact evaluation of digit-defined functions"};
    app.require_subcommand(1);

    CommonFlags common;
    app.add_option("--format", common.format, "output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", common.seed, "seed for sampled checks")->capture_default_str();

    // convert
    auto* convert = app.add_subcommand("convert", "convert between rationals and digit strings");
    std::string conv_x, conv_digits, conv_system, conv_base, conv_qmatrix;
    convert->add_option("--x", conv_x, "rational to expand (p/q)");
    convert->add_option("--digits", conv_digits, "digit string to resum");
    convert->add_option("--system", conv_system, "system tag: s, -s, D, -D, -Q");
    convert->add_option("--base", conv_base, "Cantor base config (JSON)");
    convert->add_option("--qmatrix", conv_qmatrix, "nega-Q matrix config (JSON)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a map at a point");
    MapChoice eval_map;
    std::string eval_x, eval_q0, eval_matrix, eval_base, eval_qmatrix;
    bool eval_alternating = false;
    std::size_t eval_depth = 40;
    eval_cmd->add_option("--map", eval_map.name, "built-in map name");
    eval_cmd->add_option("--map-file", eval_map.map_file, "block map config (JSON)");
    eval_cmd->add_option("--s", eval_map.s, "radix for fplus/fplusinv/bush")->capture_default_str();
    eval_cmd->add_option("--x", eval_x, "argument (p/q)")->required();
    eval_cmd->add_option("--q0", eval_q0, "binary digit weight for the singular function");
    eval_cmd->add_option("--matrix", eval_matrix, "weight matrix config (JSON)");
    eval_cmd->add_option("--base", eval_base, "Cantor base config (JSON)");
    eval_cmd->add_option("--qmatrix", eval_qmatrix, "nega-Q matrix config (JSON)");
    eval_cmd->add_flag("--alternating", eval_alternating, "use the alternating-Cantor evaluator");
    eval_cmd->add_option("--depth", eval_depth, "expansion depth for non-periodic nega-Q points")
        ->capture_default_str();

    // integral
    auto* integral_cmd = app.add_subcommand("integral", "exact integral over the map's domain");
    MapChoice integral_map;
    integral_cmd->add_option("--map", integral_map.name, "built-in map name");
    integral_cmd->add_option("--map-file", integral_map.map_file, "block map config (JSON)");
    integral_cmd->add_option("--s", integral_map.s, "radix for fplus/fplusinv")->capture_default_str();

    // jumps
    auto* jumps_cmd = app.add_subcommand("jumps", "one-sided limits at an s-adic rational");
    MapChoice jumps_map;
    std::string jumps_x0;
    jumps_cmd->add_option("--map", jumps_map.name, "built-in map name");
    jumps_cmd->add_option("--map-file", jumps_map.map_file, "block map config (JSON)");
    jumps_cmd->add_option("--s", jumps_map.s, "radix for fplus")->capture_default_str();
    jumps_cmd->add_option("--x0", jumps_x0, "point (p/q)")->required();

    // dim graph|level|invariant
    auto* dim_cmd = app.add_subcommand("dim", "cylinder-count dimension estimates");
    dim_cmd->require_subcommand(1);
    auto* dim_graph = dim_cmd->add_subcommand("graph", "graph box counts");
    auto* dim_level = dim_cmd->add_subcommand("level", "level set counts");
    auto* dim_invariant = dim_cmd->add_subcommand("invariant", "invariant set counts");
    MapChoice dim_map;
    std::string dim_y0;
    int dim_max_rank = 10;
    for (CLI::App* sub : {dim_graph, dim_level, dim_invariant}) {
        sub->add_option("--map", dim_map.name, "built-in map name");
        sub->add_option("--map-file", dim_map.map_file, "block map config (JSON)");
        sub->add_option("--s", dim_map.s, "radix for fplus/fplusinv")->capture_default_str();
        sub->add_option("--max-rank", dim_max_rank, "largest rank to count")->capture_default_str();
    }
    dim_level->add_option("--y0", dim_y0, "level (p/q)")->required();

    // group
    auto* group_cmd = app.add_subcommand("group", "enumerate the block-map group");
    int group_s = 2, group_k = 1;
    group_cmd->add_option("--s", group_s, "radix")->required();
    group_cmd->add_option("--k", group_k, "block length")->required();

    // probe
    auto* probe_cmd = app.add_subcommand("probe", "difference-quotient probe at a point");
    MapChoice probe_map;
    std::string probe_x, probe_matrix, probe_base;
    bool probe_alternating = false;
    std::size_t probe_depth = 40;
    probe_cmd->add_option("--map", probe_map.name, "built-in map name");
    probe_cmd->add_option("--map-file", probe_map.map_file, "block map config (JSON)");
    probe_cmd->add_option("--s", probe_map.s, "radix for fplus/fplusinv")->capture_default_str();
    probe_cmd->add_option("--x", probe_x, "point (p/q)")->required();
    probe_cmd->add_option("--depth", probe_depth, "digit scales to probe")->capture_default_str();
    probe_cmd->add_option("--matrix", probe_matrix, "weight matrix config (JSON)");
    probe_cmd->add_option("--base", probe_base, "Cantor base config (JSON)");
    probe_cmd->add_flag("--alternating", probe_alternating, "probe the alternating-Cantor evaluator");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the exact identity suite");
    std::size_t verify_samples = 1000;
    verify_cmd->add_option("--samples", verify_samples, "sample count")->capture_default_str();

    // global flags may appear after the subcommand as well
    for (CLI::App* sub : {convert, eval_cmd, integral_cmd, jumps_cmd, dim_cmd, dim_graph,
                          dim_level, dim_invariant, group_cmd, probe_cmd, verify_cmd}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        ordered_json payload;
        if (convert->parsed()) {
            std::optional<NumberSystem> context;
            if (!conv_system.empty()) context = context_system(conv_system, conv_base, conv_qmatrix);
            Rational x;
            if (!conv_x.empty()) {
                if (!context.has_value()) throw ValidationError("--x needs --system");
                x = parse_rational(conv_x);
            } else if (!conv_digits.empty()) {
                x = from_digits(DigitString::parse(conv_digits, context));
                if (!context.has_value()) {
                    context = DigitString::parse(conv_digits, context).system();
                }
            } else {
                throw ValidationError("convert needs --x or --digits");
            }
            payload["x"] = format_rational(x);
            payload["digits"] = to_digits(x, *context).to_string();
        } else if (eval_cmd->parsed()) {
            const Rational x = parse_rational(eval_x);
            Rational y;
            if (!eval_q0.empty()) {
                y = salem_eval(SalemParams(parse_rational(eval_q0)), x);
            } else if (!eval_matrix.empty()) {
                const PMatrix weights = load_p_matrix(eval_matrix);
                if (!eval_qmatrix.empty()) {
                    const QMatrix matrix = load_q_matrix(eval_qmatrix);
                    // look a bounded distance past --depth for a periodic closure
                    const NegaQExpansion expansion =
                        nega_q_digits(x, matrix, std::clamp<std::size_t>(eval_depth * 4, 512, 4096));
                    if (!expansion.exact) {
                        // no periodic closure within --depth: report the bracket
                        const Interval bracket = eval_F_negaq_bounds(weights, matrix, x, eval_depth);
                        payload["y_low"] = format_rational(bracket.lo);
                        payload["y_high"] = format_rational(bracket.hi);
                        payload["depth"] = eval_depth;
                        emit(payload, common, out);
                        return 0;
                    }
                    y = eval_F_negaq_digits(weights, *expansion.digits);
                } else if (!eval_base.empty()) {
                    const CantorBase base = load_cantor_base(eval_base);
                    y = eval_alternating ? eval_F_tilde(weights, base, x)
                                         : eval_F_cantor(weights, base, x);
                } else {
                    throw ValidationError("--matrix needs --base or --qmatrix");
                }
            } else if (eval_map.is_bush()) {
                const int s = eval_map.name == "wunderlich" ? 3 : eval_map.s;
                y = bush_wunderlich(s, x);
            } else {
                y = eval(eval_map.resolve(), x);
            }
            payload["y"] = format_rational(y);
        } else if (integral_cmd->parsed()) {
            if (integral_map.is_bush()) throw ValidationError("integral supports digit maps only");
            payload["integral"] = format_rational(exact_integral(integral_map.resolve()));
        } else if (jumps_cmd->parsed()) {
            if (jumps_map.is_bush()) throw ValidationError("jumps supports digit maps only");
            const JumpReport report = one_sided_limits(jumps_map.resolve(), parse_rational(jumps_x0));
            payload["point"] = format_rational(report.point);
            payload["left"] = format_rational(report.left_limit);
            payload["right"] = format_rational(report.right_limit);
            payload["value"] = format_rational(report.value);
            payload["jump"] = format_rational(report.jump);
        } else if (dim_cmd->parsed()) {
            if (dim_map.is_bush()) throw ValidationError("dim supports digit maps only");
            const int guard = rank_guard();
            DimensionEstimate estimate;
            if (dim_graph->parsed()) {
                estimate = graph_box_count(dim_map.resolve(), dim_max_rank, guard);
            } else if (dim_level->parsed()) {
                const DigitMap map = dim_map.resolve();
                const TableMap* table = std::get_if<TableMap>(&map);
                if (table == nullptr) throw ValidationError("level sets need a digit table map");
                estimate = level_set_count(*table, parse_rational(dim_y0), dim_max_rank, guard);
            } else {
                const DigitMap map = dim_map.resolve();
                const LambdaSFunction* chain = std::get_if<LambdaSFunction>(&map);
                if (chain == nullptr) {
                    throw ValidationError("invariant counting needs a block map or sign map");
                }
                estimate = invariant_prefix_count(*chain, dim_max_rank, guard);
            }
            if (estimate.empty_set) {
                payload["empty"] = true;
            } else {
                payload["counts"] = counts_json(estimate);
                payload["slope"] = estimate.slope;
                if (!estimate.exact_law.empty()) payload["law"] = estimate.exact_law;
            }
        } else if (group_cmd->parsed()) {
            const GroupReport report = group_enumerate(group_s, group_k);
            payload["order"] = report.order;
            payload["closure_ok"] = report.closure_ok;
        } else if (probe_cmd->parsed()) {
            const Rational x = parse_rational(probe_x);
            QuotientProbe probe;
            if (!probe_matrix.empty()) {
                if (probe_base.empty()) throw ValidationError("--matrix needs --base");
                const PMatrix weights = load_p_matrix(probe_matrix);
                const CantorBase base = load_cantor_base(probe_base);
                if (probe_alternating) {
                    probe = derivative_probe_string(
                        [&weights](const DigitString& d) { return eval_F_tilde_digits(weights, d); },
                        NumberSystem::alternating_cantor(base), x, probe_depth);
                } else {
                    probe = derivative_probe_string(
                        [&weights](const DigitString& d) { return eval_F_cantor_digits(weights, d); },
                        NumberSystem::cantor(base), x, probe_depth);
                }
            } else {
                if (probe_map.is_bush()) throw ValidationError("probe supports digit maps only");
                probe = derivative_probe(probe_map.resolve(), x, probe_depth);
            }
            payload["point"] = format_rational(probe.point);
            payload["depth"] = probe.depth;
            payload["verdict"] = verdict_name(probe.verdict);
            payload["positive"] = probe.positive_count;
            payload["negative"] = probe.negative_count;
            payload["sign_flips"] = probe.sign_flips;
            ordered_json quotients = ordered_json::array();
            for (const Rational& q : probe.quotients) quotients.push_back(format_rational(q));
            payload["quotients"] = std::move(quotients);
        } else if (verify_cmd->parsed()) {
            const IdentityReport report = identity_suite(verify_samples, common.seed);
            payload["samples"] = report.samples;
            ordered_json items = ordered_json::array();
            for (const IdentityReport::Item& item : report.items) {
                items.push_back(ordered_json{{"name", item.name},
                                             {"checked", item.checked},
                                             {"failures", item.failures}});
            }
            payload["identities"] = std::move(items);
            payload["all_ok"] = report.all_ok;
            emit(payload, common, out);
            return report.all_ok ? 0 : 1;
        }
        emit(payload, common, out);
        return 0;
    } catch (const GuardError& e) {
        err << "error: guard: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: domain: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: invalid: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace digitfn::cli
