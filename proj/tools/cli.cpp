#include "cli.hpp"

#include "report.hpp"

#include "equistab/assess.hpp"
#include "equistab/model.hpp"
#include "equistab/pattern.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <map>
#include <ostream>
#include <string>

namespace equistab::cli {
namespace {

namespace fs = std::filesystem;

struct Args {
    std::string scenario;
    std::string pattern;
    std::string mode = "angle-cuts";
    double threshold = std::numbers::pi;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double tol = 1e-3;
    std::string out = "out";
    unsigned parallel = 1;
};

AssessOptions assess_options(const Args& args, const Scenario& scenario) {
    AssessOptions o;
    o.mode = args.mode == "exhaustive" ? PatternMode::Exhaustive : PatternMode::AngleCuts;
    o.threads = args.parallel;
    o.fierceness_threshold = args.threshold;
    if (!args.pattern.empty()) {
        std::vector<MachineId> ids;
        for (const MachineParams& m : scenario.machines) {
            ids.push_back(m.id);
        }
        o.pattern = GroupPattern::from_critical(parse_id_list(args.pattern), ids);
    }
    return o;
}

fs::path prepare_out(const Args& args) {
    fs::path dir(args.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir;
}

int analyze(const Args& args, std::ostream& out) {
    const Scenario scenario = load_scenario(args.scenario);
    const Assessment a = assess(scenario, assess_options(args, scenario));
    const fs::path dir = prepare_out(args);

    write_trajectory_syn(dir / "trajectory_syn.csv", a);
    write_trajectory_coi_sys(dir / "trajectory_coi_sys.csv", a);
    for (const PatternResult& r : a.patterns) {
        const EquivalentSeries eq = aggregate(a.traj, a.power, r.pattern, a.machine_sys);
        write_equivalent(dir / ("equivalent_" + file_label(r.pattern) + ".csv"), eq);
    }
    write_kimbark(dir / "kimbark.csv", a);
    write_events(dir / "events.csv", a);
    write_json(dir / "margin_report.json", margin_report(a));
    write_json(dir / "mirror_report.json", mirror_report(a));
    write_json(dir / "innergroup_report.json", innergroup_report(a));

    const PatternResult& dom = a.dominant_result();
    out << "original (unity principle): " << to_string(a.unity.verdict) << "  severity ["
        << fmt(a.unity.severity_lo) << ", " << fmt(a.unity.severity_hi) << "]\n";
    out << "equivalent (dominant " << dom.pattern.label() << "): " << to_string(dom.margin.verdict)
        << "  eta_sys " << fmt(dom.margin.eta) << '\n';
    out << "inner-group motion: CR " << to_string(a.fierceness.cr) << ", NCR " << to_string(a.fierceness.ncr)
        << (a.fierceness.severity_trusted ? "" : "  (equivalent severity not trusted)") << '\n';
    out << "reports written to " << dir.string() << '\n';
    return Ok;
}

int patterns(const Args& args, std::ostream& out) {
    const Scenario scenario = load_scenario(args.scenario);
    const Assessment a = assess(scenario, assess_options(args, scenario));
    for (std::size_t i = 0; i < a.patterns.size(); ++i) {
        const PatternResult& r = a.patterns[i];
        out << (i == a.dominant ? "* " : "  ") << r.pattern.label() << "  " << to_string(r.margin.verdict)
            << "  eta " << fmt(r.margin.eta) << '\n';
    }
    if (!args.out.empty()) {
        write_json(prepare_out(args) / "patterns_report.json", patterns_report(a));
    }
    return Ok;
}

int mirror(const Args& args, std::ostream& out) {
    const Scenario scenario = load_scenario(args.scenario);
    const Assessment a = assess(scenario, assess_options(args, scenario));
    const nlohmann::json doc = mirror_report(a);
    out << doc.dump(2) << '\n';
    if (!args.out.empty()) {
        write_json(prepare_out(args) / "mirror_report.json", doc);
    }
    return Ok;
}

int cct(const Args& args, std::ostream& out) {
    const Scenario scenario = load_scenario(args.scenario);
    CctOptions options;
    options.mode = args.mode == "exhaustive" ? PatternMode::Exhaustive : PatternMode::AngleCuts;
    options.threads = args.parallel;
    const CctResult r = find_cct(scenario, args.t_lo, args.t_hi, args.tol, options);
    const fs::path dir = prepare_out(args);
    write_json(dir / "cct_report.json", cct_report(r, args.tol));

    // Kimbark data of the last stable probe, the case closest to critical.
    Scenario critical = scenario;
    critical.t_clear = r.t_lo;
    AssessOptions ao;
    ao.mode = options.mode;
    ao.threads = options.threads;
    write_kimbark(dir / "kimbark_critical.csv", assess(critical, ao));

    out << "cct " << fmt(r.cct) << " s  bracket [" << fmt(r.t_lo) << ", " << fmt(r.t_hi) << "]  probes "
        << r.history.size() << '\n';
    return Ok;
}

}  // namespace

int exit_code_for(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Parse: return ParseFailure;
        case ErrorCategory::Validation: return ValidationFailure;
        case ErrorCategory::Numeric: return NumericFailure;
        case ErrorCategory::Bracket: return BracketFailure;
    }
    return Internal;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Args args;
    CLI::App app{"Transient stability analysis of multi-machine swing trajectories"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", args.scenario, "Scenario JSON file")->required();
        sub->add_option("--mode", args.mode, "Pattern enumeration")
            ->check(CLI::IsMember({"angle-cuts", "exhaustive"}));
        sub->add_option("--out", args.out, "Output directory");
        sub->add_option("--parallel", args.parallel, "Worker threads for the pattern sweep")
            ->check(CLI::Range(1u, 256u));
    };
    auto with_pattern = [&](CLI::App* sub) {
        sub->add_option("--pattern", args.pattern, "Critical group ids, e.g. 2,3 (skips enumeration)");
        sub->add_option("--threshold", args.threshold, "Fierceness threshold (rad)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Full analysis with CSV and JSON reports");
    common(analyze_cmd);
    with_pattern(analyze_cmd);
    CLI::App* patterns_cmd = app.add_subcommand("patterns", "List candidate patterns and their margins");
    common(patterns_cmd);
    with_pattern(patterns_cmd);
    CLI::App* mirror_cmd = app.add_subcommand("mirror", "Mirror-system residuals of the dominant pattern");
    common(mirror_cmd);
    with_pattern(mirror_cmd);
    CLI::App* cct_cmd = app.add_subcommand("cct", "Critical clearing time by bisection");
    common(cct_cmd);
    cct_cmd->add_option("--t-lo", args.t_lo, "Stable end of the bracket (s)")->required();
    cct_cmd->add_option("--t-hi", args.t_hi, "Unstable end of the bracket (s)")->required();
    cct_cmd->add_option("--tol", args.tol, "Bracket width at which to stop (s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = e.get_exit_code();
        if (code == 0) {
            out << app.help();
            return Ok;
        }
        err << "error [parse]: " << e.what() << '\n';
        return ParseFailure;
    }

    try {
        if (analyze_cmd->parsed()) return analyze(args, out);
        if (patterns_cmd->parsed()) return patterns(args, out);
        if (mirror_cmd->parsed()) return mirror(args, out);
        return cct(args, out);
    } catch (const Error& e) {
        const char* names[] = {"parse", "validation", "numeric", "bracket"};
        err << "error [" << names[static_cast<int>(e.category())] << "]: " << e.what() << '\n';
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Internal;
    }
}

}  // namespace equistab::cli
