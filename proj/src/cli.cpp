#include "gigagap/cli.hpp"

#include "gigagap/io.hpp"
#include "gigagap/pipeline.hpp"
#include "gigagap/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gigagap::cli {

namespace fs = std::filesystem;

namespace {

struct RunFlags {
    std::string dataset;
    std::string scenario = "baseline";
    std::vector<std::string> fields;
    std::string targets = "egs";
    double sharing = 0.0;
    std::optional<double> fixed_per_year;
    std::optional<double> wireless_per_year;
    std::optional<double> horizon_years;
    std::string out = "gigagap-out";
    unsigned threads = 1;
    double relax = 0.0;
};

void add_dataset_flags(CLI::App& cmd, RunFlags& f)
{
    cmd.add_option("--dataset", f.dataset, "Dataset directory (default: $GIGAGAP_DATA)");
    cmd.add_option("--relax-intervals", f.relax, "Widen coverage bands by this epsilon when reconciling")
        ->check(CLI::Range(0.0, 1.0));
}

void add_run_flags(CLI::App& cmd, RunFlags& f)
{
    add_dataset_flags(cmd, f);
    cmd.add_option("--scenario", f.scenario, "Preset (baseline, max, min) or a key=value scenario file");
    cmd.add_option("--set", f.fields, "Override one scenario field, key=value (repeatable)");
    cmd.add_option("--targets", f.targets, "egs, or a comma list of T1, T2, T2A, T2B, T3, T4");
    cmd.add_option("--sharing", f.sharing, "Infrastructure sharing saving, 0 to 0.12");
    cmd.add_option("--operator-fixed-per-year", f.fixed_per_year, "Operator fixed investment, EUR per year");
    cmd.add_option("--operator-wireless-per-year", f.wireless_per_year, "Operator 5G investment, EUR per year");
    cmd.add_option("--horizon-years", f.horizon_years, "Years of operator investment");
    cmd.add_option("--threads", f.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
}

fs::path dataset_path(const RunFlags& f)
{
    if (!f.dataset.empty()) {
        return f.dataset;
    }
    if (const char* env = std::getenv("GIGAGAP_DATA"); env != nullptr && *env != '\0') {
        return env;
    }
    throw IoError("no dataset given: pass --dataset or set GIGAGAP_DATA");
}

targets::Scenario resolve_scenario(const RunFlags& f)
{
    targets::Scenario s;
    if (const auto p = targets::preset(f.scenario)) {
        s = *p;
    } else if (fs::is_regular_file(f.scenario)) {
        std::ifstream in(f.scenario, std::ios::binary);
        if (!in) {
            throw IoError("cannot read scenario file " + f.scenario);
        }
        std::ostringstream text;
        text << in.rdbuf();
        s = targets::parse_scenario_text(text.str());
    } else {
        throw DataError("unknown scenario '" + f.scenario + "' (neither a preset nor a file)");
    }
    for (const auto& field : f.fields) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw DataError("--set expects key=value, got '" + field + "'");
        }
        targets::apply_field(s, field.substr(0, eq), field.substr(eq + 1));
    }
    return s;
}

pipeline::RunOptions run_options(const RunFlags& f)
{
    pipeline::RunOptions o;
    o.scenario = resolve_scenario(f);
    pipeline::parse_targets(f.targets, o);
    o.sharing_fraction = f.sharing;
    if (f.fixed_per_year) {
        o.operators.fixed_per_year = *f.fixed_per_year;
    }
    if (f.wireless_per_year) {
        o.operators.wireless_per_year = *f.wireless_per_year;
    }
    if (f.horizon_years) {
        o.operators.horizon_years = *f.horizon_years;
    }
    o.relax_epsilon = f.relax;
    o.threads = f.threads;
    return o;
}

/// Loads and validates; prints issues to `err`. nullopt on validation failure.
std::optional<io::Dataset> load(const fs::path& dir, std::ostream& err)
{
    auto result = io::load_dataset(dir);
    err << result.report.to_text();
    if (!result.report.passed()) {
        err << "validation failed with " << result.report.error_count() << " error(s)\n";
        return std::nullopt;
    }
    return std::move(result.dataset);
}

int cmd_validate(const RunFlags& f, std::ostream& out)
{
    const fs::path dir = dataset_path(f);
    auto result = io::load_dataset(dir);
    if (result.report.passed()) {
        for (const auto& problem : pipeline::check_model(*result.dataset, f.relax)) {
            result.report.error("model", 0, problem);
        }
    }
    out << result.report.to_text();
    out << (result.report.passed() ? "passed" : "failed") << ": " << result.report.error_count()
        << " error(s), " << result.report.warning_count() << " warning(s)\n";
    return result.report.passed() ? kExitOk : kExitDomain;
}

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err)
{
    const auto options = run_options(f);
    const auto ds = load(dataset_path(f), err);
    if (!ds) {
        return kExitDomain;
    }
    const auto result = pipeline::run_pipeline(*ds, options);
    report::write_reports(result, f.out);
    out << report::summary_table(result.report);
    return kExitOk;
}

int cmd_breakdown(const RunFlags& f, const std::string& dimension, const std::string& target,
                  std::ostream& out, std::ostream& err)
{
    const auto dim = gap::parse_dimension(dimension);
    if (!dim) {
        throw DataError("unknown breakdown dimension '" + dimension + "'");
    }
    std::optional<Target> t;
    if (!target.empty()) {
        t = parse<Target>(target);
        if (!t) {
            throw DataError("unknown target '" + target + "'");
        }
    }
    const auto options = run_options(f);
    const auto ds = load(dataset_path(f), err);
    if (!ds) {
        return kExitDomain;
    }
    const auto result = pipeline::run_pipeline(*ds, options);
    out << report::breakdown_table(gap::breakdown(result.report, *dim, t));
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& out_dir, std::ostream& out)
{
    std::vector<evolution::VintageSummary> summaries;
    for (const auto& file : files) {
        summaries.push_back(report::read_summary(file));
    }
    const auto evo = evolution::compare_vintages(summaries);
    out << report::evolution_table(evo);
    if (!out_dir.empty()) {
        report::write_evolution(evo, out_dir);
    }
    return kExitOk;
}

} // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Investment gap estimator for the European Gigabit Society targets", "gigagap"};
    app.require_subcommand(1);

    RunFlags validate_flags;
    auto* validate = app.add_subcommand("validate", "Check a dataset directory");
    add_dataset_flags(*validate, validate_flags);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Compute targets and write reports");
    add_run_flags(*run, run_flags);
    run->add_option("--out", run_flags.out, "Output directory");

    RunFlags breakdown_flags;
    std::string dimension = "GEOTYPE";
    std::string target;
    auto* brk = app.add_subcommand("breakdown", "Print the investment breakdown by one dimension");
    add_run_flags(*brk, breakdown_flags);
    brk->add_option("--dimension", dimension, "GEOTYPE, URBAN_RURAL, COHESION, COUNTRY or HOUSEHOLDS_VS_PREMISES");
    brk->add_option("--target", target, "Break down one standalone target instead of the headline cells");

    std::vector<std::string> summaries;
    std::string compare_out;
    auto* compare = app.add_subcommand("compare", "Compare run summaries of different vintages");
    compare->add_option("summaries", summaries, "gap_summary.json files")->required()->expected(2, -1);
    compare->add_option("--out", compare_out, "Directory for evolution.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitEnvironment;
    }

    try {
        if (validate->parsed()) {
            return cmd_validate(validate_flags, out);
        }
        if (run->parsed()) {
            return cmd_run(run_flags, out, err);
        }
        if (brk->parsed()) {
            return cmd_breakdown(breakdown_flags, dimension, target, out, err);
        }
        if (compare->parsed()) {
            return cmd_compare(summaries, compare_out, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitEnvironment;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitEnvironment;
}

} // namespace gigagap::cli
