#include "gigagap/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gigagap::pipeline {

void parse_targets(std::string_view text, RunOptions& options)
{
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "EGS") {
        options.compose = true;
        options.targets = {kTargets.begin(), kTargets.end()};
        return;
    }
    options.compose = false;
    options.targets.clear();
    std::istringstream in(upper);
    std::string token;
    while (std::getline(in, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token == "T1") {
            options.targets.insert(Target::T1);
        } else if (token == "T2") {
            options.targets.insert({Target::T2Urban, Target::T2Transport});
        } else if (token == "T2A" || token == "T2_URBAN") {
            options.targets.insert(Target::T2Urban);
        } else if (token == "T2B" || token == "T2_TRANSPORT") {
            options.targets.insert(Target::T2Transport);
        } else if (token == "T3") {
            options.targets.insert(Target::T3);
        } else if (token == "T4") {
            options.targets.insert(Target::T4);
        } else {
            throw DataError("unknown target '" + token + "'");
        }
    }
    if (options.targets.empty()) {
        throw DataError("no targets selected");
    }
}

geo::Frame build_frame(const io::Dataset& ds)
{
    return geo::build_frame(ds.countries, ds.regions, ds.localities);
}

coverage::CoverageState build_coverage(const io::Dataset& ds, const geo::Frame& frame, double relax_epsilon,
                                       unsigned threads)
{
    return coverage::build_coverage_state(frame.regions, frame.profiles, ds.intervals, ds.national, ds.vintage,
                                          {relax_epsilon, threads});
}

costs::CostTable build_costs(const io::Dataset& ds, double sharing_fraction)
{
    costs::CostConfig config;
    config.sharing_fraction = sharing_fraction;
    return costs::build_cost_table(ds.cost_references, ds.price_index, ds.countries, config);
}

std::vector<targets::DemandItem> demand(Target t, const geo::Frame& frame, const RunOptions& options)
{
    switch (t) {
    case Target::T1:
        return targets::demand_t1(frame, options.scenario);
    case Target::T2Urban:
    case Target::T2Transport: {
        auto items = targets::demand_t2(frame, options.scenario, options.transport);
        std::erase_if(items, [&](const targets::DemandItem& i) { return i.target != t; });
        return items;
    }
    case Target::T3:
        return targets::demand_t3(frame, options.scenario, options.tiers, options.equivalence);
    case Target::T4:
        return targets::demand_t4(frame, options.scenario);
    }
    throw DataError("unknown target");
}

RunResult run_pipeline(const io::Dataset& ds, const RunOptions& options)
{
    if (options.sharing_fraction < 0.0 || options.sharing_fraction > costs::kMaxSharingFraction) {
        throw DataError("sharing fraction " + format_number(options.sharing_fraction) + " outside [0, 0.12]");
    }
    options.operators.validate();

    RunResult out;
    out.options = options;
    out.frame = build_frame(ds);
    out.coverage = build_coverage(ds, out.frame, options.relax_epsilon, options.threads);
    out.costs = build_costs(ds, options.sharing_fraction);

    auto& report = out.report;
    report.scenario = options.scenario;
    report.vintage = ds.vintage;
    report.composed = options.compose;
    report.cohesion = ds.cohesion;
    report.regions = gap::region_gigabit_gaps(out.frame, out.coverage);

    std::vector<gap::TargetResult> results;
    for (const Target t : kTargets) {
        if (!options.compose && options.targets.count(t) == 0) {
            continue;
        }
        const auto items = demand(t, out.frame, options);
        results.push_back(gap::evaluate_target(t, items, out.coverage, out.costs, options.threads));
        report.computed.push_back(t);
        report.standalone[t] = results.back().cells;
    }

    if (options.compose) {
        report.cells = gap::compose_egs(results, options.scenario, out.frame.countries);
        report.operators = gap::subtract_operator_investment(report.cells, options.operators);
    } else {
        for (const auto& r : results) {
            report.cells.insert(report.cells.end(), r.cells.begin(), r.cells.end());
        }
        gap::sort_cells(report.cells);
    }
    gap::summarize(report);
    out.histogram = gap::histogram_gap_shares(report.regions);
    return out;
}

std::vector<std::string> check_model(const io::Dataset& ds, double relax_epsilon)
{
    std::vector<std::string> problems;
    geo::Frame frame;
    try {
        frame = build_frame(ds);
    } catch (const DataError& e) {
        problems.emplace_back(e.what());
        return problems;
    }
    try {
        build_coverage(ds, frame, relax_epsilon, 1);
    } catch (const DataError& e) {
        problems.emplace_back(e.what());
    }
    try {
        build_costs(ds, 0.0);
    } catch (const costs::CostTableError& e) {
        problems.insert(problems.end(), e.problems.begin(), e.problems.end());
    } catch (const DataError& e) {
        problems.emplace_back(e.what());
    }
    return problems;
}

} // namespace gigagap::pipeline
