#pragma once

#include "gigagap/costs.hpp"
#include "gigagap/coverage.hpp"
#include "gigagap/gap.hpp"
#include "gigagap/geo.hpp"
#include "gigagap/io.hpp"
#include "gigagap/targets.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace gigagap::pipeline {

struct RunOptions {
    targets::Scenario scenario;
    /// Standalone targets to evaluate; ignored when `compose` is set.
    std::set<Target> targets{kTargets.begin(), kTargets.end()};
    /// Evaluate all targets and compose them into the EGS total.
    bool compose = true;
    double sharing_fraction = 0.0;
    gap::OperatorInvestment operators;
    targets::TransportConfig transport;
    targets::TierSizes tiers;
    targets::EnterpriseEquivalence equivalence;
    double relax_epsilon = 0.0;
    unsigned threads = 1;
};

/// Parses a --targets value: "egs", or a comma list of T1, T2, T2A, T2B, T3, T4.
void parse_targets(std::string_view text, RunOptions& options);

struct RunResult {
    RunOptions options;
    geo::Frame frame;
    coverage::CoverageState coverage;
    costs::CostTable costs;
    gap::GapReport report;
    gap::Histogram histogram;
};

geo::Frame build_frame(const io::Dataset& ds);
coverage::CoverageState build_coverage(const io::Dataset& ds, const geo::Frame& frame, double relax_epsilon,
                                       unsigned threads);
costs::CostTable build_costs(const io::Dataset& ds, double sharing_fraction);

std::vector<targets::DemandItem> demand(Target t, const geo::Frame& frame, const RunOptions& options);

/// Throws DataError (including InfeasibleCoverage) for model-level problems.
RunResult run_pipeline(const io::Dataset& ds, const RunOptions& options);

/// Problems that only surface when the model is built (infeasible coverage,
/// incomplete cost table); empty when the dataset can be run.
std::vector<std::string> check_model(const io::Dataset& ds, double relax_epsilon = 0.0);

} // namespace gigagap::pipeline
