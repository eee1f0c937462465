#include "gigagap/coverage.hpp"

#include "gigagap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace gigagap::coverage {

namespace {

constexpr double kBandTolerance = 1e-12;
constexpr double kFeasibilitySlack = 1e-12;
constexpr int kBisectionSteps = 200;

double clamp_to_band(double value, const RegionBand& r) { return std::clamp(value, r.low, r.high); }

} // namespace

bool is_published_band(double low, double high)
{
    return std::any_of(kPublishedBands.begin(), kPublishedBands.end(), [&](const auto& band) {
        return std::abs(band.first - low) <= kBandTolerance &&
               std::abs(band.second - high) <= kBandTolerance;
    });
}

std::pair<double, double> relax_band(double low, double high, double epsilon)
{
    return {std::max(0.0, low - epsilon), std::min(1.0, high + epsilon)};
}

double weighted_coverage(std::span<const RegionBand> regions, double scale)
{
    double weight = 0.0;
    double covered = 0.0;
    for (const auto& r : regions) {
        weight += r.premises;
        covered += r.premises * clamp_to_band(scale * r.density, r);
    }
    return weight > 0.0 ? covered / weight : 0.0;
}

Disaggregation disaggregate_regions(std::span<const RegionBand> regions, double national)
{
    Disaggregation out;
    double weight = 0.0;
    double max_scale = 0.0;
    for (const auto& r : regions) {
        if (r.low > r.high) {
            throw DataError("coverage band with low > high");
        }
        weight += r.premises;
        if (r.density > 0.0) {
            max_scale = std::max(max_scale, r.high / r.density);
        }
    }

    auto finish = [&](double scale) {
        out.scale = scale;
        out.coverage.clear();
        for (const auto& r : regions) {
            out.coverage.push_back(clamp_to_band(scale * r.density, r));
        }
        out.weighted_mean = weighted_coverage(regions, scale);
        return out;
    };

    if (weight <= 0.0) {
        return finish(0.0);
    }

    const double lowest = weighted_coverage(regions, 0.0);
    const double highest = weighted_coverage(regions, max_scale);
    if (national < lowest - kFeasibilitySlack || national > highest + kFeasibilitySlack) {
        throw InfeasibleCoverage("national coverage " + format_number(national) +
                                     " outside feasible range [" + format_number(lowest) + ", " +
                                     format_number(highest) + "]",
                                 lowest, highest);
    }
    if (national <= lowest) {
        return finish(0.0);
    }
    if (national >= highest) {
        return finish(max_scale);
    }

    // weighted_coverage is continuous and nondecreasing in the scale.
    double lo = 0.0;
    double hi = max_scale;
    for (int step = 0; step < kBisectionSteps && hi - lo > 0.0; ++step) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (weighted_coverage(regions, mid) < national) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return finish(lo + (hi - lo) / 2.0);
}

GeoArray spread_over_geotypes(double region_coverage, const GeoArray& premises_share)
{
    if (region_coverage >= 1.0) {
        return GeoArray::Ones();
    }
    GeoArray out = GeoArray::Zero();
    double remaining = std::max(0.0, region_coverage);
    for (const Geotype g : kGeotypes) {
        const int i = index_of(g);
        const double share = premises_share(i);
        if (share <= 0.0 || remaining <= 0.0) {
            continue;
        }
        const double take = std::min(share, remaining);
        out(i) = std::min(1.0, take / share);
        remaining -= take;
    }
    return out;
}

double CoverageState::at(const std::string& region, Geotype g, TechClass t) const
{
    const auto it = entries_.find(region);
    return it == entries_.end() ? 0.0 : it->second(index_of(g), index_of(t));
}

void CoverageState::set(const std::string& region, Geotype g, TechClass t, double fraction)
{
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw DataError("coverage fraction outside [0, 1] for region " + region);
    }
    auto [it, inserted] = entries_.try_emplace(region, CoverageMatrix::Zero());
    it->second(index_of(g), index_of(t)) = fraction;
}

void CoverageState::set_region(const std::string& region, const CoverageMatrix& m)
{
    if ((m < 0.0).any() || (m > 1.0).any()) {
        throw DataError("coverage fraction outside [0, 1] for region " + region);
    }
    entries_[region] = m;
}

const CoverageMatrix* CoverageState::region(const std::string& id) const
{
    const auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<TechClass> tier_members(Tier tier, Geotype g)
{
    switch (tier) {
    case Tier::Mbps100: {
        std::vector<TechClass> out{TechClass::Ftth100M,   TechClass::Ftth1G,   TechClass::Fttb,
                                   TechClass::FttcAdvDsl, TechClass::Docsis30, TechClass::Docsis31};
        // LTE is accepted as non-guaranteed 100 Mbps only where nothing else is viable.
        if (g == Geotype::ExtremelyRural) {
            out.push_back(TechClass::Lte);
        }
        return out;
    }
    case Tier::Gbps1:
        return {TechClass::Ftth1G, TechClass::Docsis31};
    case Tier::FiveG:
        return {TechClass::FiveG};
    }
    throw DataError("unknown capability tier");
}

double effective_footprint(const CoverageState& state, const std::string& region, Geotype g,
                           Tier tier)
{
    const auto members = tier_members(tier, g);
    const CoverageMatrix* m = state.region(region);
    if (m == nullptr) {
        return 0.0;
    }
    double best = 0.0;
    for (const TechClass t : members) {
        best = std::max(best, (*m)(index_of(g), index_of(t)));
    }
    return best;
}

Tier parse_tier(std::string_view text)
{
    if (const auto t = parse<Tier>(text)) {
        return *t;
    }
    throw DataError("unknown capability tier '" + std::string(text) + "'");
}

CoverageState build_coverage_state(std::span<const geo::Region> regions,
                                   const std::map<std::string, geo::GeotypeProfile>& profiles,
                                   std::span<const CoverageInterval> intervals,
                                   std::span<const NationalFigure> national, int vintage,
                                   const BuildOptions& options)
{
    std::map<std::string, const geo::Region*> region_by_id;
    std::map<std::string, std::vector<const geo::Region*>> regions_by_country;
    for (const auto& r : regions) {
        region_by_id[r.id] = &r;
    }
    for (const auto& [id, r] : region_by_id) {
        regions_by_country[r->country].push_back(r);
    }

    using Key = std::tuple<std::string, int>; // country, technology
    std::map<Key, std::map<std::string, const CoverageInterval*>> groups;
    for (const auto& iv : intervals) {
        const auto it = region_by_id.find(iv.region);
        if (it == region_by_id.end()) {
            throw DataError("coverage interval for unknown region " + iv.region);
        }
        auto& slot = groups[{it->second->country, index_of(iv.technology)}][iv.region];
        if (slot != nullptr) {
            throw DataError("duplicate coverage interval for " + iv.region + "/" +
                            std::string(to_string(iv.technology)));
        }
        slot = &iv;
    }
    std::map<Key, double> national_by_key;
    for (const auto& n : national) {
        national_by_key[{n.country, index_of(n.technology)}] = n.coverage;
    }

    struct Job {
        Key key;
        std::vector<const geo::Region*> members;
        std::vector<RegionBand> bands;
        double national = 0.0;
        std::vector<double> result;
    };
    std::vector<Job> jobs;
    for (const auto& [key, by_region] : groups) {
        const auto& [country, tech] = key;
        const auto tech_name = std::string(to_string(static_cast<TechClass>(tech)));
        Job job{key, regions_by_country[country], {}, 0.0, {}};
        const auto nit = national_by_key.find(key);
        if (nit == national_by_key.end()) {
            throw DataError("no national figure for " + country + "/" + tech_name);
        }
        job.national = nit->second;
        for (const auto* r : job.members) {
            const auto it = by_region.find(r->id);
            if (it == by_region.end()) {
                throw DataError("region " + r->id + " has no " + tech_name +
                                " interval while other regions of " + country + " do");
            }
            const auto [lo, hi] = relax_band(it->second->low, it->second->high, options.relax_epsilon);
            job.bands.push_back({r->density(), r->premises(), lo, hi});
        }
        jobs.push_back(std::move(job));
    }

    parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
        auto& job = jobs[i];
        try {
            job.result = disaggregate_regions(job.bands, job.national).coverage;
        } catch (const InfeasibleCoverage& e) {
            const auto& [country, tech] = job.key;
            throw InfeasibleCoverage(country + "/" + std::string(to_string(static_cast<TechClass>(tech))) +
                                         ": " + e.what(),
                                     e.feasible_low, e.feasible_high);
        }
    });

    std::map<std::string, CoverageMatrix> matrices;
    for (const auto& [id, r] : region_by_id) {
        matrices.emplace(id, CoverageMatrix::Zero());
    }
    for (const auto& job : jobs) {
        const int tech = std::get<1>(job.key);
        for (std::size_t j = 0; j < job.members.size(); ++j) {
            const auto& rid = job.members[j]->id;
            const auto pit = profiles.find(rid);
            if (pit == profiles.end()) {
                throw DataError("no geotype profile for region " + rid);
            }
            matrices[rid].col(tech) = spread_over_geotypes(job.result[j], pit->second.premises_share);
        }
    }

    CoverageState state(vintage);
    for (const auto& [id, m] : matrices) {
        state.set_region(id, m);
    }
    return state;
}

} // namespace gigagap::coverage
