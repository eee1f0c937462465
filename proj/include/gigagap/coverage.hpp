#pragma once

#include "gigagap/geo.hpp"
#include "gigagap/types.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gigagap::coverage {

struct CoverageInterval {
    std::string region;
    TechClass technology = TechClass::Ftth100M;
    double low = 0.0;
    double high = 0.0;
};

struct NationalFigure {
    std::string country;
    TechClass technology = TechClass::Ftth100M;
    double coverage = 0.0;
    int vintage = 0;
};

/// Coverage bands in which regional data is published.
inline constexpr std::array<std::pair<double, double>, 5> kPublishedBands{
    {{0.0, 0.35}, {0.35, 0.65}, {0.65, 0.95}, {0.95, 1.0}, {1.0, 1.0}}};

bool is_published_band(double low, double high);

/// Widens a band by `epsilon` on both sides, clipped to [0, 1].
std::pair<double, double> relax_band(double low, double high, double epsilon);

/// One region's input to the national reconciliation.
struct RegionBand {
    double density = 0.0;  ///< inhabitants per km^2
    double premises = 0.0; ///< reconciliation weight
    double low = 0.0;
    double high = 0.0;
};

/// The national figure cannot be met by any value inside the regional bands.
struct InfeasibleCoverage : DataError {
    InfeasibleCoverage(const std::string& what, double lo, double hi)
        : DataError(what)
        , feasible_low(lo)
        , feasible_high(hi)
    {
    }
    double feasible_low;
    double feasible_high;
};

struct Disaggregation {
    std::vector<double> coverage; ///< one value per input band, same order
    double scale = 0.0;           ///< proportionality constant on density
    double weighted_mean = 0.0;
};

/// Premises-weighted mean of clamp(scale * density, band) over the regions.
double weighted_coverage(std::span<const RegionBand> regions, double scale);

/// Finds the scale for which regional coverage, proportional to density and
/// clamped to each band, averages (premises-weighted) to `national`.
/// Throws InfeasibleCoverage when `national` lies outside the attainable range.
Disaggregation disaggregate_regions(std::span<const RegionBand> regions, double national);

/// Densest-first fill: each geotype is covered completely before the next
/// receives anything. The premises-weighted mean equals `region_coverage`.
GeoArray spread_over_geotypes(double region_coverage, const GeoArray& premises_share);

class CoverageState {
public:
    CoverageState() = default;
    explicit CoverageState(int vintage)
        : vintage_(vintage)
    {
    }

    int vintage() const noexcept { return vintage_; }

    /// Zero for regions or technologies without data.
    double at(const std::string& region, Geotype g, TechClass t) const;
    void set(const std::string& region, Geotype g, TechClass t, double fraction);
    void set_region(const std::string& region, const CoverageMatrix& m);
    const CoverageMatrix* region(const std::string& id) const;

    const std::map<std::string, CoverageMatrix>& entries() const noexcept { return entries_; }

private:
    int vintage_ = 0;
    std::map<std::string, CoverageMatrix> entries_;
};

/// Technologies whose footprint counts toward a tier in a geotype.
std::vector<TechClass> tier_members(Tier tier, Geotype g);

/// Best available footprint among the technologies of the tier.
double effective_footprint(const CoverageState& state, const std::string& region, Geotype g,
                           Tier tier);

/// Parses "100M", "1G" or "5G"; throws DataError otherwise.
Tier parse_tier(std::string_view text);

struct BuildOptions {
    double relax_epsilon = 0.0;
    unsigned threads = 1;
};

/// Reconciles every (country, technology) with intervals against its national
/// figure and spreads the regional values over geotypes.
CoverageState build_coverage_state(std::span<const geo::Region> regions,
                                   const std::map<std::string, geo::GeotypeProfile>& profiles,
                                   std::span<const CoverageInterval> intervals,
                                   std::span<const NationalFigure> national, int vintage,
                                   const BuildOptions& options = {});

} // namespace gigagap::coverage
