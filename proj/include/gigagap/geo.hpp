#pragma once

#include "gigagap/types.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace gigagap::geo {

/// Per-country preparedness, held in whole percentage points so that the
/// combined factor is an exact sum of its components.
class PreparednessFactor {
public:
    PreparednessFactor() = default;
    /// Each component must be -10, 0 or +10 percentage points.
    PreparednessFactor(int geographic_pct, int housing_pct, int regulation_pct);

    int geographic_pct() const noexcept { return geographic_; }
    int housing_pct() const noexcept { return housing_; }
    int regulation_pct() const noexcept { return regulation_; }
    int combined_pct() const noexcept { return geographic_ + housing_ + regulation_; }
    double combined() const noexcept { return combined_pct() / 100.0; }

    /// Converts a fractional component (-0.10, 0, 0.10) to percentage points.
    static int component_from_fraction(double fraction);

private:
    int geographic_ = 0;
    int housing_ = 0;
    int regulation_ = 0;
};

struct Country {
    std::string code;
    double labour_index = 1.0;
    PreparednessFactor preparedness;
    FixedTech dominant_fixed_tech = FixedTech::Ftth;
    ShareBand fttp_band = ShareBand::Below10;
    ShareBand docsis_band = ShareBand::Below10;
    double road_km = 0.0;
    double rail_km = 0.0;
    std::string capital_region;

    /// Cable is the country's gigabit path when its footprint band exceeds fibre's.
    bool cable_dominant() const noexcept { return index_of(docsis_band) > index_of(fttp_band); }
};

struct Region {
    std::string id;
    std::string country;
    double population = 0.0;
    double area_km2 = 0.0;
    double households = 0.0;
    /// Enterprise count per size class, filled from country totals at load time.
    SizeClassArray enterprises = SizeClassArray::Zero();

    double density() const { return area_km2 > 0.0 ? population / area_km2 : 0.0; }
    double enterprise_locations() const { return enterprises.sum(); }
    double premises() const { return households + enterprise_locations(); }
};

struct Locality {
    std::string id;
    std::string region;
    double population = 0.0;
    double area_km2 = 0.0;
    Degurba degurba = Degurba::Urban;
};

struct GeotypeProfile {
    std::string region;
    GeoArray population_share = GeoArray::Zero();
    GeoArray area_share = GeoArray::Zero();
    GeoArray premises_share = GeoArray::Zero();
};

struct Premises {
    double households = 0.0;
    double enterprise_locations = 0.0;
    double total() const { return households + enterprise_locations; }
};

/// Premises of one region split over the five geotypes.
struct PremisesByGeotype {
    GeoArray households = GeoArray::Zero();
    GeoArray enterprise_locations = GeoArray::Zero();

    GeoArray total() const { return households + enterprise_locations; }
    Premises at(Geotype g) const
    {
        return {households(index_of(g)), enterprise_locations(index_of(g))};
    }
};

// Rural municipalities are split by density (inhabitants per km^2).
inline constexpr double kSemiRuralMinDensity = 100.0;
inline constexpr double kRuralMinDensity = 10.0;
// Locality sums may drift from region totals by this much before failing.
inline constexpr double kLocalityTotalsTolerance = 0.02;

Geotype classify_locality(const Locality& loc);

/// Relative mismatch between summed locality population/area and the region totals.
struct TotalsMismatch {
    double population = 0.0;
    double area = 0.0;
    double worst() const { return population > area ? population : area; }
};
TotalsMismatch locality_totals_mismatch(const Region& region, std::span<const Locality> localities);

/// Throws DataError for an empty locality list, a foreign locality, or totals
/// that differ from the region by more than kLocalityTotalsTolerance.
GeotypeProfile decompose_region(const Region& region, std::span<const Locality> localities);

PremisesByGeotype distribute_premises(const Region& region, const GeotypeProfile& profile);

/// Spreads each country's enterprises over its regions by population share.
/// `country_counts` maps country code to its per-size-class totals.
void allocate_enterprises(std::vector<Region>& regions,
                          const std::map<std::string, SizeClassArray>& country_counts);

/// The decomposed reference frame every target is evaluated on. Countries and
/// regions are kept sorted by code so that every reduction runs in id order.
struct Frame {
    std::vector<Country> countries;
    std::vector<Region> regions;
    std::map<std::string, GeotypeProfile> profiles;
    std::map<std::string, PremisesByGeotype> premises;

    const Country& country(const std::string& code) const;
    const Region& region(const std::string& id) const;
};

Frame build_frame(std::vector<Country> countries, std::vector<Region> regions,
                  std::span<const Locality> localities);

} // namespace gigagap::geo
