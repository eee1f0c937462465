#include "gigagap/geo.hpp"

#include <algorithm>
#include <cmath>

namespace gigagap::geo {

namespace {

bool valid_component(int pct) { return pct == -10 || pct == 0 || pct == 10; }

double relative_gap(double part_sum, double total)
{
    if (total == 0.0) {
        return part_sum == 0.0 ? 0.0 : 1.0;
    }
    return std::abs(part_sum - total) / std::abs(total);
}

} // namespace

PreparednessFactor::PreparednessFactor(int geographic_pct, int housing_pct, int regulation_pct)
    : geographic_(geographic_pct)
    , housing_(housing_pct)
    , regulation_(regulation_pct)
{
    if (!valid_component(geographic_pct) || !valid_component(housing_pct) ||
        !valid_component(regulation_pct)) {
        throw DataError("preparedness components must each be -10%, 0% or +10%");
    }
}

int PreparednessFactor::component_from_fraction(double fraction)
{
    const double pct = fraction * 100.0;
    const double rounded = std::round(pct);
    if (std::abs(pct - rounded) > 1e-9 || !valid_component(static_cast<int>(rounded))) {
        throw DataError("preparedness component " + format_number(fraction) +
                        " is not one of -0.10, 0, 0.10");
    }
    return static_cast<int>(rounded);
}

Geotype classify_locality(const Locality& loc)
{
    if (!(loc.area_km2 > 0.0)) {
        throw DataError("locality " + loc.id + " has non-positive area");
    }
    switch (loc.degurba) {
    case Degurba::Urban:
        return Geotype::Urban;
    case Degurba::Suburban:
        return Geotype::Suburban;
    case Degurba::Rural:
        break;
    }
    const double density = loc.population / loc.area_km2;
    if (density >= kSemiRuralMinDensity) {
        return Geotype::SemiRural;
    }
    if (density >= kRuralMinDensity) {
        return Geotype::Rural;
    }
    return Geotype::ExtremelyRural;
}

TotalsMismatch locality_totals_mismatch(const Region& region, std::span<const Locality> localities)
{
    double population = 0.0;
    double area = 0.0;
    for (const auto& loc : localities) {
        population += loc.population;
        area += loc.area_km2;
    }
    return {relative_gap(population, region.population), relative_gap(area, region.area_km2)};
}

GeotypeProfile decompose_region(const Region& region, std::span<const Locality> localities)
{
    if (localities.empty()) {
        throw DataError("region " + region.id + " has no localities");
    }
    GeoArray population = GeoArray::Zero();
    GeoArray area = GeoArray::Zero();
    for (const auto& loc : localities) {
        if (loc.region != region.id) {
            throw DataError("locality " + loc.id + " belongs to " + loc.region + ", not " + region.id);
        }
        const int g = index_of(classify_locality(loc));
        population(g) += loc.population;
        area(g) += loc.area_km2;
    }
    const auto mismatch = locality_totals_mismatch(region, localities);
    if (mismatch.worst() > kLocalityTotalsTolerance) {
        throw DataError("localities of region " + region.id + " differ from region totals by " +
                        format_number(mismatch.worst() * 100.0) + "%");
    }

    GeotypeProfile profile;
    profile.region = region.id;
    if (const double total = population.sum(); total > 0.0) {
        profile.population_share = population / total;
    }
    profile.area_share = area / area.sum();
    // Households and enterprises follow the population distribution.
    profile.premises_share = profile.population_share;
    return profile;
}

PremisesByGeotype distribute_premises(const Region& region, const GeotypeProfile& profile)
{
    PremisesByGeotype out;
    out.households = region.households * profile.premises_share;
    out.enterprise_locations = region.enterprise_locations() * profile.premises_share;
    return out;
}

void allocate_enterprises(std::vector<Region>& regions,
                          const std::map<std::string, SizeClassArray>& country_counts)
{
    std::map<std::string, double> country_population;
    for (const auto& r : regions) {
        country_population[r.country] += r.population;
    }
    for (auto& r : regions) {
        r.enterprises = SizeClassArray::Zero();
        const auto it = country_counts.find(r.country);
        const double pop = country_population[r.country];
        if (it != country_counts.end() && pop > 0.0) {
            r.enterprises = it->second * (r.population / pop);
        }
    }
}

const Country& Frame::country(const std::string& code) const
{
    const auto it = std::lower_bound(countries.begin(), countries.end(), code,
                                     [](const Country& c, const std::string& k) { return c.code < k; });
    if (it == countries.end() || it->code != code) {
        throw DataError("unknown country " + code);
    }
    return *it;
}

const Region& Frame::region(const std::string& id) const
{
    const auto it = std::lower_bound(regions.begin(), regions.end(), id,
                                     [](const Region& r, const std::string& k) { return r.id < k; });
    if (it == regions.end() || it->id != id) {
        throw DataError("unknown region " + id);
    }
    return *it;
}

Frame build_frame(std::vector<Country> countries, std::vector<Region> regions,
                  std::span<const Locality> localities)
{
    Frame frame;
    std::sort(countries.begin(), countries.end(),
              [](const Country& a, const Country& b) { return a.code < b.code; });
    std::sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) { return a.id < b.id; });
    frame.countries = std::move(countries);
    frame.regions = std::move(regions);

    std::map<std::string, std::vector<Locality>> by_region;
    for (const auto& loc : localities) {
        by_region[loc.region].push_back(loc);
    }
    for (const auto& r : frame.regions) {
        const auto it = by_region.find(r.id);
        const std::vector<Locality> none;
        auto profile = decompose_region(r, it == by_region.end() ? none : it->second);
        frame.premises.emplace(r.id, distribute_premises(r, profile));
        frame.profiles.emplace(r.id, std::move(profile));
    }
    return frame;
}

} // namespace gigagap::geo
