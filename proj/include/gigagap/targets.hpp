#pragma once

#include "gigagap/geo.hpp"
#include "gigagap/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gigagap::targets {

struct Scenario {
    Quality t1_quality = Quality::Nominal;
    Quality t2_quality = Quality::Nominal;
    T3Tier t3_tier = T3Tier::AllEnterprises;
    T4Scope t4_wireless_scope = T4Scope::ExtremelyRuralOnly;
    bool docsis_upgrade = true;

    static Scenario baseline() { return {}; }
    static Scenario max()
    {
        return {Quality::Guaranteed, Quality::Guaranteed, T3Tier::AllEnterprises,
                T4Scope::ExtremelyRuralOnly, false};
    }
    static Scenario min()
    {
        return {Quality::Nominal, Quality::Nominal, T3Tier::OneMillion, T4Scope::AllThreeRural, true};
    }

    bool operator==(const Scenario&) const = default;
};

/// Resolves `baseline`, `max` or `min` (case-insensitive).
std::optional<Scenario> preset(std::string_view name);

/// Name of the preset equal to `s`, or "custom".
std::string preset_name(const Scenario& s);

/// Sets one field from its key=value text form; throws DataError on unknown
/// keys or values.
void apply_field(Scenario& s, std::string_view key, std::string_view value);

/// Parses key=value lines. `#` starts a comment; a `preset` key selects the
/// starting point, and later keys override individual fields.
Scenario parse_scenario_text(std::string_view text);

/// The key=value form accepted by parse_scenario_text, one field per line.
std::string scenario_text(const Scenario& s);

/// Household-connection equivalents per enterprise of each size class.
struct EnterpriseEquivalence {
    SizeClassArray weights = (SizeClassArray() << 2.0, 5.0, 11.0, 50.0, 100.0).finished();

    double equivalents(const SizeClassArray& counts) const { return (counts * weights).sum(); }
};

struct TierSizes {
    double five_million = 5.0e6;
    double one_million = 1.0e6;
};

/// Fraction of each size class selected for a T3 tier, largest classes first
/// with the marginal class prorated. Throws DataError if the tier exceeds `base`.
SizeClassArray t3_selection(const SizeClassArray& base, T3Tier tier, const TierSizes& sizes = {});

struct TransportConfig {
    double already_covered_road_fraction = 0.0;
    double already_covered_rail_fraction = 0.0;
    // Share of the route still needing fibre backhaul. Only priced when
    // backhaul_eur_per_km is set; the bundled per-km costs already include it.
    double road_fibre_share = 0.50;
    double rail_fibre_share = 0.75;
    double backhaul_eur_per_km = 0.0;
};

/// An existing technology whose footprint can be upgraded by `action`.
struct ReusePath {
    TechClass from = TechClass::Ftth100M;
    CostAction action = CostAction::UpgradeFtthTo1G;
};

struct DemandItem {
    Target target = Target::T1;
    Segment segment = Segment::Households;
    std::string region;
    std::string country;
    Geotype geotype = Geotype::Urban;
    Unit unit = Unit::Premises;
    double quantity = 0.0;
    /// Enterprise locations behind an equivalents quantity; zero otherwise.
    double locations = 0.0;
    /// New-build action for whatever no existing footprint serves.
    CostAction required_action = CostAction::FtthNew;
    /// Technologies whose footprint already meets the demand at no cost.
    std::vector<TechClass> satisfied_by;
    std::vector<ReusePath> reuse;
    /// Fraction known to be served independently of the coverage state.
    double known_coverage = 0.0;
    /// Added to the table unit cost of the new-build action.
    double extra_unit_cost = 0.0;
};

/// Whether the target places demand on the geotype under the scenario.
bool in_scope(Target t, Geotype g, const Scenario& s);

/// The scenario table as a total lookup: the new-build action for every
/// (target, geotype, unit) combination the target admits. Throws DataError
/// when the unit does not belong to the target.
CostAction required_action(Target t, Geotype g, Unit u, const Scenario& s);

/// T4 geotypes served wirelessly under the scenario.
bool t4_wireless(Geotype g, const Scenario& s);

std::vector<DemandItem> demand_t1(const geo::Frame& frame, const Scenario& s);
/// Urban 5G items followed by transport items.
std::vector<DemandItem> demand_t2(const geo::Frame& frame, const Scenario& s,
                                  const TransportConfig& transport = {});
std::vector<DemandItem> demand_t3(const geo::Frame& frame, const Scenario& s,
                                  const TierSizes& sizes = {}, const EnterpriseEquivalence& eq = {});
std::vector<DemandItem> demand_t4(const geo::Frame& frame, const Scenario& s);

/// Sorts by (country, region, target, geotype, segment, unit).
void sort_items(std::vector<DemandItem>& items);

} // namespace gigagap::targets
