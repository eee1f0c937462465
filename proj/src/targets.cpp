#include "gigagap/targets.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

namespace gigagap::targets {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

template <class E>
E parse_field(std::string_view key, std::string_view value)
{
    if (const auto v = parse<E>(upper(value))) {
        return *v;
    }
    throw DataError("invalid value '" + std::string(value) + "' for scenario field " + std::string(key));
}

CostAction five_g(Quality q)
{
    return q == Quality::Guaranteed ? CostAction::FiveGGuaranteed : CostAction::FiveGNominal;
}

bool fttc_is_country_path(const geo::Country& c, Geotype g)
{
    switch (c.dominant_fixed_tech) {
    case FixedTech::Ftth:
        return false;
    case FixedTech::FttbC:
        return true;
    case FixedTech::MixedUrbanFtth:
        return g != Geotype::Urban;
    }
    return false;
}

// Gigabit fixed demand: what already qualifies and which footprints can be upgraded.
void set_fixed_paths(DemandItem& item, const geo::Country& c, const Scenario& s)
{
    // T3 needs fibre in the extremely rural geotype, so cable does not qualify there.
    const bool cable_allowed = !(item.target == Target::T3 && item.geotype == Geotype::ExtremelyRural);
    item.satisfied_by = {TechClass::Ftth1G};
    if (cable_allowed) {
        item.satisfied_by.push_back(TechClass::Docsis31);
    }
    item.reuse = {{TechClass::Ftth100M, CostAction::UpgradeFtthTo1G},
                  {TechClass::Fttb, CostAction::UpgradeFttbToFtth}};
    if (fttc_is_country_path(c, item.geotype)) {
        item.reuse.push_back({TechClass::FttcAdvDsl, CostAction::UpgradeFttcToFtth});
    }
    if (cable_allowed && s.docsis_upgrade && c.cable_dominant()) {
        item.reuse.push_back({TechClass::Docsis30, CostAction::UpgradeDocsis30To31});
    }
}

void push_premises(std::vector<DemandItem>& out, DemandItem base, const geo::Premises& p)
{
    if (p.households > 0.0) {
        base.segment = Segment::Households;
        base.quantity = p.households;
        out.push_back(base);
    }
    if (p.enterprise_locations > 0.0) {
        base.segment = Segment::EnterpriseLocations;
        base.quantity = p.enterprise_locations;
        out.push_back(std::move(base));
    }
}

DemandItem five_g_item(Target t, const geo::Region& r, Geotype g, const Scenario& s)
{
    DemandItem item;
    item.target = t;
    item.region = r.id;
    item.country = r.country;
    item.geotype = g;
    item.unit = Unit::Premises;
    item.required_action = required_action(t, g, Unit::Premises, s);
    item.satisfied_by = {TechClass::FiveG};
    return item;
}

} // namespace

std::optional<Scenario> preset(std::string_view name)
{
    const auto n = lower(trim(name));
    if (n == "baseline") {
        return Scenario::baseline();
    }
    if (n == "max") {
        return Scenario::max();
    }
    if (n == "min") {
        return Scenario::min();
    }
    return std::nullopt;
}

std::string preset_name(const Scenario& s)
{
    if (s == Scenario::baseline()) {
        return "baseline";
    }
    if (s == Scenario::max()) {
        return "max";
    }
    if (s == Scenario::min()) {
        return "min";
    }
    return "custom";
}

void apply_field(Scenario& s, std::string_view key, std::string_view value)
{
    const auto k = lower(trim(key));
    value = trim(value);
    if (k == "t1_quality") {
        s.t1_quality = parse_field<Quality>(k, value);
    } else if (k == "t2_quality") {
        s.t2_quality = parse_field<Quality>(k, value);
    } else if (k == "t3_tier") {
        s.t3_tier = parse_field<T3Tier>(k, value);
    } else if (k == "t4_wireless_scope") {
        s.t4_wireless_scope = parse_field<T4Scope>(k, value);
    } else if (k == "docsis_upgrade") {
        const auto v = lower(value);
        if (v == "true" || v == "1" || v == "yes") {
            s.docsis_upgrade = true;
        } else if (v == "false" || v == "0" || v == "no") {
            s.docsis_upgrade = false;
        } else {
            throw DataError("invalid value '" + std::string(value) + "' for scenario field docsis_upgrade");
        }
    } else if (k == "preset") {
        const auto p = preset(value);
        if (!p) {
            throw DataError("unknown scenario preset '" + std::string(value) + "'");
        }
        s = *p;
    } else {
        throw DataError("unknown scenario field '" + std::string(key) + "'");
    }
}

Scenario parse_scenario_text(std::string_view text)
{
    Scenario s = Scenario::baseline();
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw DataError("scenario line " + std::to_string(lineno) + " is not key=value");
        }
        apply_field(s, view.substr(0, eq), view.substr(eq + 1));
    }
    return s;
}

std::string scenario_text(const Scenario& s)
{
    std::ostringstream out;
    out << "t1_quality=" << to_string(s.t1_quality) << '\n'
        << "t2_quality=" << to_string(s.t2_quality) << '\n'
        << "t3_tier=" << to_string(s.t3_tier) << '\n'
        << "t4_wireless_scope=" << to_string(s.t4_wireless_scope) << '\n'
        << "docsis_upgrade=" << (s.docsis_upgrade ? "true" : "false") << '\n';
    return out.str();
}

SizeClassArray t3_selection(const SizeClassArray& base, T3Tier tier, const TierSizes& sizes)
{
    if (tier == T3Tier::AllEnterprises) {
        return SizeClassArray::Ones();
    }
    const double wanted = tier == T3Tier::FiveMillion ? sizes.five_million : sizes.one_million;
    const double available = base.sum();
    if (wanted > available) {
        throw DataError("T3 tier " + std::string(to_string(tier)) + " needs " + format_number(wanted) +
                        " enterprises but the base holds " + format_number(available));
    }
    SizeClassArray fraction = SizeClassArray::Zero();
    double remaining = wanted;
    for (int i = kSizeClassCount - 1; i >= 0 && remaining > 0.0; --i) {
        if (base(i) <= 0.0) {
            continue;
        }
        if (base(i) <= remaining) {
            fraction(i) = 1.0;
            remaining -= base(i);
        } else {
            fraction(i) = remaining / base(i);
            remaining = 0.0;
        }
    }
    return fraction;
}

bool t4_wireless(Geotype g, const Scenario& s)
{
    if (g == Geotype::ExtremelyRural) {
        return true;
    }
    return s.t4_wireless_scope == T4Scope::AllThreeRural && (g == Geotype::SemiRural || g == Geotype::Rural);
}

bool in_scope(Target t, Geotype g, const Scenario&)
{
    return t != Target::T2Urban || is_urban_side(g);
}

CostAction required_action(Target t, Geotype g, Unit u, const Scenario& s)
{
    const bool km = u != Unit::Premises;
    if (km != (t == Target::T2Transport)) {
        throw DataError("unit " + std::string(to_string(u)) + " does not apply to target " +
                        std::string(to_string(t)));
    }
    switch (t) {
    case Target::T1:
        return five_g(s.t1_quality);
    case Target::T2Urban:
        return five_g(s.t2_quality);
    case Target::T2Transport:
        if (u == Unit::KmRoad) {
            return s.t2_quality == Quality::Guaranteed ? CostAction::FiveGRoadGuaranteedKm
                                                       : CostAction::FiveGRoadNominalKm;
        }
        return s.t2_quality == Quality::Guaranteed ? CostAction::FiveGRailGuaranteedKm
                                                   : CostAction::FiveGRailNominalKm;
    case Target::T3:
        return CostAction::FtthNew;
    case Target::T4:
        return t4_wireless(g, s) ? CostAction::FiveGNominal : CostAction::FtthNew;
    }
    throw DataError("unknown target");
}

void sort_items(std::vector<DemandItem>& items)
{
    std::stable_sort(items.begin(), items.end(), [](const DemandItem& a, const DemandItem& b) {
        return std::tie(a.country, a.region, a.target, a.geotype, a.segment, a.unit) <
               std::tie(b.country, b.region, b.target, b.geotype, b.segment, b.unit);
    });
}

std::vector<DemandItem> demand_t1(const geo::Frame& frame, const Scenario& s)
{
    std::vector<DemandItem> out;
    for (const auto& c : frame.countries) {
        if (c.capital_region.empty()) {
            throw DataError("country " + c.code + " has no capital region");
        }
        const auto& r = frame.region(c.capital_region);
        if (r.country != c.code) {
            throw DataError("capital region " + r.id + " of " + c.code + " belongs to " + r.country);
        }
        const auto& premises = frame.premises.at(r.id);
        for (const Geotype g : kGeotypes) {
            push_premises(out, five_g_item(Target::T1, r, g, s), premises.at(g));
        }
    }
    sort_items(out);
    return out;
}

std::vector<DemandItem> demand_t2(const geo::Frame& frame, const Scenario& s,
                                  const TransportConfig& transport)
{
    std::vector<DemandItem> out;
    for (const auto& r : frame.regions) {
        const auto& premises = frame.premises.at(r.id);
        for (const Geotype g : kGeotypes) {
            if (in_scope(Target::T2Urban, g, s)) {
                push_premises(out, five_g_item(Target::T2Urban, r, g, s), premises.at(g));
            }
        }
    }

    for (const auto& c : frame.countries) {
        double country_area = 0.0;
        for (const auto& r : frame.regions) {
            if (r.country == c.code) {
                country_area += r.area_km2;
            }
        }
        const std::pair<Unit, double> routes[] = {{Unit::KmRoad, c.road_km}, {Unit::KmRail, c.rail_km}};
        for (const auto& [unit, km] : routes) {
            if (km <= 0.0) {
                continue;
            }
            if (!(country_area > 0.0)) {
                throw DataError("country " + c.code + " has transport km but no regional area");
            }
            const bool road = unit == Unit::KmRoad;
            for (const auto& r : frame.regions) {
                if (r.country != c.code) {
                    continue;
                }
                const auto& profile = frame.profiles.at(r.id);
                const double region_km = km * (r.area_km2 / country_area);
                for (const Geotype g : kGeotypes) {
                    const double q = region_km * profile.area_share(index_of(g));
                    if (q <= 0.0) {
                        continue;
                    }
                    DemandItem item;
                    item.target = Target::T2Transport;
                    item.segment = Segment::TransportKm;
                    item.region = r.id;
                    item.country = c.code;
                    item.geotype = g;
                    item.unit = unit;
                    item.quantity = q;
                    item.required_action = required_action(Target::T2Transport, g, unit, s);
                    item.known_coverage = road ? transport.already_covered_road_fraction
                                               : transport.already_covered_rail_fraction;
                    item.extra_unit_cost = (road ? transport.road_fibre_share : transport.rail_fibre_share) *
                                           transport.backhaul_eur_per_km;
                    out.push_back(std::move(item));
                }
            }
        }
    }
    sort_items(out);
    return out;
}

std::vector<DemandItem> demand_t3(const geo::Frame& frame, const Scenario& s, const TierSizes& sizes,
                                  const EnterpriseEquivalence& eq)
{
    SizeClassArray base = SizeClassArray::Zero();
    for (const auto& r : frame.regions) {
        base += r.enterprises;
    }
    const SizeClassArray selected = t3_selection(base, s.t3_tier, sizes);

    std::vector<DemandItem> out;
    for (const auto& r : frame.regions) {
        const auto& country = frame.country(r.country);
        const auto& profile = frame.profiles.at(r.id);
        const SizeClassArray chosen = r.enterprises * selected;
        for (const Geotype g : kGeotypes) {
            const SizeClassArray here = chosen * profile.premises_share(index_of(g));
            DemandItem item;
            item.target = Target::T3;
            item.segment = Segment::EnterpriseEquivalents;
            item.region = r.id;
            item.country = r.country;
            item.geotype = g;
            item.unit = Unit::Premises;
            item.quantity = eq.equivalents(here);
            item.locations = here.sum();
            if (item.quantity <= 0.0) {
                continue;
            }
            item.required_action = required_action(Target::T3, g, Unit::Premises, s);
            set_fixed_paths(item, country, s);
            out.push_back(std::move(item));
        }
    }
    sort_items(out);
    return out;
}

std::vector<DemandItem> demand_t4(const geo::Frame& frame, const Scenario& s)
{
    std::vector<DemandItem> out;
    for (const auto& r : frame.regions) {
        const auto& country = frame.country(r.country);
        const auto& premises = frame.premises.at(r.id);
        for (const Geotype g : kGeotypes) {
            const double households = premises.households(index_of(g));
            if (households <= 0.0) {
                continue;
            }
            DemandItem item;
            item.target = Target::T4;
            item.segment = Segment::Households;
            item.region = r.id;
            item.country = r.country;
            item.geotype = g;
            item.unit = Unit::Premises;
            item.quantity = households;
            item.required_action = required_action(Target::T4, g, Unit::Premises, s);
            set_fixed_paths(item, country, s);
            if (t4_wireless(g, s)) {
                // Wireless geotypes still keep gigabit fixed footprints and cheaper upgrades.
                item.satisfied_by.push_back(TechClass::FiveG);
            }
            out.push_back(std::move(item));
        }
    }
    sort_items(out);
    return out;
}

} // namespace gigagap::targets
