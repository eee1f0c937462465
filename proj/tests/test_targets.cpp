#include "gigagap/pipeline.hpp"
#include "gigagap/targets.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace gigagap;
using namespace gigagap::targets;

namespace {

geo::Frame fixture_frame(const char* name = "fixture-2019")
{
    return pipeline::build_frame(test::load_ok(test::data_dir(name)));
}

// Countries with two regions each: a dense capital and a sparse rest.
geo::Frame synthetic_frame(int n_countries)
{
    std::vector<geo::Country> countries;
    std::vector<geo::Region> regions;
    std::vector<geo::Locality> locs;
    for (int i = 0; i < n_countries; ++i) {
        geo::Country c;
        c.code = "C" + std::to_string(10 + i);
        c.capital_region = c.code + "CAP";
        c.road_km = 100.0 * (i + 1);
        c.rail_km = i % 3 == 0 ? 0.0 : 50.0 * i;
        countries.push_back(c);
        for (const auto& [suffix, pop, area, deg] :
             {std::tuple{"CAP", 2.0e6, 500.0, Degurba::Urban}, std::tuple{"RST", 3.0e5, 9000.0, Degurba::Rural}}) {
            geo::Region r;
            r.id = c.code + suffix;
            r.country = c.code;
            r.population = pop;
            r.area_km2 = area;
            r.households = pop * 0.45;
            r.enterprises << pop * 0.05, pop * 0.004, pop * 0.002, pop * 0.001, pop * 0.0002;
            regions.push_back(r);
            locs.push_back({r.id + "-1", r.id, pop, area, deg});
        }
    }
    return geo::build_frame(countries, regions, locs);
}

double sum_quantity(const std::vector<DemandItem>& items) {
    double s = 0.0;
    for (const auto& i : items) {
        s += i.quantity;
    }
    return s;
}

} // namespace

TEST_SUITE("targets")
{
    TEST_CASE("presets match the scenario definitions")
    {
        const auto b = Scenario::baseline();
        CHECK(b.t1_quality == Quality::Nominal);
        CHECK(b.t2_quality == Quality::Nominal);
        CHECK(b.t3_tier == T3Tier::AllEnterprises);
        CHECK(b.t4_wireless_scope == T4Scope::ExtremelyRuralOnly);
        CHECK(b.docsis_upgrade);
        const auto mx = Scenario::max();
        CHECK(mx.t1_quality == Quality::Guaranteed);
        CHECK(mx.t2_quality == Quality::Guaranteed);
        CHECK(mx.t3_tier == T3Tier::AllEnterprises);
        CHECK(mx.t4_wireless_scope == T4Scope::ExtremelyRuralOnly);
        CHECK_FALSE(mx.docsis_upgrade);
        const auto mn = Scenario::min();
        CHECK(mn.t1_quality == Quality::Nominal);
        CHECK(mn.t3_tier == T3Tier::OneMillion);
        CHECK(mn.t4_wireless_scope == T4Scope::AllThreeRural);
        CHECK(mn.docsis_upgrade);
        CHECK(*preset("MAX") == mx);
        CHECK(*preset(" min ") == mn);
        CHECK_FALSE(preset("medium"));
        CHECK(preset_name(mn) == "min");
        auto custom = b;
        custom.docsis_upgrade = false;
        CHECK(preset_name(custom) == "custom");
    }

    TEST_CASE("scenario text round trip and field errors")
    {
        for (const auto& s : {Scenario::baseline(), Scenario::max(), Scenario::min()}) {
            CHECK(parse_scenario_text(scenario_text(s)) == s);
        }
        const auto s = parse_scenario_text("# comment\npreset = max\n t3_tier=one_million # smaller\n\n");
        CHECK(s.t1_quality == Quality::Guaranteed);
        CHECK(s.t3_tier == T3Tier::OneMillion);
        Scenario x;
        apply_field(x, "docsis_upgrade", "no");
        CHECK_FALSE(x.docsis_upgrade);
        CHECK_THROWS_AS(apply_field(x, "docsis_upgrade", "maybe"), DataError);
        CHECK_THROWS_AS(apply_field(x, "speed", "fast"), DataError);
        CHECK_THROWS_AS(apply_field(x, "t1_quality", "premium"), DataError);
        CHECK_THROWS_AS(parse_scenario_text("t1_quality"), DataError);
    }

    TEST_CASE("enterprise equivalence weights")
    {
        const EnterpriseEquivalence eq;
        CHECK(eq.equivalents((SizeClassArray() << 1, 1, 1, 1, 1).finished()) == 168);
        for (int i = 1; i < kSizeClassCount; ++i) {
            CHECK(eq.weights(i) >= eq.weights(i - 1));
        }
    }

    TEST_CASE("tier selection takes the largest enterprises first")
    {
        const SizeClassArray base = (SizeClassArray() << 800, 100, 60, 30, 10).finished();
        const TierSizes sizes{500, 70};
        const auto one = t3_selection(base, T3Tier::OneMillion, sizes);
        CHECK(one(4) == 1.0);
        CHECK(one(3) == 1.0);
        CHECK(one(2) == doctest::Approx(0.5));
        CHECK(one(1) == 0.0);
        CHECK((base * one).sum() == doctest::Approx(70));
        const auto five = t3_selection(base, T3Tier::FiveMillion, sizes);
        CHECK((base * five).sum() == doctest::Approx(500));
        CHECK((t3_selection(base, T3Tier::AllEnterprises, sizes) == 1.0).all());
        CHECK_THROWS_AS(t3_selection(base, T3Tier::FiveMillion, TierSizes{5000, 70}), DataError);
    }

    TEST_CASE("tier monotonicity per country and in total")
    {
        const auto frame = fixture_frame();
        auto per_country = [&](T3Tier tier) {
            Scenario s;
            s.t3_tier = tier;
            std::map<std::string, double> out;
            for (const auto& i : demand_t3(frame, s, TierSizes{1.2e6, 1.0e6})) {
                out[i.country] += i.quantity;
            }
            return out;
        };
        const auto one = per_country(T3Tier::OneMillion);
        const auto five = per_country(T3Tier::FiveMillion);
        const auto all = per_country(T3Tier::AllEnterprises);
        double t1 = 0, t5 = 0, ta = 0;
        for (const auto& [c, v] : all) {
            const double o = one.count(c) ? one.at(c) : 0.0;
            CHECK(o <= five.at(c) + 1e-9);
            CHECK(five.at(c) <= v + 1e-9);
            t1 += o;
            t5 += five.at(c);
            ta += v;
        }
        CHECK(t1 <= t5);
        CHECK(t5 <= ta);
    }

    TEST_CASE("the scenario table is a total lookup")
    {
        for (const auto& s : {Scenario::baseline(), Scenario::max(), Scenario::min()}) {
            for (const Target t : kTargets) {
                for (const Geotype g : kGeotypes) {
                    int admitted = 0;
                    for (const Unit u : {Unit::Premises, Unit::KmRoad, Unit::KmRail}) {
                        const bool km = u != Unit::Premises;
                        if (km == (t == Target::T2Transport)) {
                            const CostAction a = required_action(t, g, u, s);
                            CHECK(is_per_km(a) == km);
                            ++admitted;
                        } else {
                            CHECK_THROWS_AS(required_action(t, g, u, s), DataError);
                        }
                    }
                    CHECK(admitted == (t == Target::T2Transport ? 2 : 1));
                }
            }
        }
        CHECK(required_action(Target::T1, Geotype::Urban, Unit::Premises, Scenario::max()) == CostAction::FiveGGuaranteed);
        CHECK(required_action(Target::T4, Geotype::Rural, Unit::Premises, Scenario::min()) == CostAction::FiveGNominal);
        CHECK(required_action(Target::T4, Geotype::Rural, Unit::Premises, Scenario::baseline()) == CostAction::FtthNew);
        CHECK(required_action(Target::T4, Geotype::ExtremelyRural, Unit::Premises, Scenario::baseline()) ==
              CostAction::FiveGNominal);
        CHECK(required_action(Target::T2Transport, Geotype::Rural, Unit::KmRail, Scenario::max()) ==
              CostAction::FiveGRailGuaranteedKm);
    }

    TEST_CASE("one capital per country in T1 demand")
    {
        const auto frame = synthetic_frame(28);
        std::set<std::string> capitals;
        std::set<std::string> countries;
        for (const auto& i : demand_t1(frame, Scenario::max())) {
            capitals.insert(i.region);
            countries.insert(i.country);
            CHECK(i.required_action == CostAction::FiveGGuaranteed);
        }
        CHECK(capitals.size() == 28);
        CHECK(countries.size() == 28);
    }

    TEST_CASE("T1 quantity is the full capital premises")
    {
        const auto frame = fixture_frame();
        const auto items = demand_t1(frame, Scenario::baseline());
        const auto& de = frame.region("DE300");
        double q = 0.0;
        for (const auto& i : items) {
            if (i.region == "DE300") {
                q += i.quantity;
            }
        }
        CHECK(q == doctest::Approx(de.premises()).epsilon(1e-12));
    }

    TEST_CASE("T1 demand is contained in T2 on the urban side of capitals")
    {
        const auto frame = fixture_frame();
        const Scenario s;
        const auto t1 = demand_t1(frame, s);
        const auto t2 = demand_t2(frame, s);
        for (const auto& a : t1) {
            if (!is_urban_side(a.geotype)) {
                continue;
            }
            bool found = false;
            for (const auto& b : t2) {
                if (b.target == Target::T2Urban && b.region == a.region && b.geotype == a.geotype &&
                    b.segment == a.segment) {
                    found = b.quantity >= a.quantity;
                }
            }
            CHECK(found);
        }
        for (const auto& b : t2) {
            if (b.target == Target::T2Urban) {
                CHECK(is_urban_side(b.geotype));
            }
        }
    }

    TEST_CASE("transport km re-sum to the national inputs")
    {
        for (const auto& frame : {fixture_frame(), synthetic_frame(7)}) {
            const auto items = demand_t2(frame, Scenario::baseline());
            for (const auto& c : frame.countries) {
                double road = 0.0;
                double rail = 0.0;
                for (const auto& i : items) {
                    if (i.country != c.code || i.target != Target::T2Transport) {
                        continue;
                    }
                    CHECK(i.segment == Segment::TransportKm);
                    (i.unit == Unit::KmRoad ? road : rail) += i.quantity;
                }
                CHECK(road == doctest::Approx(c.road_km).epsilon(1e-9));
                CHECK(rail == doctest::Approx(c.rail_km).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("fixed paths follow the country technology")
    {
        const auto frame = fixture_frame();
        auto paths = [](const DemandItem& i) {
            std::set<CostAction> out;
            for (const auto& r : i.reuse) {
                out.insert(r.action);
            }
            return out;
        };
        for (const auto& i : demand_t4(frame, Scenario::baseline())) {
            const auto p = paths(i);
            CHECK(p.count(CostAction::UpgradeFtthTo1G) == 1);
            CHECK(p.count(CostAction::UpgradeFttbToFtth) == 1);
            // DE and NL are cable-dominant; FR and CY are not.
            const bool cable = i.country == "DE" || i.country == "NL";
            CHECK(p.count(CostAction::UpgradeDocsis30To31) == (cable ? 1u : 0u));
            const bool fttc = i.country == "DE" || (i.country == "NL" && i.geotype != Geotype::Urban);
            CHECK(p.count(CostAction::UpgradeFttcToFtth) == (fttc ? 1u : 0u));
            const bool five_g = std::count(i.satisfied_by.begin(), i.satisfied_by.end(), TechClass::FiveG) > 0;
            CHECK(five_g == (i.geotype == Geotype::ExtremelyRural));
        }
        for (const auto& i : demand_t4(frame, Scenario::max())) {
            CHECK(paths(i).count(CostAction::UpgradeDocsis30To31) == 0);
        }
        for (const auto& i : demand_t3(frame, Scenario::baseline(), TierSizes{1.2e6, 1.0e6})) {
            const bool d31 = std::count(i.satisfied_by.begin(), i.satisfied_by.end(), TechClass::Docsis31) > 0;
            CHECK(d31 == (i.geotype != Geotype::ExtremelyRural));
            CHECK(i.required_action == CostAction::FtthNew);
            CHECK(i.locations <= i.quantity);
        }
    }

    TEST_CASE("demand quantities are non-negative and carry matching units")
    {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 10; ++trial) {
            test::TempDir dir("targets");
            test::write_random_dataset(rng, dir.path());
            const auto frame = pipeline::build_frame(test::load_ok(dir.path()));
            for (const auto& s : {Scenario::baseline(), Scenario::max(), Scenario::min()}) {
                std::vector<DemandItem> all = demand_t1(frame, s);
                for (auto&& v : {demand_t2(frame, s), demand_t3(frame, s), demand_t4(frame, s)}) {
                    all.insert(all.end(), v.begin(), v.end());
                }
                CHECK(sum_quantity(all) > 0.0);
                for (const auto& i : all) {
                    CHECK(i.quantity >= 0.0);
                    CHECK((i.unit != Unit::Premises) == (i.target == Target::T2Transport));
                }
            }
        }
    }
}
