#include "gigagap/costs.hpp"
#include "gigagap/io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace gigagap;
using namespace gigagap::costs;

namespace {

geo::Country country(std::string code, double labour, geo::PreparednessFactor prep = {})
{
    geo::Country c;
    c.code = std::move(code);
    c.labour_index = labour;
    c.preparedness = prep;
    return c;
}

struct Defaults {
    std::vector<CostReference> refs;
    PriceIndex index;
};

// The bundled EU reference costs, read through a fixture that uses them.
Defaults bundled()
{
    const auto ds = test::load_ok(test::data_dir("fixture-2019"));
    return {ds.cost_references, ds.price_index};
}

} // namespace

TEST_SUITE("costs")
{
    TEST_CASE("indexation to 2019 prices")
    {
        const PriceIndex idx{{2013, 1.08}, {2019, 1.0}};
        CHECK(index_to_2019(1000, 2019, idx) == 1000);
        CHECK(index_to_2019(1000, 2013, idx) == doctest::Approx(1080));
        CHECK_THROWS_AS(index_to_2019(1000, 2010, idx), DataError);
        CHECK_THROWS_AS(index_to_2019(-1, 2019, idx), DataError);
    }

    TEST_CASE("references merge by granularity weight")
    {
        std::vector<CostReference> refs(2);
        refs[0].value = 600;
        refs[0].granularity = Granularity::Local;
        refs[1].value = 300;
        refs[1].granularity = Granularity::Eu;
        CHECK(merge_references(refs) == doctest::Approx((5 * 600.0 + 300.0) / 6.0));
        CHECK(merge_references(std::span(refs).first(1)) == 600);
        CHECK_THROWS_AS(merge_references({}), DataError);
        GranularityWeights zero;
        zero.by_granularity.fill(0.0);
        CHECK_THROWS_AS(merge_references(refs, zero), DataError);
    }

    TEST_CASE("labour adjustment scales only the civil works share")
    {
        CHECK(adjust_labour(1000, 1.5) == 1350);
        CHECK(adjust_labour(1000, 0.5) == 650);
        CHECK_THROWS_AS(adjust_labour(1000, 0), DataError);
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> c(0.0, 1e5);
        for (int i = 0; i < 1000; ++i) {
            const double v = c(rng);
            CHECK(adjust_labour(v, 1.0) == v);
        }
    }

    TEST_CASE("preparedness and sharing are linear in cost")
    {
        CHECK(apply_preparedness(1000, geo::PreparednessFactor(-10, -10, -10)) == doctest::Approx(1300));
        CHECK(apply_preparedness(1000, geo::PreparednessFactor(10, 10, 10)) == doctest::Approx(700));
        CHECK(apply_sharing(1000, 0.12) == doctest::Approx(880));
        CHECK_THROWS_AS(apply_sharing(1000, 0.13), DataError);
        CHECK_THROWS_AS(apply_sharing(1000, -0.01), DataError);
        std::mt19937_64 rng(32);
        std::uniform_real_distribution<double> c(0.0, 1e4);
        std::uniform_real_distribution<double> a(0.0, 10.0);
        std::uniform_real_distribution<double> share(0.0, 0.12);
        std::uniform_int_distribution<int> comp(-1, 1);
        for (int i = 0; i < 1000; ++i) {
            const double v = c(rng);
            const double k = a(rng);
            const geo::PreparednessFactor f(10 * comp(rng), 10 * comp(rng), 10 * comp(rng));
            const double s = share(rng);
            CHECK(apply_preparedness(k * v, f) == doctest::Approx(k * apply_preparedness(v, f)).epsilon(1e-12));
            CHECK(apply_sharing(k * v, s) == doctest::Approx(k * apply_sharing(v, s)).epsilon(1e-12));
        }
    }

    TEST_CASE("neutral adjustments reproduce the bundled table")
    {
        const auto d = bundled();
        const std::vector<geo::Country> neutral{country("EU", 1.0)};
        const auto table = build_cost_table(d.refs, d.index, neutral);
        CHECK((table.adjusted().at("EU") == table.base()).all());
        CHECK(table.base_cost(CostAction::FtthNew, Geotype::Urban) == 561);
        CHECK(table.base_cost(CostAction::FiveGRoadGuaranteedKm, Geotype::Rural) == 115000);
        CHECK_THROWS_AS(table.unit_cost(CostAction::FtthNew, Geotype::Urban, "XX"), DataError);
    }

    TEST_CASE("adjustment order is labour, then preparedness, then sharing")
    {
        const auto d = bundled();
        const geo::PreparednessFactor prep(-10, 0, 10);
        const geo::PreparednessFactor de(-10, -10, -10);
        CostConfig cfg;
        cfg.sharing_fraction = 0.05;
        const std::vector<geo::Country> cs{country("X", 1.37, de), country("Y", 0.61, prep)};
        const auto table = build_cost_table(d.refs, d.index, cs, cfg);
        for (const auto& c : cs) {
            for (const CostAction a : kCostActions) {
                for (const Geotype g : kGeotypes) {
                    const double base = table.base_cost(a, g);
                    const double expected =
                        apply_sharing(apply_preparedness(adjust_labour(base, c.labour_index), c.preparedness), 0.05);
                    // Exact: the table is built by this chain and no other.
                    CHECK(table.unit_cost(a, g, c.code) == expected);
                }
            }
        }
        // Pinned value: 561 * (0.3 + 0.7 * 1.37) * 1.3 * 0.95.
        CHECK(table.unit_cost(CostAction::FtthNew, Geotype::Urban, "X") ==
              doctest::Approx(561.0 * (0.3 + 0.7 * 1.37) * 1.3 * 0.95).epsilon(1e-15));
    }

    TEST_CASE("worst-case adjustments keep costs non-negative")
    {
        const auto d = bundled();
        CostConfig cfg;
        cfg.sharing_fraction = kMaxSharingFraction;
        std::vector<geo::Country> cs;
        int n = 0;
        for (double labour : {0.01, 0.5, 1.0, 3.0}) {
            for (int p : {-10, 0, 10}) {
                cs.push_back(country("C" + std::to_string(n++), labour, geo::PreparednessFactor(p, p, p)));
            }
        }
        const auto table = build_cost_table(d.refs, d.index, cs, cfg);
        for (const auto& [code, m] : table.adjusted()) {
            CHECK((m >= 0.0).all());
        }
    }

    TEST_CASE("table building lists every problem at once")
    {
        auto d = bundled();
        // Drop every per-km rail reference and misfile one per-premise reference.
        std::erase_if(d.refs, [](const CostReference& r) { return r.action == CostAction::FiveGRailNominalKm; });
        auto bad = d.refs.front();
        bad.geotype.reset();
        bad.source_id = "broken";
        d.refs.push_back(bad);
        auto old = d.refs.front();
        old.price_year = 2001;
        old.source_id = "old";
        d.refs.push_back(old);
        CostConfig cfg;
        cfg.sharing_fraction = 0.5;
        try {
            build_cost_table(d.refs, d.index, std::vector<geo::Country>{country("X", 1.0)}, cfg);
            FAIL("expected CostTableError");
        } catch (const CostTableError& e) {
            CHECK(e.problems.size() == 4);
        }
    }
}
