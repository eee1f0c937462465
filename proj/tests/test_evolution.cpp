#include "gigagap/evolution.hpp"

#include <doctest.h>

#include <random>

using namespace gigagap;
using namespace gigagap::evolution;

namespace {

VintageSummary summary(int vintage, double total, std::map<std::string, double> countries = {})
{
    VintageSummary s;
    s.scenario = targets::Scenario::baseline();
    s.vintage = vintage;
    s.totals = {{"total", total}, {"T1", total / 10}};
    s.country_headline = std::move(countries);
    return s;
}

} // namespace

TEST_SUITE("evolution")
{
    TEST_CASE("two vintages give the published trend")
    {
        const auto evo = compare_vintages({summary(2019, 294.9e9), summary(2017, 341.8e9)});
        CHECK(evo.points.front().first == 2017);
        CHECK(evo.slope / 1e9 == doctest::Approx(-23.45).epsilon(1e-9));
        CHECK(evo.deltas.at("total") == doctest::Approx(-46.9e9));
        REQUIRE(evo.zero_crossing_year);
        CHECK(*evo.zero_crossing_year == 2032);
        CHECK(*evo.zero_crossing == doctest::Approx(2019 + 294.9 / 23.45));
        CHECK(evo.at_2025 == doctest::Approx(294.9e9 - 6 * 23.45e9));
    }

    TEST_CASE("a rising trend has no crossing")
    {
        const auto evo = compare_vintages({summary(2017, 100e9), summary(2019, 120e9)});
        CHECK(evo.slope > 0);
        CHECK_FALSE(evo.zero_crossing);
        CHECK_FALSE(evo.zero_crossing_year);
    }

    TEST_CASE("country increases are listed")
    {
        const auto evo = compare_vintages({summary(2017, 10, {{"A", 5}, {"B", 5}}), summary(2019, 9, {{"A", 3}, {"B", 6}})});
        REQUIRE(evo.increases.size() == 1);
        CHECK(evo.increases[0].country == "B");
        CHECK(evo.increases[0].before == 5);
        CHECK(evo.increases[0].after == 6);
    }

    TEST_CASE("invalid comparisons are rejected")
    {
        CHECK_THROWS_AS(compare_vintages({summary(2019, 1)}), DataError);
        CHECK_THROWS_AS(compare_vintages({summary(2019, 1), summary(2019, 2)}), DataError);
        auto other = summary(2017, 1);
        other.scenario = targets::Scenario::max();
        CHECK_THROWS_AS(compare_vintages({summary(2019, 1), other}), DataError);
        CHECK_THROWS_AS(fit_line({{2019, 1.0}, {2019, 2.0}}), DataError);
    }

    TEST_CASE("least squares recovers exact lines")
    {
        std::mt19937_64 rng(71);
        std::uniform_real_distribution<double> u(-50.0, 50.0);
        for (int i = 0; i < 200; ++i) {
            const double slope = u(rng);
            const double intercept = u(rng) * 1e3;
            std::vector<std::pair<int, double>> pts;
            for (int year = 2013; year <= 2021; year += 2) {
                pts.emplace_back(year, intercept + slope * year);
            }
            const auto fit = fit_line(pts);
            CHECK(fit.slope == doctest::Approx(slope).epsilon(1e-7));
            for (const auto& [x, y] : pts) {
                CHECK(fit.intercept + fit.slope * x == doctest::Approx(y).epsilon(1e-9));
            }
        }
    }
}
