#include "gigagap/report.hpp"

#include "gigagap/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gigagap::report {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

double round_billions(double eur) { return std::round(eur / 1e8) / 10.0; }

void write_file(const fs::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Json scenario_json(const targets::Scenario& s)
{
    Json j;
    j["name"] = targets::preset_name(s);
    j["t1_quality"] = to_string(s.t1_quality);
    j["t2_quality"] = to_string(s.t2_quality);
    j["t3_tier"] = to_string(s.t3_tier);
    j["t4_wireless_scope"] = to_string(s.t4_wireless_scope);
    j["docsis_upgrade"] = s.docsis_upgrade;
    return j;
}

targets::Scenario scenario_from_json(const Json& j)
{
    targets::Scenario s;
    for (const char* key : {"t1_quality", "t2_quality", "t3_tier", "t4_wireless_scope"}) {
        targets::apply_field(s, key, j.at(key).get<std::string>());
    }
    s.docsis_upgrade = j.at("docsis_upgrade").get<bool>();
    return s;
}

Json totals_json(const gap::Totals& totals, bool billions_only)
{
    Json j = Json::object();
    for (const auto key : gap::kTotalKeys) {
        const auto it = totals.find(std::string(key));
        if (it != totals.end()) {
            j[std::string(key)] = billions_only ? round_billions(it->second) : it->second;
        }
    }
    return j;
}

Json breakdown_json(const gap::Breakdown& b)
{
    Json rows = Json::array();
    for (const auto& r : b.rows) {
        Json row;
        row["category"] = r.category;
        row["investment_eur"] = r.investment;
        row["share"] = r.share;
        row["quantity"] = r.quantity;
        row["average_per_unit_eur"] = r.average_per_unit;
        rows.push_back(row);
    }
    return rows;
}

Json histogram_json(const gap::Histogram& h)
{
    Json j;
    Json buckets = Json::array();
    for (const auto& b : h.buckets) {
        buckets.push_back({{"low", b.low}, {"high", b.high}, {"regions", b.regions},
                           {"population_share", b.population_share}});
    }
    j["buckets"] = buckets;
    j["at_most_half_regions"] = h.at_most_half_regions;
    j["at_most_half_population_share"] = h.at_most_half_population_share;
    j["above_half_regions"] = h.above_half_regions;
    j["above_half_population_share"] = h.above_half_population_share;
    return j;
}

Json operators_json(const gap::OperatorOutcome& o)
{
    Json j;
    j["fixed_per_year_eur"] = o.inputs.fixed_per_year;
    j["fixed_effective_fraction"] = o.inputs.fixed_effective_fraction;
    j["wireless_per_year_eur"] = o.inputs.wireless_per_year;
    j["horizon_years"] = o.inputs.horizon_years;
    j["fixed_gross_eur"] = o.inputs.fixed_gross();
    j["fixed_pool_eur"] = o.fixed_pool;
    j["wireless_pool_eur"] = o.wireless_pool;
    j["fixed_consumed_eur"] = o.fixed_consumed;
    j["wireless_consumed_eur"] = o.wireless_consumed;
    j["total_eur"] = o.total;
    j["expected_share"] = o.total > 0.0 ? (o.fixed_consumed + o.wireless_consumed) / o.total : 0.0;
    j["residual_eur"] = o.residual;
    j["residual_share"] = o.total > 0.0 ? o.residual / o.total : 0.0;
    Json by_country = Json::object();
    for (const auto& [c, v] : o.residual_by_country) {
        by_country[c] = v;
    }
    j["residual_by_country_eur"] = by_country;
    Json clamped = Json::object();
    for (const auto& [c, v] : o.clamped_by_country) {
        clamped[c] = v;
    }
    j["clamped_by_country_eur"] = clamped;
    return j;
}

std::string number(double v) { return format_number(v); }

std::string cells_csv(const gap::GapReport& report)
{
    std::ostringstream out;
    csv::write_row(out, {"target", "segment", "region", "geotype", "action", "unit", "quantity", "unit_cost_eur",
                         "investment_eur"});
    for (const auto& c : report.cells) {
        csv::write_row(out, {std::string(to_string(c.target)), std::string(to_string(c.segment)), c.region,
                             std::string(to_string(c.geotype)), std::string(to_string(c.action)),
                             std::string(to_string(c.unit)), number(c.quantity), number(c.unit_cost),
                             number(c.investment)});
    }
    return out.str();
}

std::string histogram_csv(const gap::Histogram& h)
{
    std::ostringstream out;
    csv::write_row(out, {"bucket_low", "bucket_high", "regions", "population_share"});
    for (const auto& b : h.buckets) {
        csv::write_row(out, {number(b.low), number(b.high), std::to_string(b.regions), number(b.population_share)});
    }
    return out.str();
}

std::string coverage_csv(const coverage::CoverageState& state)
{
    std::ostringstream out;
    csv::write_row(out, {"region", "geotype", "technology", "coverage"});
    for (const auto& [region, m] : state.entries()) {
        for (const Geotype g : kGeotypes) {
            for (const TechClass t : kTechClasses) {
                csv::write_row(out, {region, std::string(to_string(g)), std::string(to_string(t)),
                                     number(m(index_of(g), index_of(t)))});
            }
        }
    }
    return out.str();
}

std::string cost_csv(const costs::CostTable& table)
{
    std::ostringstream out;
    csv::write_row(out, {"action", "geotype", "country", "base_eur", "adjusted_eur"});
    for (const auto& [country, m] : table.adjusted()) {
        for (const CostAction a : kCostActions) {
            const int row = index_of(a);
            if (is_per_km(a)) {
                csv::write_row(out, {std::string(to_string(a)), "ALL", country, number(table.base()(row, 0)),
                                     number(m(row, 0))});
                continue;
            }
            for (const Geotype g : kGeotypes) {
                csv::write_row(out, {std::string(to_string(a)), std::string(to_string(g)), country,
                                     number(table.base()(row, index_of(g))), number(m(row, index_of(g)))});
            }
        }
    }
    return out.str();
}

std::string single_point_evolution(const gap::GapReport& report)
{
    Json j;
    j["format"] = kEvolutionFormat;
    j["scenario"] = scenario_json(report.scenario);
    j["points"] = Json::array({{{"vintage", report.vintage}, {"total_eur", report.totals.at("total")}}});
    j["deltas_eur"] = Json::object();
    j["slope_eur_per_year"] = nullptr;
    j["intercept_eur"] = nullptr;
    j["extrapolated_2025_eur"] = nullptr;
    j["zero_crossing"] = nullptr;
    j["zero_crossing_year"] = nullptr;
    j["increases"] = Json::array();
    return j.dump(2) + "\n";
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string lpad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.insert(0, width - s.size(), ' ');
    }
    return s;
}

std::string percent(double share)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", share * 100.0);
    return buf;
}

} // namespace

std::string billions(double eur)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", round_billions(eur));
    return buf;
}

std::string summary_json(const pipeline::RunResult& run)
{
    const auto& r = run.report;
    Json j;
    j["format"] = kSummaryFormat;
    j["scenario"] = scenario_json(r.scenario);
    j["vintage"] = r.vintage;
    j["composed"] = r.composed;
    Json targets = Json::array();
    for (const Target t : r.computed) {
        targets.push_back(to_string(t));
    }
    j["targets"] = targets;
    j["sharing_fraction"] = run.costs.sharing_fraction();
    j["cell_count"] = r.cells.size();
    j["totals_eur"] = totals_json(r.totals, false);
    j["totals_beur"] = totals_json(r.totals, true);
    Json countries = Json::object();
    for (const auto& [code, totals] : r.country_totals) {
        countries[code] = totals_json(totals, false);
    }
    j["country_totals_eur"] = countries;

    Json breakdowns = Json::object();
    for (const auto d : {gap::Dimension::Geotype, gap::Dimension::UrbanRural, gap::Dimension::Country}) {
        breakdowns[std::string(gap::to_string(d))] = breakdown_json(gap::breakdown(r, d));
    }
    if (!r.cohesion.empty()) {
        breakdowns["COHESION"] = breakdown_json(gap::breakdown(r, gap::Dimension::Cohesion));
    }
    if (r.composed) {
        breakdowns["HOUSEHOLDS_VS_PREMISES"] = breakdown_json(gap::breakdown(r, gap::Dimension::HouseholdsVsPremises));
    }
    j["breakdowns"] = breakdowns;

    Json by_target = Json::object();
    for (const Target t : r.computed) {
        by_target[std::string(to_string(t))] = breakdown_json(gap::breakdown(r, gap::Dimension::Geotype, t));
    }
    j["target_geotype_breakdowns"] = by_target;

    j["operators"] = r.operators ? operators_json(*r.operators) : Json(nullptr);
    j["histogram"] = histogram_json(run.histogram);
    return j.dump(2) + "\n";
}

std::string evolution_json(const evolution::EvolutionReport& evo)
{
    Json j;
    j["format"] = kEvolutionFormat;
    j["scenario"] = scenario_json(evo.scenario);
    Json points = Json::array();
    for (const auto& [year, total] : evo.points) {
        points.push_back({{"vintage", year}, {"total_eur", total}});
    }
    j["points"] = points;
    Json deltas = Json::object();
    for (const auto key : gap::kTotalKeys) {
        if (const auto it = evo.deltas.find(std::string(key)); it != evo.deltas.end()) {
            deltas[std::string(key)] = it->second;
        }
    }
    j["deltas_eur"] = deltas;
    j["slope_eur_per_year"] = evo.slope;
    j["intercept_eur"] = evo.intercept;
    j["extrapolated_2025_eur"] = evo.at_2025;
    j["zero_crossing"] = evo.zero_crossing ? Json(*evo.zero_crossing) : Json(nullptr);
    j["zero_crossing_year"] = evo.zero_crossing_year ? Json(*evo.zero_crossing_year) : Json(nullptr);
    Json inc = Json::array();
    for (const auto& c : evo.increases) {
        inc.push_back({{"country", c.country},
                       {"from_vintage", c.from_vintage},
                       {"to_vintage", c.to_vintage},
                       {"before_eur", c.before},
                       {"after_eur", c.after}});
    }
    j["increases"] = inc;
    return j.dump(2) + "\n";
}

void write_reports(const pipeline::RunResult& run, const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
    write_file(dir / "gap_cells.csv", cells_csv(run.report));
    write_file(dir / "gap_summary.json", summary_json(run));
    write_file(dir / "histogram.csv", histogram_csv(run.histogram));
    write_file(dir / "evolution.json", single_point_evolution(run.report));
    write_file(dir / "coverage_point.csv", coverage_csv(run.coverage));
    write_file(dir / "cost_table.csv", cost_csv(run.costs));
}

void write_evolution(const evolution::EvolutionReport& evo, const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
    write_file(dir / "evolution.json", evolution_json(evo));
}

evolution::VintageSummary read_summary(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + " is not valid JSON: " + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != kSummaryFormat) {
            throw DataError(path.string() + " is not a gigagap summary");
        }
        evolution::VintageSummary s;
        s.scenario = scenario_from_json(j.at("scenario"));
        s.vintage = j.at("vintage").get<int>();
        for (const auto& [key, value] : j.at("totals_eur").items()) {
            s.totals[key] = value.get<double>();
        }
        for (const auto& [country, totals] : j.at("country_totals_eur").items()) {
            s.country_headline[country] = totals.at("total").get<double>();
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + " is missing summary fields: " + e.what());
    }
}

std::string summary_table(const gap::GapReport& report)
{
    std::ostringstream out;
    out << "scenario " << targets::preset_name(report.scenario) << ", vintage " << report.vintage
        << ", investment in b EUR\n";
    const std::pair<const char*, const char*> rows[] = {
        {"T1", "T1"},
        {"T2A", "T2A"},
        {"T2B", "T2B"},
        {"T2 once T1", "T2_once_T1"},
        {"T3", "T3"},
        {"T4", "T4"},
        {"EGS (premises)", "EGS_premises"},
        {"EGS (premises + companies)", "EGS_premises_companies"},
    };
    for (const auto& [label, key] : rows) {
        const auto it = report.totals.find(key);
        out << pad(label, 30) << lpad(it == report.totals.end() ? "-" : billions(it->second), 10) << '\n';
    }
    if (report.operators) {
        const auto& o = *report.operators;
        const double expected = o.fixed_consumed + o.wireless_consumed;
        out << pad("Expected operators' investment", 30) << lpad(billions(expected), 10) << "  "
            << percent(o.total > 0.0 ? expected / o.total : 0.0) << '\n';
        out << pad("Expected investment gap", 30) << lpad(billions(o.residual), 10) << "  "
            << percent(o.total > 0.0 ? o.residual / o.total : 0.0) << '\n';
    }
    return out.str();
}

std::string evolution_table(const evolution::EvolutionReport& evo)
{
    std::ostringstream out;
    out << "scenario " << targets::preset_name(evo.scenario) << ", investment in b EUR\n";
    for (const auto& [year, total] : evo.points) {
        out << pad(std::to_string(year), 30) << lpad(billions(total), 10) << '\n';
    }
    for (const auto key : gap::kTotalKeys) {
        if (const auto it = evo.deltas.find(std::string(key)); it != evo.deltas.end()) {
            out << pad("delta " + std::string(key), 30) << lpad(billions(it->second), 10) << '\n';
        }
    }
    out << pad("slope per year", 30) << lpad(billions(evo.slope), 10) << '\n';
    out << pad("extrapolated 2025", 30) << lpad(billions(evo.at_2025), 10) << '\n';
    out << pad("zero crossing year", 30)
        << lpad(evo.zero_crossing_year ? std::to_string(*evo.zero_crossing_year) : "none", 10) << '\n';
    for (const auto& c : evo.increases) {
        out << "increase " << c.country << " " << c.from_vintage << "->" << c.to_vintage << ": "
            << billions(c.before) << " -> " << billions(c.after) << '\n';
    }
    return out.str();
}

std::string breakdown_table(const gap::Breakdown& b)
{
    std::ostringstream out;
    out << gap::to_string(b.dimension);
    if (b.target) {
        out << " for " << to_string(*b.target);
    }
    out << ", investment in b EUR\n";
    const bool ratio = b.dimension == gap::Dimension::HouseholdsVsPremises;
    for (const auto& r : b.rows) {
        out << pad(r.category, 30) << lpad(billions(r.investment), 10) << lpad(percent(r.share), 10);
        if (!ratio) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.0f", r.average_per_unit);
            out << lpad(buf, 10) << " EUR/unit";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace gigagap::report
