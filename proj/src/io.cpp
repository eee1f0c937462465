#include "gigagap/io.hpp"

#include "gigagap/csv.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#ifndef GIGAGAP_DEFAULTS_DIR
#define GIGAGAP_DEFAULTS_DIR "data/defaults"
#endif

namespace gigagap::io {

namespace fs = std::filesystem;

bool ValidationReport::passed() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const
{
    return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(),
                                                  [](const Issue& i) { return i.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return issues.size() - error_count(); }

void ValidationReport::error(std::string file, int row, std::string message)
{
    issues.push_back({Severity::Error, std::move(file), row, std::move(message)});
}

void ValidationReport::warning(std::string file, int row, std::string message)
{
    issues.push_back({Severity::Warning, std::move(file), row, std::move(message)});
}

std::string ValidationReport::to_text() const
{
    std::ostringstream out;
    for (const auto& i : issues) {
        out << (i.severity == Severity::Error ? "error " : "warning ") << i.file << ':' << i.row << ": "
            << i.message << '\n';
    }
    return out.str();
}

fs::path bundled_defaults_dir() { return fs::path(GIGAGAP_DEFAULTS_DIR); }

namespace {

// One input file with its column positions resolved.
class Sheet {
public:
    Sheet(std::string name, ValidationReport& report)
        : name_(std::move(name))
        , report_(report)
    {
    }

    const std::string& name() const { return name_; }

    /// Reads `path`; returns false if the file is unusable (already reported).
    bool open(const fs::path& path, const std::vector<std::string>& required,
              const std::vector<std::string>& optional = {})
    {
        if (!fs::exists(path)) {
            report_.error(name_, 0, "missing file");
            return false;
        }
        try {
            table_ = csv::read(path);
        } catch (const IoError& e) {
            report_.error(name_, 0, e.what());
            return false;
        }
        bool ok = true;
        for (const auto& col : required) {
            if (!table_.column(col)) {
                report_.error(name_, 1, "missing column " + col);
                ok = false;
            }
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < table_.header.size(); ++i) {
            const auto& h = table_.header[i];
            if (!seen.insert(h).second) {
                report_.error(name_, 1, "duplicate column " + h);
                ok = false;
            }
            const bool known = std::find(required.begin(), required.end(), h) != required.end() ||
                               std::find(optional.begin(), optional.end(), h) != optional.end();
            if (!known) {
                report_.warning(name_, 1, "ignoring unknown column " + h);
            }
            index_[h] = i;
        }
        for (const int line : table_.malformed) {
            report_.error(name_, line, "unterminated quoted field");
        }
        return ok;
    }

    /// Rows with the header's field count; others are reported and skipped.
    std::vector<const csv::Row*> rows() const
    {
        std::vector<const csv::Row*> out;
        for (const auto& r : table_.rows) {
            if (r.fields.size() != table_.header.size()) {
                report_.error(name_, r.line,
                              "expected " + std::to_string(table_.header.size()) + " fields, found " +
                                  std::to_string(r.fields.size()));
                continue;
            }
            out.push_back(&r);
        }
        return out;
    }

    bool has(const std::string& col) const { return index_.count(col) != 0; }

    std::string text(const csv::Row& r, const std::string& col) const { return r.fields[index_.at(col)]; }

    std::optional<double> number(const csv::Row& r, const std::string& col) const
    {
        const auto v = csv::to_double(text(r, col));
        if (!v) {
            report_.error(name_, r.line, "column " + col + ": '" + text(r, col) + "' is not a number");
        }
        return v;
    }

    std::optional<int> integer(const csv::Row& r, const std::string& col) const
    {
        const auto v = csv::to_int(text(r, col));
        if (!v) {
            report_.error(name_, r.line, "column " + col + ": '" + text(r, col) + "' is not an integer");
        }
        return v;
    }

    template <class E>
    std::optional<E> token(const csv::Row& r, const std::string& col) const
    {
        const auto v = parse<E>(text(r, col));
        if (!v) {
            report_.error(name_, r.line, "column " + col + ": unknown value '" + text(r, col) + "'");
        }
        return v;
    }

    void error(const csv::Row& r, std::string message) const { report_.error(name_, r.line, std::move(message)); }
    void warning(const csv::Row& r, std::string message) const
    {
        report_.warning(name_, r.line, std::move(message));
    }

private:
    std::string name_;
    ValidationReport& report_;
    csv::Table table_;
    std::map<std::string, std::size_t> index_;
};

std::optional<bool> parse_flag(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "true" || s == "1" || s == "yes") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no") {
        return false;
    }
    return std::nullopt;
}

fs::path resolve(const fs::path& dir, const LoadOptions& options, const std::string& name)
{
    const fs::path local = dir / name;
    if (fs::exists(local) || options.defaults_dir.empty()) {
        return local;
    }
    return options.defaults_dir / name;
}

void load_countries(const fs::path& dir, Dataset& ds, ValidationReport& rep)
{
    Sheet s("countries.csv", rep);
    if (!s.open(dir / "countries.csv",
                {"code", "labour_index", "prep_geo", "prep_housing", "prep_regulation", "dominant_fixed_tech",
                 "road_km", "rail_km", "capital_region"},
                {"fttp_band", "docsis_band"})) {
        return;
    }
    std::set<std::string> codes;
    for (const auto* r : s.rows()) {
        geo::Country c;
        c.code = s.text(*r, "code");
        bool ok = !c.code.empty();
        if (c.code.empty()) {
            s.error(*r, "empty country code");
        } else if (!codes.insert(c.code).second) {
            s.error(*r, "duplicate country " + c.code);
            ok = false;
        }
        const auto labour = s.number(*r, "labour_index");
        if (labour && !(*labour > 0.0)) {
            s.error(*r, "labour_index must be positive");
            ok = false;
        }
        std::array<int, 3> prep{};
        const char* prep_cols[] = {"prep_geo", "prep_housing", "prep_regulation"};
        for (int k = 0; k < 3; ++k) {
            const auto v = s.number(*r, prep_cols[k]);
            if (!v) {
                ok = false;
                continue;
            }
            try {
                prep[static_cast<std::size_t>(k)] = geo::PreparednessFactor::component_from_fraction(*v);
            } catch (const DataError& e) {
                s.error(*r, std::string("column ") + prep_cols[k] + ": " + e.what());
                ok = false;
            }
        }
        const auto tech = s.token<FixedTech>(*r, "dominant_fixed_tech");
        const auto road = s.number(*r, "road_km");
        const auto rail = s.number(*r, "rail_km");
        for (const auto& [v, col] : {std::pair{road, "road_km"}, std::pair{rail, "rail_km"}}) {
            if (v && *v < 0.0) {
                s.error(*r, std::string(col) + " must be non-negative");
                ok = false;
            }
        }
        std::optional<ShareBand> fttp = ShareBand::Below10;
        std::optional<ShareBand> docsis = ShareBand::Below10;
        if (s.has("fttp_band")) {
            fttp = s.token<ShareBand>(*r, "fttp_band");
        }
        if (s.has("docsis_band")) {
            docsis = s.token<ShareBand>(*r, "docsis_band");
        }
        c.capital_region = s.text(*r, "capital_region");
        if (c.capital_region.empty()) {
            s.error(*r, "country " + c.code + " has no capital region");
            ok = false;
        }
        if (!ok || !labour || !tech || !road || !rail || !fttp || !docsis) {
            continue;
        }
        c.labour_index = *labour;
        c.preparedness = geo::PreparednessFactor(prep[0], prep[1], prep[2]);
        c.dominant_fixed_tech = *tech;
        c.road_km = *road;
        c.rail_km = *rail;
        c.fttp_band = *fttp;
        c.docsis_band = *docsis;
        ds.countries.push_back(std::move(c));
    }
}

void load_regions(const fs::path& dir, Dataset& ds, const std::set<std::string>& countries,
                  std::map<std::string, int>& region_lines, ValidationReport& rep)
{
    Sheet s("regions.csv", rep);
    if (!s.open(dir / "regions.csv", {"id", "country", "population", "area_km2", "households"})) {
        return;
    }
    for (const auto* r : s.rows()) {
        geo::Region g;
        g.id = s.text(*r, "id");
        g.country = s.text(*r, "country");
        bool ok = true;
        if (g.id.empty()) {
            s.error(*r, "empty region id");
            ok = false;
        } else if (region_lines.count(g.id) != 0) {
            s.error(*r, "duplicate region " + g.id);
            ok = false;
        }
        if (countries.count(g.country) == 0) {
            s.error(*r, "region " + g.id + " refers to unknown country " + g.country);
            ok = false;
        }
        const auto pop = s.number(*r, "population");
        const auto area = s.number(*r, "area_km2");
        const auto hh = s.number(*r, "households");
        if (pop && *pop < 0.0) {
            s.error(*r, "population must be non-negative");
            ok = false;
        }
        if (area && !(*area > 0.0)) {
            s.error(*r, "area_km2 must be positive");
            ok = false;
        }
        if (hh && *hh < 0.0) {
            s.error(*r, "households must be non-negative");
            ok = false;
        }
        if (!ok || !pop || !area || !hh) {
            continue;
        }
        g.population = *pop;
        g.area_km2 = *area;
        g.households = *hh;
        region_lines[g.id] = r->line;
        ds.regions.push_back(std::move(g));
    }
}

void load_localities(const fs::path& dir, Dataset& ds, const std::map<std::string, int>& region_lines,
                     ValidationReport& rep)
{
    Sheet s("localities.csv", rep);
    if (!s.open(dir / "localities.csv", {"id", "region", "population", "area_km2", "degurba"})) {
        return;
    }
    std::set<std::string> ids;
    for (const auto* r : s.rows()) {
        geo::Locality loc;
        loc.id = s.text(*r, "id");
        loc.region = s.text(*r, "region");
        bool ok = true;
        if (!ids.insert(loc.id).second) {
            s.error(*r, "duplicate locality " + loc.id);
            ok = false;
        }
        if (region_lines.count(loc.region) == 0) {
            s.error(*r, "locality " + loc.id + " refers to unknown region " + loc.region);
            ok = false;
        }
        const auto pop = s.number(*r, "population");
        const auto area = s.number(*r, "area_km2");
        const auto deg = s.token<Degurba>(*r, "degurba");
        if (pop && *pop < 0.0) {
            s.error(*r, "population must be non-negative");
            ok = false;
        }
        if (area && !(*area > 0.0)) {
            s.error(*r, "locality " + loc.id + " has non-positive area");
            ok = false;
        }
        if (!ok || !pop || !area || !deg) {
            continue;
        }
        loc.population = *pop;
        loc.area_km2 = *area;
        loc.degurba = *deg;
        ds.localities.push_back(std::move(loc));
    }
}

void check_locality_totals(const Dataset& ds, const std::map<std::string, int>& region_lines,
                           ValidationReport& rep)
{
    std::map<std::string, std::vector<geo::Locality>> by_region;
    for (const auto& l : ds.localities) {
        by_region[l.region].push_back(l);
    }
    for (const auto& r : ds.regions) {
        const int line = region_lines.at(r.id);
        const auto it = by_region.find(r.id);
        if (it == by_region.end()) {
            rep.error("regions.csv", line, "region " + r.id + " has no localities");
            continue;
        }
        const auto m = geo::locality_totals_mismatch(r, it->second);
        const std::string text = "localities of region " + r.id + " differ from region totals by " +
                                 format_number(m.worst() * 100.0) + "%";
        if (m.worst() > geo::kLocalityTotalsTolerance) {
            rep.error("localities.csv", 0, text);
        } else if (m.worst() > 1e-9) {
            rep.warning("localities.csv", 0, text);
        }
    }
}

void load_enterprises(const fs::path& dir, Dataset& ds, const std::set<std::string>& countries,
                      ValidationReport& rep)
{
    Sheet s("enterprises.csv", rep);
    if (!s.open(dir / "enterprises.csv", {"country", "size_class", "count"})) {
        return;
    }
    std::set<std::pair<std::string, int>> seen;
    for (const auto* r : s.rows()) {
        const auto country = s.text(*r, "country");
        const auto size = s.token<SizeClass>(*r, "size_class");
        const auto count = s.number(*r, "count");
        bool ok = true;
        if (countries.count(country) == 0) {
            s.error(*r, "enterprise counts for unknown country " + country);
            ok = false;
        }
        if (count && *count < 0.0) {
            s.error(*r, "count must be non-negative");
            ok = false;
        }
        if (size && !seen.insert({country, index_of(*size)}).second) {
            s.error(*r, "duplicate size class " + std::string(to_string(*size)) + " for " + country);
            ok = false;
        }
        if (!ok || !size || !count) {
            continue;
        }
        auto [it, inserted] = ds.enterprises.try_emplace(country, SizeClassArray::Zero());
        it->second(index_of(*size)) = *count;
    }
}

void note_vintage(int vintage, const Sheet& s, const csv::Row& r, std::optional<int>& dataset_vintage)
{
    if (!dataset_vintage) {
        dataset_vintage = vintage;
    } else if (*dataset_vintage != vintage) {
        s.error(r, "vintage " + std::to_string(vintage) + " differs from dataset vintage " +
                       std::to_string(*dataset_vintage));
    }
}

void load_coverage(const fs::path& dir, Dataset& ds, const std::map<std::string, int>& region_lines,
                   const std::set<std::string>& countries, std::optional<int>& vintage, ValidationReport& rep)
{
    std::map<std::string, std::string> country_of;
    for (const auto& r : ds.regions) {
        country_of[r.id] = r.country;
    }

    Sheet iv("coverage_intervals.csv", rep);
    std::map<std::pair<std::string, int>, std::set<std::string>> covered; // (country, tech) -> regions
    std::map<std::pair<std::string, int>, int> first_line;
    if (iv.open(dir / "coverage_intervals.csv", {"region", "technology", "band_low", "band_high", "vintage"})) {
        std::set<std::pair<std::string, int>> seen;
        for (const auto* r : iv.rows()) {
            coverage::CoverageInterval c;
            c.region = iv.text(*r, "region");
            const auto tech = iv.token<TechClass>(*r, "technology");
            const auto low = iv.number(*r, "band_low");
            const auto high = iv.number(*r, "band_high");
            const auto year = iv.integer(*r, "vintage");
            bool ok = true;
            if (region_lines.count(c.region) == 0) {
                iv.error(*r, "interval for unknown region " + c.region);
                ok = false;
            }
            if (tech && !seen.insert({c.region, index_of(*tech)}).second) {
                iv.error(*r, "duplicate interval for " + c.region + "/" + std::string(to_string(*tech)));
                ok = false;
            }
            if (low && high) {
                if (*low < 0.0 || *high > 1.0) {
                    iv.error(*r, "band outside [0, 1]");
                    ok = false;
                } else if (*low > *high) {
                    iv.error(*r, "band order: low " + format_number(*low) + " exceeds high " + format_number(*high));
                    ok = false;
                } else if (!coverage::is_published_band(*low, *high)) {
                    iv.error(*r, "band " + format_number(*low) + "-" + format_number(*high) +
                                     " is not one of the published bands");
                    ok = false;
                }
            }
            if (year) {
                note_vintage(*year, iv, *r, vintage);
            }
            if (!ok || !tech || !low || !high || !year) {
                continue;
            }
            c.technology = *tech;
            c.low = *low;
            c.high = *high;
            const std::pair key{country_of[c.region], index_of(*tech)};
            covered[key].insert(c.region);
            first_line.try_emplace(key, r->line);
            ds.intervals.push_back(std::move(c));
        }
    }

    Sheet nf("coverage_national.csv", rep);
    std::set<std::pair<std::string, int>> national_keys;
    if (nf.open(dir / "coverage_national.csv", {"country", "technology", "coverage", "vintage"})) {
        for (const auto* r : nf.rows()) {
            coverage::NationalFigure n;
            n.country = nf.text(*r, "country");
            const auto tech = nf.token<TechClass>(*r, "technology");
            const auto value = nf.number(*r, "coverage");
            const auto year = nf.integer(*r, "vintage");
            bool ok = true;
            if (countries.count(n.country) == 0) {
                nf.error(*r, "national figure for unknown country " + n.country);
                ok = false;
            }
            if (value && !(*value >= 0.0 && *value <= 1.0)) {
                nf.error(*r, "coverage outside [0, 1]");
                ok = false;
            }
            if (tech && !national_keys.insert({n.country, index_of(*tech)}).second) {
                nf.error(*r, "duplicate national figure for " + n.country + "/" + std::string(to_string(*tech)));
                ok = false;
            }
            if (year) {
                note_vintage(*year, nf, *r, vintage);
            }
            if (!ok || !tech || !value || !year) {
                continue;
            }
            n.technology = *tech;
            n.coverage = *value;
            n.vintage = *year;
            if (covered.count({n.country, index_of(*tech)}) == 0) {
                nf.warning(*r, "no regional intervals for " + n.country + "/" + std::string(to_string(*tech)) +
                                   "; figure unused");
            }
            ds.national.push_back(std::move(n));
        }
    }

    std::map<std::string, std::vector<std::string>> regions_of;
    for (const auto& r : ds.regions) {
        regions_of[r.country].push_back(r.id);
    }
    for (const auto& [key, present] : covered) {
        const auto& [country, tech] = key;
        const auto tech_name = std::string(to_string(static_cast<TechClass>(tech)));
        for (const auto& id : regions_of[country]) {
            if (present.count(id) == 0) {
                rep.error("coverage_intervals.csv", 0, "region " + id + " has no " + tech_name +
                                                           " interval while other regions of " + country + " do");
            }
        }
        if (national_keys.count(key) == 0) {
            rep.error("coverage_national.csv", 0, "no national figure for " + country + "/" + tech_name);
        }
    }
}

void load_costs(const fs::path& dir, const LoadOptions& options, Dataset& ds, ValidationReport& rep)
{
    const fs::path refs_path = resolve(dir, options, "cost_references.csv");
    Sheet s("cost_references.csv", rep);
    if (s.open(refs_path, {"action", "geotype", "value_eur", "price_year", "granularity", "source_id"})) {
        for (const auto* r : s.rows()) {
            costs::CostReference ref;
            const auto action = s.token<CostAction>(*r, "action");
            const auto geo_text = s.text(*r, "geotype");
            std::optional<Geotype> geotype;
            bool ok = true;
            if (geo_text != "ALL") {
                geotype = s.token<Geotype>(*r, "geotype");
                ok = geotype.has_value();
            }
            const auto value = s.number(*r, "value_eur");
            const auto year = s.integer(*r, "price_year");
            const auto gran = s.token<Granularity>(*r, "granularity");
            if (value && *value < 0.0) {
                s.error(*r, "value_eur must be non-negative");
                ok = false;
            }
            if (year && (*year < 1995 || *year > 2030)) {
                s.error(*r, "price_year " + std::to_string(*year) + " outside 1995-2030");
                ok = false;
            }
            if (action && ok && is_per_km(*action) == geotype.has_value()) {
                s.error(*r, is_per_km(*action) ? "per-km actions take geotype ALL"
                                               : "per-premise actions need a geotype");
                ok = false;
            }
            if (!ok || !action || !value || !year || !gran) {
                continue;
            }
            ref.action = *action;
            ref.geotype = geotype;
            ref.value = *value;
            ref.price_year = *year;
            ref.granularity = *gran;
            ref.source_id = s.text(*r, "source_id");
            ds.cost_references.push_back(std::move(ref));
        }
    }

    Sheet p("price_index.csv", rep);
    if (p.open(resolve(dir, options, "price_index.csv"), {"year", "multiplier"})) {
        for (const auto* r : p.rows()) {
            const auto year = p.integer(*r, "year");
            const auto mult = p.number(*r, "multiplier");
            if (!year || !mult) {
                continue;
            }
            if (!(*mult > 0.0)) {
                p.error(*r, "multiplier must be positive");
                continue;
            }
            if (!ds.price_index.emplace(*year, *mult).second) {
                p.error(*r, "duplicate year " + std::to_string(*year));
            }
        }
    }
}

void load_cohesion(const fs::path& dir, Dataset& ds, const std::map<std::string, int>& region_lines,
                   ValidationReport& rep)
{
    if (!fs::exists(dir / "cohesion.csv")) {
        return;
    }
    Sheet s("cohesion.csv", rep);
    if (!s.open(dir / "cohesion.csv", {"region", "is_cohesion"})) {
        return;
    }
    for (const auto* r : s.rows()) {
        const auto region = s.text(*r, "region");
        const auto flag = parse_flag(s.text(*r, "is_cohesion"));
        if (region_lines.count(region) == 0) {
            s.error(*r, "cohesion flag for unknown region " + region);
            continue;
        }
        if (!flag) {
            s.error(*r, "is_cohesion must be true or false");
            continue;
        }
        if (!ds.cohesion.emplace(region, *flag).second) {
            s.error(*r, "duplicate cohesion flag for " + region);
        }
    }
    for (const auto& [id, line] : region_lines) {
        if (ds.cohesion.count(id) == 0) {
            rep.error("cohesion.csv", 0, "region " + id + " has no cohesion flag");
        }
    }
}

} // namespace

LoadResult load_dataset(const fs::path& dir, const LoadOptions& options)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError("dataset directory " + dir.string() + " does not exist or is not a directory");
    }
    LoadResult result;
    auto& rep = result.report;
    Dataset ds;

    load_countries(dir, ds, rep);
    std::set<std::string> country_codes;
    for (const auto& c : ds.countries) {
        country_codes.insert(c.code);
    }
    std::map<std::string, int> region_lines;
    load_regions(dir, ds, country_codes, region_lines, rep);
    for (const auto& c : ds.countries) {
        const auto it = std::find_if(ds.regions.begin(), ds.regions.end(),
                                     [&](const geo::Region& r) { return r.id == c.capital_region; });
        if (it == ds.regions.end()) {
            rep.error("countries.csv", 0, "capital region " + c.capital_region + " of " + c.code + " does not exist");
        } else if (it->country != c.code) {
            rep.error("countries.csv", 0,
                      "capital region " + c.capital_region + " of " + c.code + " belongs to " + it->country);
        }
    }
    load_localities(dir, ds, region_lines, rep);
    check_locality_totals(ds, region_lines, rep);
    load_enterprises(dir, ds, country_codes, rep);

    std::optional<int> vintage;
    load_coverage(dir, ds, region_lines, country_codes, vintage, rep);
    if (!vintage) {
        rep.error("coverage_intervals.csv", 0, "dataset has no coverage vintage");
    }
    load_costs(dir, options, ds, rep);
    load_cohesion(dir, ds, region_lines, rep);

    if (rep.passed()) {
        geo::allocate_enterprises(ds.regions, ds.enterprises);
        ds.vintage = *vintage;
        result.dataset = std::move(ds);
    }
    return result;
}

} // namespace gigagap::io
