#include "support.hpp"

#include "gigagap/coverage.hpp"
#include "gigagap/geo.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#ifndef GIGAGAP_SOURCE_DIR
#error "GIGAGAP_SOURCE_DIR must be defined"
#endif

namespace gigagap::test {

fs::path source_dir() { return GIGAGAP_SOURCE_DIR; }

fs::path data_dir(std::string_view name) { return source_dir() / "data" / name; }

TempDir::TempDir(std::string_view tag)
{
    static std::atomic<int> counter{0};
    std::random_device rd;
    const auto base = fs::temp_directory_path();
    for (;;) {
        auto candidate = base / ("gigagap-" + std::string(tag) + "-" + std::to_string(rd()) + "-" +
                                 std::to_string(counter++));
        if (fs::create_directories(candidate)) {
            path_ = candidate;
            return;
        }
    }
}

TempDir::~TempDir()
{
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + p.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, std::string_view text)
{
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + p.string());
    }
}

void copy_dir(const fs::path& from, const fs::path& to)
{
    fs::create_directories(to);
    fs::copy(from, to, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

bool replace_once(const fs::path& file, std::string_view from, std::string_view to)
{
    auto text = read_file(file);
    const auto pos = text.find(from);
    if (pos == std::string::npos) {
        return false;
    }
    text.replace(pos, from.size(), to);
    write_file(file, text);
    return true;
}

io::Dataset load_ok(const fs::path& dir)
{
    auto result = io::load_dataset(dir);
    if (!result.report.passed()) {
        throw std::runtime_error("dataset " + dir.string() + " failed validation:\n" + result.report.to_text());
    }
    return std::move(*result.dataset);
}

namespace {

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Values are written as text and read back, so generate them as text first.
double parsed(const std::string& s) { return std::stod(s); }

std::string tenths(long long v) { return format_number(static_cast<double>(v) / 10.0); }

struct Loc {
    std::string id;
    long long population;
    long long area_tenths;
    std::string degurba;
};

struct Reg {
    std::string id;
    std::string country;
    std::vector<Loc> localities;
    long long households = 0;
};

} // namespace

void write_random_dataset(std::mt19937_64& rng, const fs::path& dir, const RandomDatasetOptions& options)
{
    fs::create_directories(dir);
    const std::vector<std::string> degurba{"URBAN", "SUBURBAN", "RURAL"};
    const std::vector<std::string> techs{"FTTH", "FTTB_C", "MIXED_URBAN_FTTH"};
    const std::vector<std::string> bands{"LT10", "10_25", "25_50", "GT50"};
    const std::vector<std::string> prep{"-0.10", "0", "0.10"};

    const int n_countries = uniform_int(rng, 1, options.max_countries);
    std::vector<std::string> codes;
    std::vector<Reg> regions;
    for (int c = 0; c < n_countries; ++c) {
        const std::string code = std::string("Q") + static_cast<char>('A' + c);
        codes.push_back(code);
        const int n_regions = uniform_int(rng, 1, options.max_regions);
        for (int r = 0; r < n_regions; ++r) {
            Reg reg;
            reg.id = code + std::to_string(100 + r);
            reg.country = code;
            const int n_loc = uniform_int(rng, 1, options.max_localities);
            for (int l = 0; l < n_loc; ++l) {
                Loc loc;
                loc.id = reg.id + "-" + std::to_string(l);
                loc.degurba = pick(rng, degurba);
                // Rural densities straddle the semi-rural and extremely rural thresholds.
                const double density = loc.degurba == "URBAN"      ? uniform(rng, 500.0, 20000.0)
                                       : loc.degurba == "SUBURBAN" ? uniform(rng, 150.0, 2000.0)
                                                                   : std::exp(uniform(rng, std::log(1.0), std::log(400.0)));
                loc.area_tenths = uniform_int(rng, 10, 40000);
                loc.population = static_cast<long long>(density * static_cast<double>(loc.area_tenths) / 10.0);
                reg.localities.push_back(loc);
            }
            regions.push_back(std::move(reg));
        }
    }
    // Keep the enterprise base large enough for the smallest T3 tier.
    long long total_pop = 0;
    for (const auto& r : regions) {
        for (const auto& l : r.localities) {
            total_pop += l.population;
        }
    }
    const double enterprise_rate = 0.06;
    if (static_cast<double>(total_pop) * enterprise_rate < options.min_enterprises) {
        const double factor = options.min_enterprises / (static_cast<double>(total_pop) * enterprise_rate + 1.0) + 1.0;
        for (auto& r : regions) {
            for (auto& l : r.localities) {
                l.population = static_cast<long long>(static_cast<double>(l.population) * factor) + 1;
            }
        }
    }

    std::ostringstream countries;
    countries << "code,labour_index,prep_geo,prep_housing,prep_regulation,dominant_fixed_tech,road_km,rail_km,"
                 "capital_region,fttp_band,docsis_band\n";
    for (const auto& code : codes) {
        std::string capital;
        for (const auto& r : regions) {
            if (r.country == code) {
                capital = r.id;
                break;
            }
        }
        const auto road = uniform_int(rng, 0, 4) == 0 ? 0 : uniform_int(rng, 1, 200000);
        const auto rail = uniform_int(rng, 0, 4) == 0 ? 0 : uniform_int(rng, 1, 300000);
        countries << code << ',' << format_number(uniform_int(rng, 40, 160) / 100.0) << ',' << pick(rng, prep) << ','
                  << pick(rng, prep) << ',' << pick(rng, prep) << ',' << pick(rng, techs) << ',' << tenths(road) << ','
                  << tenths(rail) << ',' << capital << ',' << pick(rng, bands) << ',' << pick(rng, bands) << '\n';
    }
    write_file(dir / "countries.csv", countries.str());

    std::vector<geo::Region> model;
    std::ostringstream reg_csv;
    std::ostringstream loc_csv;
    reg_csv << "id,country,population,area_km2,households\n";
    loc_csv << "id,region,population,area_km2,degurba\n";
    for (auto& r : regions) {
        long long pop = 0;
        long long area = 0;
        for (const auto& l : r.localities) {
            pop += l.population;
            area += l.area_tenths;
            loc_csv << l.id << ',' << r.id << ',' << l.population << ',' << tenths(l.area_tenths) << ','
                    << l.degurba << '\n';
        }
        r.households = static_cast<long long>(static_cast<double>(pop) * uniform(rng, 0.35, 0.5));
        reg_csv << r.id << ',' << r.country << ',' << pop << ',' << tenths(area) << ',' << r.households << '\n';
        geo::Region g;
        g.id = r.id;
        g.country = r.country;
        g.population = static_cast<double>(pop);
        g.area_km2 = parsed(tenths(area));
        g.households = static_cast<double>(r.households);
        model.push_back(g);
    }
    write_file(dir / "regions.csv", reg_csv.str());
    write_file(dir / "localities.csv", loc_csv.str());

    std::map<std::string, SizeClassArray> counts;
    std::ostringstream ent;
    ent << "country,size_class,count\n";
    const char* classes[] = {"0-9", "10-19", "20-49", "50-249", "250+"};
    for (const auto& code : codes) {
        double pop = 0.0;
        for (const auto& g : model) {
            if (g.country == code) {
                pop += g.population;
            }
        }
        const double total = pop * enterprise_rate;
        const double mix[] = {uniform(rng, 0.88, 0.95), uniform(rng, 0.02, 0.06), uniform(rng, 0.01, 0.03),
                              uniform(rng, 0.003, 0.01), uniform(rng, 0.0005, 0.002)};
        SizeClassArray a;
        for (int k = 0; k < kSizeClassCount; ++k) {
            const auto n = static_cast<long long>(total * mix[k]);
            a(k) = static_cast<double>(n);
            ent << code << ',' << classes[k] << ',' << n << '\n';
        }
        counts[code] = a;
    }
    write_file(dir / "enterprises.csv", ent.str());
    geo::allocate_enterprises(model, counts);

    // Bands per region and technology; national figures are the weighted mean
    // reached at a random fraction of the highest useful scale.
    std::ostringstream iv;
    std::ostringstream nat;
    iv << "region,technology,band_low,band_high,vintage\n";
    nat << "country,technology,coverage,vintage\n";
    for (const TechClass t : kTechClasses) {
        for (const auto& code : codes) {
            if (t == TechClass::FiveG && uniform_int(rng, 0, 2) != 0) {
                continue;
            }
            std::vector<coverage::RegionBand> group;
            for (const auto& g : model) {
                if (g.country != code) {
                    continue;
                }
                const int max_band = t == TechClass::FiveG ? 0 : 4;
                const auto [lo, hi] = coverage::kPublishedBands[static_cast<std::size_t>(uniform_int(rng, 0, max_band))];
                iv << g.id << ',' << to_string(t) << ',' << format_number(lo) << ',' << format_number(hi) << ",2019\n";
                group.push_back({g.density(), g.premises(), lo, hi});
            }
            double max_scale = 0.0;
            for (const auto& b : group) {
                max_scale = std::max(max_scale, b.high / b.density);
            }
            const double national = coverage::weighted_coverage(group, uniform(rng, 0.05, 0.95) * max_scale);
            nat << code << ',' << to_string(t) << ',' << format_number(national) << ",2019\n";
        }
    }
    write_file(dir / "coverage_intervals.csv", iv.str());
    write_file(dir / "coverage_national.csv", nat.str());

    std::ostringstream coh;
    coh << "region,is_cohesion\n";
    for (const auto& g : model) {
        coh << g.id << ',' << (uniform_int(rng, 0, 1) ? "true" : "false") << '\n';
    }
    write_file(dir / "cohesion.csv", coh.str());
}

} // namespace gigagap::test
