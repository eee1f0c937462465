#include "gigagap/costs.hpp"

#include <sstream>

namespace gigagap::costs {

namespace {

std::string cell_name(CostAction a, std::optional<Geotype> g)
{
    return std::string(to_string(a)) + "/" + (g ? std::string(to_string(*g)) : std::string("ALL"));
}

std::string join(const std::vector<std::string>& items)
{
    std::ostringstream out;
    out << "cost table has " << items.size() << " problem(s):";
    for (const auto& s : items) {
        out << "\n  " << s;
    }
    return out.str();
}

} // namespace

CostTableError::CostTableError(std::vector<std::string> list)
    : DataError(join(list))
    , problems(std::move(list))
{
}

double index_to_2019(double value, int price_year, const PriceIndex& index)
{
    if (value < 0.0) {
        throw DataError("negative cost value " + format_number(value));
    }
    const auto it = index.find(price_year);
    if (it == index.end()) {
        throw DataError("price index has no entry for " + std::to_string(price_year));
    }
    return value * it->second;
}

double merge_references(std::span<const CostReference> refs, const GranularityWeights& weights)
{
    if (refs.empty()) {
        throw DataError("no cost references to merge");
    }
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& r : refs) {
        const double w = weights.of(r.granularity);
        weighted += w * r.value;
        total += w;
    }
    if (!(total > 0.0)) {
        throw DataError("cost reference weights sum to zero for " + cell_name(refs[0].action, refs[0].geotype));
    }
    return weighted / total;
}

double adjust_labour(double base, double labour_index, double civil_works_share)
{
    if (!(labour_index > 0.0)) {
        throw DataError("labour index must be positive, got " + format_number(labour_index));
    }
    // Written as a correction term so that an index of exactly 1 is an identity.
    return base + civil_works_share * base * (labour_index - 1.0);
}

double apply_preparedness(double cost, const geo::PreparednessFactor& factor)
{
    return cost * (1.0 - factor.combined());
}

double apply_sharing(double cost, double sharing_fraction)
{
    if (!(sharing_fraction >= 0.0 && sharing_fraction <= kMaxSharingFraction)) {
        throw DataError("sharing fraction " + format_number(sharing_fraction) + " outside [0, 0.12]");
    }
    return cost * (1.0 - sharing_fraction);
}

double CostTable::unit_cost(CostAction a, Geotype g, const std::string& country) const
{
    const auto it = adjusted_.find(country);
    if (it == adjusted_.end()) {
        throw DataError("no cost cell for " + cell_name(a, g) + "/" + country);
    }
    return it->second(index_of(a), index_of(g));
}

CostTable build_cost_table(std::span<const CostReference> refs, const PriceIndex& index,
                           std::span<const geo::Country> countries, const CostConfig& config)
{
    std::vector<std::string> problems;
    if (!(config.sharing_fraction >= 0.0 && config.sharing_fraction <= kMaxSharingFraction)) {
        problems.push_back("sharing fraction " + format_number(config.sharing_fraction) +
                           " outside [0, 0.12]");
    }

    // Group indexed references by cell; column kGeotypeCount holds per-km entries.
    std::array<std::array<std::vector<CostReference>, kGeotypeCount + 1>, kActionCount> cells;
    for (const auto& r : refs) {
        if (is_per_km(r.action) == r.geotype.has_value()) {
            problems.push_back("reference " + r.source_id + " for " + cell_name(r.action, r.geotype) +
                               (r.geotype ? ": per-km actions take geotype ALL"
                                          : ": per-premise actions need a geotype"));
            continue;
        }
        CostReference indexed = r;
        try {
            indexed.value = index_to_2019(r.value, r.price_year, index);
        } catch (const DataError& e) {
            problems.push_back("reference " + r.source_id + ": " + e.what());
            continue;
        }
        cells[index_of(r.action)][r.geotype ? index_of(*r.geotype) : kGeotypeCount].push_back(indexed);
    }

    CostMatrix base = CostMatrix::Zero();
    for (const CostAction a : kCostActions) {
        const int row = index_of(a);
        if (is_per_km(a)) {
            const auto& list = cells[row][kGeotypeCount];
            if (list.empty()) {
                problems.push_back("missing references for " + cell_name(a, std::nullopt));
                continue;
            }
            base.row(row).setConstant(merge_references(list, config.weights));
            continue;
        }
        for (const Geotype g : kGeotypes) {
            const auto& list = cells[row][index_of(g)];
            if (list.empty()) {
                problems.push_back("missing references for " + cell_name(a, g));
                continue;
            }
            base(row, index_of(g)) = merge_references(list, config.weights);
        }
    }

    std::map<std::string, CostMatrix> adjusted;
    for (const auto& c : countries) {
        if (!(c.labour_index > 0.0)) {
            problems.push_back("country " + c.code + " has non-positive labour index");
            continue;
        }
        CostMatrix m = base.unaryExpr([&](double v) {
            const double labour = adjust_labour(v, c.labour_index, config.civil_works_share);
            return apply_preparedness(labour, c.preparedness);
        });
        if (problems.empty()) {
            m = m.unaryExpr([&](double v) { return apply_sharing(v, config.sharing_fraction); });
        }
        adjusted.emplace(c.code, m);
    }

    if (!problems.empty()) {
        throw CostTableError(std::move(problems));
    }
    return CostTable(base, std::move(adjusted), config.sharing_fraction);
}

} // namespace gigagap::costs
