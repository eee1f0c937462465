#pragma once

#include "gigagap/geo.hpp"
#include "gigagap/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gigagap::costs {

/// Year -> multiplier to 2019 prices (inflation net of equipment price decline).
using PriceIndex = std::map<int, double>;

struct CostReference {
    CostAction action = CostAction::FtthNew;
    std::optional<Geotype> geotype; ///< nullopt for per-km entries common to all geotypes
    double value = 0.0;             ///< EUR per premise passed, or EUR per km
    int price_year = 2019;
    Granularity granularity = Granularity::Eu;
    std::string source_id;
};

/// Relative trust in a reference by the scale of the deployment it came from.
struct GranularityWeights {
    std::array<double, 5> by_granularity{5.0, 4.0, 3.0, 2.0, 1.0};
    double of(Granularity g) const { return by_granularity[static_cast<std::size_t>(index_of(g))]; }
};

inline constexpr double kCivilWorksShare = 0.70;
inline constexpr double kMaxSharingFraction = 0.12;

double index_to_2019(double value, int price_year, const PriceIndex& index);

/// Granularity-weighted mean of references already expressed in 2019 prices.
double merge_references(std::span<const CostReference> refs, const GranularityWeights& weights = {});

/// Scales the civil-works portion of a cost by the country's labour index.
double adjust_labour(double base, double labour_index, double civil_works_share = kCivilWorksShare);

/// Better-prepared countries (positive factor) deploy more cheaply.
double apply_preparedness(double cost, const geo::PreparednessFactor& factor);

double apply_sharing(double cost, double sharing_fraction);

struct CostConfig {
    double sharing_fraction = 0.0;
    double civil_works_share = kCivilWorksShare;
    GranularityWeights weights;
};

/// A (action, geotype) cell that no reference covers, or any other reason the
/// table cannot be built; `problems` lists every one found.
struct CostTableError : DataError {
    explicit CostTableError(std::vector<std::string> list);
    std::vector<std::string> problems;
};

class CostTable {
public:
    CostTable() = default;
    CostTable(CostMatrix base, std::map<std::string, CostMatrix> adjusted, double sharing_fraction)
        : base_(std::move(base))
        , adjusted_(std::move(adjusted))
        , sharing_fraction_(sharing_fraction)
    {
    }

    const CostMatrix& base() const noexcept { return base_; }
    double base_cost(CostAction a, Geotype g) const { return base_(index_of(a), index_of(g)); }

    /// Adjusted unit cost; throws DataError naming the cell if the country is unknown.
    double unit_cost(CostAction a, Geotype g, const std::string& country) const;

    const std::map<std::string, CostMatrix>& adjusted() const noexcept { return adjusted_; }
    double sharing_fraction() const noexcept { return sharing_fraction_; }

private:
    CostMatrix base_ = CostMatrix::Zero();
    std::map<std::string, CostMatrix> adjusted_;
    double sharing_fraction_ = 0.0;
};

/// Indexes, merges and adjusts references into per-country unit costs:
/// sharing(preparedness(labour(merge(index(refs))))).
CostTable build_cost_table(std::span<const CostReference> refs, const PriceIndex& index,
                           std::span<const geo::Country> countries, const CostConfig& config = {});

} // namespace gigagap::costs
