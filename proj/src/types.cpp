#include "gigagap/types.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace gigagap {

namespace {

constexpr std::array<std::string_view, kGeotypeCount> kGeotypeNames{
    "URBAN", "SUBURBAN", "SEMI_RURAL", "RURAL", "EXTREMELY_RURAL"};
constexpr std::array<std::string_view, 3> kDegurbaNames{"URBAN", "SUBURBAN", "RURAL"};
constexpr std::array<std::string_view, kTechCount> kTechNames{
    "FTTH_100M", "FTTH_1G", "FTTB", "FTTC_ADV_DSL", "DOCSIS_30", "DOCSIS_31", "LTE", "FIVE_G"};
constexpr std::array<std::string_view, kActionCount> kActionNames{
    "FTTH_NEW",
    "FTTB_NEW",
    "FTTC_NEW",
    "UPGRADE_FTTB_TO_FTTH",
    "UPGRADE_FTTC_TO_FTTH",
    "UPGRADE_FTTH_TO_1G",
    "UPGRADE_DOCSIS30_TO_31",
    "FIVE_G_GUARANTEED",
    "FIVE_G_NOMINAL",
    "FIVE_G_RAIL_NOMINAL_KM",
    "FIVE_G_RAIL_GUARANTEED_KM",
    "FIVE_G_ROAD_NOMINAL_KM",
    "FIVE_G_ROAD_GUARANTEED_KM",
};
constexpr std::array<std::string_view, kSizeClassCount> kSizeClassNames{"0-9", "10-19", "20-49",
                                                                        "50-249", "250+"};
constexpr std::array<std::string_view, 3> kFixedTechNames{"FTTH", "FTTB_C", "MIXED_URBAN_FTTH"};
constexpr std::array<std::string_view, 4> kShareBandNames{"LT10", "10_25", "25_50", "GT50"};
constexpr std::array<std::string_view, 5> kGranularityNames{"LOCAL", "NUTS3", "NUTS2", "COUNTRY",
                                                            "EU"};
constexpr std::array<std::string_view, 2> kQualityNames{"GUARANTEED", "NOMINAL"};
constexpr std::array<std::string_view, 3> kT3TierNames{"ALL_ENTERPRISES", "FIVE_MILLION",
                                                       "ONE_MILLION"};
constexpr std::array<std::string_view, 2> kT4ScopeNames{"EXTREMELY_RURAL_ONLY", "ALL_THREE_RURAL"};
constexpr std::array<std::string_view, 5> kTargetNames{"T1", "T2_URBAN", "T2_TRANSPORT", "T3",
                                                       "T4"};
constexpr std::array<std::string_view, 4> kSegmentNames{"HOUSEHOLDS", "ENTERPRISE_LOCATIONS",
                                                        "ENTERPRISE_EQUIVALENTS", "TRANSPORT_KM"};
constexpr std::array<std::string_view, 3> kUnitNames{"PREMISES", "KM_ROAD", "KM_RAIL"};
constexpr std::array<std::string_view, 3> kTierNames{"100M", "1G", "5G"};

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view text)
{
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) {
            return static_cast<E>(i);
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(Geotype v) { return kGeotypeNames[index_of(v)]; }
std::string_view to_string(Degurba v) { return kDegurbaNames[index_of(v)]; }
std::string_view to_string(TechClass v) { return kTechNames[index_of(v)]; }
std::string_view to_string(CostAction v) { return kActionNames[index_of(v)]; }
std::string_view to_string(SizeClass v) { return kSizeClassNames[index_of(v)]; }
std::string_view to_string(FixedTech v) { return kFixedTechNames[index_of(v)]; }
std::string_view to_string(ShareBand v) { return kShareBandNames[index_of(v)]; }
std::string_view to_string(Granularity v) { return kGranularityNames[index_of(v)]; }
std::string_view to_string(Quality v) { return kQualityNames[index_of(v)]; }
std::string_view to_string(T3Tier v) { return kT3TierNames[index_of(v)]; }
std::string_view to_string(T4Scope v) { return kT4ScopeNames[index_of(v)]; }
std::string_view to_string(Target v) { return kTargetNames[index_of(v)]; }
std::string_view to_string(Segment v) { return kSegmentNames[index_of(v)]; }
std::string_view to_string(Unit v) { return kUnitNames[index_of(v)]; }
std::string_view to_string(Tier v) { return kTierNames[index_of(v)]; }

template <> std::optional<Geotype> parse(std::string_view t) { return lookup<Geotype>(kGeotypeNames, t); }
template <> std::optional<Degurba> parse(std::string_view t) { return lookup<Degurba>(kDegurbaNames, t); }
template <> std::optional<TechClass> parse(std::string_view t) { return lookup<TechClass>(kTechNames, t); }
template <> std::optional<CostAction> parse(std::string_view t) { return lookup<CostAction>(kActionNames, t); }
template <> std::optional<SizeClass> parse(std::string_view t) { return lookup<SizeClass>(kSizeClassNames, t); }
template <> std::optional<FixedTech> parse(std::string_view t) { return lookup<FixedTech>(kFixedTechNames, t); }
template <> std::optional<ShareBand> parse(std::string_view t) { return lookup<ShareBand>(kShareBandNames, t); }
template <> std::optional<Granularity> parse(std::string_view t) { return lookup<Granularity>(kGranularityNames, t); }
template <> std::optional<Quality> parse(std::string_view t) { return lookup<Quality>(kQualityNames, t); }
template <> std::optional<T3Tier> parse(std::string_view t) { return lookup<T3Tier>(kT3TierNames, t); }
template <> std::optional<T4Scope> parse(std::string_view t) { return lookup<T4Scope>(kT4ScopeNames, t); }
template <> std::optional<Target> parse(std::string_view t) { return lookup<Target>(kTargetNames, t); }
template <> std::optional<Segment> parse(std::string_view t) { return lookup<Segment>(kSegmentNames, t); }
template <> std::optional<Unit> parse(std::string_view t) { return lookup<Unit>(kUnitNames, t); }
template <> std::optional<Tier> parse(std::string_view t) { return lookup<Tier>(kTierNames, t); }

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0"; // folds -0 into 0
    }
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf.data(), end);
}

} // namespace gigagap
