#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gigagap {

/// Input data that violates a schema, a range, or a cross-file reference.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Files or directories that cannot be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Density classes, ordered from densest to sparsest. The order is load-bearing:
// coverage spreading and deployment sequencing both walk it front to back.
enum class Geotype { Urban, Suburban, SemiRural, Rural, ExtremelyRural };

enum class Degurba { Urban, Suburban, Rural };

enum class TechClass { Ftth100M, Ftth1G, Fttb, FttcAdvDsl, Docsis30, Docsis31, Lte, FiveG };

enum class CostAction {
    FtthNew,
    FttbNew,
    FttcNew,
    UpgradeFttbToFtth,
    UpgradeFttcToFtth,
    UpgradeFtthTo1G,
    UpgradeDocsis30To31,
    FiveGGuaranteed,
    FiveGNominal,
    FiveGRailNominalKm,
    FiveGRailGuaranteedKm,
    FiveGRoadNominalKm,
    FiveGRoadGuaranteedKm,
};

enum class SizeClass { Micro, Small, Medium, Large, VeryLarge };

enum class FixedTech { Ftth, FttbC, MixedUrbanFtth };

// Market-share bands used to describe fibre and cable footprints per country.
enum class ShareBand { Below10, From10To25, From25To50, Above50 };

enum class Granularity { Local, Nuts3, Nuts2, Country, Eu };

enum class Quality { Guaranteed, Nominal };
enum class T3Tier { AllEnterprises, FiveMillion, OneMillion };
enum class T4Scope { ExtremelyRuralOnly, AllThreeRural };

enum class Target { T1, T2Urban, T2Transport, T3, T4 };
enum class Segment { Households, EnterpriseLocations, EnterpriseEquivalents, TransportKm };
enum class Unit { Premises, KmRoad, KmRail };

/// Speed capability a footprint is measured against.
enum class Tier { Mbps100, Gbps1, FiveG };

inline constexpr int kGeotypeCount = 5;
inline constexpr int kTechCount = 8;
inline constexpr int kActionCount = 13;
inline constexpr int kSizeClassCount = 5;

using GeoArray = Eigen::Array<double, kGeotypeCount, 1>;
using SizeClassArray = Eigen::Array<double, kSizeClassCount, 1>;
/// Rows are geotypes, columns are technologies.
using CoverageMatrix = Eigen::Array<double, kGeotypeCount, kTechCount>;
/// Rows are cost actions, columns are geotypes; per-km actions repeat one value across columns.
using CostMatrix = Eigen::Array<double, kActionCount, kGeotypeCount>;

template <class E>
constexpr int index_of(E e) noexcept
{
    return static_cast<int>(e);
}

inline constexpr std::array<Geotype, kGeotypeCount> kGeotypes{
    Geotype::Urban, Geotype::Suburban, Geotype::SemiRural, Geotype::Rural, Geotype::ExtremelyRural};

inline constexpr std::array<TechClass, kTechCount> kTechClasses{
    TechClass::Ftth100M, TechClass::Ftth1G,    TechClass::Fttb, TechClass::FttcAdvDsl,
    TechClass::Docsis30, TechClass::Docsis31, TechClass::Lte,  TechClass::FiveG};

inline constexpr std::array<CostAction, kActionCount> kCostActions{
    CostAction::FtthNew,
    CostAction::FttbNew,
    CostAction::FttcNew,
    CostAction::UpgradeFttbToFtth,
    CostAction::UpgradeFttcToFtth,
    CostAction::UpgradeFtthTo1G,
    CostAction::UpgradeDocsis30To31,
    CostAction::FiveGGuaranteed,
    CostAction::FiveGNominal,
    CostAction::FiveGRailNominalKm,
    CostAction::FiveGRailGuaranteedKm,
    CostAction::FiveGRoadNominalKm,
    CostAction::FiveGRoadGuaranteedKm,
};

inline constexpr std::array<SizeClass, kSizeClassCount> kSizeClasses{
    SizeClass::Micro, SizeClass::Small, SizeClass::Medium, SizeClass::Large, SizeClass::VeryLarge};

inline constexpr std::array<Target, 5> kTargets{Target::T1, Target::T2Urban, Target::T2Transport,
                                                Target::T3, Target::T4};

// Canonical text forms used by every file format and the CLI.
std::string_view to_string(Geotype v);
std::string_view to_string(Degurba v);
std::string_view to_string(TechClass v);
std::string_view to_string(CostAction v);
std::string_view to_string(SizeClass v);
std::string_view to_string(FixedTech v);
std::string_view to_string(ShareBand v);
std::string_view to_string(Granularity v);
std::string_view to_string(Quality v);
std::string_view to_string(T3Tier v);
std::string_view to_string(T4Scope v);
std::string_view to_string(Target v);
std::string_view to_string(Segment v);
std::string_view to_string(Unit v);
std::string_view to_string(Tier v);

/// Parses the canonical text form of an enumeration; nullopt if unknown.
template <class E>
std::optional<E> parse(std::string_view text);

template <> std::optional<Geotype> parse(std::string_view);
template <> std::optional<Degurba> parse(std::string_view);
template <> std::optional<TechClass> parse(std::string_view);
template <> std::optional<CostAction> parse(std::string_view);
template <> std::optional<SizeClass> parse(std::string_view);
template <> std::optional<FixedTech> parse(std::string_view);
template <> std::optional<ShareBand> parse(std::string_view);
template <> std::optional<Granularity> parse(std::string_view);
template <> std::optional<Quality> parse(std::string_view);
template <> std::optional<T3Tier> parse(std::string_view);
template <> std::optional<T4Scope> parse(std::string_view);
template <> std::optional<Target> parse(std::string_view);
template <> std::optional<Segment> parse(std::string_view);
template <> std::optional<Unit> parse(std::string_view);
template <> std::optional<Tier> parse(std::string_view);

/// True for actions priced per kilometre rather than per premise passed.
constexpr bool is_per_km(CostAction a) noexcept
{
    return a == CostAction::FiveGRailNominalKm || a == CostAction::FiveGRailGuaranteedKm ||
           a == CostAction::FiveGRoadNominalKm || a == CostAction::FiveGRoadGuaranteedKm;
}

constexpr bool is_wireless(CostAction a) noexcept
{
    return a == CostAction::FiveGGuaranteed || a == CostAction::FiveGNominal || is_per_km(a);
}

constexpr bool is_urban_side(Geotype g) noexcept
{
    return g == Geotype::Urban || g == Geotype::Suburban;
}

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

} // namespace gigagap
