#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace climsim {

enum class Region : std::size_t { US, EU, OtherDeveloped, China, India, OtherDeveloping };
inline constexpr std::size_t kRegionCount = 6;
inline constexpr std::array<Region, kRegionCount> kRegions = {
    Region::US, Region::EU, Region::OtherDeveloped, Region::China, Region::India, Region::OtherDeveloping};

enum class EnergySource : std::size_t {
  Coal, Oil, Gas, Bioenergy, Renewables, Nuclear, NewZeroCarbon
};
inline constexpr std::size_t kSourceCount = 7;
inline constexpr std::array<EnergySource, kSourceCount> kSources = {
    EnergySource::Coal,       EnergySource::Oil,     EnergySource::Gas,          EnergySource::Bioenergy,
    EnergySource::Renewables, EnergySource::Nuclear, EnergySource::NewZeroCarbon};

enum class LandType : std::size_t { Forest, Agriculture, Other, Tundra };
inline constexpr std::size_t kLandTypeCount = 4;

template <typename T>
using PerRegion = std::array<T, kRegionCount>;
template <typename T>
using PerSource = std::array<T, kSourceCount>;

constexpr std::size_t index(Region r) { return static_cast<std::size_t>(r); }
constexpr std::size_t index(EnergySource s) { return static_cast<std::size_t>(s); }
constexpr std::size_t index(LandType t) { return static_cast<std::size_t>(t); }

/// Snake-case identifiers used in output ids, lever ids and data files.
constexpr std::string_view region_id(Region r) {
  constexpr std::array<std::string_view, kRegionCount> ids = {
      "us", "eu", "other_developed", "china", "india", "other_developing"};
  return ids[index(r)];
}

constexpr std::string_view source_id(EnergySource s) {
  constexpr std::array<std::string_view, kSourceCount> ids = {
      "coal", "oil", "gas", "bioenergy", "renewables", "nuclear", "new_zero_carbon"};
  return ids[index(s)];
}

constexpr std::string_view land_type_id(LandType t) {
  constexpr std::array<std::string_view, kLandTypeCount> ids = {"forest", "agriculture", "other", "tundra"};
  return ids[index(t)];
}

namespace units {

// Energy content conversions, GJ per unit.
inline constexpr double kGJPerTCE = 29.31;
inline constexpr double kGJPerBOE = 6.118;
inline constexpr double kGJPerMCF = 1.083;
inline constexpr double kGJPerKWh = 0.0036;

inline constexpr double kCO2PerC = 3.664;
inline constexpr double kGtCPerPpm = 2.124;
inline constexpr double kPreindustrialPpm = 280.0;

// 100-year global warming potentials used for CO2-equivalent reporting.
inline constexpr double kGwpCH4 = 28.0;
inline constexpr double kGwpN2O = 265.0;

}  // namespace units

}  // namespace climsim
