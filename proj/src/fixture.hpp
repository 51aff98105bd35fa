#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roster.hpp"

namespace metadisc {

// Synthetic roster generator for tests and desk-scale scenarios. Stat totals
// are stratified by tier, so tier labels carry real strength differences.
struct FixtureOptions {
  std::uint64_t seed = 1;
  std::size_t size = 740;
  std::size_t typeCount = 18;
  std::optional<std::size_t> lcCount;  // default: round(size * 210 / 740)
  bool dominant = false;               // one AG slot becomes an overpowered "Dominant"
};

inline constexpr const char* kDominantSpecies = "Dominant";

// Best tier first; LC last.
const std::vector<std::string>& fixtureTierOrder();

struct Fixture {
  nlohmann::json roster;  // roster document (format_version 1)
  nlohmann::json tiers;   // species -> tier label
};

// Throws Error(InvalidArgument) unless size >= 12, typeCount >= 2 and the LC
// count leaves at least twelve other characters.
Fixture generateFixture(const FixtureOptions& options);

// Writes roster.json and tiers.json into `dir` (created if needed).
void writeFixture(const Fixture& fixture, const std::filesystem::path& dir);

// Parsed roster with the fixture's tiers applied.
Roster fixtureRoster(const Fixture& fixture);

}  // namespace metadisc
