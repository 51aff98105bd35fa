#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace metadisc {

using TypeId = std::uint8_t;

inline constexpr int kRosterFormatVersion = 1;
inline constexpr int kMaxBaseStat = 255;
inline constexpr std::size_t kMaxMoves = 4;

enum class MoveCategory { Physical, Special, Status };

const char* toString(MoveCategory c);

struct MoveDef {
  std::string id;
  TypeId type = 0;
  int basePower = 0;
  double accuracy = 1.0;
  MoveCategory category = MoveCategory::Physical;

  bool damaging() const { return category != MoveCategory::Status; }
};

enum Stat : std::size_t { kHp = 0, kAtk, kDef, kSpa, kSpd, kSpe };
using BaseStats = std::array<int, 6>;

struct Character {
  std::string species;
  std::vector<TypeId> types;         // 1 or 2, distinct
  BaseStats baseStats{};
  std::vector<std::size_t> moves;    // indices into Roster::moves(), 1..4
  std::optional<std::string> tier;

  int statSum() const;
  bool hasType(TypeId t) const;
};

// Attack-type x defend-type damage multipliers and their {-2,-1,0,1} score
// counterparts (immune, resisted, neutral, super-effective).
class TypeChart {
 public:
  TypeChart() = default;
  // Throws Error(Validation) unless every cell is one of 0, 0.5, 1, 2.
  TypeChart(std::vector<std::string> names, const std::vector<std::vector<double>>& multipliers);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(TypeId t) const { return names_.at(t); }
  std::optional<TypeId> find(std::string_view name) const;

  double multiplier(TypeId attack, TypeId defend) const { return mult_[attack * size() + defend]; }
  int score(TypeId attack, TypeId defend) const { return score_[attack * size() + defend]; }

  // Product of the single-type multipliers over the defender's types.
  double effectiveness(TypeId attack, std::span<const TypeId> defender) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> mult_;
  std::vector<std::int8_t> score_;
};

class Roster {
 public:
  Roster(TypeChart chart, std::vector<MoveDef> moves, std::vector<Character> characters);

  std::size_t size() const { return characters_.size(); }
  const TypeChart& chart() const { return chart_; }
  const std::vector<MoveDef>& moves() const { return moves_; }
  const MoveDef& move(std::size_t i) const { return moves_[i]; }
  const std::vector<Character>& characters() const { return characters_; }
  const Character& character(std::size_t i) const { return characters_[i]; }
  std::optional<std::size_t> indexOf(std::string_view species) const;
  std::optional<std::size_t> moveIndexOf(std::string_view id) const;
  int maxStatSum() const { return maxStatSum_; }

  // Replaces tier labels from a species -> tier map; unknown species throw.
  void applyTiers(const std::map<std::string, std::string>& tiers);

 private:
  TypeChart chart_;
  std::vector<MoveDef> moves_;
  std::vector<Character> characters_;
  std::map<std::string, std::size_t, std::less<>> speciesIndex_;
  std::map<std::string, std::size_t, std::less<>> moveIndex_;
  int maxStatSum_ = 0;
};

// Loads and validates a roster document. When `typeChartFile` is given, its
// `types`/`chart` replace any embedded in the roster file.
Roster loadRoster(const std::filesystem::path& rosterFile,
                  const std::optional<std::filesystem::path>& typeChartFile = std::nullopt);

// `source` names the document in error messages.
Roster parseRoster(const nlohmann::json& doc, const std::string& source,
                   const nlohmann::json* chartDoc = nullptr);

nlohmann::json rosterToJson(const Roster& roster);

std::map<std::string, std::string> loadTierMap(const std::filesystem::path& tierFile);

// Reads a JSON file; parse errors carry line and column.
nlohmann::json readJsonFile(const std::filesystem::path& path);

// Sum of base stats over the roster's largest sum, in (0, 1].
double baseStatTotal(const Roster& roster, std::size_t character);
std::vector<double> baseStatTotals(const Roster& roster);

// For each attacking type, the summed score against every type in `group`,
// min-max normalized to [0, 1]; a flat vector normalizes to all zeros.
// Throws Error(InvalidArgument) on an empty group.
std::vector<double> typeVectorFor(std::span<const TypeId> group, const TypeChart& chart);

// Maps per-type values onto characters, averaging over dual types.
std::vector<double> characterTypeValues(const Roster& roster, std::span<const double> typeValues);

}  // namespace metadisc
