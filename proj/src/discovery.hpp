#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "agents.hpp"
#include "roster.hpp"
#include "stats.hpp"
#include "teambuilder.hpp"

namespace metadisc {

struct RunConfig {
  std::uint64_t totalBattles = 450000;
  std::uint64_t battlesPerMonth = 150000;
  std::uint64_t statsUpdateInterval = 1000;
  std::size_t teamPoolSize = 2500;
  std::size_t metaSize = 40;
  std::vector<std::string> banned;
  std::vector<std::string> blanketBanTiers{"LC"};
  std::uint64_t seed = 0;
  AgentKind agent = AgentKind::Heuristic;
  ScoreWeights weights;
  EpsilonSchedule epsilon;
  unsigned threads = 1;  // 0 = hardware concurrency

  // Throws Error(InvalidArgument) on inconsistent values or unknown species.
  void validate(const Roster& roster) const;
};

nlohmann::json runConfigToJson(const RunConfig& config);
// Missing keys keep the values already in `base`.
RunConfig runConfigFromJson(const nlohmann::json& doc, RunConfig base = {});

// Extends the ban list; unknown species throw Error(NotFound). Idempotent.
RunConfig applyBan(RunConfig config, std::span<const std::string> species, const Roster& roster);

// Named bans plus every character whose tier is blanket-banned.
std::vector<std::uint8_t> bannedMask(const Roster& roster, const RunConfig& config);

struct RankEntry {
  std::string species;
  double pickrate = 0.0;
  double winrate = 0.0;

  bool operator==(const RankEntry&) const = default;
};

struct MetaSnapshot {
  std::vector<RankEntry> ranking;  // best first
  std::size_t metaSize = 0;

  std::vector<std::string> metaSet() const;
  // 1-based position in the full ranking.
  std::optional<std::size_t> rankOf(std::string_view species) const;

  bool operator==(const MetaSnapshot&) const = default;
};

// Ranks eligible characters by pickrate, then winrate, then species id.
// Throws Error(InvalidArgument) when fewer than metaSize are eligible.
MetaSnapshot extractMeta(const UsageStats& stats, const Roster& roster, std::size_t metaSize,
                         std::span<const std::uint8_t> banned = {});

std::vector<std::size_t> resolveSpecies(const Roster& roster, std::span<const std::string> species);

void writeSnapshotCsv(std::ostream& os, const MetaSnapshot& snapshot);
nlohmann::json snapshotToJson(const MetaSnapshot& snapshot);
MetaSnapshot snapshotFromJson(const nlohmann::json& doc);
MetaSnapshot parseSnapshotCsv(std::istream& in, const std::string& source, std::size_t metaSize);
// Dispatches on extension (.json or .csv). metaSize 0 keeps the file's value
// (JSON) or min(40, entries) (CSV).
MetaSnapshot readSnapshot(const std::filesystem::path& path, std::size_t metaSize = 0);

struct MonthSnapshot {
  std::uint64_t month = 0;  // 1-based
  std::uint64_t battles = 0;
  MetaSnapshot meta;
};

struct RunCheckpoint {
  std::uint64_t battlesDone = 0;
  UsageStats stats;
  std::vector<MonthSnapshot> months;  // month-end metas taken so far
};

nlohmann::json checkpointToJson(const RunCheckpoint& cp, const Roster& roster);
RunCheckpoint checkpointFromJson(const nlohmann::json& doc, const Roster& roster);

struct DiscoveryHooks {
  std::function<void(const RunCheckpoint&)> onAggregate;
  std::function<void(const MonthSnapshot&)> onMonth;
  std::ostream* battleLog = nullptr;  // JSON lines for the first battleLogLimit battles
  std::uint64_t battleLogLimit = 1;
};

struct DiscoveryResult {
  MetaSnapshot meta;
  UsageStats stats;  // simulated battles only
  std::uint64_t battlesRecorded = 0;
  std::uint64_t aggregations = 0;
  std::vector<MonthSnapshot> months;
};

// Alternates team-pool generation and battle windows until totalBattles.
// `initialStats` (required in ABC mode) drives team building until the first
// window has been aggregated; afterwards the simulated counts take over.
// Resuming from a checkpoint taken at a window boundary reproduces an
// uninterrupted run exactly.
DiscoveryResult runDiscovery(const Roster& roster, const RunConfig& config, const UsageStats* initialStats,
                             const RunCheckpoint* resume = nullptr, const DiscoveryHooks& hooks = {});

}  // namespace metadisc
