#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "discovery.hpp"
#include "ingestion.hpp"
#include "metrics.hpp"
#include "roster.hpp"

namespace metadisc {

const char* versionString();

struct ScenarioSpec {
  std::string name = "scenario";
  ScoreMode mode = ScoreMode::ABC;
  std::filesystem::path rosterPath;
  std::filesystem::path chartPath;  // optional external type chart
  std::filesystem::path tierPath;   // required for BSD and for blanket bans
  std::vector<std::filesystem::path> preBanUsagePaths;
  std::vector<std::filesystem::path> postBanUsagePaths;
  std::vector<std::string> banned;
  std::vector<std::string> tiers;  // declared tier order for BSD reports; empty = derived
  RunConfig runConfig;
  std::uint64_t nominalBattles = 100000;  // scale for usage -> counts
  UnknownSpecies unknownSpecies = UnknownSpecies::Fail;
  std::filesystem::path outputDir = "out";

  // Structural checks only; file contents are checked by prepareScenario.
  void validate() const;
};

// Relative paths inside the document resolve against baseDir.
ScenarioSpec scenarioFromJson(const nlohmann::json& doc, const std::filesystem::path& baseDir);
nlohmann::json scenarioToJson(const ScenarioSpec& spec);
ScenarioSpec loadScenario(const std::filesystem::path& path);

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<AgentKind> agent;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> battles;  // desk-scale total; month length is capped to it
  std::optional<std::filesystem::path> outputDir;
  bool skipUnknown = false;
};

ScenarioSpec applyOverrides(ScenarioSpec spec, const ScenarioOverrides& overrides);

// Everything loaded from disk before a simulation starts.
struct PreparedScenario {
  ScenarioSpec spec;
  Roster roster;
  std::map<std::string, std::string> tierMap;
  std::optional<UsageStats> initialStats;  // pre-ban usage (ABC)
  std::optional<UsageStats> postBanStats;  // post-ban usage (ABC, when given)
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::uint64_t>> inputHashes;  // path -> FNV-1a 64
};

// Loads and cross-checks every input; all config and file errors surface here.
PreparedScenario prepareScenario(const ScenarioSpec& spec);

struct MethodRow {
  std::string method;
  MetaSnapshot meta;
  std::optional<double> overlap;  // metric fields need the post-ban meta
  std::optional<double> editDistanceDelta;
  std::optional<CorrelationResult> rho;       // t approximation
  std::optional<CorrelationResult> rhoExact;  // permutation test, small n only
  std::optional<TierReport> tiers;
};

struct ScenarioReport {
  std::string name;
  ScoreMode mode = ScoreMode::ABC;
  RunConfig config;
  std::optional<MetaSnapshot> preBan;   // A
  std::optional<MetaSnapshot> postBan;  // B
  std::vector<MethodRow> rows;          // discovered first
  std::vector<MonthSnapshot> months;
  std::uint64_t battles = 0;
  std::vector<std::string> warnings;
};

struct RunHooks {
  std::function<void(const RunCheckpoint&)> onAggregate;
  const RunCheckpoint* resume = nullptr;
  std::ostream* battleLog = nullptr;
  std::uint64_t battleLogLimit = 1;
};

// ABC: pre-ban usage -> A, ban, discover B', compare against post-ban B and
// against the naive baseline. BSD: blank-slate discovery, tier capture and a
// base-stat-total ranking as the baseline. totalBattles == 0 skips simulation
// and takes B' from the initial statistics.
ScenarioReport runScenario(const PreparedScenario& prepared, const RunHooks& hooks = {});

// report.csv, report.txt, report.json, meta CSVs and manifest.json.
void writeScenarioReport(const ScenarioReport& report, const PreparedScenario& prepared,
                         const std::filesystem::path& dir);
void writeReportText(std::ostream& os, const ScenarioReport& report);
void writeReportCsv(std::ostream& os, const ScenarioReport& report);
nlohmann::json reportToJson(const ScenarioReport& report);

// Hash of the resolved configuration plus every input file's bytes.
std::uint64_t configHash(const PreparedScenario& prepared);
nlohmann::json manifestJson(const PreparedScenario& prepared, const std::string& command);

struct WeightTriple {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

const std::vector<WeightTriple>& defaultWeightGrid();

struct GridRow {
  WeightTriple weights;
  double editDistance = 0.0;  // editDistanceDelta against the post-ban meta
  double overlap = 0.0;
  std::uint64_t seed = 0;
};

// Seed of a row depends on the master seed and the triple only.
std::uint64_t gridRowSeed(std::uint64_t masterSeed, const WeightTriple& w);

// Requires an ABC scenario with post-ban usage. Throws on an empty grid.
std::vector<GridRow> runGridSearch(const PreparedScenario& prepared, const std::vector<WeightTriple>& grid);
void writeGridCsv(std::ostream& os, const std::vector<GridRow>& rows);
void writeGridText(std::ostream& os, const std::vector<GridRow>& rows);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace metadisc
