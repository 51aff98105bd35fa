#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "discovery.hpp"
#include "roster.hpp"
#include "stats.hpp"

namespace metadisc {

struct UsageRecord {
  std::string species;
  double usage = 0.0;  // fraction in [0, 1]
  std::size_t rank = 0;

  bool operator==(const UsageRecord&) const = default;
};

// Pipe-delimited usage table:
//
//   | Rank | Species | Usage % |
//   | ---- | ------- | ------- |
//   | 1    | Name    | 32.46516% |
//
// Lines not starting with '|' (titles, '+---+' rules, blank lines) are
// skipped, as are the header row and dash-only rows. Columns past the third
// are ignored. Ranks must run 1, 2, ... and usage must not increase with rank.
std::vector<UsageRecord> parseUsageText(std::istream& in, const std::string& source = "<usage>");
std::vector<UsageRecord> parseUsageJson(const nlohmann::json& doc, const std::string& source = "<usage>");
// Dispatches on extension: .json, anything else is a table.
std::vector<UsageRecord> loadUsageFile(const std::filesystem::path& path);

// Canonical forms: percentages with five decimals; parse(emit(r)) == r for
// records read from canonical files.
void emitUsageText(std::ostream& os, const std::vector<UsageRecord>& records);
nlohmann::json emitUsageJson(const std::vector<UsageRecord>& records);

// Equal-weight mean per species over the union of months (absent = 0),
// re-ranked by usage then species id. Throws on an empty input.
std::vector<UsageRecord> averageMonths(const std::vector<std::vector<UsageRecord>>& months);

enum class UnknownSpecies { Fail, Skip };

// picks = round(usage * 2 * nominalBattles); wins and co-wins stay zero.
UsageStats toInitialStats(const std::vector<UsageRecord>& records, std::uint64_t nominalBattles,
                          const Roster& roster, UnknownSpecies policy = UnknownSpecies::Fail,
                          std::vector<std::string>* warnings = nullptr);

// Ranking in record order, usage as the pickrate.
MetaSnapshot snapshotFromUsage(const std::vector<UsageRecord>& records, std::size_t metaSize);

}  // namespace metadisc
