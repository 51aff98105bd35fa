#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "battle.hpp"
#include "roster.hpp"

namespace metadisc {

inline constexpr int kStatsFormatVersion = 1;

// Pick, win and co-win counts over a roster. Counts only: every rate is
// derived on demand, so snapshots replay and resume exactly.
class UsageStats {
 public:
  UsageStats() = default;
  explicit UsageStats(std::size_t rosterSize);

  std::size_t size() const { return picks_.size(); }
  std::uint64_t numBattles() const { return numBattles_; }
  std::uint64_t picks(std::size_t x) const { return picks_[x]; }
  std::uint64_t wins(std::size_t x) const { return wins_[x]; }
  std::uint64_t pop(std::size_t x, std::size_t y) const { return pop_[x * size() + y]; }

  // Each side must list six distinct valid indices; throws Error otherwise.
  void recordBattle(const BattleResult& result);

  // Direct count edits for ingestion and checkpoint import.
  void setBattles(std::uint64_t n) { numBattles_ = n; }
  void setPicks(std::size_t x, std::uint64_t n) { picks_[x] = n; }
  void setWins(std::size_t x, std::uint64_t n) { wins_[x] = n; }
  void setPop(std::size_t x, std::size_t y, std::uint64_t n);

  bool operator==(const UsageStats&) const = default;

 private:
  std::uint64_t numBattles_ = 0;
  std::vector<std::uint64_t> picks_;
  std::vector<std::uint64_t> wins_;
  std::vector<std::uint64_t> pop_;  // size x size, symmetric, zero diagonal
};

UsageStats recordBattle(UsageStats stats, const BattleResult& result);

// picks / (2 * battles); 0 before any battle.
double pickrate(const UsageStats& stats, std::size_t x);
// wins / picks; 0 for never-picked characters.
double winrate(const UsageStats& stats, std::size_t x);

std::vector<double> pickrates(const UsageStats& stats);
std::vector<double> winrates(const UsageStats& stats);

// Global min-max over the off-diagonal co-win counts.
struct PopularityNorm {
  double min = 0.0;
  double max = 0.0;

  double normalize(std::uint64_t count) const {
    return max > min ? (static_cast<double>(count) - min) / (max - min) : 0.0;
  }
};

PopularityNorm popularityNorm(const UsageStats& stats);

// Mean normalized co-win count of x with the current team members.
// Throws Error(InvalidArgument) for an empty team.
double popularity(const UsageStats& stats, const PopularityNorm& norm, std::size_t x,
                  std::span<const std::size_t> currentTeam);
double popularity(const UsageStats& stats, std::size_t x, std::span<const std::size_t> currentTeam);

// Checkpoint format: counts keyed by species, co-wins as sparse triples.
nlohmann::json statsToJson(const UsageStats& stats, const Roster& roster);
UsageStats statsFromJson(const nlohmann::json& doc, const Roster& roster);

}  // namespace metadisc
