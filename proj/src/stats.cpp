#include "stats.hpp"

#include <algorithm>
#include <limits>

#include "error.hpp"

namespace metadisc {

UsageStats::UsageStats(std::size_t rosterSize)
    : picks_(rosterSize, 0), wins_(rosterSize, 0), pop_(rosterSize * rosterSize, 0) {}

namespace {

void checkSide(const std::vector<std::size_t>& side, std::size_t n, const char* label) {
  if (side.size() != static_cast<std::size_t>(kTeamSize))
    throw Error(ErrorKind::InvalidArgument, std::string("battle side ") + label + " must have six participants");
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (side[i] >= n) throw Error(ErrorKind::InvalidArgument, "participant index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (side[i] == side[j])
        throw Error(ErrorKind::InvalidArgument, std::string("duplicate species on side ") + label);
  }
}

}  // namespace

void UsageStats::recordBattle(const BattleResult& result) {
  checkSide(result.participantsA, size(), "A");
  checkSide(result.participantsB, size(), "B");
  ++numBattles_;
  for (std::size_t x : result.participantsA) ++picks_[x];
  for (std::size_t x : result.participantsB) ++picks_[x];
  const auto& winners = result.winner == Side::A ? result.participantsA : result.participantsB;
  for (std::size_t i = 0; i < winners.size(); ++i) {
    ++wins_[winners[i]];
    for (std::size_t j = i + 1; j < winners.size(); ++j) {
      ++pop_[winners[i] * size() + winners[j]];
      ++pop_[winners[j] * size() + winners[i]];
    }
  }
}

void UsageStats::setPop(std::size_t x, std::size_t y, std::uint64_t n) {
  if (x == y) throw Error(ErrorKind::InvalidArgument, "co-win diagonal must stay zero");
  pop_[x * size() + y] = n;
  pop_[y * size() + x] = n;
}

UsageStats recordBattle(UsageStats stats, const BattleResult& result) {
  stats.recordBattle(result);
  return stats;
}

double pickrate(const UsageStats& stats, std::size_t x) {
  if (stats.numBattles() == 0) return 0.0;
  return static_cast<double>(stats.picks(x)) / (2.0 * static_cast<double>(stats.numBattles()));
}

double winrate(const UsageStats& stats, std::size_t x) {
  if (stats.picks(x) == 0) return 0.0;
  return static_cast<double>(stats.wins(x)) / static_cast<double>(stats.picks(x));
}

std::vector<double> pickrates(const UsageStats& stats) {
  std::vector<double> out(stats.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pickrate(stats, i);
  return out;
}

std::vector<double> winrates(const UsageStats& stats) {
  std::vector<double> out(stats.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = winrate(stats, i);
  return out;
}

PopularityNorm popularityNorm(const UsageStats& stats) {
  const std::size_t n = stats.size();
  if (n < 2) return {};
  PopularityNorm norm{std::numeric_limits<double>::max(), 0.0};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const double v = static_cast<double>(stats.pop(x, y));
      norm.min = std::min(norm.min, v);
      norm.max = std::max(norm.max, v);
    }
  return norm;
}

double popularity(const UsageStats& stats, const PopularityNorm& norm, std::size_t x,
                  std::span<const std::size_t> currentTeam) {
  if (currentTeam.empty()) throw Error(ErrorKind::InvalidArgument, "popularity needs a non-empty team");
  double sum = 0.0;
  for (std::size_t i : currentTeam) sum += norm.normalize(stats.pop(x, i));
  return sum / static_cast<double>(currentTeam.size());
}

double popularity(const UsageStats& stats, std::size_t x, std::span<const std::size_t> currentTeam) {
  return popularity(stats, popularityNorm(stats), x, currentTeam);
}

nlohmann::json statsToJson(const UsageStats& stats, const Roster& roster) {
  using nlohmann::json;
  if (stats.size() != roster.size()) throw Error(ErrorKind::InvalidArgument, "stats do not match roster size");
  json doc;
  doc["format_version"] = kStatsFormatVersion;
  doc["num_battles"] = stats.numBattles();
  json chars = json::array();
  for (std::size_t x = 0; x < stats.size(); ++x) {
    if (stats.picks(x) == 0 && stats.wins(x) == 0) continue;
    chars.push_back({{"species", roster.character(x).species}, {"picks", stats.picks(x)}, {"wins", stats.wins(x)}});
  }
  doc["characters"] = std::move(chars);
  json pop = json::array();
  for (std::size_t x = 0; x < stats.size(); ++x)
    for (std::size_t y = x + 1; y < stats.size(); ++y)
      if (stats.pop(x, y) != 0)
        pop.push_back(json::array({roster.character(x).species, roster.character(y).species, stats.pop(x, y)}));
  doc["co_wins"] = std::move(pop);
  return doc;
}

UsageStats statsFromJson(const nlohmann::json& doc, const Roster& roster) {
  auto bad = [](const std::string& what) { return Error(ErrorKind::Validation, "stats document: " + what); };
  try {
    if (doc.at("format_version").get<int>() != kStatsFormatVersion) throw bad("unsupported format_version");
    UsageStats stats(roster.size());
    stats.setBattles(doc.at("num_battles").get<std::uint64_t>());
    for (const auto& c : doc.at("characters")) {
      const std::string species = c.at("species").get<std::string>();
      auto idx = roster.indexOf(species);
      if (!idx) throw bad("unknown species '" + species + "'");
      const auto picks = c.at("picks").get<std::uint64_t>();
      const auto wins = c.at("wins").get<std::uint64_t>();
      if (wins > picks) throw bad("wins exceed picks for '" + species + "'");
      stats.setPicks(*idx, picks);
      stats.setWins(*idx, wins);
    }
    for (const auto& t : doc.at("co_wins")) {
      auto x = roster.indexOf(t.at(0).get<std::string>());
      auto y = roster.indexOf(t.at(1).get<std::string>());
      if (!x || !y) throw bad("unknown species in co_wins");
      if (*x == *y) throw bad("co_wins diagonal entry");
      stats.setPop(*x, *y, t.at(2).get<std::uint64_t>());
    }
    return stats;
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  }
}

}  // namespace metadisc
