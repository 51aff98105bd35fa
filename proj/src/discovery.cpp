#include "discovery.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "error.hpp"

namespace metadisc {

namespace {

using nlohmann::json;

template <class Fn>
void parallelFor(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failureMutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string formatDouble(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void RunConfig::validate(const Roster& roster) const {
  auto bad = [](const std::string& m) { return Error(ErrorKind::InvalidArgument, m); };
  if (totalBattles == 0) throw bad("total_battles must be positive");
  if (battlesPerMonth == 0) throw bad("battles_per_month must be positive");
  if (statsUpdateInterval == 0) throw bad("stats_update_interval must be positive");
  if (statsUpdateInterval > totalBattles) throw bad("stats_update_interval exceeds total_battles");
  if (teamPoolSize == 0) throw bad("team_pool_size must be positive");
  if (metaSize == 0) throw bad("meta_size must be positive");
  weights.validate();
  epsilon.validate();
  for (const auto& s : banned)
    if (!roster.indexOf(s)) throw Error(ErrorKind::NotFound, "banned species '" + s + "' is not in the roster");
  const auto mask = bannedMask(roster, *this);
  const auto eligible = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 0));
  if (eligible < static_cast<std::size_t>(kTeamSize)) throw bad("fewer than six eligible characters");
  if (eligible < metaSize)
    throw bad("roster too small for meta_size: " + std::to_string(eligible) + " eligible, meta_size " +
              std::to_string(metaSize));
}

json runConfigToJson(const RunConfig& c) {
  json doc;
  doc["total_battles"] = c.totalBattles;
  doc["battles_per_month"] = c.battlesPerMonth;
  doc["stats_update_interval"] = c.statsUpdateInterval;
  doc["team_pool_size"] = c.teamPoolSize;
  doc["meta_size"] = c.metaSize;
  doc["banned"] = c.banned;
  doc["blanket_ban_tiers"] = c.blanketBanTiers;
  doc["seed"] = c.seed;
  doc["agent"] = toString(c.agent);
  doc["weights"] = {{"mode", toString(c.weights.mode)}, {"c1", c.weights.c1}, {"c2", c.weights.c2},
                    {"c3", c.weights.c3},               {"a", c.weights.a},   {"b", c.weights.b},
                    {"c", c.weights.c}};
  doc["epsilon"] = {{"start", c.epsilon.start}, {"end", c.epsilon.end}, {"decay_battles", c.epsilon.decayBattles}};
  doc["threads"] = c.threads;
  return doc;
}

RunConfig runConfigFromJson(const json& doc, RunConfig c) {
  try {
    if (!doc.is_object()) throw Error(ErrorKind::Validation, "run config must be an object");
    auto get = [&](const char* key, auto& field) {
      if (doc.contains(key)) field = doc.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("total_battles", c.totalBattles);
    get("battles_per_month", c.battlesPerMonth);
    get("stats_update_interval", c.statsUpdateInterval);
    get("team_pool_size", c.teamPoolSize);
    get("meta_size", c.metaSize);
    get("banned", c.banned);
    get("blanket_ban_tiers", c.blanketBanTiers);
    get("seed", c.seed);
    get("threads", c.threads);
    if (doc.contains("agent")) c.agent = parseAgentKind(doc.at("agent").get<std::string>());
    bool modeChanged = false;
    if (doc.contains("weights")) {
      const json& w = doc.at("weights");
      if (w.contains("mode")) {
        const ScoreMode mode = parseScoreMode(w.at("mode").get<std::string>());
        modeChanged = mode != c.weights.mode;
        c.weights.mode = mode;
      }
      for (auto [key, field] : {std::pair{"c1", &c.weights.c1}, std::pair{"c2", &c.weights.c2},
                                std::pair{"c3", &c.weights.c3}, std::pair{"a", &c.weights.a},
                                std::pair{"b", &c.weights.b}, std::pair{"c", &c.weights.c}})
        if (w.contains(key)) *field = w.at(key).get<double>();
    }
    if (modeChanged)
      c.epsilon = c.weights.mode == ScoreMode::BSD ? EpsilonSchedule::bsdDefault() : EpsilonSchedule::abcDefault();
    if (doc.contains("epsilon")) {
      const json& e = doc.at("epsilon");
      if (e.contains("start")) c.epsilon.start = e.at("start").get<double>();
      if (e.contains("end")) c.epsilon.end = e.at("end").get<double>();
      if (e.contains("decay_battles")) c.epsilon.decayBattles = e.at("decay_battles").get<std::uint64_t>();
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("run config: ") + e.what());
  }
}

RunConfig applyBan(RunConfig config, std::span<const std::string> species, const Roster& roster) {
  for (const auto& s : species) {
    if (!roster.indexOf(s)) throw Error(ErrorKind::NotFound, "cannot ban unknown species '" + s + "'");
    if (std::find(config.banned.begin(), config.banned.end(), s) == config.banned.end())
      config.banned.push_back(s);
  }
  return config;
}

std::vector<std::uint8_t> bannedMask(const Roster& roster, const RunConfig& config) {
  std::vector<std::uint8_t> mask(roster.size(), 0);
  for (const auto& s : config.banned)
    if (auto idx = roster.indexOf(s)) mask[*idx] = 1;
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const auto& tier = roster.character(i).tier;
    if (tier && std::find(config.blanketBanTiers.begin(), config.blanketBanTiers.end(), *tier) !=
                    config.blanketBanTiers.end())
      mask[i] = 1;
  }
  return mask;
}

std::vector<std::string> MetaSnapshot::metaSet() const {
  std::vector<std::string> out;
  const std::size_t k = std::min(metaSize, ranking.size());
  for (std::size_t i = 0; i < k; ++i) out.push_back(ranking[i].species);
  return out;
}

std::optional<std::size_t> MetaSnapshot::rankOf(std::string_view species) const {
  for (std::size_t i = 0; i < ranking.size(); ++i)
    if (ranking[i].species == species) return i + 1;
  return std::nullopt;
}

MetaSnapshot extractMeta(const UsageStats& stats, const Roster& roster, std::size_t metaSize,
                         std::span<const std::uint8_t> banned) {
  if (stats.size() != roster.size()) throw Error(ErrorKind::InvalidArgument, "stats do not match roster");
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < roster.size(); ++x)
    if (banned.empty() || !banned[x]) idx.push_back(x);
  if (idx.size() < metaSize)
    throw Error(ErrorKind::InvalidArgument, "fewer eligible characters (" + std::to_string(idx.size()) +
                                                ") than meta size " + std::to_string(metaSize));
  const auto pr = pickrates(stats);
  const auto wr = winrates(stats);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (pr[x] != pr[y]) return pr[x] > pr[y];
    if (wr[x] != wr[y]) return wr[x] > wr[y];
    return roster.character(x).species < roster.character(y).species;
  });
  MetaSnapshot snap;
  snap.metaSize = metaSize;
  snap.ranking.reserve(idx.size());
  for (std::size_t x : idx) snap.ranking.push_back({roster.character(x).species, pr[x], wr[x]});
  return snap;
}

std::vector<std::size_t> resolveSpecies(const Roster& roster, std::span<const std::string> species) {
  std::vector<std::size_t> out;
  out.reserve(species.size());
  for (const auto& s : species) {
    auto idx = roster.indexOf(s);
    if (!idx) throw Error(ErrorKind::NotFound, "species '" + s + "' is not in the roster");
    out.push_back(*idx);
  }
  return out;
}

void writeSnapshotCsv(std::ostream& os, const MetaSnapshot& snapshot) {
  os << "rank,species,pickrate,winrate\n";
  for (std::size_t i = 0; i < snapshot.ranking.size(); ++i) {
    const RankEntry& e = snapshot.ranking[i];
    os << (i + 1) << ',' << e.species << ',' << formatDouble(e.pickrate) << ',' << formatDouble(e.winrate) << '\n';
  }
}

json snapshotToJson(const MetaSnapshot& snapshot) {
  json doc;
  doc["format_version"] = 1;
  doc["meta_size"] = snapshot.metaSize;
  json ranking = json::array();
  for (std::size_t i = 0; i < snapshot.ranking.size(); ++i) {
    const RankEntry& e = snapshot.ranking[i];
    ranking.push_back({{"rank", i + 1}, {"species", e.species}, {"pickrate", e.pickrate}, {"winrate", e.winrate}});
  }
  doc["ranking"] = std::move(ranking);
  return doc;
}

MetaSnapshot snapshotFromJson(const json& doc) {
  try {
    MetaSnapshot snap;
    snap.metaSize = doc.at("meta_size").get<std::size_t>();
    std::size_t expected = 1;
    for (const auto& e : doc.at("ranking")) {
      if (e.contains("rank") && e.at("rank").get<std::size_t>() != expected)
        throw Error(ErrorKind::Validation, "snapshot ranks must be contiguous from 1");
      snap.ranking.push_back({e.at("species").get<std::string>(), e.value("pickrate", 0.0), e.value("winrate", 0.0)});
      ++expected;
    }
    return snap;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("snapshot: ") + e.what());
  }
}

MetaSnapshot parseSnapshotCsv(std::istream& in, const std::string& source, std::size_t metaSize) {
  MetaSnapshot snap;
  std::string line;
  std::size_t lineNo = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("rank,", 0) == 0) continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2)
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineNo) + ": expected rank,species[,pickrate,winrate]");
    try {
      if (std::stoull(cells[0]) != snap.ranking.size() + 1)
        throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineNo) + ": ranks must be contiguous from 1");
      RankEntry e{cells[1], cells.size() > 2 ? std::stod(cells[2]) : 0.0, cells.size() > 3 ? std::stod(cells[3]) : 0.0};
      snap.ranking.push_back(std::move(e));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(lineNo) + ": malformed number");
    }
  }
  snap.metaSize = metaSize ? metaSize : std::min<std::size_t>(40, snap.ranking.size());
  return snap;
}

MetaSnapshot readSnapshot(const std::filesystem::path& path, std::size_t metaSize) {
  if (path.extension() == ".json") {
    MetaSnapshot snap = snapshotFromJson(readJsonFile(path));
    if (metaSize) snap.metaSize = metaSize;
    return snap;
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return parseSnapshotCsv(in, path.string(), metaSize);
}

json checkpointToJson(const RunCheckpoint& cp, const Roster& roster) {
  json months = json::array();
  for (const auto& m : cp.months)
    months.push_back({{"month", m.month}, {"battles", m.battles}, {"meta", snapshotToJson(m.meta)}});
  return {{"format_version", 1},
          {"battles_done", cp.battlesDone},
          {"stats", statsToJson(cp.stats, roster)},
          {"months", std::move(months)}};
}

RunCheckpoint checkpointFromJson(const json& doc, const Roster& roster) {
  try {
    if (doc.at("format_version").get<int>() != 1)
      throw Error(ErrorKind::Validation, "checkpoint: unsupported format_version");
    RunCheckpoint cp;
    cp.battlesDone = doc.at("battles_done").get<std::uint64_t>();
    cp.stats = statsFromJson(doc.at("stats"), roster);
    if (cp.stats.numBattles() != cp.battlesDone)
      throw Error(ErrorKind::Validation, "checkpoint: battle count does not match stats");
    for (const auto& m : doc.value("months", json::array()))
      cp.months.push_back({m.at("month").get<std::uint64_t>(), m.at("battles").get<std::uint64_t>(),
                           snapshotFromJson(m.at("meta"))});
    return cp;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("checkpoint: ") + e.what());
  }
}

DiscoveryResult runDiscovery(const Roster& roster, const RunConfig& config, const UsageStats* initialStats,
                             const RunCheckpoint* resume, const DiscoveryHooks& hooks) {
  config.validate(roster);
  if (config.weights.mode == ScoreMode::ABC && !initialStats && !resume)
    throw Error(ErrorKind::InvalidArgument, "ABC mode requires initial usage statistics");
  if (initialStats && initialStats->size() != roster.size())
    throw Error(ErrorKind::InvalidArgument, "initial statistics do not match the roster");

  const auto banned = bannedMask(roster, config);
  const auto agent = makeAgent(config.agent);

  DiscoveryResult result;
  result.stats = UsageStats(roster.size());
  std::uint64_t done = 0;
  if (resume) {
    if (resume->stats.size() != roster.size())
      throw Error(ErrorKind::InvalidArgument, "checkpoint does not match the roster");
    if (resume->battlesDone > config.totalBattles)
      throw Error(ErrorKind::InvalidArgument, "checkpoint is past total_battles");
    result.stats = resume->stats;
    result.months = resume->months;
    done = resume->battlesDone;
  }
  std::uint64_t nextMonth = (done / config.battlesPerMonth + 1) * config.battlesPerMonth;

  std::vector<Team> pool(config.teamPoolSize);
  std::vector<BattleResult> window;
  while (done < config.totalBattles) {
    const UsageStats& driving =
        result.stats.numBattles() > 0 || !initialStats ? result.stats : *initialStats;
    std::vector<std::size_t> metaIdx;
    if (driving.numBattles() > 0) {
      const MetaSnapshot meta = extractMeta(driving, roster, config.metaSize, banned);
      metaIdx = resolveSpecies(roster, meta.metaSet());
    }
    const ScoringContext ctx = ScoringContext::build(roster, driving, metaIdx, banned, config.weights);
    const double eps = epsilonAt(config.epsilon, done);

    parallelFor(pool.size(), config.threads, [&](std::size_t t) {
      Engine rng = makeEngine(deriveSeed(config.seed, {streamTag("team"), done, t}));
      pool[t] = buildTeam(ctx, eps, rng);
    });

    const std::uint64_t count = std::min(config.statsUpdateInterval, config.totalBattles - done);
    window.assign(count, BattleResult{});
    parallelFor(count, config.threads, [&](std::size_t k) {
      const std::uint64_t battle = done + k;
      Engine pairRng = makeEngine(deriveSeed(config.seed, {streamTag("pair"), battle}));
      const std::size_t a = uniformBelow(pairRng, pool.size());
      std::size_t b = uniformBelow(pairRng, pool.size());
      while (pool.size() > 1 && b == a) b = uniformBelow(pairRng, pool.size());
      const std::uint64_t seed = deriveSeed(config.seed, {streamTag("battle"), battle});
      window[k] = runBattle(roster, pool[a], pool[b], *agent, *agent, seed);
    });

    for (std::uint64_t k = 0; k < count; ++k) {
      const std::uint64_t battle = done + k;
      if (hooks.battleLog && battle < hooks.battleLogLimit) {
        // Replay with logging; the seeded battle reproduces the same trajectory.
        Engine pairRng = makeEngine(deriveSeed(config.seed, {streamTag("pair"), battle}));
        const std::size_t a = uniformBelow(pairRng, pool.size());
        std::size_t b = uniformBelow(pairRng, pool.size());
        while (pool.size() > 1 && b == a) b = uniformBelow(pairRng, pool.size());
        BattleOptions opts;
        opts.log = hooks.battleLog;
        runBattle(roster, pool[a], pool[b], *agent, *agent, deriveSeed(config.seed, {streamTag("battle"), battle}),
                  opts);
      }
      result.stats.recordBattle(window[k]);
    }
    done += count;
    ++result.aggregations;
    while (nextMonth <= done) {
      MonthSnapshot ms{nextMonth / config.battlesPerMonth, done,
                       extractMeta(result.stats, roster, config.metaSize, banned)};
      if (hooks.onMonth) hooks.onMonth(ms);
      result.months.push_back(std::move(ms));
      nextMonth += config.battlesPerMonth;
    }
    if (hooks.onAggregate) hooks.onAggregate(RunCheckpoint{done, result.stats, result.months});
  }

  result.battlesRecorded = result.stats.numBattles();
  result.meta = extractMeta(result.stats.numBattles() > 0 || !initialStats ? result.stats : *initialStats, roster,
                            config.metaSize, banned);
  return result;
}

}  // namespace metadisc
