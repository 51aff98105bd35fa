#include <doctest.h>

#include <sstream>

#include "discovery.hpp"
#include "error.hpp"
#include "fixture.hpp"

using namespace metadisc;

namespace {

Roster roster() {
  FixtureOptions o;
  o.size = 40;
  o.seed = 2;
  return fixtureRoster(generateFixture(o));
}

RunConfig bsdConfig() {
  RunConfig c;
  c.totalBattles = 600;
  c.battlesPerMonth = 200;
  c.statsUpdateInterval = 100;
  c.teamPoolSize = 50;
  c.metaSize = 8;
  c.seed = 5;
  c.weights = ScoreWeights::bsd();
  c.epsilon = EpsilonSchedule::bsdDefault();
  return c;
}

}  // namespace

TEST_CASE("run config validation") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  CHECK_NOTHROW(c.validate(r));
  c.totalBattles = 0;
  CHECK_THROWS_AS(c.validate(r), Error);
  c = bsdConfig();
  c.statsUpdateInterval = 601;
  CHECK_THROWS_AS(c.validate(r), Error);
  c = bsdConfig();
  c.banned = {"Nobody"};
  CHECK_THROWS_AS(c.validate(r), Error);
  c = bsdConfig();
  c.epsilon = {0.1, 0.2, 0};
  CHECK_THROWS_AS(c.validate(r), Error);
}

TEST_CASE("run config JSON round trip") {
  RunConfig c = bsdConfig();
  c.banned = {"Mon001"};
  c.threads = 3;
  const RunConfig back = runConfigFromJson(runConfigToJson(c));
  CHECK(runConfigToJson(back) == runConfigToJson(c));
  CHECK((back.weights.mode == ScoreMode::BSD));
  CHECK_THROWS_AS(runConfigFromJson(nlohmann::json::array()), Error);
}

TEST_CASE("bans: named plus blanket tiers") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  const std::vector<std::string> ban{r.character(0).species};
  c = applyBan(c, ban, r);
  c = applyBan(c, ban, r);
  CHECK(c.banned.size() == 1);
  const auto mask = bannedMask(r, c);
  CHECK(mask[0] == 1);
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r.character(x).tier == "LC") CHECK(mask[x] == 1);
  const std::vector<std::string> unknown{"Nobody"};
  CHECK_THROWS_AS(applyBan(c, unknown, r), Error);
}

TEST_CASE("meta extraction order") {
  const Roster r = roster();
  UsageStats s(r.size());
  s.setBattles(10);
  s.setPicks(3, 8);
  s.setWins(3, 2);
  s.setPicks(1, 8);
  s.setWins(1, 6);
  s.setPicks(2, 4);
  std::vector<std::uint8_t> banned(r.size(), 0);
  banned[2] = 1;
  const auto m = extractMeta(s, r, 3, banned);
  CHECK(m.ranking[0].species == r.character(1).species);
  CHECK(m.ranking[1].species == r.character(3).species);
  CHECK_FALSE(m.rankOf(r.character(2).species));
  CHECK(m.metaSet().size() == 3);
  CHECK_THROWS_AS(extractMeta(s, r, r.size(), banned), Error);
}

TEST_CASE("snapshot CSV and JSON round trips") {
  const Roster r = roster();
  UsageStats s(r.size());
  s.setBattles(3);
  for (std::size_t x = 0; x < r.size(); ++x) s.setPicks(x, x % 5);
  const auto m = extractMeta(s, r, 5);
  std::ostringstream os;
  writeSnapshotCsv(os, m);
  std::istringstream in(os.str());
  CHECK(parseSnapshotCsv(in, "m.csv", 5) == m);
  CHECK(snapshotFromJson(snapshotToJson(m)) == m);
  std::istringstream bad("rank,species,pickrate,winrate\n1,A,0.1,0.1\n3,B,0.1,0.1\n");
  CHECK_THROWS_AS(parseSnapshotCsv(bad, "bad.csv", 1), Error);
}

TEST_CASE("discovery is deterministic and thread independent") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  const auto one = runDiscovery(r, c, nullptr);
  CHECK(one.battlesRecorded == 600);
  CHECK(one.aggregations == 6);
  REQUIRE(one.months.size() == 3);
  CHECK(one.months[2].battles == 600);
  CHECK(one.months[2].meta == one.meta);
  const auto again = runDiscovery(r, c, nullptr);
  CHECK(again.stats == one.stats);
  c.threads = 3;
  const auto threaded = runDiscovery(r, c, nullptr);
  CHECK(threaded.stats == one.stats);
  CHECK(threaded.meta == one.meta);
  c.threads = 1;
  c.seed = 6;
  CHECK_FALSE(runDiscovery(r, c, nullptr).stats == one.stats);
}

TEST_CASE("discovery never fields banned characters") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  c.banned = {r.character(0).species, r.character(1).species};
  const auto res = runDiscovery(r, c, nullptr);
  const auto mask = bannedMask(r, c);
  for (std::size_t x = 0; x < r.size(); ++x)
    if (mask[x]) CHECK(res.stats.picks(x) == 0);
}

TEST_CASE("resuming from a checkpoint reproduces the run") {
  const Roster r = roster();
  const RunConfig c = bsdConfig();
  std::optional<RunCheckpoint> mid;
  DiscoveryHooks hooks;
  hooks.onAggregate = [&](const RunCheckpoint& cp) {
    if (cp.battlesDone == 300) mid = cp;
  };
  const auto full = runDiscovery(r, c, nullptr, nullptr, hooks);
  REQUIRE(mid);
  CHECK(mid->months.size() == 1);
  const RunCheckpoint cp = checkpointFromJson(checkpointToJson(*mid, r), r);
  const auto resumed = runDiscovery(r, c, nullptr, &cp);
  CHECK(resumed.stats == full.stats);
  CHECK(resumed.meta == full.meta);
  REQUIRE(resumed.months.size() == full.months.size());
  for (std::size_t i = 0; i < full.months.size(); ++i) CHECK(resumed.months[i].meta == full.months[i].meta);

  auto doc = checkpointToJson(*mid, r);
  doc["battles_done"] = 12345;
  CHECK_THROWS_AS(checkpointFromJson(doc, r), Error);
}

TEST_CASE("ABC discovery needs initial stats and starts from them") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  c.weights = ScoreWeights::abc();
  c.epsilon = EpsilonSchedule::abcDefault();
  CHECK_THROWS_AS(runDiscovery(r, c, nullptr), Error);

  // Initial usage concentrated on twelve characters: the first window's
  // teams come almost entirely from them.
  UsageStats init(r.size());
  init.setBattles(1000);
  std::vector<std::size_t> popular;
  for (std::size_t x = 0; x < r.size() && popular.size() < 12; ++x)
    if (r.character(x).tier != "LC") popular.push_back(x);
  for (std::size_t x : popular) init.setPicks(x, 1000);
  c.totalBattles = 100;
  c.statsUpdateInterval = 100;
  c.battlesPerMonth = 100;
  const auto res = runDiscovery(r, c, &init);
  std::uint64_t inPopular = 0;
  for (std::size_t x : popular) inPopular += res.stats.picks(x);
  CHECK(inPopular >= 2 * 100 * 6 * 95 / 100);
}

TEST_CASE("battle log hook writes the first battles") {
  const Roster r = roster();
  RunConfig c = bsdConfig();
  c.totalBattles = 100;
  c.battlesPerMonth = 100;
  std::ostringstream log;
  DiscoveryHooks hooks;
  hooks.battleLog = &log;
  hooks.battleLogLimit = 2;
  const auto withLog = runDiscovery(r, c, nullptr, nullptr, hooks);
  CHECK_FALSE(log.str().empty());
  CHECK(withLog.stats == runDiscovery(r, c, nullptr).stats);
}
