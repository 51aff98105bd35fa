#include <doctest.h>

#include "agents.hpp"
#include "error.hpp"
#include "support/oracles.hpp"
#include "support/tiny_roster.hpp"

using namespace metadisc;

namespace {

Action heuristicFor(const Roster& r, std::initializer_list<const char*> own, const char* foe) {
  std::vector<std::size_t> a;
  for (const char* s : own) a.push_back(*r.indexOf(s));
  const std::size_t b[1] = {*r.indexOf(foe)};
  const BattleState s = initialBattle(r, a, b);
  Engine rng = makeEngine(0);
  const Engine before = rng;
  const Action act = heuristicPolicy(observe(s, Side::A), legalActions(s, Side::A), rng);
  CHECK(rng == before);
  return act;
}

}  // namespace

TEST_CASE("heuristic picks the strongest effective move") {
  const Roster r = testdata::tinyRoster();
  CHECK((heuristicFor(r, {"Blaze"}, "Fern") == Action::move(1)));
  CHECK((heuristicFor(r, {"Tide"}, "Steam") == Action::move(0)));
  CHECK((heuristicFor(r, {"Moss"}, "Tide") == Action::move(0)));
}

TEST_CASE("heuristic switches out of a resisted matchup") {
  const Roster r = testdata::tinyRoster();
  // Cinder's only move is resisted; Blaze is weak to Water, Fern resists it
  // and hits back for double.
  CHECK((heuristicFor(r, {"Cinder", "Blaze", "Fern"}, "Tide") == Action::switchTo(2)));
  // Without a qualifying teammate it stays in and attacks.
  CHECK((heuristicFor(r, {"Cinder", "Blaze"}, "Tide") == Action::move(0)));
}

TEST_CASE("matchup helpers") {
  const Roster r = testdata::tinyRoster();
  auto id = [&](const char* s) { return *r.indexOf(s); };
  CHECK(offensiveMatchup(r, id("Fern"), id("Tide")) == 2.0);
  CHECK(offensiveMatchup(r, id("Plain"), id("Wisp")) == 0.0);
  CHECK(defensiveMatchup(r, id("Fern"), id("Tide")) == 0.5);
  CHECK(defensiveMatchup(r, id("Blaze"), id("Tide")) == 2.0);
  // Grass into Fire/Water: 0.5 * 2.
  CHECK(defensiveMatchup(r, id("Steam"), id("Fern")) == 1.0);
}

TEST_CASE("random policy is uniform over legal actions") {
  const Roster r = testdata::tinyRoster();
  const std::size_t a[3] = {0, 1, 2}, b[1] = {3};
  const BattleState s = initialBattle(r, a, b);
  const ActionSet legal = legalActions(s, Side::A);
  Engine rng = makeEngine(12);
  std::vector<int> counts(legal.size());
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const Action act = randomPolicy(legal, rng);
    for (std::size_t k = 0; k < legal.size(); ++k)
      if (legal[k] == act) ++counts[k];
  }
  for (int c : counts) CHECK(c == doctest::Approx(double(n) / legal.size()).epsilon(0.05));
}

TEST_CASE("agent names") {
  CHECK((parseAgentKind("random") == AgentKind::Random));
  CHECK((parseAgentKind("heuristic") == AgentKind::Heuristic));
  CHECK_THROWS_AS(parseAgentKind("greedy"), Error);
  CHECK(std::string(toString(AgentKind::Heuristic)) == "heuristic");
  CHECK(makeAgent(AgentKind::Random) != nullptr);
}

TEST_CASE("heuristic beats random on the tiny roster") {
  const Roster r = testdata::tinyRoster();
  const HeuristicAgent heu;
  const RandomAgent rnd;
  const std::size_t a[3] = {0, 1, 2}, b[3] = {0, 1, 2};
  int wins = 0;
  const int n = 400;
  for (int k = 0; k < n; ++k) {
    if (k % 2 == 0)
      wins += runBattle(r, a, b, heu, rnd, k).winner == Side::A;
    else
      wins += runBattle(r, a, b, rnd, heu, k).winner == Side::B;
  }
  CHECK(wins > n * 0.6);
}

TEST_CASE("mirror duels are balanced") {
  const Roster r = testdata::tinyRoster();
  const HeuristicAgent heu;
  const double wr = oracle::duelWinrate(r, 0, 0, 200, 1, heu);
  CHECK(wr > 0.3);
  CHECK(wr < 0.7);
}
