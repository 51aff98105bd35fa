#include <doctest.h>

#include <set>

#include "error.hpp"
#include "fixture.hpp"
#include "support/oracles.hpp"
#include "teambuilder.hpp"

using namespace metadisc;

namespace {

Roster smallRoster() {
  FixtureOptions o;
  o.size = 24;
  o.seed = 6;
  o.lcCount = 0;
  return fixtureRoster(generateFixture(o));
}

UsageStats someStats(const Roster& r, std::uint64_t seed) {
  UsageStats s(r.size());
  Engine rng = makeEngine(seed);
  const HeuristicAgent agent;
  for (int k = 0; k < 200; ++k) {
    std::vector<std::size_t> pool(r.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    // Skew usage so pickrates differ.
    for (std::size_t i = pool.size() - 1; i > 0; --i)
      std::swap(pool[i], pool[uniformBelow(rng, std::min<std::uint64_t>(i + 1, 14))]);
    const std::vector<std::size_t> a(pool.begin(), pool.begin() + 6), b(pool.begin() + 6, pool.begin() + 12);
    s.recordBattle(runBattle(r, a, b, agent, agent, rng()));
  }
  return s;
}

}  // namespace

TEST_CASE("epsilon schedule") {
  const auto bsd = EpsilonSchedule::bsdDefault();
  CHECK(epsilonAt(bsd, 0) == 1.0);
  CHECK(epsilonAt(bsd, 10000) == doctest::Approx(0.5005));
  CHECK(epsilonAt(bsd, 20000) == 0.001);
  CHECK(epsilonAt(bsd, 99999) == 0.001);
  CHECK(epsilonAt(EpsilonSchedule::abcDefault(), 0) == 0.001);
  CHECK_THROWS_AS((EpsilonSchedule{0.1, 0.5, 10}.validate()), Error);
  CHECK_THROWS_AS(ScoreWeights::abc(-1.0).validate(), Error);
}

TEST_CASE("ABC scores match the definition") {
  const Roster r = smallRoster();
  const UsageStats s = someStats(r, 1);
  const std::vector<std::size_t> meta{0, 3, 5, 8};
  const std::vector<std::size_t> team{2, 7};
  for (auto [c1, c2, c3] : {std::array{1.0, 0.0, 0.0}, std::array{0.2, 0.5, 0.3}, std::array{0.0, 0.0, 1.0}}) {
    const auto ctx = ScoringContext::build(r, s, meta, std::vector<std::uint8_t>(r.size(), 0),
                                           ScoreWeights::abc(c1, c2, c3));
    const auto got = scoreABC(ctx, team);
    for (std::size_t x = 0; x < r.size(); ++x) {
      const long double bracket = c1 * oracle::bst(r, x) + c2 * oracle::metaTypeValue(r, meta, x) +
                                  c3 * oracle::teamTypeValue(r, team, x);
      CHECK(got[x] == doctest::Approx(static_cast<double>(oracle::pickrate(s, x) * bracket)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ABC with all weights zero is the pickrate") {
  const Roster r = smallRoster();
  const UsageStats s = someStats(r, 2);
  const auto ctx = ScoringContext::build(r, s, {}, std::vector<std::uint8_t>(r.size(), 0),
                                         ScoreWeights::abc(0, 0, 0));
  const auto got = scoreABC(ctx, {});
  for (std::size_t x = 0; x < r.size(); ++x) CHECK(got[x] == pickrate(s, x));
}

TEST_CASE("BSD scores match the definition") {
  const Roster r = smallRoster();
  const UsageStats s = someStats(r, 3);
  const std::vector<std::size_t> meta{1, 2, 3, 4, 5};
  const std::vector<std::size_t> team{6, 9, 11};
  const auto w = ScoreWeights::bsd();
  const auto ctx = ScoringContext::build(r, s, meta, std::vector<std::uint8_t>(r.size(), 0), w);
  const auto got = scoreBSD(ctx, team);
  for (std::size_t x = 0; x < r.size(); ++x) {
    const long double want = oracle::winrate(s, x) + w.a * oracle::bst(r, x) +
                             w.b * oracle::metaTypeValue(r, meta, x) + w.c * oracle::teamTypeValue(r, team, x) +
                             oracle::popularity(s, x, team);
    CHECK(got[x] == doctest::Approx(static_cast<double>(want)).epsilon(1e-12));
  }
  // First pick: no team terms, no meta yet.
  const auto cold = ScoringContext::build(r, s, {}, std::vector<std::uint8_t>(r.size(), 0), w);
  const auto first = scoreBSD(cold, {});
  for (std::size_t x = 0; x < r.size(); ++x)
    CHECK(first[x] == doctest::Approx(static_cast<double>(oracle::winrate(s, x) + w.a * oracle::bst(r, x))));
}

TEST_CASE("banned characters score zero and are never picked") {
  const Roster r = smallRoster();
  const UsageStats s = someStats(r, 4);
  std::vector<std::uint8_t> banned(r.size(), 0);
  for (std::size_t x = 0; x < r.size(); x += 2) banned[x] = 1;
  const auto ctx = ScoringContext::build(r, s, {}, banned, ScoreWeights::bsd());
  const auto sc = score(ctx, {});
  for (std::size_t x = 0; x < r.size(); x += 2) CHECK(sc[x] == 0.0);
  Engine rng = makeEngine(5);
  for (int k = 0; k < 300; ++k) {
    const Team t = buildTeam(ctx, 0.5, rng);
    std::set<std::size_t> seen(t.begin(), t.end());
    CHECK(seen.size() == 6);
    for (std::size_t x : t) CHECK(banned[x] == 0);
  }
}

TEST_CASE("buildTeam needs six eligible characters") {
  const Roster r = smallRoster();
  const UsageStats s(r.size());
  std::vector<std::uint8_t> banned(r.size(), 1);
  for (int x = 0; x < 5; ++x) banned[x] = 0;
  const auto ctx = ScoringContext::build(r, s, {}, banned, ScoreWeights::abc());
  Engine rng = makeEngine(1);
  CHECK_THROWS_AS(buildTeam(ctx, 0.1, rng), Error);
}

TEST_CASE("pick distribution branches") {
  const std::vector<double> scores{0.0, 2.0, 6.0, 2.0};
  const std::vector<double> picks{0.0, 0.25, 0.5, 0.25};
  const std::vector<std::uint8_t> eligible{1, 1, 1, 0};
  const auto d = pickDistribution(scores, picks, eligible, 2);
  CHECK_FALSE(d.greedyEmpty);
  CHECK(d.greedy[1] == doctest::Approx(0.25));
  CHECK(d.greedy[2] == doctest::Approx(0.75));
  CHECK(d.greedy[3] == 0.0);
  // delta = 1/4: weights 4, 2, 4/3.
  const double total = 4 + 2 + 4.0 / 3;
  CHECK(d.explore[0] == doctest::Approx(4 / total));
  CHECK(d.explore[1] == doctest::Approx(2 / total));
  CHECK(d.explore[3] == 0.0);

  const std::vector<double> zeros{0.0, 0.0, 0.0, 0.0};
  const auto e = pickDistribution(zeros, picks, eligible, 2);
  CHECK(e.greedyEmpty);
  CHECK(e.greedy == e.explore);

  const std::vector<std::uint8_t> none{0, 0, 0, 0};
  CHECK_THROWS_AS(pickDistribution(scores, picks, none, 2), Error);
}

TEST_CASE("epsilon selects the branch at the expected rate") {
  const std::vector<double> scores{1.0, 0.0, 0.0, 0.0};
  const std::vector<double> picks{0.5, 0.0, 0.0, 0.0};
  Engine rng = makeEngine(9);
  const int n = 40000;
  int notGreedy = 0;
  for (int k = 0; k < n; ++k) notGreedy += samplePick(scores, picks, 0.3, {}, {}, 10, rng) != 0;
  // Explore weights: 1/0.55 for index 0, 1/0.05 for the rest.
  const double p0 = (1 / 0.55) / (1 / 0.55 + 3 / 0.05);
  CHECK(notGreedy / double(n) == doctest::Approx(0.3 * (1 - p0)).epsilon(0.05));
}

TEST_CASE("type values") {
  const Roster r = smallRoster();
  CHECK_THROWS_AS(metaTypeValue(r, {}), Error);
  const auto empty = typeValue(r, {});
  for (double v : empty) CHECK(v == 0.0);
  const std::vector<std::size_t> team{0, 1};
  const auto tv = typeValue(r, team);
  for (std::size_t x = 0; x < r.size(); ++x)
    CHECK(tv[x] == doctest::Approx(static_cast<double>(oracle::teamTypeValue(r, team, x))).epsilon(1e-12));
}
