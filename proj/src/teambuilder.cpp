#include "teambuilder.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace metadisc {

const char* toString(ScoreMode mode) { return mode == ScoreMode::ABC ? "ABC" : "BSD"; }

ScoreMode parseScoreMode(std::string_view name) {
  if (name == "ABC" || name == "abc") return ScoreMode::ABC;
  if (name == "BSD" || name == "bsd") return ScoreMode::BSD;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(name) + "'");
}

ScoreWeights ScoreWeights::abc(double c1, double c2, double c3) {
  ScoreWeights w;
  w.mode = ScoreMode::ABC;
  w.c1 = c1;
  w.c2 = c2;
  w.c3 = c3;
  return w;
}

ScoreWeights ScoreWeights::bsd(double a, double b, double c) {
  ScoreWeights w;
  w.mode = ScoreMode::BSD;
  w.a = a;
  w.b = b;
  w.c = c;
  return w;
}

void ScoreWeights::validate() const {
  for (double v : {c1, c2, c3, a, b, c})
    if (!(v >= 0.0)) throw Error(ErrorKind::InvalidArgument, "score weights must be non-negative");
}

void EpsilonSchedule::validate() const {
  if (!(start >= 0.0 && start <= 1.0 && end >= 0.0 && end <= 1.0))
    throw Error(ErrorKind::InvalidArgument, "epsilon values must lie in [0, 1]");
  if (end > start) throw Error(ErrorKind::InvalidArgument, "epsilon end must not exceed start");
}

double epsilonAt(const EpsilonSchedule& s, std::uint64_t battlesElapsed) {
  if (battlesElapsed >= s.decayBattles) return s.end;
  const double t = static_cast<double>(battlesElapsed) / static_cast<double>(s.decayBattles);
  return s.start + (s.end - s.start) * t;
}

std::vector<TypeId> typesOf(const Roster& roster, std::span<const std::size_t> characters) {
  std::vector<TypeId> out;
  for (std::size_t c : characters)
    for (TypeId t : roster.character(c).types) out.push_back(t);
  return out;
}

std::vector<double> metaTypeValue(const Roster& roster, std::span<const std::size_t> metaSet) {
  if (metaSet.empty()) throw Error(ErrorKind::InvalidArgument, "meta set is empty");
  return characterTypeValues(roster, typeVectorFor(typesOf(roster, metaSet), roster.chart()));
}

std::vector<double> typeValue(const Roster& roster, std::span<const std::size_t> currentTeam) {
  const TypeChart& chart = roster.chart();
  std::vector<TypeId> counters;
  for (TypeId d : typesOf(roster, currentTeam))
    for (std::size_t a = 0; a < chart.size(); ++a)
      if (chart.score(static_cast<TypeId>(a), d) == 1) counters.push_back(static_cast<TypeId>(a));
  if (counters.empty()) return std::vector<double>(roster.size(), 0.0);
  return characterTypeValues(roster, typeVectorFor(counters, chart));
}

ScoringContext ScoringContext::build(const Roster& roster, const UsageStats& stats,
                                     std::span<const std::size_t> metaSet, std::vector<std::uint8_t> banned,
                                     const ScoreWeights& weights) {
  if (stats.size() != roster.size()) throw Error(ErrorKind::InvalidArgument, "stats do not match roster");
  if (banned.size() != roster.size()) throw Error(ErrorKind::InvalidArgument, "ban mask does not match roster");
  ScoringContext ctx;
  ctx.roster = &roster;
  ctx.stats = &stats;
  ctx.weights = weights;
  ctx.pickrates = metadisc::pickrates(stats);
  ctx.winrates = metadisc::winrates(stats);
  ctx.bst = baseStatTotals(roster);
  ctx.mtv = metaSet.empty() ? std::vector<double>(roster.size(), 0.0) : metaTypeValue(roster, metaSet);
  ctx.banned = std::move(banned);
  if (weights.mode == ScoreMode::BSD) ctx.norm = popularityNorm(stats);
  return ctx;
}

bool ScoringContext::teamDependent() const {
  return weights.mode == ScoreMode::BSD || weights.c3 != 0.0;
}

namespace {

void zeroBanned(const ScoringContext& ctx, std::vector<double>& scores) {
  for (std::size_t x = 0; x < scores.size(); ++x)
    if (ctx.banned[x]) scores[x] = 0.0;
}

}  // namespace

std::vector<double> scoreABC(const ScoringContext& ctx, std::span<const std::size_t> currentTeam) {
  const ScoreWeights& w = ctx.weights;
  const std::size_t n = ctx.roster->size();
  const bool bracketless = w.c1 == 0.0 && w.c2 == 0.0 && w.c3 == 0.0;
  std::vector<double> tv;
  if (w.c3 != 0.0) tv = typeValue(*ctx.roster, currentTeam);
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    double bracket = 1.0;
    if (!bracketless) bracket = w.c1 * ctx.bst[x] + w.c2 * ctx.mtv[x] + (w.c3 != 0.0 ? w.c3 * tv[x] : 0.0);
    out[x] = ctx.pickrates[x] * bracket;
  }
  zeroBanned(ctx, out);
  return out;
}

std::vector<double> scoreBSD(const ScoringContext& ctx, std::span<const std::size_t> currentTeam) {
  const ScoreWeights& w = ctx.weights;
  const std::size_t n = ctx.roster->size();
  const bool hasTeam = !currentTeam.empty();
  std::vector<double> tv;
  if (hasTeam) tv = typeValue(*ctx.roster, currentTeam);
  std::vector<double> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    double s = ctx.winrates[x] + w.a * ctx.bst[x] + w.b * ctx.mtv[x];
    if (hasTeam) s += w.c * tv[x] + popularity(*ctx.stats, ctx.norm, x, currentTeam);
    out[x] = s;
  }
  zeroBanned(ctx, out);
  return out;
}

std::vector<double> score(const ScoringContext& ctx, std::span<const std::size_t> currentTeam) {
  return ctx.weights.mode == ScoreMode::ABC ? scoreABC(ctx, currentTeam) : scoreBSD(ctx, currentTeam);
}

std::vector<std::uint8_t> eligibleMask(std::size_t n, std::span<const std::size_t> alreadyPicked,
                                       std::span<const std::uint8_t> banned) {
  std::vector<std::uint8_t> eligible(n, 1);
  for (std::size_t x = 0; x < n && x < banned.size(); ++x)
    if (banned[x]) eligible[x] = 0;
  for (std::size_t p : alreadyPicked)
    if (p < n) eligible[p] = 0;
  return eligible;
}

PickDistribution pickDistribution(std::span<const double> scores, std::span<const double> pickrates,
                                  std::span<const std::uint8_t> eligible, std::uint64_t numBattles) {
  const std::size_t n = scores.size();
  const double delta = 1.0 / (2.0 * static_cast<double>(std::max<std::uint64_t>(numBattles, 1)));
  PickDistribution d;
  d.greedy.assign(n, 0.0);
  d.explore.assign(n, 0.0);
  double greedyTotal = 0.0, exploreTotal = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!eligible[x]) continue;
    d.greedy[x] = std::max(0.0, scores[x]);
    d.explore[x] = 1.0 / (pickrates[x] + delta);
    greedyTotal += d.greedy[x];
    exploreTotal += d.explore[x];
  }
  if (exploreTotal == 0.0) throw Error(ErrorKind::InvalidArgument, "no eligible characters to pick from");
  for (double& v : d.explore) v /= exploreTotal;
  if (greedyTotal > 0.0) {
    for (double& v : d.greedy) v /= greedyTotal;
  } else {
    d.greedyEmpty = true;
    d.greedy = d.explore;
  }
  return d;
}

std::size_t samplePick(std::span<const double> scores, std::span<const double> pickrates, double epsilon,
                       std::span<const std::size_t> alreadyPicked, std::span<const std::uint8_t> banned,
                       std::uint64_t numBattles, Engine& rng) {
  const auto eligible = eligibleMask(scores.size(), alreadyPicked, banned);
  const PickDistribution d = pickDistribution(scores, pickrates, eligible, numBattles);
  const bool explore = uniform01(rng) < epsilon;
  const auto& weights = explore ? d.explore : d.greedy;
  return sampleWeighted(weights, 1.0, rng);
}

Team buildTeam(const ScoringContext& ctx, double epsilon, Engine& rng) {
  const std::size_t n = ctx.roster->size();
  std::size_t eligibleCount = 0;
  for (std::size_t x = 0; x < n; ++x) eligibleCount += ctx.banned[x] ? 0 : 1;
  if (eligibleCount < static_cast<std::size_t>(kTeamSize))
    throw Error(ErrorKind::InvalidArgument, "fewer than six eligible characters");

  Team team{};
  std::vector<std::size_t> picked;
  picked.reserve(kTeamSize);
  std::vector<double> scores;
  const bool dependent = ctx.teamDependent();
  for (int slot = 0; slot < kTeamSize; ++slot) {
    if (slot == 0 || dependent) scores = score(ctx, picked);
    const std::size_t pick =
        samplePick(scores, ctx.pickrates, epsilon, picked, ctx.banned, ctx.stats->numBattles(), rng);
    team[slot] = pick;
    picked.push_back(pick);
  }
  return team;
}

}  // namespace metadisc
