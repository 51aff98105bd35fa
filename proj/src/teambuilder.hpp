#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rng.hpp"
#include "roster.hpp"
#include "stats.hpp"

namespace metadisc {

enum class ScoreMode { ABC, BSD };

const char* toString(ScoreMode mode);
ScoreMode parseScoreMode(std::string_view name);

// ABC: pickrate * (c1*BST + c2*MTV + c3*TV); with all c zero the bracket is
// dropped and the score is the pickrate alone.
// BSD: winrate + a*BST + b*MTV + c*TV + popularity.
struct ScoreWeights {
  ScoreMode mode = ScoreMode::ABC;
  double c1 = 1.0, c2 = 0.0, c3 = 0.0;
  double a = 0.50, b = 0.25, c = 0.25;

  static ScoreWeights abc(double c1 = 1.0, double c2 = 0.0, double c3 = 0.0);
  static ScoreWeights bsd(double a = 0.50, double b = 0.25, double c = 0.25);
  void validate() const;
};

struct EpsilonSchedule {
  double start = 0.001;
  double end = 0.001;
  std::uint64_t decayBattles = 0;

  static EpsilonSchedule abcDefault() { return {0.001, 0.001, 0}; }
  static EpsilonSchedule bsdDefault() { return {1.0, 0.001, 20000}; }
  void validate() const;
};

// Linear from start to end over decayBattles, then held at end.
double epsilonAt(const EpsilonSchedule& schedule, std::uint64_t battlesElapsed);

std::vector<TypeId> typesOf(const Roster& roster, std::span<const std::size_t> characters);

// Throws Error(InvalidArgument) on an empty meta set.
std::vector<double> metaTypeValue(const Roster& roster, std::span<const std::size_t> metaSet);
// Types hitting the team's types super-effectively form the counter group;
// characters are then valued by how well they hit that group. All zeros for an
// empty team or an empty counter group.
std::vector<double> typeValue(const Roster& roster, std::span<const std::size_t> currentTeam);

// Everything that stays fixed while one stats snapshot drives team building.
struct ScoringContext {
  const Roster* roster = nullptr;
  const UsageStats* stats = nullptr;
  ScoreWeights weights;
  PopularityNorm norm;
  std::vector<double> pickrates;
  std::vector<double> winrates;
  std::vector<double> bst;
  std::vector<double> mtv;
  std::vector<std::uint8_t> banned;

  // An empty metaSet (no meta yet) leaves the MTV term at zero.
  static ScoringContext build(const Roster& roster, const UsageStats& stats,
                              std::span<const std::size_t> metaSet, std::vector<std::uint8_t> banned,
                              const ScoreWeights& weights);

  bool teamDependent() const;
};

std::vector<double> scoreABC(const ScoringContext& ctx, std::span<const std::size_t> currentTeam);
std::vector<double> scoreBSD(const ScoringContext& ctx, std::span<const std::size_t> currentTeam);
std::vector<double> score(const ScoringContext& ctx, std::span<const std::size_t> currentTeam);

// The two branches of the epsilon-greedy pick, each normalized over the
// eligible characters (neither banned nor already picked).
struct PickDistribution {
  std::vector<double> greedy;   // proportional to score
  std::vector<double> explore;  // proportional to 1 / (pickrate + delta)
  bool greedyEmpty = false;     // all eligible scores zero: explore is used instead
};

std::vector<std::uint8_t> eligibleMask(std::size_t n, std::span<const std::size_t> alreadyPicked,
                                       std::span<const std::uint8_t> banned);

// delta = 1 / (2 * max(numBattles, 1)).
PickDistribution pickDistribution(std::span<const double> scores, std::span<const double> pickrates,
                                  std::span<const std::uint8_t> eligible, std::uint64_t numBattles);

// Draws one uniform for the branch and one for the index. Throws
// Error(InvalidArgument) when nothing is eligible.
std::size_t samplePick(std::span<const double> scores, std::span<const double> pickrates, double epsilon,
                       std::span<const std::size_t> alreadyPicked, std::span<const std::uint8_t> banned,
                       std::uint64_t numBattles, Engine& rng);

using Team = std::array<std::size_t, kTeamSize>;

// Six sequential picks; team-dependent terms are recomputed after each pick.
// Throws Error(InvalidArgument) with fewer than six eligible characters.
Team buildTeam(const ScoringContext& ctx, double epsilon, Engine& rng);

}  // namespace metadisc
