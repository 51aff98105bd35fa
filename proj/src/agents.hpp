#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "battle.hpp"

namespace metadisc {

enum class AgentKind { Random, Heuristic };

const char* toString(AgentKind kind);
AgentKind parseAgentKind(std::string_view name);

// Uniform over the legal set.
Action randomPolicy(const ActionSet& legal, Engine& rng);

// Type-matchup heuristic:
//  1. forced switch: living teammate with the best matchup vs the opposing active;
//  2. otherwise the move maximizing power * STAB * effectiveness * accuracy;
//  3. if that move is not at least neutral, switch to the best teammate that
//     resists every opposing type and hits the opposing active for >= 2x.
// Ties go to the lowest slot; `rng` is never consumed.
Action heuristicPolicy(const Observation& obs, const ActionSet& legal, Engine& rng);

// Best effectiveness among the character's damaging moves against the
// target's types (0 without damaging moves).
double offensiveMatchup(const Roster& roster, std::size_t character, std::size_t target);
// Worst-case multiplier the target's own types deal to the character.
double defensiveMatchup(const Roster& roster, std::size_t character, std::size_t target);

class RandomAgent final : public Agent {
 public:
  Action choose(const Observation& obs, const ActionSet& legal, Engine& rng) const override;
};

class HeuristicAgent final : public Agent {
 public:
  Action choose(const Observation& obs, const ActionSet& legal, Engine& rng) const override;
};

std::unique_ptr<Agent> makeAgent(AgentKind kind);

}  // namespace metadisc
