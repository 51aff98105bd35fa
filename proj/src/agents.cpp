#include "agents.hpp"

#include "error.hpp"

namespace metadisc {

const char* toString(AgentKind kind) { return kind == AgentKind::Random ? "random" : "heuristic"; }

AgentKind parseAgentKind(std::string_view name) {
  if (name == "random") return AgentKind::Random;
  if (name == "heuristic") return AgentKind::Heuristic;
  throw Error(ErrorKind::InvalidArgument, "unknown agent kind '" + std::string(name) + "'");
}

Action randomPolicy(const ActionSet& legal, Engine& rng) {
  return legal[static_cast<std::size_t>(uniformBelow(rng, legal.size()))];
}

double offensiveMatchup(const Roster& roster, std::size_t character, std::size_t target) {
  const Character& c = roster.character(character);
  const auto& targetTypes = roster.character(target).types;
  double best = 0.0;
  for (std::size_t m : c.moves) {
    const MoveDef& move = roster.move(m);
    if (!move.damaging()) continue;
    best = std::max(best, roster.chart().effectiveness(move.type, targetTypes));
  }
  return best;
}

double defensiveMatchup(const Roster& roster, std::size_t character, std::size_t target) {
  const auto& ownTypes = roster.character(character).types;
  double worst = 0.0;
  for (TypeId t : roster.character(target).types)
    worst = std::max(worst, roster.chart().effectiveness(t, ownTypes));
  return worst;
}

namespace {

double matchupScore(const Roster& roster, std::size_t character, std::size_t target) {
  return offensiveMatchup(roster, character, target) - defensiveMatchup(roster, character, target);
}

}  // namespace

Action heuristicPolicy(const Observation& obs, const ActionSet& legal, Engine&) {
  const Roster& roster = *obs.roster;
  const TeamState& own = *obs.own;
  const std::size_t foe = obs.opponentActive;

  auto bestSwitch = [&](auto&& admissible) -> std::optional<Action> {
    std::optional<Action> best;
    double bestScore = 0.0;
    for (const Action& a : legal) {
      if (a.kind != Action::Kind::Switch) continue;
      const std::size_t who = own.members[a.slot].character;
      if (!admissible(who)) continue;
      const double s = matchupScore(roster, who, foe);
      if (!best || s > bestScore) {
        best = a;
        bestScore = s;
      }
    }
    return best;
  };

  if (obs.forcedSwitch) {
    if (auto s = bestSwitch([](std::size_t) { return true; })) return *s;
    return legal[0];
  }

  const Character& self = roster.character(own.activeBattler().character);
  const auto& foeTypes = roster.character(foe).types;
  std::optional<Action> bestMove;
  double bestValue = -1.0;
  double bestEffectiveness = 0.0;
  for (const Action& a : legal) {
    if (a.kind != Action::Kind::Move) continue;
    const MoveDef& move = roster.move(self.moves[a.slot]);
    double value = 0.0;
    double eff = 0.0;
    if (move.damaging()) {
      eff = roster.chart().effectiveness(move.type, foeTypes);
      value = move.basePower * (self.hasType(move.type) ? 1.5 : 1.0) * eff * move.accuracy;
    }
    if (value > bestValue) {
      bestMove = a;
      bestValue = value;
      bestEffectiveness = eff;
    }
  }

  if (!bestMove || bestEffectiveness < 1.0) {
    auto s = bestSwitch([&](std::size_t who) {
      return defensiveMatchup(roster, who, foe) <= 0.5 && offensiveMatchup(roster, who, foe) >= 2.0;
    });
    if (s) return *s;
  }
  return bestMove ? *bestMove : legal[0];
}

Action RandomAgent::choose(const Observation&, const ActionSet& legal, Engine& rng) const {
  return randomPolicy(legal, rng);
}

Action HeuristicAgent::choose(const Observation& obs, const ActionSet& legal, Engine& rng) const {
  return heuristicPolicy(obs, legal, rng);
}

std::unique_ptr<Agent> makeAgent(AgentKind kind) {
  if (kind == AgentKind::Random) return std::make_unique<RandomAgent>();
  return std::make_unique<HeuristicAgent>();
}

}  // namespace metadisc
