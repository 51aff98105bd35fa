#include "battle.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "error.hpp"

namespace metadisc {

int TeamState::livingCount() const {
  int n = 0;
  for (int i = 0; i < size; ++i) n += members[i].fainted() ? 0 : 1;
  return n;
}

std::string toString(const Action& a) {
  return (a.kind == Action::Kind::Move ? "move:" : "switch:") + std::to_string(a.slot);
}

bool ActionSet::contains(const Action& a) const { return std::find(begin(), end(), a) != end(); }

namespace {

TeamState makeTeam(const Roster& roster, std::span<const std::size_t> members, const char* label) {
  if (members.empty() || members.size() > static_cast<std::size_t>(kTeamSize))
    throw Error(ErrorKind::InvalidArgument, std::string("team ") + label + " must have 1 to 6 members");
  TeamState team;
  team.size = static_cast<int>(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= roster.size())
      throw Error(ErrorKind::InvalidArgument, std::string("team ") + label + " references an unknown character");
    for (std::size_t j = 0; j < i; ++j)
      if (members[j] == members[i])
        throw Error(ErrorKind::InvalidArgument,
                    std::string("team ") + label + " repeats species '" + roster.character(members[i]).species + "'");
    const int hp = maxHpFor(roster.character(members[i]).baseStats[kHp]);
    team.members[i] = BattlerState{members[i], hp, hp};
  }
  return team;
}

bool anyActiveFainted(const BattleState& s) {
  return s.sides[0].activeBattler().fainted() || s.sides[1].activeBattler().fainted();
}

// Fair coin relative to the reference orientation: true means side A.
bool coinFavoursA(BattleStreams& streams) {
  const bool a = uniformBelow(streams.order, 2) == 0;
  return streams.mirrored ? !a : a;
}

void finish(BattleState& s, Side winner) {
  s.finished = true;
  s.winner = winner;
}

void checkAction(const BattleState& state, Side side, const std::optional<Action>& action) {
  const bool acts = needsAction(state, side);
  if (acts && !action)
    throw Error(ErrorKind::InvalidArgument, std::string("side ") + (side == Side::A ? "A" : "B") + " must act");
  if (!acts && action)
    throw Error(ErrorKind::InvalidArgument,
                std::string("side ") + (side == Side::A ? "A" : "B") + " may not act during a forced switch");
  if (action && !legalActions(state, side).contains(*action))
    throw Error(ErrorKind::InvalidArgument, "illegal action " + toString(*action));
}

}  // namespace

BattleState initialBattle(const Roster& roster, std::span<const std::size_t> teamA,
                          std::span<const std::size_t> teamB) {
  BattleState s;
  s.roster = &roster;
  s.sides[0] = makeTeam(roster, teamA, "A");
  s.sides[1] = makeTeam(roster, teamB, "B");
  return s;
}

bool needsAction(const BattleState& state, Side side) {
  if (state.finished) return false;
  if (anyActiveFainted(state)) return state.team(side).activeBattler().fainted();
  return true;
}

ActionSet legalActions(const BattleState& state, Side side) {
  if (state.finished) throw Error(ErrorKind::State, "battle is finished");
  if (!needsAction(state, side)) throw Error(ErrorKind::State, "side has no action this step");
  const TeamState& team = state.team(side);
  ActionSet out;
  const BattlerState& active = team.activeBattler();
  if (!active.fainted()) {
    const auto& moves = state.roster->character(active.character).moves;
    for (std::size_t m = 0; m < moves.size(); ++m) out.push(Action::move(static_cast<int>(m)));
  }
  for (int i = 0; i < team.size; ++i)
    if (i != team.active && !team.members[i].fainted()) out.push(Action::switchTo(i));
  return out;
}

BattleStreams BattleStreams::fromSeed(std::uint64_t seed, bool mirrored) {
  return BattleStreams{makeEngine(deriveSeed(seed, {streamTag("order")})),
                       makeEngine(deriveSeed(seed, {streamTag("accuracy")})),
                       makeEngine(deriveSeed(seed, {streamTag("crit")})),
                       makeEngine(deriveSeed(seed, {streamTag("damage")})), mirrored};
}

int damageFormula(int power, int attack, int defense, bool stab, double effectiveness, bool crit,
                  int randomPercent) {
  const std::int64_t levelFactor = 2 * kLevel / 5 + 2;
  std::int64_t d = (levelFactor * power * attack) / defense / 50 + 2;
  if (stab) d = d * 3 / 2;
  d = static_cast<std::int64_t>(std::floor(static_cast<double>(d) * effectiveness));
  if (crit) d = d * 3 / 2;
  d = d * randomPercent / 100;
  if (effectiveness > 0.0 && d < 1) d = 1;
  return static_cast<int>(d);
}

DamageOutcome computeDamage(const Roster& roster, const BattlerState& attacker,
                            const BattlerState& defender, const MoveDef& move, BattleStreams& streams) {
  if (!move.damaging())
    throw Error(ErrorKind::InvalidArgument, "status move '" + move.id + "' does not deal damage");
  const Character& att = roster.character(attacker.character);
  const Character& def = roster.character(defender.character);
  DamageOutcome out;
  out.effectiveness = roster.chart().effectiveness(move.type, def.types);
  out.hit = uniform01(streams.accuracy) < move.accuracy;
  if (!out.hit) {
    out.damage = 0;
    return out;
  }
  out.crit = uniformBelow(streams.crit, kCritOdds) == 0;
  out.randomPercent = 85 + static_cast<int>(uniformBelow(streams.damage, 16));
  const bool physical = move.category == MoveCategory::Physical;
  const int a = statFor(att.baseStats[physical ? kAtk : kSpa]);
  const int d = statFor(def.baseStats[physical ? kDef : kSpd]);
  out.damage = damageFormula(move.basePower, a, d, att.hasType(move.type), out.effectiveness, out.crit,
                             out.randomPercent);
  return out;
}

void resolveTurn(BattleState& state, const std::optional<Action>& actionA,
                 const std::optional<Action>& actionB, BattleStreams& streams, TurnLog* log) {
  if (state.finished) throw Error(ErrorKind::State, "battle is finished");
  checkAction(state, Side::A, actionA);
  checkAction(state, Side::B, actionB);
  const std::array<const std::optional<Action>*, 2> actions{&actionA, &actionB};
  const bool forcedPhase = anyActiveFainted(state);

  for (Side side : {Side::A, Side::B}) {
    const auto& act = *actions[index(side)];
    if (act && act->kind == Action::Kind::Switch) {
      TeamState& team = state.team(side);
      if (log) log->events.push_back({side, *act, team.members[act->slot].character, {}, false});
      team.active = act->slot;
    }
  }
  if (forcedPhase) return;

  std::array<Side, 2> order{Side::A, Side::B};
  const bool bothMove = actionA->kind == Action::Kind::Move && actionB->kind == Action::Kind::Move;
  if (bothMove) {
    const Roster& r = *state.roster;
    const int speedA = statFor(r.character(state.sides[0].activeBattler().character).baseStats[kSpe]);
    const int speedB = statFor(r.character(state.sides[1].activeBattler().character).baseStats[kSpe]);
    bool aFirst = speedA > speedB;
    if (speedA == speedB) aFirst = coinFavoursA(streams);
    if (!aFirst) order = {Side::B, Side::A};
  }

  for (Side side : order) {
    const auto& act = *actions[index(side)];
    if (act->kind != Action::Kind::Move) continue;
    TeamState& self = state.team(side);
    TeamState& foe = state.team(opponent(side));
    BattlerState& actor = self.members[self.active];
    if (actor.fainted()) continue;
    const Roster& r = *state.roster;
    const MoveDef& move = r.move(r.character(actor.character).moves[act->slot]);
    TurnEvent ev{side, *act, actor.character, {}, false};
    if (move.damaging()) {
      BattlerState& target = foe.members[foe.active];
      ev.outcome = computeDamage(r, actor, target, move, streams);
      target.currentHp = std::max(0, target.currentHp - ev.outcome.damage);
      ev.targetFainted = target.fainted();
    } else {
      ev.outcome.damage = 0;
    }
    if (log) log->events.push_back(ev);
    if (foe.defeated()) {
      finish(state, side);
      break;
    }
  }
  ++state.turn;
}

Observation observe(const BattleState& state, Side side) {
  Observation obs;
  obs.roster = state.roster;
  obs.self = side;
  obs.own = &state.team(side);
  const TeamState& foe = state.team(opponent(side));
  const BattlerState& foeActive = foe.activeBattler();
  obs.opponentActive = foeActive.character;
  obs.opponentHpFraction = static_cast<double>(foeActive.currentHp) / foeActive.maxHp;
  obs.opponentFainted = foe.size - foe.livingCount();
  obs.forcedSwitch = state.team(side).activeBattler().fainted();
  return obs;
}

namespace {

double hpFraction(const TeamState& t) {
  double f = 0.0;
  for (int i = 0; i < t.size; ++i) f += static_cast<double>(t.members[i].currentHp) / t.members[i].maxHp;
  return f;
}

void resolveTurnCap(BattleState& s, BattleStreams& streams) {
  const int livingA = s.sides[0].livingCount();
  const int livingB = s.sides[1].livingCount();
  s.hitTurnCap = true;
  if (livingA != livingB) {
    finish(s, livingA > livingB ? Side::A : Side::B);
    return;
  }
  const double hpA = hpFraction(s.sides[0]);
  const double hpB = hpFraction(s.sides[1]);
  if (hpA != hpB) {
    finish(s, hpA > hpB ? Side::A : Side::B);
    return;
  }
  finish(s, coinFavoursA(streams) ? Side::A : Side::B);
}

void writeLogLine(std::ostream& os, const BattleState& s, int step, const std::optional<Action>& a,
                  const std::optional<Action>& b, const TurnLog& log) {
  using nlohmann::json;
  const Roster& r = *s.roster;
  json line;
  line["step"] = step;
  line["turn"] = s.turn;
  line["actions"] = {{"a", a ? json(toString(*a)) : json(nullptr)}, {"b", b ? json(toString(*b)) : json(nullptr)}};
  json events = json::array();
  for (const TurnEvent& ev : log.events) {
    json e;
    e["side"] = ev.side == Side::A ? "a" : "b";
    e["actor"] = r.character(ev.actor).species;
    e["action"] = toString(ev.action);
    if (ev.action.kind == Action::Kind::Move) {
      e["move"] = r.move(r.character(ev.actor).moves[ev.action.slot]).id;
      e["hit"] = ev.outcome.hit;
      e["crit"] = ev.outcome.crit;
      e["damage"] = ev.outcome.damage;
      e["effectiveness"] = ev.outcome.effectiveness;
      e["target_fainted"] = ev.targetFainted;
    }
    events.push_back(std::move(e));
  }
  line["events"] = std::move(events);
  json hp;
  for (Side side : {Side::A, Side::B}) {
    json arr = json::array();
    const TeamState& t = s.team(side);
    for (int i = 0; i < t.size; ++i) arr.push_back(t.members[i].currentHp);
    hp[side == Side::A ? "a" : "b"] = std::move(arr);
  }
  line["hp"] = std::move(hp);
  line["finished"] = s.finished;
  if (s.finished) line["winner"] = s.winner == Side::A ? "a" : "b";
  os << line.dump() << '\n';
}

}  // namespace

BattleResult runBattle(const Roster& roster, std::span<const std::size_t> teamA,
                       std::span<const std::size_t> teamB, const Agent& agentA, const Agent& agentB,
                       std::uint64_t seed, const BattleOptions& options) {
  BattleState state = initialBattle(roster, teamA, teamB);
  BattleStreams streams = BattleStreams::fromSeed(seed, options.mirrored);
  // Agent streams belong to the reference roles, so a mirrored run hands the
  // original side B stream to the battler now sitting on side A.
  Engine agentRngA = makeEngine(deriveSeed(seed, {streamTag(options.mirrored ? "agent.b" : "agent.a")}));
  Engine agentRngB = makeEngine(deriveSeed(seed, {streamTag(options.mirrored ? "agent.a" : "agent.b")}));

  TurnLog log;
  int step = 0;
  while (!state.finished) {
    std::optional<Action> a, b;
    if (needsAction(state, Side::A)) a = agentA.choose(observe(state, Side::A), legalActions(state, Side::A), agentRngA);
    if (needsAction(state, Side::B)) b = agentB.choose(observe(state, Side::B), legalActions(state, Side::B), agentRngB);
    log.events.clear();
    resolveTurn(state, a, b, streams, options.log ? &log : nullptr);
    if (!state.finished && state.turn >= kTurnCap) resolveTurnCap(state, streams);
    if (options.log) writeLogLine(*options.log, state, step, a, b, log);
    ++step;
  }

  BattleResult result;
  result.winner = state.winner;
  result.turns = std::max(1, state.turn);
  result.hitTurnCap = state.hitTurnCap;
  result.participantsA.assign(teamA.begin(), teamA.end());
  result.participantsB.assign(teamB.begin(), teamB.end());
  return result;
}

}  // namespace metadisc
