#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "roster.hpp"

namespace metadisc {

inline constexpr int kLevel = 100;
inline constexpr int kTeamSize = 6;
inline constexpr int kTurnCap = 500;
inline constexpr int kCritOdds = 24;

// Level-100 stats without EV/IV terms.
constexpr int maxHpFor(int baseHp) { return 2 * baseHp + 110; }
constexpr int statFor(int base) { return 2 * base + 5; }

enum class Side : std::uint8_t { A = 0, B = 1 };
constexpr Side opponent(Side s) { return s == Side::A ? Side::B : Side::A; }
constexpr std::size_t index(Side s) { return static_cast<std::size_t>(s); }

struct BattlerState {
  std::size_t character = 0;
  int currentHp = 0;
  int maxHp = 1;

  bool fainted() const { return currentHp == 0; }
};

// Up to six members; discovery battles always field six, one-member teams
// serve duel tables.
struct TeamState {
  std::array<BattlerState, kTeamSize> members{};
  int size = 0;
  int active = 0;

  const BattlerState& activeBattler() const { return members[active]; }
  int livingCount() const;
  bool defeated() const { return livingCount() == 0; }
};

struct Action {
  enum class Kind : std::uint8_t { Move, Switch };
  Kind kind = Kind::Move;
  int slot = 0;

  static constexpr Action move(int slot) { return {Kind::Move, slot}; }
  static constexpr Action switchTo(int slot) { return {Kind::Switch, slot}; }
  bool operator==(const Action&) const = default;
};

std::string toString(const Action& a);

// Fixed-capacity action list: at most four moves plus five switches.
class ActionSet {
 public:
  static constexpr std::size_t kCapacity = 4 + kTeamSize - 1;

  void push(Action a) { items_[size_++] = a; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Action& operator[](std::size_t i) const { return items_[i]; }
  const Action* begin() const { return items_.data(); }
  const Action* end() const { return items_.data() + size_; }
  bool contains(const Action& a) const;

 private:
  std::array<Action, kCapacity> items_{};
  std::size_t size_ = 0;
};

struct BattleState {
  const Roster* roster = nullptr;
  std::array<TeamState, 2> sides{};
  int turn = 0;
  bool finished = false;
  Side winner = Side::A;
  bool hitTurnCap = false;

  TeamState& team(Side s) { return sides[index(s)]; }
  const TeamState& team(Side s) const { return sides[index(s)]; }
};

// Teams must hold 1-6 distinct, valid roster indices; throws Error otherwise.
BattleState initialBattle(const Roster& roster, std::span<const std::size_t> teamA,
                          std::span<const std::size_t> teamB);

// True when the side must act in the next resolveTurn call. While any active
// battler is fainted, only the fainted sides act (a free replacement).
bool needsAction(const BattleState& state, Side side);

// Throws Error(State) when the battle is finished or the side does not act.
ActionSet legalActions(const BattleState& state, Side side);

// Independent sub-streams so agent choices never shift damage rolls. When
// `mirrored` is set the sides were swapped relative to a reference run, and
// every side-relative coin is inverted.
struct BattleStreams {
  Engine order;
  Engine accuracy;
  Engine crit;
  Engine damage;
  bool mirrored = false;

  static BattleStreams fromSeed(std::uint64_t seed, bool mirrored = false);
};

struct DamageOutcome {
  int damage = 0;
  bool hit = true;
  bool crit = false;
  int randomPercent = 100;
  double effectiveness = 1.0;
};

// Closed-form damage with the documented flooring order:
//   base = floor(floor(42 * power * atk / def) / 50) + 2
//   then *1.5 (STAB), *effectiveness, *1.5 (crit), *randomPercent/100,
//   each followed by floor. Non-immune hits deal at least 1.
int damageFormula(int power, int attack, int defense, bool stab, double effectiveness, bool crit,
                  int randomPercent);

// Accuracy roll, then crit roll, then the random factor, each from its own
// stream. Throws Error(InvalidArgument) for status moves.
DamageOutcome computeDamage(const Roster& roster, const BattlerState& attacker,
                            const BattlerState& defender, const MoveDef& move, BattleStreams& streams);

struct TurnEvent {
  Side side;
  Action action;
  std::size_t actor;       // roster index acting
  DamageOutcome outcome;   // moves only
  bool targetFainted = false;
};

struct TurnLog {
  std::vector<TurnEvent> events;
};

// Applies one step. Switches resolve first, then moves in speed order (ties
// by a fair coin from the order stream); a battler fainted before its move
// does not act. Forced replacements do not advance the turn counter.
// Throws Error(InvalidArgument) for an illegal or missing action.
void resolveTurn(BattleState& state, const std::optional<Action>& actionA,
                 const std::optional<Action>& actionB, BattleStreams& streams, TurnLog* log = nullptr);

// What one side may see: its own team in full, only the opposing active
// battler and the opponent's faint count.
struct Observation {
  const Roster* roster = nullptr;
  Side self = Side::A;
  const TeamState* own = nullptr;
  std::size_t opponentActive = 0;
  double opponentHpFraction = 1.0;
  int opponentFainted = 0;
  bool forcedSwitch = false;
};

Observation observe(const BattleState& state, Side side);

class Agent {
 public:
  virtual ~Agent() = default;
  // Must return a member of `legal`, which is never empty.
  virtual Action choose(const Observation& obs, const ActionSet& legal, Engine& rng) const = 0;
};

struct BattleResult {
  Side winner = Side::A;
  int turns = 0;
  bool hitTurnCap = false;
  std::vector<std::size_t> participantsA;
  std::vector<std::size_t> participantsB;
};

struct BattleOptions {
  bool mirrored = false;
  std::ostream* log = nullptr;  // one JSON line per step
};

BattleResult runBattle(const Roster& roster, std::span<const std::size_t> teamA,
                       std::span<const std::size_t> teamB, const Agent& agentA, const Agent& agentB,
                       std::uint64_t seed, const BattleOptions& options = {});

}  // namespace metadisc
