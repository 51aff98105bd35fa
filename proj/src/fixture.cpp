#include "fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "error.hpp"
#include "rng.hpp"

namespace metadisc {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 18> kTypeNames{"Normal", "Fire",    "Water", "Grass", "Electric", "Ice",
                                                 "Fighting", "Poison", "Ground", "Flying", "Psychic", "Bug",
                                                 "Rock",   "Ghost",   "Dragon", "Dark",  "Steel",    "Fairy"};

struct Band {
  int lo, hi;
};

// Stat-total band per tier, aligned with fixtureTierOrder().
constexpr std::array<Band, 7> kBands{{{680, 720}, {600, 670}, {540, 595}, {490, 535}, {440, 485}, {380, 435}, {200, 350}}};

std::string typeName(std::size_t i) {
  if (i < kTypeNames.size()) return kTypeNames[i];
  char buf[16];
  std::snprintf(buf, sizeof buf, "Type%02zu", i);
  return buf;
}

int uniformInt(Engine& rng, int lo, int hi) { return lo + static_cast<int>(uniformBelow(rng, hi - lo + 1)); }

std::vector<std::size_t> tierCounts(std::size_t nonLc, std::size_t lc) {
  const auto r = [&](double f) { return static_cast<std::size_t>(std::llround(static_cast<double>(nonLc) * f)); };
  const std::size_t ag = nonLc >= 20 ? std::max<std::size_t>(2, r(0.004)) : 1;
  const std::size_t ubers = std::max<std::size_t>(2, r(0.074));
  const std::size_t ou = std::max<std::size_t>(2, r(0.066));
  const std::size_t rest = nonLc - ag - ubers - ou;
  const std::size_t uu = rest / 3 + (rest % 3 > 0 ? 1 : 0);
  const std::size_t nu = rest / 3 + (rest % 3 > 1 ? 1 : 0);
  return {ag, ubers, ou, uu, nu, rest - uu - nu, lc};
}

std::array<int, 6> splitTotal(int total, Engine& rng) {
  std::array<double, 6> w{};
  for (double& x : w) x = 0.6 + 0.8 * uniform01(rng);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  std::array<int, 6> stats{};
  int assigned = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    stats[i] = std::clamp(static_cast<int>(std::lround(total * w[i] / sum)), 1, kMaxBaseStat);
    assigned += stats[i];
  }
  for (std::size_t i = 0; assigned != total; i = (i + 1) % 6) {
    if (assigned < total && stats[i] < kMaxBaseStat) {
      ++stats[i];
      ++assigned;
    } else if (assigned > total && stats[i] > 1) {
      --stats[i];
      --assigned;
    }
  }
  return stats;
}

}  // namespace

const std::vector<std::string>& fixtureTierOrder() {
  static const std::vector<std::string> order{"AG", "Ubers", "OU", "UU", "NU", "PU", "LC"};
  return order;
}

Fixture generateFixture(const FixtureOptions& o) {
  if (o.size < 12) throw Error(ErrorKind::InvalidArgument, "fixture size must be at least 12");
  if (o.typeCount < 2) throw Error(ErrorKind::InvalidArgument, "fixture needs at least two types");
  if (o.typeCount > 255) throw Error(ErrorKind::InvalidArgument, "fixture supports at most 255 types");
  const std::size_t lc = o.lcCount.value_or(static_cast<std::size_t>(std::llround(o.size * 210.0 / 740.0)));
  if (lc + 12 > o.size) throw Error(ErrorKind::InvalidArgument, "LC count leaves fewer than twelve other characters");

  Engine rng = makeEngine(deriveSeed(o.seed, {streamTag("fixture")}));
  const std::size_t T = o.typeCount;

  std::vector<std::string> types;
  for (std::size_t t = 0; t < T; ++t) types.push_back(typeName(t));
  json chart = json::array();
  std::vector<int> superCount(T, 0);
  for (std::size_t a = 0; a < T; ++a) {
    json row = json::array();
    for (std::size_t d = 0; d < T; ++d) {
      const double u = uniform01(rng);
      const double m = u < 0.04 ? 0.0 : u < 0.26 ? 0.5 : u < 0.82 ? 1.0 : 2.0;
      if (m == 2.0) ++superCount[a];
      row.push_back(m);
    }
    chart.push_back(std::move(row));
  }

  // The dominant attacker uses the type with the widest super-effective reach
  // and has exactly one answer: a defending type immune to it.
  std::size_t domType = 0, immuneType = 0;
  if (o.dominant) {
    domType = static_cast<std::size_t>(std::max_element(superCount.begin(), superCount.end()) - superCount.begin());
    immuneType = T;
    for (std::size_t d = 0; d < T && immuneType == T; ++d)
      if (d != domType && chart[domType][d].get<double>() == 0.0) immuneType = d;
    if (immuneType == T) {
      immuneType = (domType + 1) % T;
      chart[domType][immuneType] = 0.0;
    }
  }

  json moves = json::array();
  auto moveId = [&](std::size_t t, const char* kind) { return types[t] + "-" + kind; };
  for (std::size_t t = 0; t < T; ++t) {
    moves.push_back({{"id", moveId(t, "blow")}, {"type", types[t]}, {"power", 80}, {"accuracy", 1.0}, {"category", "physical"}});
    moves.push_back({{"id", moveId(t, "blast")}, {"type", types[t]}, {"power", 80}, {"accuracy", 1.0}, {"category", "special"}});
    moves.push_back({{"id", moveId(t, "crash")}, {"type", types[t]}, {"power", 110}, {"accuracy", 0.8}, {"category", "physical"}});
    moves.push_back({{"id", moveId(t, "surge")}, {"type", types[t]}, {"power", 110}, {"accuracy", 0.8}, {"category", "special"}});
  }
  moves.push_back({{"id", "Guard"}, {"type", types[0]}, {"power", 0}, {"accuracy", 1.0}, {"category", "status"}});
  moves.push_back({{"id", "Glare"}, {"type", types[1]}, {"power", 0}, {"accuracy", 1.0}, {"category", "status"}});

  // Tier slots, shuffled so species ids carry no tier information.
  const auto counts = tierCounts(o.size - lc, lc);
  std::vector<std::size_t> slotTier;
  for (std::size_t t = 0; t < counts.size(); ++t) slotTier.insert(slotTier.end(), counts[t], t);
  for (std::size_t i = slotTier.size(); i > 1; --i) std::swap(slotTier[i - 1], slotTier[uniformBelow(rng, i)]);
  std::size_t dominantSlot = slotTier.size();
  std::vector<std::uint8_t> counter(slotTier.size(), 0);
  if (o.dominant) {
    dominantSlot = static_cast<std::size_t>(std::find(slotTier.begin(), slotTier.end(), 0) - slotTier.begin());
    // A few mid-tier characters (UU/NU) carry the immune type.
    const std::size_t want = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(0.06 * o.size)));
    std::size_t have = 0;
    for (std::size_t i = 0; i < slotTier.size() && have < want; ++i)
      if (slotTier[i] == 3 || slotTier[i] == 4) {
        counter[i] = 1;
        ++have;
      }
  }

  const auto& tierOrder = fixtureTierOrder();
  json characters = json::array();
  json tiers = json::object();
  for (std::size_t i = 0; i < o.size; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "Mon%03zu", i);
    std::string species = i == dominantSlot ? kDominantSpecies : name;
    const std::size_t tier = slotTier[i];

    std::vector<std::size_t> own{uniformBelow(rng, T)};
    if (i == dominantSlot) own[0] = domType;
    if (counter[i]) own[0] = immuneType;
    if (i != dominantSlot && uniform01(rng) < 0.5) {
      std::size_t second = uniformBelow(rng, T - 1);
      if (second >= own[0]) ++second;
      own.push_back(second);
    }
    std::array<int, 6> stats;
    json moveList = json::array();
    if (i == dominantSlot) {
      stats = {160, 190, 150, 190, 150, 180};
      for (const char* kind : {"blow", "blast", "crash", "surge"}) moveList.push_back(moveId(domType, kind));
    } else {
      const Band band = kBands[tier];
      stats = splitTotal(uniformInt(rng, band.lo, band.hi), rng);
      const bool physical = stats[kAtk] >= stats[kSpa];
      const char* normal = physical ? "blow" : "blast";
      const char* strong = physical ? "crash" : "surge";
      const std::size_t moveCount = 2 + uniformBelow(rng, 3);
      for (std::size_t t : own) moveList.push_back(moveId(t, uniform01(rng) < 0.25 ? strong : normal));
      while (moveList.size() < moveCount) {
        std::string id;
        if (uniform01(rng) < 0.08) {
          id = uniform01(rng) < 0.5 ? "Guard" : "Glare";
        } else {
          id = moveId(uniformBelow(rng, T), normal);
        }
        if (std::find(moveList.begin(), moveList.end(), id) == moveList.end()) moveList.push_back(id);
      }
    }

    json typeList = json::array();
    for (std::size_t t : own) typeList.push_back(types[t]);
    characters.push_back({{"species", species}, {"types", std::move(typeList)}, {"base_stats", stats}, {"moves", std::move(moveList)}});
    tiers[species] = tierOrder[tier];
  }

  Fixture f;
  f.roster = {{"format_version", kRosterFormatVersion}, {"types", types}, {"chart", std::move(chart)},
              {"moves", std::move(moves)}, {"characters", std::move(characters)}};
  f.tiers = std::move(tiers);
  return f;
}

void writeFixture(const Fixture& fixture, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [file, doc] : {std::pair{"roster.json", &fixture.roster}, std::pair{"tiers.json", &fixture.tiers}}) {
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + (dir / file).string() + "'");
    out << doc->dump(1) << '\n';
  }
}

Roster fixtureRoster(const Fixture& fixture) {
  Roster roster = parseRoster(fixture.roster, "<fixture>");
  std::map<std::string, std::string> tiers;
  for (const auto& [species, tier] : fixture.tiers.items()) tiers.emplace(species, tier.get<std::string>());
  roster.applyTiers(tiers);
  return roster;
}

}  // namespace metadisc
