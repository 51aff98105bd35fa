#include "roster.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace metadisc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& where,
                       const std::string& what) {
  throw Error(ErrorKind::Validation, source + ": " + where + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& source,
                    const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) fail(source, where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string requireString(const json& obj, const char* key, const std::string& source,
                          const std::string& where) {
  const json& v = require(obj, key, source, where);
  if (!v.is_string()) fail(source, where + "." + key, "expected a string");
  return v.get<std::string>();
}

double requireNumber(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number()) fail(source, where, "expected a number");
  return v.get<double>();
}

int requireInt(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer()) fail(source, where, "expected an integer");
  return v.get<int>();
}

MoveCategory parseCategory(const std::string& s, const std::string& source, const std::string& where) {
  if (s == "physical") return MoveCategory::Physical;
  if (s == "special") return MoveCategory::Special;
  if (s == "status") return MoveCategory::Status;
  fail(source, where, "unknown move category '" + s + "'");
}

TypeChart parseChart(const json& doc, const std::string& source) {
  const json& types = require(doc, "types", source, "document");
  if (!types.is_array() || types.empty()) fail(source, "types", "expected a non-empty array");
  if (types.size() > 255) fail(source, "types", "at most 255 types are supported");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!types[i].is_string()) fail(source, "types[" + std::to_string(i) + "]", "expected a string");
    names.push_back(types[i].get<std::string>());
  }
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) fail(source, "types", "duplicate type '" + *dup + "'");
  }
  const json& chart = require(doc, "chart", source, "document");
  if (!chart.is_array() || chart.size() != names.size())
    fail(source, "chart", "expected " + std::to_string(names.size()) + " rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t a = 0; a < chart.size(); ++a) {
    const std::string where = "chart[" + std::to_string(a) + "]";
    if (!chart[a].is_array() || chart[a].size() != names.size())
      fail(source, where, "expected " + std::to_string(names.size()) + " columns");
    std::vector<double> row;
    for (std::size_t d = 0; d < chart[a].size(); ++d)
      row.push_back(requireNumber(chart[a][d], source, where + "[" + std::to_string(d) + "]"));
    rows.push_back(std::move(row));
  }
  try {
    return TypeChart(std::move(names), rows);
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, source + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> lineColumn(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

const char* toString(MoveCategory c) {
  switch (c) {
    case MoveCategory::Physical: return "physical";
    case MoveCategory::Special: return "special";
    case MoveCategory::Status: return "status";
  }
  return "physical";
}

int Character::statSum() const { return std::accumulate(baseStats.begin(), baseStats.end(), 0); }

bool Character::hasType(TypeId t) const {
  return std::find(types.begin(), types.end(), t) != types.end();
}

TypeChart::TypeChart(std::vector<std::string> names, const std::vector<std::vector<double>>& multipliers)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  if (multipliers.size() != n) throw Error(ErrorKind::Validation, "type chart row count does not match type count");
  mult_.resize(n * n);
  score_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (multipliers[a].size() != n)
      throw Error(ErrorKind::Validation, "type chart row " + std::to_string(a) + " has wrong length");
    for (std::size_t d = 0; d < n; ++d) {
      const double m = multipliers[a][d];
      std::int8_t s;
      if (m == 0.0) s = -2;
      else if (m == 0.5) s = -1;
      else if (m == 1.0) s = 0;
      else if (m == 2.0) s = 1;
      else
        throw Error(ErrorKind::Validation, "chart[" + std::to_string(a) + "][" + std::to_string(d) +
                                              "]: multiplier must be one of 0, 0.5, 1, 2");
      mult_[a * n + d] = m;
      score_[a * n + d] = s;
    }
  }
}

std::optional<TypeId> TypeChart::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<TypeId>(i);
  return std::nullopt;
}

double TypeChart::effectiveness(TypeId attack, std::span<const TypeId> defender) const {
  double m = 1.0;
  for (TypeId d : defender) m *= multiplier(attack, d);
  return m;
}

Roster::Roster(TypeChart chart, std::vector<MoveDef> moves, std::vector<Character> characters)
    : chart_(std::move(chart)), moves_(std::move(moves)), characters_(std::move(characters)) {
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    if (!moveIndex_.emplace(moves_[i].id, i).second)
      throw Error(ErrorKind::Validation, "duplicate move id '" + moves_[i].id + "'");
  }
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    const Character& c = characters_[i];
    if (!speciesIndex_.emplace(c.species, i).second)
      throw Error(ErrorKind::Validation, "duplicate species '" + c.species + "'");
    for (std::size_t m : c.moves)
      if (m >= moves_.size())
        throw Error(ErrorKind::Validation, "species '" + c.species + "' references a move out of range");
    maxStatSum_ = std::max(maxStatSum_, c.statSum());
  }
}

std::optional<std::size_t> Roster::indexOf(std::string_view species) const {
  auto it = speciesIndex_.find(species);
  if (it == speciesIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Roster::moveIndexOf(std::string_view id) const {
  auto it = moveIndex_.find(id);
  if (it == moveIndex_.end()) return std::nullopt;
  return it->second;
}

void Roster::applyTiers(const std::map<std::string, std::string>& tiers) {
  for (const auto& [species, tier] : tiers) {
    auto idx = indexOf(species);
    if (!idx) throw Error(ErrorKind::Validation, "tier file names unknown species '" + species + "'");
    characters_[*idx].tier = tier;
  }
}

nlohmann::json readJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = lineColumn(text, e.byte);
    throw Error(ErrorKind::Parse, path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                      ": malformed JSON");
  }
}

Roster parseRoster(const json& doc, const std::string& source, const json* chartDoc) {
  if (!doc.is_object()) fail(source, "document", "expected a JSON object");
  const int version = requireInt(require(doc, "format_version", source, "document"), source, "format_version");
  if (version != kRosterFormatVersion)
    fail(source, "format_version", "unsupported version " + std::to_string(version));

  TypeChart chart = chartDoc ? parseChart(*chartDoc, source + " (type chart)") : parseChart(doc, source);

  const json& movesJson = require(doc, "moves", source, "document");
  if (!movesJson.is_array()) fail(source, "moves", "expected an array");
  std::vector<MoveDef> moves;
  std::map<std::string, std::size_t, std::less<>> moveIds;
  for (std::size_t i = 0; i < movesJson.size(); ++i) {
    const std::string where = "moves[" + std::to_string(i) + "]";
    const json& mj = movesJson[i];
    MoveDef m;
    m.id = requireString(mj, "id", source, where);
    const std::string typeName = requireString(mj, "type", source, where);
    auto t = chart.find(typeName);
    if (!t) fail(source, where, "move '" + m.id + "' has unknown type '" + typeName + "'");
    m.type = *t;
    m.basePower = requireInt(require(mj, "power", source, where), source, where + ".power");
    m.accuracy = requireNumber(require(mj, "accuracy", source, where), source, where + ".accuracy");
    m.category = parseCategory(requireString(mj, "category", source, where), source, where + ".category");
    if (!(m.accuracy > 0.0 && m.accuracy <= 1.0)) fail(source, where, "accuracy must lie in (0, 1]");
    if (m.category == MoveCategory::Status && m.basePower != 0)
      fail(source, where, "status move '" + m.id + "' must have power 0");
    if (m.category != MoveCategory::Status && m.basePower <= 0)
      fail(source, where, "damaging move '" + m.id + "' must have positive power");
    if (!moveIds.emplace(m.id, moves.size()).second) fail(source, where, "duplicate move id '" + m.id + "'");
    moves.push_back(std::move(m));
  }

  const json& charsJson = require(doc, "characters", source, "document");
  if (!charsJson.is_array()) fail(source, "characters", "expected an array");
  std::vector<Character> characters;
  std::map<std::string, std::size_t, std::less<>> seen;
  for (std::size_t i = 0; i < charsJson.size(); ++i) {
    const std::string where = "characters[" + std::to_string(i) + "]";
    const json& cj = charsJson[i];
    Character c;
    c.species = requireString(cj, "species", source, where);
    const std::string who = where + " ('" + c.species + "')";
    if (!seen.emplace(c.species, i).second) fail(source, who, "duplicate species");

    const json& types = require(cj, "types", source, who);
    if (!types.is_array() || types.empty() || types.size() > 2)
      fail(source, who + ".types", "expected one or two types");
    for (const json& tj : types) {
      if (!tj.is_string()) fail(source, who + ".types", "expected type names");
      auto t = chart.find(tj.get<std::string>());
      if (!t) fail(source, who + ".types", "unknown type '" + tj.get<std::string>() + "'");
      if (c.hasType(*t)) fail(source, who + ".types", "types must be distinct");
      c.types.push_back(*t);
    }

    const json& stats = require(cj, "base_stats", source, who);
    if (!stats.is_array() || stats.size() != 6)
      fail(source, who + ".base_stats", "expected six values [hp, atk, def, spa, spd, spe]");
    for (std::size_t s = 0; s < 6; ++s) {
      const int v = requireInt(stats[s], source, who + ".base_stats[" + std::to_string(s) + "]");
      if (v < 1 || v > kMaxBaseStat)
        fail(source, who + ".base_stats[" + std::to_string(s) + "]", "must lie in [1, 255]");
      c.baseStats[s] = v;
    }

    const json& mv = require(cj, "moves", source, who);
    if (!mv.is_array() || mv.empty() || mv.size() > kMaxMoves)
      fail(source, who + ".moves", "expected one to four move ids");
    for (std::size_t k = 0; k < mv.size(); ++k) {
      if (!mv[k].is_string()) fail(source, who + ".moves[" + std::to_string(k) + "]", "expected a move id");
      const std::string id = mv[k].get<std::string>();
      auto it = moveIds.find(id);
      if (it == moveIds.end())
        fail(source, who + ".moves[" + std::to_string(k) + "]",
             "species '" + c.species + "' references undefined move '" + id + "'");
      if (std::find(c.moves.begin(), c.moves.end(), it->second) != c.moves.end())
        fail(source, who + ".moves", "move '" + id + "' listed twice");
      c.moves.push_back(it->second);
    }

    if (cj.contains("tier") && !cj.at("tier").is_null()) {
      if (!cj.at("tier").is_string()) fail(source, who + ".tier", "expected a string");
      c.tier = cj.at("tier").get<std::string>();
    }
    characters.push_back(std::move(c));
  }
  if (characters.empty()) fail(source, "characters", "roster is empty");
  return Roster(std::move(chart), std::move(moves), std::move(characters));
}

Roster loadRoster(const std::filesystem::path& rosterFile,
                  const std::optional<std::filesystem::path>& typeChartFile) {
  const json doc = readJsonFile(rosterFile);
  if (typeChartFile) {
    const json chartDoc = readJsonFile(*typeChartFile);
    return parseRoster(doc, rosterFile.string(), &chartDoc);
  }
  return parseRoster(doc, rosterFile.string());
}

json rosterToJson(const Roster& roster) {
  json doc;
  doc["format_version"] = kRosterFormatVersion;
  const TypeChart& chart = roster.chart();
  doc["types"] = chart.names();
  json rows = json::array();
  for (std::size_t a = 0; a < chart.size(); ++a) {
    json row = json::array();
    for (std::size_t d = 0; d < chart.size(); ++d)
      row.push_back(chart.multiplier(static_cast<TypeId>(a), static_cast<TypeId>(d)));
    rows.push_back(std::move(row));
  }
  doc["chart"] = std::move(rows);
  json moves = json::array();
  for (const MoveDef& m : roster.moves()) {
    moves.push_back({{"id", m.id},
                     {"type", chart.name(m.type)},
                     {"power", m.basePower},
                     {"accuracy", m.accuracy},
                     {"category", toString(m.category)}});
  }
  doc["moves"] = std::move(moves);
  json chars = json::array();
  for (const Character& c : roster.characters()) {
    json cj;
    cj["species"] = c.species;
    json types = json::array();
    for (TypeId t : c.types) types.push_back(chart.name(t));
    cj["types"] = std::move(types);
    cj["base_stats"] = c.baseStats;
    json mv = json::array();
    for (std::size_t m : c.moves) mv.push_back(roster.move(m).id);
    cj["moves"] = std::move(mv);
    if (c.tier) cj["tier"] = *c.tier;
    chars.push_back(std::move(cj));
  }
  doc["characters"] = std::move(chars);
  return doc;
}

std::map<std::string, std::string> loadTierMap(const std::filesystem::path& tierFile) {
  const json doc = readJsonFile(tierFile);
  if (!doc.is_object()) throw Error(ErrorKind::Validation, tierFile.string() + ": expected an object of species -> tier");
  std::map<std::string, std::string> out;
  for (const auto& [species, tier] : doc.items()) {
    if (!tier.is_string())
      throw Error(ErrorKind::Validation, tierFile.string() + ": tier for '" + species + "' must be a string");
    out.emplace(species, tier.get<std::string>());
  }
  return out;
}

double baseStatTotal(const Roster& roster, std::size_t character) {
  return static_cast<double>(roster.character(character).statSum()) / roster.maxStatSum();
}

std::vector<double> baseStatTotals(const Roster& roster) {
  std::vector<double> out(roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) out[i] = baseStatTotal(roster, i);
  return out;
}

std::vector<double> typeVectorFor(std::span<const TypeId> group, const TypeChart& chart) {
  if (group.empty()) throw Error(ErrorKind::InvalidArgument, "type group is empty");
  const std::size_t n = chart.size();
  std::vector<double> v(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    int sum = 0;
    for (TypeId d : group) sum += chart.score(static_cast<TypeId>(a), d);
    v[a] = sum;
  }
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double min = *lo, max = *hi;
  if (max == min) {
    std::fill(v.begin(), v.end(), 0.0);
  } else {
    for (double& x : v) x = (x - min) / (max - min);
  }
  return v;
}

std::vector<double> characterTypeValues(const Roster& roster, std::span<const double> typeValues) {
  std::vector<double> out(roster.size());
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const auto& types = roster.character(i).types;
    double s = 0.0;
    for (TypeId t : types) s += typeValues[t];
    out[i] = s / static_cast<double>(types.size());
  }
  return out;
}

}  // namespace metadisc
