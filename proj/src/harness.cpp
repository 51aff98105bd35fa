#include "harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "fixture.hpp"
#include "rng.hpp"

namespace metadisc {

namespace fs = std::filesystem;
using nlohmann::json;

const char* versionString() { return METADISC_VERSION_STRING; }

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string num(double v, int precision = 17) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "-";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string readBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << bytes;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::vector<UsageRecord> averagedUsage(const std::vector<fs::path>& paths) {
  std::vector<std::vector<UsageRecord>> months;
  for (const auto& p : paths) months.push_back(loadUsageFile(p));
  return averageMonths(months);
}

// Validation copy that tolerates the zero-battle stub.
RunConfig checkable(RunConfig c) {
  if (c.totalBattles == 0) c.totalBattles = c.statsUpdateInterval;
  return c;
}

std::vector<std::uint8_t> blanketOnly(const Roster& roster, RunConfig c) {
  c.banned.clear();
  return bannedMask(roster, c);
}

std::vector<std::string> declaredTiers(const PreparedScenario& p) {
  if (!p.spec.tiers.empty()) return p.spec.tiers;
  const auto& blanket = p.spec.runConfig.blanketBanTiers;
  std::vector<std::string> present;
  for (const auto& [species, tier] : p.tierMap)
    if (std::find(present.begin(), present.end(), tier) == present.end()) present.push_back(tier);
  std::vector<std::string> out;
  for (const auto& t : fixtureTierOrder())
    if (std::find(present.begin(), present.end(), t) != present.end()) out.push_back(t);
  std::sort(present.begin(), present.end());
  for (const auto& t : present)
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  std::erase_if(out, [&](const std::string& t) {
    return std::find(blanket.begin(), blanket.end(), t) != blanket.end();
  });
  return out;
}

MetaSnapshot bstRanking(const Roster& roster, std::span<const std::uint8_t> banned, std::size_t metaSize) {
  std::vector<std::size_t> idx;
  for (std::size_t x = 0; x < roster.size(); ++x)
    if (!banned[x]) idx.push_back(x);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    const int sx = roster.character(x).statSum(), sy = roster.character(y).statSum();
    if (sx != sy) return sx > sy;
    return roster.character(x).species < roster.character(y).species;
  });
  MetaSnapshot snap;
  snap.metaSize = metaSize;
  for (std::size_t x : idx) snap.ranking.push_back({roster.character(x).species, 0.0, 0.0});
  return snap;
}

void scoreAgainst(MethodRow& row, const MetaSnapshot& a, const MetaSnapshot& b) {
  row.overlap = overlap(b, row.meta);
  row.editDistanceDelta = editDistanceDelta(a, b, row.meta);
  const auto shifts = rankShifts(a, b, row.meta);
  try {
    row.rho = spearman(shifts.truthShift, shifts.discoveredShift, PValueMethod::TApproximation);
    if (shifts.species.size() <= kMaxExactPermutationN)
      row.rhoExact = spearman(shifts.truthShift, shifts.discoveredShift, PValueMethod::ExactPermutation);
  } catch (const Error&) {
    // Fewer than two shared species or constant shifts: rho is undefined.
  }
}

}  // namespace

void ScenarioSpec::validate() const {
  auto bad = [](const std::string& m) { return Error(ErrorKind::Validation, "scenario: " + m); };
  if (rosterPath.empty()) throw bad("roster path is required");
  if (runConfig.weights.mode != mode) throw bad("run weights mode does not match the scenario mode");
  if (mode == ScoreMode::ABC) {
    if (preBanUsagePaths.empty()) throw bad("ABC mode needs at least one pre-ban usage file");
  } else {
    if (!preBanUsagePaths.empty() || !postBanUsagePaths.empty() || !banned.empty())
      throw bad("BSD mode takes no usage files and no bans");
    if (tierPath.empty()) throw bad("BSD mode needs a tier file");
  }
  if (nominalBattles == 0) throw bad("nominal_battles must be positive");
}

ScenarioSpec scenarioFromJson(const json& doc, const fs::path& baseDir) {
  ScenarioSpec s;
  try {
    s.name = doc.value("name", s.name);
    s.mode = parseScoreMode(doc.at("mode").get<std::string>());
    s.rosterPath = resolve(baseDir, doc.at("roster").get<std::string>());
    if (doc.contains("chart")) s.chartPath = resolve(baseDir, doc["chart"].get<std::string>());
    if (doc.contains("tiers_file")) s.tierPath = resolve(baseDir, doc["tiers_file"].get<std::string>());
    for (const auto& p : doc.value("pre_ban_usage", json::array())) s.preBanUsagePaths.push_back(resolve(baseDir, p));
    for (const auto& p : doc.value("post_ban_usage", json::array())) s.postBanUsagePaths.push_back(resolve(baseDir, p));
    s.banned = doc.value("banned", s.banned);
    s.tiers = doc.value("tier_order", s.tiers);
    s.nominalBattles = doc.value("nominal_battles", s.nominalBattles);
    if (doc.value("skip_unknown", false)) s.unknownSpecies = UnknownSpecies::Skip;
    s.outputDir = resolve(baseDir, doc.value("output_dir", std::string("out")));

    RunConfig base;
    if (s.mode == ScoreMode::BSD) {
      base.weights = ScoreWeights::bsd();
      base.epsilon = EpsilonSchedule::bsdDefault();
    }
    s.runConfig = doc.contains("run") ? runConfigFromJson(doc["run"], base) : base;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

json scenarioToJson(const ScenarioSpec& s) {
  json doc;
  doc["name"] = s.name;
  doc["mode"] = toString(s.mode);
  doc["roster"] = s.rosterPath.string();
  if (!s.chartPath.empty()) doc["chart"] = s.chartPath.string();
  if (!s.tierPath.empty()) doc["tiers_file"] = s.tierPath.string();
  auto paths = [](const std::vector<fs::path>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(p.string());
    return a;
  };
  doc["pre_ban_usage"] = paths(s.preBanUsagePaths);
  doc["post_ban_usage"] = paths(s.postBanUsagePaths);
  doc["banned"] = s.banned;
  doc["tier_order"] = s.tiers;
  doc["nominal_battles"] = s.nominalBattles;
  doc["skip_unknown"] = s.unknownSpecies == UnknownSpecies::Skip;
  doc["output_dir"] = s.outputDir.string();
  doc["run"] = runConfigToJson(s.runConfig);
  return doc;
}

ScenarioSpec loadScenario(const fs::path& path) {
  return scenarioFromJson(readJsonFile(path), path.parent_path());
}

ScenarioSpec applyOverrides(ScenarioSpec spec, const ScenarioOverrides& o) {
  if (o.seed) spec.runConfig.seed = *o.seed;
  if (o.agent) spec.runConfig.agent = *o.agent;
  if (o.threads) spec.runConfig.threads = *o.threads;
  if (o.battles) {
    RunConfig& c = spec.runConfig;
    c.totalBattles = *o.battles;
    if (c.totalBattles > 0) {
      c.battlesPerMonth = std::min(c.battlesPerMonth, c.totalBattles);
      c.statsUpdateInterval = std::min(c.statsUpdateInterval, c.totalBattles);
    }
  }
  if (o.outputDir) spec.outputDir = *o.outputDir;
  if (o.skipUnknown) spec.unknownSpecies = UnknownSpecies::Skip;
  return spec;
}

PreparedScenario prepareScenario(const ScenarioSpec& spec) {
  spec.validate();
  std::optional<fs::path> chart;
  if (!spec.chartPath.empty()) chart = spec.chartPath;
  PreparedScenario p{spec, loadRoster(spec.rosterPath, chart), {}, {}, {}, {}, {}};

  auto hashInput = [&](const fs::path& path) { p.inputHashes.emplace_back(path.string(), fnv1a64(readBytes(path))); };
  hashInput(spec.rosterPath);
  if (chart) hashInput(*chart);
  if (!spec.tierPath.empty()) {
    hashInput(spec.tierPath);
    p.tierMap = loadTierMap(spec.tierPath);
    p.roster.applyTiers(p.tierMap);
  }

  RunConfig& cfg = p.spec.runConfig;
  cfg = applyBan(cfg, spec.banned, p.roster);
  checkable(cfg).validate(p.roster);

  if (spec.mode == ScoreMode::ABC) {
    for (const auto& path : spec.preBanUsagePaths) hashInput(path);
    for (const auto& path : spec.postBanUsagePaths) hashInput(path);
    p.initialStats = toInitialStats(averagedUsage(spec.preBanUsagePaths), spec.nominalBattles, p.roster,
                                    spec.unknownSpecies, &p.warnings);
    if (!spec.postBanUsagePaths.empty())
      p.postBanStats = toInitialStats(averagedUsage(spec.postBanUsagePaths), spec.nominalBattles, p.roster,
                                      spec.unknownSpecies, &p.warnings);
    // A keeps the banned species; it must still have a full meta.
    const auto aMask = blanketOnly(p.roster, cfg);
    if (static_cast<std::size_t>(std::count(aMask.begin(), aMask.end(), 0)) < cfg.metaSize)
      throw Error(ErrorKind::Validation, "scenario: roster too small for the pre-ban meta");
  } else {
    const auto mask = bannedMask(p.roster, cfg);
    for (std::size_t x = 0; x < p.roster.size(); ++x)
      if (!mask[x] && !p.tierMap.count(p.roster.character(x).species))
        throw Error(ErrorKind::Validation,
                    "scenario: '" + p.roster.character(x).species + "' has no entry in the tier file");
  }
  return p;
}

ScenarioReport runScenario(const PreparedScenario& p, const RunHooks& hooks) {
  const RunConfig& cfg = p.spec.runConfig;
  const Roster& roster = p.roster;
  const auto mask = bannedMask(roster, cfg);

  ScenarioReport report;
  report.name = p.spec.name;
  report.mode = p.spec.mode;
  report.config = cfg;
  report.warnings = p.warnings;

  DiscoveryHooks dh;
  dh.onAggregate = hooks.onAggregate;
  dh.battleLog = hooks.battleLog;
  dh.battleLogLimit = hooks.battleLogLimit;

  MethodRow discovered;
  discovered.method = "discovered";
  if (cfg.totalBattles == 0) {
    if (!p.initialStats) throw Error(ErrorKind::InvalidArgument, "zero-battle run needs initial statistics");
    discovered.meta = extractMeta(*p.initialStats, roster, cfg.metaSize, mask);
  } else {
    const UsageStats* initial = p.initialStats ? &*p.initialStats : nullptr;
    DiscoveryResult result = runDiscovery(roster, cfg, initial, hooks.resume, dh);
    discovered.meta = std::move(result.meta);
    report.months = std::move(result.months);
    report.battles = result.battlesRecorded;
  }

  if (p.spec.mode == ScoreMode::ABC) {
    const MetaSnapshot a = extractMeta(*p.initialStats, roster, cfg.metaSize, blanketOnly(roster, cfg));
    MethodRow naive;
    naive.method = "naive";
    naive.meta = a;
    for (const auto& s : cfg.banned)
      if (naive.meta.rankOf(s)) naive.meta = naiveBaseline(naive.meta, s);
    if (p.postBanStats) {
      const MetaSnapshot b = extractMeta(*p.postBanStats, roster, cfg.metaSize, mask);
      scoreAgainst(discovered, a, b);
      scoreAgainst(naive, a, b);
      report.postBan = b;
    }
    report.preBan = a;
    report.rows.push_back(std::move(discovered));
    report.rows.push_back(std::move(naive));
  } else {
    const auto tiers = declaredTiers(p);
    MethodRow bst;
    bst.method = "bst";
    bst.meta = bstRanking(roster, mask, cfg.metaSize);
    discovered.tiers = tierCapture(discovered.meta, p.tierMap, tiers);
    bst.tiers = tierCapture(bst.meta, p.tierMap, tiers);
    report.rows.push_back(std::move(discovered));
    report.rows.push_back(std::move(bst));
  }
  return report;
}

void writeReportCsv(std::ostream& os, const ScenarioReport& r) {
  if (r.mode == ScoreMode::ABC) {
    os << "method,overlap,edit_distance_delta,spearman_rho,p_value,p_value_exact,n\n";
    for (const auto& row : r.rows) {
      const double nan = std::nan("");
      os << row.method << ',' << num(row.overlap.value_or(nan)) << ',' << num(row.editDistanceDelta.value_or(nan))
         << ',' << num(row.rho ? row.rho->rho : nan) << ',' << num(row.rho ? row.rho->pValue : nan) << ','
         << num(row.rhoExact ? row.rhoExact->pValue : nan) << ',' << (row.rho ? row.rho->n : 0) << '\n';
    }
  } else {
    os << "method,tier,capture,composition\n";
    for (const auto& row : r.rows)
      for (std::size_t t = 0; t < row.tiers->tiers.size(); ++t)
        os << row.method << ',' << row.tiers->tiers[t] << ',' << num(row.tiers->capture[t]) << ','
           << num(row.tiers->composition[t]) << '\n';
  }
}

void writeReportText(std::ostream& os, const ScenarioReport& r) {
  os << "Scenario: " << r.name << " (" << toString(r.mode) << ")\n";
  os << "Battles: " << r.battles << "  seed: " << r.config.seed << "  agent: " << toString(r.config.agent)
     << "  meta size: " << r.config.metaSize << "\n";
  if (!r.config.banned.empty()) {
    os << "Banned:";
    for (const auto& s : r.config.banned) os << ' ' << s;
    os << '\n';
  }
  os << '\n';
  if (r.mode == ScoreMode::ABC) {
    os << std::left << std::setw(12) << "Method" << std::right << std::setw(10) << "Overlap" << std::setw(15)
       << "Edit Distance" << std::setw(14) << "Spearman Rho" << std::setw(10) << "p-value" << std::setw(10)
       << "p-exact" << std::setw(5) << "n" << '\n';
    for (const auto& row : r.rows) {
      const double nan = std::nan("");
      os << std::left << std::setw(12) << row.method << std::right << std::setw(10)
         << (row.overlap ? fixed(*row.overlap * 100.0, 1) + "%" : "-") << std::setw(15)
         << fixed(row.editDistanceDelta.value_or(nan), 2) << std::setw(14) << fixed(row.rho ? row.rho->rho : nan, 2)
         << std::setw(10) << fixed(row.rho ? row.rho->pValue : nan, 3) << std::setw(10)
         << fixed(row.rhoExact ? row.rhoExact->pValue : nan, 3) << std::setw(5) << (row.rho ? row.rho->n : 0)
         << '\n';
    }
  } else {
    const auto& tiers = r.rows.front().tiers->tiers;
    os << std::left << std::setw(8) << "Tier";
    for (const auto& row : r.rows)
      os << std::right << std::setw(16) << (row.method + " cap") << std::setw(16) << (row.method + " comp");
    os << '\n';
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      os << std::left << std::setw(8) << tiers[t];
      for (const auto& row : r.rows)
        os << std::right << std::setw(16) << fixed(row.tiers->capture[t] * 100.0, 1) + "%" << std::setw(16)
           << fixed(row.tiers->composition[t] * 100.0, 1) + "%";
      os << '\n';
    }
  }

  os << "\nTop " << r.config.metaSize << '\n';
  std::vector<std::pair<std::string, const MetaSnapshot*>> cols;
  if (r.preBan) cols.emplace_back("A", &*r.preBan);
  if (r.postBan) cols.emplace_back("B", &*r.postBan);
  for (const auto& row : r.rows) cols.emplace_back(row.method, &row.meta);
  std::size_t width = 12;
  for (const auto& [label, snap] : cols)
    for (std::size_t i = 0; i < std::min(snap->metaSize, snap->ranking.size()); ++i)
      width = std::max(width, snap->ranking[i].species.size() + 2);
  os << std::left << std::setw(6) << "Rank";
  for (const auto& [label, snap] : cols) os << std::setw(static_cast<int>(width)) << label;
  os << '\n';
  for (std::size_t i = 0; i < r.config.metaSize; ++i) {
    os << std::setw(6) << i + 1;
    for (const auto& [label, snap] : cols)
      os << std::setw(static_cast<int>(width)) << (i < snap->ranking.size() ? snap->ranking[i].species : "");
    os << '\n';
  }
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
}

json reportToJson(const ScenarioReport& r) {
  json doc;
  doc["name"] = r.name;
  doc["mode"] = toString(r.mode);
  doc["battles"] = r.battles;
  doc["config"] = runConfigToJson(r.config);
  doc["config"].erase("threads");  // results do not depend on it; the manifest keeps it
  if (r.preBan) doc["pre_ban"] = snapshotToJson(*r.preBan);
  if (r.postBan) doc["post_ban"] = snapshotToJson(*r.postBan);
  auto corr = [](const std::optional<CorrelationResult>& c) -> json {
    if (!c) return nullptr;
    return {{"rho", c->rho}, {"p_value", c->pValue}, {"n", c->n}};
  };
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"method", row.method}, {"meta", snapshotToJson(row.meta)}};
    if (row.overlap) j["overlap"] = *row.overlap;
    if (row.editDistanceDelta) j["edit_distance_delta"] = *row.editDistanceDelta;
    if (row.overlap) j["spearman"] = corr(row.rho);
    if (row.overlap) j["spearman_exact"] = corr(row.rhoExact);
    if (row.tiers) {
      json t = json::array();
      for (std::size_t i = 0; i < row.tiers->tiers.size(); ++i)
        t.push_back({{"tier", row.tiers->tiers[i]},
                     {"capture", row.tiers->capture[i]},
                     {"composition", row.tiers->composition[i]}});
      j["tiers"] = std::move(t);
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  json months = json::array();
  for (const auto& m : r.months)
    months.push_back({{"month", m.month}, {"battles", m.battles}, {"meta", snapshotToJson(m.meta)}});
  doc["months"] = std::move(months);
  doc["warnings"] = r.warnings;
  return doc;
}

std::uint64_t configHash(const PreparedScenario& p) {
  json doc = scenarioToJson(p.spec);
  doc.erase("output_dir");
  // Paths are locations, not content; the input hashes below cover content.
  for (const char* key : {"roster", "chart", "tiers_file", "pre_ban_usage", "post_ban_usage"}) doc.erase(key);
  std::uint64_t h = fnv1a64(doc.dump());
  for (const auto& [path, hash] : p.inputHashes) h = fnv1a64(hex64(hash), h);
  return fnv1a64(versionString(), h);
}

json manifestJson(const PreparedScenario& p, const std::string& command) {
  json inputs = json::array();
  for (const auto& [path, hash] : p.inputHashes) inputs.push_back({{"path", path}, {"fnv1a64", hex64(hash)}});
  return {{"tool", "metadisc"},
          {"version", versionString()},
          {"command", command},
          {"config_hash", hex64(configHash(p))},
          {"seed", p.spec.runConfig.seed},
          {"scenario", scenarioToJson(p.spec)},
          {"inputs", std::move(inputs)}};
}

void writeScenarioReport(const ScenarioReport& r, const PreparedScenario& p, const fs::path& dir) {
  fs::create_directories(dir);
  std::ostringstream csv, txt, meta;
  writeReportCsv(csv, r);
  writeReportText(txt, r);
  writeFile(dir / "report.csv", csv.str());
  writeFile(dir / "report.txt", txt.str());
  writeFile(dir / "report.json", reportToJson(r).dump(2) + "\n");
  auto snapshotFile = [&](const std::string& name, const MetaSnapshot& snap) {
    std::ostringstream os;
    writeSnapshotCsv(os, snap);
    writeFile(dir / name, os.str());
  };
  if (r.preBan) snapshotFile("meta_pre_ban.csv", *r.preBan);
  if (r.postBan) snapshotFile("meta_post_ban.csv", *r.postBan);
  for (const auto& row : r.rows) snapshotFile("meta_" + row.method + ".csv", row.meta);
  for (const auto& m : r.months) snapshotFile("meta_month" + std::to_string(m.month) + ".csv", m.meta);
  writeFile(dir / "manifest.json", manifestJson(p, "run").dump(2) + "\n");
}

const std::vector<WeightTriple>& defaultWeightGrid() {
  static const std::vector<WeightTriple> grid{{0, 0, 0},     {1, 0, 0},     {0, 1, 0},   {0, 0, 1},
                                              {0.5, 0.5, 0}, {0.5, 0, 0.5}, {0, 0.5, 0.5}, {0.5, 0.25, 0.25}};
  return grid;
}

std::uint64_t gridRowSeed(std::uint64_t masterSeed, const WeightTriple& w) {
  // + 0.0 folds -0.0 into +0.0 so equal triples share a seed.
  return deriveSeed(masterSeed, {streamTag("grid"), std::bit_cast<std::uint64_t>(w.c1 + 0.0),
                                 std::bit_cast<std::uint64_t>(w.c2 + 0.0), std::bit_cast<std::uint64_t>(w.c3 + 0.0)});
}

std::vector<GridRow> runGridSearch(const PreparedScenario& prepared, const std::vector<WeightTriple>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "weight grid is empty");
  if (prepared.spec.mode != ScoreMode::ABC) throw Error(ErrorKind::InvalidArgument, "grid search needs an ABC scenario");
  if (!prepared.postBanStats) throw Error(ErrorKind::InvalidArgument, "grid search needs post-ban usage");
  std::vector<GridRow> rows;
  for (const auto& w : grid) {
    PreparedScenario p = prepared;
    p.spec.runConfig.weights = ScoreWeights::abc(w.c1, w.c2, w.c3);
    p.spec.runConfig.seed = gridRowSeed(prepared.spec.runConfig.seed, w);
    const ScenarioReport r = runScenario(p);
    const MethodRow& d = r.rows.front();
    rows.push_back({w, *d.editDistanceDelta, *d.overlap, p.spec.runConfig.seed});
  }
  return rows;
}

void writeGridCsv(std::ostream& os, const std::vector<GridRow>& rows) {
  os << "c1,c2,c3,EditDistance,Overlap\n";
  for (const auto& r : rows)
    os << num(r.weights.c1) << ',' << num(r.weights.c2) << ',' << num(r.weights.c3) << ',' << num(r.editDistance)
       << ',' << num(r.overlap) << '\n';
}

void writeGridText(std::ostream& os, const std::vector<GridRow>& rows) {
  os << std::left << std::setw(6) << "c1" << std::setw(6) << "c2" << std::setw(6) << "c3" << std::right
     << std::setw(15) << "Edit Distance" << std::setw(10) << "Overlap" << '\n';
  for (const auto& r : rows)
    os << std::left << std::setw(6) << num(r.weights.c1, 3) << std::setw(6) << num(r.weights.c2, 3) << std::setw(6)
       << num(r.weights.c3, 3) << std::right << std::setw(15) << fixed(r.editDistance, 2) << std::setw(10)
       << fixed(r.overlap * 100.0, 1) + "%" << '\n';
}

}  // namespace metadisc
