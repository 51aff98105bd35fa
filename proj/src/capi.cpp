#include "metadisc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "battle.hpp"
#include "error.hpp"
#include "fixture.hpp"
#include "harness.hpp"

using namespace metadisc;
namespace fs = std::filesystem;

struct md_roster {
  Roster roster;
};

struct md_snapshot {
  MetaSnapshot snap;
};

struct md_scenario {
  PreparedScenario prepared;
  std::optional<ScenarioReport> report;
};

namespace {

thread_local std::string lastError;

md_status statusFor(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return MD_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return MD_ERR_PARSE;
    case ErrorKind::Validation: return MD_ERR_VALIDATION;
    case ErrorKind::Io: return MD_ERR_IO;
    case ErrorKind::NotFound: return MD_ERR_NOT_FOUND;
    case ErrorKind::State: return MD_ERR_STATE;
  }
  return MD_ERR_INTERNAL;
}

md_status fail(md_status s, std::string msg) {
  lastError = std::move(msg);
  return s;
}

// Runs f, mapping exceptions to status codes and the thread's error message.
template <class F>
md_status guarded(F&& f) {
  try {
    lastError.clear();
    f();
    return MD_OK;
  } catch (const Error& e) {
    return fail(statusFor(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MD_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MD_ERR_INTERNAL, "unknown error");
  }
}

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

AgentKind agentFor(md_agent a) {
  switch (a) {
    case MD_AGENT_RANDOM: return AgentKind::Random;
    case MD_AGENT_HEURISTIC: return AgentKind::Heuristic;
    default: throw Error(ErrorKind::InvalidArgument, "unknown agent kind");
  }
}

void writeAtomically(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << bytes;
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

const ScenarioReport& reportOf(const md_scenario* s) {
  if (!s->report) throw Error(ErrorKind::State, "scenario has not been run");
  return *s->report;
}

const MethodRow& rowOf(const md_scenario* s, std::size_t index) {
  const auto& r = reportOf(s);
  if (index >= r.rows.size()) throw Error(ErrorKind::InvalidArgument, "method index out of range");
  return r.rows[index];
}

void fillMetrics(const MethodRow& row, md_method_metrics* out) {
  *out = md_method_metrics{};
  out->method = row.method.c_str();
  out->has_metrics = row.overlap.has_value();
  out->overlap = row.overlap.value_or(0.0);
  out->edit_distance_delta = row.editDistanceDelta.value_or(0.0);
  out->has_rho = row.rho.has_value();
  if (row.rho) {
    out->rho = row.rho->rho;
    out->p_value = row.rho->pValue;
    out->n = row.rho->n;
  }
  out->has_exact = row.rhoExact.has_value();
  if (row.rhoExact) out->p_value_exact = row.rhoExact->pValue;
}

}  // namespace

extern "C" {

const char* md_version(void) { return versionString(); }

const char* md_status_name(md_status status) {
  switch (status) {
    case MD_OK: return "ok";
    case MD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MD_ERR_PARSE: return "parse error";
    case MD_ERR_VALIDATION: return "validation error";
    case MD_ERR_IO: return "i/o error";
    case MD_ERR_NOT_FOUND: return "not found";
    case MD_ERR_STATE: return "invalid state";
    case MD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* md_last_error(void) { return lastError.c_str(); }

void md_string_free(char* s) { std::free(s); }

md_status md_roster_load(const char* roster_path, const char* tier_path, md_roster** out) {
  return guarded([&] {
    require(roster_path && out, "roster_path and out are required");
    *out = nullptr;
    auto r = std::make_unique<md_roster>(md_roster{loadRoster(roster_path)});
    if (tier_path) r->roster.applyTiers(loadTierMap(tier_path));
    *out = r.release();
  });
}

void md_roster_free(md_roster* roster) { delete roster; }

size_t md_roster_size(const md_roster* roster) { return roster ? roster->roster.size() : 0; }

md_status md_roster_species(const md_roster* roster, size_t index, const char** out) {
  return guarded([&] {
    require(roster && out, "roster and out are required");
    require(index < roster->roster.size(), "index out of range");
    *out = roster->roster.character(index).species.c_str();
  });
}

md_status md_roster_index(const md_roster* roster, const char* species, size_t* out) {
  return guarded([&] {
    require(roster && species && out, "roster, species and out are required");
    auto idx = roster->roster.indexOf(species);
    if (!idx) throw Error(ErrorKind::NotFound, std::string("unknown species '") + species + "'");
    *out = *idx;
  });
}

md_status md_fixture_write(uint64_t seed, size_t size, size_t type_count, size_t lc_count, int dominant,
                           const char* out_dir) {
  return guarded([&] {
    require(out_dir, "out_dir is required");
    FixtureOptions o;
    o.seed = seed;
    o.size = size;
    o.typeCount = type_count;
    if (lc_count != MD_DEFAULT) o.lcCount = lc_count;
    o.dominant = dominant != 0;
    writeFixture(generateFixture(o), out_dir);
  });
}

md_status md_battle_run(const md_roster* roster, const size_t* team_a, size_t team_a_len, const size_t* team_b,
                        size_t team_b_len, md_agent agent_a, md_agent agent_b, uint64_t seed, md_battle_result* out) {
  return guarded([&] {
    require(roster && team_a && team_b && out, "roster, teams and out are required");
    const auto a = makeAgent(agentFor(agent_a));
    const auto b = makeAgent(agentFor(agent_b));
    const BattleResult r = runBattle(roster->roster, std::span<const std::size_t>(team_a, team_a_len),
                                     std::span<const std::size_t>(team_b, team_b_len), *a, *b, seed);
    out->winner = r.winner == Side::A ? 0 : 1;
    out->turns = r.turns;
    out->hit_turn_cap = r.hitTurnCap ? 1 : 0;
  });
}

void md_overrides_init(md_overrides* o) {
  if (!o) return;
  *o = md_overrides{};
  o->agent = MD_AGENT_KEEP;
}

md_status md_scenario_load(const char* path, const md_overrides* overrides, md_scenario** out) {
  return guarded([&] {
    require(path && out, "path and out are required");
    *out = nullptr;
    ScenarioSpec spec = loadScenario(path);
    if (overrides) {
      ScenarioOverrides o;
      if (overrides->has_seed) o.seed = overrides->seed;
      if (overrides->agent != MD_AGENT_KEEP) o.agent = agentFor(overrides->agent);
      if (overrides->has_battles) o.battles = overrides->battles;
      if (overrides->threads) o.threads = overrides->threads;
      if (overrides->out_dir) o.outputDir = fs::path(overrides->out_dir);
      o.skipUnknown = overrides->skip_unknown != 0;
      spec = applyOverrides(std::move(spec), o);
    }
    *out = new md_scenario{prepareScenario(spec), std::nullopt};
  });
}

void md_scenario_free(md_scenario* scenario) { delete scenario; }

md_status md_scenario_output_dir(const md_scenario* scenario, const char** out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    *out = scenario->prepared.spec.outputDir.c_str();
  });
}

md_status md_scenario_config_hash(const md_scenario* scenario, uint64_t* out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    *out = configHash(scenario->prepared);
  });
}

void md_run_options_init(md_run_options* o) {
  if (!o) return;
  *o = md_run_options{};
  o->battle_log_limit = 1;
  o->write_reports = 1;
}

md_status md_scenario_run(md_scenario* scenario, const md_run_options* options) {
  return guarded([&] {
    require(scenario, "scenario is required");
    md_run_options opts;
    md_run_options_init(&opts);
    if (options) opts = *options;
    const PreparedScenario& p = scenario->prepared;

    RunHooks hooks;
    std::optional<RunCheckpoint> resume;
    if (opts.resume_path) {
      resume = checkpointFromJson(readJsonFile(opts.resume_path), p.roster);
      hooks.resume = &*resume;
    }
    if (opts.checkpoint_path) {
      const fs::path cpPath = opts.checkpoint_path;
      hooks.onAggregate = [&p, cpPath](const RunCheckpoint& cp) {
        writeAtomically(cpPath, checkpointToJson(cp, p.roster).dump() + "\n");
      };
    }
    std::ofstream log;
    if (opts.battle_log_path) {
      log.open(opts.battle_log_path, std::ios::binary);
      if (!log) throw Error(ErrorKind::Io, std::string("cannot write '") + opts.battle_log_path + "'");
      hooks.battleLog = &log;
      hooks.battleLogLimit = opts.battle_log_limit;
    }
    scenario->report.reset();
    ScenarioReport report = runScenario(p, hooks);
    if (opts.write_reports) writeScenarioReport(report, p, p.spec.outputDir);
    scenario->report = std::move(report);
  });
}

size_t md_scenario_method_count(const md_scenario* scenario) {
  return scenario && scenario->report ? scenario->report->rows.size() : 0;
}

md_status md_scenario_method(const md_scenario* scenario, size_t index, md_method_metrics* out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    fillMetrics(rowOf(scenario, index), out);
  });
}

md_status md_scenario_method_meta(const md_scenario* scenario, size_t index, md_snapshot** out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    *out = new md_snapshot{rowOf(scenario, index).meta};
  });
}

md_status md_scenario_tier_count(const md_scenario* scenario, size_t method, size_t* out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    const auto& row = rowOf(scenario, method);
    *out = row.tiers ? row.tiers->tiers.size() : 0;
  });
}

md_status md_scenario_tier(const md_scenario* scenario, size_t method, size_t tier, const char** name,
                           double* capture, double* composition) {
  return guarded([&] {
    require(scenario, "scenario is required");
    const auto& row = rowOf(scenario, method);
    if (!row.tiers || tier >= row.tiers->tiers.size()) throw Error(ErrorKind::InvalidArgument, "tier out of range");
    if (name) *name = row.tiers->tiers[tier].c_str();
    if (capture) *capture = row.tiers->capture[tier];
    if (composition) *composition = row.tiers->composition[tier];
  });
}

md_status md_scenario_report_text(const md_scenario* scenario, char** out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    std::ostringstream os;
    writeReportText(os, reportOf(scenario));
    *out = dupString(os.str());
  });
}

md_status md_scenario_report_csv(const md_scenario* scenario, char** out) {
  return guarded([&] {
    require(scenario && out, "scenario and out are required");
    std::ostringstream os;
    writeReportCsv(os, reportOf(scenario));
    *out = dupString(os.str());
  });
}

md_status md_gridsearch(md_scenario* scenario, const double* weights, size_t count, const char* out_dir,
                        char** csv_out) {
  return guarded([&] {
    require(scenario, "scenario is required");
    require(weights || count == 0, "weights is NULL but count is not zero");
    std::vector<WeightTriple> grid;
    if (!weights)
      grid = defaultWeightGrid();
    else
      for (std::size_t i = 0; i < count; ++i) grid.push_back({weights[3 * i], weights[3 * i + 1], weights[3 * i + 2]});
    const auto rows = runGridSearch(scenario->prepared, grid);
    std::ostringstream csv;
    writeGridCsv(csv, rows);
    if (out_dir) {
      const fs::path dir = out_dir;
      fs::create_directories(dir);
      std::ostringstream txt;
      writeGridText(txt, rows);
      writeAtomically(dir / "grid.csv", csv.str());
      writeAtomically(dir / "grid.txt", txt.str());
      auto manifest = manifestJson(scenario->prepared, "gridsearch");
      auto g = nlohmann::json::array();
      for (const auto& r : rows) g.push_back({{"c1", r.weights.c1}, {"c2", r.weights.c2}, {"c3", r.weights.c3}, {"seed", r.seed}});
      manifest["grid"] = std::move(g);
      writeAtomically(dir / "manifest.json", manifest.dump(2) + "\n");
    }
    if (csv_out) *csv_out = dupString(csv.str());
  });
}

md_status md_snapshot_load(const char* path, size_t meta_size, md_snapshot** out) {
  return guarded([&] {
    require(path && out, "path and out are required");
    *out = new md_snapshot{readSnapshot(path, meta_size)};
  });
}

void md_snapshot_free(md_snapshot* snapshot) { delete snapshot; }

size_t md_snapshot_size(const md_snapshot* snapshot) { return snapshot ? snapshot->snap.ranking.size() : 0; }

size_t md_snapshot_meta_size(const md_snapshot* snapshot) { return snapshot ? snapshot->snap.metaSize : 0; }

md_status md_snapshot_species(const md_snapshot* snapshot, size_t rank0, const char** out) {
  return guarded([&] {
    require(snapshot && out, "snapshot and out are required");
    require(rank0 < snapshot->snap.ranking.size(), "rank out of range");
    *out = snapshot->snap.ranking[rank0].species.c_str();
  });
}

md_status md_metric_overlap(const md_snapshot* b, const md_snapshot* b_prime, double* out) {
  return guarded([&] {
    require(b && b_prime && out, "snapshots and out are required");
    *out = overlap(b->snap, b_prime->snap);
  });
}

md_status md_metric_edit_distance(const md_snapshot* a, const md_snapshot* x, double* out) {
  return guarded([&] {
    require(a && x && out, "snapshots and out are required");
    *out = editDistance(a->snap, x->snap);
  });
}

md_status md_metrics_compare(const md_snapshot* a, const md_snapshot* b, const md_snapshot* b_prime,
                             md_method_metrics* out) {
  return guarded([&] {
    require(a && b && b_prime && out, "snapshots and out are required");
    thread_local MethodRow row;
    row = MethodRow{};
    row.method = "compare";
    row.meta = b_prime->snap;
    row.overlap = overlap(b->snap, b_prime->snap);
    row.editDistanceDelta = editDistanceDelta(a->snap, b->snap, b_prime->snap);
    const auto shifts = rankShifts(a->snap, b->snap, b_prime->snap);
    try {
      row.rho = spearman(shifts.truthShift, shifts.discoveredShift, PValueMethod::TApproximation);
      if (shifts.species.size() <= kMaxExactPermutationN)
        row.rhoExact = spearman(shifts.truthShift, shifts.discoveredShift, PValueMethod::ExactPermutation);
    } catch (const Error&) {
    }
    fillMetrics(row, out);
  });
}

md_status md_metric_tier_capture(const md_snapshot* b_prime, const char* tier_path, const char* const* tiers,
                                 size_t tier_count, char** out) {
  return guarded([&] {
    require(b_prime && tier_path && out, "snapshot, tier_path and out are required");
    require(tiers || tier_count == 0, "tiers is NULL but tier_count is not zero");
    const auto tierMap = loadTierMap(tier_path);
    std::vector<std::string> order;
    if (tiers) {
      order.assign(tiers, tiers + tier_count);
    } else {
      for (const auto& [species, tier] : tierMap)
        if (std::find(order.begin(), order.end(), tier) == order.end()) order.push_back(tier);
      std::sort(order.begin(), order.end());
    }
    const TierReport r = tierCapture(b_prime->snap, tierMap, order);
    std::ostringstream os;
    os << std::left << std::setw(10) << "Tier" << std::right << std::setw(10) << "Capture" << std::setw(14)
       << "Composition" << '\n';
    os << std::fixed << std::setprecision(1);
    for (std::size_t t = 0; t < r.tiers.size(); ++t)
      os << std::left << std::setw(10) << r.tiers[t] << std::right << std::setw(9) << r.capture[t] * 100.0 << '%'
         << std::setw(13) << r.composition[t] * 100.0 << "%\n";
    *out = dupString(os.str());
  });
}

md_status md_ingest(const char* const* paths, size_t count, const char* roster_path, int skip_unknown,
                    const char* format, char** out, char** warnings_out) {
  return guarded([&] {
    require(paths && count > 0 && out, "at least one path and out are required");
    const std::string fmt = format ? format : "text";
    require(fmt == "text" || fmt == "json", "format must be 'text' or 'json'");
    std::vector<std::vector<UsageRecord>> months;
    for (std::size_t i = 0; i < count; ++i) {
      require(paths[i] != nullptr, "NULL path");
      months.push_back(loadUsageFile(paths[i]));
    }
    std::vector<UsageRecord> records = averageMonths(months);
    std::string warnings;
    if (roster_path) {
      const Roster roster = loadRoster(roster_path);
      std::vector<UsageRecord> kept;
      for (auto& r : records) {
        if (roster.indexOf(r.species)) {
          kept.push_back(std::move(r));
          continue;
        }
        if (!skip_unknown)
          throw Error(ErrorKind::NotFound, "usage data names unknown species '" + r.species + "'");
        warnings += "skipping unknown species '" + r.species + "'\n";
      }
      for (std::size_t i = 0; i < kept.size(); ++i) kept[i].rank = i + 1;
      records = std::move(kept);
    }
    std::ostringstream os;
    if (fmt == "json")
      os << emitUsageJson(records).dump(2) << '\n';
    else
      emitUsageText(os, records);
    *out = dupString(os.str());
    if (warnings_out) *warnings_out = warnings.empty() ? nullptr : dupString(warnings);
  });
}

}  // extern "C"
