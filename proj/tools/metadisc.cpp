// metadisc command line: thin layer over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metadisc.h"

namespace {

int report(md_status s) {
  if (s == MD_OK) return 0;
  std::cerr << "metadisc: " << md_status_name(s) << ": " << md_last_error() << '\n';
  return s == MD_ERR_INTERNAL ? 3 : 2;
}

struct Owned {
  char* p = nullptr;
  ~Owned() { md_string_free(p); }
};

bool emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "metadisc: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string agent;
  std::optional<std::uint64_t> battles;
  std::string out;
  bool skipUnknown = false;
  unsigned threads = 0;
};

void addCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--agent", f.agent, "Battle agent")->check(CLI::IsMember({"random", "heuristic"}));
  cmd->add_option("--battles", f.battles, "Total simulated battles (overrides the scenario)");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_flag("--skip-unknown", f.skipUnknown, "Skip usage entries that are not in the roster");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = scenario value)");
}

md_overrides overridesFrom(const CommonFlags& f) {
  md_overrides o;
  md_overrides_init(&o);
  if (f.seed) {
    o.has_seed = 1;
    o.seed = *f.seed;
  }
  if (f.agent == "random") o.agent = MD_AGENT_RANDOM;
  if (f.agent == "heuristic") o.agent = MD_AGENT_HEURISTIC;
  if (f.battles) {
    o.has_battles = 1;
    o.battles = *f.battles;
  }
  o.threads = f.threads;
  o.out_dir = f.out.empty() ? nullptr : f.out.c_str();
  o.skip_unknown = f.skipUnknown ? 1 : 0;
  return o;
}

std::vector<double> parseGrid(const std::string& text) {
  // "c1,c2,c3;c1,c2,c3;..."
  std::vector<double> out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    if (row.empty()) continue;
    std::stringstream cells(row);
    std::string cell;
    int n = 0;
    while (std::getline(cells, cell, ',')) {
      out.push_back(std::stod(cell));
      ++n;
    }
    if (n != 3) throw CLI::ValidationError("--grid", "each row needs exactly three weights: '" + row + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metagame discovery: simulate battles, discover metas, score them"};
  app.set_version_flag("--version", std::string(md_version()));
  app.require_subcommand(1);

  // run
  CommonFlags runFlags;
  std::string runScenario, checkpoint, resume, battleLog;
  std::uint64_t battleLogLimit = 1;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an ABC or BSD scenario and write reports");
  run->add_option("scenario", runScenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  addCommon(run, runFlags);
  run->add_option("--checkpoint", checkpoint, "Rewrite a checkpoint file after every stats window");
  run->add_option("--resume", resume, "Continue from a checkpoint file")->check(CLI::ExistingFile);
  run->add_option("--battle-log", battleLog, "Write JSON-lines battle logs to this file");
  run->add_option("--battle-log-limit", battleLogLimit, "Number of battles to log");
  run->add_flag("-q,--quiet", quiet, "Do not print the text report");

  // gridsearch
  CommonFlags gridFlags;
  std::string gridScenario, gridSpec;
  auto* grid = app.add_subcommand("gridsearch", "Run the ABC weight grid search");
  grid->add_option("scenario", gridScenario, "ABC scenario JSON file")->required()->check(CLI::ExistingFile);
  addCommon(grid, gridFlags);
  grid->add_option("--grid", gridSpec, "Weight triples 'c1,c2,c3;...' (default: eight-row grid)");

  // fixture
  std::uint64_t fxSeed = 1;
  std::size_t fxSize = 740, fxTypes = 18;
  std::optional<std::size_t> fxLc;
  bool fxDominant = false;
  std::string fxOut;
  auto* fixture = app.add_subcommand("fixture", "Generate a synthetic roster and tier file");
  fixture->add_option("--seed", fxSeed, "Generator seed");
  fixture->add_option("--size", fxSize, "Number of characters")->check(CLI::Range(12, 100000));
  fixture->add_option("--types", fxTypes, "Number of types")->check(CLI::Range(2, 255));
  fixture->add_option("--lc", fxLc, "Number of LC characters");
  fixture->add_flag("--dominant", fxDominant, "Include an overpowered character named Dominant");
  fixture->add_option("--out", fxOut, "Output directory")->required();

  // metrics
  std::vector<std::string> snapshots;
  std::size_t metaSize = 0;
  std::string tierFile;
  std::vector<std::string> tierOrder;
  auto* metrics = app.add_subcommand(
      "metrics", "Compare snapshots: X Y gives overlap and edit distance; A B B' adds delta and Spearman");
  metrics->add_option("snapshots", snapshots, "Snapshot files (.csv or .json)")->required()->expected(2, 3)
      ->check(CLI::ExistingFile);
  metrics->add_option("--meta-size", metaSize, "Meta size (default: from the files)");
  metrics->add_option("--tiers", tierFile, "Tier file for tier capture of the last snapshot")
      ->check(CLI::ExistingFile);
  metrics->add_option("--tier-order", tierOrder, "Declared tiers, best first");

  // ingest
  std::vector<std::string> usageFiles;
  std::string ingestRoster, ingestFormat = "text", ingestOut;
  bool ingestSkip = false;
  auto* ingest = app.add_subcommand("ingest", "Parse, validate and average monthly usage tables");
  ingest->add_option("files", usageFiles, "Usage tables or JSON files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--roster", ingestRoster, "Check species against a roster")->check(CLI::ExistingFile);
  ingest->add_option("--format", ingestFormat, "Output format")->check(CLI::IsMember({"text", "json"}));
  ingest->add_option("--out", ingestOut, "Output file (default: stdout)");
  ingest->add_flag("--skip-unknown", ingestSkip, "Drop species missing from the roster");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    const md_overrides o = overridesFrom(runFlags);
    md_scenario* sc = nullptr;
    if (int rc = report(md_scenario_load(runScenario.c_str(), &o, &sc))) return rc;
    md_run_options opts;
    md_run_options_init(&opts);
    if (!checkpoint.empty()) opts.checkpoint_path = checkpoint.c_str();
    if (!resume.empty()) opts.resume_path = resume.c_str();
    if (!battleLog.empty()) {
      opts.battle_log_path = battleLog.c_str();
      opts.battle_log_limit = battleLogLimit;
    }
    int rc = report(md_scenario_run(sc, &opts));
    if (rc == 0 && !quiet) {
      Owned text;
      rc = report(md_scenario_report_text(sc, &text.p));
      if (rc == 0) std::cout << text.p;
    }
    if (rc == 0) {
      const char* dir = nullptr;
      md_scenario_output_dir(sc, &dir);
      std::cerr << "reports written to " << dir << '\n';
    }
    md_scenario_free(sc);
    return rc;
  }

  if (*grid) {
    std::vector<double> weights;
    try {
      weights = parseGrid(gridSpec);
    } catch (const std::exception& e) {
      std::cerr << "metadisc: bad --grid: " << e.what() << '\n';
      return 2;
    }
    if (!gridSpec.empty() && weights.empty()) {
      std::cerr << "metadisc: --grid is empty\n";
      return 2;
    }
    const md_overrides o = overridesFrom(gridFlags);
    md_scenario* sc = nullptr;
    if (int rc = report(md_scenario_load(gridScenario.c_str(), &o, &sc))) return rc;
    const char* dir = nullptr;
    md_scenario_output_dir(sc, &dir);
    Owned csv;
    int rc = report(md_gridsearch(sc, weights.empty() ? nullptr : weights.data(), weights.size() / 3, dir, &csv.p));
    if (rc == 0) std::cout << csv.p;
    md_scenario_free(sc);
    return rc;
  }

  if (*fixture)
    return report(md_fixture_write(fxSeed, fxSize, fxTypes, fxLc ? *fxLc : MD_DEFAULT, fxDominant ? 1 : 0,
                                   fxOut.c_str()));

  if (*metrics) {
    std::vector<md_snapshot*> snaps;
    int rc = 0;
    for (const auto& path : snapshots) {
      md_snapshot* s = nullptr;
      rc = report(md_snapshot_load(path.c_str(), metaSize, &s));
      if (rc) break;
      snaps.push_back(s);
    }
    if (rc == 0 && snaps.size() == 2) {
      double ov = 0, ed = 0;
      rc = report(md_metric_overlap(snaps[0], snaps[1], &ov));
      if (rc == 0) rc = report(md_metric_edit_distance(snaps[0], snaps[1], &ed));
      if (rc == 0) std::printf("overlap %.6f\nedit_distance %.6f\n", ov, ed);
    } else if (rc == 0) {
      md_method_metrics m;
      rc = report(md_metrics_compare(snaps[0], snaps[1], snaps[2], &m));
      if (rc == 0) {
        std::printf("overlap %.6f\nedit_distance_delta %.6f\n", m.overlap, m.edit_distance_delta);
        if (m.has_rho)
          std::printf("spearman_rho %.6f\np_value %.6g\nn %zu\n", m.rho, m.p_value, m.n);
        else
          std::printf("spearman_rho undefined\n");
        if (m.has_exact) std::printf("p_value_exact %.6g\n", m.p_value_exact);
      }
    }
    if (rc == 0 && !tierFile.empty()) {
      std::vector<const char*> order;
      for (const auto& t : tierOrder) order.push_back(t.c_str());
      Owned text;
      rc = report(md_metric_tier_capture(snaps.back(), tierFile.c_str(), order.empty() ? nullptr : order.data(),
                                         order.size(), &text.p));
      if (rc == 0) std::cout << '\n' << text.p;
    }
    for (auto* s : snaps) md_snapshot_free(s);
    return rc;
  }

  if (*ingest) {
    std::vector<const char*> paths;
    for (const auto& f : usageFiles) paths.push_back(f.c_str());
    Owned text, warnings;
    int rc = report(md_ingest(paths.data(), paths.size(), ingestRoster.empty() ? nullptr : ingestRoster.c_str(),
                              ingestSkip ? 1 : 0, ingestFormat.c_str(), &text.p, &warnings.p));
    if (rc) return rc;
    if (warnings.p) std::cerr << warnings.p;
    return emit(text.p, ingestOut) ? 0 : 2;
  }
  return 0;
}
