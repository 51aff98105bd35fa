#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "fixture.hpp"
#include "harness.hpp"

using namespace metadisc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// A 20-character fixture world with one pre-ban and one post-ban usage table.
struct World {
  fs::path dir;
  std::vector<std::string> species;

  explicit World(const std::string& name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    FixtureOptions o;
    o.size = 20;
    o.seed = 8;
    o.lcCount = 0;
    const Fixture f = generateFixture(o);
    writeFixture(f, dir);
    for (const auto& c : f.roster["characters"]) species.push_back(c["species"]);
    std::vector<UsageRecord> pre, post;
    for (std::size_t i = 0; i < species.size(); ++i) {
      pre.push_back({species[i], std::round(0.9 * std::pow(0.85, i) * 1e5) / 1e5, i + 1});
      if (i > 0) post.push_back({species[i], pre.back().usage, i});
    }
    std::ofstream(dir / "pre.txt") << usageText(pre);
    std::ofstream(dir / "post.txt") << usageText(post);
  }
  ~World() { fs::remove_all(dir); }

  static std::string usageText(const std::vector<UsageRecord>& r) {
    std::ostringstream os;
    emitUsageText(os, r);
    return os.str();
  }

  json abc(std::uint64_t battles) const {
    return {{"name", "abc-test"},
            {"mode", "ABC"},
            {"roster", "roster.json"},
            {"tiers_file", "tiers.json"},
            {"pre_ban_usage", {"pre.txt"}},
            {"post_ban_usage", {"post.txt"}},
            {"banned", {species[0]}},
            {"nominal_battles", 1000},
            {"output_dir", "out"},
            {"run",
             {{"total_battles", battles},
              {"battles_per_month", std::max<std::uint64_t>(battles, 1)},
              {"stats_update_interval", std::max<std::uint64_t>(battles / 2, 1)},
              {"team_pool_size", 40},
              {"meta_size", 6},
              {"seed", 3}}}};
  }

  json bsd(std::uint64_t battles) const {
    return {{"name", "bsd-test"},
            {"mode", "BSD"},
            {"roster", "roster.json"},
            {"tiers_file", "tiers.json"},
            {"run",
             {{"total_battles", battles},
              {"battles_per_month", battles / 2},
              {"stats_update_interval", 1000},
              {"team_pool_size", 100},
              {"meta_size", 6},
              {"seed", 4}}}};
  }

  PreparedScenario prepare(const json& doc) const { return prepareScenario(scenarioFromJson(doc, dir)); }
};

}  // namespace

TEST_CASE("zero battles with identical usage gives a perfect score") {
  World w("metadisc_harness_zero");
  // Post-ban usage equal to the pre-ban table: B and B' coincide.
  json doc = w.abc(0);
  doc["post_ban_usage"] = {"pre.txt"};
  const auto p = w.prepare(doc);
  const auto r = runScenario(p);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].method == "discovered");
  CHECK(*r.rows[0].overlap == 1.0);
  CHECK(*r.rows[0].editDistanceDelta == 0.0);
  CHECK(r.battles == 0);
  CHECK(r.rows[1].method == "naive");
  CHECK_FALSE(r.rows[1].meta.rankOf(w.species[0]));
  CHECK(r.preBan->ranking[0].species == w.species[0]);
}

TEST_CASE("ABC report files") {
  World w("metadisc_harness_abc");
  const auto p = w.prepare(w.abc(200));
  const auto r = runScenario(p);
  CHECK(r.battles == 200);
  REQUIRE(r.postBan);
  for (const auto& row : r.rows) {
    CHECK(row.overlap);
    CHECK(*row.overlap >= 0.0);
    CHECK(*row.overlap <= 1.0);
    CHECK_FALSE(row.meta.rankOf(w.species[0]));
  }
  const fs::path out = w.dir / "out";
  writeScenarioReport(r, p, out);
  for (const char* f : {"report.csv", "report.txt", "report.json", "manifest.json", "meta_pre_ban.csv",
                        "meta_post_ban.csv", "meta_discovered.csv", "meta_naive.csv"})
    CHECK_MESSAGE(fs::exists(out / f), f);
  std::ifstream csv(out / "report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "method,overlap,edit_distance_delta,spearman_rho,p_value,p_value_exact,n");
}

TEST_CASE("BSD report on a small world") {
  World w("metadisc_harness_bsd");
  const auto p = w.prepare(w.bsd(20000));
  const auto r = runScenario(p);
  CHECK(r.battles == 20000);
  CHECK(r.months.size() == 2);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[1].method == "bst");
  const auto& t = *r.rows[0].tiers;
  CHECK(t.tiers.back() == kBelowTiers);
  double comp = 0;
  for (double c : t.composition) comp += c;
  CHECK(comp == doctest::Approx(1.0));
  std::ostringstream os;
  writeReportCsv(os, r);
  CHECK(os.str().rfind("method,tier,capture,composition\n", 0) == 0);
  const json j = reportToJson(r);
  CHECK(j["mode"] == "BSD");
  CHECK_FALSE(j["config"].contains("threads"));
}

TEST_CASE("grid search rows") {
  World w("metadisc_harness_grid");
  const auto p = w.prepare(w.abc(120));
  const std::vector<WeightTriple> one{{1, 0, 0}};
  const auto single = runGridSearch(p, one);
  REQUIRE(single.size() == 1);
  CHECK(single[0].seed == gridRowSeed(3, one[0]));

  const std::vector<WeightTriple> grid{{1, 0, 0}, {0, 1, 0}, {1, 0, 0}};
  const auto rows = runGridSearch(p, grid);
  CHECK(rows[0].overlap == rows[2].overlap);
  CHECK(rows[0].editDistance == rows[2].editDistance);
  CHECK(rows[0].overlap == single[0].overlap);
  const std::vector<WeightTriple> swapped{{0, 1, 0}, {1, 0, 0}};
  const auto back = runGridSearch(p, swapped);
  CHECK(back[0].overlap == rows[1].overlap);
  CHECK(back[0].editDistance == rows[1].editDistance);

  CHECK_THROWS_AS(runGridSearch(p, {}), Error);
  std::ostringstream os;
  writeGridCsv(os, rows);
  CHECK(os.str().rfind("c1,c2,c3,EditDistance,Overlap\n", 0) == 0);
  CHECK(gridRowSeed(3, {0, 0, 0}) == gridRowSeed(3, {-0.0, 0, 0}));
  CHECK(gridRowSeed(3, {1, 0, 0}) != gridRowSeed(4, {1, 0, 0}));
}

TEST_CASE("manifest and config hash") {
  World w("metadisc_harness_manifest");
  const auto p = w.prepare(w.abc(100));
  const json m = manifestJson(p, "run");
  CHECK(m["tool"] == "metadisc");
  CHECK(m["version"] == versionString());
  CHECK(m["seed"] == 3);
  CHECK(m["inputs"].size() == 4);
  CHECK(m["config_hash"].get<std::string>().size() == 16);

  // Output location does not matter; seeds and inputs do.
  json moved = w.abc(100);
  moved["output_dir"] = "elsewhere";
  CHECK(configHash(w.prepare(moved)) == configHash(p));
  json reseeded = w.abc(100);
  reseeded["run"]["seed"] = 4;
  CHECK(configHash(w.prepare(reseeded)) != configHash(p));
  std::ofstream(w.dir / "post.txt", std::ios::app) << "\n";
  CHECK(configHash(w.prepare(w.abc(100))) != configHash(p));
}

TEST_CASE("scenario errors surface before simulation") {
  World w("metadisc_harness_errors");
  auto kindOf = [&](const json& doc) {
    try {
      w.prepare(doc);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::State;
  };
  json doc = w.abc(100);
  doc["banned"] = {"Nobody"};
  CHECK(kindOf(doc) == ErrorKind::NotFound);
  doc = w.abc(100);
  doc["pre_ban_usage"] = {"missing.txt"};
  CHECK(kindOf(doc) == ErrorKind::Io);
  doc = w.abc(100);
  doc["run"]["meta_size"] = 50;
  CHECK(kindOf(doc) == ErrorKind::InvalidArgument);
  doc = w.abc(100);
  doc["mode"] = "XYZ";
  CHECK(kindOf(doc) == ErrorKind::InvalidArgument);
  doc = w.abc(100);
  doc.erase("roster");
  CHECK(kindOf(doc) == ErrorKind::Parse);

  // Unknown species in usage data: fail by default, warn when skipping.
  std::ofstream(w.dir / "extra.txt") << "| 1 | Stranger | 50.00000% |\n| 2 | " << w.species[1] << " | 10.00000% |\n";
  doc = w.abc(100);
  doc["pre_ban_usage"] = {"pre.txt", "extra.txt"};
  CHECK(kindOf(doc) == ErrorKind::NotFound);
  doc["skip_unknown"] = true;
  const auto p = w.prepare(doc);
  CHECK(p.warnings.size() == 1);
}

TEST_CASE("overrides") {
  World w("metadisc_harness_overrides");
  ScenarioOverrides o;
  o.seed = 99;
  o.agent = AgentKind::Random;
  o.battles = 50;
  o.outputDir = w.dir / "custom";
  const auto spec = applyOverrides(scenarioFromJson(w.abc(400), w.dir), o);
  CHECK(spec.runConfig.seed == 99);
  CHECK((spec.runConfig.agent == AgentKind::Random));
  CHECK(spec.runConfig.totalBattles == 50);
  CHECK(spec.runConfig.statsUpdateInterval == 50);
  CHECK(spec.runConfig.battlesPerMonth == 50);
  CHECK(spec.outputDir == w.dir / "custom");
  const auto again = scenarioFromJson(scenarioToJson(spec), w.dir);
  CHECK(scenarioToJson(again) == scenarioToJson(spec));
}
