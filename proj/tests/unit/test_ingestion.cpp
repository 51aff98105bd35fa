#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "ingestion.hpp"
#include "support/tiny_roster.hpp"

using namespace metadisc;

namespace {

const char* kTable =
    " Total battles: 1234\n"
    " + ---- + ------- + ------- +\n"
    " | Rank | Species | Usage % |\n"
    " + ---- + ------- + ------- +\n"
    " | 1    | Blaze   | 40.00000% | 9 |\n"
    " | 2    | Tide    | 25.50000% |\n"
    " | 3    | Fern    | 25.50000% |\n"
    " + ---- + ------- + ------- +\n";

std::vector<UsageRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parseUsageText(in, "t.txt");
}

ErrorKind kindOf(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::State;
}

}  // namespace

TEST_CASE("usage table parsing") {
  const auto recs = parse(kTable);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0] == UsageRecord{"Blaze", 0.4, 1});
  CHECK(recs[2].species == "Fern");
  CHECK(recs[2].usage == doctest::Approx(0.255));
}

TEST_CASE("usage table errors") {
  CHECK(kindOf("| 1 | A | 10% |\n| 3 | B | 5% |\n") == ErrorKind::Validation);
  CHECK(kindOf("| 1 | A | 10% |\n| 2 | B | 50% |\n") == ErrorKind::Validation);
  CHECK(kindOf("| 1 | A | ten |\n") == ErrorKind::Parse);
  CHECK(kindOf("| 1 | A |\n") == ErrorKind::Parse);
  try {
    parse("| Rank | Species | Usage % |\n| 1 | A | 10% |\n| x | B | 5% |\n");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("t.txt:3") != std::string::npos);
  }
}

TEST_CASE("canonical text and JSON round trip") {
  const auto recs = parse(kTable);
  std::ostringstream os;
  emitUsageText(os, recs);
  CHECK(parse(os.str()) == recs);
  std::ostringstream again;
  emitUsageText(again, parse(os.str()));
  CHECK(again.str() == os.str());
  CHECK(parseUsageJson(emitUsageJson(recs)) == recs);
}

TEST_CASE("usage JSON validation") {
  auto doc = emitUsageJson(parse(kTable));
  doc["format_version"] = 9;
  CHECK_THROWS_AS(parseUsageJson(doc), Error);
  auto high = emitUsageJson(parse(kTable));
  high["records"][0]["usage"] = 1.5;
  CHECK_THROWS_AS(parseUsageJson(high), Error);
}

TEST_CASE("months average with absent species counted as zero") {
  const std::vector<UsageRecord> m1{{"A", 0.6, 1}, {"B", 0.2, 2}};
  const std::vector<UsageRecord> m2{{"B", 0.5, 1}, {"C", 0.3, 2}};
  const auto avg = averageMonths({m1, m2});
  REQUIRE(avg.size() == 3);
  CHECK(avg[0].species == "B");
  CHECK(avg[0].usage == doctest::Approx(0.35));
  CHECK(avg[1].species == "A");
  CHECK(avg[1].usage == doctest::Approx(0.3));
  CHECK(avg[2].usage == doctest::Approx(0.15));
  CHECK(avg[2].rank == 3);
  CHECK_THROWS_AS(averageMonths({}), Error);
  CHECK_THROWS_AS(averageMonths({{{"A", 0.1, 1}, {"A", 0.1, 2}}}), Error);
}

TEST_CASE("initial statistics from usage") {
  const Roster r = testdata::tinyRoster();
  const std::vector<UsageRecord> recs{{"Blaze", 0.5, 1}, {"Ghosty", 0.3, 2}, {"Tide", 0.25, 3}};
  CHECK_THROWS_AS(toInitialStats(recs, 1000, r), Error);
  std::vector<std::string> warnings;
  const auto s = toInitialStats(recs, 1000, r, UnknownSpecies::Skip, &warnings);
  CHECK(warnings.size() == 1);
  CHECK(s.numBattles() == 1000);
  CHECK(s.picks(*r.indexOf("Blaze")) == 1000);
  CHECK(s.picks(*r.indexOf("Tide")) == 500);
  CHECK(pickrate(s, *r.indexOf("Blaze")) == doctest::Approx(0.5));
  CHECK(s.wins(*r.indexOf("Blaze")) == 0);
  CHECK_THROWS_AS(toInitialStats({}, 1000, r), Error);
}

TEST_CASE("usage snapshot keeps record order") {
  const auto snap = snapshotFromUsage(parse(kTable), 2);
  CHECK(snap.metaSet() == std::vector<std::string>{"Blaze", "Tide"});
  CHECK(snap.ranking[0].pickrate == doctest::Approx(0.4));
}

TEST_CASE("usage files dispatch on extension") {
  const auto dir = std::filesystem::temp_directory_path() / "metadisc_ingest_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "m.txt") << kTable;
  std::ofstream(dir / "m.json") << emitUsageJson(parse(kTable)).dump();
  CHECK(loadUsageFile(dir / "m.txt") == loadUsageFile(dir / "m.json"));
  CHECK_THROWS_AS(loadUsageFile(dir / "missing.txt"), Error);
  std::filesystem::remove_all(dir);
}
