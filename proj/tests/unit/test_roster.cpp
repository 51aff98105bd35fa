#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "fixture.hpp"
#include "roster.hpp"
#include "support/tiny_roster.hpp"

using namespace metadisc;
using nlohmann::json;

namespace {

std::string validationMessage(const json& doc) {
  try {
    parseRoster(doc, "r.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    return e.what();
  }
  FAIL("expected a validation error");
  return {};
}

}  // namespace

TEST_CASE("tiny roster loads") {
  const Roster r = testdata::tinyRoster();
  CHECK(r.size() == 8);
  CHECK(r.chart().size() == 5);
  CHECK(r.indexOf("Tide") == 1);
  CHECK_FALSE(r.indexOf("Nobody"));
  const auto fire = *r.chart().find("Fire");
  const auto grass = *r.chart().find("Grass");
  const auto water = *r.chart().find("Water");
  CHECK(r.chart().multiplier(fire, grass) == 2.0);
  CHECK(r.chart().score(fire, grass) == 1);
  CHECK(r.chart().score(fire, water) == -1);
  CHECK(r.chart().score(*r.chart().find("Normal"), *r.chart().find("Ghost")) == -2);
  const std::vector<TypeId> grassWater{grass, water};
  CHECK(r.chart().effectiveness(fire, grassWater) == 1.0);
  CHECK(r.maxStatSum() == 520);
}

TEST_CASE("roster validation names the offending location") {
  json doc = testdata::tinyRosterJson();
  SUBCASE("bad multiplier") {
    doc["chart"][1][2] = 3.0;
    CHECK(validationMessage(doc).find("chart[1][2]") != std::string::npos);
  }
  SUBCASE("unknown move") {
    doc["characters"][2]["moves"][0] = "nothing";
    const auto msg = validationMessage(doc);
    CHECK(msg.find("characters[2] ('Fern').moves[0]") != std::string::npos);
  }
  SUBCASE("stat out of range") {
    doc["characters"][0]["base_stats"][3] = 300;
    CHECK(validationMessage(doc).find("base_stats[3]") != std::string::npos);
  }
  SUBCASE("duplicate species") {
    doc["characters"][1]["species"] = "Blaze";
    CHECK(validationMessage(doc).find("duplicate species") != std::string::npos);
  }
  SUBCASE("repeated type") {
    doc["characters"][0]["types"] = {"Fire", "Fire"};
    CHECK(validationMessage(doc).find("distinct") != std::string::npos);
  }
  SUBCASE("five moves") {
    doc["characters"][0]["moves"] = {"ember", "flame", "tackle", "slam", "growl"};
    CHECK(validationMessage(doc).find("one to four") != std::string::npos);
  }
  SUBCASE("status move with power") {
    doc["moves"][7]["power"] = 10;
    CHECK(validationMessage(doc).find("power 0") != std::string::npos);
  }
  SUBCASE("wrong version") {
    doc["format_version"] = 2;
    CHECK(validationMessage(doc).find("format_version") != std::string::npos);
  }
}

TEST_CASE("roster JSON round trip") {
  const Roster r = testdata::tinyRoster();
  const Roster again = parseRoster(rosterToJson(r), "again");
  REQUIRE(again.size() == r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(again.character(i).species == r.character(i).species);
    CHECK(again.character(i).baseStats == r.character(i).baseStats);
    CHECK(again.character(i).moves == r.character(i).moves);
  }
}

TEST_CASE("malformed JSON file reports line and column") {
  const auto path = std::filesystem::temp_directory_path() / "metadisc_bad_roster.json";
  std::ofstream(path) << "{\n  \"types\": [\n    \"A\",,\n  ]\n}\n";
  try {
    loadRoster(path);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("base stat totals are normalized by the largest") {
  const Roster r = testdata::tinyRoster();
  const auto bst = baseStatTotals(r);
  CHECK(bst[0] == doctest::Approx(520.0 / 520.0));
  CHECK(bst[7] == doctest::Approx(320.0 / 520.0));
  for (double v : bst) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("type vectors") {
  const Roster r = testdata::tinyRoster();
  const TypeChart& c = r.chart();
  const TypeId grass = *c.find("Grass");
  // Against a lone Grass defender: Fire scores +1, Water/Grass -1, others 0.
  const std::vector<TypeId> group{grass};
  const auto v = typeVectorFor(group, c);
  CHECK(v[*c.find("Fire")] == 1.0);
  CHECK(v[*c.find("Water")] == 0.0);
  CHECK(v[*c.find("Normal")] == 0.5);
  CHECK_THROWS_AS(typeVectorFor(std::vector<TypeId>{}, c), Error);

  // Dual-typed characters average their two type values.
  const auto per = characterTypeValues(r, v);
  CHECK(per[*r.indexOf("Steam")] == doctest::Approx((1.0 + 0.0) / 2));
  CHECK(per[*r.indexOf("Moss")] == doctest::Approx((0.0 + 0.5) / 2));
}

TEST_CASE("fixture generation") {
  FixtureOptions o;
  o.seed = 9;
  const Fixture a = generateFixture(o);
  const Fixture b = generateFixture(o);
  CHECK(a.roster.dump() == b.roster.dump());
  CHECK(a.tiers.dump() == b.tiers.dump());

  const Roster r = fixtureRoster(a);
  CHECK(r.size() == 740);
  CHECK(r.chart().size() == 18);
  std::size_t lc = 0;
  for (const auto& [species, tier] : a.tiers.items()) lc += tier == "LC";
  CHECK(lc == 210);
  for (const auto& ch : r.characters()) {
    CHECK(ch.moves.size() >= 2);
    CHECK(ch.moves.size() <= 4);
  }

  o.seed = 10;
  CHECK(generateFixture(o).roster.dump() != a.roster.dump());

  FixtureOptions tooSmall;
  tooSmall.size = 11;
  CHECK_THROWS_AS(generateFixture(tooSmall), Error);
  FixtureOptions oneType;
  oneType.typeCount = 1;
  CHECK_THROWS_AS(generateFixture(oneType), Error);
}

TEST_CASE("fixture tiers follow stat totals") {
  FixtureOptions o;
  o.seed = 4;
  const Roster r = fixtureRoster(generateFixture(o));
  auto meanTotal = [&](const std::string& tier) {
    double sum = 0;
    int n = 0;
    for (const auto& ch : r.characters())
      if (ch.tier == tier) {
        sum += ch.statSum();
        ++n;
      }
    return sum / n;
  };
  CHECK(meanTotal("AG") > meanTotal("Ubers"));
  CHECK(meanTotal("Ubers") > meanTotal("OU"));
  CHECK(meanTotal("OU") > meanTotal("UU"));
  CHECK(meanTotal("UU") > meanTotal("NU"));
  CHECK(meanTotal("NU") > meanTotal("PU"));
  CHECK(meanTotal("PU") > meanTotal("LC"));
}

TEST_CASE("fixture files load from disk") {
  const auto dir = std::filesystem::temp_directory_path() / "metadisc_fixture_test";
  FixtureOptions o;
  o.size = 20;
  o.dominant = true;
  writeFixture(generateFixture(o), dir);
  const Roster r = loadRoster(dir / "roster.json");
  CHECK(r.size() == 20);
  CHECK(r.indexOf(kDominantSpecies));
  const auto tiers = loadTierMap(dir / "tiers.json");
  CHECK(tiers.at(kDominantSpecies) == "AG");
  std::filesystem::remove_all(dir);
}
