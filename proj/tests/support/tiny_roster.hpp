#pragma once

#include <json.hpp>

#include "roster.hpp"

namespace testdata {

// Five types with a hand-written chart:
//   Fire > Grass > Water > Fire, Normal cannot touch Ghost and vice versa.
inline nlohmann::json tinyRosterJson() {
  using nlohmann::json;
  json types = {"Normal", "Fire", "Water", "Grass", "Ghost"};
  json chart = {
      // Nor  Fir  Wat  Gra  Gho   (defending)
      {1.0, 1.0, 1.0, 1.0, 0.0},  // Normal
      {1.0, 0.5, 0.5, 2.0, 1.0},  // Fire
      {1.0, 2.0, 0.5, 0.5, 1.0},  // Water
      {1.0, 0.5, 2.0, 0.5, 1.0},  // Grass
      {0.0, 1.0, 1.0, 1.0, 2.0},  // Ghost
  };
  json moves = json::array({
      {{"id", "tackle"}, {"type", "Normal"}, {"power", 40}, {"accuracy", 1.0}, {"category", "physical"}},
      {{"id", "slam"}, {"type", "Normal"}, {"power", 80}, {"accuracy", 0.75}, {"category", "physical"}},
      {{"id", "ember"}, {"type", "Fire"}, {"power", 40}, {"accuracy", 1.0}, {"category", "special"}},
      {{"id", "flame"}, {"type", "Fire"}, {"power", 90}, {"accuracy", 1.0}, {"category", "special"}},
      {{"id", "splash"}, {"type", "Water"}, {"power", 90}, {"accuracy", 1.0}, {"category", "special"}},
      {{"id", "leaf"}, {"type", "Grass"}, {"power", 90}, {"accuracy", 1.0}, {"category", "physical"}},
      {{"id", "shade"}, {"type", "Ghost"}, {"power", 70}, {"accuracy", 1.0}, {"category", "special"}},
      {{"id", "growl"}, {"type", "Normal"}, {"power", 0}, {"accuracy", 1.0}, {"category", "status"}},
  });
  auto mon = [](const char* name, json types, std::array<int, 6> stats, json moves) {
    return json{{"species", name}, {"types", std::move(types)}, {"base_stats", stats}, {"moves", std::move(moves)}};
  };
  json characters = json::array({
      mon("Blaze", {"Fire"}, {80, 80, 80, 100, 80, 100}, {"ember", "flame", "tackle"}),
      mon("Tide", {"Water"}, {90, 70, 90, 95, 90, 70}, {"splash", "tackle"}),
      mon("Fern", {"Grass"}, {85, 95, 85, 70, 85, 60}, {"leaf", "tackle", "growl"}),
      mon("Plain", {"Normal"}, {100, 90, 70, 60, 70, 90}, {"tackle", "slam", "growl"}),
      mon("Wisp", {"Ghost"}, {60, 60, 60, 110, 80, 110}, {"shade", "growl"}),
      mon("Steam", {"Fire", "Water"}, {75, 75, 75, 95, 75, 85}, {"flame", "splash"}),
      mon("Moss", {"Grass", "Normal"}, {95, 90, 95, 50, 95, 40}, {"leaf", "slam"}),
      mon("Cinder", {"Fire"}, {50, 50, 50, 60, 50, 60}, {"ember"}),
  });
  return {{"format_version", 1}, {"types", types}, {"chart", chart}, {"moves", moves}, {"characters", characters}};
}

inline metadisc::Roster tinyRoster() { return metadisc::parseRoster(tinyRosterJson(), "<tiny>"); }

}  // namespace testdata
