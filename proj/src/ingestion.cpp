#include "ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "error.hpp"

namespace metadisc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> splitCells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = line.find('|') + 1;
  while (start <= line.size()) {
    const std::size_t bar = line.find('|', start);
    if (bar == std::string::npos) {
      const std::string tail = trim(std::string_view(line).substr(start));
      if (!tail.empty()) cells.push_back(tail);
      break;
    }
    cells.push_back(trim(std::string_view(line).substr(start, bar - start)));
    start = bar + 1;
  }
  return cells;
}

bool isRule(const std::string& cell) {
  return !cell.empty() && std::all_of(cell.begin(), cell.end(), [](char c) { return c == '-' || c == ':'; });
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return std::tolower(x) == std::tolower(y); });
}

[[noreturn]] void parseFail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ": " + what);
}

void checkOrdering(const std::vector<UsageRecord>& records, const std::string& source) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].rank != i + 1)
      throw Error(ErrorKind::Validation, source + ": ranks must be contiguous from 1 (found rank " +
                                             std::to_string(records[i].rank) + " at position " +
                                             std::to_string(i + 1) + ")");
    if (i > 0 && records[i].usage > records[i - 1].usage)
      throw Error(ErrorKind::Validation, source + ": usage increases at rank " + std::to_string(records[i].rank));
  }
}

}  // namespace

std::vector<UsageRecord> parseUsageText(std::istream& in, const std::string& source) {
  std::vector<UsageRecord> records;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string t = trim(line);
    if (t.empty() || t[0] != '|') continue;
    const auto cells = splitCells(t);
    if (cells.empty() || std::all_of(cells.begin(), cells.end(), isRule)) continue;
    if (iequals(cells[0], "rank")) continue;
    if (cells.size() < 3) parseFail(source, lineNo, "expected | rank | species | usage% |");

    std::size_t rank = 0;
    const auto& rc = cells[0];
    auto [rp, rerr] = std::from_chars(rc.data(), rc.data() + rc.size(), rank);
    if (rerr != std::errc{} || rp != rc.data() + rc.size() || rank == 0)
      parseFail(source, lineNo, "rank '" + rc + "' is not a positive integer");

    if (cells[1].empty()) parseFail(source, lineNo, "empty species name");

    std::string pct = cells[2];
    if (!pct.empty() && pct.back() == '%') pct.pop_back();
    pct = trim(pct);
    double value = 0.0;
    auto [pp, perr] = std::from_chars(pct.data(), pct.data() + pct.size(), value);
    if (pct.empty() || perr != std::errc{} || pp != pct.data() + pct.size())
      parseFail(source, lineNo, "usage '" + cells[2] + "' is not a percentage");
    if (!(value >= 0.0 && value <= 100.0)) parseFail(source, lineNo, "usage must lie in [0, 100]%");

    records.push_back({cells[1], value / 100.0, rank});
  }
  checkOrdering(records, source);
  return records;
}

std::vector<UsageRecord> parseUsageJson(const nlohmann::json& doc, const std::string& source) {
  std::vector<UsageRecord> records;
  try {
    if (doc.at("format_version").get<int>() != 1)
      throw Error(ErrorKind::Validation, source + ": unsupported format_version");
    for (const auto& r : doc.at("records")) {
      UsageRecord rec{r.at("species").get<std::string>(), r.at("usage").get<double>(), r.at("rank").get<std::size_t>()};
      if (!(rec.usage >= 0.0 && rec.usage <= 1.0))
        throw Error(ErrorKind::Validation, source + ": usage for '" + rec.species + "' outside [0, 1]");
      records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, source + ": " + e.what());
  }
  checkOrdering(records, source);
  return records;
}

std::vector<UsageRecord> loadUsageFile(const std::filesystem::path& path) {
  if (path.extension() == ".json") return parseUsageJson(readJsonFile(path), path.string());
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return parseUsageText(in, path.string());
}

void emitUsageText(std::ostream& os, const std::vector<UsageRecord>& records) {
  os << "| Rank | Species | Usage % |\n";
  os << "| ---- | ------- | ------- |\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.5f", r.usage * 100.0);
    os << "| " << r.rank << " | " << r.species << " | " << buf << "% |\n";
  }
}

nlohmann::json emitUsageJson(const std::vector<UsageRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back({{"rank", r.rank}, {"species", r.species}, {"usage", r.usage}});
  return {{"format_version", 1}, {"records", std::move(arr)}};
}

std::vector<UsageRecord> averageMonths(const std::vector<std::vector<UsageRecord>>& months) {
  if (months.empty()) throw Error(ErrorKind::InvalidArgument, "no months to average");
  std::map<std::string, double> sums;
  for (const auto& month : months) {
    std::set<std::string> seen;
    for (const auto& r : month) {
      if (!seen.insert(r.species).second)
        throw Error(ErrorKind::Validation, "species '" + r.species + "' listed twice in one month");
      sums[r.species] += r.usage;
    }
  }
  std::vector<UsageRecord> out;
  out.reserve(sums.size());
  for (const auto& [species, total] : sums) out.push_back({species, total / static_cast<double>(months.size()), 0});
  std::stable_sort(out.begin(), out.end(), [](const UsageRecord& a, const UsageRecord& b) {
    if (a.usage != b.usage) return a.usage > b.usage;
    return a.species < b.species;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

UsageStats toInitialStats(const std::vector<UsageRecord>& records, std::uint64_t nominalBattles, const Roster& roster,
                          UnknownSpecies policy, std::vector<std::string>* warnings) {
  if (records.empty()) throw Error(ErrorKind::InvalidArgument, "no usage records");
  if (nominalBattles == 0) throw Error(ErrorKind::InvalidArgument, "nominal battle count must be positive");
  UsageStats stats(roster.size());
  stats.setBattles(nominalBattles);
  for (const auto& r : records) {
    auto idx = roster.indexOf(r.species);
    if (!idx) {
      if (policy == UnknownSpecies::Fail)
        throw Error(ErrorKind::NotFound, "usage data names unknown species '" + r.species + "'");
      if (warnings) warnings->push_back("skipping unknown species '" + r.species + "'");
      continue;
    }
    const double picks = std::round(r.usage * 2.0 * static_cast<double>(nominalBattles));
    stats.setPicks(*idx, static_cast<std::uint64_t>(picks));
  }
  return stats;
}

MetaSnapshot snapshotFromUsage(const std::vector<UsageRecord>& records, std::size_t metaSize) {
  MetaSnapshot snap;
  snap.metaSize = metaSize;
  for (const auto& r : records) snap.ranking.push_back({r.species, r.usage, 0.0});
  return snap;
}

}  // namespace metadisc
