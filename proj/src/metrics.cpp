#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include <boost/math/distributions/students_t.hpp>

#include "error.hpp"

namespace metadisc {

double overlap(const MetaSnapshot& b, const MetaSnapshot& bPrime) {
  if (b.metaSize != bPrime.metaSize)
    throw Error(ErrorKind::InvalidArgument, "overlap needs equal meta sizes (" + std::to_string(b.metaSize) +
                                                " vs " + std::to_string(bPrime.metaSize) + ")");
  const auto setB = b.metaSet();
  const auto setP = bPrime.metaSet();
  if (setB.empty() || setP.empty()) throw Error(ErrorKind::InvalidArgument, "overlap of an empty meta set");
  if (setB.size() != b.metaSize || setP.size() != b.metaSize)
    throw Error(ErrorKind::InvalidArgument, "ranking shorter than meta size");
  const std::set<std::string> lhs(setB.begin(), setB.end());
  std::size_t shared = 0;
  for (const auto& s : setP) shared += lhs.count(s);
  return static_cast<double>(shared) / static_cast<double>(b.metaSize);
}

double editDistance(const MetaSnapshot& a, const MetaSnapshot& x) {
  std::unordered_map<std::string, std::size_t> rankX;
  for (std::size_t i = 0; i < x.ranking.size(); ++i) rankX.emplace(x.ranking[i].species, i + 1);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.ranking.size(); ++i) {
    auto it = rankX.find(a.ranking[i].species);
    if (it == rankX.end()) continue;
    sum += std::abs(static_cast<double>(i + 1) - static_cast<double>(it->second));
    ++n;
  }
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "edit distance: rankings share no species");
  return sum / static_cast<double>(n);
}

double editDistanceDelta(const MetaSnapshot& a, const MetaSnapshot& b, const MetaSnapshot& bPrime) {
  return std::abs(editDistance(a, b) - editDistance(a, bPrime));
}

std::vector<double> averageRanks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

bool allTied(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

double tApproxPValue(double rho, std::size_t n) {
  if (n <= 2) return 1.0;
  if (std::abs(rho) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(df / (1.0 - rho * rho));
  const boost::math::students_t dist(df);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double exactPermutationPValue(std::span<const double> rx, std::span<const double> ry, double rho) {
  std::vector<double> perm(ry.begin(), ry.end());
  std::sort(perm.begin(), perm.end());
  const double threshold = std::abs(rho) - 1e-12;
  std::size_t extreme = 0, total = 0;
  do {
    ++total;
    if (std::abs(pearson(rx, perm)) >= threshold) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  // With tied ranks next_permutation visits each distinct ordering once; every
  // distinct ordering stands for the same number of index permutations, so the
  // ratio equals the one over all n! permutations.
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

CorrelationResult spearman(std::span<const double> x, std::span<const double> y, PValueMethod method) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "spearman: inputs differ in length");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "spearman: need at least two pairs");
  if (allTied(x) || allTied(y)) throw Error(ErrorKind::InvalidArgument, "spearman: rho undefined for all-tied input");
  const auto rx = averageRanks(x);
  const auto ry = averageRanks(y);
  CorrelationResult r;
  r.n = x.size();
  r.rho = pearson(rx, ry);
  if (method == PValueMethod::ExactPermutation) {
    if (r.n > kMaxExactPermutationN)
      throw Error(ErrorKind::InvalidArgument, "spearman: exact permutation p-value limited to n <= 10");
    r.pValue = exactPermutationPValue(rx, ry, r.rho);
  } else {
    r.pValue = tApproxPValue(r.rho, r.n);
  }
  return r;
}

RankShiftPairs rankShifts(const MetaSnapshot& a, const MetaSnapshot& b, const MetaSnapshot& bPrime) {
  RankShiftPairs out;
  for (const auto& s : a.metaSet()) {
    const auto ra = a.rankOf(s);
    const auto rb = b.rankOf(s);
    const auto rp = bPrime.rankOf(s);
    if (!ra || !rb || !rp) continue;
    out.species.push_back(s);
    out.truthShift.push_back(static_cast<double>(*rb) - static_cast<double>(*ra));
    out.discoveredShift.push_back(static_cast<double>(*rp) - static_cast<double>(*ra));
  }
  return out;
}

MetaSnapshot naiveBaseline(const MetaSnapshot& a, const std::string& banned) {
  MetaSnapshot out;
  out.metaSize = a.metaSize;
  bool found = false;
  for (const auto& e : a.ranking) {
    if (e.species == banned) {
      found = true;
      continue;
    }
    out.ranking.push_back(e);
  }
  if (!found) throw Error(ErrorKind::NotFound, "naive baseline: '" + banned + "' is not in the ranking");
  return out;
}

TierReport tierCapture(const MetaSnapshot& bPrime, const std::map<std::string, std::string>& tierMap,
                       std::span<const std::string> tiers) {
  for (const auto& e : bPrime.ranking)
    if (!tierMap.count(e.species))
      throw Error(ErrorKind::NotFound, "tier capture: '" + e.species + "' has no tier label");
  const auto metaSet = bPrime.metaSet();
  if (metaSet.empty()) throw Error(ErrorKind::InvalidArgument, "tier capture: empty meta set");

  TierReport report;
  report.tiers.assign(tiers.begin(), tiers.end());
  report.tiers.push_back(kBelowTiers);
  const std::size_t below = tiers.size();
  auto bucketOf = [&](const std::string& tier) {
    auto it = std::find(tiers.begin(), tiers.end(), tier);
    return it == tiers.end() ? below : static_cast<std::size_t>(it - tiers.begin());
  };

  std::vector<std::size_t> tierSize(tiers.size() + 1, 0), inMeta(tiers.size() + 1, 0);
  for (const auto& [species, tier] : tierMap) ++tierSize[bucketOf(tier)];
  for (const auto& s : metaSet) ++inMeta[bucketOf(tierMap.at(s))];

  for (std::size_t t = 0; t <= tiers.size(); ++t) {
    const double cap =
        tierSize[t] == 0 ? 0.0 : static_cast<double>(inMeta[t]) / static_cast<double>(tierSize[t]);
    report.capture.push_back(cap);
    report.composition.push_back(static_cast<double>(inMeta[t]) / static_cast<double>(metaSet.size()));
  }
  return report;
}

}  // namespace metadisc
