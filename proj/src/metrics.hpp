#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "discovery.hpp"

namespace metadisc {

// |metaSet(b) ∩ metaSet(bPrime)| / metaSize. Throws on a meta-size mismatch
// or an empty meta set.
double overlap(const MetaSnapshot& b, const MetaSnapshot& bPrime);

// Mean |rank_a(x) - rank_x(x)| over species present in both full rankings
// (1-based). Throws Error(InvalidArgument) when nothing is shared.
double editDistance(const MetaSnapshot& a, const MetaSnapshot& x);

// |editDistance(a, b) - editDistance(a, bPrime)|.
double editDistanceDelta(const MetaSnapshot& a, const MetaSnapshot& b, const MetaSnapshot& bPrime);

enum class PValueMethod { TApproximation, ExactPermutation };

struct CorrelationResult {
  double rho = 0.0;
  double pValue = 1.0;
  std::size_t n = 0;
};

inline constexpr std::size_t kMaxExactPermutationN = 10;

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> averageRanks(std::span<const double> values);

// Pearson correlation of the average ranks. Two-sided p-value from the
// t distribution with n-2 degrees of freedom, or by enumerating every
// permutation of `y` (n <= 10). Throws Error(InvalidArgument) for n < 2,
// mismatched lengths, or an all-tied input (rho undefined).
CorrelationResult spearman(std::span<const double> x, std::span<const double> y,
                           PValueMethod method = PValueMethod::TApproximation);

// Per-species signed rank shifts a->b and a->bPrime over species in metaSet(a)
// that appear in both other rankings.
struct RankShiftPairs {
  std::vector<std::string> species;
  std::vector<double> truthShift;
  std::vector<double> discoveredShift;
};

RankShiftPairs rankShifts(const MetaSnapshot& a, const MetaSnapshot& b, const MetaSnapshot& bPrime);

// The ranking with `banned` removed; entries below it move up one.
// Throws Error(NotFound) if the species is not ranked.
MetaSnapshot naiveBaseline(const MetaSnapshot& a, const std::string& banned);

inline constexpr const char* kBelowTiers = "below";

struct TierReport {
  std::vector<std::string> tiers;  // declared order, then kBelowTiers
  std::vector<double> capture;     // share of each tier inside the meta set
  std::vector<double> composition; // share of the meta set from each tier
};

// Every ranked species must appear in tierMap (Error(NotFound) otherwise);
// species outside the declared tiers fall into the "below" bucket.
TierReport tierCapture(const MetaSnapshot& bPrime, const std::map<std::string, std::string>& tierMap,
                       std::span<const std::string> tiers);

}  // namespace metadisc
