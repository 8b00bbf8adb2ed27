#pragma once

// Seeded Monte Carlo playout of single hands from a fresh shoe, used as an
// independent statistical check of the exact engine.

#include <cstdint>
#include <optional>
#include <string>

#include "onehit/strategy.hpp"

namespace onehit {

struct SimOptions {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  // Trials are split into this many contiguous chunks, each with its own
  // generator seeded from splitmix64(seed + chunk). Results depend on the
  // chunk count but never on the thread count.
  int chunks = 16;
  int threads = 0;  // 0 = hardware concurrency
  // Only count rounds whose deal lands in this observable (rejection).
  std::optional<ObservableState> condition;
};

struct SimReport {
  std::int64_t trials = 0;
  std::int64_t wins = 0;
  std::int64_t ties = 0;
  std::int64_t losses = 0;
  std::int64_t rejected = 0;  // conditioned runs only
  double mean_payout = 0;
  double std_error = 0;
  std::uint64_t seed = 0;
  int chunks = 0;
  std::string algorithm;

  std::string to_json() const;
  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// Throws std::invalid_argument when trials < 1, chunks < 1, or the table was
// built for another variant.
SimReport simulate(const VariantConfig& config, const StrategyTable& table, const SimOptions& options);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace onehit
