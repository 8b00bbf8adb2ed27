#pragma once

// No-knowledge stage: weight every starting deal and play the strategy table
// to get the overall win/tie/loss probabilities and expected payout.

#include <vector>

#include "onehit/cards.hpp"
#include "onehit/stage1.hpp"
#include "onehit/strategy.hpp"

namespace onehit {

struct DealCell {
  HandState player;
  HandState dealer;
  Rational probability;
};

// Joint distribution of starting hand values (naturals included) from a
// fresh deck; probabilities sum to exactly 1.
std::vector<DealCell> deal_distribution(DeckModel model);

struct OverallResult {
  Rational win;
  Rational tie;
  Rational loss;
  Rational ev;

  friend bool operator==(const OverallResult&, const OverallResult&) = default;
};

// Throws std::invalid_argument when the table was built for a different
// visibility, deck model, dealer rule or peek setting. The payout schedule
// does not influence strategy, so it is taken from `config`.
OverallResult overall_metrics(const VariantConfig& config, const StrategyTable& table);

// Builds the table and evaluates it.
OverallResult solve(const VariantConfig& config);

struct RuleSweepEntry {
  DealerPolicy policy;
  OverallResult result;
};

// Overall results for S15..H18, always-hit and always-stand, re-optimizing
// the strategy under each rule.
std::vector<RuleSweepEntry> dealer_rule_sweep(Visibility visibility, DeckModel deck, const PayoutSchedule& payout,
                                              bool peek_on_natural = true);

}  // namespace onehit
