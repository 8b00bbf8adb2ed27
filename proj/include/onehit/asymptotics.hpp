#pragma once

// Finite-deck results as the number of decks grows, measured against the
// with-replacement model evaluated directly.

#include <optional>
#include <string>
#include <vector>

#include "onehit/overall.hpp"
#include "onehit/strategy.hpp"

namespace onehit {

struct ConvergenceSample {
  int decks = 1;
  OverallResult value;
  // |value - limit| per metric
  Rational gap_win, gap_tie, gap_loss, gap_ev;
  bool strategy_matches_limit = false;

  Rational max_gap() const;
};

struct ConvergenceReport {
  VariantConfig base;  // deck field ignored
  std::vector<ConvergenceSample> samples;
  OverallResult limit;
  Rational max_n_gap;  // largest metric gap at the largest swept n
  // First swept n from which every later sample's strategy equals the limit's.
  std::optional<int> strategy_stabilized_at;

  // gap(2k) <= ratio * gap(k) for every k >= from_decks with 2k also swept.
  // Checks all four metrics; a zero gap at k requires a zero gap at 2k.
  bool doubling_ratio_holds(double ratio = 0.6, int from_decks = 8) const;
  std::string to_json() const;
};

// Rebuilds the strategy at every n. Throws std::invalid_argument when
// `decks` is empty, unsorted or holds a value below 1.
ConvergenceReport sweep_decks(const VariantConfig& base, const std::vector<int>& decks);

struct LimitCheck {
  std::string quantity;
  bool passed = false;
  std::string detail;
};

struct LimitReport {
  std::vector<LimitCheck> checks;
  bool passed() const;
  std::size_t failures() const;
};

// Stage-1 triples, stage-2 layout weights and stage-3 deal cells: the gap to
// the replacement value must not grow along `decks`, and stage-1 closed forms
// must equal enumeration at each n. Empty samples mean "everything".
LimitReport verify_limit_properties(const std::vector<std::pair<HandLayout, HandLayout>>& layout_pairs,
                                      const std::vector<ObservableState>& observables, const std::vector<int>& decks,
                                      const DealerPolicy& policy = DealerPolicy::h17());

}  // namespace onehit
