#pragma once

// Partial-knowledge stage: aggregate complete-knowledge results over every
// layout consistent with what the player can see, and pick hit or stand.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "onehit/cards.hpp"
#include "onehit/stage1.hpp"

namespace onehit {

class UnreachableObservable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DealerInfo {
  enum class Kind { BothCards, UpCard, Nothing };
  Kind kind = Kind::Nothing;
  HandState hand{};  // BothCards
  CardValue up{};    // UpCard

  static DealerInfo both(HandState h) { return {Kind::BothCards, h, CardValue{}}; }
  static DealerInfo up_card(CardValue c) { return {Kind::UpCard, HandState{}, c}; }
  static DealerInfo nothing() { return {}; }

  // "hard14", "up11" (ace reported as 11), "none"
  std::string key() const;
  // Column heading: "14", "11", "-"
  std::string column_label() const;

  friend bool operator==(const DealerInfo& a, const DealerInfo& b) { return a.key() == b.key(); }
  friend bool operator<(const DealerInfo& a, const DealerInfo& b) { return a.key() < b.key(); }
};

struct ObservableState {
  HandState player;
  DealerInfo dealer;

  std::string key() const { return player.key() + "|" + dealer.key(); }
  friend bool operator==(const ObservableState& a, const ObservableState& b) { return a.key() == b.key(); }
};

// Canonical row-major ordering of every observable state of a variant.
std::vector<ObservableState> observable_states(Visibility visibility);

struct LayoutCount {
  HandLayout layout;
  std::int64_t permutations;
};

// Layouts that evaluate to `hand`, with their ordered permutation counts in
// a fresh deck of the given model.
std::vector<LayoutCount> enumerate_layouts(const HandState& hand, DeckModel model);

struct LayoutWeight {
  HandLayout player_layout;
  HandLayout dealer_layout;
  Rational weight;
};

struct WeightedLayouts {
  std::vector<LayoutWeight> weights;  // normalized, sums to 1
  Rational mass;                      // unconditional probability of the weighted deal space
};

// Throws UnreachableObservable when no deal is consistent with the observable.
WeightedLayouts weigh_layouts(const ObservableState& observable, DeckModel model, bool peek_on_natural);
std::vector<LayoutWeight> layout_weights(const ObservableState& observable, DeckModel model,
                                         bool peek_on_natural = true);

enum class Decision { Hit, Stand };
char to_char(Decision d);

// Optimal play when the visible layouts are known exactly (dealer layout
// only in the two-up variant). `decision` is empty on an exact tie.
struct LayoutDecision {
  HandLayout player_layout;
  std::optional<HandLayout> dealer_layout;
  Rational weight;
  Rational ev_hit;
  Rational ev_stand;
  std::optional<Decision> decision;
};

struct CellResult {
  ObservableState observable;
  Rational ev_hit;
  Rational ev_stand;
  Decision decision = Decision::Stand;
  bool asterisk = false;
  bool exact_tie = false;  // ev_hit == ev_stand; resolved as Hit
  OutcomeTriple hit;
  OutcomeTriple stand;
  Rational mass;
  std::vector<LayoutDecision> layouts;

  const OutcomeTriple& chosen() const { return decision == Decision::Hit ? hit : stand; }
  Rational chosen_ev() const { return decision == Decision::Hit ? ev_hit : ev_stand; }
  // "H", "S", "H*", "S*"
  std::string mark() const;
};

CellResult cell_evaluate(const ObservableState& observable, const VariantConfig& config);
CellResult cell_evaluate(const ObservableState& observable, const VariantConfig& config, const Stage1Table& stage1);

class StrategyTable {
 public:
  StrategyTable(VariantConfig config, std::vector<CellResult> cells);

  const VariantConfig& config() const { return config_; }
  const std::vector<CellResult>& cells() const { return cells_; }
  const CellResult* find(const ObservableState& observable) const;
  const CellResult& at(const ObservableState& observable) const;
  Decision decision(const ObservableState& observable) const { return at(observable).decision; }

  // Observables whose decisions differ between the two tables.
  std::vector<ObservableState> decision_diff(const StrategyTable& other) const;
  bool same_decisions(const StrategyTable& other) const { return decision_diff(other).empty(); }
  std::size_t asterisk_count() const;

 private:
  VariantConfig config_;
  std::vector<CellResult> cells_;
  std::map<std::string, std::size_t> index_;
};

StrategyTable build_strategy_table(const VariantConfig& config);
StrategyTable build_strategy_table(const VariantConfig& config, const Stage1Table& stage1);

}  // namespace onehit
