#pragma once

// Card values, hands, deck states, dealer rules, payouts and the variant
// configuration shared by every stage of the solver.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "onehit/rational.hpp"

namespace onehit {

// Raised when a deal or removal asks for more cards of a value than the
// deck holds.
class InfeasibleDeal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 1 = ace, 10 = the merged ten-class (ten, jack, queen, king).
class CardValue {
 public:
  constexpr CardValue() = default;
  constexpr explicit CardValue(int value) : value_(value) {
    if (value < 1 || value > 10) throw std::invalid_argument("card value must be in [1,10]");
  }
  constexpr int value() const { return value_; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }
  constexpr bool is_ace() const { return value_ == 1; }
  constexpr bool is_ten() const { return value_ == 10; }
  friend constexpr auto operator<=>(CardValue, CardValue) = default;

  // "A", "2".."9", "10"
  std::string label() const;
  static CardValue parse(const std::string& text);

 private:
  int value_ = 1;
};

inline constexpr CardValue kAce{1};
inline constexpr CardValue kTen{10};

inline constexpr std::array<CardValue, 10> kAllValues{
    CardValue{1}, CardValue{2}, CardValue{3}, CardValue{4}, CardValue{5},
    CardValue{6}, CardValue{7}, CardValue{8}, CardValue{9}, CardValue{10}};

struct HandState {
  int total = 0;
  bool soft = false;
  bool natural = false;

  friend constexpr auto operator<=>(const HandState&, const HandState&) = default;

  // "hard14", "soft13", "natural"
  std::string key() const;
  // "Hard 14", "Soft 13", "Natural"
  std::string label() const;
  static HandState parse(const std::string& text);
};

constexpr HandState hard(int total) { return {total, false, false}; }
constexpr HandState soft(int total) { return {total, true, false}; }
inline constexpr HandState kNatural{21, true, true};

// Decision rows: hard 4..20 then soft 12..20.
std::vector<HandState> two_card_states();

enum class LayoutCategory { DistinctNoTen, PairNoTen, DistinctOneTen, BothTen };

// Unordered two-card layout, stored with first <= second.
class HandLayout {
 public:
  HandLayout(CardValue a, CardValue b) : first_(std::min(a, b)), second_(std::max(a, b)) {}
  HandLayout(int a, int b) : HandLayout(CardValue(a), CardValue(b)) {}

  CardValue first() const { return first_; }
  CardValue second() const { return second_; }
  bool is_pair() const { return first_ == second_; }
  LayoutCategory category() const;
  std::array<CardValue, 2> cards() const { return {first_, second_}; }
  // Dense index in [0, 55).
  std::size_t index() const;
  std::string label() const;  // "(A,2)"

  friend auto operator<=>(const HandLayout&, const HandLayout&) = default;

 private:
  CardValue first_;
  CardValue second_;
};

// The 55 distinct layouts in index order.
const std::vector<HandLayout>& all_layouts();

HandState evaluate_layout(const HandLayout& layout);

// Ace demotion is applied before declaring a bust; nullopt means bust.
std::optional<HandState> add_card(const HandState& hand, CardValue card);

class DeckModel {
 public:
  static DeckModel finite(int decks);
  static DeckModel with_replacement() { return DeckModel(0); }

  bool is_finite() const { return decks_ > 0; }
  // Number of decks; 0 for the with-replacement model.
  int decks() const { return decks_; }
  std::string label() const;  // "1", "6", "inf"
  static DeckModel parse(const std::string& text);

  friend bool operator==(const DeckModel&, const DeckModel&) = default;

 private:
  explicit DeckModel(int decks) : decks_(decks) {}
  int decks_ = 1;
};

// Remaining cards per value. Removal is functional; in with-replacement mode
// removals are recorded but never change the draw weights.
class DeckState {
 public:
  static DeckState fresh(DeckModel model);

  DeckModel model() const { return model_; }
  std::int64_t count(CardValue v) const { return counts_[v.index()]; }
  std::int64_t total() const;

  // Relative draw weights; finite mode uses remaining counts, replacement
  // mode always {4,...,4,16}.
  std::array<std::int64_t, 10> weights() const;

  DeckState without(std::span<const CardValue> cards) const;
  DeckState without(CardValue card) const;
  DeckState without(const HandLayout& a) const;
  DeckState without(const HandLayout& a, const HandLayout& b) const;

  // Number of ordered ways to draw `a` then `b`.
  std::int64_t ordered_pair_count(CardValue a, CardValue b) const;
  // Number of ordered two-card draws producing `layout`.
  std::int64_t permutation_count(const HandLayout& layout) const;

 private:
  DeckModel model_ = DeckModel::finite(1);
  std::array<std::int64_t, 10> counts_{};
};

// Draw distribution after removing `removed` from `deck`. Probabilities sum
// to exactly one. Throws InfeasibleDeal when the removal is impossible.
std::vector<std::pair<CardValue, Rational>> draw_distribution(
    const DeckState& deck, std::span<const CardValue> removed);

struct DealerPolicy {
  enum class Kind { Threshold, AlwaysHit, AlwaysStand };
  Kind kind = Kind::Threshold;
  int stand_at = 17;
  bool hit_soft_at_threshold = true;

  static DealerPolicy threshold(int stand_at, bool hit_soft);
  static DealerPolicy h17() { return threshold(17, true); }
  static DealerPolicy s17() { return threshold(17, false); }
  static DealerPolicy always_hit() { return {Kind::AlwaysHit, 0, false}; }
  static DealerPolicy always_stand() { return {Kind::AlwaysStand, 0, false}; }

  // "H17", "S15", "always-hit", "always-stand"
  std::string label() const;
  static DealerPolicy parse(const std::string& text);

  friend bool operator==(const DealerPolicy&, const DealerPolicy&) = default;
};

bool dealer_must_hit(const DealerPolicy& policy, const HandState& hand);

// S15, H15, S16, H16, S17, H17, S18, H18, always-hit, always-stand
std::vector<DealerPolicy> sweep_policies();

struct PayoutSchedule {
  Rational natural_multiplier{3, 2};

  static PayoutSchedule three_to_two() { return {Rational(3, 2)}; }
  static PayoutSchedule six_to_five() { return {Rational(6, 5)}; }
  std::string label() const;  // "3:2"
  static PayoutSchedule parse(const std::string& text);

  friend bool operator==(const PayoutSchedule&, const PayoutSchedule&) = default;
};

enum class Visibility { TwoUp, OneUp, NoUp };

std::string to_string(Visibility v);  // "two-up", "one-up", "no-up"
Visibility parse_visibility(const std::string& text);

struct VariantConfig {
  Visibility visibility = Visibility::TwoUp;
  DeckModel deck = DeckModel::finite(1);
  DealerPolicy dealer_policy = DealerPolicy::h17();
  PayoutSchedule payout = PayoutSchedule::three_to_two();
  bool peek_on_natural = true;

  std::string label() const;

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
};

}  // namespace onehit
