#pragma once

// Complete-knowledge stage: both starting layouts are known, so every
// outcome follows from the next one or two draws.

#include <array>
#include <optional>
#include <vector>

#include "onehit/cards.hpp"
#include "onehit/rational.hpp"

namespace onehit {

struct OutcomeTriple {
  Rational win;
  Rational tie;
  Rational loss;

  Rational sum() const { return win + tie + loss; }
  // Expected payout of a unit bet (naturals excluded).
  Rational ev() const { return win - loss; }

  static OutcomeTriple certain_win() { return {Rational(1), Rational(0), Rational(0)}; }
  static OutcomeTriple certain_tie() { return {Rational(0), Rational(1), Rational(0)}; }
  static OutcomeTriple certain_loss() { return {Rational(0), Rational(0), Rational(1)}; }

  OutcomeTriple& add_scaled(const OutcomeTriple& other, const Rational& weight);

  friend bool operator==(const OutcomeTriple&, const OutcomeTriple&) = default;
};

struct Stage1Result {
  OutcomeTriple stand;
  OutcomeTriple hit;
  Rational ev_stand;
  Rational ev_hit;

  friend bool operator==(const Stage1Result&, const Stage1Result&) = default;
};

// `deck` is the deck after the four starting cards were dealt. Neither hand
// may be a natural.
OutcomeTriple resolve_stand(const HandState& player, const HandLayout& dealer_layout, const DeckState& deck,
                            const DealerPolicy& policy);
OutcomeTriple resolve_hit(const HandLayout& player_layout, const HandLayout& dealer_layout, const DeckState& deck,
                          const DealerPolicy& policy);
Stage1Result stage1_evs(const HandLayout& player_layout, const HandLayout& dealer_layout, const DeckState& deck,
                        const DealerPolicy& policy);

// Hit branch split by the value of the player's hit card. Each entry is the
// joint probability of that hit card and the outcome.
std::array<OutcomeTriple, 10> resolve_hit_by_card(const HandLayout& player_layout, const HandLayout& dealer_layout,
                                                  const DeckState& deck, const DealerPolicy& policy);

// Closed-form description of a stage-1 result as a function of the number of
// decks. Counts are per rank (13 ranks; the ten-class spans four of them).
struct RankCounts {
  int win = 0;   // ranks whose draw leads to a player win
  int tie = 0;
  int loss = 0;
  int removed_win = 0;  // already-dealt cards of those ranks
  int removed_tie = 0;
  int removed_loss = 0;
};

struct HitCoefficients {
  CardValue card;
  int rank_multiplicity = 1;  // 4 for the ten-class
  int removed_of_value = 0;   // cards of this value among the four dealt
  RankCounts after_hit;       // dealer outcomes once this card is in the player's hand
};

struct Stage1Coefficients {
  RankCounts stand;
  std::vector<HitCoefficients> hit;

  // A, B, C: rank-weighted sums of the per-hit-card win/tie/loss rank counts.
  int hit_win_total() const;
  int hit_tie_total() const;
  int hit_loss_total() const;
};

Stage1Coefficients extract_stage1_coefficients(const HandLayout& player_layout, const HandLayout& dealer_layout,
                                               const DealerPolicy& policy);

// `decks` = nullopt evaluates the with-replacement limit. Throws on decks < 1.
Stage1Result evaluate_coefficients_at(const Stage1Coefficients& coeffs, std::optional<int> decks);

// Memoized stage-1 results for every (player layout, dealer layout) pair
// that excludes naturals, for one deck model and dealer rule.
class Stage1Table {
 public:
  Stage1Table(DeckModel model, DealerPolicy policy);

  DeckModel model() const { return model_; }
  const DealerPolicy& policy() const { return policy_; }
  // nullptr for pairs involving a natural or an infeasible deal.
  const Stage1Result* find(const HandLayout& player, const HandLayout& dealer) const;
  const Stage1Result& at(const HandLayout& player, const HandLayout& dealer) const;

 private:
  DeckModel model_;
  DealerPolicy policy_;
  std::vector<std::optional<Stage1Result>> results_;
};

}  // namespace onehit
