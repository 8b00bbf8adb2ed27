#include "onehit/stage1.hpp"

#include <numeric>
#include <stdexcept>

namespace onehit {
namespace {

enum Outcome : std::size_t { kWin = 0, kTie = 1, kLoss = 2 };

using Counts = std::array<std::int64_t, 3>;

Outcome compare_totals(int player, int dealer) {
  if (player > dealer) return kWin;
  if (player < dealer) return kLoss;
  return kTie;
}

// Outcome once the dealer has drawn `card` (or nullopt when standing pat).
Outcome settle(const HandState& player, const HandState& dealer, std::optional<CardValue> card) {
  if (!card) return compare_totals(player.total, dealer.total);
  const auto after = add_card(dealer, *card);
  if (!after) return kWin;
  return compare_totals(player.total, after->total);
}

std::int64_t sum(const std::array<std::int64_t, 10>& w) { return std::accumulate(w.begin(), w.end(), std::int64_t{0}); }

// Outcome numerators over the total draw weight of `deck`.
Counts stand_counts(const HandState& player, const HandState& dealer, const DeckState& deck,
                    const DealerPolicy& policy) {
  Counts out{};
  const auto w = deck.weights();
  if (!dealer_must_hit(policy, dealer)) {
    out[settle(player, dealer, std::nullopt)] = sum(w);
    return out;
  }
  for (CardValue d : kAllValues) {
    if (w[d.index()] == 0) continue;
    out[settle(player, dealer, d)] += w[d.index()];
  }
  return out;
}

OutcomeTriple to_triple(const Counts& c, std::int64_t den) {
  return {Rational(c[kWin], den), Rational(c[kTie], den), Rational(c[kLoss], den)};
}

void require_playable(const HandState& player, const HandState& dealer) {
  if (player.natural || dealer.natural)
    throw std::invalid_argument("stage-1 resolution requires non-natural starting hands");
}

RankCounts rank_counts(const HandState& player, const HandState& dealer, std::span<const CardValue> removed,
                       const DealerPolicy& policy) {
  RankCounts rc;
  auto bump = [](RankCounts& r, Outcome o, int ranks, int cards) {
    switch (o) {
      case kWin: r.win += ranks; r.removed_win += cards; break;
      case kTie: r.tie += ranks; r.removed_tie += cards; break;
      case kLoss: r.loss += ranks; r.removed_loss += cards; break;
    }
  };
  const int removed_count = static_cast<int>(removed.size());
  if (!dealer_must_hit(policy, dealer)) {
    bump(rc, settle(player, dealer, std::nullopt), 13, removed_count);
    return rc;
  }
  for (CardValue d : kAllValues) bump(rc, settle(player, dealer, d), d.is_ten() ? 4 : 1, 0);
  for (CardValue c : removed) bump(rc, settle(player, dealer, c), 0, 1);
  return rc;
}

}  // namespace

OutcomeTriple& OutcomeTriple::add_scaled(const OutcomeTriple& other, const Rational& weight) {
  win += other.win * weight;
  tie += other.tie * weight;
  loss += other.loss * weight;
  return *this;
}

OutcomeTriple resolve_stand(const HandState& player, const HandLayout& dealer_layout, const DeckState& deck,
                            const DealerPolicy& policy) {
  const HandState dealer = evaluate_layout(dealer_layout);
  require_playable(player, dealer);
  const std::int64_t total = sum(deck.weights());
  if (total == 0) throw InfeasibleDeal("deck is empty");
  return to_triple(stand_counts(player, dealer, deck, policy), total);
}

std::array<OutcomeTriple, 10> resolve_hit_by_card(const HandLayout& player_layout, const HandLayout& dealer_layout,
                                                  const DeckState& deck, const DealerPolicy& policy) {
  const HandState player = evaluate_layout(player_layout);
  const HandState dealer = evaluate_layout(dealer_layout);
  require_playable(player, dealer);

  const auto w = deck.weights();
  const std::int64_t first = sum(w);
  if (first == 0) throw InfeasibleDeal("deck is empty");
  const std::int64_t second = deck.model().is_finite() ? first - 1 : first;
  if (second <= 0) throw InfeasibleDeal("deck too small for a hit and a dealer draw");

  std::array<OutcomeTriple, 10> out{};
  for (CardValue r : kAllValues) {
    const std::int64_t wr = w[r.index()];
    Counts c{};
    if (wr > 0) {
      const auto after = add_card(player, r);
      if (!after) {
        c[kLoss] = wr * second;
      } else {
        const auto sc = stand_counts(*after, dealer, deck.without(r), policy);
        for (std::size_t k = 0; k < 3; ++k) c[k] = wr * sc[k];
      }
    }
    out[r.index()] = to_triple(c, first * second);
  }
  return out;
}

OutcomeTriple resolve_hit(const HandLayout& player_layout, const HandLayout& dealer_layout, const DeckState& deck,
                          const DealerPolicy& policy) {
  OutcomeTriple total;
  for (const auto& part : resolve_hit_by_card(player_layout, dealer_layout, deck, policy))
    total.add_scaled(part, Rational(1));
  return total;
}

Stage1Result stage1_evs(const HandLayout& player_layout, const HandLayout& dealer_layout, const DeckState& deck,
                        const DealerPolicy& policy) {
  Stage1Result r;
  r.stand = resolve_stand(evaluate_layout(player_layout), dealer_layout, deck, policy);
  r.hit = resolve_hit(player_layout, dealer_layout, deck, policy);
  r.ev_stand = r.stand.ev();
  r.ev_hit = r.hit.ev();
  return r;
}

int Stage1Coefficients::hit_win_total() const {
  int t = 0;
  for (const auto& h : hit) t += h.rank_multiplicity * h.after_hit.win;
  return t;
}
int Stage1Coefficients::hit_tie_total() const {
  int t = 0;
  for (const auto& h : hit) t += h.rank_multiplicity * h.after_hit.tie;
  return t;
}
int Stage1Coefficients::hit_loss_total() const {
  int t = 0;
  for (const auto& h : hit) t += h.rank_multiplicity * h.after_hit.loss;
  return t;
}

Stage1Coefficients extract_stage1_coefficients(const HandLayout& player_layout, const HandLayout& dealer_layout,
                                               const DealerPolicy& policy) {
  const HandState player = evaluate_layout(player_layout);
  const HandState dealer = evaluate_layout(dealer_layout);
  require_playable(player, dealer);
  const std::array<CardValue, 4> dealt{player_layout.first(), player_layout.second(), dealer_layout.first(),
                                       dealer_layout.second()};

  Stage1Coefficients out;
  out.stand = rank_counts(player, dealer, dealt, policy);
  for (CardValue r : kAllValues) {
    HitCoefficients h;
    h.card = r;
    h.rank_multiplicity = r.is_ten() ? 4 : 1;
    for (CardValue c : dealt) h.removed_of_value += (c == r) ? 1 : 0;
    const auto after = add_card(player, r);
    if (!after) {
      h.after_hit.loss = 13;
      h.after_hit.removed_loss = 5;
    } else {
      const std::array<CardValue, 5> removed{dealt[0], dealt[1], dealt[2], dealt[3], r};
      h.after_hit = rank_counts(*after, dealer, removed, policy);
    }
    out.hit.push_back(h);
  }
  return out;
}

Stage1Result evaluate_coefficients_at(const Stage1Coefficients& coeffs, std::optional<int> decks) {
  if (decks && *decks < 1) throw std::invalid_argument("number of decks must be positive");

  Stage1Result r;
  if (!decks) {
    const Rational q(4, 52);
    r.stand = {q * coeffs.stand.win, q * coeffs.stand.tie, q * coeffs.stand.loss};
    for (const auto& h : coeffs.hit) {
      const Rational p_card = q * h.rank_multiplicity;
      r.hit.add_scaled({q * h.after_hit.win, q * h.after_hit.tie, q * h.after_hit.loss}, p_card);
    }
  } else {
    const std::int64_t n4 = 4 * static_cast<std::int64_t>(*decks);
    const std::int64_t after_deal = 13 * n4 - 4;
    const std::int64_t after_hit = 13 * n4 - 5;
    const auto& s = coeffs.stand;
    r.stand = {Rational(s.win * n4 - s.removed_win, after_deal), Rational(s.tie * n4 - s.removed_tie, after_deal),
               Rational(s.loss * n4 - s.removed_loss, after_deal)};
    for (const auto& h : coeffs.hit) {
      const auto& a = h.after_hit;
      const Rational p_card(h.rank_multiplicity * n4 - h.removed_of_value, after_deal);
      r.hit.add_scaled({Rational(a.win * n4 - a.removed_win, after_hit), Rational(a.tie * n4 - a.removed_tie, after_hit),
                        Rational(a.loss * n4 - a.removed_loss, after_hit)},
                       p_card);
    }
  }
  r.ev_stand = r.stand.ev();
  r.ev_hit = r.hit.ev();
  return r;
}

Stage1Table::Stage1Table(DeckModel model, DealerPolicy policy)
    : model_(model), policy_(policy), results_(all_layouts().size() * all_layouts().size()) {
  const DeckState fresh = DeckState::fresh(model);
  for (const auto& p : all_layouts()) {
    if (evaluate_layout(p).natural) continue;
    for (const auto& d : all_layouts()) {
      if (evaluate_layout(d).natural) continue;
      try {
        results_[p.index() * 55 + d.index()] = stage1_evs(p, d, fresh.without(p, d), policy_);
      } catch (const InfeasibleDeal&) {
      }
    }
  }
}

const Stage1Result* Stage1Table::find(const HandLayout& player, const HandLayout& dealer) const {
  const auto& slot = results_[player.index() * 55 + dealer.index()];
  return slot ? &*slot : nullptr;
}

const Stage1Result& Stage1Table::at(const HandLayout& player, const HandLayout& dealer) const {
  const auto* r = find(player, dealer);
  if (!r) throw std::out_of_range("no stage-1 result for " + player.label() + " v " + dealer.label());
  return *r;
}

}  // namespace onehit
