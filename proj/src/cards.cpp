#include "onehit/cards.hpp"

#include <numeric>

namespace onehit {

std::string CardValue::label() const { return is_ace() ? "A" : std::to_string(value_); }

CardValue CardValue::parse(const std::string& text) {
  if (text == "A" || text == "a" || text == "11") return kAce;
  if (text == "J" || text == "Q" || text == "K" || text == "T") return kTen;
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return CardValue(v);
  } catch (const std::logic_error&) {
  }
  throw std::invalid_argument("unknown card value '" + text + "'");
}

std::string HandState::key() const {
  if (natural) return "natural";
  return (soft ? "soft" : "hard") + std::to_string(total);
}

std::string HandState::label() const {
  if (natural) return "Natural";
  return (soft ? "Soft " : "Hard ") + std::to_string(total);
}

HandState HandState::parse(const std::string& text) {
  if (text == "natural") return kNatural;
  for (const auto& [prefix, is_soft] : {std::pair{"hard", false}, std::pair{"soft", true}}) {
    const std::string p(prefix);
    if (text.rfind(p, 0) == 0) {
      std::size_t used = 0;
      const std::string rest = text.substr(p.size());
      int total = 0;
      try {
        total = std::stoi(rest, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != rest.size()) break;
      const bool ok = is_soft ? (total >= 12 && total <= 21) : (total >= 4 && total <= 21);
      if (!ok) throw std::invalid_argument("hand total out of range: '" + text + "'");
      return {total, is_soft, false};
    }
  }
  throw std::invalid_argument("cannot parse hand state '" + text + "'");
}

std::vector<HandState> two_card_states() {
  std::vector<HandState> out;
  for (int t = 4; t <= 20; ++t) out.push_back(hard(t));
  for (int t = 12; t <= 20; ++t) out.push_back(soft(t));
  return out;
}

LayoutCategory HandLayout::category() const {
  if (first_.is_ten() && second_.is_ten()) return LayoutCategory::BothTen;
  if (second_.is_ten()) return LayoutCategory::DistinctOneTen;
  return is_pair() ? LayoutCategory::PairNoTen : LayoutCategory::DistinctNoTen;
}

std::size_t HandLayout::index() const {
  const std::size_t a = first_.index();
  const std::size_t b = second_.index();
  return a * 10 - a * (a - 1) / 2 + (b - a);
}

std::string HandLayout::label() const { return "(" + first_.label() + "," + second_.label() + ")"; }

const std::vector<HandLayout>& all_layouts() {
  static const std::vector<HandLayout> layouts = [] {
    std::vector<HandLayout> v;
    for (int a = 1; a <= 10; ++a)
      for (int b = a; b <= 10; ++b) v.emplace_back(a, b);
    return v;
  }();
  return layouts;
}

HandState evaluate_layout(const HandLayout& layout) {
  const int a = layout.first().value();
  const int b = layout.second().value();
  if (a == 1 && b == 10) return kNatural;
  if (a == 1) return soft(11 + b);  // (A,A) is soft 12
  return hard(a + b);
}

std::optional<HandState> add_card(const HandState& hand, CardValue card) {
  int total = hand.total + card.value();
  bool is_soft = hand.soft;
  if (card.is_ace() && !is_soft && total + 10 <= 21) {
    total += 10;
    is_soft = true;
  }
  if (total > 21 && is_soft) {
    total -= 10;
    is_soft = false;
  }
  if (total > 21) return std::nullopt;
  return HandState{total, is_soft, false};
}

DeckModel DeckModel::finite(int decks) {
  if (decks < 1) throw std::invalid_argument("number of decks must be positive");
  return DeckModel(decks);
}

std::string DeckModel::label() const { return is_finite() ? std::to_string(decks_) : "inf"; }

DeckModel DeckModel::parse(const std::string& text) {
  if (text == "inf" || text == "replacement" || text == "with-replacement") return with_replacement();
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("cannot parse deck count '" + text + "'");
  return finite(n);
}

DeckState DeckState::fresh(DeckModel model) {
  DeckState d;
  d.model_ = model;
  const std::int64_t n = model.is_finite() ? model.decks() : 1;
  for (std::size_t i = 0; i < 9; ++i) d.counts_[i] = 4 * n;
  d.counts_[9] = 16 * n;
  return d;
}

std::int64_t DeckState::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

std::array<std::int64_t, 10> DeckState::weights() const {
  if (model_.is_finite()) return counts_;
  return {4, 4, 4, 4, 4, 4, 4, 4, 4, 16};
}

DeckState DeckState::without(std::span<const CardValue> cards) const {
  DeckState next = *this;
  for (CardValue c : cards) {
    if (next.counts_[c.index()] <= 0)
      throw InfeasibleDeal("no " + c.label() + " left to remove from the deck");
    if (model_.is_finite()) --next.counts_[c.index()];
  }
  return next;
}

DeckState DeckState::without(CardValue card) const { return without(std::span<const CardValue>(&card, 1)); }

DeckState DeckState::without(const HandLayout& a) const {
  const auto cards = a.cards();
  return without(std::span<const CardValue>(cards));
}

DeckState DeckState::without(const HandLayout& a, const HandLayout& b) const { return without(a).without(b); }

std::int64_t DeckState::ordered_pair_count(CardValue a, CardValue b) const {
  const auto w = weights();
  const std::int64_t second = w[b.index()] - ((model_.is_finite() && a == b) ? 1 : 0);
  return w[a.index()] * std::max<std::int64_t>(second, 0);
}

std::int64_t DeckState::permutation_count(const HandLayout& layout) const {
  const std::int64_t n = ordered_pair_count(layout.first(), layout.second());
  return layout.is_pair() ? n : 2 * n;
}

std::vector<std::pair<CardValue, Rational>> draw_distribution(const DeckState& deck,
                                                              std::span<const CardValue> removed) {
  const DeckState rest = deck.without(removed);
  const auto w = rest.weights();
  const std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
  if (total == 0) throw InfeasibleDeal("deck is empty");
  std::vector<std::pair<CardValue, Rational>> out;
  out.reserve(10);
  for (CardValue v : kAllValues) out.emplace_back(v, Rational(w[v.index()], total));
  return out;
}

DealerPolicy DealerPolicy::threshold(int stand_at, bool hit_soft) {
  if (stand_at < 2 || stand_at > 21) throw std::invalid_argument("dealer threshold out of range");
  return {Kind::Threshold, stand_at, hit_soft};
}

std::string DealerPolicy::label() const {
  switch (kind) {
    case Kind::AlwaysHit: return "always-hit";
    case Kind::AlwaysStand: return "always-stand";
    case Kind::Threshold: break;
  }
  return (hit_soft_at_threshold ? "H" : "S") + std::to_string(stand_at);
}

DealerPolicy DealerPolicy::parse(const std::string& text) {
  if (text == "always-hit") return always_hit();
  if (text == "always-stand") return always_stand();
  if (text.size() >= 2 && (text[0] == 'H' || text[0] == 'S' || text[0] == 'h' || text[0] == 's')) {
    std::size_t used = 0;
    int t = 0;
    try {
      t = std::stoi(text.substr(1), &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used > 0 && used + 1 == text.size()) return threshold(t, text[0] == 'H' || text[0] == 'h');
  }
  throw std::invalid_argument("cannot parse dealer policy '" + text + "'");
}

bool dealer_must_hit(const DealerPolicy& policy, const HandState& hand) {
  switch (policy.kind) {
    case DealerPolicy::Kind::AlwaysHit: return true;
    case DealerPolicy::Kind::AlwaysStand: return false;
    case DealerPolicy::Kind::Threshold: break;
  }
  if (hand.total < policy.stand_at) return true;
  return hand.total == policy.stand_at && hand.soft && policy.hit_soft_at_threshold;
}

std::vector<DealerPolicy> sweep_policies() {
  std::vector<DealerPolicy> out;
  for (int t = 15; t <= 18; ++t) {
    out.push_back(DealerPolicy::threshold(t, false));
    out.push_back(DealerPolicy::threshold(t, true));
  }
  out.push_back(DealerPolicy::always_hit());
  out.push_back(DealerPolicy::always_stand());
  return out;
}

std::string PayoutSchedule::label() const {
  if (natural_multiplier == Rational(3, 2)) return "3:2";
  if (natural_multiplier == Rational(6, 5)) return "6:5";
  return natural_multiplier.numerator() + ":" + natural_multiplier.denominator();
}

PayoutSchedule PayoutSchedule::parse(const std::string& text) {
  const auto colon = text.find(':');
  Rational m = colon == std::string::npos
                   ? Rational::parse(text)
                   : Rational::parse(text.substr(0, colon)) / Rational::parse(text.substr(colon + 1));
  if (m <= Rational(1)) throw std::invalid_argument("natural payout multiplier must exceed 1");
  return {m};
}

std::string to_string(Visibility v) {
  switch (v) {
    case Visibility::TwoUp: return "two-up";
    case Visibility::OneUp: return "one-up";
    case Visibility::NoUp: return "no-up";
  }
  return "?";
}

Visibility parse_visibility(const std::string& text) {
  if (text == "two-up") return Visibility::TwoUp;
  if (text == "one-up") return Visibility::OneUp;
  if (text == "no-up") return Visibility::NoUp;
  throw std::invalid_argument("unknown visibility '" + text + "'");
}

std::string VariantConfig::label() const {
  return to_string(visibility) + " decks=" + deck.label() + " dealer=" + dealer_policy.label() +
         " payout=" + payout.label() + (peek_on_natural ? "" : " no-peek");
}

}  // namespace onehit
