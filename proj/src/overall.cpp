#include "onehit/overall.hpp"

#include <map>
#include <stdexcept>

namespace onehit {

std::vector<DealCell> deal_distribution(DeckModel model) {
  const DeckState fresh = DeckState::fresh(model);
  const mpz_class n = model.is_finite() ? 52 * model.decks() : 52;
  const mpz_class player_den = model.is_finite() ? mpz_class(n * (n - 1)) : mpz_class(n * n);
  const mpz_class dealer_den = model.is_finite() ? mpz_class((n - 2) * (n - 3)) : mpz_class(n * n);

  std::map<std::pair<HandState, HandState>, mpz_class> joint;
  for (const auto& p : all_layouts()) {
    const std::int64_t pp = fresh.permutation_count(p);
    if (pp == 0) continue;
    const DeckState rest = fresh.without(p);
    for (const auto& d : all_layouts()) {
      const std::int64_t dp = rest.permutation_count(d);
      if (dp == 0) continue;
      joint[{evaluate_layout(p), evaluate_layout(d)}] += mpz_class(static_cast<long>(pp)) * mpz_class(static_cast<long>(dp));
    }
  }
  std::vector<DealCell> out;
  out.reserve(joint.size());
  for (const auto& [key, count] : joint)
    out.push_back({key.first, key.second, Rational(mpq_class(count, player_den * dealer_den))});
  return out;
}

OverallResult overall_metrics(const VariantConfig& config, const StrategyTable& table) {
  const VariantConfig& tc = table.config();
  if (tc.visibility != config.visibility || !(tc.deck == config.deck) || !(tc.dealer_policy == config.dealer_policy) ||
      tc.peek_on_natural != config.peek_on_natural)
    throw std::invalid_argument("strategy table was built for a different variant: " + tc.label());

  OverallResult r;
  Rational covered(0);
  for (const auto& cell : table.cells()) {
    const auto& t = cell.chosen();
    r.win += cell.mass * t.win;
    r.tie += cell.mass * t.tie;
    r.loss += cell.mass * t.loss;
    r.ev += cell.mass * cell.chosen_ev();
    covered += cell.mass;
  }

  // Naturals: both push, player-only pays the natural multiplier. Dealer-only
  // naturals lose unless the cells already absorbed them (no peek).
  const bool cells_hold_dealer_naturals = !config.peek_on_natural && config.visibility != Visibility::TwoUp;
  Rational dealer_only(0);
  for (const auto& dc : deal_distribution(config.deck)) {
    if (dc.player.natural && dc.dealer.natural) {
      r.tie += dc.probability;
      covered += dc.probability;
    } else if (dc.player.natural) {
      r.win += dc.probability;
      r.ev += dc.probability * config.payout.natural_multiplier;
      covered += dc.probability;
    } else if (dc.dealer.natural) {
      dealer_only += dc.probability;
    }
  }
  if (!cells_hold_dealer_naturals) {
    r.loss += dealer_only;
    r.ev -= dealer_only;
    covered += dealer_only;
  }
  if (covered != Rational(1) || r.win + r.tie + r.loss != Rational(1))
    throw std::logic_error("overall deal probabilities do not sum to one for " + config.label());
  return r;
}

OverallResult solve(const VariantConfig& config) { return overall_metrics(config, build_strategy_table(config)); }

std::vector<RuleSweepEntry> dealer_rule_sweep(Visibility visibility, DeckModel deck, const PayoutSchedule& payout,
                                              bool peek_on_natural) {
  std::vector<RuleSweepEntry> out;
  for (const auto& policy : sweep_policies()) {
    VariantConfig config{visibility, deck, policy, payout, peek_on_natural};
    out.push_back({policy, solve(config)});
  }
  return out;
}

}  // namespace onehit
