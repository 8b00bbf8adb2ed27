#include "onehit/strategy.hpp"

#include <stdexcept>

namespace onehit {
namespace {

mpz_class deal_denominator(DeckModel model) {
  const mpz_class n = model.is_finite() ? 52 * model.decks() : 52;
  if (model.is_finite()) return n * (n - 1) * (n - 2) * (n - 3);
  return n * n * n * n;
}

const Stage1Result& dealer_natural_result() {
  static const Stage1Result r{OutcomeTriple::certain_loss(), OutcomeTriple::certain_loss(), Rational(-1),
                              Rational(-1)};
  return r;
}

bool dealer_pair_matches(const ObservableState& obs, CardValue up, CardValue down, bool peek) {
  const HandState dealer = evaluate_layout(HandLayout(up, down));
  switch (obs.dealer.kind) {
    case DealerInfo::Kind::BothCards: return dealer == obs.dealer.hand;
    case DealerInfo::Kind::UpCard:
      if (up != obs.dealer.up) return false;
      [[fallthrough]];
    case DealerInfo::Kind::Nothing: return !(peek && dealer.natural);
  }
  return false;
}

}  // namespace

std::string DealerInfo::key() const {
  switch (kind) {
    case Kind::BothCards: return hand.key();
    case Kind::UpCard: return "up" + column_label();
    case Kind::Nothing: return "none";
  }
  return "?";
}

std::string DealerInfo::column_label() const {
  switch (kind) {
    case Kind::BothCards: return std::to_string(hand.total);
    case Kind::UpCard: return up.is_ace() ? "11" : std::to_string(up.value());
    case Kind::Nothing: return "-";
  }
  return "?";
}

std::vector<ObservableState> observable_states(Visibility visibility) {
  std::vector<ObservableState> out;
  const auto states = two_card_states();
  for (const auto& player : states) {
    switch (visibility) {
      case Visibility::TwoUp:
        for (const auto& dealer : states) out.push_back({player, DealerInfo::both(dealer)});
        break;
      case Visibility::OneUp:
        for (int v = 2; v <= 10; ++v) out.push_back({player, DealerInfo::up_card(CardValue(v))});
        out.push_back({player, DealerInfo::up_card(kAce)});
        break;
      case Visibility::NoUp: out.push_back({player, DealerInfo::nothing()}); break;
    }
  }
  return out;
}

std::vector<LayoutCount> enumerate_layouts(const HandState& hand, DeckModel model) {
  const DeckState fresh = DeckState::fresh(model);
  std::vector<LayoutCount> out;
  for (const auto& layout : all_layouts())
    if (evaluate_layout(layout) == hand) out.push_back({layout, fresh.permutation_count(layout)});
  return out;
}

WeightedLayouts weigh_layouts(const ObservableState& observable, DeckModel model, bool peek_on_natural) {
  if (observable.player.natural) throw std::invalid_argument("player naturals have no decision");
  if (observable.dealer.kind == DealerInfo::Kind::BothCards && observable.dealer.hand.natural)
    throw std::invalid_argument("visible dealer naturals have no decision");

  const DeckState fresh = DeckState::fresh(model);
  // Keyed by (player layout index, dealer layout index).
  std::map<std::pair<std::size_t, std::size_t>, mpz_class> counts;
  mpz_class total = 0;
  for (const auto& [player, perms] : enumerate_layouts(observable.player, model)) {
    if (perms == 0) continue;
    const DeckState rest = fresh.without(player);
    for (CardValue up : kAllValues) {
      for (CardValue down : kAllValues) {
        if (!dealer_pair_matches(observable, up, down, peek_on_natural)) continue;
        const std::int64_t ways = rest.ordered_pair_count(up, down);
        if (ways == 0) continue;
        const mpz_class joint = mpz_class(static_cast<long>(perms)) * mpz_class(static_cast<long>(ways));
        counts[{player.index(), HandLayout(up, down).index()}] += joint;
        total += joint;
      }
    }
  }
  if (total == 0) throw UnreachableObservable("no deal is consistent with " + observable.key());

  WeightedLayouts out;
  out.mass = Rational(mpq_class(total, deal_denominator(model)));
  const auto& layouts = all_layouts();
  for (const auto& [key, count] : counts)
    out.weights.push_back({layouts[key.first], layouts[key.second], Rational(mpq_class(count, total))});
  return out;
}

std::vector<LayoutWeight> layout_weights(const ObservableState& observable, DeckModel model, bool peek_on_natural) {
  return weigh_layouts(observable, model, peek_on_natural).weights;
}

char to_char(Decision d) { return d == Decision::Hit ? 'H' : 'S'; }

std::string CellResult::mark() const {
  std::string m(1, to_char(decision));
  if (asterisk) m += '*';
  return m;
}

CellResult cell_evaluate(const ObservableState& observable, const VariantConfig& config) {
  return cell_evaluate(observable, config, Stage1Table(config.deck, config.dealer_policy));
}

CellResult cell_evaluate(const ObservableState& observable, const VariantConfig& config, const Stage1Table& stage1) {
  if (!(stage1.model() == config.deck) || !(stage1.policy() == config.dealer_policy))
    throw std::invalid_argument("stage-1 table does not match the variant configuration");

  const auto weighted = weigh_layouts(observable, config.deck, config.peek_on_natural);
  const bool dealer_layout_visible = config.visibility == Visibility::TwoUp;

  CellResult cell;
  cell.observable = observable;
  cell.mass = weighted.mass;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> groups;

  for (const auto& lw : weighted.weights) {
    const bool dealer_natural = evaluate_layout(lw.dealer_layout).natural;
    const Stage1Result& r =
        dealer_natural ? dealer_natural_result() : stage1.at(lw.player_layout, lw.dealer_layout);
    cell.hit.add_scaled(r.hit, lw.weight);
    cell.stand.add_scaled(r.stand, lw.weight);

    const std::pair<std::size_t, std::size_t> key{lw.player_layout.index(),
                                                  dealer_layout_visible ? lw.dealer_layout.index() : 55};
    auto [it, inserted] = groups.try_emplace(key, cell.layouts.size());
    if (inserted) {
      cell.layouts.push_back({lw.player_layout,
                              dealer_layout_visible ? std::optional<HandLayout>(lw.dealer_layout) : std::nullopt,
                              Rational(0), Rational(0), Rational(0), std::nullopt});
    }
    auto& group = cell.layouts[it->second];
    group.weight += lw.weight;
    group.ev_hit += lw.weight * r.ev_hit;
    group.ev_stand += lw.weight * r.ev_stand;
  }

  cell.ev_hit = cell.hit.ev();
  cell.ev_stand = cell.stand.ev();
  cell.exact_tie = cell.ev_hit == cell.ev_stand;
  cell.decision = cell.ev_hit >= cell.ev_stand ? Decision::Hit : Decision::Stand;

  for (auto& group : cell.layouts) {
    group.ev_hit /= group.weight;
    group.ev_stand /= group.weight;
    if (group.ev_hit != group.ev_stand)
      group.decision = group.ev_hit > group.ev_stand ? Decision::Hit : Decision::Stand;
    if (group.decision && *group.decision != cell.decision) cell.asterisk = true;
  }
  return cell;
}

StrategyTable::StrategyTable(VariantConfig config, std::vector<CellResult> cells)
    : config_(std::move(config)), cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) index_[cells_[i].observable.key()] = i;
}

const CellResult* StrategyTable::find(const ObservableState& observable) const {
  const auto it = index_.find(observable.key());
  return it == index_.end() ? nullptr : &cells_[it->second];
}

const CellResult& StrategyTable::at(const ObservableState& observable) const {
  const auto* c = find(observable);
  if (!c) throw std::out_of_range("no strategy cell for " + observable.key());
  return *c;
}

std::vector<ObservableState> StrategyTable::decision_diff(const StrategyTable& other) const {
  std::vector<ObservableState> out;
  for (const auto& cell : cells_) {
    const auto* theirs = other.find(cell.observable);
    if (!theirs || theirs->decision != cell.decision) out.push_back(cell.observable);
  }
  for (const auto& cell : other.cells())
    if (!find(cell.observable)) out.push_back(cell.observable);
  return out;
}

std::size_t StrategyTable::asterisk_count() const {
  std::size_t n = 0;
  for (const auto& c : cells_) n += c.asterisk ? 1 : 0;
  return n;
}

StrategyTable build_strategy_table(const VariantConfig& config) {
  return build_strategy_table(config, Stage1Table(config.deck, config.dealer_policy));
}

StrategyTable build_strategy_table(const VariantConfig& config, const Stage1Table& stage1) {
  std::vector<CellResult> cells;
  for (const auto& obs : observable_states(config.visibility)) {
    try {
      cells.push_back(cell_evaluate(obs, config, stage1));
    } catch (const UnreachableObservable&) {
      // not dealt under this deck model
    }
  }
  return StrategyTable(config, std::move(cells));
}

}  // namespace onehit
