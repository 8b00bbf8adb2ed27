#include "onehit/asymptotics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace onehit {

namespace {

Rational max_of(std::initializer_list<Rational> xs) {
  Rational m(0);
  for (const auto& x : xs) m = std::max(m, x);
  return m;
}

Rational triple_gap(const OutcomeTriple& a, const OutcomeTriple& b) {
  return max_of({(a.win - b.win).abs(), (a.tie - b.tie).abs(), (a.loss - b.loss).abs()});
}

void check_decks(const std::vector<int>& decks) {
  if (decks.empty()) throw std::invalid_argument("deck list is empty");
  for (std::size_t i = 0; i < decks.size(); ++i) {
    if (decks[i] < 1) throw std::invalid_argument("deck counts must be positive");
    if (i > 0 && decks[i] <= decks[i - 1]) throw std::invalid_argument("deck counts must be strictly increasing");
  }
}

nlohmann::json result_json(const OverallResult& r) {
  return {{"win", r.win.str()}, {"tie", r.tie.str()}, {"loss", r.loss.str()}, {"ev", r.ev.str()},
          {"win_decimal", r.win.to_double()}, {"tie_decimal", r.tie.to_double()},
          {"loss_decimal", r.loss.to_double()}, {"ev_decimal", r.ev.to_double()}};
}

// Tracks the largest gap per n for one quantity family and whether it ever grew.
struct GapSeries {
  std::string name;
  std::vector<int> decks;
  std::vector<Rational> gaps;
  std::size_t mismatches = 0;  // closed-form vs enumeration disagreements
  std::string first_mismatch;

  void note(int n, const Rational& gap) {
    auto it = std::find(decks.begin(), decks.end(), n);
    if (it == decks.end()) {
      decks.push_back(n);
      gaps.push_back(gap);
    } else {
      auto& g = gaps[static_cast<std::size_t>(it - decks.begin())];
      g = std::max(g, gap);
    }
  }
};

}  // namespace

Rational ConvergenceSample::max_gap() const { return max_of({gap_win, gap_tie, gap_loss, gap_ev}); }

bool ConvergenceReport::doubling_ratio_holds(double ratio, int from_decks) const {
  const Rational bound = Rational(static_cast<std::int64_t>(ratio * 1000000 + 0.5), 1000000);
  std::map<int, const ConvergenceSample*> by_n;
  for (const auto& s : samples) by_n[s.decks] = &s;
  for (const auto& [n, s] : by_n) {
    if (n < from_decks) continue;
    auto twice = by_n.find(2 * n);
    if (twice == by_n.end()) continue;
    const auto* t = twice->second;
    const std::pair<Rational, Rational> pairs[] = {
        {s->gap_win, t->gap_win}, {s->gap_tie, t->gap_tie}, {s->gap_loss, t->gap_loss}, {s->gap_ev, t->gap_ev}};
    for (const auto& [gk, g2k] : pairs)
      if (g2k > bound * gk) return false;
  }
  return true;
}

std::string ConvergenceReport::to_json() const {
  nlohmann::json j;
  j["variant"] = {{"visibility", to_string(base.visibility)},
                  {"dealer", base.dealer_policy.label()},
                  {"payout", base.payout.label()},
                  {"peek", base.peek_on_natural}};
  j["limit"] = result_json(limit);
  j["samples"] = nlohmann::json::array();
  for (const auto& s : samples) {
    auto e = result_json(s.value);
    e["decks"] = s.decks;
    e["gap"] = {{"win", s.gap_win.to_double()}, {"tie", s.gap_tie.to_double()},
                {"loss", s.gap_loss.to_double()}, {"ev", s.gap_ev.to_double()}};
    e["strategy_matches_limit"] = s.strategy_matches_limit;
    j["samples"].push_back(e);
  }
  j["max_n_gap"] = max_n_gap.to_double();
  j["strategy_stabilized_at"] = strategy_stabilized_at ? nlohmann::json(*strategy_stabilized_at) : nlohmann::json();
  j["doubling_ratio_0_6"] = doubling_ratio_holds();
  return j.dump();
}

ConvergenceReport sweep_decks(const VariantConfig& base, const std::vector<int>& decks) {
  check_decks(decks);
  ConvergenceReport report;
  report.base = base;

  VariantConfig limit_config = base;
  limit_config.deck = DeckModel::with_replacement();
  const StrategyTable limit_table = build_strategy_table(limit_config);
  report.limit = overall_metrics(limit_config, limit_table);

  for (int n : decks) {
    VariantConfig c = base;
    c.deck = DeckModel::finite(n);
    const StrategyTable table = build_strategy_table(c);
    ConvergenceSample s;
    s.decks = n;
    s.value = overall_metrics(c, table);
    s.gap_win = (s.value.win - report.limit.win).abs();
    s.gap_tie = (s.value.tie - report.limit.tie).abs();
    s.gap_loss = (s.value.loss - report.limit.loss).abs();
    s.gap_ev = (s.value.ev - report.limit.ev).abs();
    s.strategy_matches_limit = table.same_decisions(limit_table);
    report.samples.push_back(std::move(s));
  }
  report.max_n_gap = report.samples.back().max_gap();
  for (std::size_t i = report.samples.size(); i-- > 0;) {
    if (!report.samples[i].strategy_matches_limit) break;
    report.strategy_stabilized_at = report.samples[i].decks;
  }
  return report;
}

bool LimitReport::passed() const { return failures() == 0; }

std::size_t LimitReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

LimitReport verify_limit_properties(const std::vector<std::pair<HandLayout, HandLayout>>& layout_pairs,
                                      const std::vector<ObservableState>& observables, const std::vector<int>& decks,
                                      const DealerPolicy& policy) {
  check_decks(decks);
  LimitReport report;

  // Stage 1, per layout pair.
  std::vector<std::pair<HandLayout, HandLayout>> pairs = layout_pairs;
  if (pairs.empty()) {
    for (const auto& p : all_layouts())
      for (const auto& d : all_layouts())
        if (!evaluate_layout(p).natural && !evaluate_layout(d).natural) pairs.emplace_back(p, d);
  }
  std::size_t stage1_growth = 0, stage1_mismatch = 0;
  std::string stage1_detail;
  for (const auto& [p, d] : pairs) {
    const auto coeffs = extract_stage1_coefficients(p, d, policy);
    const auto limit = stage1_evs(p, d, DeckState::fresh(DeckModel::with_replacement()).without(p, d), policy);
    if (!(evaluate_coefficients_at(coeffs, std::nullopt).hit == limit.hit) ||
        !(evaluate_coefficients_at(coeffs, std::nullopt).stand == limit.stand)) {
      if (stage1_mismatch++ == 0) stage1_detail = p.label() + " v " + d.label() + " closed form at infinity";
    }
    std::optional<Rational> previous;
    for (int n : decks) {
      const auto deck = DeckState::fresh(DeckModel::finite(n)).without(p, d);
      const auto r = stage1_evs(p, d, deck, policy);
      const auto c = evaluate_coefficients_at(coeffs, n);
      if (!(c.hit == r.hit) || !(c.stand == r.stand)) {
        if (stage1_mismatch++ == 0) stage1_detail = p.label() + " v " + d.label() + " closed form at n=" + std::to_string(n);
      }
      const Rational gap = std::max(triple_gap(r.hit, limit.hit), triple_gap(r.stand, limit.stand));
      if (previous && gap > *previous) {
        if (stage1_growth++ == 0 && stage1_detail.empty())
          stage1_detail = p.label() + " v " + d.label() + " gap grew at n=" + std::to_string(n);
      }
      previous = gap;
    }
  }
  report.checks.push_back({"stage1 closed form", stage1_mismatch == 0,
                           std::to_string(pairs.size()) + " pairs, " + std::to_string(stage1_mismatch) + " mismatches"});
  report.checks.push_back({"stage1 gap shrinks", stage1_growth == 0,
                           std::to_string(stage1_growth) + " increases" + (stage1_detail.empty() ? "" : "; " + stage1_detail)});

  // Stage 2, per observable.
  std::vector<ObservableState> obs = observables;
  if (obs.empty()) {
    for (auto v : {Visibility::TwoUp, Visibility::OneUp, Visibility::NoUp})
      for (const auto& o : observable_states(v)) obs.push_back(o);
  }
  std::size_t stage2_growth = 0;
  std::string stage2_detail;
  for (const auto& o : obs) {
    std::map<std::pair<std::size_t, std::size_t>, Rational> limit;
    try {
      for (const auto& w : layout_weights(o, DeckModel::with_replacement()))
        limit[{w.player_layout.index(), w.dealer_layout.index()}] += w.weight;
    } catch (const UnreachableObservable&) {
      continue;
    }
    std::optional<Rational> previous;
    for (int n : decks) {
      auto diff = limit;
      for (const auto& w : layout_weights(o, DeckModel::finite(n)))
        diff[{w.player_layout.index(), w.dealer_layout.index()}] -= w.weight;
      Rational gap(0);
      for (const auto& [k, v] : diff) gap = std::max(gap, v.abs());
      if (previous && gap > *previous && stage2_growth++ == 0)
        stage2_detail = o.key() + " gap grew at n=" + std::to_string(n);
      previous = gap;
    }
  }
  report.checks.push_back({"stage2 weight gap shrinks", stage2_growth == 0,
                           std::to_string(obs.size()) + " observables, " + std::to_string(stage2_growth) + " increases" +
                               (stage2_detail.empty() ? "" : "; " + stage2_detail)});

  // Stage 3, the deal distribution.
  std::map<std::string, Rational> limit3;
  for (const auto& c : deal_distribution(DeckModel::with_replacement()))
    limit3[c.player.key() + "|" + c.dealer.key()] += c.probability;
  std::optional<Rational> previous;
  std::size_t stage3_growth = 0;
  for (int n : decks) {
    auto diff = limit3;
    for (const auto& c : deal_distribution(DeckModel::finite(n))) diff[c.player.key() + "|" + c.dealer.key()] -= c.probability;
    Rational gap(0);
    for (const auto& [k, v] : diff) gap = std::max(gap, v.abs());
    if (previous && gap > *previous) ++stage3_growth;
    previous = gap;
  }
  report.checks.push_back({"stage3 deal gap shrinks", stage3_growth == 0, std::to_string(stage3_growth) + " increases"});
  return report;
}

}  // namespace onehit
