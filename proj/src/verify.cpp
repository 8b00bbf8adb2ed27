#include "onehit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "onehit/overall.hpp"
#include "onehit/stage1.hpp"
#include "onehit/strategy.hpp"

namespace onehit {

namespace {

HandLayout parse_layout(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("layout must look like \"A,2\": " + text);
  return HandLayout(CardValue::parse(text.substr(0, comma)), CardValue::parse(text.substr(comma + 1)));
}

DealerInfo parse_dealer_key(const std::string& key) {
  if (key == "none") return DealerInfo::nothing();
  if (key.rfind("up", 0) == 0) {
    const int v = std::stoi(key.substr(2));
    return DealerInfo::up_card(v == 11 ? kAce : CardValue(v));
  }
  return DealerInfo::both(HandState::parse(key));
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

// Memoizes tables and overall results per variant for one verification run.
class Solver {
 public:
  const StrategyTable& table(const VariantConfig& c) {
    VariantConfig key = c;
    key.payout = PayoutSchedule::three_to_two();
    auto& slot = tables_[key.label()];
    if (!slot) slot = std::make_unique<StrategyTable>(build_strategy_table(key));
    return *slot;
  }
  const OverallResult& overall(const VariantConfig& c) {
    auto it = overall_.find(c.label());
    if (it == overall_.end()) it = overall_.emplace(c.label(), overall_metrics(c, table(c))).first;
    return it->second;
  }

 private:
  std::map<std::string, std::unique_ptr<StrategyTable>> tables_;
  std::map<std::string, OverallResult> overall_;
};

FixtureOutcome check_overall(const nlohmann::json& f, Solver& solver) {
  const auto config = variant_from_json(f.at("variant"));
  const auto& r = solver.overall(config);
  const std::string metric = f.at("metric");
  const Rational* value = metric == "win" ? &r.win : metric == "tie" ? &r.tie : metric == "loss" ? &r.loss
                        : metric == "ev" ? &r.ev : nullptr;
  if (!value) throw std::invalid_argument("unknown metric " + metric);
  FixtureOutcome o;
  o.actual = rational_round(*value, 7);
  std::vector<std::string> expected;
  for (const auto& e : f.at("expected")) {
    const double want = e.at("value");
    const double tol = e.at("tolerance");
    expected.push_back(fmt(want) + "±" + fmt(tol));
    if (std::abs(value->to_double() - want) <= tol * (1 + 1e-9)) o.passed = true;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) o.expected += (i ? " or " : "") + expected[i];
  return o;
}

FixtureOutcome check_strategy(const nlohmann::json& f, Solver& solver) {
  const auto& table = solver.table(variant_from_json(f.at("variant")));
  const auto& columns = f.at("columns");
  FixtureOutcome o;
  o.passed = true;
  std::size_t cells = 0, wrong = 0;
  std::string first;
  for (const auto& [player, marks_text] : f.at("rows").items()) {
    std::istringstream in(marks_text.get<std::string>());
    std::vector<std::string> marks{std::istream_iterator<std::string>(in), {}};
    if (marks.size() != columns.size()) throw std::invalid_argument("row width mismatch in " + f.at("id").get<std::string>());
    for (std::size_t i = 0; i < marks.size(); ++i) {
      ++cells;
      const ObservableState obs{HandState::parse(player), parse_dealer_key(columns[i])};
      const std::string got = table.at(obs).mark();
      if (got != marks[i]) {
        ++wrong;
        if (first.empty()) first = obs.key() + " expected " + marks[i] + " got " + got;
        else if (first.size() < 400) first += "; " + obs.key() + " expected " + marks[i] + " got " + got;
      }
    }
  }
  o.passed = wrong == 0;
  o.expected = std::to_string(cells) + " cells";
  o.actual = std::to_string(cells - wrong) + " match" + (first.empty() ? "" : " (" + first + ")");
  return o;
}

FixtureOutcome check_replacement_diff(const nlohmann::json& f, Solver& solver) {
  auto config = variant_from_json(f.at("variant"));
  const auto& finite = solver.table(config);
  config.deck = DeckModel::with_replacement();
  const auto& limit = solver.table(config);
  std::set<std::string> want, got;
  for (const auto& c : f.at("changes"))
    want.insert(c.at("player").get<std::string>() + "|" + c.at("dealer").get<std::string>() + "->" +
                c.at("decision").get<std::string>());
  for (const auto& obs : finite.decision_diff(limit)) got.insert(obs.key() + "->" + to_char(limit.decision(obs)));
  auto join = [](const std::set<std::string>& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
    return out.empty() ? std::string("none") : out;
  };
  FixtureOutcome o;
  o.expected = join(want) + "; 0 asterisks";
  o.actual = join(got) + "; " + std::to_string(limit.asterisk_count()) + " asterisks";
  o.passed = want == got && limit.asterisk_count() == 0;
  return o;
}

FixtureOutcome check_example(const nlohmann::json& f, Solver& solver) {
  const std::string kind = f.at("kind");
  const auto config = variant_from_json(f.at("variant"));
  FixtureOutcome o;
  auto exact = [&](const std::string& name, const Rational& got, bool& ok) {
    if (!f.at("expected").contains(name)) {
      o.actual += name + "=" + got.str() + "(unexpected) ";
      ok = false;
      return;
    }
    const auto want = Rational::parse(f.at("expected").at(name).get<std::string>());
    o.expected += name + "=" + want.str() + " ";
    o.actual += name + "=" + got.str() + " ";
    ok = ok && want == got;
  };
  bool ok = true;
  if (kind.rfind("stage1", 0) == 0) {
    const auto p = parse_layout(f.at("player"));
    const auto d = parse_layout(f.at("dealer"));
    const auto deck = DeckState::fresh(config.deck).without(p, d);
    if (kind == "stage1-stand") {
      const auto t = resolve_stand(evaluate_layout(p), d, deck, config.dealer_policy);
      exact("win", t.win, ok), exact("tie", t.tie, ok), exact("loss", t.loss, ok);
    } else if (kind == "stage1-hit") {
      const auto t = resolve_hit(p, d, deck, config.dealer_policy);
      exact("win", t.win, ok), exact("tie", t.tie, ok), exact("loss", t.loss, ok);
    } else if (kind == "stage1-ev") {
      const auto r = stage1_evs(p, d, deck, config.dealer_policy);
      if (f.at("expected").contains("ev_hit")) exact("ev_hit", r.ev_hit, ok);
      if (f.at("expected").contains("ev_stand")) exact("ev_stand", r.ev_stand, ok);
    } else if (kind == "stage1-hit-by-card") {
      const auto by = resolve_hit_by_card(p, d, deck, config.dealer_policy);
      const Rational den(f.at("denominator").get<std::int64_t>());
      for (const std::string comp : {"win", "tie", "loss"}) {
        std::string want, got;
        for (std::size_t i = 0; i < 10; ++i) {
          const auto& t = by[i];
          const Rational& x = comp == "win" ? t.win : comp == "tie" ? t.tie : t.loss;
          const Rational num = x * den;
          const std::int64_t expected_num = f.at("expected").at(comp)[i];
          want += std::to_string(expected_num) + " ";
          got += num.str() + " ";
          ok = ok && num == Rational(expected_num);
        }
        o.expected += comp + "[" + want + "] ";
        o.actual += comp + "[" + got + "] ";
      }
    } else {
      throw std::invalid_argument("unknown fixture kind " + kind);
    }
  } else {
    const ObservableState obs{HandState::parse(f.at("player")), parse_dealer_key(f.at("dealer"))};
    if (kind == "cell") {
      const auto& cell = solver.table(config).at(obs);
      exact("ev_stand", cell.ev_stand, ok);
      exact("ev_hit", cell.ev_hit, ok);
      const std::string d(1, to_char(cell.decision));
      o.expected += "decision=" + f.at("expected").at("decision").get<std::string>();
      o.actual += "decision=" + d;
      ok = ok && d == f.at("expected").at("decision");
    } else if (kind == "weights") {
      for (const auto& w : layout_weights(obs, config.deck, config.peek_on_natural))
        exact(w.player_layout.label() + "|" + w.dealer_layout.label(), w.weight, ok);
      ok = ok && f.at("expected").size() == layout_weights(obs, config.deck, config.peek_on_natural).size();
    } else if (kind == "deal-cell" || kind == "contribution") {
      Rational p(0);
      for (const auto& c : deal_distribution(config.deck))
        if (c.player == obs.player && c.dealer == obs.dealer.hand) p += c.probability;
      if (kind == "deal-cell") {
        const auto want = Rational::parse(f.at("expected").get<std::string>());
        o.expected = want.str();
        o.actual = p.str();
        ok = want == p;
      } else {
        const auto& cell = solver.table(config).at(obs);
        const double got = (p * cell.chosen_ev()).to_double();
        const double want = f.at("expected");
        const double tol = f.at("tolerance");
        o.expected = fmt(want) + "±" + fmt(tol);
        o.actual = fmt(got);
        ok = std::abs(got - want) <= tol;
      }
    } else {
      throw std::invalid_argument("unknown fixture kind " + kind);
    }
  }
  o.passed = ok;
  return o;
}

}  // namespace

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed; }));
}

std::size_t VerifyReport::failed() const { return outcomes.size() - passed(); }

nlohmann::json load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file " + path);
  return nlohmann::json::parse(in);
}

VariantConfig variant_from_json(const nlohmann::json& j) {
  VariantConfig c;
  for (const auto& [key, value] : j.items()) {
    const std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    if (key == "visibility") c.visibility = parse_visibility(v);
    else if (key == "decks") c.deck = DeckModel::parse(v);
    else if (key == "dealer") c.dealer_policy = DealerPolicy::parse(v);
    else if (key == "payout") c.payout = PayoutSchedule::parse(v);
    else if (key == "peek") c.peek_on_natural = value.get<bool>();
    else throw std::invalid_argument("unknown variant field " + key);
  }
  return c;
}

std::vector<std::string> fixture_suites(const nlohmann::json& fixtures) {
  std::vector<std::string> out;
  for (const auto& f : fixtures.at("fixtures")) {
    const std::string s = f.at("suite");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

VerifyReport verify_fixtures(const nlohmann::json& fixtures, const std::optional<std::string>& suite) {
  if (suite) {
    const auto suites = fixture_suites(fixtures);
    if (std::find(suites.begin(), suites.end(), *suite) == suites.end())
      throw std::invalid_argument("unknown suite " + *suite);
  }
  Solver solver;
  VerifyReport report;
  for (const auto& f : fixtures.at("fixtures")) {
    if (suite && f.at("suite") != *suite) continue;
    const std::string kind = f.at("kind");
    FixtureOutcome o = kind == "overall"            ? check_overall(f, solver)
                       : kind == "strategy"         ? check_strategy(f, solver)
                       : kind == "replacement-diff" ? check_replacement_diff(f, solver)
                                                    : check_example(f, solver);
    o.suite = f.at("suite");
    o.id = f.at("id");
    report.outcomes.push_back(std::move(o));
  }
  return report;
}

}  // namespace onehit
