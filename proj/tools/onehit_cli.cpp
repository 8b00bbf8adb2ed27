// onehit: exact solver for single-decision blackjack variants.
//
// Exit codes: 0 success, 1 fixture mismatch, 2 usage error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "onehit/asymptotics.hpp"
#include "onehit/export.hpp"
#include "onehit/overall.hpp"
#include "onehit/simulator.hpp"
#include "onehit/stage1.hpp"
#include "onehit/strategy.hpp"
#include "onehit/verify.hpp"

#ifndef ONEHIT_FIXTURES_PATH
#define ONEHIT_FIXTURES_PATH "fixtures/reference_values.json"
#endif

namespace {

using namespace onehit;

struct Options {
  std::string visibility = "two-up";
  std::string decks = "1";
  std::string dealer = "H17";
  std::string payout = "3:2";
  bool no_peek = false;
  std::string format = "markdown";
  int precision = 6;

  // command specific
  std::string suite;
  std::string fixtures = ONEHIT_FIXTURES_PATH;
  std::vector<int> n_list{1, 2, 4, 8, 16, 32, 64, 128, 256};
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int chunks = 16;
  int threads = 0;
  std::string player;
  std::string dealer_state;
  std::string player_layout;
  std::string dealer_layout;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

VariantConfig variant(const Options& o) {
  VariantConfig c;
  c.visibility = parse_visibility(o.visibility);
  c.deck = DeckModel::parse(o.decks);
  c.dealer_policy = DealerPolicy::parse(o.dealer);
  c.payout = PayoutSchedule::parse(o.payout);
  c.peek_on_natural = !o.no_peek;
  return c;
}

HandLayout parse_layout(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("layouts are written like A,2");
  return HandLayout(CardValue::parse(text.substr(0, comma)), CardValue::parse(text.substr(comma + 1)));
}

DealerInfo parse_dealer_info(const std::string& text, Visibility v) {
  switch (v) {
    case Visibility::TwoUp:
      return DealerInfo::both(HandState::parse(text));
    case Visibility::OneUp: {
      std::string t = text.rfind("up", 0) == 0 ? text.substr(2) : text;
      return DealerInfo::up_card(t == "11" ? kAce : CardValue::parse(t));
    }
    case Visibility::NoUp:
      if (!text.empty() && text != "none") throw UsageError("no-up cells take no dealer information");
      return DealerInfo::nothing();
  }
  return DealerInfo::nothing();
}

std::string triple_text(const OutcomeTriple& t, int precision) {
  std::ostringstream s;
  s << "win " << t.win << " (" << rational_round(t.win, precision) << "), tie " << t.tie << " ("
    << rational_round(t.tie, precision) << "), loss " << t.loss << " (" << rational_round(t.loss, precision) << ")";
  return s.str();
}

int cmd_strategy(const Options& o) {
  const auto table = build_strategy_table(variant(o));
  std::cout << export_table(table, parse_format(o.format), o.precision);
  return 0;
}

int cmd_overall(const Options& o) {
  const auto c = variant(o);
  std::cout << overall_report(c.label(), solve(c), parse_format(o.format), o.precision);
  return 0;
}

int cmd_sweep_rules(const Options& o) {
  const auto c = variant(o);
  const auto fmt = parse_format(o.format);
  if (fmt == OutputFormat::Markdown)
    std::cout << "## Expectation by dealer rule: " << to_string(c.visibility) << ", " << c.deck.label()
              << " deck(s), " << c.payout.label() << "\n\n| Rule | E[X] | Exact |\n|---|---:|---|\n";
  if (fmt == OutputFormat::Csv) std::cout << "rule,ev,ev_decimal\n";
  for (const auto& e : dealer_rule_sweep(c.visibility, c.deck, c.payout, c.peek_on_natural)) {
    const auto d = rational_round(e.result.ev, o.precision);
    if (fmt == OutputFormat::Markdown) std::cout << "| " << e.policy.label() << " | " << d << " | " << e.result.ev << " |\n";
    if (fmt == OutputFormat::Csv) std::cout << e.policy.label() << ',' << e.result.ev << ',' << d << '\n';
    if (fmt == OutputFormat::JsonLines)
      std::cout << nlohmann::json{{"rule", e.policy.label()}, {"ev", e.result.ev.str()}, {"ev_decimal", d}}.dump() << '\n';
  }
  return 0;
}

int cmd_sweep_decks(const Options& o, bool decks_given) {
  if (decks_given) throw UsageError("sweep-decks takes --n-list, not --decks");
  const auto report = sweep_decks(variant(o), o.n_list);
  if (parse_format(o.format) == OutputFormat::Markdown) {
    std::cout << "## Convergence to the with-replacement limit: " << to_string(report.base.visibility) << ", "
              << report.base.dealer_policy.label() << "\n\n| n | E[X] | gap E[X] | max gap | strategy = limit |\n"
              << "|---:|---:|---:|---:|:-:|\n";
    for (const auto& s : report.samples)
      std::cout << "| " << s.decks << " | " << rational_round(s.value.ev, o.precision) << " | "
                << s.gap_ev.to_double() << " | " << s.max_gap().to_double() << " | "
                << (s.strategy_matches_limit ? "yes" : "no") << " |\n";
    std::cout << "| inf | " << rational_round(report.limit.ev, o.precision) << " | 0 | 0 | yes |\n\n"
              << "doubling ratio <= 0.6 for n >= 8: " << (report.doubling_ratio_holds() ? "yes" : "no") << '\n'
              << "strategy stabilized at: "
              << (report.strategy_stabilized_at ? std::to_string(*report.strategy_stabilized_at) : "not within sweep")
              << '\n';
  } else {
    std::cout << report.to_json() << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto fixtures = load_fixtures(o.fixtures);
  std::optional<std::string> suite;
  if (!o.suite.empty()) suite = o.suite;
  VerifyReport report;
  try {
    report = verify_fixtures(fixtures, suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& r : report.outcomes)
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  expected " << r.expected << "  got " << r.actual << '\n';
  std::cout << report.passed() << " passed, " << report.failed() << " failed\n";
  return report.failed() == 0 ? 0 : 1;
}

int cmd_simulate(const Options& o) {
  const auto c = variant(o);
  SimOptions so;
  so.trials = o.trials;
  so.seed = o.seed;
  so.chunks = o.chunks;
  so.threads = o.threads;
  const auto table = build_strategy_table(c);
  const auto report = simulate(c, table, so);
  if (parse_format(o.format) == OutputFormat::Markdown) {
    const auto exact = overall_metrics(c, table);
    std::cout << "## Simulation: " << c.label() << "\n\n"
              << "| trials | wins | ties | losses | mean | std error | exact E[X] | z |\n|---:|---:|---:|---:|---:|---:|---:|---:|\n"
              << "| " << report.trials << " | " << report.wins << " | " << report.ties << " | " << report.losses << " | "
              << report.mean_payout << " | " << report.std_error << " | " << rational_round(exact.ev, o.precision)
              << " | " << (report.mean_payout - exact.ev.to_double()) / report.std_error << " |\n\n"
              << "seed " << report.seed << ", " << report.chunks << " chunks, " << report.algorithm << '\n';
  } else {
    std::cout << report.to_json() << '\n';
  }
  return 0;
}

int cmd_stage1(const Options& o) {
  const auto c = variant(o);
  const auto p = parse_layout(o.player_layout);
  const auto d = parse_layout(o.dealer_layout);
  if (evaluate_layout(p).natural || evaluate_layout(d).natural) throw UsageError("naturals are settled before any play");
  const auto r = stage1_evs(p, d, DeckState::fresh(c.deck).without(p, d), c.dealer_policy);
  std::cout << "player " << p.label() << " (" << evaluate_layout(p).label() << ") v dealer " << d.label() << " ("
            << evaluate_layout(d).label() << "), " << c.deck.label() << " deck(s), " << c.dealer_policy.label() << '\n'
            << "stand: " << triple_text(r.stand, o.precision) << "; EV " << r.ev_stand << " ("
            << rational_round(r.ev_stand, o.precision) << ")\n"
            << "hit:   " << triple_text(r.hit, o.precision) << "; EV " << r.ev_hit << " ("
            << rational_round(r.ev_hit, o.precision) << ")\n";
  return 0;
}

int cmd_cell(const Options& o) {
  const auto c = variant(o);
  const ObservableState obs{HandState::parse(o.player), parse_dealer_info(o.dealer_state, c.visibility)};
  const auto cell = cell_evaluate(obs, c);
  std::cout << obs.player.label() << " v " << obs.dealer.key() << ", " << c.label() << '\n'
            << "EV stand " << cell.ev_stand << " (" << rational_round(cell.ev_stand, o.precision) << ")\n"
            << "EV hit   " << cell.ev_hit << " (" << rational_round(cell.ev_hit, o.precision) << ")\n"
            << "decision " << cell.mark() << (cell.exact_tie ? " (exact tie)" : "") << '\n';
  for (const auto& l : cell.layouts) {
    std::cout << "  " << l.player_layout.label();
    if (l.dealer_layout) std::cout << " v " << l.dealer_layout->label();
    std::cout << "  weight " << l.weight << "  hit " << rational_round(l.ev_hit, o.precision) << "  stand "
              << rational_round(l.ev_stand, o.precision) << "  best " << (l.decision ? to_char(*l.decision) : '=')
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for single-decision blackjack variants"};
  app.set_config("--config", "", "INI or TOML file with option values");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  Options o;
  auto add_variant = [&](CLI::App* sub, const char* rule_flag = "--dealer") {
    sub->add_option("--visibility", o.visibility, "two-up, one-up or no-up")->capture_default_str();
    sub->add_option(rule_flag, o.dealer, "dealer rule: S15..H18, always-hit, always-stand")->capture_default_str();
    sub->add_option("--payout", o.payout, "3:2 or 6:5")->capture_default_str();
    sub->add_flag("--no-peek", o.no_peek, "dealer does not check for a natural before play");
    sub->add_option("--format", o.format, "markdown, csv or json-lines")->capture_default_str();
    sub->add_option("--precision", o.precision, "decimal places")->capture_default_str()->check(CLI::Range(0, 40));
  };
  auto add_decks = [&](CLI::App* sub) {
    return sub->add_option("--decks", o.decks, "number of decks, or inf for with replacement")->capture_default_str();
  };

  auto* strategy = app.add_subcommand("strategy", "basic strategy table");
  add_variant(strategy), add_decks(strategy);
  auto* overall = app.add_subcommand("overall", "overall win/tie/loss probabilities and expectation");
  add_variant(overall), add_decks(overall);
  auto* rules = app.add_subcommand("sweep-rules", "expectation under every dealer rule");
  add_variant(rules), add_decks(rules);
  auto* decks = app.add_subcommand("sweep-decks", "convergence of n-deck results to the with-replacement limit");
  add_variant(decks);
  auto* decks_opt = add_decks(decks);
  decks->add_option("--n-list", o.n_list, "deck counts to sweep")->delimiter(',')->capture_default_str();
  auto* verify = app.add_subcommand("verify-paper", "compare results with the reference fixtures");
  verify->alias("verify-fixtures");
  verify->add_option("--suite", o.suite, "run one suite only");
  verify->add_option("--fixtures", o.fixtures, "fixture file")->capture_default_str();
  auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo playout");
  add_variant(sim), add_decks(sim);
  sim->add_option("--trials", o.trials)->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed)->capture_default_str();
  sim->add_option("--chunks", o.chunks, "independent generator streams")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--threads", o.threads, "0 = all cores")->capture_default_str();
  auto* s1 = app.add_subcommand("stage1", "results for known player and dealer layouts");
  add_variant(s1), add_decks(s1);
  s1->add_option("--player", o.player_layout, "player layout, e.g. A,2")->required();
  s1->add_option("--dealer-layout", o.dealer_layout, "dealer layout, e.g. 6,8")->required();
  auto* cell = app.add_subcommand("cell", "one strategy cell with per-layout detail");
  add_variant(cell, "--rule"), add_decks(cell);
  cell->add_option("--player", o.player, "player total, e.g. soft13")->required();
  cell->add_option("--dealer", o.dealer_state, "dealer total (two-up, e.g. hard14), up-card (one-up, 2..11) or none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (strategy->parsed()) return cmd_strategy(o);
    if (overall->parsed()) return cmd_overall(o);
    if (rules->parsed()) return cmd_sweep_rules(o);
    if (decks->parsed()) return cmd_sweep_decks(o, decks_opt->count() > 0);
    if (verify->parsed()) return cmd_verify(o);
    if (sim->parsed()) return cmd_simulate(o);
    if (s1->parsed()) return cmd_stage1(o);
    if (cell->parsed()) return cmd_cell(o);
  } catch (const InfeasibleDeal& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
