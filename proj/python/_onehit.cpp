#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "onehit/asymptotics.hpp"
#include "onehit/export.hpp"
#include "onehit/overall.hpp"
#include "onehit/simulator.hpp"
#include "onehit/stage1.hpp"
#include "onehit/strategy.hpp"
#include "onehit/verify.hpp"

namespace py = pybind11;
using namespace onehit;

namespace {

// Rationals cross the boundary as "num/den" strings; the Python side turns
// them into fractions.Fraction.
py::dict triple(const OutcomeTriple& t) {
  py::dict d;
  d["win"] = t.win.str();
  d["tie"] = t.tie.str();
  d["loss"] = t.loss.str();
  return d;
}

py::dict overall_dict(const OverallResult& r) {
  py::dict d;
  d["win"] = r.win.str();
  d["tie"] = r.tie.str();
  d["loss"] = r.loss.str();
  d["ev"] = r.ev.str();
  return d;
}

VariantConfig make_config(const std::string& visibility, const std::string& decks, const std::string& dealer,
                          const std::string& payout, bool peek) {
  VariantConfig c;
  c.visibility = parse_visibility(visibility);
  c.deck = DeckModel::parse(decks);
  c.dealer_policy = DealerPolicy::parse(dealer);
  c.payout = PayoutSchedule::parse(payout);
  c.peek_on_natural = peek;
  return c;
}

HandLayout parse_layout(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("layout must look like A,2: " + text);
  return HandLayout(CardValue::parse(text.substr(0, comma)), CardValue::parse(text.substr(comma + 1)));
}

DealerInfo parse_dealer(const std::string& text, Visibility v) {
  switch (v) {
    case Visibility::TwoUp:
      return DealerInfo::both(HandState::parse(text));
    case Visibility::OneUp: {
      const std::string t = text.rfind("up", 0) == 0 ? text.substr(2) : text;
      return DealerInfo::up_card(t == "11" || t == "A" ? kAce : CardValue::parse(t));
    }
    case Visibility::NoUp:
      break;
  }
  return DealerInfo::nothing();
}

py::dict cell_dict(const CellResult& c) {
  py::dict d;
  d["player"] = c.observable.player.key();
  d["dealer"] = c.observable.dealer.key();
  d["decision"] = c.mark();
  d["ev_hit"] = c.ev_hit.str();
  d["ev_stand"] = c.ev_stand.str();
  d["hit"] = triple(c.hit);
  d["stand"] = triple(c.stand);
  d["mass"] = c.mass.str();
  py::list layouts;
  for (const auto& l : c.layouts) {
    py::dict e;
    e["player"] = l.player_layout.label();
    e["dealer"] = l.dealer_layout ? py::object(py::str(l.dealer_layout->label())) : py::object(py::none());
    e["weight"] = l.weight.str();
    e["ev_hit"] = l.ev_hit.str();
    e["ev_stand"] = l.ev_stand.str();
    e["decision"] = l.decision ? py::object(py::str(std::string(1, to_char(*l.decision)))) : py::object(py::none());
    layouts.append(e);
  }
  d["layouts"] = layouts;
  return d;
}

#define VARIANT_ARGS                                                                              \
  py::kw_only(), py::arg("visibility") = "two-up", py::arg("decks") = "1", py::arg("dealer") = "H17", \
      py::arg("payout") = "3:2", py::arg("peek") = true

}  // namespace

PYBIND11_MODULE(_onehit, m) {
  m.doc() = "Exact solver for the one-hit blackjack variants";

  py::register_exception<UnreachableObservable>(m, "UnreachableObservable", PyExc_ValueError);
  py::register_exception<InfeasibleDeal>(m, "InfeasibleDeal", PyExc_ValueError);

  m.def(
      "overall",
      [](const std::string& v, const std::string& n, const std::string& d, const std::string& p, bool peek) {
        return overall_dict(solve(make_config(v, n, d, p, peek)));
      },
      VARIANT_ARGS);

  m.def(
      "strategy_table",
      [](const std::string& v, const std::string& n, const std::string& d, const std::string& p, bool peek) {
        const auto table = build_strategy_table(make_config(v, n, d, p, peek));
        py::list out;
        for (const auto& c : table.cells()) out.append(cell_dict(c));
        return out;
      },
      VARIANT_ARGS);

  m.def(
      "export_table",
      [](const std::string& format, int precision, const std::string& v, const std::string& n, const std::string& d,
         const std::string& p, bool peek) {
        return export_table(build_strategy_table(make_config(v, n, d, p, peek)), parse_format(format), precision);
      },
      py::arg("format") = "markdown", py::arg("precision") = 6, VARIANT_ARGS);

  m.def(
      "cell",
      [](const std::string& player, const std::string& dealer_state, const std::string& v, const std::string& n,
         const std::string& d, const std::string& p, bool peek) {
        const auto c = make_config(v, n, d, p, peek);
        const ObservableState obs{HandState::parse(player), parse_dealer(dealer_state, c.visibility)};
        return cell_dict(cell_evaluate(obs, c));
      },
      py::arg("player"), py::arg("dealer_state") = "none", VARIANT_ARGS);

  m.def(
      "stage1",
      [](const std::string& player, const std::string& dealer, const std::string& decks, const std::string& rule) {
        const auto pl = parse_layout(player);
        const auto dl = parse_layout(dealer);
        const auto deck = DeckState::fresh(DeckModel::parse(decks)).without(pl, dl);
        const auto r = stage1_evs(pl, dl, deck, DealerPolicy::parse(rule));
        py::dict out;
        out["stand"] = triple(r.stand);
        out["hit"] = triple(r.hit);
        out["ev_stand"] = r.ev_stand.str();
        out["ev_hit"] = r.ev_hit.str();
        return out;
      },
      py::arg("player"), py::arg("dealer"), py::kw_only(), py::arg("decks") = "1", py::arg("dealer_rule") = "H17");

  m.def(
      "rule_sweep",
      [](const std::string& v, const std::string& n, const std::string& p, bool peek) {
        py::list out;
        for (const auto& e :
             dealer_rule_sweep(parse_visibility(v), DeckModel::parse(n), PayoutSchedule::parse(p), peek)) {
          py::dict d = overall_dict(e.result);
          d["dealer"] = e.policy.label();
          out.append(d);
        }
        return out;
      },
      py::kw_only(), py::arg("visibility") = "two-up", py::arg("decks") = "1", py::arg("payout") = "3:2",
      py::arg("peek") = true);

  m.def(
      "sweep_decks_json",
      [](const std::vector<int>& decks, const std::string& v, const std::string& d, const std::string& p, bool peek) {
        return sweep_decks(make_config(v, "1", d, p, peek), decks).to_json();
      },
      py::arg("decks"), py::kw_only(), py::arg("visibility") = "two-up", py::arg("dealer") = "H17",
      py::arg("payout") = "3:2", py::arg("peek") = true);

  m.def(
      "simulate_json",
      [](std::int64_t trials, std::uint64_t seed, int chunks, int threads, const std::string& v, const std::string& n,
         const std::string& d, const std::string& p, bool peek) {
        const auto c = make_config(v, n, d, p, peek);
        SimOptions o;
        o.trials = trials;
        o.seed = seed;
        o.chunks = chunks;
        o.threads = threads;
        py::gil_scoped_release release;
        const auto table = build_strategy_table(c);
        return simulate(c, table, o).to_json();
      },
      py::arg("trials") = 1000000, py::arg("seed") = 1, py::arg("chunks") = 16, py::arg("threads") = 0, VARIANT_ARGS);

  m.def(
      "verify_fixtures",
      [](const std::string& path, std::optional<std::string> suite) {
        const auto report = verify_fixtures(load_fixtures(path), suite);
        py::list out;
        for (const auto& o : report.outcomes) {
          py::dict d;
          d["suite"] = o.suite;
          d["id"] = o.id;
          d["passed"] = o.passed;
          d["expected"] = o.expected;
          d["actual"] = o.actual;
          out.append(d);
        }
        return out;
      },
      py::arg("path"), py::arg("suite") = py::none());
}
