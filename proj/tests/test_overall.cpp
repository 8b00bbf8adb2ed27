#include <doctest.h>

#include "oracle.hpp"
#include "onehit/overall.hpp"

using namespace onehit;

namespace {

VariantConfig variant(Visibility v, DeckModel deck = DeckModel::finite(1)) {
  VariantConfig c;
  c.visibility = v;
  c.deck = deck;
  return c;
}

Rational cell_probability(const std::vector<DealCell>& cells, HandState p, HandState d) {
  for (const auto& c : cells)
    if (c.player == p && c.dealer == d) return c.probability;
  return Rational(0);
}

}  // namespace

TEST_CASE("deal distribution") {
  const auto one = deal_distribution(DeckModel::finite(1));
  CHECK(cell_probability(one, soft(13), hard(14)) == Rational(816, 812175));
  CHECK(cell_probability(one, soft(13), hard(14)) == Rational(204, 2450) * Rational(32, 2652));

  const auto inf = deal_distribution(DeckModel::with_replacement());
  Rational natural(0);
  for (const auto& c : inf)
    if (c.player.natural) natural += c.probability;
  CHECK(natural == Rational(8, 169));
  // (7,7) has 16 ordered draws with replacement, so hard 14 totals 208.
  CHECK(cell_probability(inf, soft(13), hard(14)) == Rational(32, 2704) * Rational(208, 2704));

  for (const auto& cells : {one, inf, deal_distribution(DeckModel::finite(4))}) {
    Rational s(0);
    for (const auto& c : cells) s += c.probability;
    CHECK(s == Rational(1));
  }
}

TEST_CASE("soft 13 v hard 14 contribution") {
  const auto config = variant(Visibility::TwoUp);
  const auto cell = cell_evaluate({soft(13), DealerInfo::both(hard(14))}, config);
  const Rational contribution = Rational(816, 812175) * cell.chosen_ev();
  CHECK(std::abs(contribution.to_double() - 0.0002417) <= 1e-7);
}

TEST_CASE("overall results are normalized and ordered by information") {
  Rational previous(100);
  for (auto v : {Visibility::TwoUp, Visibility::OneUp, Visibility::NoUp}) {
    const auto r = solve(variant(v));
    CHECK(r.win + r.tie + r.loss == Rational(1));
    CHECK(r.ev < previous);
    previous = r.ev;
  }
}

TEST_CASE("payout changes only the expectation") {
  for (auto v : {Visibility::TwoUp, Visibility::NoUp}) {
    auto c = variant(v);
    const auto table = build_strategy_table(c);
    const auto a = overall_metrics(c, table);
    c.payout = PayoutSchedule::six_to_five();
    const auto b = overall_metrics(c, table);
    CHECK(a.win == b.win);
    CHECK(a.tie == b.tie);
    CHECK(a.loss == b.loss);
    CHECK(a.ev > b.ev);
  }
  CHECK(std::abs(solve([] {
                   auto c = variant(Visibility::NoUp);
                   c.payout = PayoutSchedule::six_to_five();
                   return c;
                 }())
                     .ev.to_double() +
                 0.005046) < 5e-7);
}

TEST_CASE("known no-up values") {
  const auto r = solve(variant(Visibility::NoUp));
  CHECK(std::abs(r.win.to_double() - 0.454128) < 5e-7);
  CHECK(std::abs(r.tie.to_double() - 0.077401) < 5e-7);
  CHECK(std::abs(r.ev.to_double() - 0.008902) < 5e-7);
  const auto inf = solve(variant(Visibility::NoUp, DeckModel::with_replacement()));
  CHECK(std::abs(inf.ev.to_double() - 0.008384) < 5e-7);
}

TEST_CASE("table and config must agree") {
  const auto table = build_strategy_table(variant(Visibility::TwoUp));
  CHECK_THROWS_AS(overall_metrics(variant(Visibility::OneUp), table), std::invalid_argument);
  auto c = variant(Visibility::TwoUp);
  c.dealer_policy = DealerPolicy::s17();
  CHECK_THROWS_AS(overall_metrics(c, table), std::invalid_argument);
}

TEST_CASE("peek setting leaves overall results unchanged") {
  for (auto v : {Visibility::OneUp, Visibility::NoUp}) {
    auto c = variant(v);
    const auto peek = solve(c);
    c.peek_on_natural = false;
    CHECK(solve(c) == peek);
  }
}

TEST_CASE("full-deal brute force equals the staged pipeline") {
  for (auto deck : {DeckModel::finite(1), DeckModel::with_replacement()})
    for (auto v : {Visibility::TwoUp, Visibility::OneUp, Visibility::NoUp}) {
      const auto c = variant(v, deck);
      const auto table = build_strategy_table(c);
      CAPTURE(c.label());
      CHECK(oracle::full_deal(c, table) == overall_metrics(c, table));
    }
}

TEST_CASE("no-up rule sweep") {
  const auto sweep = dealer_rule_sweep(Visibility::NoUp, DeckModel::finite(1), PayoutSchedule::three_to_two());
  REQUIRE(sweep.size() == 10);
  CHECK(std::abs(sweep[8].result.ev.to_double() - 0.273143) < 5e-7);
  CHECK(std::abs(sweep[9].result.ev.to_double() - 0.289466) < 5e-7);
  CHECK(std::abs(sweep[3].result.ev.to_double() - 0.0061) < 5e-5);
  for (std::size_t i = 0; i < 8; ++i) CHECK(sweep[3].result.ev <= sweep[i].result.ev);
}
