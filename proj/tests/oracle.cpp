#include "oracle.hpp"

#include <array>
#include <optional>

namespace oracle {

namespace {

using onehit::Rational;

// Hand arithmetic written out independently of onehit::add_card.
struct Hand {
  int hard = 0;  // aces counted as 1
  bool ace = false;
  int cards = 0;

  void add(int v) {
    hard += v;
    ace = ace || v == 1;
    ++cards;
  }
  int best() const { return (ace && hard + 10 <= 21) ? hard + 10 : hard; }
  bool soft() const { return ace && hard + 10 <= 21; }
  bool natural() const { return cards == 2 && best() == 21; }
  bool bust() const { return hard > 21; }
};

bool dealer_hits(const onehit::DealerPolicy& p, const Hand& h) {
  using K = onehit::DealerPolicy::Kind;
  if (p.kind == K::AlwaysHit) return true;
  if (p.kind == K::AlwaysStand) return false;
  const int t = h.best();
  return t < p.stand_at || (t == p.stand_at && h.soft() && p.hit_soft_at_threshold);
}

struct Deck {
  std::array<std::int64_t, 11> n{};  // index 1..10
  std::int64_t total = 0;
  bool replace = false;

  explicit Deck(onehit::DeckModel m) {
    const std::int64_t k = m.is_finite() ? m.decks() : 1;
    for (int v = 1; v <= 9; ++v) n[v] = 4 * k;
    n[10] = 16 * k;
    total = 52 * k;
    replace = !m.is_finite();
  }
  std::int64_t take(int v) {
    const std::int64_t c = n[v];
    if (!replace) --n[v], --total;
    return c;
  }
  void put(int v) {
    if (!replace) ++n[v], ++total;
  }
};

onehit::ObservableState observable_for(onehit::Visibility vis, const Hand& p, const Hand& d, int up) {
  const onehit::HandState ps{p.best(), p.soft(), false};
  switch (vis) {
    case onehit::Visibility::TwoUp: return {ps, onehit::DealerInfo::both({d.best(), d.soft(), false})};
    case onehit::Visibility::OneUp: return {ps, onehit::DealerInfo::up_card(onehit::CardValue(up))};
    case onehit::Visibility::NoUp: return {ps, onehit::DealerInfo::nothing()};
  }
  return {};
}

}  // namespace

onehit::OverallResult full_deal(const onehit::VariantConfig& config, const onehit::StrategyTable& table) {
  Deck deck(config.deck);
  // Counts are weights of ordered card sequences; every path is extended to
  // six cards by multiplying with the remaining deck size so all paths share
  // one denominator.
  mpz_class win = 0, tie = 0, loss = 0, payout_num = 0;  // payout in units of 1/den of the natural multiplier
  const Rational mult = config.payout.natural_multiplier;
  const mpz_class mult_num(mult.raw().get_num()), mult_den(mult.raw().get_den());
  mpz_class den = 1;
  {
    std::int64_t t = deck.total;
    for (int i = 0; i < 6; ++i) {
      den *= t;
      if (!deck.replace) --t;
    }
  }

  auto remaining_after = [&](int drawn_extra) {
    // Ways to fill the unused tail of a six-card sequence.
    mpz_class w = 1;
    std::int64_t t = deck.total;
    for (int i = 0; i < drawn_extra; ++i) {
      w *= t;
      if (!deck.replace) --t;
    }
    return w;
  };

  for (int p1 = 1; p1 <= 10; ++p1) {
    const auto c1 = deck.take(p1);
    for (int up = 1; up <= 10; ++up) {
      if (deck.n[up] == 0) continue;
      const auto c2 = deck.take(up);
      for (int p2 = 1; p2 <= 10; ++p2) {
        if (deck.n[p2] == 0) continue;
        const auto c3 = deck.take(p2);
        for (int down = 1; down <= 10; ++down) {
          if (deck.n[down] == 0) continue;
          const auto c4 = deck.take(down);
          const mpz_class base = mpz_class(c1) * c2 * c3 * c4;
          Hand player, dealer;
          player.add(p1), player.add(p2);
          dealer.add(up), dealer.add(down);

          auto settle = [&](int outcome, const mpz_class& w) {
            if (outcome > 0) win += w, payout_num += w * mult_den;
            else if (outcome < 0) loss += w, payout_num -= w * mult_den;
            else tie += w;
          };

          if (player.natural() || dealer.natural()) {
            const mpz_class w = base * remaining_after(2);
            if (player.natural() && dealer.natural()) tie += w;
            else if (player.natural()) win += w, payout_num += w * mult_num;
            else loss += w, payout_num -= w * mult_den;
          } else {
            const auto obs = observable_for(config.visibility, player, dealer, up);
            const bool hit = table.decision(obs) == onehit::Decision::Hit;
            auto play_dealer = [&](const Hand& final_player, const mpz_class& w, int cards_left) {
              if (!dealer_hits(config.dealer_policy, dealer)) {
                const int a = final_player.best(), b = dealer.best();
                settle(a > b ? 1 : (a < b ? -1 : 0), w * remaining_after(cards_left));
                return;
              }
              for (int h = 1; h <= 10; ++h) {
                if (deck.n[h] == 0) continue;
                const auto ch = deck.take(h);
                Hand d = dealer;
                d.add(h);
                const mpz_class wh = w * ch * remaining_after(cards_left - 1);
                if (d.bust()) settle(1, wh);
                else {
                  const int a = final_player.best(), b = d.best();
                  settle(a > b ? 1 : (a < b ? -1 : 0), wh);
                }
                deck.put(h);
              }
            };
            if (!hit) {
              play_dealer(player, base, 2);
            } else {
              for (int h = 1; h <= 10; ++h) {
                if (deck.n[h] == 0) continue;
                const auto ch = deck.take(h);
                Hand p = player;
                p.add(h);
                if (p.bust()) settle(-1, base * ch * remaining_after(1));
                else play_dealer(p, base * ch, 1);
                deck.put(h);
              }
            }
          }
          deck.put(down);
        }
        deck.put(p2);
      }
      deck.put(up);
    }
    deck.put(p1);
  }
  onehit::OverallResult r;
  r.win = Rational(mpq_class(win, den));
  r.tie = Rational(mpq_class(tie, den));
  r.loss = Rational(mpq_class(loss, den));
  r.ev = Rational(mpq_class(payout_num, den * mult_den));
  return r;
}

CellEv cell_by_deals(const onehit::ObservableState& observable, const onehit::VariantConfig& config) {
  Deck deck(config.deck);
  Rational hit(0), stand(0), total(0);
  for (int p1 = 1; p1 <= 10; ++p1) {
    const auto c1 = deck.take(p1);
    for (int p2 = 1; p2 <= 10; ++p2) {
      if (deck.n[p2] == 0) continue;
      const auto c2 = deck.take(p2);
      for (int up = 1; up <= 10; ++up) {
        if (deck.n[up] == 0) continue;
        const auto c3 = deck.take(up);
        for (int down = 1; down <= 10; ++down) {
          if (deck.n[down] == 0) continue;
          const auto c4 = deck.take(down);
          Hand player, dealer;
          player.add(p1), player.add(p2);
          dealer.add(up), dealer.add(down);
          const bool consistent = !player.natural() && !(config.peek_on_natural && dealer.natural()) &&
                                  observable_for(config.visibility, player, dealer, up) == observable;
          if (consistent) {
            const Rational w(c1 * c2 * c3 * c4);
            total += w;
            if (dealer.natural()) {
              hit -= w;
              stand -= w;
            } else {
              const onehit::HandLayout pl(p1, p2), dl(up, down);
              const auto rest = onehit::DeckState::fresh(config.deck).without(pl, dl);
              const auto r = onehit::stage1_evs(pl, dl, rest, config.dealer_policy);
              hit += w * r.ev_hit;
              stand += w * r.ev_stand;
            }
          }
          deck.put(down);
        }
        deck.put(up);
      }
      deck.put(p2);
    }
    deck.put(p1);
  }
  return {hit / total, stand / total};
}

}  // namespace oracle
