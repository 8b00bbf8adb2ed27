#include "onehit/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

namespace onehit {

namespace {

// Row index for player states: hard 4..20 -> 0..16, soft 12..20 -> 17..25.
int state_index(const HandState& h) { return h.soft ? 17 + (h.total - 12) : h.total - 4; }

struct Tally {
  std::int64_t trials = 0, wins = 0, ties = 0, losses = 0, rejected = 0;
  double sum = 0, sum_sq = 0;
};

class Shoe {
 public:
  Shoe(DeckModel model, std::mt19937_64& rng) : rng_(rng), finite_(model.is_finite()) {
    const auto w = DeckState::fresh(model).weights();
    std::copy(w.begin(), w.end(), counts_.begin());
    for (auto c : counts_) total_ += c;
    fresh_ = counts_;
    fresh_total_ = total_;
  }

  void reset() {
    counts_ = fresh_;
    total_ = fresh_total_;
  }

  CardValue draw() {
    std::uniform_int_distribution<std::int64_t> pick(0, total_ - 1);
    std::int64_t k = pick(rng_);
    std::size_t v = 0;
    while (k >= counts_[v]) k -= counts_[v++];
    if (finite_) {
      --counts_[v];
      --total_;
    }
    return CardValue(static_cast<int>(v) + 1);
  }

 private:
  std::mt19937_64& rng_;
  bool finite_;
  std::array<std::int64_t, 10> counts_{}, fresh_{};
  std::int64_t total_ = 0, fresh_total_ = 0;
};

struct DecisionGrid {
  // [player state][dealer column]; column meaning depends on visibility.
  std::array<std::array<std::int8_t, 26>, 26> hit{};

  int column(Visibility v, const HandState& dealer, CardValue up) const {
    switch (v) {
      case Visibility::TwoUp: return state_index(dealer);
      case Visibility::OneUp: return up.value() - 1;
      case Visibility::NoUp: return 0;
    }
    return 0;
  }
};

DecisionGrid make_grid(const StrategyTable& table) {
  DecisionGrid g;
  for (auto& row : g.hit) row.fill(-1);
  for (const auto& cell : table.cells()) {
    const auto& d = cell.observable.dealer;
    int col = 0;
    if (d.kind == DealerInfo::Kind::BothCards) col = state_index(d.hand);
    if (d.kind == DealerInfo::Kind::UpCard) col = d.up.value() - 1;
    g.hit[state_index(cell.observable.player)][col] = cell.decision == Decision::Hit ? 1 : 0;
  }
  return g;
}

void run_chunk(const VariantConfig& config, const DecisionGrid& grid, const std::optional<ObservableState>& condition,
               std::int64_t trials, std::uint64_t seed, Tally& out) {
  std::mt19937_64 rng(seed);
  Shoe shoe(config.deck, rng);
  const double natural_pay = config.payout.natural_multiplier.to_double();
  const auto vis = config.visibility;

  for (std::int64_t t = 0; t < trials; ++t) {
    shoe.reset();
    const CardValue p1 = shoe.draw(), d1 = shoe.draw(), p2 = shoe.draw(), d2 = shoe.draw();
    const HandState player = evaluate_layout(HandLayout(p1, p2));
    const HandState dealer = evaluate_layout(HandLayout(d1, d2));
    // d1 is the up-card.

    if (condition) {
      bool match = !player.natural && player == condition->player;
      if (match) {
        const auto& info = condition->dealer;
        if (info.kind == DealerInfo::Kind::BothCards) match = !dealer.natural && dealer == info.hand;
        else if (info.kind == DealerInfo::Kind::UpCard)
          match = d1 == info.up && (!config.peek_on_natural || !dealer.natural);
        else match = !config.peek_on_natural || !dealer.natural;
      }
      if (!match) {
        ++out.rejected;
        continue;
      }
    }

    double pay = 0;
    if (player.natural || dealer.natural) {
      if (player.natural && dealer.natural) pay = 0;
      else if (player.natural) pay = natural_pay;
      else pay = -1;
    } else {
      HandState p = player;
      bool bust = false;
      if (grid.hit[state_index(player)][grid.column(vis, dealer, d1)] == 1) {
        auto next = add_card(p, shoe.draw());
        if (next) p = *next;
        else bust = true;
      }
      if (bust) {
        pay = -1;
      } else {
        HandState d = dealer;
        bool dealer_bust = false;
        if (dealer_must_hit(config.dealer_policy, d)) {
          auto next = add_card(d, shoe.draw());
          if (next) d = *next;
          else dealer_bust = true;
        }
        if (dealer_bust || p.total > d.total) pay = 1;
        else if (p.total < d.total) pay = -1;
        else pay = 0;
      }
    }
    ++out.trials;
    if (pay > 0) ++out.wins;
    else if (pay < 0) ++out.losses;
    else ++out.ties;
    out.sum += pay;
    out.sum_sq += pay * pay;
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SimReport simulate(const VariantConfig& config, const StrategyTable& table, const SimOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (options.chunks < 1) throw std::invalid_argument("chunks must be at least 1");
  const VariantConfig& tc = table.config();
  if (tc.visibility != config.visibility || !(tc.deck == config.deck) || !(tc.dealer_policy == config.dealer_policy))
    throw std::invalid_argument("strategy table was built for a different variant: " + tc.label());

  const DecisionGrid grid = make_grid(table);
  const int chunks = options.chunks;
  std::vector<Tally> tallies(static_cast<std::size_t>(chunks));
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(chunks), options.trials / chunks);
  for (std::int64_t i = 0; i < options.trials % chunks; ++i) ++sizes[static_cast<std::size_t>(i)];

  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, chunks);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int c = w; c < chunks; c += threads) {
        const auto i = static_cast<std::size_t>(c);
        run_chunk(config, grid, options.condition, sizes[i], splitmix64(options.seed + static_cast<std::uint64_t>(c)),
                  tallies[i]);
      }
    });
  }
  for (auto& t : pool) t.join();

  SimReport r;
  r.seed = options.seed;
  r.chunks = chunks;
  r.algorithm = "mt19937_64/splitmix64-chunks";
  double sum = 0, sum_sq = 0;
  for (const auto& t : tallies) {
    r.trials += t.trials;
    r.wins += t.wins;
    r.ties += t.ties;
    r.losses += t.losses;
    r.rejected += t.rejected;
    sum += t.sum;
    sum_sq += t.sum_sq;
  }
  if (r.trials > 0) {
    const double n = static_cast<double>(r.trials);
    r.mean_payout = sum / n;
    const double var = r.trials > 1 ? std::max(0.0, (sum_sq - n * r.mean_payout * r.mean_payout) / (n - 1)) : 0.0;
    r.std_error = std::sqrt(var / n);
  }
  return r;
}

std::string SimReport::to_json() const {
  nlohmann::json j{{"trials", trials},       {"wins", wins},     {"ties", ties},
                   {"losses", losses},       {"rejected", rejected},
                   {"mean_payout", mean_payout}, {"std_error", std_error}, {"seed", seed},
                   {"chunks", chunks},       {"algorithm", algorithm}};
  return j.dump();
}

}  // namespace onehit
