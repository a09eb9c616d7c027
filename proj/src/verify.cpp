#include "permwordle/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "permwordle/counting.hpp"
#include "permwordle/kernels.hpp"
#include "permwordle/search.hpp"
#include "permwordle/strategy.hpp"

namespace permwordle {

namespace {

using Rng = std::mt19937_64;

// An empty string means the check passed.
using Check = std::function<std::string(Rng&)>;

struct NamedCheck {
  const char* name;
  Check run;
};

struct Suite {
  const char* name;
  std::vector<NamedCheck> checks;
};

template <class... Parts>
std::string fail(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::move(v));
}

FeedbackSet image(const Permutation& p, const FeedbackSet& set) {
  std::vector<int> out;
  for (int i : set.positions()) out.push_back(p(i));
  return FeedbackSet(p.size(), std::move(out));
}

FeedbackSet fixed_points(const Permutation& p) {
  std::vector<int> out;
  for (int i = 1; i <= p.size(); ++i) {
    if (p(i) == i) out.push_back(i);
  }
  return FeedbackSet(p.size(), std::move(out));
}

std::uint64_t u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// ---- perm-core ----

std::string feedback_fixed_points(Rng& rng) {
  auto check = [](const Permutation& g, const Permutation& s) -> std::string {
    const FeedbackSet fb = feedback(g, s);
    if (fixed_points(compose(s, g.inverse())) != image(g, fb)) {
      return fail("g=", g.to_string(), " secret=", s.to_string());
    }
    return {};
  };
  for (int n = 0; n <= 5; ++n) {
    const auto all = all_permutations(n);
    for (const auto& g : all) {
      for (const auto& s : all) {
        if (auto e = check(g, s); !e.empty()) return e;
      }
    }
  }
  for (int n = 6; n <= 7; ++n) {
    for (int t = 0; t < 2000; ++t) {
      if (auto e = check(random_permutation(n, rng), random_permutation(n, rng)); !e.empty()) return e;
    }
  }
  return {};
}

std::string translation_invariance(Rng& rng) {
  for (int n = 1; n <= 4; ++n) {
    const auto all = all_permutations(n);
    for (const auto& g : all) {
      for (const auto& s : all) {
        const FeedbackSet fb = feedback(g, s);
        for (const auto& tau : all) {
          if (feedback(compose(tau, g), compose(tau, s)) != fb) {
            return fail("value relabel tau=", tau.to_string(), " g=", g.to_string(), " secret=", s.to_string());
          }
          if (feedback(compose(g, tau), compose(s, tau)) != image(tau.inverse(), fb)) {
            return fail("right composition tau=", tau.to_string(), " g=", g.to_string(), " secret=", s.to_string());
          }
        }
      }
    }
  }
  for (int t = 0; t < 2000; ++t) {
    const int n = 5 + t % 4;
    const auto g = random_permutation(n, rng), s = random_permutation(n, rng), tau = random_permutation(n, rng);
    if (feedback(compose(tau, g), compose(tau, s)) != feedback(g, s)) {
      return fail("value relabel tau=", tau.to_string(), " g=", g.to_string(), " secret=", s.to_string());
    }
  }
  return {};
}

template <class F>
std::string for_suited(F&& body) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 1; n <= 4; ++n) {
      for (const auto& t : all_suited_permutations(n, s)) {
        if (auto e = body(t); !e.empty()) return e;
      }
    }
  }
  return {};
}

std::string phi_bijection(Rng&) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 0; n <= 4; ++n) {
      if (!phi(SuitedPermutation::identity(n, s)).is_identity()) return fail("phi(identity) s=", s, " n=", n);
    }
  }
  return for_suited([](const SuitedPermutation& t) -> std::string {
    // Permutation's constructor rejects anything but a bijection.
    Permutation p;
    try {
      p = phi(t);
    } catch (const std::exception& e) {
      return fail(t.to_string(), ": ", e.what());
    }
    if (p.size() != t.suit_count() * t.size()) return fail(t.to_string(), ": wrong length");
    // Membership in the image: each column keeps its value and rotates suits.
    const int n = t.size(), s = t.suit_count();
    for (int j = 1; j <= n; ++j) {
      for (int c = 0; c < s; ++c) {
        const auto pair = PairIndex::from_ordinal(p(PairIndex{c, j}.ordinal(n)), n);
        if (pair.value != t(j).value || pair.suit != (t(j).suit + c) % s) return fail(t.to_string(), ": not in image");
      }
    }
    return {};
  });
}

std::string column_exceedance_prefix(Rng&) {
  return for_suited([](const SuitedPermutation& t) -> std::string {
    const int n = t.size(), s = t.suit_count();
    const Permutation p = phi(t);
    for (int j = 1; j <= n; ++j) {
      const int l = column_exceedances(t, j);
      for (int c = 0; c < s; ++c) {
        const int at = PairIndex{c, j}.ordinal(n);
        if ((p(at) > at) != (c < l)) return fail(t.to_string(), " column ", j, ": not a prefix of length ", l);
      }
      if (((l - (s - t(j).suit)) % s + s) % s != 0) return fail(t.to_string(), " column ", j, ": count not s - c_j mod s");
    }
    return {};
  });
}

std::string phi_exceedance_sum(Rng&) {
  return for_suited([](const SuitedPermutation& t) -> std::string {
    int sum = 0;
    for (int j = 1; j <= t.size(); ++j) sum += column_exceedances(t, j);
    if (sum != exceedances(phi(t))) return fail(t.to_string(), ": exc(phi) = ", exceedances(phi(t)), ", columns ", sum);
    return {};
  });
}

// ---- strategy-engine ----

std::string rounds_law(Rng&) {
  for (int n = 1; n <= 8; ++n) {
    const CycleStrategy cycle(n);
    for (const auto& s : all_permutations(n)) {
      const auto t = play(cycle, s, default_max_rounds(n));
      if (t.rounds() != 1 + exceedances(s)) return fail("secret ", s.to_string(), ": ", t.rounds(), " rounds");
    }
  }
  return {};
}

std::string eulerian_distribution(Rng&) {
  for (int n = 1; n <= 8; ++n) {
    const auto packed = cycle_round_distribution(n);
    for (int k = 0; k < n; ++k) {
      if (packed.counts.at(k + 1) != u64(eulerian_A(n, k))) return fail("n=", n, " k=", k);
    }
    if (n <= 7 && round_distribution(n, CycleStrategy(n)) != packed) return fail("n=", n, ": play and packed paths differ");
  }
  return {};
}

std::string r_chain(Rng&) {
  for (int n = 1; n <= 6; ++n) {
    const CycleStrategy cycle(n);
    for (const auto& s : all_permutations(n)) {
      const auto t = play(cycle, s, default_max_rounds(n));
      const auto r1 = right_set(t.steps[0].guess, s);
      if (image(s.inverse(), r1) != exceedance_set(s)) return fail("secret ", s.to_string(), ": R_1 does not map to Exc");
      for (int k = 0; k + 1 < t.rounds(); ++k) {
        const auto a = right_set(t.steps[k].guess, s), b = right_set(t.steps[k + 1].guess, s);
        const bool subset = std::includes(a.positions().begin(), a.positions().end(), b.positions().begin(),
                                          b.positions().end());
        if (!subset || b.size() != a.size() - 1) return fail("secret ", s.to_string(), " round ", k + 1);
      }
      if (!right_set(t.steps.back().guess, s).empty()) return fail("secret ", s.to_string(), ": final R nonempty");
    }
  }
  return {};
}

std::string suited_transfer(Rng&) {
  return for_suited([](const SuitedPermutation& t) -> std::string {
    const int n = t.size(), s = t.suit_count();
    const auto suited = play(SuitedCycleStrategy(n, s), t, default_max_rounds(n, s));
    const auto plain = play(CycleStrategy(s * n), phi(t), default_max_rounds(s * n));
    if (suited.rounds() != plain.rounds()) return fail(t.to_string(), ": round counts differ");
    for (int r = 0; r < suited.rounds(); ++r) {
      if (phi(suited.steps[r].guess) != plain.steps[r].guess) return fail(t.to_string(), ": round ", r + 1);
    }
    return {};
  });
}

std::string suited_rounds(Rng&) {
  return for_suited([](const SuitedPermutation& t) -> std::string {
    const int n = t.size(), s = t.suit_count();
    const auto game = play(SuitedCycleStrategy(n, s), t, default_max_rounds(n, s));
    if (game.rounds() != 1 + exceedances(phi(t))) return fail(t.to_string(), ": ", game.rounds(), " rounds");
    return {};
  });
}

std::string mean_rounds(Rng&) {
  for (int n = 1; n <= 8; ++n) {
    const auto d = cycle_round_distribution(n);
    if (2 * d.total_rounds() != static_cast<std::uint64_t>(n + 1) * d.total()) return fail("n=", n);
  }
  return {};
}

std::string relabel_equivariance(Rng& rng) {
  for (int n = 1; n <= 5; ++n) {
    const CycleStrategy cycle(n);
    for (const auto& s : all_permutations(n)) {
      const auto base = play(cycle, s, default_max_rounds(n));
      for (int t = 0; t < 3; ++t) {
        const Permutation tau = random_permutation(n, rng);
        const RelabeledStrategy relabeled(cycle, tau);
        const auto moved = play(relabeled, compose(tau, s), default_max_rounds(n));
        if (moved.rounds() != base.rounds()) return fail("secret ", s.to_string(), " tau ", tau.to_string());
        for (int r = 0; r < base.rounds(); ++r) {
          if (moved.steps[r].feedback != base.steps[r].feedback) {
            return fail("secret ", s.to_string(), " tau ", tau.to_string(), " round ", r + 1);
          }
        }
      }
    }
  }
  return {};
}

std::string transcript_invariants(Rng& rng) {
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 9;
    const int s = 1 + t % 3;
    std::vector<Card> cards;
    const Permutation values = random_permutation(n, rng);
    for (int i = 1; i <= n; ++i) cards.push_back({static_cast<int>(rng() % s), values(i)});
    const SuitedPermutation secret(cards, s);
    const auto game = play(SuitedCycleStrategy(n, s), secret, default_max_rounds(n, s));
    for (int r = 0; r < game.rounds(); ++r) {
      if (game.steps[r].feedback != suited_feedback(game.steps[r].guess, secret)) return fail(secret.to_string(), " round ", r + 1);
      if (game.steps[r].feedback.is_full() != (r + 1 == game.rounds())) return fail(secret.to_string(), ": early or missing solve");
    }
  }
  return {};
}

// ---- combinatorics ----

std::string row_sums(Rng&) {
  for (int n = 0; n <= 15; ++n) {
    BigInt a = 0;
    for (int k = 0; k < std::max(n, 1); ++k) a += eulerian_A(n, k);
    if (a != factorial(n)) return fail("A row ", n);
    for (int s = 1; s <= 4; ++s) {
      BigInt d = 0, c = 0;
      for (int r = 0; r < std::max(s * n, 1); ++r) d += suited_count_D(s, n, r);
      for (int j = 0; j <= n * (s - 1); ++j) c += pebble_count_C(s, n, j);
      if (d != power(s, n) * factorial(n)) return fail("D_", s, " row ", n);
      if (c != power(s, n)) return fail("C_", s, " row ", n);
    }
  }
  return {};
}

std::string symmetries(Rng&) {
  for (int n = 1; n <= 15; ++n) {
    for (int k = 0; k < n; ++k) {
      if (eulerian_A(n, k) != eulerian_A(n, n - k - 1)) return fail("A(", n, ",", k, ")");
    }
    for (int s = 1; s <= 4; ++s) {
      for (int r = 0; r < s * n; ++r) {
        if (suited_count_D(s, n, r) != suited_count_D(s, n, s * n - r - 1)) return fail("D_", s, "(", n, ",", r, ")");
      }
    }
  }
  return {};
}

std::string suited_oracle(Rng&) {
  for (int s = 1; s <= 4; ++s) {
    for (int n = 1; n <= kernels::kMaxPackedSize && arrangement_count(n, s) <= 1'000'000; ++n) {
      const auto d = cycle_round_distribution(n, s);
      for (int r = 0; r < s * n; ++r) {
        if (d.counts.at(r + 1) != u64(suited_count_D(s, n, r))) return fail("s=", s, " n=", n, " r=", r);
      }
      if (d.total() != arrangement_count(n, s)) return fail("s=", s, " n=", n, ": total");
    }
  }
  return {};
}

std::string exceedance_oracle(Rng&) {
  for (int n = 0; n <= 8; ++n) {
    std::vector<std::uint64_t> counts(std::max(n, 1), 0);
    for (const auto& p : all_permutations(n)) ++counts[exceedances(p)];
    for (int k = 0; k < static_cast<int>(counts.size()); ++k) {
      if (counts[k] != u64(eulerian_A(n, k))) return fail("n=", n, " k=", k);
    }
  }
  return {};
}

std::string suited_cumulative(Rng&) {
  for (int s = 1; s <= 3; ++s) {
    for (int n = 0; n <= 6; ++n) {
      BigInt suited = 0, plain = 0;
      for (int r = 1; r <= n; ++r) {
        for (int t = 0; t < s; ++t) suited += suited_count_D(s, n, s * (r - 1) + t);
        plain += eulerian_A(n, r - 1);
        if (suited != power(s, n) * plain) return fail("s=", s, " n=", n, " r=", r);
      }
    }
  }
  return {};
}

std::string window_identity(Rng&) {
  for (int s = 1; s <= 4; ++s) {
    for (int n = 0; n <= 12; ++n) {
      for (int k = -1; k <= n; ++k) {
        if (window_sum_F(s, n, s * k) != power(s, n) * eulerian_A(n, k)) return fail("s=", s, " n=", n, " k=", k);
      }
    }
  }
  return {};
}

std::string type_b(Rng&) {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      if (window_sum_F(2, n, 2 * k - 1) != eulerian_B(n + 1, k + 1)) return fail("n=", n, " k=", k);
    }
  }
  return {};
}

std::string convolution(Rng&) {
  for (int s = 1; s <= 4; ++s) {
    for (int n = 0; n <= 12; ++n) {
      for (const auto& term : convolution_check(s, n)) {
        if (!term.ok()) return fail("s=", s, " n=", n, " k=", term.k);
      }
    }
  }
  return {};
}

std::string pebbles(Rng&) {
  for (int n = 0; n <= 12; ++n) {
    for (int j = -1; j <= n + 1; ++j) {
      if (pebble_count_C(2, n, j) != binomial(n, j)) return fail("C_2(", n, ",", j, ")");
      if (pebble_count_C(1, n, j) != (j == 0 ? 1 : 0)) return fail("C_1(", n, ",", j, ")");
    }
  }
  return {};
}

std::string window_routes(Rng&) {
  for (int s = 1; s <= 4; ++s) {
    const auto bad = window_sum_divergences(s, 12);
    if (!bad.empty()) return fail("s=", s, " diverges at n=", bad[0].n, " m=", bad[0].k);
  }
  return {};
}

std::string d1_is_a(Rng&) {
  for (int n = 0; n <= 10; ++n) {
    for (int r = -1; r <= n; ++r) {
      if (suited_count_D(1, n, r) != eulerian_A(n, r)) return fail("n=", n, " r=", r);
    }
  }
  return {};
}

// ---- optimal-search ----

Members random_subset(int universe, int max_size, Rng& rng) {
  std::vector<std::uint16_t> all(universe);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  const int k = 1 + static_cast<int>(rng() % std::min(max_size, universe));
  Members out(all.begin(), all.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

std::string profile_shape(Rng& rng) {
  OptimalSearch search(4);
  for (int t = 0; t < 40; ++t) {
    const Members s = random_subset(search.universe().size(), 12, rng);
    const auto p = search.max_solved_profile(s, 6);
    if (p[0] != 0) return fail("V(S,0) != 0");
    for (int r = 1; r <= 6; ++r) {
      if (p[r] < p[r - 1] || p[r] > s.size()) return fail("|S|=", s.size(), " r=", r);
    }
  }
  return {};
}

std::string canonical_transparency(Rng& rng) {
  for (int n = 3; n <= 4; ++n) {
    auto universe = std::make_shared<const GameUniverse>(n, 1);
    OptimalSearch on(universe);
    OptimalSearch off(universe, SearchOptions{false, true, {}});
    for (int t = 0; t < 15; ++t) {
      const Members s = random_subset(universe->size(), 7, rng);
      if (on.max_solved_profile(s, 4) != off.max_solved_profile(s, 4)) return fail("n=", n, " V differs");
      if (on.min_expected_total(s) != off.min_expected_total(s)) return fail("n=", n, " T differs");
    }
  }
  return {};
}

std::string memo_transparency(Rng&) {
  for (int n = 1; n <= 4; ++n) {
    auto universe = std::make_shared<const GameUniverse>(n, 1);
    OptimalSearch memo(universe);
    OptimalSearch bare(universe, SearchOptions{true, false, {}});
    const Members full = universe->all_members();
    if (memo.max_solved_profile(full, n) != bare.max_solved_profile(full, n)) return fail("n=", n, " V differs");
    if (n <= 3 && memo.min_expected_total(full) != bare.min_expected_total(full)) return fail("n=", n, " T differs");
  }
  return {};
}

std::string dominates_cycle(Rng&) {
  const std::pair<int, int> cases[] = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {3, 2}, {2, 3}};
  for (auto [s, n] : cases) {
    const auto report = dominance_report(n, s * n, s);
    for (std::size_t r = 0; r < report.gaps.size(); ++r) {
      if (report.gaps[r] < 0) return fail("s=", s, " n=", n, " r=", r + 1);
    }
  }
  return {};
}

std::string canonical_orbit(Rng& rng) {
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 4;
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<Permutation> s;
    for (int i = 0; i < k; ++i) s.push_back(random_permutation(n, rng));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const StateSet c = canonicalize(s);
    if (!std::binary_search(c.members.begin(), c.members.end(), Permutation::identity(n))) return fail("no identity");
    const Permutation tau = random_permutation(n, rng);
    std::vector<Permutation> moved;
    for (const auto& x : s) moved.push_back(compose(x, tau));
    if (canonicalize(moved).members != c.members) return fail("orbit n=", n);
  }
  OptimalSearch search(4);
  const auto& u = search.universe();
  for (int t = 0; t < 50; ++t) {
    const Members s = random_subset(u.size(), 8, rng);
    std::vector<Permutation> perms;
    for (auto i : s) perms.push_back(u.element(i).values());
    std::vector<Permutation> fast;
    for (auto i : search.canonicalize(s)) fast.push_back(u.element(i).values());
    if (canonicalize(perms).members != fast) return fail("indexed and direct forms differ");
  }
  return {};
}

std::string expected_total(Rng&) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = expected_report(n);
    if (2 * r.optimal_total != static_cast<std::uint64_t>(n + 1) * r.secrets) return fail("n=", n, ": T=", r.optimal_total);
  }
  return {};
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"perm-core",
       {{"feedback-fixed-points", feedback_fixed_points},
        {"translation-invariance", translation_invariance},
        {"phi-bijection", phi_bijection},
        {"column-exceedance-prefix", column_exceedance_prefix},
        {"phi-exceedance-sum", phi_exceedance_sum}}},
      {"strategy-engine",
       {{"rounds-law", rounds_law},
        {"eulerian-distribution", eulerian_distribution},
        {"r-chain", r_chain},
        {"suited-transfer", suited_transfer},
        {"suited-rounds", suited_rounds},
        {"mean-rounds", mean_rounds},
        {"relabel-equivariance", relabel_equivariance},
        {"transcript-invariants", transcript_invariants}}},
      {"combinatorics",
       {{"row-sums", row_sums},
        {"symmetries", symmetries},
        {"suited-oracle", suited_oracle},
        {"exceedance-oracle", exceedance_oracle},
        {"suited-cumulative", suited_cumulative},
        {"window-identity", window_identity},
        {"type-b", type_b},
        {"convolution", convolution},
        {"pebbles", pebbles},
        {"window-routes", window_routes},
        {"d1-is-a", d1_is_a}}},
      {"optimal-search",
       {{"profile-shape", profile_shape},
        {"canonical-transparency", canonical_transparency},
        {"memo-transparency", memo_transparency},
        {"dominates-cycle", dominates_cycle},
        {"canonical-orbit", canonical_orbit},
        {"expected-total", expected_total}}},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.push_back(s.name);
  return out;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  for (const auto& name : options.suites) {
    const auto& all = suites();
    if (std::none_of(all.begin(), all.end(), [&](const Suite& s) { return name == s.name; })) {
      throw std::invalid_argument("unknown suite '" + name + "'");
    }
  }
  std::vector<CheckResult> out;
  for (const auto& suite : suites()) {
    if (!options.suites.empty() &&
        std::find(options.suites.begin(), options.suites.end(), suite.name) == options.suites.end()) {
      continue;
    }
    for (const auto& check : suite.checks) {
      // Each check gets its own stream so results do not depend on which
      // suites were selected.
      Rng rng(options.seed ^ std::hash<std::string>{}(std::string(suite.name) + "/" + check.name));
      CheckResult r{suite.name, check.name, false, {}};
      try {
        r.detail = check.run(rng);
        r.passed = r.detail.empty();
      } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace permwordle
