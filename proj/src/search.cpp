#include "permwordle/search.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "permwordle/counting.hpp"
#include "permwordle/kernels.hpp"

namespace permwordle {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t to_u64(const BigInt& v) { return v.convert_to<std::uint64_t>(); }

// Lexicographic order on equal-size sorted lists, read off their bitsets:
// the list holding the lowest differing element is smaller.
bool bitset_less(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] != b[w]) {
      const std::uint64_t diff = a[w] ^ b[w];
      return (a[w] & diff & (~diff + 1)) != 0;
    }
  }
  return false;
}

Members bitset_members(std::span<const std::uint64_t> words) {
  Members out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits) {
      out.push_back(static_cast<std::uint16_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

// Feedback classes of one guess over a state: members grouped by mask, each
// group in ascending order.
struct Partition {
  std::array<std::uint16_t, 256> count{};
  std::array<std::uint16_t, 256> start{};
  std::array<std::uint8_t, 256> used{};
  int classes = 0;
  bool member = false;
  std::vector<std::uint16_t> order;

  void build(const GameUniverse& u, std::span<const std::uint16_t> s, int guess) {
    for (int c = 0; c < classes; ++c) count[used[c]] = 0;
    classes = 0;
    member = false;
    order.resize(s.size());
    const std::uint8_t full = u.full_mask();
    thread_local std::vector<std::uint8_t> masks;
    masks.resize(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::uint8_t m = u.feedback(guess, s[k]);
      masks[k] = m;
      if (count[m]++ == 0) used[classes++] = m;
      member |= m == full;
    }
    std::uint16_t at = 0;
    for (int c = 0; c < classes; ++c) {
      start[used[c]] = at;
      at = static_cast<std::uint16_t>(at + count[used[c]]);
    }
    std::array<std::uint16_t, 256> fill = start;
    for (std::size_t k = 0; k < s.size(); ++k) order[fill[masks[k]]++] = s[k];
  }

  std::span<const std::uint16_t> members_of(std::uint8_t mask) const {
    return std::span(order).subspan(start[mask], count[mask]);
  }

  // A non-member guess that leaves S in one piece teaches nothing.
  bool stalls() const { return classes == 1 && !member; }
};

}  // namespace

GameUniverse::GameUniverse(int n, int suit_count, std::size_t max_size) : n_(n), suit_count_(suit_count) {
  if (n < 1 || n > kernels::kMaxPackedSize || suit_count < 1 || suit_count > 15) {
    throw std::invalid_argument("search universe needs 1 <= n <= 8 and 1 <= s <= 15");
  }
  const std::uint64_t count = arrangement_count(n, suit_count);
  if (count > max_size) {
    throw BudgetExceeded("search universe of " + std::to_string(count) + " arrangements exceeds the cap of " +
                         std::to_string(max_size));
  }
  elements_ = all_suited_permutations(n, suit_count);
  const std::size_t size = elements_.size();

  std::vector<kernels::Packed> packed(size);
  for (std::size_t i = 0; i < size; ++i) packed[i] = kernels::pack(elements_[i]);
  feedback_.resize(size * size);
  for (std::size_t g = 0; g < size; ++g) {
    kernels::match_masks(packed[g], packed, n, std::span(feedback_).subspan(g * size, size));
  }

  normalize_.resize(size * size);
  std::vector<Card> image(n);
  for (std::size_t g = 0; g < size; ++g) {
    const SuitedPermutation& member = elements_[g];
    for (std::size_t x = 0; x < size; ++x) {
      const SuitedPermutation& t = elements_[x];
      for (int j = 1; j <= n; ++j) {
        image[member(j).value - 1] = {(t(j).suit - member(j).suit + suit_count) % suit_count, t(j).value};
      }
      normalize_[g * size + x] = static_cast<std::uint16_t>(rank(SuitedPermutation(image, suit_count)));
    }
  }
}

int GameUniverse::index_of(const SuitedPermutation& t) const {
  if (t.size() != n_ || t.suit_count() != suit_count_) throw std::invalid_argument("arrangement outside universe");
  return static_cast<int>(rank(t));
}

int GameUniverse::index_of(const Permutation& p) const {
  return index_of(SuitedPermutation::from_plain(p, suit_count_));
}

Members GameUniverse::all_members() const {
  Members all(elements_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::uint16_t>(i);
  return all;
}

std::size_t OptimalSearch::KeyHash::operator()(const std::vector<std::uint64_t>& words) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint64_t w : words) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

OptimalSearch::OptimalSearch(std::shared_ptr<const GameUniverse> universe, SearchOptions options)
    : universe_(std::move(universe)), options_(options) {}

OptimalSearch::OptimalSearch(int n, int suit_count, SearchOptions options)
    : OptimalSearch(std::make_shared<const GameUniverse>(n, suit_count), options) {}

Members OptimalSearch::canonicalize(std::span<const std::uint16_t> members) const {
  if (members.empty()) throw std::invalid_argument("canonicalize: empty state");
  const std::size_t words = (static_cast<std::size_t>(universe_->size()) + 63) / 64;
  std::vector<std::uint64_t> best(words), candidate(words);
  bool have = false;
  for (std::uint16_t g : members) {
    std::fill(candidate.begin(), candidate.end(), 0);
    for (std::uint16_t x : members) {
      const std::uint16_t y = universe_->normalize(g, x);
      candidate[y / 64] |= std::uint64_t{1} << (y % 64);
    }
    if (!have || bitset_less(candidate, best)) {
      best.swap(candidate);
      have = true;
    }
  }
  return bitset_members(best);
}

OptimalSearch::Key OptimalSearch::key_of(const Members& s) const {
  Key key((static_cast<std::size_t>(universe_->size()) + 63) / 64, 0);
  for (std::uint16_t x : s) key[x / 64] |= std::uint64_t{1} << (x % 64);
  return key;
}

Members OptimalSearch::prepare(std::span<const std::uint16_t> members) const {
  if (members.empty()) throw std::invalid_argument("empty state");
  Members s(members.begin(), members.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("state has repeated members");
  if (s.back() >= universe_->size()) throw std::invalid_argument("state member outside universe");
  return options_.canonicalize ? canonicalize(s) : s;
}

void OptimalSearch::begin_call() {
  started_ = Clock::now();
  deadline_ = started_ + options_.budget.time_limit;
}

void OptimalSearch::tick() {
  ++states_visited_;
  if (states_visited_ > options_.budget.max_states) {
    throw SearchBudgetExceeded("search visited more than " + std::to_string(options_.budget.max_states) + " states",
                               stats());
  }
  if ((states_visited_ & 255) == 0 && Clock::now() > deadline_) {
    throw SearchBudgetExceeded("search exceeded its time limit", stats());
  }
}

std::vector<std::uint32_t> OptimalSearch::profile(const Members& s, int depth) {
  const int m = static_cast<int>(s.size());
  depth = std::min(depth, m);
  std::vector<std::uint32_t> best(depth + 1, 0);
  if (depth == 0) return best;
  // One round solves at most the guess itself; a single secret is solved
  // by guessing it.
  if (depth == 1 || m == 1) {
    std::fill(best.begin() + 1, best.end(), 1);
    return best;
  }

  Key key;
  if (options_.memoize) {
    key = key_of(s);
    if (auto it = profile_memo_.find(key); it != profile_memo_.end() && static_cast<int>(it->second.size()) > depth) {
      return {it->second.begin(), it->second.begin() + depth + 1};
    }
  }
  tick();

  Partition part;
  std::vector<std::uint32_t> contribution(depth + 1);
  const std::uint8_t full = universe_->full_mask();
  for (int g = 0; g < universe_->size(); ++g) {
    part.build(*universe_, s, g);
    if (part.stalls()) continue;
    std::fill(contribution.begin() + 1, contribution.end(), part.member ? 1u : 0u);
    contribution[0] = 0;
    for (int c = 0; c < part.classes; ++c) {
      const std::uint8_t mask = part.used[c];
      if (mask == full) continue;
      const auto cls = part.members_of(mask);
      const Members child = options_.canonicalize ? canonicalize(cls) : Members(cls.begin(), cls.end());
      const auto sub = profile(child, depth - 1);
      for (int r = 1; r <= depth; ++r) contribution[r] += sub[std::min<std::size_t>(r - 1, sub.size() - 1)];
    }
    for (int r = 1; r <= depth; ++r) best[r] = std::max(best[r], contribution[r]);
  }
  for (int r = 1; r <= depth; ++r) best[r] = std::max(best[r], best[r - 1]);

  if (options_.memoize) profile_memo_[std::move(key)] = best;
  return best;
}

std::uint32_t OptimalSearch::total(const Members& s) {
  const auto m = static_cast<std::uint32_t>(s.size());
  if (m == 1) return 1;
  if (m == 2) return 3;

  Key key;
  if (options_.memoize) {
    key = key_of(s);
    if (auto it = total_memo_.find(key); it != total_memo_.end()) return it->second;
  }
  tick();

  Partition part;
  const std::uint8_t full = universe_->full_mask();
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (int g = 0; g < universe_->size(); ++g) {
    part.build(*universe_, s, g);
    if (part.stalls()) continue;
    // A class of k secrets costs at least 2k - 1 rounds in total.
    std::uint32_t bound = m;
    for (int c = 0; c < part.classes; ++c) {
      if (part.used[c] != full) bound += 2u * part.count[part.used[c]] - 1u;
    }
    if (bound >= best) continue;
    std::uint32_t sum = m;
    for (int c = 0; c < part.classes && sum < best; ++c) {
      const std::uint8_t mask = part.used[c];
      if (mask == full) continue;
      const auto cls = part.members_of(mask);
      const Members child = options_.canonicalize ? canonicalize(cls) : Members(cls.begin(), cls.end());
      sum += total(child);
    }
    best = std::min(best, sum);
  }

  if (options_.memoize) total_memo_[std::move(key)] = best;
  return best;
}

std::uint64_t OptimalSearch::max_solved_within(std::span<const std::uint16_t> members, int rounds) {
  return max_solved_profile(members, rounds).at(rounds);
}

std::vector<std::uint64_t> OptimalSearch::max_solved_profile(std::span<const std::uint16_t> members,
                                                             int max_rounds) {
  if (max_rounds < 0) throw std::invalid_argument("rounds must be nonnegative");
  std::lock_guard lock(mutex_);
  begin_call();
  const Members s = prepare(members);
  const auto p = profile(s, max_rounds);
  std::vector<std::uint64_t> out(max_rounds + 1);
  for (int r = 0; r <= max_rounds; ++r) out[r] = p[std::min<std::size_t>(r, p.size() - 1)];
  return out;
}

std::uint64_t OptimalSearch::min_expected_total(std::span<const std::uint16_t> members) {
  std::lock_guard lock(mutex_);
  begin_call();
  return total(prepare(members));
}

OptimalSearch::Choice OptimalSearch::best_guess(std::span<const std::uint16_t> members) {
  std::lock_guard lock(mutex_);
  begin_call();
  if (members.empty()) throw std::invalid_argument("empty state");
  Members s(members.begin(), members.end());
  std::sort(s.begin(), s.end());
  const auto m = static_cast<std::uint32_t>(s.size());

  Partition part;
  const std::uint8_t full = universe_->full_mask();
  Choice choice{-1, std::numeric_limits<std::uint64_t>::max()};
  for (int g = 0; g < universe_->size(); ++g) {
    part.build(*universe_, s, g);
    if (part.stalls()) continue;
    std::uint64_t bound = m;
    for (int c = 0; c < part.classes; ++c) {
      if (part.used[c] != full) bound += 2u * part.count[part.used[c]] - 1u;
    }
    if (bound >= choice.total) continue;
    std::uint64_t sum = m;
    for (int c = 0; c < part.classes && sum < choice.total; ++c) {
      const std::uint8_t mask = part.used[c];
      if (mask == full) continue;
      const auto cls = part.members_of(mask);
      sum += total(options_.canonicalize ? canonicalize(cls) : Members(cls.begin(), cls.end()));
    }
    if (sum < choice.total) choice = {g, sum};
  }
  return choice;
}

SearchStats OptimalSearch::stats() const {
  SearchStats st;
  st.states_visited = states_visited_;
  st.memo_entries = profile_memo_.size() + total_memo_.size();
  st.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started_).count());
  return st;
}

void OptimalSearch::clear_memo() {
  std::lock_guard lock(mutex_);
  profile_memo_.clear();
  total_memo_.clear();
}

StateSet canonicalize(std::span<const Permutation> members) {
  if (members.empty()) throw std::invalid_argument("canonicalize: empty state");
  const int n = members.front().size();
  for (const auto& p : members) {
    if (p.size() != n) throw std::invalid_argument("canonicalize: mixed lengths");
  }
  std::vector<Permutation> best;
  for (const auto& g : members) {
    const Permutation g_inv = g.inverse();
    std::vector<Permutation> image;
    image.reserve(members.size());
    for (const auto& x : members) image.push_back(compose(x, g_inv));
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = std::move(image);
  }
  best.erase(std::unique(best.begin(), best.end()), best.end());
  return {n, std::move(best)};
}

DominanceReport dominance_report(int n, int r_max, int suit_count, SearchOptions options) {
  if (r_max < 1) throw std::invalid_argument("r_max must be at least 1");
  if (suit_count > 1 && suit_count * n > kMaxSuitedSearchProduct) {
    throw BudgetExceeded("suited search is limited to s*n <= " + std::to_string(kMaxSuitedSearchProduct));
  }
  const auto start = Clock::now();
  OptimalSearch search(n, suit_count, options);
  const auto profile = search.max_solved_profile(search.universe().all_members(), r_max);

  DominanceReport report;
  report.n = n;
  report.suit_count = suit_count;
  report.r_max = r_max;
  report.dominant = true;
  std::uint64_t cumulative = 0;
  for (int r = 1; r <= r_max; ++r) {
    cumulative += to_u64(suited_count_D(suit_count, n, r - 1));
    report.cycle_cdf.push_back(cumulative);
    report.optimal_cdf.push_back(profile[r]);
    report.gaps.push_back(static_cast<std::int64_t>(profile[r]) - static_cast<std::int64_t>(cumulative));
    report.dominant = report.dominant && profile[r] == cumulative;
  }
  report.states_visited = search.stats().states_visited;
  report.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  return report;
}

ExpectedReport expected_report(int n, int suit_count, SearchOptions options) {
  if (suit_count > 1 && suit_count * n > kMaxSuitedSearchProduct) {
    throw BudgetExceeded("suited search is limited to s*n <= " + std::to_string(kMaxSuitedSearchProduct));
  }
  const auto start = Clock::now();
  OptimalSearch search(n, suit_count, options);
  ExpectedReport report;
  report.n = n;
  report.suit_count = suit_count;
  report.secrets = arrangement_count(n, suit_count);
  report.optimal_total = search.min_expected_total(search.universe().all_members());
  for (int r = 0; r < suit_count * n; ++r) report.cycle_total += (r + 1) * to_u64(suited_count_D(suit_count, n, r));
  report.states_visited = search.stats().states_visited;
  report.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
  return report;
}

Members consistent_members(const GameUniverse& universe, std::span<const Step<SuitedPermutation>> history) {
  std::vector<std::pair<int, std::uint8_t>> constraints;
  for (const auto& step : history) {
    constraints.emplace_back(universe.index_of(step.guess), static_cast<std::uint8_t>(step.feedback.mask()));
  }
  Members out;
  for (int x = 0; x < universe.size(); ++x) {
    bool ok = true;
    for (const auto& [g, mask] : constraints) {
      if (universe.feedback(g, x) != mask) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<std::uint16_t>(x));
  }
  return out;
}

OptimalStrategy::OptimalStrategy(std::shared_ptr<OptimalSearch> search) : search_(std::move(search)) {
  if (search_->universe().suit_count() != 1) throw std::invalid_argument("plain optimal strategy needs s = 1");
}

Permutation OptimalStrategy::next_guess(std::span<const Step<Permutation>> history) const {
  // Every first guess is equally good on the full set.
  if (history.empty()) return Permutation::identity(search_->universe().n());
  std::vector<Step<SuitedPermutation>> suited;
  suited.reserve(history.size());
  for (const auto& step : history) suited.push_back({SuitedPermutation::from_plain(step.guess), step.feedback});
  const Members live = consistent_members(search_->universe(), suited);
  if (live.empty()) throw std::invalid_argument("history is inconsistent with every secret");
  return search_->universe().element(search_->best_guess(live).guess).values();
}

SuitedOptimalStrategy::SuitedOptimalStrategy(std::shared_ptr<OptimalSearch> search) : search_(std::move(search)) {}

SuitedPermutation SuitedOptimalStrategy::next_guess(std::span<const Step<SuitedPermutation>> history) const {
  if (history.empty()) return search_->universe().element(0);
  const Members live = consistent_members(search_->universe(), history);
  if (live.empty()) throw std::invalid_argument("history is inconsistent with every secret");
  return search_->universe().element(search_->best_guess(live).guess);
}

}  // namespace permwordle
