#include "combs/lambda.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace combs {

namespace {

auto lbeta(double x, double y) -> double { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

auto log_binomial(std::size_t b, std::size_t k) -> double {
  return std::lgamma(static_cast<double>(b) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(b - k) + 1.0);
}

auto binomial(std::size_t b, std::size_t k) -> double {
  auto r = 1.0;
  for (auto i = std::size_t{1}; i <= k; ++i) {
    r = r * static_cast<double>(b - k + i) / static_cast<double>(i);
  }
  return r;
}

void check_rate_args(std::size_t b, std::size_t k) {
  if (not(2 <= k and k <= b)) {
    throw std::out_of_range("rates need 2 <= k <= b");
  }
}

void check_component(const Lambda_component& c) {
  if (not(c.mass > 0.0) or not std::isfinite(c.mass)) {
    throw std::invalid_argument("Lambda component mass must be positive and finite");
  }
  if (c.kind == Lambda_component::Kind::atom and not(0.0 <= c.location and c.location <= 1.0)) {
    throw std::invalid_argument("Lambda atom must lie in [0, 1]");
  }
  if (c.kind == Lambda_component::Kind::beta and not(c.a > 0.0 and c.b > 0.0 and std::isfinite(c.a) and std::isfinite(c.b))) {
    throw std::invalid_argument("Beta parameters must be positive");
  }
}

auto trim(const std::string& s) -> std::string {
  auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) {
    return {};
  }
  auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

auto parse_number(const std::string& text, const std::string& spec) -> double {
  auto t = trim(text);
  auto used = std::size_t{0};
  auto value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + t + "' in Lambda spec '" + spec + "'");
  }
  if (used != t.size()) {
    throw std::invalid_argument("bad number '" + t + "' in Lambda spec '" + spec + "'");
  }
  return value;
}

// Split on commas outside brackets.
auto split_top_level(const std::string& s) -> std::vector<std::string> {
  auto out = std::vector<std::string>{};
  auto depth = 0;
  auto cur = std::string{};
  for (auto ch : s) {
    if (ch == '[') {
      ++depth;
    } else if (ch == ']') {
      --depth;
    }
    if (ch == ',' and depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

auto starts_numeric(const std::string& s) -> bool {
  auto t = trim(s);
  return not t.empty() and (std::isdigit(static_cast<unsigned char>(t[0])) or t[0] == '.' or t[0] == '+' or t[0] == '-');
}

}  // namespace

auto Lambda_measure::atom(double location, double mass) -> Lambda_measure {
  auto c = Lambda_component{Lambda_component::Kind::atom, location, 1.0, 1.0, mass};
  check_component(c);
  auto m = Lambda_measure{};
  m.components_.push_back(c);
  return m;
}

auto Lambda_measure::beta(double a, double b, double mass) -> Lambda_measure {
  auto c = Lambda_component{Lambda_component::Kind::beta, 0.0, a, b, mass};
  check_component(c);
  auto m = Lambda_measure{};
  m.components_.push_back(c);
  return m;
}

auto Lambda_measure::mixture(const std::vector<Lambda_measure>& parts) -> Lambda_measure {
  auto m = Lambda_measure{};
  for (const auto& p : parts) {
    m.components_.insert(m.components_.end(), p.components_.begin(), p.components_.end());
  }
  if (m.components_.empty()) {
    throw std::invalid_argument("empty Lambda mixture");
  }
  return m;
}

auto Lambda_measure::scaled(double factor) const -> Lambda_measure {
  auto m = *this;
  for (auto& c : m.components_) {
    c.mass *= factor;
    check_component(c);
  }
  return m;
}

auto Lambda_measure::total_mass() const -> double {
  auto total = 0.0;
  for (const auto& c : components_) {
    total += c.mass;
  }
  return total;
}

auto Lambda_measure::parse(const std::string& spec) -> Lambda_measure {
  auto s = trim(spec);
  // Trailing "*mass" outside brackets.
  auto depth = 0;
  auto star = std::string::npos;
  for (auto i = std::size_t{0}; i < s.size(); ++i) {
    if (s[i] == '[') {
      ++depth;
    } else if (s[i] == ']') {
      --depth;
    } else if (s[i] == '*' and depth == 0) {
      star = i;
    }
  }
  if (star != std::string::npos) {
    auto mass = parse_number(s.substr(star + 1), spec);
    if (not(mass > 0.0) or not std::isfinite(mass)) {
      throw std::invalid_argument("Lambda mass must be positive in '" + spec + "'");
    }
    return parse(s.substr(0, star)).scaled(mass);
  }
  if (s == "kingman") {
    return kingman();
  }
  if (s == "uniform") {
    return uniform();
  }
  if (s.rfind("dirac:", 0) == 0) {
    return atom(parse_number(s.substr(6), spec));
  }
  if (s.rfind("beta:", 0) == 0) {
    auto args = split_top_level(s.substr(5));
    if (args.size() != 2) {
      throw std::invalid_argument("beta needs two parameters in '" + spec + "'");
    }
    return beta(parse_number(args[0], spec), parse_number(args[1], spec));
  }
  if (s.rfind("mix:[", 0) == 0 and s.back() == ']') {
    auto tokens = split_top_level(s.substr(5, s.size() - 6));
    // "beta:2,2" was split at its inner comma; glue numeric tails back on.
    auto items = std::vector<std::string>{};
    for (const auto& t : tokens) {
      if (starts_numeric(t) and not items.empty()) {
        items.back() += "," + t;
      } else {
        items.push_back(t);
      }
    }
    auto parts = std::vector<Lambda_measure>{};
    for (const auto& item : items) {
      parts.push_back(parse(item));
    }
    return mixture(parts);
  }
  throw std::invalid_argument("unknown Lambda spec '" + spec + "'");
}

auto rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double {
  check_rate_args(b, k);
  auto total = 0.0;
  for (const auto& c : lambda.components()) {
    if (c.kind == Lambda_component::Kind::atom) {
      total += c.mass * std::pow(c.location, static_cast<double>(k - 2)) *
               std::pow(1.0 - c.location, static_cast<double>(b - k));
    } else {
      total += c.mass * std::exp(lbeta(static_cast<double>(k - 2) + c.a, static_cast<double>(b - k) + c.b) -
                                 lbeta(c.a, c.b));
    }
  }
  return total;
}

auto log_rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double {
  check_rate_args(b, k);
  constexpr auto minus_inf = -std::numeric_limits<double>::infinity();
  auto terms = std::vector<double>{};
  for (const auto& c : lambda.components()) {
    auto lm = std::log(c.mass);
    if (c.kind == Lambda_component::Kind::beta) {
      terms.push_back(lm + lbeta(static_cast<double>(k - 2) + c.a, static_cast<double>(b - k) + c.b) -
                      lbeta(c.a, c.b));
    } else if (c.location == 0.0) {
      terms.push_back(k == 2 ? lm : minus_inf);
    } else if (c.location == 1.0) {
      terms.push_back(k == b ? lm : minus_inf);
    } else {
      terms.push_back(lm + static_cast<double>(k - 2) * std::log(c.location) +
                      static_cast<double>(b - k) * std::log1p(-c.location));
    }
  }
  if (terms.empty()) {
    return minus_inf;
  }
  auto top = *std::max_element(terms.begin(), terms.end());
  if (top == minus_inf) {
    return minus_inf;
  }
  auto sum = 0.0;
  for (auto t : terms) {
    sum += std::exp(t - top);
  }
  return top + std::log(sum);
}

auto adjacent_rate(const Lambda_measure& lambda, std::size_t b, std::size_t k) -> double {
  return binomial(b, k) * rate(lambda, b, k) / static_cast<double>(b - k + 1);
}

Rate_table::Rate_table(const Lambda_measure& lambda, std::size_t max_blocks)
    : max_blocks_{max_blocks}, rows_(std::max<std::size_t>(max_blocks, 1) + 1) {
  // Mass at 0 only gives binary mergers.
  auto binary_only = std::all_of(lambda.components().begin(), lambda.components().end(), [](const auto& c) {
    return c.kind == Lambda_component::Kind::atom and c.location == 0.0;
  });
  for (auto b = std::size_t{2}; b <= max_blocks; ++b) {
    auto& row = rows_[b];
    auto merger_log = std::vector<double>{};
    auto window_log = std::vector<double>{};
    for (auto k = std::size_t{2}; k <= (binary_only ? 2 : b); ++k) {
      auto lr = log_rate(lambda, b, k);
      if (lr == -std::numeric_limits<double>::infinity()) {
        continue;
      }
      row.sizes.push_back(k);
      merger_log.push_back(log_binomial(b, k) + lr);
      // (b-k+1) windows, each at the adjacent rate C(b,k) lambda / (b-k+1).
      window_log.push_back(merger_log.back());
    }
    if (row.sizes.empty()) {
      continue;
    }
    auto fill = [](const std::vector<double>& logs, std::vector<double>& cdf, double& total) {
      auto top = *std::max_element(logs.begin(), logs.end());
      auto acc = 0.0;
      for (auto l : logs) {
        acc += std::exp(l - top);
        cdf.push_back(acc);
      }
      for (auto& c : cdf) {
        c /= acc;
      }
      cdf.back() = 1.0;
      total = std::exp(top) * acc;
    };
    fill(merger_log, row.merger_cdf, row.merger_total);
    fill(window_log, row.window_cdf, row.window_total);
  }
}

auto Rate_table::sample_merger_size(std::size_t b, Rng& rng) const -> std::size_t {
  const auto& row = rows_.at(b);
  if (row.sizes.empty()) {
    throw std::logic_error("no mergers possible");
  }
  auto i = std::upper_bound(row.merger_cdf.begin(), row.merger_cdf.end(), rng.uniform()) - row.merger_cdf.begin();
  return row.sizes[static_cast<std::size_t>(i)];
}

auto Rate_table::sample_window_size(std::size_t b, Rng& rng) const -> std::size_t {
  const auto& row = rows_.at(b);
  if (row.sizes.empty()) {
    throw std::logic_error("no mergers possible");
  }
  auto i = std::upper_bound(row.window_cdf.begin(), row.window_cdf.end(), rng.uniform()) - row.window_cdf.begin();
  return row.sizes[static_cast<std::size_t>(i)];
}

namespace {

void check_table(const Rate_table& rates, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("chain needs n >= 1");
  }
  if (rates.max_blocks() < n) {
    throw std::invalid_argument("rate table too small for n");
  }
}

auto labels_of(const std::vector<std::vector<std::size_t>>& blocks, std::size_t n) -> std::vector<std::size_t> {
  auto labels = std::vector<std::size_t>(n);
  for (auto k = std::size_t{0}; k < blocks.size(); ++k) {
    for (auto i : blocks[k]) {
      labels[i] = k;
    }
  }
  return labels;
}

// Fenwick tree over 0/1 flags with k-th set flag lookup.
class Flag_tree {
 public:
  explicit Flag_tree(std::size_t n) : tree_(n + 1, 0), flags_(n, 1) {
    for (auto i = std::size_t{1}; i <= n; ++i) {
      tree_[i] += 1;
      auto parent = i + (i & (~i + 1));
      if (parent <= n) {
        tree_[parent] += tree_[i];
      }
    }
    top_ = 1;
    while (top_ * 2 <= n) {
      top_ *= 2;
    }
  }

  // Position of the k-th set flag, k >= 1.
  auto kth(std::size_t k) const -> std::size_t {
    auto pos = std::size_t{0};
    for (auto step = top_; step > 0; step /= 2) {
      if (pos + step < tree_.size() and tree_[pos + step] < k) {
        pos += step;
        k -= tree_[pos];
      }
    }
    return pos;
  }

  void clear(std::size_t i) {
    flags_[i] = 0;
    for (auto j = i + 1; j < tree_.size(); j += j & (~j + 1)) {
      tree_[j] -= 1;
    }
  }

  auto flags() const -> const std::vector<char>& { return flags_; }

 private:
  std::vector<std::size_t> tree_;
  std::vector<char> flags_;
  std::size_t top_ = 1;
};

}  // namespace

auto simulate_partition_chain(const Rate_table& rates, std::size_t n, Rng& rng, double horizon)
    -> Coalescent_trajectory {
  check_table(rates, n);
  auto blocks = std::vector<std::vector<std::size_t>>(n);
  for (auto i = std::size_t{0}; i < n; ++i) {
    blocks[i] = {i};
  }
  auto events = std::vector<Partition_event>{{0.0, Partition::singletons(n)}};
  auto t = 0.0;
  auto pick = std::vector<std::size_t>{};
  while (blocks.size() > 1) {
    auto b = blocks.size();
    auto total = rates.merger_rate(b);
    if (not(total > 0.0)) {
      break;
    }
    t += rng.exponential(total);
    if (t > horizon) {
      break;
    }
    auto k = rates.sample_merger_size(b, rng);
    pick.resize(b);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    for (auto i = std::size_t{0}; i < k; ++i) {
      auto j = i + static_cast<std::size_t>(rng.uniform_index(b - i));
      std::swap(pick[i], pick[j]);
    }
    std::sort(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k));
    auto& target = blocks[pick[0]];
    for (auto i = k; i-- > 1;) {
      auto& src = blocks[pick[i]];
      target.insert(target.end(), src.begin(), src.end());
    }
    for (auto i = k; i-- > 1;) {
      blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(pick[i]));
    }
    events.push_back({t, Partition{labels_of(blocks, n)}});
  }
  return Coalescent_trajectory{std::move(events)};
}

auto simulate_partition_chain(const Lambda_measure& lambda, std::size_t n, Rng& rng) -> Coalescent_trajectory {
  return simulate_partition_chain(Rate_table{lambda, n}, n, rng);
}

auto simulate_composition_chain(const Rate_table& rates, std::size_t n, Rng& rng, double horizon)
    -> Composition_trajectory {
  check_table(rates, n);
  auto order = std::vector<std::size_t>(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (auto i = n; i-- > 1;) {
    std::swap(order[i], order[static_cast<std::size_t>(rng.uniform_index(i + 1))]);
  }
  auto blocks = std::vector<std::vector<std::size_t>>{};
  for (auto i : order) {
    blocks.push_back({i});
  }
  auto events = std::vector<Composition_event>{{0.0, Composition{blocks}}};
  auto t = 0.0;
  while (blocks.size() > 1) {
    auto b = blocks.size();
    auto total = rates.window_rate(b);
    if (not(total > 0.0)) {
      break;
    }
    t += rng.exponential(total);
    if (t > horizon) {
      break;
    }
    auto k = rates.sample_window_size(b, rng);
    auto start = static_cast<std::size_t>(rng.uniform_index(b - k + 1));
    auto& target = blocks[start];
    for (auto i = start + 1; i < start + k; ++i) {
      target.insert(target.end(), blocks[i].begin(), blocks[i].end());
    }
    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(start + 1),
                 blocks.begin() + static_cast<std::ptrdiff_t>(start + k));
    events.push_back({t, Composition{blocks}});
  }
  return Composition_trajectory{std::move(events)};
}

auto simulate_composition_chain(const Lambda_measure& lambda, std::size_t n, Rng& rng) -> Composition_trajectory {
  return simulate_composition_chain(Rate_table{lambda, n}, n, rng);
}

auto simulate_composition_block_sizes(const Rate_table& rates, std::size_t n, double horizon, Rng& rng)
    -> std::vector<std::size_t> {
  check_table(rates, n);
  // Flag i is set when element i (in composition order) starts a block.
  auto starts = Flag_tree{n};
  auto b = n;
  auto t = 0.0;
  while (b > 1) {
    auto total = rates.window_rate(b);
    if (not(total > 0.0)) {
      break;
    }
    t += rng.exponential(total);
    if (t > horizon) {
      break;
    }
    auto k = rates.sample_window_size(b, rng);
    auto start = static_cast<std::size_t>(rng.uniform_index(b - k + 1));
    // Blocks start+1 .. start+k-1 lose their start flag; block start+1 is the
    // (start+2)-th set flag each time.
    for (auto r = std::size_t{1}; r < k; ++r) {
      starts.clear(starts.kth(start + 2));
    }
    b -= k - 1;
  }
  auto sizes = std::vector<std::size_t>{};
  const auto& flags = starts.flags();
  for (auto i = std::size_t{0}; i < n; ++i) {
    if (flags[i]) {
      sizes.push_back(0);
    }
    ++sizes.back();
  }
  return sizes;
}

auto enumerate_partitions(std::size_t n) -> std::vector<Partition> {
  auto out = std::vector<Partition>{};
  auto labels = std::vector<std::size_t>(n, 0);
  // Restricted growth strings: labels[i] <= 1 + max(labels[0..i)).
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      out.emplace_back(labels);
      return;
    }
    for (auto l = std::size_t{0}; l <= used; ++l) {
      labels[i] = l;
      self(self, i + 1, std::max(used, l + 1));
    }
  };
  if (n == 0) {
    return out;
  }
  rec(rec, 1, 1);
  return out;
}

auto enumerate_compositions(std::size_t n) -> std::vector<Composition> {
  auto out = std::vector<Composition>{};
  for (const auto& p : enumerate_partitions(n)) {
    auto blocks = p.blocks();
    auto perm = std::vector<std::size_t>(blocks.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      auto ordered = std::vector<std::vector<std::size_t>>{};
      for (auto k : perm) {
        ordered.push_back(blocks[k]);
      }
      out.emplace_back(std::move(ordered));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

auto random_composition_function(std::size_t n, Rng& rng) -> Composition_function {
  auto table = std::make_shared<std::map<std::vector<std::vector<std::size_t>>, double>>();
  for (const auto& c : enumerate_compositions(n)) {
    (*table)[c.blocks()] = 2.0 * rng.uniform() - 1.0;
  }
  return [table](const Composition& c) { return table->at(c.blocks()); };
}

auto intertwining_check(const Lambda_measure& lambda, std::size_t n, const Composition_function& f) -> double {
  if (n < 1 or n > 6) {
    throw std::invalid_argument("intertwining_check supports 1 <= n <= 6");
  }
  auto orderings = [](const std::vector<std::vector<std::size_t>>& blocks) {
    auto out = std::vector<std::vector<std::vector<std::size_t>>>{};
    auto perm = std::vector<std::size_t>(blocks.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      auto ordered = std::vector<std::vector<std::size_t>>{};
      for (auto k : perm) {
        ordered.push_back(blocks[k]);
      }
      out.push_back(std::move(ordered));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  };
  auto lf = [&](const Partition& p) {
    auto sum = 0.0;
    auto all = orderings(p.blocks());
    for (const auto& c : all) {
      sum += f(Composition{c});
    }
    return sum / static_cast<double>(all.size());
  };

  auto worst = 0.0;
  for (const auto& pi : enumerate_partitions(n)) {
    auto blocks = pi.blocks();
    auto b = blocks.size();
    auto lf_pi = lf(pi);

    // Partition generator applied to L f: every subset of >= 2 blocks merges.
    auto lhs = 0.0;
    for (auto mask = std::uint32_t{1}; mask < (std::uint32_t{1} << b); ++mask) {
      auto k = static_cast<std::size_t>(std::popcount(mask));
      if (k < 2) {
        continue;
      }
      auto labels = pi.labels();
      auto target = static_cast<std::size_t>(std::countr_zero(mask));
      for (auto& l : labels) {
        if (mask & (std::uint32_t{1} << l)) {
          l = target;
        }
      }
      lhs += rate(lambda, b, k) * (lf(Partition{labels}) - lf_pi);
    }

    // L applied to the composition generator: average over orderings of pi
    // of the adjacent-window moves.
    auto rhs = 0.0;
    for (const auto& c : orderings(blocks)) {
      auto fc = f(Composition{c});
      for (auto k = std::size_t{2}; k <= b; ++k) {
        auto r = adjacent_rate(lambda, b, k);
        for (auto start = std::size_t{0}; start + k <= b; ++start) {
          auto merged = std::vector<std::vector<std::size_t>>{};
          for (auto i = std::size_t{0}; i < b; ++i) {
            if (i <= start or i >= start + k) {
              merged.push_back(c[i]);
            } else {
              merged.back().insert(merged.back().end(), c[i].begin(), c[i].end());
            }
          }
          rhs += r * (f(Composition{merged}) - fc);
        }
      }
    }
    auto factorial = 1.0;
    for (auto i = std::size_t{2}; i <= b; ++i) {
      factorial *= static_cast<double>(i);
    }
    rhs /= factorial;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace combs
