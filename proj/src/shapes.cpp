#include "kks/shapes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kks/kcode.hpp"

namespace kks {

namespace {

int residue(int row, int col, int n) {
  const int r = (col - row) % n;
  return r < 0 ? r + n : r;
}

void require_partition(const std::vector<int>& parts, const char* what) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument(std::string(what) + ": parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw std::invalid_argument(std::string(what) + ": parts must be weakly decreasing");
    }
  }
}

std::vector<int> strip_zeros(std::vector<int> parts) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return parts;
}

std::strong_ordering compare_parts(const std::vector<int>& a, const std::vector<int>& b) {
  const int sa = std::accumulate(a.begin(), a.end(), 0);
  const int sb = std::accumulate(b.begin(), b.end(), 0);
  if (auto c = sa <=> sb; c != 0) return c;
  // Reverse lexicographic: larger leading parts come first.
  return b <=> a;
}

std::string parts_string(const std::vector<int>& parts) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) os << ',';
    os << parts[i];
  }
  os << ')';
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

KBoundedPartition::KBoundedPartition(int k, std::vector<int> parts)
    : k_(k), parts_(strip_zeros(std::move(parts))) {
  check_rank(k);
  require_partition(parts_, "bounded partition");
  if (!parts_.empty() && parts_.front() > k) {
    throw std::invalid_argument("partition " + parts_string(parts_) + " is not " +
                                std::to_string(k) + "-bounded");
  }
}

int KBoundedPartition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::strong_ordering KBoundedPartition::operator<=>(const KBoundedPartition& other) const {
  if (auto c = k_ <=> other.k_; c != 0) return c;
  return compare_parts(parts_, other.parts_);
}

std::string KBoundedPartition::to_string() const { return parts_string(parts_); }

CorePartition::CorePartition(int k, std::vector<int> parts)
    : k_(k), parts_(strip_zeros(std::move(parts))) {
  check_rank(k);
  require_partition(parts_, "core partition");
  for (const auto& row : hook_lengths(parts_)) {
    for (int h : row) {
      if (h == k + 1) {
        throw std::invalid_argument("partition " + parts_string(parts_) + " is not a " +
                                    std::to_string(k + 1) + "-core");
      }
    }
  }
}

int CorePartition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::strong_ordering CorePartition::operator<=>(const CorePartition& other) const {
  if (auto c = k_ <=> other.k_; c != 0) return c;
  return compare_parts(parts_, other.parts_);
}

std::string CorePartition::to_string() const { return parts_string(parts_); }

// ---------------------------------------------------------------------------

std::vector<int> conjugate(const std::vector<int>& parts) {
  std::vector<int> out;
  if (parts.empty()) return out;
  out.resize(static_cast<std::size_t>(parts.front()), 0);
  for (int p : parts) {
    for (int j = 0; j < p; ++j) ++out[static_cast<std::size_t>(j)];
  }
  return out;
}

std::vector<std::vector<int>> hook_lengths(const std::vector<int>& parts) {
  const auto conj = conjugate(parts);
  std::vector<std::vector<int>> out(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 0; j < parts[i]; ++j) {
      const int arm = parts[i] - j - 1;
      const int leg = conj[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
      out[i].push_back(arm + leg + 1);
    }
  }
  return out;
}

KBoundedPartition core_to_bounded(const CorePartition& core) {
  std::vector<int> parts;
  for (const auto& row : hook_lengths(core.parts())) {
    parts.push_back(static_cast<int>(
        std::count_if(row.begin(), row.end(), [&](int h) { return h <= core.k(); })));
  }
  return KBoundedPartition(core.k(), std::move(parts));
}

ReducedWord reading_word(const KBoundedPartition& lambda) {
  const int n = lambda.k() + 1;
  ReducedWord out{lambda.k(), {}};
  const auto& parts = lambda.parts();
  for (std::size_t r = parts.size(); r-- > 0;) {
    for (int c = parts[r]; c-- > 0;) out.letters.push_back(residue(static_cast<int>(r), c, n));
  }
  return out;
}

AffinePermutation bounded_to_perm(const KBoundedPartition& lambda) {
  auto w = from_word(lambda.k(), reading_word(lambda).letters);
  if (length(w) != lambda.size()) {
    throw InternalError("bounded_to_perm: reading word of " + lambda.to_string() +
                        " is not reduced");
  }
  return w;
}

CorePartition core_action(int i, const CorePartition& core) {
  const int k = core.k();
  const int n = k + 1;
  if (i < 0 || i > k) throw std::invalid_argument("core_action: index outside I");
  std::vector<int> parts = core.parts();
  const std::size_t len = parts.size();
  std::vector<std::size_t> addable_rows;
  std::vector<std::size_t> removable_rows;
  for (std::size_t r = 0; r <= len; ++r) {
    const int p = r < len ? parts[r] : 0;
    const bool can_add = r == 0 || parts[r - 1] > p;
    if (can_add && residue(static_cast<int>(r), p, n) == i) addable_rows.push_back(r);
    if (r < len) {
      const int next = r + 1 < len ? parts[r + 1] : 0;
      if (p > next && residue(static_cast<int>(r), p - 1, n) == i) removable_rows.push_back(r);
    }
  }
  if (!addable_rows.empty() && !removable_rows.empty()) {
    throw InternalError("core_action: core has both addable and removable residue-" +
                        std::to_string(i) + " cells");
  }
  if (!addable_rows.empty()) {
    for (std::size_t r : addable_rows) {
      if (r == parts.size()) {
        parts.push_back(1);
      } else {
        ++parts[r];
      }
    }
  } else {
    for (std::size_t r : removable_rows) --parts[r];
  }
  return CorePartition(k, std::move(parts));
}

CorePartition perm_to_core(const AffinePermutation& w) {
  if (!is_grassmannian(w)) {
    throw std::invalid_argument("perm_to_core: element is not affine Grassmannian");
  }
  const auto word = reduced_word(w).letters;
  auto core = CorePartition::empty(w.k());
  for (auto it = word.rbegin(); it != word.rend(); ++it) core = core_action(*it, core);
  return core;
}

CorePartition bounded_to_core(const KBoundedPartition& lambda) {
  return perm_to_core(bounded_to_perm(lambda));
}

KBoundedPartition perm_to_bounded(const AffinePermutation& w) {
  return core_to_bounded(perm_to_core(w));
}

KBoundedPartition k_transpose(const KBoundedPartition& lambda) {
  const auto core = bounded_to_core(lambda);
  return core_to_bounded(CorePartition(lambda.k(), conjugate(core.parts())));
}

KBoundedPartition k_rectangle(int t, int k) {
  check_rank(k);
  if (t < 1 || t > k) {
    throw std::invalid_argument("k_rectangle: t must lie in [1, k], got " + std::to_string(t));
  }
  return KBoundedPartition(k, std::vector<int>(static_cast<std::size_t>(k + 1 - t), t));
}

KBoundedPartition union_sort(const KBoundedPartition& mu, const KBoundedPartition& lambda) {
  check_same_rank(mu.k(), lambda.k(), "union_sort");
  std::vector<int> parts = mu.parts();
  parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return KBoundedPartition(mu.k(), std::move(parts));
}

namespace {

void partitions_rec(int k, int remaining, int max_part, std::vector<int>& cur,
                    std::vector<KBoundedPartition>& out) {
  if (remaining == 0) {
    out.emplace_back(k, cur);
    return;
  }
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(k, remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<KBoundedPartition> bounded_partitions(int k, int n) {
  check_rank(k);
  if (n < 0) throw std::invalid_argument("bounded_partitions: size must be >= 0");
  std::vector<KBoundedPartition> out;
  std::vector<int> cur;
  partitions_rec(k, n, k, cur, out);
  return out;
}

std::vector<KBoundedPartition> bounded_partitions_up_to(int k, int max_size) {
  std::vector<KBoundedPartition> out;
  for (int n = 0; n <= max_size; ++n) {
    auto level = bounded_partitions(k, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

AffinePermutation finite_longest(int k) {
  std::vector<AffinePermutation::Value> window(static_cast<std::size_t>(k + 1));
  for (std::size_t i = 0; i < window.size(); ++i) {
    window[i] = static_cast<AffinePermutation::Value>(window.size() - i);
  }
  return AffinePermutation::from_window(k, std::move(window));
}

namespace {

void check_strip_size(int k, int r, int lo) {
  if (r < lo || r > k) {
    throw std::invalid_argument("strip size r must lie in [" + std::to_string(lo) + ", k], got " +
                                std::to_string(r));
  }
}

}  // namespace

std::vector<IndexSet> weak_strips(const KBoundedPartition& lambda, int r) {
  check_strip_size(lambda.k(), r, 0);
  const auto w = bounded_to_perm(lambda);
  const auto lw = length(w);
  std::vector<IndexSet> out;
  for (const auto& a : subsets_of_size(lambda.k(), static_cast<std::size_t>(r))) {
    const auto v = mul(d_elem(a), w);
    if (length(v) == lw + r && is_grassmannian(v)) out.push_back(a);
  }
  return out;
}

std::vector<WeakStrip> weak_strip_list(const KBoundedPartition& lambda, int r) {
  const auto w = bounded_to_perm(lambda);
  std::vector<WeakStrip> out;
  for (const auto& a : weak_strips(lambda, r)) {
    out.push_back(WeakStrip{lambda, a, perm_to_bounded(mul(d_elem(a), w))});
  }
  return out;
}

bool is_weak_strip_via_w0(const KBoundedPartition& lambda, const IndexSet& a) {
  check_same_rank(lambda.k(), a.k(), "is_weak_strip_via_w0");
  const auto ww0 = mul(bounded_to_perm(lambda), finite_longest(lambda.k()));
  return weak_leq(ww0, mul(d_elem(a), ww0), Side::Left);
}

std::vector<SetValuedStrip> setvalued_strips(const AffinePermutation& w, int r) {
  check_strip_size(w.k(), r, 0);
  if (!is_grassmannian(w)) {
    throw std::invalid_argument("setvalued_strips: base is not affine Grassmannian");
  }
  std::vector<SetValuedStrip> out;
  for (const auto& a : subsets_of_size(w.k(), static_cast<std::size_t>(r))) {
    auto v = demazure(d_elem(a), w);
    if (is_grassmannian(v)) out.push_back(SetValuedStrip{a, std::move(v)});
  }
  return out;
}

AffinePermutation shift_ft(const AffinePermutation& w, int t) {
  if (t < 0 || t > w.k()) throw std::invalid_argument("shift_ft: t must lie in [0, k]");
  std::vector<AffinePermutation::Value> window(w.window().size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    const auto pos = static_cast<AffinePermutation::Value>(i) + 1;
    window[i] = w(pos - t) + t;
  }
  return AffinePermutation::from_window(w.k(), std::move(window));
}

}  // namespace kks
