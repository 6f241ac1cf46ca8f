#include "kks/affine_core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace kks {

namespace {

constexpr int kMaxRank = 30;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace

void check_rank(int k) {
  if (k < 1 || k > kMaxRank) {
    throw std::invalid_argument("rank k must lie in [1, " + std::to_string(kMaxRank) +
                                "], got " + std::to_string(k));
  }
}

void check_same_rank(int a, int b, const char* where) {
  if (a != b) {
    throw RankMismatch(std::string(where) + ": rank mismatch (k=" + std::to_string(a) +
                       " vs k=" + std::to_string(b) + ")");
  }
}

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(int k, std::span<const int> members) : k_(k) {
  check_rank(k);
  for (int i : members) {
    if (i < 0 || i > k) {
      throw std::invalid_argument("index " + std::to_string(i) + " outside I = {0..." +
                                  std::to_string(k) + "}");
    }
    mask_ |= (1u << i);
  }
  if (mask_ == (1u << (k + 1)) - 1) {
    throw std::invalid_argument("index set must be a proper subset of I");
  }
}

IndexSet IndexSet::from_mask(int k, std::uint32_t mask) {
  check_rank(k);
  const std::uint32_t full = (1u << (k + 1)) - 1;
  if ((mask & ~full) != 0) throw std::invalid_argument("index mask has bits outside I");
  if (mask == full) throw std::invalid_argument("index set must be a proper subset of I");
  IndexSet s;
  s.k_ = k;
  s.mask_ = mask;
  return s;
}

std::size_t IndexSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

bool IndexSet::contains(int i) const {
  if (i < 0 || i > k_) return false;
  return (mask_ >> i) & 1u;
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  for (int i = 0; i <= k_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

bool IndexSet::subset_of(const IndexSet& other) const {
  check_same_rank(k_, other.k_, "IndexSet::subset_of");
  return (mask_ & ~other.mask_) == 0;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  check_same_rank(k_, other.k_, "IndexSet::intersect");
  return from_mask(k_, mask_ & other.mask_);
}

std::optional<IndexSet> IndexSet::unite(const IndexSet& other) const {
  check_same_rank(k_, other.k_, "IndexSet::unite");
  const std::uint32_t m = mask_ | other.mask_;
  if (m == (1u << (k_ + 1)) - 1) return std::nullopt;
  return from_mask(k_, m);
}

IndexSet IndexSet::without(int i) const { return from_mask(k_, mask_ & ~(1u << i)); }

std::optional<IndexSet> IndexSet::with(int i) const {
  const std::uint32_t m = mask_ | (1u << i);
  if (m == (1u << (k_ + 1)) - 1) return std::nullopt;
  return from_mask(k_, m);
}

IndexSet IndexSet::shifted(int t) const {
  const int n = k_ + 1;
  std::uint32_t m = 0;
  for (int i = 0; i <= k_; ++i) {
    if (contains(i)) m |= 1u << static_cast<int>(mod(i + t, n));
  }
  return from_mask(k_, m);
}

std::strong_ordering IndexSet::operator<=>(const IndexSet& other) const {
  if (auto c = k_ <=> other.k_; c != 0) return c;
  if (auto c = size() <=> other.size(); c != 0) return c;
  return members() <=> other.members();
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : members()) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<IndexSet> subsets_of_size(int k, std::size_t size) {
  check_rank(k);
  std::vector<IndexSet> out;
  const std::uint32_t full = (1u << (k + 1)) - 1;
  for (std::uint32_t m = 0; m < full; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == size) out.push_back(IndexSet::from_mask(k, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexSet> all_proper_subsets(int k) {
  check_rank(k);
  std::vector<IndexSet> out;
  const std::uint32_t full = (1u << (k + 1)) - 1;
  out.reserve(full);
  for (std::uint32_t m = 0; m < full; ++m) out.push_back(IndexSet::from_mask(k, m));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// AffinePermutation

AffinePermutation AffinePermutation::identity(int k) {
  check_rank(k);
  std::vector<Value> w(static_cast<std::size_t>(k + 1));
  std::iota(w.begin(), w.end(), Value{1});
  return AffinePermutation(k, std::move(w));
}

AffinePermutation AffinePermutation::generator(int k, int i) {
  if (i < 0 || i > k) {
    throw std::invalid_argument("generator index " + std::to_string(i) + " outside {0..." +
                                std::to_string(k) + "}");
  }
  return identity(k).right_mul(i);
}

AffinePermutation AffinePermutation::from_window(int k, std::vector<Value> window) {
  check_rank(k);
  const Value n = k + 1;
  if (static_cast<Value>(window.size()) != n) {
    throw std::invalid_argument("window must have k+1 = " + std::to_string(n) + " entries");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  Value sum = 0;
  for (Value v : window) {
    const auto r = static_cast<std::size_t>(mod(v, n));
    if (seen[r]) throw std::invalid_argument("window entries are not distinct mod k+1");
    seen[r] = true;
    sum += v;
  }
  if (sum != n * (n + 1) / 2) {
    throw std::invalid_argument("window sum must be n(n+1)/2 (not an affine permutation)");
  }
  return AffinePermutation(k, std::move(window));
}

AffinePermutation::Value AffinePermutation::operator()(Value i) const {
  const Value n = k_ + 1;
  const Value q = floor_div(i - 1, n);
  return window_[static_cast<std::size_t>(i - q * n - 1)] + q * n;
}

AffinePermutation AffinePermutation::left_mul(int i) const {
  const Value n = k_ + 1;
  const Value lo = i;
  const Value hi = (i + 1) % n;
  std::vector<Value> w = window_;
  for (auto& v : w) {
    const Value r = mod(v, n);
    if (r == lo) {
      ++v;
    } else if (r == hi) {
      --v;
    }
  }
  return AffinePermutation(k_, std::move(w));
}

AffinePermutation AffinePermutation::right_mul(int i) const {
  const Value n = k_ + 1;
  std::vector<Value> w = window_;
  if (i == 0) {
    const Value first = w.front();
    w.front() = w.back() - n;
    w.back() = first + n;
  } else {
    std::swap(w[static_cast<std::size_t>(i - 1)], w[static_cast<std::size_t>(i)]);
  }
  return AffinePermutation(k_, std::move(w));
}

bool AffinePermutation::has_right_descent(int i) const { return (*this)(i) > (*this)(i + 1); }

bool AffinePermutation::has_left_descent(int i) const {
  // i is a left descent iff w^{-1}(i) > w^{-1}(i+1).
  const Value n = k_ + 1;
  auto inv = [&](Value v) {
    for (std::size_t p = 0; p < window_.size(); ++p) {
      if (mod(v - window_[p], n) == 0) return static_cast<Value>(p) + 1 + (v - window_[p]);
    }
    throw InternalError("has_left_descent: residue not found");
  };
  return inv(i) > inv(i + 1);
}

bool AffinePermutation::is_identity() const {
  for (std::size_t p = 0; p < window_.size(); ++p) {
    if (window_[p] != static_cast<Value>(p) + 1) return false;
  }
  return true;
}

std::strong_ordering AffinePermutation::operator<=>(const AffinePermutation& other) const {
  if (auto c = k_ <=> other.k_; c != 0) return c;
  return window_ <=> other.window_;
}

std::size_t AffinePermutation::hash() const {
  std::size_t h = static_cast<std::size_t>(k_) * 0x9E3779B97F4A7C15ull;
  for (Value v : window_) {
    h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string ReducedWord::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (k >= 10 && i > 0) os << '.';
    os << letters[i];
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Group operations

AffinePermutation from_word(int k, std::span<const int> word) {
  auto w = AffinePermutation::identity(k);
  for (int i : word) {
    if (i < 0 || i > k) {
      throw std::invalid_argument("letter " + std::to_string(i) + " outside {0..." +
                                  std::to_string(k) + "}");
    }
    w = w.right_mul(i);
  }
  return w;
}

std::int64_t length(const AffinePermutation& w) {
  const auto& win = w.window();
  const std::int64_t n = w.n();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < win.size(); ++i) {
    for (std::size_t j = i + 1; j < win.size(); ++j) {
      const std::int64_t q = floor_div(win[j] - win[i], n);
      total += q < 0 ? -q : q;
    }
  }
  return total;
}

AffinePermutation mul(const AffinePermutation& u, const AffinePermutation& v) {
  check_same_rank(u.k(), v.k(), "mul");
  std::vector<AffinePermutation::Value> w(v.window().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = u(v.window()[i]);
  return AffinePermutation::from_window(u.k(), std::move(w));
}

AffinePermutation inverse(const AffinePermutation& w) {
  const std::int64_t n = w.n();
  std::vector<AffinePermutation::Value> inv(w.window().size());
  for (std::size_t p = 0; p < inv.size(); ++p) {
    const auto v = w.window()[p];
    const std::int64_t r = mod(v - 1, n) + 1;  // residue representative in 1..n
    inv[static_cast<std::size_t>(r - 1)] = static_cast<std::int64_t>(p) + 1 - (v - r);
  }
  return AffinePermutation::from_window(w.k(), std::move(inv));
}

IndexSet descents(const AffinePermutation& w, Side side) {
  std::uint32_t m = 0;
  for (int i = 0; i <= w.k(); ++i) {
    const bool d = side == Side::Right ? w.has_right_descent(i) : w.has_left_descent(i);
    if (d) m |= 1u << i;
  }
  return IndexSet::from_mask(w.k(), m);
}

bool is_grassmannian(const AffinePermutation& w) {
  for (int i = 1; i <= w.k(); ++i) {
    if (w.has_right_descent(i)) return false;
  }
  return true;
}

ReducedWord reduced_word(const AffinePermutation& w) {
  ReducedWord out{w.k(), {}};
  auto cur = w;
  while (!cur.is_identity()) {
    int i = 0;
    while (!cur.has_left_descent(i)) ++i;
    out.letters.push_back(i);
    cur = cur.left_mul(i);
  }
  return out;
}

bool bruhat_leq(const AffinePermutation& u, const AffinePermutation& v) {
  check_same_rank(u.k(), v.k(), "bruhat_leq");
  // Lifting property: for s in D_L(v), u <= v iff min(u, su) <= sv.
  // Each step strips one letter from v, so the recursion is a single path.
  auto x = u;
  auto y = v;
  std::int64_t lx = length(x);
  std::int64_t ly = length(y);
  while (true) {
    if (lx > ly) return false;
    if (lx == ly) return x == y;
    int s = 0;
    while (!y.has_left_descent(s)) ++s;
    if (x.has_left_descent(s)) {
      x = x.left_mul(s);
      --lx;
    }
    y = y.left_mul(s);
    --ly;
  }
}

bool weak_leq(const AffinePermutation& u, const AffinePermutation& v, Side side) {
  check_same_rank(u.k(), v.k(), "weak_leq");
  const auto lu = length(u);
  const auto lv = length(v);
  if (lu > lv) return false;
  if (side == Side::Left) return length(mul(v, inverse(u))) + lu == lv;
  return lu + length(mul(inverse(u), v)) == lv;
}

AffinePermutation phi_apply(const AffinePermutation& x, const AffinePermutation& y, Side side) {
  check_same_rank(x.k(), y.k(), "phi_apply");
  const auto word = reduced_word(x).letters;
  auto out = y;
  if (side == Side::Left) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (!out.has_left_descent(*it)) out = out.left_mul(*it);
    }
  } else {
    for (int s : word) {
      if (!out.has_right_descent(s)) out = out.right_mul(s);
    }
  }
  return out;
}

AffinePermutation psi_apply(const AffinePermutation& x, const AffinePermutation& y, Side side) {
  check_same_rank(x.k(), y.k(), "psi_apply");
  const auto word = reduced_word(x).letters;
  auto out = y;
  if (side == Side::Left) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (out.has_left_descent(*it)) out = out.left_mul(*it);
    }
  } else {
    for (int s : word) {
      if (out.has_right_descent(s)) out = out.right_mul(s);
    }
  }
  return out;
}

AffinePermutation demazure(const AffinePermutation& x, const AffinePermutation& y) {
  return phi_apply(x, y, Side::Left);
}

AffinePermutation s_join_L(const AffinePermutation& x, const AffinePermutation& y) {
  check_same_rank(x.k(), y.k(), "s_join_L");
  return mul(psi_apply(inverse(y), x, Side::Right), y);
}

AffinePermutation meet_LS(const AffinePermutation& x, const AffinePermutation& y) {
  check_same_rank(x.k(), y.k(), "meet_LS");
  return mul(inverse(psi_apply(inverse(y), x, Side::Right)), x);
}

AffinePermutation flip(const AffinePermutation& z, const AffinePermutation& x) {
  check_same_rank(z.k(), x.k(), "flip");
  if (!weak_leq(x, z, Side::Left)) {
    throw std::invalid_argument("flip(z, x) requires x <=_L z");
  }
  return mul(z, inverse(x));
}

bool is_reflection(const AffinePermutation& t) {
  if (t.is_identity()) return false;
  if (!mul(t, t).is_identity()) return false;
  int moved = 0;
  for (std::size_t p = 0; p < t.window().size(); ++p) {
    if (t.window()[p] != static_cast<std::int64_t>(p) + 1) ++moved;
  }
  return moved == 2;
}

namespace {

std::vector<AffinePermutation> layered_ball(int k, int max_length, std::size_t cap,
                                            bool grassmannian_only) {
  check_rank(k);
  if (max_length < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<AffinePermutation> out{AffinePermutation::identity(k)};
  std::vector<AffinePermutation> layer = out;
  for (int len = 0; len < max_length; ++len) {
    std::unordered_set<AffinePermutation, AffinePermutationHash> next;
    for (const auto& w : layer) {
      for (int i = 0; i <= k; ++i) {
        if (w.has_left_descent(i)) continue;
        auto v = w.left_mul(i);
        if (grassmannian_only && !is_grassmannian(v)) continue;
        next.insert(std::move(v));
      }
    }
    layer.assign(next.begin(), next.end());
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
    if (out.size() > cap) {
      throw ResourceCapExceeded("ball(k=" + std::to_string(k) + ", L=" +
                                std::to_string(max_length) + ") exceeds cap of " +
                                std::to_string(cap) + " elements");
    }
  }
  return out;
}

}  // namespace

std::vector<AffinePermutation> ball(int k, int max_length, std::size_t cap) {
  return layered_ball(k, max_length, cap, false);
}

std::vector<AffinePermutation> grassmannian_ball(int k, int max_length, std::size_t cap) {
  return layered_ball(k, max_length, cap, true);
}

}  // namespace kks
