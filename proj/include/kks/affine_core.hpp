#pragma once

// Affine symmetric group S~_{k+1} in window notation, with its strong and
// weak orders and the (anti-)Demazure actions of the 0-Hecke monoid.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kks {

/// Two values with different rank k were combined.
class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration grew past its configured element cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A consistency check on internal state failed. Never expected in practice.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Side { Left, Right };

void check_rank(int k);
void check_same_rank(int a, int b, const char* where);

/// Proper subset A of I = {0,...,k}, stored as a bit mask.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(int k, std::span<const int> members);
  IndexSet(int k, std::initializer_list<int> members)
      : IndexSet(k, std::span<const int>(members.begin(), members.size())) {}

  static IndexSet from_mask(int k, std::uint32_t mask);
  static IndexSet empty(int k) { return from_mask(k, 0); }

  int k() const { return k_; }
  int n() const { return k_ + 1; }
  std::uint32_t mask() const { return mask_; }
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int i) const;
  std::vector<int> members() const;

  bool subset_of(const IndexSet& other) const;
  IndexSet intersect(const IndexSet& other) const;
  /// Union, or nullopt when it is all of I.
  std::optional<IndexSet> unite(const IndexSet& other) const;
  IndexSet without(int i) const;
  std::optional<IndexSet> with(int i) const;
  /// A + t, computed mod k+1.
  IndexSet shifted(int t) const;

  bool operator==(const IndexSet&) const = default;
  /// Canonical order: rank, then size, then members lexicographically.
  std::strong_ordering operator<=>(const IndexSet& other) const;

  std::string to_string() const;

 private:
  int k_ = 0;
  std::uint32_t mask_ = 0;
};

/// All proper subsets of {0..k} of the given size, in canonical order.
std::vector<IndexSet> subsets_of_size(int k, std::size_t size);
/// All proper subsets of {0..k}, in canonical order.
std::vector<IndexSet> all_proper_subsets(int k);

/// Element of S~_{k+1}: a bijection w of Z with w(i+n) = w(i)+n and
/// sum_{i=1..n} w(i) = n(n+1)/2, where n = k+1. Stored by its window.
class AffinePermutation {
 public:
  using Value = std::int64_t;

  static AffinePermutation identity(int k);
  static AffinePermutation generator(int k, int i);
  static AffinePermutation from_window(int k, std::vector<Value> window);

  int k() const { return k_; }
  int n() const { return k_ + 1; }
  const std::vector<Value>& window() const { return window_; }

  /// w(i) for any integer i.
  Value operator()(Value i) const;

  /// s_i w
  AffinePermutation left_mul(int i) const;
  /// w s_i
  AffinePermutation right_mul(int i) const;

  bool has_right_descent(int i) const;
  bool has_left_descent(int i) const;
  bool is_identity() const;

  bool operator==(const AffinePermutation&) const = default;
  std::strong_ordering operator<=>(const AffinePermutation& other) const;

  std::size_t hash() const;

 private:
  AffinePermutation(int k, std::vector<Value> window) : k_(k), window_(std::move(window)) {}

  int k_ = 0;
  std::vector<Value> window_;
};

struct AffinePermutationHash {
  std::size_t operator()(const AffinePermutation& w) const { return w.hash(); }
};

/// A word over I whose product has length equal to the word length.
struct ReducedWord {
  int k = 0;
  std::vector<int> letters;

  bool operator==(const ReducedWord&) const = default;
  /// Letters concatenated, e.g. "203210" (digits only when k <= 9).
  std::string to_string() const;
};

AffinePermutation from_word(int k, std::span<const int> word);
inline AffinePermutation from_word(int k, std::initializer_list<int> word) {
  return from_word(k, std::span<const int>(word.begin(), word.size()));
}

/// Coxeter length, via the affine inversion count.
std::int64_t length(const AffinePermutation& w);

AffinePermutation mul(const AffinePermutation& u, const AffinePermutation& v);
AffinePermutation inverse(const AffinePermutation& w);

IndexSet descents(const AffinePermutation& w, Side side);
/// Affine Grassmannian (0-dominant): right descents contained in {0}.
bool is_grassmannian(const AffinePermutation& w);

/// Deterministic reduced word: repeatedly strip the smallest left descent.
ReducedWord reduced_word(const AffinePermutation& w);

bool bruhat_leq(const AffinePermutation& u, const AffinePermutation& v);
bool weak_leq(const AffinePermutation& u, const AffinePermutation& v, Side side);

/// phi_x(y) (Side::Left) or phi^R_x(y) (Side::Right).
AffinePermutation phi_apply(const AffinePermutation& x, const AffinePermutation& y,
                            Side side = Side::Left);
/// psi_x(y) (Side::Left) or psi^R_x(y) (Side::Right).
AffinePermutation psi_apply(const AffinePermutation& x, const AffinePermutation& y,
                            Side side = Side::Left);
/// Demazure product x*y = phi_x(y).
AffinePermutation demazure(const AffinePermutation& x, const AffinePermutation& y);

/// min_{<=} { z : x <= z >=_L y } = psi^R_{y^{-1}}(x) y.
AffinePermutation s_join_L(const AffinePermutation& x, const AffinePermutation& y);
/// max_{<=} { z : x >=_L z <= y } = (psi^R_{y^{-1}}(x))^{-1} x.
AffinePermutation meet_LS(const AffinePermutation& x, const AffinePermutation& y);

/// z x^{-1}, for x <=_L z. Throws std::invalid_argument otherwise.
AffinePermutation flip(const AffinePermutation& z, const AffinePermutation& x);

/// Affine reflection test (conjugate of a simple generator).
bool is_reflection(const AffinePermutation& t);

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// All elements of length <= max_length, sorted by (length, window).
std::vector<AffinePermutation> ball(int k, int max_length, std::size_t cap = kDefaultBallCap);
/// Grassmannian elements of length <= max_length, same order.
std::vector<AffinePermutation> grassmannian_ball(int k, int max_length,
                                                 std::size_t cap = kDefaultBallCap);

}  // namespace kks

template <>
struct std::hash<kks::AffinePermutation> {
  std::size_t operator()(const kks::AffinePermutation& w) const noexcept { return w.hash(); }
};
