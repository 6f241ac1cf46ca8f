#pragma once

// k-bounded partitions, (k+1)-cores, the bijections between them and affine
// Grassmannian elements, and weak / set-valued strips.

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "kks/affine_core.hpp"

namespace kks {

/// Weakly decreasing positive parts, each at most k.
class KBoundedPartition {
 public:
  KBoundedPartition() = default;
  /// Trailing zeros are dropped; anything else invalid throws.
  KBoundedPartition(int k, std::vector<int> parts);

  static KBoundedPartition empty(int k) { return KBoundedPartition(k, {}); }

  int k() const { return k_; }
  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  bool operator==(const KBoundedPartition&) const = default;
  /// Rank, then size, then parts lexicographically descending.
  std::strong_ordering operator<=>(const KBoundedPartition& other) const;

  /// "(3,2,1)", or "()" for the empty partition.
  std::string to_string() const;

 private:
  int k_ = 1;
  std::vector<int> parts_;
};

/// Partition with no hook of length k+1.
class CorePartition {
 public:
  CorePartition() = default;
  CorePartition(int k, std::vector<int> parts);

  static CorePartition empty(int k) { return CorePartition(k, {}); }

  int k() const { return k_; }
  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  bool operator==(const CorePartition&) const = default;
  std::strong_ordering operator<=>(const CorePartition& other) const;
  std::string to_string() const;

 private:
  int k_ = 1;
  std::vector<int> parts_;
};

struct WeakStrip {
  KBoundedPartition base;
  IndexSet indices;
  KBoundedPartition top;
};

struct SetValuedStrip {
  IndexSet indices;
  AffinePermutation top;
};

/// Hook lengths of an arbitrary partition, row by row.
std::vector<std::vector<int>> hook_lengths(const std::vector<int>& parts);
/// Conjugate (transpose) of a partition.
std::vector<int> conjugate(const std::vector<int>& parts);

KBoundedPartition core_to_bounded(const CorePartition& core);
/// Residues read from the shortest row to the longest, right to left in each row.
ReducedWord reading_word(const KBoundedPartition& lambda);
AffinePermutation bounded_to_perm(const KBoundedPartition& lambda);
/// s_i acting on a core: add every addable or remove every removable residue-i cell.
CorePartition core_action(int i, const CorePartition& core);
/// w . empty core, for Grassmannian w.
CorePartition perm_to_core(const AffinePermutation& w);
CorePartition bounded_to_core(const KBoundedPartition& lambda);
/// Bounded partition of a Grassmannian element.
KBoundedPartition perm_to_bounded(const AffinePermutation& w);

KBoundedPartition k_transpose(const KBoundedPartition& lambda);
KBoundedPartition k_rectangle(int t, int k);
KBoundedPartition union_sort(const KBoundedPartition& mu, const KBoundedPartition& lambda);

/// All k-bounded partitions of exactly n cells, in canonical order.
std::vector<KBoundedPartition> bounded_partitions(int k, int n);
/// All k-bounded partitions of at most max_size cells, in canonical order.
std::vector<KBoundedPartition> bounded_partitions_up_to(int k, int max_size);

/// Longest element of the finite parabolic subgroup generated by s_1..s_k.
AffinePermutation finite_longest(int k);

/// Index sets A with |A| = r and d_A w_lambda / w_lambda a weak strip.
std::vector<IndexSet> weak_strips(const KBoundedPartition& lambda, int r);
std::vector<WeakStrip> weak_strip_list(const KBoundedPartition& lambda, int r);
/// Strip test through d_A w w0 >=_L w w0.
bool is_weak_strip_via_w0(const KBoundedPartition& lambda, const IndexSet& a);

/// Pairs (A, d_A * w) with |A| = r and Grassmannian top.
std::vector<SetValuedStrip> setvalued_strips(const AffinePermutation& w, int r);

/// Image of w under the automorphism s_i -> s_{i+t}.
AffinePermutation shift_ft(const AffinePermutation& w, int t);

}  // namespace kks
