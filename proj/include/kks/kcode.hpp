#pragma once

// Cyclically decreasing / increasing elements and k-codes.

#include <compare>
#include <string>
#include <vector>

#include "kks/affine_core.hpp"
#include "kks/shapes.hpp"

namespace kks {

/// Letters of d_A: members of A listed so that j+1 never follows j.
std::vector<int> d_word(const IndexSet& a);
/// Letters of u_A, the reverse of d_word(a).
std::vector<int> u_word(const IndexSet& a);

AffinePermutation d_elem(const IndexSet& a);
AffinePermutation u_elem(const IndexSet& a);

/// Function I -> Z_{>=0} with at least one zero.
class KCode {
 public:
  KCode() = default;
  KCode(int k, std::vector<int> values);

  int k() const { return k_; }
  const std::vector<int>& values() const { return values_; }
  int operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  int total() const;

  bool operator==(const KCode&) const = default;
  std::strong_ordering operator<=>(const KCode&) const = default;
  std::string to_string() const;

 private:
  int k_ = 1;
  std::vector<int> values_;
};

/// Rows B_1, B_2, ... (bottom first) of the maximal decreasing decomposition
/// w = d_{B_m} ... d_{B_1}.
std::vector<IndexSet> max_decreasing_decomposition(const AffinePermutation& w);
/// Same for w = u_{B_m} ... u_{B_1}.
std::vector<IndexSet> max_increasing_decomposition(const AffinePermutation& w);

KCode rd(const AffinePermutation& w);
KCode ri(const AffinePermutation& w);

/// Rows of the filling of a code; row j holds residues c - j (decreasing
/// convention) or j - c (increasing convention) for columns c with value > j.
std::vector<IndexSet> code_rows(const KCode& code, bool increasing);

/// d_{B_m} ... d_{B_1} for the rows of the code.
AffinePermutation rd_inverse(const KCode& code);
/// u_{B_m} ... u_{B_1} for the rows of the code.
AffinePermutation ri_inverse(const KCode& code);

/// sh(alpha)_j = #{i : alpha_i >= j}.
KBoundedPartition sh(const KCode& code);

/// All k-codes whose values sum to at most max_total.
std::vector<KCode> all_codes(int k, int max_total);

}  // namespace kks
