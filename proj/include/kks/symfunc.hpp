#pragma once

// Exact arithmetic in Z[h_1, ..., h_k] in the h-monomial, k-Schur and
// K-k-Schur bases, with the Pieri rules that define the latter two.

#include <boost/multiprecision/cpp_int.hpp>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kks/shapes.hpp"

namespace kks {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class Basis { HMonomial, KSchur, KkSchur };

/// "h", "ks" or "g".
std::string basis_name(Basis b);
Basis parse_basis(const std::string& name);

/// Sparse element of Lambda^(k) in a fixed basis. Zero coefficients are never stored.
class SymElt {
 public:
  using Terms = std::map<KBoundedPartition, BigInt>;

  SymElt() = default;
  SymElt(int k, Basis basis) : k_(k), basis_(basis) { check_rank(k); }
  static SymElt basis_element(const KBoundedPartition& lambda, Basis basis);

  int k() const { return k_; }
  Basis basis() const { return basis_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coeff(const KBoundedPartition& lambda) const;
  /// Largest |lambda| over the terms, or -1 for zero.
  int degree() const;
  /// Terms of exactly the given degree.
  SymElt homogeneous_part(int d) const;

  void add_term(const KBoundedPartition& lambda, const BigInt& c);
  SymElt& operator+=(const SymElt& other);
  SymElt& operator-=(const SymElt& other);
  SymElt operator+(const SymElt& other) const;
  SymElt operator-(const SymElt& other) const;
  SymElt scaled(const BigInt& c) const;

  bool operator==(const SymElt& other) const;

  /// e.g. "g(2,1) - 2*g(1) + g()".
  std::string to_string() const;

 private:
  void check_compatible(const SymElt& other, const char* where) const;

  int k_ = 1;
  Basis basis_ = Basis::HMonomial;
  Terms terms_;
};

/// Intra-degree order used for every term listing; also written to metadata.
inline constexpr const char* kIntraDegreeOrder = "reverse-lex";

/// h_r s_lambda as a sum of k-Schur functions over weak strips.
SymElt pieri_kschur(const KBoundedPartition& lambda, int r);
/// h_r g_lambda over affine set-valued strips, with signs. r = 0 returns g_lambda.
SymElt pieri_kk(const KBoundedPartition& lambda, int r);

/// h_r f for f in the KSchur or KkSchur basis (h_0 = 1).
SymElt multiply_h(const SymElt& f, int r);
/// h_mu f, applying the parts of mu largest first.
SymElt multiply_h_partition(const SymElt& f, const KBoundedPartition& mu);

/// h_mu expanded in the KkSchur basis.
SymElt h_to_g(const KBoundedPartition& mu);
/// h_mu expanded in the KSchur basis.
SymElt h_to_s(const KBoundedPartition& mu);

/// Expansion of every basis element of degree <= max_degree in h-monomials.
class TransitionTable {
 public:
  TransitionTable(int k, int max_degree, Basis basis,
                  std::map<KBoundedPartition, SymElt> to_h);

  int k() const { return k_; }
  int max_degree() const { return max_degree_; }
  Basis basis() const { return basis_; }
  const std::map<KBoundedPartition, SymElt>& entries() const { return to_h_; }
  const SymElt& to_h(const KBoundedPartition& lambda) const;

  /// Content hash (FNV-1a 64) of the canonical entry serialization.
  std::string content_hash() const;

  static std::shared_ptr<const TransitionTable> build(int k, int max_degree, Basis basis);

 private:
  int k_;
  int max_degree_;
  Basis basis_;
  std::map<KBoundedPartition, SymElt> to_h_;
};

/// Where transition tables are persisted. Empty disables persistence.
/// Defaults to the KKS_TABLE_CACHE environment variable.
void set_table_cache_dir(const std::optional<std::filesystem::path>& dir);
std::optional<std::filesystem::path> table_cache_dir();

/// Memoized table covering at least max_degree; loads from and writes to the
/// cache directory when one is configured.
std::shared_ptr<const TransitionTable> transition_table(int k, int max_degree, Basis basis);

/// g_lambda (or s_lambda) expanded in h-monomials.
SymElt g_to_h(const KBoundedPartition& lambda);
SymElt s_to_h(const KBoundedPartition& lambda);
/// Convert any element to the h-monomial basis.
SymElt to_h_basis(const SymElt& f);
/// Convert an h-monomial element to the KSchur or KkSchur basis.
SymElt from_h_basis(const SymElt& f, Basis target);

/// f g computed in f's basis (KSchur or KkSchur): g goes through the
/// h-basis, then its monomials act on f by Pieri.
SymElt product(const SymElt& f, const SymElt& g);

/// Sum of g_mu over mu <= lambda in the strong order.
SymElt gtilde(const KBoundedPartition& lambda);

/// gtilde_lambda * (h_0 + ... + h_r) by the signed Pieri rule.
SymElt gtilde_times_htilde(const KBoundedPartition& lambda, int r);
/// Sum of g_mu over mu below some size-r weak strip over lambda.
SymElt gtilde_pieri(const KBoundedPartition& lambda, int r);
/// Coefficientwise signed fiber sum over (v, A) with v <= w_lambda, |A| <= r.
SymElt gtilde_pieri_fibers(const KBoundedPartition& lambda, int r);

/// Integer combination of gtilde labels.
struct StrongSumCombination {
  int k = 1;
  std::map<KBoundedPartition, BigInt> terms;
  SymElt expand() const;
  std::string to_string() const;
};

/// Inclusion-exclusion over intersections of the size-r strips over lambda,
/// computed through the intersection closure.
StrongSumCombination gtilde_pieri_ie(const KBoundedPartition& lambda, int r);
/// The same by literal enumeration of all subfamilies (small inputs only).
StrongSumCombination gtilde_pieri_ie_literal(const KBoundedPartition& lambda, int r);

/// gtilde_{R_t cup lambda} == gtilde_{R_t} gtilde_lambda.
bool gtilde_factorize_check(const KBoundedPartition& lambda, int t);
/// s_{R_t cup lambda} == s_{R_t} s_lambda.
bool kschur_factorize_check(const KBoundedPartition& lambda, int t);
/// Top-degree part of g_lambda equals s_lambda (both in h-monomials).
bool top_degree_check(const KBoundedPartition& lambda);

}  // namespace kks
