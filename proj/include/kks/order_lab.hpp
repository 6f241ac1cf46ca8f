#pragma once

// Families of index sets attached to an affine permutation u: the sets A for
// which d_A u sits above u (plus side) or d_A^{-1} u below u (minus side) in
// the left weak order, and the Demazure fibers built from them.

#include <optional>
#include <vector>

#include "kks/affine_core.hpp"
#include "kks/shapes.hpp"

namespace kks {

struct ZSets {
  AffinePermutation u;
  std::vector<IndexSet> plus;   // d_A u >=_L u
  std::vector<IndexSet> minus;  // d_A^{-1} u <=_L u
  /// Plus-side sets with Grassmannian d_A u; filled only for Grassmannian u.
  std::vector<IndexSet> plus_grassmannian;
};

bool in_z_plus(const AffinePermutation& u, const IndexSet& a);
bool in_z_minus(const AffinePermutation& u, const IndexSet& a);

/// All three families, sorted canonically. Closure under intersection, under
/// proper unions, and existence of a maximum are asserted (InternalError).
ZSets z_sets(const AffinePermutation& u);

/// Throws InternalError unless the family is closed under intersection and
/// proper union and, when required, has a maximum under inclusion.
void check_family_structure(const std::vector<IndexSet>& family, const char* name,
                            bool require_maximum);

/// d_{A cap B} lambda for weak strips d_A lambda, d_B lambda.
KBoundedPartition strips_meet(const KBoundedPartition& lambda, const IndexSet& a,
                              const IndexSet& b);

/// Residue of the last box in the first row of the core of lambda (k for the
/// empty partition). Never occurs in a weak-strip index set over lambda.
int forbidden_index(const KBoundedPartition& lambda);

/// Residues outside the first row of RI(w^{-1}). None of them occurs in any
/// minus-side index set of w.
std::vector<int> forbidden_minus_indices(const AffinePermutation& w);

/// Labels B of a Demazure fiber {d_B^{-1} u : B in members}.
struct Fiber {
  IndexSet a;
  AffinePermutation u;
  std::vector<IndexSet> members;

  std::vector<AffinePermutation> elements() const;
  /// Intersection of all members, when nonempty.
  std::optional<IndexSet> bottom() const;
};

/// {B subset A : d_A * (d_B^{-1} u) = u}. Boolean-interval shape asserted.
Fiber fiber_X(const IndexSet& a, const AffinePermutation& u);
/// Members of fiber_X with d_B^{-1} u <= w.
Fiber fiber_Y(const IndexSet& a, const AffinePermutation& u, const AffinePermutation& w);

/// A_0 with w meet u = d_{A_0}^{-1} u, or nullopt when the half-strong meet
/// is not of that form.
std::optional<IndexSet> find_A0(const AffinePermutation& u, const AffinePermutation& w);

struct FiberRow {
  AffinePermutation v;
  IndexSet a;
  int sign = 1;  // (-1)^{|A| - (l(u) - l(v))}
};

/// All (v, A) with d_A * v = u, optionally restricted to v <= w, ordered by A
/// then by length of v.
std::vector<FiberRow> fiber_table(const AffinePermutation& u,
                                  const std::optional<AffinePermutation>& w = std::nullopt);

/// Saturated inclusion chain from a to b inside the family, if one exists.
std::optional<std::vector<IndexSet>> family_chain(const std::vector<IndexSet>& family,
                                                  const IndexSet& a, const IndexSet& b);

/// Saturated strong chain from x to y staying in [e, u]_L, if one exists.
std::optional<std::vector<AffinePermutation>> weak_ideal_chain(const AffinePermutation& u,
                                                               const AffinePermutation& x,
                                                               const AffinePermutation& y);

/// No i in a and j in b with i - j in {0, 1, -1} mod k+1.
bool strongly_disjoint(const IndexSet& a, const IndexSet& b);
/// No generator in a reduced word of x is equal or adjacent to one of y.
bool strongly_commutative(const AffinePermutation& x, const AffinePermutation& y);

}  // namespace kks
