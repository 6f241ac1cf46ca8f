#pragma once

// Enumeration-based reference computations for the strong and weak orders.
// These are slow by design and serve as cross-checks for the closed forms.

#include <optional>
#include <unordered_set>
#include <vector>

#include "kks/affine_core.hpp"

namespace kks {

/// Strong lower interval [e, v] via the subword property on one reduced word.
std::vector<AffinePermutation> bruhat_lower_interval(const AffinePermutation& v);
bool bruhat_leq_subword(const AffinePermutation& u, const AffinePermutation& v);

/// Lower weak interval [e, u]_L (Side::Left) or [e, u]_R (Side::Right).
std::vector<AffinePermutation> weak_lower_interval(const AffinePermutation& u, Side side);

/// Outcome of a meet or join search.
enum class BoundStatus {
  Found,       // unique extremal bound
  NoExtremum,  // bounds exist but none is extremal
  NotInBall,   // no bound inside the search ball (joins only)
};

struct BoundResult {
  BoundStatus status = BoundStatus::NoExtremum;
  std::optional<AffinePermutation> value;
};

/// Strong meet. Exact: every lower bound lies in [e, v].
BoundResult strong_meet(const AffinePermutation& v, const AffinePermutation& w);

/// Strong join among the elements of `universe`, which should be a length ball.
BoundResult strong_join_in(const AffinePermutation& v, const AffinePermutation& w,
                           const std::vector<AffinePermutation>& universe);

/// Left weak join among the elements of `universe`.
BoundResult left_join_in(const AffinePermutation& v, const AffinePermutation& w,
                         const std::vector<AffinePermutation>& universe);

namespace detail {

// Extremum of the candidates under <=. An extremum must be the unique
// candidate of extremal length, so only that one is tested against the rest.
BoundResult extremum(const std::vector<const AffinePermutation*>& cands, bool minimum);

}  // namespace detail

/// Minimum of {z in universe : pred(z)} under <=, if unique.
template <class Pred>
BoundResult strong_min_in(const std::vector<AffinePermutation>& universe, Pred pred) {
  std::vector<const AffinePermutation*> cands;
  for (const auto& z : universe) {
    if (pred(z)) cands.push_back(&z);
  }
  return detail::extremum(cands, true);
}

/// Maximum of {z in universe : pred(z)} under <=, if unique.
template <class Pred>
BoundResult strong_max_in(const std::vector<AffinePermutation>& universe, Pred pred) {
  std::vector<const AffinePermutation*> cands;
  for (const auto& z : universe) {
    if (pred(z)) cands.push_back(&z);
  }
  return detail::extremum(cands, false);
}

/// Exact strong join. Every minimal upper bound of v and w has length at most
/// l(v) + l(w) (it lies below the Demazure product of the letters used by the
/// two subwords), so searching that ball decides existence. Never NotInBall.
BoundResult strong_join(const AffinePermutation& v, const AffinePermutation& w);

/// Shared, memoized ball(k, radius) for oracle searches.
const std::vector<AffinePermutation>& cached_ball(int k, int radius);

}  // namespace kks
