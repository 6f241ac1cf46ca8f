#include "kks/brute.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace kks {

namespace {

void sort_by_length(std::vector<AffinePermutation>& xs) {
  std::vector<std::pair<std::int64_t, AffinePermutation>> keyed;
  keyed.reserve(xs.size());
  for (auto& x : xs) keyed.emplace_back(length(x), std::move(x));
  std::sort(keyed.begin(), keyed.end());
  xs.clear();
  for (auto& [l, x] : keyed) xs.push_back(std::move(x));
}

}  // namespace

std::vector<AffinePermutation> bruhat_lower_interval(const AffinePermutation& v) {
  std::unordered_set<AffinePermutation, AffinePermutationHash> seen{
      AffinePermutation::identity(v.k())};
  for (int a : reduced_word(v).letters) {
    std::vector<AffinePermutation> grown;
    grown.reserve(seen.size());
    for (const auto& x : seen) grown.push_back(x.right_mul(a));
    seen.insert(grown.begin(), grown.end());
  }
  std::vector<AffinePermutation> out(seen.begin(), seen.end());
  sort_by_length(out);
  return out;
}

bool bruhat_leq_subword(const AffinePermutation& u, const AffinePermutation& v) {
  check_same_rank(u.k(), v.k(), "bruhat_leq_subword");
  const auto interval = bruhat_lower_interval(v);
  return std::find(interval.begin(), interval.end(), u) != interval.end();
}

std::vector<AffinePermutation> weak_lower_interval(const AffinePermutation& u, Side side) {
  std::unordered_set<AffinePermutation, AffinePermutationHash> seen{u};
  std::vector<AffinePermutation> frontier{u};
  while (!frontier.empty()) {
    std::vector<AffinePermutation> next;
    for (const auto& x : frontier) {
      for (int i = 0; i <= x.k(); ++i) {
        const bool d = side == Side::Left ? x.has_left_descent(i) : x.has_right_descent(i);
        if (!d) continue;
        auto y = side == Side::Left ? x.left_mul(i) : x.right_mul(i);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  std::vector<AffinePermutation> out(seen.begin(), seen.end());
  sort_by_length(out);
  return out;
}

BoundResult strong_meet(const AffinePermutation& v, const AffinePermutation& w) {
  check_same_rank(v.k(), w.k(), "strong_meet");
  const auto iv = bruhat_lower_interval(v);
  const auto iw = bruhat_lower_interval(w);
  std::unordered_set<AffinePermutation, AffinePermutationHash> in_w(iw.begin(), iw.end());
  std::vector<AffinePermutation> common;
  for (const auto& x : iv) {
    if (in_w.count(x) != 0) common.push_back(x);
  }
  auto res = strong_max_in(common, [](const AffinePermutation&) { return true; });
  if (res.status == BoundStatus::NotInBall) res.status = BoundStatus::NoExtremum;
  return res;
}

BoundResult strong_join_in(const AffinePermutation& v, const AffinePermutation& w,
                           const std::vector<AffinePermutation>& universe) {
  check_same_rank(v.k(), w.k(), "strong_join_in");
  return strong_min_in(universe, [&](const AffinePermutation& z) {
    return bruhat_leq(v, z) && bruhat_leq(w, z);
  });
}

BoundResult left_join_in(const AffinePermutation& v, const AffinePermutation& w,
                         const std::vector<AffinePermutation>& universe) {
  check_same_rank(v.k(), w.k(), "left_join_in");
  std::vector<const AffinePermutation*> cands;
  for (const auto& z : universe) {
    if (weak_leq(v, z, Side::Left) && weak_leq(w, z, Side::Left)) cands.push_back(&z);
  }
  if (cands.empty()) return {BoundStatus::NotInBall, std::nullopt};
  for (const auto* m : cands) {
    if (std::all_of(cands.begin(), cands.end(),
                    [&](const AffinePermutation* z) { return weak_leq(*m, *z, Side::Left); })) {
      return {BoundStatus::Found, *m};
    }
  }
  return {BoundStatus::NoExtremum, std::nullopt};
}

namespace detail {

BoundResult extremum(const std::vector<const AffinePermutation*>& cands, bool minimum) {
  if (cands.empty()) return {BoundStatus::NotInBall, std::nullopt};
  std::vector<std::int64_t> lengths;
  lengths.reserve(cands.size());
  for (const auto* z : cands) lengths.push_back(length(*z));
  const auto target = minimum ? *std::min_element(lengths.begin(), lengths.end())
                              : *std::max_element(lengths.begin(), lengths.end());
  const AffinePermutation* best = nullptr;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (lengths[i] != target) continue;
    if (best != nullptr) return {BoundStatus::NoExtremum, std::nullopt};
    best = cands[i];
  }
  for (const auto* z : cands) {
    if (minimum ? !bruhat_leq(*best, *z) : !bruhat_leq(*z, *best)) {
      return {BoundStatus::NoExtremum, std::nullopt};
    }
  }
  return {BoundStatus::Found, *best};
}

}  // namespace detail

const std::vector<AffinePermutation>& cached_ball(int k, int radius) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<AffinePermutation>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{k, radius}];
  if (!slot) slot = std::make_unique<const std::vector<AffinePermutation>>(ball(k, radius));
  return *slot;
}

BoundResult strong_join(const AffinePermutation& v, const AffinePermutation& w) {
  check_same_rank(v.k(), w.k(), "strong_join");
  const auto lv = length(v);
  const auto lw = length(w);
  const auto& universe = cached_ball(v.k(), static_cast<int>(lv + lw));
  const auto floor = std::max(lv, lw);
  auto result = strong_min_in(universe, [&](const AffinePermutation& z) {
    const auto lz = length(z);
    return lz >= floor && bruhat_leq(v, z) && bruhat_leq(w, z);
  });
  if (result.status == BoundStatus::NotInBall) {
    throw InternalError("strong_join: the Demazure product bound was not found");
  }
  return result;
}

}  // namespace kks
