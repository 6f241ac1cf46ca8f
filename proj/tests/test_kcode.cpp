#include <doctest.h>

#include <set>
#include <unordered_map>

#include "kks/affine_core.hpp"
#include "kks/brute.hpp"
#include "kks/kcode.hpp"
#include "kks/shapes.hpp"

using namespace kks;

namespace {

struct LexBest {
  std::vector<int> sizes;
  std::size_t ties = 0;
};

// Lexicographically largest (|A_1|, |A_2|, ...) over all length-additive factorizations
// w = x_{A_m} ... x_{A_1}, together with the number of factorizations attaining it.
class LexMaxOracle {
 public:
  explicit LexMaxOracle(bool increasing) : increasing_(increasing) {}

  const LexBest& best(const AffinePermutation& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    LexBest result;
    if (w.is_identity()) {
      result.ties = 1;
    } else {
      const auto lw = length(w);
      for (const auto& a : all_proper_subsets(w.k())) {
        if (a.empty()) continue;
        const auto factor = increasing_ ? u_elem(a) : d_elem(a);
        const auto rest = mul(w, inverse(factor));
        if (length(rest) != lw - static_cast<std::int64_t>(a.size())) continue;
        const LexBest& sub = best(rest);
        std::vector<int> cand{static_cast<int>(a.size())};
        cand.insert(cand.end(), sub.sizes.begin(), sub.sizes.end());
        if (result.ties == 0 || cand > result.sizes) {
          result.sizes = std::move(cand);
          result.ties = sub.ties;
        } else if (cand == result.sizes) {
          result.ties += sub.ties;
        }
      }
    }
    return memo_.emplace(w, std::move(result)).first->second;
  }

 private:
  bool increasing_;
  std::unordered_map<AffinePermutation, LexBest, AffinePermutationHash> memo_;
};

std::vector<int> sizes_of(const std::vector<IndexSet>& rows) {
  std::vector<int> out;
  for (const auto& b : rows) out.push_back(static_cast<int>(b.size()));
  return out;
}

AffinePermutation product_of(int k, const std::vector<IndexSet>& rows, bool increasing) {
  auto w = AffinePermutation::identity(k);
  for (const auto& b : rows) w = mul(increasing ? u_elem(b) : d_elem(b), w);
  return w;
}

bool dominated(const KCode& a, const KCode& b) {
  for (int i = 0; i <= a.k(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool code_is_i_dominant(const KCode& c, int i) {
  const int n = c.k() + 1;
  if (c[(i + n - 1) % n] != 0) return false;
  for (int j = 0; j + 1 < n; ++j) {
    if (c[(i + j) % n] < c[(i + j + 1) % n]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("kcode") {
  TEST_CASE("cyclic elements") {
    const IndexSet a(5, {0, 1, 3, 5});
    CHECK(d_elem(a) == from_word(5, {1, 0, 5, 3}));
    CHECK(u_elem(a) == inverse(d_elem(a)));
    CHECK(length(d_elem(a)) == 4);
    CHECK(d_elem(IndexSet::empty(3)).is_identity());
    for (int k = 1; k <= 4; ++k) {
      for (const auto& b : all_proper_subsets(k)) {
        CHECK(length(d_elem(b)) == static_cast<std::int64_t>(b.size()));
        CHECK(from_word(k, std::span<const int>(d_word(b))) == d_elem(b));
        CHECK(from_word(k, std::span<const int>(u_word(b))) == u_elem(b));
      }
    }
  }

  TEST_CASE("worked example with both codes") {
    const auto w = from_word(3, {0, 1, 3, 2, 0, 3, 2, 1, 0});
    CHECK(w == from_word(3, {1, 0, 3, 1, 2, 0, 1, 3, 0}));
    CHECK(rd(w) == KCode(3, {5, 3, 1, 0}));
    CHECK(ri(w) == KCode(3, {6, 3, 0, 0}));
    CHECK(sh(rd(w)) == KBoundedPartition(3, {3, 2, 2, 1, 1}));
    CHECK(sh(ri(w)) == KBoundedPartition(3, {2, 2, 2, 1, 1, 1}));
    CHECK(k_transpose(sh(ri(w))) == sh(rd(w)));
    CHECK(rd_inverse(rd(w)) == w);
    CHECK(ri_inverse(ri(w)) == w);
  }

  TEST_CASE("code validation") {
    CHECK_THROWS_AS(KCode(3, {1, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(KCode(3, {1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(KCode(3, {1, -1, 0, 0}), std::invalid_argument);
    CHECK(rd(AffinePermutation::identity(3)) == KCode(3, {0, 0, 0, 0}));
  }

  TEST_CASE("decompositions are lexicographically maximal") {
    for (int k = 1; k <= 3; ++k) {
      LexMaxOracle dec(false);
      LexMaxOracle inc(true);
      for (const auto& w : ball(k, k == 3 ? 6 : 7)) {
        const auto drows = max_decreasing_decomposition(w);
        const auto irows = max_increasing_decomposition(w);
        CHECK(product_of(k, drows, false) == w);
        CHECK(product_of(k, irows, true) == w);
        const LexBest& db = dec.best(w);
        const LexBest& ib = inc.best(w);
        CHECK(sizes_of(drows) == db.sizes);
        CHECK(sizes_of(irows) == ib.sizes);
        CHECK(db.ties == 1);
        CHECK(ib.ties == 1);
        CHECK(code_rows(rd(w), false) == drows);
        CHECK(code_rows(ri(w), true) == irows);
      }
    }
  }

  TEST_CASE("codes are bijective") {
    for (int k = 1; k <= 3; ++k) {
      const int radius = k == 3 ? 8 : 9;
      const auto elements = ball(k, radius);
      const auto codes = all_codes(k, radius);
      CHECK(codes.size() == elements.size());
      std::set<std::vector<std::int64_t>> seen_d;
      std::set<std::vector<std::int64_t>> seen_i;
      for (const auto& c : codes) {
        const auto wd = rd_inverse(c);
        const auto wi = ri_inverse(c);
        CHECK(length(wd) == c.total());
        CHECK(length(wi) == c.total());
        CHECK(rd(wd) == c);
        CHECK(ri(wi) == c);
        seen_d.insert(wd.window());
        seen_i.insert(wi.window());
      }
      CHECK(seen_d.size() == codes.size());
      CHECK(seen_i.size() == codes.size());
      for (const auto& w : elements) {
        CHECK(rd_inverse(rd(w)) == w);
        CHECK(ri_inverse(ri(w)) == w);
      }
    }
  }

  TEST_CASE("dominance criterion") {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& w : ball(k, 7)) {
        const auto dr = descents(w, Side::Right);
        const auto code = rd(w);
        for (int i = 0; i <= k; ++i) {
          const bool dominant = dr.subset_of(IndexSet(k, {i}));
          CHECK(dominant == code_is_i_dominant(code, i));
        }
      }
    }
  }

  TEST_CASE("grassmannian codes and shapes") {
    for (int k = 1; k <= 4; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 8)) {
        const auto w = bounded_to_perm(lambda);
        CHECK(sh(rd(w)) == lambda);
        CHECK(sh(ri(w)) == k_transpose(lambda));
      }
    }
  }

  TEST_CASE("codes grow along the left weak order") {
    for (int k = 1; k <= 3; ++k) {
      const auto elements = ball(k, 6);
      for (const auto& y : elements) {
        const auto rdy = rd(y);
        const auto riy = ri(y);
        for (const auto& x : weak_lower_interval(y, Side::Left)) {
          CHECK(dominated(rd(x), rdy));
          CHECK(dominated(ri(x), riy));
        }
      }
    }
  }
}
