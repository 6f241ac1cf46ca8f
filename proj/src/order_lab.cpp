#include "kks/order_lab.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "kks/brute.hpp"
#include "kks/kcode.hpp"

namespace kks {

bool in_z_plus(const AffinePermutation& u, const IndexSet& a) {
  check_same_rank(u.k(), a.k(), "in_z_plus");
  return length(mul(d_elem(a), u)) == length(u) + static_cast<std::int64_t>(a.size());
}

bool in_z_minus(const AffinePermutation& u, const IndexSet& a) {
  check_same_rank(u.k(), a.k(), "in_z_minus");
  return length(mul(u_elem(a), u)) + static_cast<std::int64_t>(a.size()) == length(u);
}

void check_family_structure(const std::vector<IndexSet>& family, const char* name,
                            bool require_maximum) {
  if (family.empty()) throw InternalError(std::string(name) + ": family is empty");
  auto contains = [&](const IndexSet& x) {
    return std::find(family.begin(), family.end(), x) != family.end();
  };
  for (const auto& a : family) {
    for (const auto& b : family) {
      if (!contains(a.intersect(b))) {
        throw InternalError(std::string(name) + ": not closed under intersection at " +
                            a.to_string() + ", " + b.to_string());
      }
      if (auto c = a.unite(b); c && !contains(*c)) {
        throw InternalError(std::string(name) + ": not closed under union at " + a.to_string() +
                            ", " + b.to_string());
      }
    }
  }
  if (!require_maximum) return;
  const auto& top = family.back();
  for (const auto& a : family) {
    if (!a.subset_of(top)) {
      throw InternalError(std::string(name) + ": no maximum under inclusion");
    }
  }
}

ZSets z_sets(const AffinePermutation& u) {
  ZSets out{u, {}, {}, {}};
  const bool grassmannian = is_grassmannian(u);
  const auto lu = length(u);
  for (const auto& a : all_proper_subsets(u.k())) {
    const auto s = static_cast<std::int64_t>(a.size());
    const auto up = mul(d_elem(a), u);
    if (length(up) == lu + s) {
      out.plus.push_back(a);
      if (grassmannian && is_grassmannian(up)) out.plus_grassmannian.push_back(a);
    }
    if (length(mul(u_elem(a), u)) + s == lu) out.minus.push_back(a);
  }
  // The plus family can lack a maximum (u = e gives every proper subset).
  check_family_structure(out.plus, "Z'_+", false);
  check_family_structure(out.minus, "Z'_-", true);
  if (grassmannian) check_family_structure(out.plus_grassmannian, "Z'°_+", true);
  return out;
}

KBoundedPartition strips_meet(const KBoundedPartition& lambda, const IndexSet& a,
                              const IndexSet& b) {
  check_same_rank(lambda.k(), a.k(), "strips_meet");
  check_same_rank(lambda.k(), b.k(), "strips_meet");
  const auto w = bounded_to_perm(lambda);
  for (const auto* x : {&a, &b}) {
    const auto top = mul(d_elem(*x), w);
    if (length(top) != length(w) + static_cast<std::int64_t>(x->size()) || !is_grassmannian(top)) {
      throw std::invalid_argument("strips_meet: " + x->to_string() + " is not a weak strip over " +
                                  lambda.to_string());
    }
  }
  return perm_to_bounded(mul(d_elem(a.intersect(b)), w));
}

int forbidden_index(const KBoundedPartition& lambda) {
  const int n = lambda.k() + 1;
  const auto core = bounded_to_core(lambda);
  const int last_col = core.empty() ? 0 : core.parts().front();
  return ((last_col - 1) % n + n) % n;
}

std::vector<int> forbidden_minus_indices(const AffinePermutation& w) {
  const auto code = ri(inverse(w));
  const int n = w.n();
  std::vector<bool> first_row(static_cast<std::size_t>(n), false);
  for (int c = 0; c < n; ++c) {
    if (code[c] >= 1) first_row[static_cast<std::size_t>((n - c) % n)] = true;
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (!first_row[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<AffinePermutation> Fiber::elements() const {
  std::vector<AffinePermutation> out;
  for (const auto& b : members) out.push_back(mul(u_elem(b), u));
  return out;
}

std::optional<IndexSet> Fiber::bottom() const {
  if (members.empty()) return std::nullopt;
  auto acc = members.front();
  for (const auto& b : members) acc = acc.intersect(b);
  return acc;
}

namespace {

std::vector<IndexSet> submasks(const IndexSet& a) {
  std::vector<IndexSet> out;
  const std::uint32_t m = a.mask();
  for (std::uint32_t s = m;; s = (s - 1) & m) {
    out.push_back(IndexSet::from_mask(a.k(), s));
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_boolean_interval(const Fiber& f, const char* name) {
  const auto bottom = f.bottom();
  if (!bottom) return;
  std::vector<IndexSet> expected;
  for (const auto& b : submasks(f.a)) {
    if (bottom->subset_of(b)) expected.push_back(b);
  }
  if (expected != f.members) {
    throw InternalError(std::string(name) + " for A=" + f.a.to_string() +
                        " is not a boolean interval");
  }
}

}  // namespace

Fiber fiber_X(const IndexSet& a, const AffinePermutation& u) {
  check_same_rank(a.k(), u.k(), "fiber_X");
  const auto da = d_elem(a);
  Fiber f{a, u, {}};
  for (const auto& b : submasks(a)) {
    if (demazure(da, mul(u_elem(b), u)) == u) f.members.push_back(b);
  }
  check_boolean_interval(f, "X'");
  return f;
}

Fiber fiber_Y(const IndexSet& a, const AffinePermutation& u, const AffinePermutation& w) {
  check_same_rank(u.k(), w.k(), "fiber_Y");
  auto f = fiber_X(a, u);
  std::vector<IndexSet> kept;
  for (const auto& b : f.members) {
    if (bruhat_leq(mul(u_elem(b), u), w)) kept.push_back(b);
  }
  f.members = std::move(kept);
  check_boolean_interval(f, "Y'");
  return f;
}

std::optional<IndexSet> find_A0(const AffinePermutation& u, const AffinePermutation& w) {
  check_same_rank(u.k(), w.k(), "find_A0");
  const auto z = meet_LS(u, w);
  const auto x = mul(u, inverse(z));
  const auto lx = length(x);
  if (lx > u.k()) return std::nullopt;
  for (const auto& a : subsets_of_size(u.k(), static_cast<std::size_t>(lx))) {
    if (d_elem(a) == x) return a;
  }
  return std::nullopt;
}

std::vector<FiberRow> fiber_table(const AffinePermutation& u,
                                  const std::optional<AffinePermutation>& w) {
  const auto lu = length(u);
  std::vector<FiberRow> rows;
  for (const auto& a : all_proper_subsets(u.k())) {
    const auto f = fiber_X(a, u);
    for (const auto& v : f.elements()) {
      if (w && !bruhat_leq(v, *w)) continue;
      const auto e = static_cast<std::int64_t>(a.size()) - (lu - length(v));
      rows.push_back(FiberRow{v, a, (e % 2 == 0) ? 1 : -1});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const FiberRow& x, const FiberRow& y) {
    if (x.a != y.a) return x.a < y.a;
    const auto lx = length(x.v);
    const auto ly = length(y.v);
    if (lx != ly) return lx < ly;
    return x.v < y.v;
  });
  return rows;
}

std::optional<std::vector<IndexSet>> family_chain(const std::vector<IndexSet>& family,
                                                  const IndexSet& a, const IndexSet& b) {
  auto in_family = [&](const IndexSet& x) {
    return std::find(family.begin(), family.end(), x) != family.end();
  };
  if (!a.subset_of(b) || !in_family(a) || !in_family(b)) return std::nullopt;
  std::map<IndexSet, IndexSet> parent;
  std::deque<IndexSet> queue{a};
  parent.emplace(a, a);
  while (!queue.empty()) {
    const auto cur = queue.front();
    queue.pop_front();
    if (cur == b) break;
    for (int i : b.members()) {
      if (cur.contains(i)) continue;
      const auto next = cur.with(i);
      if (!next || !in_family(*next) || parent.count(*next) != 0) continue;
      parent.emplace(*next, cur);
      queue.push_back(*next);
    }
  }
  if (parent.count(b) == 0) return std::nullopt;
  std::vector<IndexSet> chain{b};
  while (!(chain.back() == a)) chain.push_back(parent.at(chain.back()));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::optional<std::vector<AffinePermutation>> weak_ideal_chain(const AffinePermutation& u,
                                                               const AffinePermutation& x,
                                                               const AffinePermutation& y) {
  const auto ideal = weak_lower_interval(u, Side::Left);
  std::map<std::int64_t, std::vector<const AffinePermutation*>> by_length;
  for (const auto& z : ideal) by_length[length(z)].push_back(&z);
  const auto lx = length(x);
  const auto ly = length(y);
  if (!bruhat_leq(x, y)) return std::nullopt;
  // Layered search: keep the elements of the ideal reachable from x by covers
  // and lying below y.
  std::unordered_map<AffinePermutation, AffinePermutation, AffinePermutationHash> parent;
  std::vector<AffinePermutation> layer{x};
  if (std::find(ideal.begin(), ideal.end(), x) == ideal.end()) return std::nullopt;
  for (auto l = lx; l < ly && !layer.empty(); ++l) {
    std::vector<AffinePermutation> next;
    for (const auto* z : by_length[l + 1]) {
      if (!bruhat_leq(*z, y)) continue;
      for (const auto& p : layer) {
        if (bruhat_leq(p, *z)) {
          parent.emplace(*z, p);
          next.push_back(*z);
          break;
        }
      }
    }
    layer = std::move(next);
  }
  if (lx == ly) {
    if (x == y) return std::vector<AffinePermutation>{x};
    return std::nullopt;
  }
  if (parent.count(y) == 0) return std::nullopt;
  std::vector<AffinePermutation> chain{y};
  while (!(chain.back() == x)) chain.push_back(parent.at(chain.back()));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool strongly_disjoint(const IndexSet& a, const IndexSet& b) {
  check_same_rank(a.k(), b.k(), "strongly_disjoint");
  const int n = a.n();
  for (int i : a.members()) {
    for (int j : b.members()) {
      const int d = ((i - j) % n + n) % n;
      if (d == 0 || d == 1 || d == n - 1) return false;
    }
  }
  return true;
}

bool strongly_commutative(const AffinePermutation& x, const AffinePermutation& y) {
  check_same_rank(x.k(), y.k(), "strongly_commutative");
  const int n = x.n();
  const auto wx = reduced_word(x).letters;
  const auto wy = reduced_word(y).letters;
  for (int i : wx) {
    for (int j : wy) {
      const int d = ((i - j) % n + n) % n;
      if (d == 0 || d == 1 || d == n - 1) return false;
    }
  }
  return true;
}

}  // namespace kks
