#include "kks/kcode.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace kks {

namespace {

int cyc(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

std::vector<int> d_word(const IndexSet& a) {
  const int n = a.n();
  int m = 0;
  while (a.contains(m)) ++m;
  std::vector<int> word;
  for (int step = 1; step < n; ++step) {
    const int i = cyc(m - step, n);
    if (a.contains(i)) word.push_back(i);
  }
  return word;
}

std::vector<int> u_word(const IndexSet& a) {
  auto word = d_word(a);
  std::reverse(word.begin(), word.end());
  return word;
}

AffinePermutation d_elem(const IndexSet& a) { return from_word(a.k(), d_word(a)); }

AffinePermutation u_elem(const IndexSet& a) { return from_word(a.k(), u_word(a)); }

// ---------------------------------------------------------------------------

KCode::KCode(int k, std::vector<int> values) : k_(k), values_(std::move(values)) {
  check_rank(k);
  if (static_cast<int>(values_.size()) != k + 1) {
    throw std::invalid_argument("k-code must have k+1 = " + std::to_string(k + 1) + " values");
  }
  if (std::any_of(values_.begin(), values_.end(), [](int v) { return v < 0; })) {
    throw std::invalid_argument("k-code values must be nonnegative");
  }
  if (std::none_of(values_.begin(), values_.end(), [](int v) { return v == 0; })) {
    throw std::invalid_argument("k-code must vanish at some index");
  }
}

int KCode::total() const { return std::accumulate(values_.begin(), values_.end(), 0); }

std::string KCode::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0) os << ',';
    os << values_[i];
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<IndexSet> max_decomposition(const AffinePermutation& w, bool increasing) {
  const int k = w.k();
  std::vector<IndexSet> rows;
  auto cur = w;
  auto len = length(cur);
  while (len > 0) {
    std::vector<IndexSet> found;
    std::vector<AffinePermutation> rests;
    const int top = static_cast<int>(std::min<std::int64_t>(k, len));
    for (int s = top; s >= 1 && found.empty(); --s) {
      for (const auto& a : subsets_of_size(k, static_cast<std::size_t>(s))) {
        // cur = rest * factor with lengths adding.
        const auto factor_inv = increasing ? d_elem(a) : u_elem(a);
        auto rest = mul(cur, factor_inv);
        if (length(rest) + s == len) {
          found.push_back(a);
          rests.push_back(std::move(rest));
        }
      }
    }
    if (found.size() != 1) {
      throw InternalError("maximal decomposition: " + std::to_string(found.size()) +
                          " maximal row candidates of equal size");
    }
    len -= static_cast<std::int64_t>(found.front().size());
    rows.push_back(found.front());
    cur = std::move(rests.front());
  }
  return rows;
}

KCode code_from_rows(int k, const std::vector<IndexSet>& rows, bool increasing) {
  const int n = k + 1;
  std::vector<std::vector<int>> column_rows(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const int jj = static_cast<int>(j);
    for (int a : rows[j].members()) {
      const int c = increasing ? cyc(jj - a, n) : cyc(a + jj, n);
      column_rows[static_cast<std::size_t>(c)].push_back(jj);
    }
  }
  std::vector<int> values(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < column_rows.size(); ++c) {
    const auto& rs = column_rows[c];
    for (std::size_t t = 0; t < rs.size(); ++t) {
      if (rs[t] != static_cast<int>(t)) {
        throw InternalError("k-code diagram is not justified to the bottom in column " +
                            std::to_string(c));
      }
    }
    values[c] = static_cast<int>(rs.size());
  }
  if (std::none_of(values.begin(), values.end(), [](int v) { return v == 0; })) {
    throw InternalError("k-code diagram has no empty column");
  }
  return KCode(k, std::move(values));
}

AffinePermutation from_rows(int k, const std::vector<IndexSet>& rows, bool increasing) {
  auto w = AffinePermutation::identity(k);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    w = mul(w, increasing ? u_elem(*it) : d_elem(*it));
  }
  return w;
}

}  // namespace

std::vector<IndexSet> max_decreasing_decomposition(const AffinePermutation& w) {
  return max_decomposition(w, false);
}

std::vector<IndexSet> max_increasing_decomposition(const AffinePermutation& w) {
  return max_decomposition(w, true);
}

KCode rd(const AffinePermutation& w) {
  return code_from_rows(w.k(), max_decreasing_decomposition(w), false);
}

KCode ri(const AffinePermutation& w) {
  return code_from_rows(w.k(), max_increasing_decomposition(w), true);
}

std::vector<IndexSet> code_rows(const KCode& code, bool increasing) {
  const int n = code.k() + 1;
  const auto& v = code.values();
  const int height = v.empty() ? 0 : *std::max_element(v.begin(), v.end());
  std::vector<IndexSet> rows;
  for (int j = 0; j < height; ++j) {
    std::uint32_t mask = 0;
    for (int c = 0; c < n; ++c) {
      if (code[c] > j) mask |= 1u << (increasing ? cyc(j - c, n) : cyc(c - j, n));
    }
    rows.push_back(IndexSet::from_mask(code.k(), mask));
  }
  return rows;
}

AffinePermutation rd_inverse(const KCode& code) {
  return from_rows(code.k(), code_rows(code, false), false);
}

AffinePermutation ri_inverse(const KCode& code) {
  return from_rows(code.k(), code_rows(code, true), true);
}

KBoundedPartition sh(const KCode& code) {
  const auto& v = code.values();
  const int height = v.empty() ? 0 : *std::max_element(v.begin(), v.end());
  std::vector<int> parts;
  for (int j = 1; j <= height; ++j) {
    parts.push_back(static_cast<int>(std::count_if(v.begin(), v.end(), [&](int x) { return x >= j; })));
  }
  return KBoundedPartition(code.k(), std::move(parts));
}

namespace {

void codes_rec(int k, std::size_t pos, int remaining, std::vector<int>& cur,
               std::vector<KCode>& out) {
  if (pos == cur.size()) {
    if (std::find(cur.begin(), cur.end(), 0) != cur.end()) out.emplace_back(k, cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    codes_rec(k, pos + 1, remaining - v, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<KCode> all_codes(int k, int max_total) {
  check_rank(k);
  std::vector<KCode> out;
  std::vector<int> cur(static_cast<std::size_t>(k + 1), 0);
  codes_rec(k, 0, max_total, cur, out);
  return out;
}

}  // namespace kks
