#include "kks/symfunc.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "kks/kcode.hpp"
#include "kks/order_lab.hpp"

namespace kks {

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::HMonomial:
      return "h";
    case Basis::KSchur:
      return "ks";
    case Basis::KkSchur:
      return "g";
  }
  throw InternalError("basis_name: unknown basis");
}

Basis parse_basis(const std::string& name) {
  if (name == "h") return Basis::HMonomial;
  if (name == "ks" || name == "s") return Basis::KSchur;
  if (name == "g") return Basis::KkSchur;
  throw std::invalid_argument("unknown basis '" + name + "' (expected h, ks or g)");
}

// ---------------------------------------------------------------------------
// SymElt

SymElt SymElt::basis_element(const KBoundedPartition& lambda, Basis basis) {
  SymElt out(lambda.k(), basis);
  out.add_term(lambda, 1);
  return out;
}

BigInt SymElt::coeff(const KBoundedPartition& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? BigInt(0) : it->second;
}

int SymElt::degree() const {
  int d = -1;
  for (const auto& [lambda, c] : terms_) d = std::max(d, lambda.size());
  return d;
}

SymElt SymElt::homogeneous_part(int d) const {
  SymElt out(k_, basis_);
  for (const auto& [lambda, c] : terms_) {
    if (lambda.size() == d) out.terms_.emplace(lambda, c);
  }
  return out;
}

void SymElt::add_term(const KBoundedPartition& lambda, const BigInt& c) {
  check_same_rank(k_, lambda.k(), "SymElt::add_term");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(lambda, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymElt::check_compatible(const SymElt& other, const char* where) const {
  check_same_rank(k_, other.k_, where);
  if (basis_ != other.basis_) {
    throw std::invalid_argument(std::string(where) + ": basis mismatch (" + basis_name(basis_) +
                                " vs " + basis_name(other.basis_) + ")");
  }
}

SymElt& SymElt::operator+=(const SymElt& other) {
  check_compatible(other, "SymElt::operator+=");
  for (const auto& [lambda, c] : other.terms_) add_term(lambda, c);
  return *this;
}

SymElt& SymElt::operator-=(const SymElt& other) {
  check_compatible(other, "SymElt::operator-=");
  for (const auto& [lambda, c] : other.terms_) add_term(lambda, -c);
  return *this;
}

SymElt SymElt::operator+(const SymElt& other) const {
  SymElt out = *this;
  out += other;
  return out;
}

SymElt SymElt::operator-(const SymElt& other) const {
  SymElt out = *this;
  out -= other;
  return out;
}

SymElt SymElt::scaled(const BigInt& c) const {
  SymElt out(k_, basis_);
  if (c == 0) return out;
  for (const auto& [lambda, x] : terms_) out.terms_.emplace(lambda, x * c);
  return out;
}

bool SymElt::operator==(const SymElt& other) const {
  return k_ == other.k_ && basis_ == other.basis_ && terms_ == other.terms_;
}

namespace {

std::string combination_string(const std::map<KBoundedPartition, BigInt>& terms,
                               const std::string& symbol) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [lambda, c] : terms) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag.str() << '*';
    os << symbol << lambda.to_string();
    first = false;
  }
  return os.str();
}

}  // namespace

std::string SymElt::to_string() const { return combination_string(terms_, basis_name(basis_)); }

// ---------------------------------------------------------------------------
// Pieri rules

namespace {

struct PieriKey {
  KBoundedPartition lambda;
  int r;
  Basis basis;
  bool operator<(const PieriKey& o) const {
    return std::tie(lambda, r, basis) < std::tie(o.lambda, o.r, o.basis);
  }
};

std::shared_mutex pieri_mutex;
std::map<PieriKey, SymElt> pieri_memo;

template <class F>
SymElt memo_pieri(const PieriKey& key, F compute) {
  {
    std::shared_lock lock(pieri_mutex);
    auto it = pieri_memo.find(key);
    if (it != pieri_memo.end()) return it->second;
  }
  SymElt value = compute();
  std::unique_lock lock(pieri_mutex);
  pieri_memo.emplace(key, value);
  return value;
}

void check_pieri_r(int k, int r) {
  if (r < 0 || r > k) {
    throw std::invalid_argument("Pieri degree r must lie in [0, k], got " + std::to_string(r));
  }
}

}  // namespace

SymElt pieri_kschur(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  return memo_pieri({lambda, r, Basis::KSchur}, [&] {
    SymElt out(lambda.k(), Basis::KSchur);
    for (const auto& s : weak_strip_list(lambda, r)) out.add_term(s.top, 1);
    return out;
  });
}

SymElt pieri_kk(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  return memo_pieri({lambda, r, Basis::KkSchur}, [&] {
    SymElt out(lambda.k(), Basis::KkSchur);
    const auto w = bounded_to_perm(lambda);
    const auto lw = length(w);
    for (const auto& s : setvalued_strips(w, r)) {
      const auto e = r + lw - length(s.top);
      out.add_term(perm_to_bounded(s.top), e % 2 == 0 ? 1 : -1);
    }
    return out;
  });
}

SymElt multiply_h(const SymElt& f, int r) {
  check_pieri_r(f.k(), r);
  if (r == 0) return f;
  SymElt out(f.k(), f.basis());
  for (const auto& [lambda, c] : f.terms()) {
    switch (f.basis()) {
      case Basis::HMonomial:
        out.add_term(union_sort(KBoundedPartition(f.k(), {r}), lambda), c);
        break;
      case Basis::KSchur:
        out += pieri_kschur(lambda, r).scaled(c);
        break;
      case Basis::KkSchur:
        out += pieri_kk(lambda, r).scaled(c);
        break;
    }
  }
  return out;
}

SymElt multiply_h_partition(const SymElt& f, const KBoundedPartition& mu) {
  check_same_rank(f.k(), mu.k(), "multiply_h_partition");
  SymElt out = f;
  for (int part : mu.parts()) out = multiply_h(out, part);
  return out;
}

SymElt h_to_g(const KBoundedPartition& mu) {
  return multiply_h_partition(SymElt::basis_element(KBoundedPartition::empty(mu.k()), Basis::KkSchur),
                              mu);
}

SymElt h_to_s(const KBoundedPartition& mu) {
  return multiply_h_partition(SymElt::basis_element(KBoundedPartition::empty(mu.k()), Basis::KSchur),
                              mu);
}

// ---------------------------------------------------------------------------
// Transition tables

TransitionTable::TransitionTable(int k, int max_degree, Basis basis,
                                 std::map<KBoundedPartition, SymElt> to_h)
    : k_(k), max_degree_(max_degree), basis_(basis), to_h_(std::move(to_h)) {}

const SymElt& TransitionTable::to_h(const KBoundedPartition& lambda) const {
  auto it = to_h_.find(lambda);
  if (it == to_h_.end()) {
    throw std::out_of_range("transition table (k=" + std::to_string(k_) + ", degree <= " +
                            std::to_string(max_degree_) + ") has no entry for " +
                            lambda.to_string());
  }
  return it->second;
}

namespace {

nlohmann::json parts_json(const KBoundedPartition& p) { return nlohmann::json(p.parts()); }

nlohmann::json entries_json(const std::map<KBoundedPartition, SymElt>& entries) {
  auto arr = nlohmann::json::array();
  for (const auto& [lambda, f] : entries) {
    auto terms = nlohmann::json::array();
    for (const auto& [mu, c] : f.terms()) {
      terms.push_back({{"parts", parts_json(mu)}, {"coeff", c.str()}});
    }
    arr.push_back({{"parts", parts_json(lambda)}, {"h", terms}});
  }
  return arr;
}

std::string fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

using Matrix = std::vector<std::vector<BigRational>>;

Matrix invert(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<BigRational>(n, BigRational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InternalError("transition block is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const BigRational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const BigRational f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::string TransitionTable::content_hash() const { return fnv1a64(entries_json(to_h_).dump()); }

std::shared_ptr<const TransitionTable> TransitionTable::build(int k, int max_degree, Basis basis) {
  check_rank(k);
  if (basis == Basis::HMonomial) {
    throw std::invalid_argument("transition table target must be ks or g");
  }
  if (max_degree < 0) throw std::invalid_argument("transition table degree must be >= 0");

  // h_mu in the target basis, for every mu of size <= max_degree.
  std::map<KBoundedPartition, SymElt> h_expansion;
  const auto one = SymElt::basis_element(KBoundedPartition::empty(k), basis);
  for (const auto& mu : bounded_partitions_up_to(k, max_degree)) {
    if (mu.empty()) {
      h_expansion.emplace(mu, one);
      continue;
    }
    std::vector<int> rest(mu.parts().begin() + 1, mu.parts().end());
    const auto& base = h_expansion.at(KBoundedPartition(k, rest));
    h_expansion.emplace(mu, multiply_h(base, mu.parts().front()));
  }

  std::map<KBoundedPartition, SymElt> to_h;
  for (int d = 0; d <= max_degree; ++d) {
    const auto block = bounded_partitions(k, d);
    const std::size_t n = block.size();
    Matrix m(n, std::vector<BigRational>(n, BigRational(0)));
    std::vector<SymElt> lower(n, SymElt(k, Basis::HMonomial));
    for (std::size_t i = 0; i < n; ++i) {
      const auto& hx = h_expansion.at(block[i]);
      for (const auto& [nu, c] : hx.terms()) {
        if (nu.size() > d) {
          throw InternalError("h" + block[i].to_string() + " has a term above its degree");
        }
        if (nu.size() == d) {
          const auto j = static_cast<std::size_t>(
              std::find(block.begin(), block.end(), nu) - block.begin());
          m[i][j] = BigRational(c);
        } else {
          lower[i] += to_h.at(nu).scaled(c);
        }
      }
      if (m[i][i] != 1) {
        throw InternalError("transition block of degree " + std::to_string(d) +
                            " lacks a unit diagonal at " + block[i].to_string());
      }
    }
    const auto inv = invert(m);
    for (std::size_t j = 0; j < n; ++j) {
      SymElt x(k, Basis::HMonomial);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = inv[j][i];
        if (c == 0) continue;
        if (boost::multiprecision::denominator(c) != 1) {
          throw InternalError("inverse transition has a non-integral entry");
        }
        const BigInt ci = boost::multiprecision::numerator(c);
        x += (SymElt::basis_element(block[i], Basis::HMonomial) - lower[i]).scaled(ci);
      }
      to_h.emplace(block[j], std::move(x));
    }
  }
  return std::make_shared<const TransitionTable>(k, max_degree, basis, std::move(to_h));
}

namespace {

std::mutex table_mutex;
std::map<std::pair<int, Basis>, std::shared_ptr<const TransitionTable>> table_memo;
bool cache_dir_set = false;
std::optional<std::filesystem::path> cache_dir;

std::filesystem::path table_file(const std::filesystem::path& dir, int k, Basis basis) {
  return dir / ("transition_" + basis_name(basis) + "_k" + std::to_string(k) + ".json");
}

std::shared_ptr<const TransitionTable> load_table(const std::filesystem::path& file, int k,
                                                  Basis basis) {
  std::ifstream in(file);
  if (!in) return nullptr;
  try {
    const auto j = nlohmann::json::parse(in);
    if (j.at("k").get<int>() != k || j.at("basis").get<std::string>() != basis_name(basis) ||
        j.at("order").get<std::string>() != kIntraDegreeOrder) {
      return nullptr;
    }
    std::map<KBoundedPartition, SymElt> entries;
    for (const auto& e : j.at("entries")) {
      SymElt f(k, Basis::HMonomial);
      for (const auto& t : e.at("h")) {
        f.add_term(KBoundedPartition(k, t.at("parts").get<std::vector<int>>()),
                   BigInt(t.at("coeff").get<std::string>()));
      }
      entries.emplace(KBoundedPartition(k, e.at("parts").get<std::vector<int>>()), std::move(f));
    }
    auto table = std::make_shared<const TransitionTable>(k, j.at("max_degree").get<int>(), basis,
                                                         std::move(entries));
    if (table->content_hash() != j.at("hash").get<std::string>()) return nullptr;
    if (table->entries().size() != bounded_partitions_up_to(k, table->max_degree()).size()) {
      return nullptr;
    }
    return table;
  } catch (const std::exception&) {
    return nullptr;
  }
}

void save_table(const std::filesystem::path& file, const TransitionTable& table) {
  nlohmann::json j;
  j["format"] = "kks-transition-table";
  j["k"] = table.k();
  j["basis"] = basis_name(table.basis());
  j["max_degree"] = table.max_degree();
  j["order"] = kIntraDegreeOrder;
  j["hash"] = table.content_hash();
  j["entries"] = entries_json(table.entries());
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

void set_table_cache_dir(const std::optional<std::filesystem::path>& dir) {
  std::lock_guard lock(table_mutex);
  cache_dir = dir;
  cache_dir_set = true;
}

std::optional<std::filesystem::path> table_cache_dir() {
  std::lock_guard lock(table_mutex);
  if (cache_dir_set) return cache_dir;
  if (const char* env = std::getenv("KKS_TABLE_CACHE"); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::nullopt;
}

std::shared_ptr<const TransitionTable> transition_table(int k, int max_degree, Basis basis) {
  const auto dir = table_cache_dir();
  std::lock_guard lock(table_mutex);
  const auto key = std::make_pair(k, basis);
  auto it = table_memo.find(key);
  if (it != table_memo.end() && it->second->max_degree() >= max_degree) return it->second;
  if (dir) {
    if (auto loaded = load_table(table_file(*dir, k, basis), k, basis);
        loaded && loaded->max_degree() >= max_degree) {
      table_memo[key] = loaded;
      return loaded;
    }
  }
  const int degree = std::max(max_degree, it == table_memo.end() ? 0 : it->second->max_degree());
  auto built = TransitionTable::build(k, degree, basis);
  table_memo[key] = built;
  if (dir) save_table(table_file(*dir, k, basis), *built);
  return built;
}

SymElt g_to_h(const KBoundedPartition& lambda) {
  return transition_table(lambda.k(), lambda.size(), Basis::KkSchur)->to_h(lambda);
}

SymElt s_to_h(const KBoundedPartition& lambda) {
  return transition_table(lambda.k(), lambda.size(), Basis::KSchur)->to_h(lambda);
}

SymElt to_h_basis(const SymElt& f) {
  if (f.basis() == Basis::HMonomial) return f;
  SymElt out(f.k(), Basis::HMonomial);
  if (f.is_zero()) return out;
  const auto table = transition_table(f.k(), f.degree(), f.basis());
  for (const auto& [lambda, c] : f.terms()) out += table->to_h(lambda).scaled(c);
  return out;
}

SymElt from_h_basis(const SymElt& f, Basis target) {
  if (f.basis() != Basis::HMonomial) {
    throw std::invalid_argument("from_h_basis: input must be in the h basis");
  }
  if (target == Basis::HMonomial) return f;
  SymElt out(f.k(), target);
  const auto one = SymElt::basis_element(KBoundedPartition::empty(f.k()), target);
  for (const auto& [mu, c] : f.terms()) out += multiply_h_partition(one, mu).scaled(c);
  return out;
}

SymElt product(const SymElt& f, const SymElt& g) {
  check_same_rank(f.k(), g.k(), "product");
  SymElt out(f.k(), f.basis());
  const auto gh = to_h_basis(g);
  for (const auto& [mu, c] : gh.terms()) out += multiply_h_partition(f, mu).scaled(c);
  return out;
}

// ---------------------------------------------------------------------------
// Strong-order sums

SymElt gtilde(const KBoundedPartition& lambda) {
  SymElt out(lambda.k(), Basis::KkSchur);
  const auto w = bounded_to_perm(lambda);
  for (const auto& mu : bounded_partitions_up_to(lambda.k(), lambda.size())) {
    if (bruhat_leq(bounded_to_perm(mu), w)) out.add_term(mu, 1);
  }
  return out;
}

SymElt gtilde_times_htilde(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  const auto g = gtilde(lambda);
  SymElt out = g;
  for (int i = 1; i <= r; ++i) out += multiply_h(g, i);
  return out;
}

SymElt gtilde_pieri(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  const auto w = bounded_to_perm(lambda);
  std::vector<AffinePermutation> tops;
  for (const auto& a : weak_strips(lambda, r)) tops.push_back(mul(d_elem(a), w));
  SymElt out(lambda.k(), Basis::KkSchur);
  for (const auto& mu : bounded_partitions_up_to(lambda.k(), lambda.size() + r)) {
    const auto wm = bounded_to_perm(mu);
    if (std::any_of(tops.begin(), tops.end(),
                    [&](const AffinePermutation& t) { return bruhat_leq(wm, t); })) {
      out.add_term(mu, 1);
    }
  }
  return out;
}

SymElt gtilde_pieri_fibers(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  const int k = lambda.k();
  const auto w = bounded_to_perm(lambda);
  SymElt out(k, Basis::KkSchur);
  for (const auto& u : grassmannian_ball(k, lambda.size() + r)) {
    const auto lu = length(u);
    BigInt total = 0;
    for (const auto& a : all_proper_subsets(k)) {
      if (static_cast<int>(a.size()) > r) break;
      for (const auto& v : fiber_X(a, u).elements()) {
        if (!bruhat_leq(v, w)) continue;
        const auto e = static_cast<std::int64_t>(a.size()) - (lu - length(v));
        total += (e % 2 == 0) ? 1 : -1;
      }
    }
    out.add_term(perm_to_bounded(u), total);
  }
  return out;
}

SymElt StrongSumCombination::expand() const {
  SymElt out(k, Basis::KkSchur);
  for (const auto& [lambda, c] : terms) out += gtilde(lambda).scaled(c);
  return out;
}

std::string StrongSumCombination::to_string() const { return combination_string(terms, "gt"); }

StrongSumCombination gtilde_pieri_ie(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  const auto w = bounded_to_perm(lambda);
  std::vector<IndexSet> closure = weak_strips(lambda, r);
  for (bool grew = true; grew;) {
    grew = false;
    const auto snapshot = closure;
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        const auto c = snapshot[i].intersect(snapshot[j]);
        if (std::find(closure.begin(), closure.end(), c) == closure.end()) {
          closure.push_back(c);
          grew = true;
        }
      }
    }
  }
  // Largest sets first: c(x) = 1 - sum of c(y) over strict supersets y.
  std::sort(closure.begin(), closure.end(), [](const IndexSet& a, const IndexSet& b) {
    return b < a;
  });
  std::map<IndexSet, BigInt> coeff;
  for (const auto& x : closure) {
    BigInt c = 1;
    for (const auto& [y, cy] : coeff) {
      if (x.subset_of(y) && !(x == y)) c -= cy;
    }
    coeff.emplace(x, c);
  }
  StrongSumCombination out{lambda.k(), {}};
  for (const auto& [x, c] : coeff) {
    if (c != 0) out.terms.emplace(perm_to_bounded(mul(d_elem(x), w)), c);
  }
  return out;
}

StrongSumCombination gtilde_pieri_ie_literal(const KBoundedPartition& lambda, int r) {
  check_pieri_r(lambda.k(), r);
  const auto w = bounded_to_perm(lambda);
  const auto strips = weak_strips(lambda, r);
  if (strips.size() > 20) {
    throw ResourceCapExceeded("literal inclusion-exclusion over " +
                              std::to_string(strips.size()) + " strips");
  }
  std::map<KBoundedPartition, BigInt> acc;
  const std::uint32_t total = 1u << strips.size();
  for (std::uint32_t s = 1; s < total; ++s) {
    std::optional<IndexSet> meet;
    int count = 0;
    for (std::size_t i = 0; i < strips.size(); ++i) {
      if (((s >> i) & 1u) == 0) continue;
      meet = meet ? meet->intersect(strips[i]) : strips[i];
      ++count;
    }
    acc[perm_to_bounded(mul(d_elem(*meet), w))] += (count % 2 == 1) ? 1 : -1;
  }
  StrongSumCombination out{lambda.k(), {}};
  for (const auto& [mu, c] : acc) {
    if (c != 0) out.terms.emplace(mu, c);
  }
  return out;
}

bool gtilde_factorize_check(const KBoundedPartition& lambda, int t) {
  const auto rect = k_rectangle(t, lambda.k());
  const auto lhs = gtilde(union_sort(rect, lambda));
  const auto rhs = product(gtilde(lambda), gtilde(rect));
  return lhs == rhs;
}

bool kschur_factorize_check(const KBoundedPartition& lambda, int t) {
  const auto rect = k_rectangle(t, lambda.k());
  const auto lhs = SymElt::basis_element(union_sort(rect, lambda), Basis::KSchur);
  const auto rhs = product(SymElt::basis_element(lambda, Basis::KSchur),
                           SymElt::basis_element(rect, Basis::KSchur));
  return lhs == rhs;
}

bool top_degree_check(const KBoundedPartition& lambda) {
  return g_to_h(lambda).homogeneous_part(lambda.size()) == s_to_h(lambda);
}

}  // namespace kks
