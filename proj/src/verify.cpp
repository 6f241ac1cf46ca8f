#include "kks/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "kks/brute.hpp"
#include "kks/json_io.hpp"
#include "kks/kcode.hpp"
#include "kks/order_lab.hpp"
#include "kks/shapes.hpp"
#include "kks/symfunc.hpp"

namespace kks {

using nlohmann::json;

void Recorder::fail(const std::string& check, json witness) {
  auto& t = tallies_[check];
  ++t.instances;
  ++t.failures;
  if (t.failures <= kMaxWitnessesPerCheck) {
    counterexamples_.push_back(Counterexample{check, std::move(witness)});
  }
}

void Recorder::merge(const Recorder& other) {
  for (const auto& [name, t] : other.tallies_) {
    auto& mine = tallies_[name];
    const auto kept_before = std::min(mine.failures, kMaxWitnessesPerCheck);
    mine.instances += t.instances;
    mine.failures += t.failures;
    mine.skipped += t.skipped;
    auto room = kMaxWitnessesPerCheck - kept_before;
    for (const auto& c : other.counterexamples_) {
      if (c.check == name && room > 0) {
        counterexamples_.push_back(c);
        --room;
      }
    }
  }
}

std::size_t VerifyReport::instances() const {
  std::size_t total = 0;
  for (const auto& [name, t] : results.tallies()) total += t.instances;
  return total;
}

json VerifyReport::to_json() const {
  json checks = json::array();
  for (const auto& [name, t] : results.tallies()) {
    checks.push_back({{"check", name},
                      {"instances", t.instances},
                      {"failures", t.failures},
                      {"skipped", t.skipped}});
  }
  json cex = json::array();
  for (const auto& c : results.counterexamples()) {
    cex.push_back({{"check", c.check}, {"witness", c.witness}});
  }
  return {{"suite", suite}, {"k", k},           {"max_size", max_size}, {"ok", ok()},
          {"checks", checks}, {"counterexamples", cex}};
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite << " k=" << k << " max-size=" << max_size << '\n';
  for (const auto& [name, t] : results.tallies()) {
    out << "  " << name << ": " << t.instances << " instances, " << t.failures << " failures";
    if (t.skipped > 0) out << ", " << t.skipped << " uncertified";
    out << '\n';
  }
  for (const auto& c : results.counterexamples()) {
    out << "counterexample " << c.check << ' ' << c.witness.dump() << '\n';
  }
  out << (ok() ? "result: ok" : "result: COUNTEREXAMPLE") << '\n';
  return out.str();
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Runs body(i, recorder) for i in [0, n) on a pool of workers and merges the
// per-task recorders in index order.
void run_tasks(std::size_t n, int jobs, const std::function<void(std::size_t, Recorder&)>& body,
               Recorder& out) {
  std::vector<Recorder> parts(n);
  auto guarded = [&](std::size_t i) {
    try {
      body(i, parts[i]);
    } catch (const std::exception& e) {
      parts[i].fail("exception", json{{"task", i}, {"what", e.what()}});
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, resolve_jobs(jobs)));
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < n; i = next.fetch_add(1)) guarded(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& p : parts) out.merge(p);
}

VerifyReport make_report(const std::string& suite, int k, int max_size) {
  check_rank(k);
  if (max_size < 0) throw std::invalid_argument("max_size must be nonnegative");
  VerifyReport r;
  r.suite = suite;
  r.k = k;
  r.max_size = max_size;
  return r;
}

json lambda_r(const KBoundedPartition& lambda, int r, const char* name = "r") {
  return {{"lambda", to_json(lambda)}, {name, r}};
}

bool zero_one(const SymElt& f) {
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [](const auto& t) { return t.second == 1; });
}

struct PieriTask {
  KBoundedPartition lambda;
  int r;
};

std::vector<PieriTask> pieri_tasks(int k, int max_size) {
  std::vector<PieriTask> out;
  for (const auto& lambda : bounded_partitions_up_to(k, max_size)) {
    for (int r = 1; r <= k; ++r) out.push_back({lambda, r});
  }
  return out;
}

void pieri_signed_checks(const PieriTask& t, Recorder& rec) {
  const auto signed_form = gtilde_times_htilde(t.lambda, t.r);
  const auto union_form = gtilde_pieri(t.lambda, t.r);
  rec.expect("signed-pieri-equals-interval-union", signed_form == union_form, [&] {
    auto w = lambda_r(t.lambda, t.r);
    w["signed"] = to_json(signed_form);
    w["interval_union"] = to_json(union_form);
    return w;
  });
  rec.expect("signed-pieri-coefficients-zero-one", zero_one(signed_form), [&] {
    auto w = lambda_r(t.lambda, t.r);
    w["signed"] = to_json(signed_form);
    return w;
  });
  const auto fiber_form = gtilde_pieri_fibers(t.lambda, t.r);
  rec.expect("fiber-sum-equals-interval-union", fiber_form == union_form, [&] {
    auto w = lambda_r(t.lambda, t.r);
    w["fiber_sum"] = to_json(fiber_form);
    w["interval_union"] = to_json(union_form);
    return w;
  });
}

// Literal inclusion-exclusion enumerates 2^m subfamilies.
constexpr std::size_t kLiteralStripLimit = 12;

void pieri_ie_checks(const PieriTask& t, Recorder& rec) {
  const auto union_form = gtilde_pieri(t.lambda, t.r);
  const auto ie = gtilde_pieri_ie(t.lambda, t.r);
  const auto expanded = ie.expand();
  rec.expect("inclusion-exclusion-equals-interval-union", expanded == union_form, [&] {
    auto w = lambda_r(t.lambda, t.r);
    w["inclusion_exclusion"] = to_json(ie);
    w["expanded"] = to_json(expanded);
    w["interval_union"] = to_json(union_form);
    return w;
  });
  if (weak_strips(t.lambda, t.r).size() <= kLiteralStripLimit) {
    const auto literal = gtilde_pieri_ie_literal(t.lambda, t.r);
    rec.expect("inclusion-exclusion-closure-equals-literal", literal.terms == ie.terms, [&] {
      auto w = lambda_r(t.lambda, t.r);
      w["closure"] = to_json(ie);
      w["literal"] = to_json(literal);
      return w;
    });
  }
}

}  // namespace

VerifyReport verify_pieri_signed(int k, int max_size, int jobs) {
  auto report = make_report("pieri-signed", k, max_size);
  const auto tasks = pieri_tasks(k, max_size);
  run_tasks(
      tasks.size(), jobs, [&](std::size_t i, Recorder& rec) { pieri_signed_checks(tasks[i], rec); },
      report.results);
  return report;
}

VerifyReport verify_pieri_ie(int k, int max_size, int jobs) {
  auto report = make_report("pieri-ie", k, max_size);
  const auto tasks = pieri_tasks(k, max_size);
  run_tasks(
      tasks.size(), jobs, [&](std::size_t i, Recorder& rec) { pieri_ie_checks(tasks[i], rec); },
      report.results);
  return report;
}

VerifyReport verify_pieri_sum(int k, int max_size, int jobs) {
  auto report = make_report("pieri-sum", k, max_size);
  const auto tasks = pieri_tasks(k, max_size);
  run_tasks(
      tasks.size(), jobs,
      [&](std::size_t i, Recorder& rec) {
        pieri_signed_checks(tasks[i], rec);
        pieri_ie_checks(tasks[i], rec);
      },
      report.results);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct RectTask {
  KBoundedPartition lambda;
  int t;
};

std::vector<RectTask> rect_tasks(int k, int max_size) {
  std::vector<RectTask> out;
  for (const auto& lambda : bounded_partitions_up_to(k, max_size)) {
    for (int t = 1; t <= k; ++t) out.push_back({lambda, t});
  }
  return out;
}

void gtilde_rect_check(const RectTask& task, Recorder& rec) {
  rec.expect("gtilde-rectangle-factorization", gtilde_factorize_check(task.lambda, task.t), [&] {
    const auto rect = k_rectangle(task.t, task.lambda.k());
    auto w = lambda_r(task.lambda, task.t, "t");
    w["lhs"] = to_json(gtilde(union_sort(rect, task.lambda)));
    w["rhs"] = to_json(product(gtilde(rect), gtilde(task.lambda)));
    return w;
  });
}

void kschur_rect_check(const RectTask& task, Recorder& rec) {
  rec.expect("kschur-rectangle-factorization", kschur_factorize_check(task.lambda, task.t), [&] {
    const auto rect = k_rectangle(task.t, task.lambda.k());
    auto w = lambda_r(task.lambda, task.t, "t");
    w["lhs"] = to_json(SymElt::basis_element(union_sort(rect, task.lambda), Basis::KSchur));
    w["rhs"] = to_json(product(SymElt::basis_element(rect, Basis::KSchur),
                               SymElt::basis_element(task.lambda, Basis::KSchur)));
    return w;
  });
}

void top_degree_check_rec(const KBoundedPartition& lambda, Recorder& rec) {
  rec.expect("top-degree-equals-kschur", top_degree_check(lambda), [&] {
    return json{{"lambda", to_json(lambda)},
                {"g_top", to_json(g_to_h(lambda).homogeneous_part(lambda.size()))},
                {"s", to_json(s_to_h(lambda))}};
  });
}

}  // namespace

VerifyReport verify_gtilde_factorization(int k, int max_size, int jobs) {
  auto report = make_report("gtilde-factorization", k, max_size);
  const auto tasks = rect_tasks(k, max_size);
  run_tasks(
      tasks.size(), jobs, [&](std::size_t i, Recorder& rec) { gtilde_rect_check(tasks[i], rec); },
      report.results);
  return report;
}

VerifyReport verify_kschur(int k, int fac_size, int top_size, int jobs) {
  auto report = make_report("kschur", k, std::max(fac_size, top_size));
  const auto tasks = rect_tasks(k, fac_size);
  const auto tops = bounded_partitions_up_to(k, top_size);
  run_tasks(
      tasks.size() + tops.size(), jobs,
      [&](std::size_t i, Recorder& rec) {
        if (i < tasks.size()) {
          kschur_rect_check(tasks[i], rec);
        } else {
          top_degree_check_rec(tops[i - tasks.size()], rec);
        }
      },
      report.results);
  return report;
}

VerifyReport verify_factorization(int k, int max_size, int jobs) {
  auto report = make_report("factorization", k, max_size);
  const auto tasks = rect_tasks(k, max_size);
  const auto tops = bounded_partitions_up_to(k, max_size);
  run_tasks(
      tasks.size() + tops.size(), jobs,
      [&](std::size_t i, Recorder& rec) {
        if (i < tasks.size()) {
          gtilde_rect_check(tasks[i], rec);
          kschur_rect_check(tasks[i], rec);
        } else {
          top_degree_check_rec(tops[i - tasks.size()], rec);
        }
      },
      report.results);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

json set_list_json(const std::vector<IndexSet>& sets) {
  json arr = json::array();
  for (const auto& a : sets) arr.push_back(members_json(a));
  return arr;
}

json bound_json(const BoundResult& b) {
  switch (b.status) {
    case BoundStatus::Found:
      return to_json(*b.value);
    case BoundStatus::NoExtremum:
      return "no extremum";
    case BoundStatus::NotInBall:
      return "not in ball";
  }
  return nullptr;
}

bool found_equal(const BoundResult& b, const AffinePermutation& x) {
  return b.status == BoundStatus::Found && *b.value == x;
}

bool contains(const std::vector<AffinePermutation>& xs, const AffinePermutation& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

bool contains(const std::vector<IndexSet>& xs, const IndexSet& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Demazure / anti-Demazure actions on both sides.
void bi_pair_checks(const AffinePermutation& x, const AffinePermutation& y, Recorder& rec) {
  auto w = [&] { return json{{"x", to_json(x)}, {"y", to_json(y)}}; };
  for (const Side side : {Side::Left, Side::Right}) {
    const std::string tag = side == Side::Left ? "" : "-right";
    rec.expect("phi-psi-weak-comparison" + tag,
               weak_leq(y, phi_apply(x, y, side), side) && weak_leq(psi_apply(x, y, side), y, side),
               w);
    const auto xi = inverse(x);
    rec.expect("phi-psi-composite-bounds" + tag,
               bruhat_leq(y, phi_apply(x, psi_apply(xi, y, side), side)) &&
                   bruhat_leq(psi_apply(xi, phi_apply(x, y, side), side), y),
               w);
  }
}

void bi_triple_checks(const AffinePermutation& x, const AffinePermutation& v,
                      const AffinePermutation& w, Recorder& rec) {
  if (!bruhat_leq(v, w)) return;
  auto wit = [&] { return json{{"x", to_json(x)}, {"v", to_json(v)}, {"w", to_json(w)}}; };
  for (const Side side : {Side::Left, Side::Right}) {
    const std::string tag = side == Side::Left ? "" : "-right";
    rec.expect("phi-psi-monotone" + tag,
               bruhat_leq(phi_apply(x, v, side), phi_apply(x, w, side)) &&
                   bruhat_leq(psi_apply(x, v, side), psi_apply(x, w, side)),
               wit);
    // Here v <= w play the role of the acting elements and x the argument.
    rec.expect("phi-psi-acting-monotone" + tag,
               bruhat_leq(phi_apply(v, x, side), phi_apply(w, x, side)) &&
                   bruhat_leq(psi_apply(w, x, side), psi_apply(v, x, side)),
               wit);
  }
}

void bi_meet_join_checks(const AffinePermutation& x, const AffinePermutation& v,
                         const AffinePermutation& w, Recorder& rec) {
  auto wit = [&] { return json{{"x", to_json(x)}, {"v", to_json(v)}, {"w", to_json(w)}}; };
  const auto m = strong_meet(v, w);
  if (m.status == BoundStatus::Found) {
    const auto pm = strong_meet(phi_apply(x, v), phi_apply(x, w));
    rec.expect("phi-preserves-meets", found_equal(pm, phi_apply(x, *m.value)), [&] {
      auto j = wit();
      j["meet"] = to_json(*m.value);
      j["meet_of_images"] = bound_json(pm);
      return j;
    });
  }
  const auto jn = strong_join(v, w);
  if (jn.status == BoundStatus::Found) {
    const auto pj = strong_join(psi_apply(x, v), psi_apply(x, w));
    rec.expect("psi-preserves-joins", found_equal(pj, psi_apply(x, *jn.value)), [&] {
      auto j = wit();
      j["join"] = to_json(*jn.value);
      j["join_of_images"] = bound_json(pj);
      return j;
    });
  }
}

void sl_join_checks(const AffinePermutation& x, const AffinePermutation& y,
                    const std::vector<AffinePermutation>& small,
                    const std::vector<AffinePermutation>& large, Recorder& rec) {
  auto wit = [&] { return json{{"x", to_json(x)}, {"y", to_json(y)}}; };
  const auto yi = inverse(y);
  const auto m = psi_apply(yi, x, Side::Right);
  // Both minima have length <= l(x), so `small` contains them; the sets are upper sets.
  const auto d = strong_min_in(small, [&](const AffinePermutation& u) {
    return bruhat_leq(x, demazure(u, y));
  });
  rec.expect("demazure-lower-set-minimum", found_equal(d, m), [&] {
    auto j = wit();
    j["formula"] = to_json(m);
    j["brute"] = bound_json(d);
    return j;
  });
  const auto e = strong_min_in(small, [&](const AffinePermutation& u) {
    return bruhat_leq(psi_apply(inverse(u), x), y);
  });
  rec.expect("anti-demazure-lower-set-minimum", found_equal(e, m), [&] {
    auto j = wit();
    j["formula"] = to_json(m);
    j["brute"] = bound_json(e);
    return j;
  });
  const auto sj = s_join_L(x, y);
  const auto bj = strong_min_in(large, [&](const AffinePermutation& z) {
    return bruhat_leq(x, z) && weak_leq(y, z, Side::Left);
  });
  rec.expect("strong-left-join", found_equal(bj, sj), [&] {
    auto j = wit();
    j["formula"] = to_json(sj);
    j["brute"] = bound_json(bj);
    return j;
  });
  const auto sm = meet_LS(x, y);
  const auto bm = strong_max_in(weak_lower_interval(x, Side::Left),
                                [&](const AffinePermutation& z) { return bruhat_leq(z, y); });
  rec.expect("left-strong-meet", found_equal(bm, sm), [&] {
    auto j = wit();
    j["formula"] = to_json(sm);
    j["brute"] = bound_json(bm);
    return j;
  });
}

void anti_isom_checks(const AffinePermutation& z, Recorder& rec) {
  const auto lz = length(z);
  for (const Side side : {Side::Left, Side::Right}) {
    const std::string tag = side == Side::Left ? "" : "-right";
    const auto ideal = weak_lower_interval(z, side);
    // Left ideal maps by x -> z x^{-1}; right ideal by y -> y^{-1} z.
    auto image = [&](const AffinePermutation& x) {
      return side == Side::Left ? flip(z, x) : mul(inverse(x), z);
    };
    const Side other = side == Side::Left ? Side::Right : Side::Left;
    for (const auto& x : ideal) {
      const auto fx = image(x);
      rec.expect("flip-length-and-range" + tag,
                 length(fx) == lz - length(x) && weak_leq(fx, z, other),
                 [&] { return json{{"z", to_json(z)}, {"x", to_json(x)}, {"image", to_json(fx)}}; });
    }
    for (const auto& x : ideal) {
      for (const auto& y : ideal) {
        const auto fx = image(x);
        const auto fy = image(y);
        rec.expect("flip-reverses-strong-order" + tag, bruhat_leq(x, y) == bruhat_leq(fy, fx), [&] {
          return json{{"z", to_json(z)}, {"x", to_json(x)}, {"y", to_json(y)}};
        });
        if (!(x < y)) continue;
        const auto m = strong_meet(x, y);
        if (m.status != BoundStatus::Found || !contains(ideal, *m.value)) continue;
        const auto j = strong_join(fx, fy);
        rec.expect("flip-sends-meets-to-joins" + tag, found_equal(j, image(*m.value)), [&] {
          return json{{"z", to_json(z)},
                      {"x", to_json(x)},
                      {"y", to_json(y)},
                      {"meet", to_json(*m.value)},
                      {"join_of_images", bound_json(j)}};
        });
      }
    }
  }
}

std::vector<IndexSet> family_by(const AffinePermutation& u,
                                bool (*test)(const AffinePermutation&, const IndexSet&)) {
  std::vector<IndexSet> out;
  for (const auto& a : all_proper_subsets(u.k())) {
    if (test(u, a)) out.push_back(a);
  }
  return out;
}

bool has_maximum(const std::vector<IndexSet>& family) {
  if (family.empty()) return false;
  const int k = family.front().k();
  std::uint32_t all = 0;
  for (const auto& a : family) all |= a.mask();
  if (all == (1u << (k + 1)) - 1) return false;
  return contains(family, IndexSet::from_mask(k, all));
}

void closure_checks(const AffinePermutation& u, const std::vector<IndexSet>& family,
                    const std::string& tag, Recorder& rec) {
  for (const auto& a : family) {
    for (const auto& b : family) {
      auto wit = [&] {
        return json{{"u", to_json(u)}, {"A", members_json(a)}, {"B", members_json(b)}};
      };
      rec.expect("family-intersection-closed" + tag, contains(family, a.intersect(b)), wit);
      if (const auto c = a.unite(b)) rec.expect("family-union-closed" + tag, contains(family, *c), wit);
    }
  }
}

void zu_checks(const AffinePermutation& u, Recorder& rec) {
  const auto plus = family_by(u, in_z_plus);
  const auto minus = family_by(u, in_z_minus);
  closure_checks(u, plus, "-plus", rec);
  closure_checks(u, minus, "-minus", rec);
  rec.expect("family-maximum-minus", has_maximum(minus), [&] {
    return json{{"u", to_json(u)}, {"minus", set_list_json(minus)}};
  });
  for (const auto& a : plus) {
    for (const auto& b : plus) {
      if (!(a < b)) continue;
      const auto m = strong_meet(mul(d_elem(a), u), mul(d_elem(b), u));
      const auto expected = mul(d_elem(a.intersect(b)), u);
      rec.expect("cyclic-meet-formula", found_equal(m, expected), [&] {
        return json{{"u", to_json(u)},
                    {"A", members_json(a)},
                    {"B", members_json(b)},
                    {"formula", to_json(expected)},
                    {"brute", bound_json(m)}};
      });
    }
  }
  for (const auto& a : minus) {
    for (const auto& b : minus) {
      if (!(a < b)) continue;
      const auto j = strong_join(mul(u_elem(a), u), mul(u_elem(b), u));
      const auto expected = mul(u_elem(a.intersect(b)), u);
      rec.expect("cyclic-join-formula", found_equal(j, expected), [&] {
        return json{{"u", to_json(u)},
                    {"A", members_json(a)},
                    {"B", members_json(b)},
                    {"formula", to_json(expected)},
                    {"brute", bound_json(j)}};
      });
    }
  }
  // Minus-side forbidden indices.
  const auto forbidden = forbidden_minus_indices(u);
  bool ok = !forbidden.empty();
  for (const auto& a : minus) {
    for (int i : forbidden) ok = ok && !a.contains(i);
  }
  rec.expect("forbidden-index-minus", ok, [&] {
    return json{{"u", to_json(u)}, {"forbidden", forbidden}, {"minus", set_list_json(minus)}};
  });
  // Chain property in each family.
  std::vector<std::pair<std::string, std::vector<IndexSet>>> families{{"plus", plus},
                                                                      {"minus", minus}};
  if (is_grassmannian(u)) families.emplace_back("plus-grassmannian", z_sets(u).plus_grassmannian);
  for (const auto& [name, fam] : families) {
    for (const auto& a : fam) {
      for (const auto& b : fam) {
        if (!a.subset_of(b)) continue;
        const auto chain = family_chain(fam, a, b);
        const bool saturated = chain && chain->size() == b.size() - a.size() + 1;
        rec.expect("family-chain-" + name, saturated, [&] {
          return json{{"u", to_json(u)}, {"A", members_json(a)}, {"B", members_json(b)}};
        });
      }
    }
  }
}

void grassmannian_plus_checks(const AffinePermutation& w, Recorder& rec) {
  const auto lambda = perm_to_bounded(w);
  const auto fam = z_sets(w).plus_grassmannian;
  const int i = forbidden_index(lambda);
  rec.expect("family-maximum-plus-grassmannian", has_maximum(fam), [&] {
    return json{{"lambda", to_json(lambda)}, {"strips", set_list_json(fam)}};
  });
  rec.expect("forbidden-index-plus",
             std::none_of(fam.begin(), fam.end(), [&](const IndexSet& a) { return a.contains(i); }),
             [&] {
               return json{{"lambda", to_json(lambda)}, {"forbidden", i}, {"strips", set_list_json(fam)}};
             });
  for (const auto& a : fam) {
    for (const auto& b : fam) {
      if (!(a < b)) continue;
      const auto formula = bounded_to_perm(strips_meet(lambda, a, b));
      const auto m = strong_meet(mul(d_elem(a), w), mul(d_elem(b), w));
      rec.expect("strip-meet", found_equal(m, formula) && is_grassmannian(formula), [&] {
        return json{{"lambda", to_json(lambda)},
                    {"A", members_json(a)},
                    {"B", members_json(b)},
                    {"formula", to_json(formula)},
                    {"brute", bound_json(m)}};
      });
    }
  }
}

bool valid_chain(const std::vector<AffinePermutation>& chain,
                 const std::vector<AffinePermutation>& ideal) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!contains(ideal, chain[i])) return false;
    if (i > 0 && (length(chain[i]) != length(chain[i - 1]) + 1 ||
                  !bruhat_leq(chain[i - 1], chain[i]))) {
      return false;
    }
  }
  return true;
}

void weak_ideal_chain_checks(const AffinePermutation& u, Recorder& rec) {
  for (const Side side : {Side::Left, Side::Right}) {
    const std::string tag = side == Side::Left ? "" : "-right";
    const auto ideal = weak_lower_interval(u, side);
    // The right ideal is the inverse image of the left ideal of u^{-1}.
    const auto ui = inverse(u);
    for (const auto& x : ideal) {
      for (const auto& y : ideal) {
        if (!bruhat_leq(x, y)) continue;
        std::optional<std::vector<AffinePermutation>> chain;
        if (side == Side::Left) {
          chain = weak_ideal_chain(u, x, y);
        } else if (auto c = weak_ideal_chain(ui, inverse(x), inverse(y))) {
          chain.emplace();
          for (const auto& z : *c) chain->push_back(inverse(z));
        }
        rec.expect("weak-ideal-chain" + tag, chain && valid_chain(*chain, ideal) &&
                                                 chain->front() == x && chain->back() == y,
                   [&] { return json{{"u", to_json(u)}, {"x", to_json(x)}, {"y", to_json(y)}}; });
      }
    }
  }
}

}  // namespace

VerifyReport verify_order_props(int k, int max_length, int jobs) {
  auto report = make_report("order-props", k, max_length);
  const int tri = std::max(0, max_length - 2);
  const auto pair_ball = ball(k, max_length);
  const auto tri_ball = ball(k, tri);
  const auto act_ball = ball(k, std::min(tri, 2));
  const auto& join_universe = cached_ball(k, 2 * tri);
  const auto gr = grassmannian_ball(k, max_length);

  // Task list: one task per leading element of each quantified family.
  const std::size_t n_tri = tri_ball.size();
  const std::size_t n_pair = pair_ball.size();
  const std::size_t n_gr = gr.size();
  const std::size_t total = 3 * n_tri + 2 * n_pair + n_gr;
  run_tasks(
      total, jobs,
      [&](std::size_t i, Recorder& rec) {
        if (i < n_tri) {
          const auto& x = tri_ball[i];
          for (const auto& y : tri_ball) bi_pair_checks(x, y, rec);
          for (const auto& v : tri_ball) {
            for (const auto& w : tri_ball) bi_triple_checks(x, v, w, rec);
          }
          return;
        }
        i -= n_tri;
        if (i < n_tri) {
          const auto& v = tri_ball[i];
          for (const auto& x : act_ball) {
            for (const auto& w : tri_ball) {
              if (v < w) bi_meet_join_checks(x, v, w, rec);
            }
          }
          return;
        }
        i -= n_tri;
        if (i < n_tri) {
          const auto& x = tri_ball[i];
          for (const auto& y : tri_ball) sl_join_checks(x, y, tri_ball, join_universe, rec);
          return;
        }
        i -= n_tri;
        if (i < n_pair) {
          anti_isom_checks(pair_ball[i], rec);
          weak_ideal_chain_checks(pair_ball[i], rec);
          return;
        }
        i -= n_pair;
        if (i < n_pair) {
          const auto& u = pair_ball[i];
          zu_checks(u, rec);
          return;
        }
        i -= n_pair;
        grassmannian_plus_checks(gr[i], rec);
      },
      report.results);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

// The seven conditions for B subset of A, both in the minus family.
std::array<bool, 7> boolean_lattice_conditions(const AffinePermutation& u, const IndexSet& a,
                                               const IndexSet& b,
                                               const std::vector<IndexSet>& minus,
                                               const std::vector<IndexSet>& xa) {
  const auto in_minus = [&](const IndexSet& c) { return contains(minus, c); };
  const auto in_x = [&](const IndexSet& c) { return contains(xa, c); };
  std::array<bool, 7> c{};
  c[0] = in_x(b);
  c[1] = c[2] = c[3] = c[4] = true;
  for (int i : a.members()) {
    if (b.contains(i)) continue;
    const auto up = *b.with(i);
    const auto down = a.without(i);
    c[1] = c[1] && in_minus(up);
    c[2] = c[2] && in_x(up);
    c[3] = c[3] && in_minus(down);
    c[4] = c[4] && in_x(down);
  }
  c[5] = c[6] = true;
  const std::uint32_t free_bits = a.mask() & ~b.mask();
  for (std::uint32_t s = free_bits;; s = (s - 1) & free_bits) {
    const auto c_set = IndexSet::from_mask(u.k(), b.mask() | s);
    c[5] = c[5] && in_minus(c_set);
    c[6] = c[6] && in_x(c_set);
    if (s == 0) break;
  }
  return c;
}

void fiber_checks_u(const AffinePermutation& u, Recorder& rec) {
  const auto minus = family_by(u, in_z_minus);
  std::map<IndexSet, std::vector<IndexSet>> xs;
  for (const auto& a : all_proper_subsets(u.k())) {
    try {
      xs[a] = fiber_X(a, u).members;
      rec.pass("fiber-boolean-interval");
    } catch (const InternalError& e) {
      rec.fail("fiber-boolean-interval",
               json{{"u", to_json(u)}, {"A", members_json(a)}, {"what", e.what()}});
    }
  }
  for (const auto& a : minus) {
    for (const auto& b : minus) {
      if (!b.subset_of(a) || xs.count(a) == 0) continue;
      const auto c = boolean_lattice_conditions(u, a, b, minus, xs.at(a));
      const bool all_equal = std::all_of(c.begin(), c.end(), [&](bool v) { return v == c[0]; });
      rec.expect("boolean-lattice-conditions", all_equal, [&] {
        return json{{"u", to_json(u)}, {"A", members_json(a)}, {"B", members_json(b)},
                    {"conditions", c}};
      });
    }
  }
}

void fiber_checks_uw(const AffinePermutation& u, const AffinePermutation& w, Recorder& rec) {
  const int k = u.k();
  const auto a0 = find_A0(u, w);
  auto wit = [&] {
    json j{{"u", to_json(u)}, {"w", to_json(w)}};
    j["A0"] = a0 ? members_json(*a0) : json(nullptr);
    return j;
  };
  const auto subsets = all_proper_subsets(k);
  std::map<IndexSet, std::vector<IndexSet>> ys;
  for (const auto& a : subsets) {
    try {
      ys[a] = fiber_Y(a, u, w).members;
    } catch (const InternalError& e) {
      rec.fail("fiber-boolean-interval-below-w", [&] {
        auto j = wit();
        j["A"] = members_json(a);
        j["what"] = e.what();
        return j;
      }());
      continue;
    }
    rec.pass("fiber-boolean-interval-below-w");
    const bool single = ys[a].size() == 1;
    rec.expect("single-element-fiber-iff-A0", single == (a0 && *a0 == a), [&] {
      auto j = wit();
      j["A"] = members_json(a);
      j["fiber"] = set_list_json(ys[a]);
      return j;
    });
  }
  const auto lu = length(u);
  for (int r = 1; r <= k; ++r) {
    const bool c1 = a0 && static_cast<int>(a0->size()) <= r;
    bool c2 = false, c3 = false, c4 = false;
    for (const auto& a : subsets) {
      const int s = static_cast<int>(a.size());
      if (s > r) continue;
      if (in_z_minus(u, a) && bruhat_leq(mul(u_elem(a), u), w)) c2 = true;
      if (in_z_plus(w, a) && bruhat_leq(u, mul(d_elem(a), w))) {
        c3 = true;
        if (s == r) c4 = true;
      }
    }
    rec.expect("a0-size-conditions", c1 == c2 && c2 == c3 && c3 == c4, [&] {
      auto j = wit();
      j["r"] = r;
      j["conditions"] = {c1, c2, c3, c4};
      return j;
    });
    // Signed fiber sum for the coefficient of g_u in gtilde_w * htilde_r.
    long long coeff = 0;
    for (const auto& [a, members] : ys) {
      if (static_cast<int>(a.size()) > r) continue;
      for (const auto& b : members) {
        const auto e = static_cast<std::int64_t>(a.size()) - (lu - length(mul(u_elem(b), u)));
        coeff += (e % 2 == 0) ? 1 : -1;
      }
    }
    rec.expect("signed-fiber-sum-zero-one", coeff == (c1 ? 1 : 0), [&] {
      auto j = wit();
      j["r"] = r;
      j["signed_sum"] = coeff;
      return j;
    });
  }
}

}  // namespace

VerifyReport verify_fibers(int k, int max_length, int jobs) {
  auto report = make_report("fibers", k, max_length);
  const auto gr = grassmannian_ball(k, max_length);
  run_tasks(
      gr.size(), jobs,
      [&](std::size_t i, Recorder& rec) {
        fiber_checks_u(gr[i], rec);
        for (const auto& w : gr) fiber_checks_uw(gr[i], w, rec);
      },
      report.results);
  return report;
}

}  // namespace kks
