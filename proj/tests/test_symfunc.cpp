#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "kks/affine_core.hpp"
#include "kks/brute.hpp"
#include "kks/kcode.hpp"
#include "kks/shapes.hpp"
#include "kks/symfunc.hpp"

using namespace kks;

namespace {

KBoundedPartition bp(int k, std::vector<int> parts) { return KBoundedPartition(k, std::move(parts)); }

SymElt elt(int k, Basis basis, std::initializer_list<std::pair<std::vector<int>, int>> terms) {
  SymElt f(k, basis);
  for (const auto& [parts, c] : terms) f.add_term(bp(k, parts), BigInt(c));
  return f;
}

// h_r * g_lambda from Demazure products of cyclically decreasing elements.
SymElt pieri_kk_oracle(const KBoundedPartition& lambda, int r) {
  const int k = lambda.k();
  const auto w = bounded_to_perm(lambda);
  SymElt out(k, Basis::KkSchur);
  for (const auto& a : subsets_of_size(k, static_cast<std::size_t>(r))) {
    const auto v = demazure(d_elem(a), w);
    if (!is_grassmannian(v)) continue;
    const auto exponent = r + length(w) - length(v);
    out.add_term(perm_to_bounded(v), BigInt(exponent % 2 == 0 ? 1 : -1));
  }
  return out;
}

SymElt gtilde_oracle(const KBoundedPartition& lambda) {
  const auto w = bounded_to_perm(lambda);
  SymElt out(lambda.k(), Basis::KkSchur);
  for (const auto& v : grassmannian_ball(lambda.k(), lambda.size())) {
    if (bruhat_leq_subword(v, w)) out.add_term(perm_to_bounded(v), BigInt(1));
  }
  return out;
}

// Determinant of the degree-d block of the h -> g transition, by exact elimination.
BigRational block_determinant(int k, int d) {
  const auto parts = bounded_partitions(k, d);
  const std::size_t n = parts.size();
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = h_to_g(parts[i]);
    for (std::size_t j = 0; j < n; ++j) m[i][j] = BigRational(g.coeff(parts[j]));
  }
  BigRational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const BigRational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace

TEST_SUITE("symfunc") {
  TEST_CASE("arithmetic and validation") {
    const auto f = elt(3, Basis::KkSchur, {{{2}, 1}, {{1, 1}, 1}});
    const auto g = elt(3, Basis::KkSchur, {{{2}, 1}, {{1}, -1}});
    CHECK((f - f).is_zero());
    CHECK((f + g).coeff(bp(3, {2})) == 2);
    CHECK((f + g).degree() == 2);
    CHECK(f.homogeneous_part(2) == f);
    CHECK(g.homogeneous_part(1) == elt(3, Basis::KkSchur, {{{1}, -1}}));
    CHECK_THROWS_AS(f + elt(3, Basis::KSchur, {{{1}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(f + elt(2, Basis::KkSchur, {{{1}, 1}}), RankMismatch);
    CHECK(parse_basis("g") == Basis::KkSchur);
    CHECK(parse_basis("ks") == Basis::KSchur);
    CHECK(parse_basis("h") == Basis::HMonomial);
    CHECK_THROWS_AS(parse_basis("x"), std::invalid_argument);
  }

  TEST_CASE("k-Schur Pieri rule") {
    CHECK(pieri_kschur(bp(3, {3, 2, 1}), 1) ==
          elt(3, Basis::KSchur, {{{3, 2, 2}, 1}, {{3, 2, 1, 1}, 1}}));
    for (int r = 0; r <= 3; ++r) {
      const std::vector<int> row = r == 0 ? std::vector<int>{} : std::vector<int>{r};
      CHECK(pieri_kschur(bp(3, {}), r) == SymElt::basis_element(bp(3, row), Basis::KSchur));
    }
    CHECK(pieri_kschur(bp(3, {2, 1}), 0) == SymElt::basis_element(bp(3, {2, 1}), Basis::KSchur));
  }

  TEST_CASE("K-k-Schur Pieri rule") {
    CHECK(pieri_kk(bp(3, {2, 1}), 1) ==
          elt(3, Basis::KkSchur, {{{2, 2}, 1}, {{2, 1, 1}, 1}, {{2, 1}, -2}}));
    CHECK(pieri_kk(bp(3, {}), 2) == SymElt::basis_element(bp(3, {2}), Basis::KkSchur));
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 6)) {
        for (int r = 1; r <= k; ++r) CHECK(pieri_kk(lambda, r) == pieri_kk_oracle(lambda, r));
      }
    }
  }

  TEST_CASE("h and g transitions") {
    CHECK(h_to_g(bp(3, {})) == SymElt::basis_element(bp(3, {}), Basis::KkSchur));
    CHECK(h_to_g(bp(3, {1})) == SymElt::basis_element(bp(3, {1}), Basis::KkSchur));
    CHECK(h_to_g(bp(3, {1, 1})) == elt(3, Basis::KkSchur, {{{1}, -1}, {{2}, 1}, {{1, 1}, 1}}));
    CHECK(g_to_h(bp(3, {1})) == SymElt::basis_element(bp(3, {1}), Basis::HMonomial));
    CHECK(g_to_h(bp(3, {2, 1})) == elt(3, Basis::HMonomial, {{{2}, 1}, {{3}, -1}, {{2, 1}, 1}}));
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 6)) {
        CHECK(from_h_basis(g_to_h(lambda), Basis::KkSchur) ==
              SymElt::basis_element(lambda, Basis::KkSchur));
        CHECK(from_h_basis(s_to_h(lambda), Basis::KSchur) ==
              SymElt::basis_element(lambda, Basis::KSchur));
        CHECK(to_h_basis(h_to_g(lambda)) == SymElt::basis_element(lambda, Basis::HMonomial));
      }
      for (int d = 0; d <= 5; ++d) {
        const auto det = block_determinant(k, d);
        CHECK((det == 1 || det == -1));
      }
    }
  }

  TEST_CASE("top degree of g is the k-Schur function") {
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 6)) {
        CHECK(top_degree_check(lambda));
        CHECK(g_to_h(lambda).homogeneous_part(lambda.size()) == s_to_h(lambda));
      }
    }
  }

  TEST_CASE("strong sums") {
    CHECK(gtilde(bp(3, {})) == SymElt::basis_element(bp(3, {}), Basis::KkSchur));
    CHECK(gtilde(bp(3, {1})) == elt(3, Basis::KkSchur, {{{}, 1}, {{1}, 1}}));
    CHECK(gtilde(bp(3, {2, 1})) ==
          elt(3, Basis::KkSchur, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{1, 1}, 1}, {{2, 1}, 1}}));
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 6)) CHECK(gtilde(lambda) == gtilde_oracle(lambda));
    }
  }

  TEST_CASE("strong sum Pieri rule") {
    CHECK(gtilde_pieri(bp(3, {}), 1) == elt(3, Basis::KkSchur, {{{}, 1}, {{1}, 1}}));
    CHECK(gtilde_pieri(bp(3, {1}), 1) ==
          elt(3, Basis::KkSchur, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{1, 1}, 1}}));
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 5)) {
        for (int r = 0; r <= k; ++r) {
          const auto direct = gtilde_times_htilde(lambda, r);
          CHECK(direct == gtilde_pieri(lambda, r));
          CHECK(direct == gtilde_pieri_fibers(lambda, r));
          for (const auto& [mu, c] : direct.terms()) CHECK(c == 1);
        }
      }
    }
  }

  TEST_CASE("inclusion-exclusion form") {
    const auto one = gtilde_pieri_ie(bp(3, {1}), 1);
    const std::map<KBoundedPartition, BigInt> expected{
        {bp(3, {2}), 1}, {bp(3, {1, 1}), 1}, {bp(3, {1}), -1}};
    CHECK(one.terms == expected);
    for (int r = 0; r <= 3; ++r) {
      const std::vector<int> row = r == 0 ? std::vector<int>{} : std::vector<int>{r};
      CHECK(gtilde_pieri_ie(bp(3, {}), r).terms == std::map<KBoundedPartition, BigInt>{{bp(3, row), 1}});
    }
    for (int k = 1; k <= 3; ++k) {
      for (const auto& lambda : bounded_partitions_up_to(k, 5)) {
        const auto full = gtilde_pieri_ie(lambda, k);
        CHECK(full.terms ==
              std::map<KBoundedPartition, BigInt>{{union_sort(bp(k, {k}), lambda), 1}});
        for (int r = 0; r <= k; ++r) {
          const auto ie = gtilde_pieri_ie(lambda, r);
          CHECK(ie.terms == gtilde_pieri_ie_literal(lambda, r).terms);
          CHECK(ie.expand() == gtilde_pieri(lambda, r));
        }
      }
    }
  }

  TEST_CASE("inclusion-exclusion labels shift with rectangles") {
    for (int k = 1; k <= 3; ++k) {
      for (int t = 1; t <= k; ++t) {
        const auto rect = k_rectangle(t, k);
        for (const auto& lambda : bounded_partitions_up_to(k, 4)) {
          for (int r = 0; r <= k; ++r) {
            std::map<KBoundedPartition, BigInt> shifted;
            for (const auto& [mu, c] : gtilde_pieri_ie(lambda, r).terms) shifted[union_sort(rect, mu)] = c;
            CHECK(gtilde_pieri_ie(union_sort(rect, lambda), r).terms == shifted);
          }
        }
      }
    }
  }

  TEST_CASE("rectangle factorizations") {
    CHECK(gtilde_factorize_check(bp(2, {}), 1));
    CHECK(gtilde_factorize_check(bp(2, {1}), 1));
    CHECK(gtilde(bp(2, {1, 1, 1})) == product(gtilde(bp(2, {1, 1})), gtilde(bp(2, {1}))));
    for (int r = 0; r <= 3; ++r) {
      const std::vector<int> row = r == 0 ? std::vector<int>{} : std::vector<int>{r};
      CHECK(multiply_h(SymElt::basis_element(bp(3, {}), Basis::KSchur), r) ==
            SymElt::basis_element(bp(3, row), Basis::KSchur));
    }
    for (int k = 1; k <= 3; ++k) {
      for (int t = 1; t <= k; ++t) {
        for (const auto& lambda : bounded_partitions_up_to(k, 4)) {
          CHECK(gtilde_factorize_check(lambda, t));
          CHECK(kschur_factorize_check(lambda, t));
        }
      }
    }
  }

  TEST_CASE("products lie above the left weak join") {
    for (int k = 1; k <= 3; ++k) {
      const auto grass = grassmannian_ball(k, 3);
      for (const auto& v : grass) {
        for (const auto& w : grass) {
          const auto prod = product(SymElt::basis_element(perm_to_bounded(v), Basis::KkSchur),
                                    SymElt::basis_element(perm_to_bounded(w), Basis::KkSchur));
          const auto universe = ball(k, static_cast<int>(length(v) + length(w)));
          const auto join = left_join_in(v, w, universe);
          REQUIRE(join.status == BoundStatus::Found);
          for (const auto& [mu, c] : prod.terms()) {
            CHECK(weak_leq(*join.value, bounded_to_perm(mu), Side::Left));
          }
        }
      }
    }
  }

  TEST_CASE("transition tables persist") {
    const auto dir = std::filesystem::temp_directory_path() / "kks_table_cache_test";
    std::filesystem::remove_all(dir);
    set_table_cache_dir(dir);
    const auto table = transition_table(5, 2, Basis::KSchur);
    set_table_cache_dir(std::nullopt);
    const auto file = dir / "transition_ks_k5.json";
    REQUIRE(std::filesystem::exists(file));
    std::ifstream in(file);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.at("hash").get<std::string>() == table->content_hash());
    CHECK(j.at("order").get<std::string>() == kIntraDegreeOrder);
    CHECK(j.at("entries").size() == table->entries().size());
    std::filesystem::remove_all(dir);
  }
}
