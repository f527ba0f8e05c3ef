#include "doctest.h"

#include <map>

#include "kabelian/equivalence.hpp"
#include "kabelian/flowgraph.hpp"
#include "kabelian/generators.hpp"
#include "helpers.hpp"

using namespace kabelian;
using namespace kabelian::testutil;

namespace {

FlowFunction binary_flow(std::uint32_t k, std::vector<std::uint32_t> counts, std::uint64_t s1,
                         std::uint64_t s2) {
  FlowFunction f;
  f.k = k;
  f.alphabet = Alphabet::binary();
  f.counts = std::move(counts);
  f.s1 = s1;
  f.s2 = s2;
  return f;
}

/// Oracle: is some word of the right length realizing this flow?
bool word_exists_for(const FlowFunction& f) {
  const std::size_t n = static_cast<std::size_t>(f.word_length());
  for (const Word& w : all_words(f.alphabet->size(), n)) {
    const FlowFunction g = build_flow(w, f.k);
    if (g.counts == f.counts && g.s1 == f.s1 && g.s2 == f.s2) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("flowgraph") {

TEST_CASE("build_flow golden values") {
  const auto f = build_flow(bw("010"), 2);
  CHECK(f.counts == std::vector<std::uint32_t>{0, 1, 1, 0});  // 00,01,10,11
  CHECK(f.s1 == 0);
  CHECK(f.s2 == 0);

  const auto g = build_flow(bw("00"), 2);
  CHECK(g.counts == std::vector<std::uint32_t>{1, 0, 0, 0});

  const auto fib = build_flow(WordStream::fibonacci().prefix(13), 2);
  CHECK(fib.total() == 12);

  CHECK_THROWS_AS(build_flow(bw("0"), 3), DomainError);
}

TEST_CASE("flows of words are always realizable") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::size_t n = k - 1; n <= 8; ++n) {
      for (const Word& w : all_words(2, n)) {
        CHECK(is_realizable(build_flow(w, k)));
      }
    }
  }
}

TEST_CASE("degree imbalance and stranded endpoints are rejected") {
  CHECK_FALSE(is_realizable(binary_flow(2, {0, 1, 0, 0}, 0, 0)));
  CHECK(is_realizable(binary_flow(2, {0, 1, 1, 0}, 0, 0)));
  // Balanced but the endpoints sit on an isolated vertex.
  CHECK_FALSE(is_realizable(binary_flow(2, {0, 0, 0, 1}, 0, 0)));
}

TEST_CASE("realizability criterion matches exhaustive word search") {
  // All binary k=2 flows with total <= 4 (acceptance extends to 6).
  for (std::uint32_t c00 = 0; c00 <= 4; ++c00) {
    for (std::uint32_t c01 = 0; c00 + c01 <= 4; ++c01) {
      for (std::uint32_t c10 = 0; c00 + c01 + c10 <= 4; ++c10) {
        for (std::uint32_t c11 = 0; c00 + c01 + c10 + c11 <= 4; ++c11) {
          for (std::uint64_t s1 = 0; s1 < 2; ++s1) {
            for (std::uint64_t s2 = 0; s2 < 2; ++s2) {
              const auto f = binary_flow(2, {c00, c01, c10, c11}, s1, s2);
              CAPTURE(c00);
              CAPTURE(c01);
              CAPTURE(c10);
              CAPTURE(c11);
              CAPTURE(s1);
              CAPTURE(s2);
              const bool realizable = is_realizable(f);
              CHECK(realizable == word_exists_for(f));
              if (realizable) {
                const auto g = build_flow(realize(f), 2);
                CHECK(g.counts == f.counts);
                CHECK(g.s1 == f.s1);
                CHECK(g.s2 == f.s2);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("realize golden values") {
  CHECK(realize(binary_flow(2, {0, 1, 1, 0}, 0, 0)) == bw("010"));
  CHECK(realize(binary_flow(2, {2, 0, 0, 0}, 0, 0)) == bw("000"));
  CHECK_THROWS_AS(realize(binary_flow(2, {0, 1, 0, 0}, 0, 0)), DomainError);
}

TEST_CASE("realize round-trips and is lexicographically least") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const KOrder order(k);
    for (std::size_t n = k - 1; n <= 8; ++n) {
      std::map<std::vector<std::uint32_t>, Word> least;  // flow key -> least word
      for (const Word& w : all_words(2, n)) {
        const auto f = build_flow(w, k);
        std::vector<std::uint32_t> key = f.counts;
        key.push_back(static_cast<std::uint32_t>(f.s1));
        key.push_back(static_cast<std::uint32_t>(f.s2));
        if (!least.contains(key)) {
          least.emplace(key, w);  // enumeration is lexicographic
        }
      }
      for (const Word& w : all_words(2, n)) {
        const auto f = build_flow(w, k);
        const Word realized = realize(f);
        CHECK(k_abelian_equivalent(realized, w, order));
        const auto g = build_flow(realized, k);
        CHECK(g.counts == f.counts);
        CHECK(g.s1 == f.s1);
        CHECK(g.s2 == f.s2);
        std::vector<std::uint32_t> key = f.counts;
        key.push_back(static_cast<std::uint32_t>(f.s1));
        key.push_back(static_cast<std::uint32_t>(f.s2));
        CHECK(realized == least.at(key));
      }
    }
  }
}

TEST_CASE("census golden values") {
  CHECK(count_classes_flow(2, 2, 3) == 8);
  CHECK(count_classes_flow(2, 2, 4) == 14);
  CHECK(count_classes_flow(2, 1, 5) == 6);
  CHECK(count_classes_bruteforce(2, 2, 4) == 14);
  CHECK(count_classes_bruteforce(2, 3, 5) == 32);
  CHECK(count_classes_bruteforce(3, 1, 2) == 6);
}

TEST_CASE("flow census agrees with brute force") {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::size_t n = k - 1; n <= 12; ++n) {
      CHECK(count_classes_flow(2, k, n) == count_classes_bruteforce(2, k, n));
    }
  }
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::size_t n = k - 1; n <= 8; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(count_classes_flow(3, k, n) == count_classes_bruteforce(3, k, n));
    }
  }
}

TEST_CASE("census is monotone in n") {
  std::uint64_t previous = 0;
  for (std::size_t n = 1; n <= 14; ++n) {
    const std::uint64_t count = count_classes_flow(2, 2, n);
    CHECK(count >= previous);
    previous = count;
  }
}

TEST_CASE("parallel census matches sequential") {
  CensusOptions parallel;
  parallel.jobs = 4;
  for (std::size_t n : {6, 9, 12}) {
    CHECK(count_classes_flow(2, 2, n, parallel) == count_classes_flow(2, 2, n));
    CHECK(count_classes_flow(3, 2, n, parallel) == count_classes_flow(3, 2, n));
  }
}

TEST_CASE("budgets guard the enumerations") {
  CensusOptions tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(count_classes_flow(2, 3, 12, tiny), BudgetExceededError);
  tiny.max_words = 100;
  CHECK_THROWS_AS(count_classes_bruteforce(2, 2, 20, tiny), BudgetExceededError);
}

TEST_CASE("abelian census has closed forms") {
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(count_classes_flow(2, 1, n) == n + 1);
    CHECK(count_classes_flow(3, 1, n) == (n + 1) * (n + 2) / 2);
  }
}

TEST_CASE("growth exponent fits") {
  std::vector<CensusRow> rows;
  for (std::size_t n = 10; n <= 40; ++n) {
    rows.push_back({2, 1, n, count_classes_flow(2, 1, n), "flow-enumeration"});
  }
  const auto fit = growth_exponent_fit(rows);
  CHECK(fit.theoretical_exponent == doctest::Approx(1.0));
  CHECK(fit.fitted_exponent == doctest::Approx(1.0).epsilon(0.1));

  rows.clear();
  for (std::size_t n = 10; n <= 40; ++n) {
    rows.push_back({3, 1, n, count_classes_flow(3, 1, n), "flow-enumeration"});
  }
  const auto fit3 = growth_exponent_fit(rows);
  CHECK(fit3.theoretical_exponent == doctest::Approx(2.0));
  CHECK(fit3.fitted_exponent == doctest::Approx(2.0).epsilon(0.1));

  CHECK_THROWS_AS(growth_exponent_fit({}), DomainError);
  CHECK_THROWS_AS(growth_exponent_fit(std::vector<CensusRow>(3)), DomainError);
}

TEST_CASE("graph_of exposes the degree structure") {
  const auto g = graph_of(build_flow(bw("0100101001001"), 3));
  CHECK(g.vertex_count == 4);
  std::uint64_t in_total = 0, out_total = 0;
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    in_total += g.in_degree[v];
    out_total += g.out_degree[v];
  }
  CHECK(in_total == 11);
  CHECK(out_total == 11);
}

}  // TEST_SUITE
