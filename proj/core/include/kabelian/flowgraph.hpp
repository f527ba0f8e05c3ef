#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kabelian/words.hpp"

namespace kabelian {

/// Occurrence-count function f: A^k -> N with designated endpoint vertices in
/// A^{k-1}. Realizable by a word of length n iff the induced multigraph has
/// an Eulerian path from s1 to s2 and the counts sum to n - k + 1.
struct FlowFunction {
  std::uint32_t k = 1;
  AlphabetPtr alphabet;
  std::vector<std::uint32_t> counts;  // dense, indexed by block code over A^k
  std::uint64_t s1 = 0;               // block code over A^{k-1}
  std::uint64_t s2 = 0;

  std::uint64_t total() const;
  /// Word length this flow targets: total() + k - 1.
  std::uint64_t word_length() const { return total() + k - 1; }
};

/// Multigraph on A^{k-1} induced by a flow: f(t) parallel edges from the
/// length-(k-1) prefix of t to its length-(k-1) suffix.
struct DeBruijnGraph {
  std::uint32_t k = 1;
  std::uint64_t vertex_count = 1;  // m^{k-1}
  std::vector<std::uint64_t> in_degree;
  std::vector<std::uint64_t> out_degree;
};

DeBruijnGraph graph_of(const FlowFunction& f);

/// Length-k factor counts of w with endpoints prefix_{k-1}(w), suffix_{k-1}(w).
/// Requires |w| >= k - 1.
FlowFunction build_flow(const Word& w, std::uint32_t k);

/// Eulerian-path criterion: degree balance with the +-1 endpoint correction,
/// edges connected up to isolated vertices, endpoints on the edge component.
bool is_realizable(const FlowFunction& f);

/// Lexicographically least word w with build_flow(w, k) == f. Greedy edge
/// selection, keeping the remainder realizable at every step.
Word realize(const FlowFunction& f);

/// One census measurement.
struct CensusRow {
  std::size_t m = 0;
  std::uint32_t k = 0;
  std::size_t n = 0;
  std::uint64_t class_count = 0;
  std::string method;  // "flow-enumeration" or "bruteforce"
};

struct CensusOptions {
  std::uint64_t max_nodes = 200'000'000;  // DFS expansion budget
  std::uint64_t max_words = std::uint64_t{1} << 24;  // brute-force budget
  unsigned jobs = 1;
};

/// Number of k-Abelian classes of A^n counted by enumerating realizable
/// flows over all endpoint pairs. Requires n >= k - 1.
std::uint64_t count_classes_flow(std::size_t m, std::uint32_t k, std::size_t n,
                                 const CensusOptions& options = {});

/// Oracle: enumerate A^n and bucket by class signature.
std::uint64_t count_classes_bruteforce(std::size_t m, std::uint32_t k, std::size_t n,
                                       const CensusOptions& options = {});

struct GrowthFit {
  double fitted_exponent = 0.0;
  double theoretical_exponent = 0.0;  // m^k - m^{k-1}
  std::size_t points = 0;
};

/// Least-squares slope of log(class_count) against log(n). Requires at least
/// four rows sharing (m, k) with strictly increasing n.
GrowthFit growth_exponent_fit(const std::vector<CensusRow>& rows);

}  // namespace kabelian
