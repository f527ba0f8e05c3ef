#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kabelian/equivalence.hpp"
#include "kabelian/generators.hpp"
#include "kabelian/words.hpp"

namespace kabelian {

/// Threshold function: n+1 for n <= 2k-1, then the plateau 2k; for infinite
/// k it is n+1 everywhere. Aperiodic words staying at the threshold for every
/// k and n are exactly the Sturmian words.
std::size_t q_threshold(KOrder k, std::size_t n);

/// The threshold bound to one k, as a value object.
struct QFunction {
  KOrder k = KOrder(1);
  std::size_t operator()(std::size_t n) const { return q_threshold(k, n); }
};

/// Number of k-Abelian classes among the length-n factors of the prefix.
/// A lower bound of the infinite word's value when the prefix is a truncation.
std::size_t k_complexity(const Word& prefix, KOrder k, std::size_t n);

/// Number of R_k classes among the length-n factors of the prefix.
std::size_t r_complexity(const Word& prefix, KOrder k, std::size_t n);

/// Per-length class counts of a stream's prefix, with a per-n validity flag
/// telling whether the window provably contains every length-n factor of the
/// infinite word.
struct ComplexityProfile {
  KOrder k = KOrder(1);
  std::size_t n_max = 0;
  std::size_t window = 0;
  std::vector<std::size_t> values;  // values[n-1] for n = 1..n_max
  std::vector<std::uint8_t> valid;  // valid[n-1]

  std::size_t value(std::size_t n) const { return values.at(n - 1); }
  bool is_valid(std::size_t n) const { return valid.at(n - 1) != 0; }
};

/// Window length that covers factor coverage for the requested n_max where an
/// exact bound exists (mechanical, ultimately periodic); a generous heuristic
/// for morphic streams, checked afterwards by saturation.
std::size_t default_window(const WordStream& stream, std::size_t n_max);

ComplexityProfile k_complexity_profile(const WordStream& stream, KOrder k, std::size_t n_max,
                                       std::size_t window = 0);
ComplexityProfile r_complexity_profile(const WordStream& stream, KOrder k, std::size_t n_max,
                                       std::size_t window = 0);

/// Least n with a validity-flagged value below the threshold, if any. A hit
/// proves the stream ultimately periodic; absence proves nothing.
std::optional<std::size_t> periodicity_alarm(const ComplexityProfile& profile);

struct SturmianViolation {
  std::uint32_t k = 0;
  std::size_t n = 0;
  std::size_t value = 0;
  std::size_t expected = 0;
};

struct SturmianCheckReport {
  std::uint32_t k_max = 0;
  std::size_t n_max = 0;
  std::size_t window = 0;
  std::size_t checked = 0;  // (k, n) pairs actually asserted
  std::vector<SturmianViolation> violations;

  bool all_match() const { return violations.empty(); }
};

/// Asserts k_complexity == q_threshold for every k <= k_max and every n that
/// is both covered by the window and within the stream's Sturmian validity
/// bound. Requires a binary stream.
SturmianCheckReport sturmian_profile_check(const WordStream& stream, std::uint32_t k_max,
                                           std::size_t n_max, std::size_t window = 0);

}  // namespace kabelian
