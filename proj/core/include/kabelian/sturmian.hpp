#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "kabelian/equivalence.hpp"
#include "kabelian/words.hpp"

namespace kabelian {

/// Length-n factors of a window classified by one-sided extendability.
struct SpecialFactorReport {
  std::size_t n = 0;
  std::set<Word> right_special;
  std::set<Word> left_special;
  std::set<Word> bispecial;
};

/// Classifies all length-n factors of the prefix window. Requires
/// n + 1 <= |prefix| so extensions are observable.
SpecialFactorReport special_factors(const Word& prefix, std::size_t n);

/// Binary transform: replaces the "01" at positions (i, i+1) by "10", or the
/// final "0" by "1" when i == |w|. Positions are 1-based. Undefined (throws)
/// anywhere else.
Word swap_at(const Word& w, std::size_t i);

/// The n+1 length-n factors of a Sturmian window in lexicographic order,
/// with consecutive factors linked by swap_at at the recorded index. The
/// indices form a permutation of {1..n}.
struct FactorChain {
  std::size_t n = 0;
  std::vector<Word> factors;      // sorted, n+1 entries
  std::vector<std::size_t> sigma;  // sigma[i]: factors[i+1] == swap_at(factors[i], sigma[i])
};

FactorChain factor_chain(const Word& prefix, std::size_t n);

/// One equivalent pair of length 2k with its structural decomposition
/// u = x a b rev(x), v = x b a rev(x).
struct EquivalentPair2k {
  Word u;
  Word v;
  Word x;
};

/// Enumerates all unordered pairs of distinct k-equivalent words of length 2k
/// over an m-letter alphabet and verifies each pair's decomposition: distinct
/// letters a, b with u = x a b rev(x), v = x b a rev(x), both words on a
/// binary sub-alphabet, and x, xa, xb balanced. A pair failing the
/// decomposition throws (it would falsify the classification).
std::vector<EquivalentPair2k> classify_length_2k_pairs(std::size_t m, std::uint32_t k,
                                                       std::uint64_t max_words = std::uint64_t{1}
                                                                                  << 24);

/// Decides the equivalence of two factors of a Sturmian window via the
/// simplified criterion (Abelian equivalence plus common affixes of length
/// min(|u|, k-1)) and cross-checks the general procedure. Both words must
/// occur in the prefix.
bool same_sturmian_equivalence(const Word& u, const Word& v, KOrder k, const Word& prefix);

}  // namespace kabelian
