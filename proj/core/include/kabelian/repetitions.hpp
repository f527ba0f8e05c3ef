#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "kabelian/equivalence.hpp"
#include "kabelian/words.hpp"

namespace kabelian {

/// Evidence of a k-Abelian N-power: N consecutive blocks of equal length
/// starting at `start`, pairwise k-equivalent.
struct PowerWitness {
  std::size_t start = 0;
  std::size_t block_length = 0;
  std::uint32_t exponent = 0;
  KOrder k = KOrder(1);
  std::vector<Word> blocks;
};

/// Decidable set of positions: everything, an explicit finite set, an
/// arithmetic progression, or a residue class.
class PositionSet {
public:
  static PositionSet all();
  static PositionSet explicit_set(std::set<std::size_t> members);
  /// {start, start + step, start + 2 step, ...}, step >= 1.
  static PositionSet arithmetic(std::size_t start, std::size_t step);
  /// {i : i mod modulus == remainder}, modulus >= 1.
  static PositionSet residue(std::size_t remainder, std::size_t modulus);

  /// "all" | "ap:a,d" | "res:r,q" | "set:i1,i2,..."
  static PositionSet parse(std::string_view spec);

  bool contains(std::size_t i) const;
  /// Fraction of [0, window) that belongs to the set.
  double density_in(std::size_t window) const;
  std::string str() const;

private:
  enum class Kind { All, Explicit, Arithmetic, Residue };
  Kind kind_ = Kind::All;
  std::set<std::size_t> members_;
  std::size_t a_ = 0;
  std::size_t b_ = 1;
};

/// True iff w splits into N equal blocks that are pairwise k-equivalent.
/// Requires N >= 2 and N dividing |w|.
bool is_k_power(const Word& w, std::uint32_t N, KOrder k);

/// Bounded search for a k-Abelian N-power whose N+1 block boundaries
/// {i, i+l, ..., i+lN} all lie in D. Scans l = 1..l_max, then i ascending;
/// returns the first witness or nullopt when the budget is exhausted.
std::optional<PowerWitness> find_power(const Word& prefix, KOrder k, std::uint32_t N,
                                       const PositionSet& D, std::size_t l_max, unsigned jobs = 1);

/// Re-checks a witness against the word and position set.
bool validate_witness(const PowerWitness& witness, const Word& prefix, const PositionSet& D);

/// Least B such that every pair of equal-length windows of the prefix has
/// occurrence counts of each factor x with |x| <= k differing by at most B,
/// together with a triple attaining it.
struct BalanceReport {
  std::uint32_t k = 0;
  std::uint32_t bound = 0;
  std::size_t window = 0;  // prefix length analyzed
  Word max_window;         // u: window with the most occurrences of x
  Word min_window;         // v: window with the fewest
  Word factor_x;

  BalanceReport() : max_window(Alphabet::binary()), min_window(Alphabet::binary()),
                    factor_x(Alphabet::binary()) {}
};

/// Factor lengths are scanned independently; jobs > 1 spreads them across
/// threads without changing the result.
BalanceReport balance_bound(const Word& prefix, std::uint32_t k, unsigned jobs = 1);

/// Checks the complexity cap implied by balance: with B = balance_bound and
/// K = |A^{<=k}|, the class count of every factor length stays within
/// (B+1)^K.
struct BalanceLinkReport {
  bool holds = true;
  std::uint32_t bound = 0;
  std::uint64_t cap = 0;  // saturating (B+1)^K
  std::size_t first_violation_n = 0;
};

BalanceLinkReport balance_complexity_link(const Word& prefix, std::uint32_t k);

}  // namespace kabelian
