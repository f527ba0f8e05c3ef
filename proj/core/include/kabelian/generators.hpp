#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kabelian/words.hpp"

namespace kabelian {

/// Substitution mapping each symbol to a non-empty image word.
class Morphism {
public:
  Morphism(AlphabetPtr alphabet, std::vector<Word> images);

  /// Parse "0=01,1=0" style rules over single-character symbols. Every symbol
  /// used in an image must have a rule of its own.
  static Morphism parse(std::string_view rules);

  const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
  const Word& image(Symbol s) const;
  Word apply(const Word& w) const;

  /// image(seed) begins with seed and has length >= 2.
  bool prolongable_on(Symbol seed) const;

  std::string str() const;

private:
  AlphabetPtr alphabet_;
  std::vector<Word> images_;
};

/// Deterministic specification of an infinite word. Prefixes of one stream
/// agree on their common range; materialization is pure.
class WordStream {
public:
  enum class Kind { Mechanical, Morphic, UltimatelyPeriodic };

  /// Lower mechanical word s_i = floor(((i+1)p + rho)/q) - floor((ip + rho)/q)
  /// in exact integer arithmetic. Requires 0 < p < q and gcd(p, q) = 1.
  static WordStream mechanical(std::int64_t p, std::int64_t q, std::int64_t rho);
  /// Mechanical word whose slope is the convergent of a continued fraction
  /// [a0; a1, a2, ...].
  static WordStream mechanical_from_continued_fraction(const std::vector<std::int64_t>& cf,
                                                       std::int64_t rho);
  /// Fixed point of mu starting from seed; mu must be prolongable on seed.
  static WordStream morphic(Morphism mu, Symbol seed);
  /// U V V V ... with non-empty V.
  static WordStream ultimately_periodic(Word preperiod, Word period);

  /// The word generated by 0 -> 01, 1 -> 0 from seed 0.
  static WordStream fibonacci();
  /// The word generated by 0 -> 01, 1 -> 10 from seed 0.
  static WordStream thue_morse();

  /// Parse a stream spec: "fib", "tm", "mech:13/21:0", "mech:cf=0,1,1,1:0",
  /// "morphic:0=01,1=0:seed=0", "up:U=0,V=1".
  static WordStream parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }

  Word prefix(std::size_t n) const;

  /// True when every length-n factor of the infinite word provably appears in
  /// prefix(window). Mechanical and ultimately periodic streams use exact
  /// bounds; morphic streams use factor-set saturation across two successive
  /// iterates inside the window.
  bool coverage_valid(std::size_t n, std::size_t window) const;

  /// Largest factor length with guaranteed Sturmian-like structure: q - 1 for
  /// a mechanical stream with denominator q (rational slopes are eventually
  /// periodic), unbounded otherwise.
  std::optional<std::size_t> sturmian_validity_bound() const;

  /// Canonical spec string that parses back to this stream.
  std::string spec_string() const;

private:
  WordStream() = default;

  Kind kind_ = Kind::Mechanical;
  AlphabetPtr alphabet_;
  // mechanical
  std::int64_t p_ = 0, q_ = 0, rho_ = 0;
  // morphic
  std::optional<Morphism> morphism_;
  Symbol seed_ = 0;
  // ultimately periodic
  std::optional<Word> preperiod_;
  std::optional<Word> period_;
};

}  // namespace kabelian
