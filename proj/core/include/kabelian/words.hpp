#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kabelian/errors.hpp"

namespace kabelian {

/// A symbol is a small index into its Alphabet.
using Symbol = std::uint8_t;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Ordered finite alphabet. The symbol order is total and fixed; it drives
/// every lexicographic tie-break in the library.
class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> symbols);

  static AlphabetPtr make(std::vector<std::string> symbols);
  static AlphabetPtr binary();
  /// Alphabet of size m named "0".."9","a".."z" (m <= 36).
  static AlphabetPtr indexed(std::size_t m);
  /// Distinct characters of `text`, sorted. Empty text yields an error.
  static AlphabetPtr infer(std::string_view text);
  /// Distinct delimiter-separated tokens, sorted.
  static AlphabetPtr infer_delimited(std::string_view text, char delimiter);

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& name(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
  std::vector<std::string> symbols_;
};

/// Finite word over an Alphabet. Immutable after construction.
class Word {
public:
  explicit Word(AlphabetPtr alphabet);
  Word(AlphabetPtr alphabet, std::vector<Symbol> symbols);

  /// Parse one-character-per-symbol text.
  static Word parse(std::string_view text, AlphabetPtr alphabet);
  /// Parse delimiter-separated multi-character symbols.
  static Word parse(std::string_view text, AlphabetPtr alphabet, char delimiter);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  const Alphabet& alphabet() const noexcept { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }

  Word subword(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return subword(0, len); }
  Word suffix(std::size_t len) const;

  /// Rendered with the alphabet's symbol names, concatenated.
  std::string str() const;

  bool operator==(const Word& other) const;
  bool operator!=(const Word& other) const { return !(*this == other); }
  /// Lexicographic by symbol order; requires the same alphabet.
  bool operator<(const Word& other) const;

private:
  AlphabetPtr alphabet_;
  std::vector<Symbol> symbols_;
};

/// Concatenation; both words must share an alphabet.
Word concat(const Word& u, const Word& v);

/// Throws AlphabetMismatchError unless u and v share an alphabet (by value).
void require_same_alphabet(const Word& u, const Word& v);

/// Number of (possibly overlapping) occurrences of x in w. x must be non-empty.
std::size_t occurrences(const Word& w, const Word& x);

/// Symbols in reversed order.
Word reverse(const Word& w);

/// Distinct contiguous subwords of length n. Empty set when n > |w|.
std::set<Word> factors(const Word& w, std::size_t n);

/// True iff counts of either letter differ by at most one across all pairs of
/// equal-length factors. Requires a binary alphabet.
bool is_balanced(const Word& w);

/// Integer code of a length-j block: symbols read as base-m digits, first
/// symbol most significant. Codes order blocks lexicographically.
std::uint64_t block_code(std::span<const Symbol> block, std::size_t m);

/// m^j, or nullopt if it does not fit the dense-table limit.
std::optional<std::uint64_t> code_space(std::size_t m, std::size_t j);

/// Dense occurrence table of all length-j blocks of w, indexed by block code.
/// Throws DomainError when m^j exceeds the dense-table limit.
std::vector<std::uint32_t> factor_count_table(const Word& w, std::size_t j);

/// Sparse occurrence counts of length-j factors, keyed lexicographically.
std::map<std::vector<Symbol>, std::uint32_t> factor_counts(const Word& w, std::size_t j);

/// Decode a block code back into symbols.
std::vector<Symbol> decode_block(std::uint64_t code, std::size_t m, std::size_t j);

}  // namespace kabelian
