#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kabelian/words.hpp"

namespace kabelian {

/// Order parameter k of the equivalence family: a positive integer or
/// infinity. k = 1 is Abelian equivalence, k = infinity is word equality.
class KOrder {
public:
  constexpr explicit KOrder(std::uint32_t k) : value_(k) {
    if (k == 0) {
      throw DomainError("k must be a positive integer (or KOrder::infinity())");
    }
  }

  static constexpr KOrder infinity() { return KOrder(InfinityTag{}); }

  constexpr bool is_infinite() const noexcept { return value_ == 0; }
  /// Finite value; only valid when !is_infinite().
  constexpr std::uint32_t finite() const {
    if (is_infinite()) {
      throw DomainError("KOrder is infinite");
    }
    return value_;
  }

  /// min(word_length, k - 1): the affix length the equivalence compares.
  std::size_t affix_length(std::size_t word_length) const {
    if (is_infinite()) {
      return word_length;
    }
    return std::min<std::size_t>(word_length, value_ - 1);
  }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }
  /// Accepts a positive decimal integer or "inf".
  static KOrder parse(std::string_view text);

  friend constexpr bool operator==(KOrder a, KOrder b) noexcept { return a.value_ == b.value_; }
  friend constexpr bool operator!=(KOrder a, KOrder b) noexcept { return a.value_ != b.value_; }
  /// Orders finite values naturally with infinity last.
  friend constexpr bool operator<(KOrder a, KOrder b) noexcept {
    if (a.value_ == b.value_) return false;
    if (a.value_ == 0) return false;
    if (b.value_ == 0) return true;
    return a.value_ < b.value_;
  }

private:
  struct InfinityTag {};
  constexpr explicit KOrder(InfinityTag) : value_(0) {}
  std::uint32_t value_;  // 0 encodes infinity
};

/// Affixes and exact-length-k factor counts of a word: the data the
/// six-way characterization lemma ranges over.
struct KSpectrum {
  KOrder k = KOrder(1);
  std::size_t word_length = 0;
  std::vector<Symbol> prefix;  // length min(word_length, k-1)
  std::vector<Symbol> suffix;  // length min(word_length, k-1)
  std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> counts;  // lex-sorted, nonzero

  bool operator==(const KSpectrum& other) const = default;
};

/// Canonical key of a k-Abelian class: (k, length, prefix of length k-1,
/// length-k factor counts). Two words have equal signatures iff they are
/// k-Abelian equivalent. For infinite k the signature stores the word itself.
class ClassSignature {
public:
  ClassSignature(KOrder k, std::size_t word_length, AlphabetPtr alphabet,
                 std::vector<Symbol> prefix,
                 std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> counts);

  KOrder k() const noexcept { return k_; }
  std::size_t word_length() const noexcept { return word_length_; }
  const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }
  const std::vector<Symbol>& prefix() const noexcept { return prefix_; }
  const std::vector<std::pair<std::vector<Symbol>, std::uint32_t>>& counts() const noexcept {
    return counts_;
  }

  bool operator==(const ClassSignature& other) const;
  bool operator!=(const ClassSignature& other) const { return !(*this == other); }
  bool operator<(const ClassSignature& other) const;

private:
  KOrder k_;
  std::size_t word_length_;
  AlphabetPtr alphabet_;
  std::vector<Symbol> prefix_;
  std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> counts_;
};

/// Canonical class key of w under the k-th equivalence.
ClassSignature signature(const Word& w, KOrder k);

/// Affixes and counts of w (diagnostic companion of signature()).
KSpectrum spectrum(const Word& w, KOrder k);

/// Decision procedure: equal occurrence counts of every non-empty factor of
/// length <= k; word equality when k is infinite. Uses signatures.
bool k_abelian_equivalent(const Word& u, const Word& v, KOrder k);

/// Lexicographically least shortest factor x with differing occurrence
/// counts, or nullopt when the words are k-equivalent.
std::optional<Word> shortest_distinguishing_factor(const Word& u, const Word& v, KOrder k);

/// Coarser relation: Abelian equivalence plus a common prefix and suffix of
/// length k-1. For |u| < k-1 it degenerates to equality; so does infinite k.
bool r_k_equivalent(const Word& u, const Word& v, KOrder k);

/// Class key of w under the R_k relation, comparable within fixed (k, |w|).
struct RClassKey {
  std::vector<Symbol> prefix;
  std::vector<Symbol> suffix;
  std::vector<std::uint32_t> parikh;

  auto operator<=>(const RClassKey& other) const = default;
};
RClassKey r_class_key(const Word& w, KOrder k);

/// Test oracle for the six equivalent characterizations of the equivalence:
/// evaluates each condition independently and reports whether all six agree.
/// Requires finite k, |u|, |v| >= k-1, and equal length-k factor counts.
bool characterizations_agree(const Word& u, const Word& v, std::uint32_t k);

}  // namespace kabelian
