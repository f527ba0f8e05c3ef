#pragma once

#include <string_view>
#include <vector>

#include "kabelian/equivalence.hpp"
#include "kabelian/words.hpp"

namespace kabelian::testutil {

inline Word bw(std::string_view text) { return Word::parse(text, Alphabet::binary()); }

inline Word mw(std::string_view text, std::size_t m) {
  return Word::parse(text, Alphabet::indexed(m));
}

/// All words of length n over the indexed alphabet of size m, in lex order.
inline std::vector<Word> all_words(std::size_t m, std::size_t n) {
  const auto alphabet = Alphabet::indexed(m);
  std::vector<Word> out;
  std::vector<Symbol> symbols(n, 0);
  while (true) {
    out.emplace_back(alphabet, symbols);
    std::size_t i = n;
    while (i > 0 && symbols[i - 1] == m - 1) {
      symbols[--i] = 0;
    }
    if (i == 0) {
      break;
    }
    symbols[i - 1]++;
  }
  return out;
}

/// Oracle: direct scan of all start positions.
inline std::size_t naive_occurrences(const Word& w, const Word& x) {
  std::size_t count = 0;
  if (x.empty() || x.size() > w.size()) {
    return count;
  }
  for (std::size_t i = 0; i + x.size() <= w.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < x.size() && match; ++j) {
      match = w[i + j] == x[j];
    }
    count += match ? 1 : 0;
  }
  return count;
}

/// Oracle: the definitional check, literally comparing occurrence counts of
/// every non-empty factor length up to k.
inline bool definitional_equivalent(const Word& u, const Word& v, KOrder k) {
  if (k.is_infinite()) {
    return u == v;
  }
  for (std::size_t j = 1; j <= k.finite(); ++j) {
    if (factor_counts(u, j) != factor_counts(v, j)) {
      return false;
    }
  }
  // Words of different lengths always disagree on some letter count except
  // when both are shorter than every checked factor; compare lengths too.
  return u.size() == v.size();
}

/// Oracle: exhaustive pair check of the balance property.
inline bool balanced_oracle(const Word& w) {
  for (std::size_t n = 1; n <= w.size(); ++n) {
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i + n <= w.size(); ++i) {
      std::size_t count = 0;
      for (std::size_t j = 0; j < n; ++j) {
        count += w[i + j];
      }
      ones.push_back(count);
    }
    for (std::size_t a = 0; a < ones.size(); ++a) {
      for (std::size_t b = a + 1; b < ones.size(); ++b) {
        const std::size_t diff = ones[a] > ones[b] ? ones[a] - ones[b] : ones[b] - ones[a];
        if (diff > 1) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace kabelian::testutil
