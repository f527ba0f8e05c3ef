#include "kabelian/sturmian.hpp"

#include <algorithm>
#include <map>

namespace kabelian {

namespace {

/// Projects a word whose support is {a, b} (a < b) onto the binary alphabet.
Word project_binary(const Word& w, Symbol a, Symbol b) {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (Symbol s : w.symbols()) {
    if (s == a) {
      out.push_back(0);
    } else if (s == b) {
      out.push_back(1);
    } else {
      throw DomainError("word uses a letter outside the pair's binary support");
    }
  }
  return Word(Alphabet::binary(), std::move(out));
}

}  // namespace

SpecialFactorReport special_factors(const Word& prefix, std::size_t n) {
  if (n + 1 > prefix.size()) {
    throw DomainError("special_factors needs a window of at least n + 1 symbols");
  }
  SpecialFactorReport report;
  report.n = n;
  std::map<Word, std::set<Symbol>> right, left;
  for (std::size_t i = 0; i + n + 1 <= prefix.size(); ++i) {
    const Word core_right = prefix.subword(i, n);
    const Word core_left = prefix.subword(i + 1, n);
    right[core_right].insert(prefix[i + n]);
    left[core_left].insert(prefix[i]);
  }
  for (const auto& [w, extensions] : right) {
    if (extensions.size() >= 2) {
      report.right_special.insert(w);
    }
  }
  for (const auto& [w, extensions] : left) {
    if (extensions.size() >= 2) {
      report.left_special.insert(w);
    }
  }
  std::set_intersection(report.right_special.begin(), report.right_special.end(),
                        report.left_special.begin(), report.left_special.end(),
                        std::inserter(report.bispecial, report.bispecial.begin()));
  return report;
}

Word swap_at(const Word& w, std::size_t i) {
  if (w.alphabet().size() != 2) {
    throw DomainError("swap_at requires a binary word");
  }
  if (i == 0 || i > w.size()) {
    throw DomainError("swap_at position out of range");
  }
  std::vector<Symbol> out(w.symbols().begin(), w.symbols().end());
  if (i == w.size()) {
    if (out[i - 1] != 0) {
      throw DomainError("swap_at at the last position requires a trailing 0");
    }
    out[i - 1] = 1;
  } else {
    if (out[i - 1] != 0 || out[i] != 1) {
      throw DomainError("swap_at requires '01' at the given position");
    }
    out[i - 1] = 1;
    out[i] = 0;
  }
  return Word(w.alphabet_ptr(), std::move(out));
}

FactorChain factor_chain(const Word& prefix, std::size_t n) {
  if (prefix.alphabet().size() != 2) {
    throw DomainError("factor_chain requires a binary word");
  }
  const auto factor_set = factors(prefix, n);
  if (factor_set.size() != n + 1) {
    throw DomainError("factor_chain requires exactly n + 1 factors of length n (got " +
                      std::to_string(factor_set.size()) + ")");
  }
  FactorChain chain;
  chain.n = n;
  chain.factors.assign(factor_set.begin(), factor_set.end());  // set iterates sorted
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i + 1 < chain.factors.size(); ++i) {
    std::size_t index = 0;
    for (std::size_t candidate = 1; candidate <= n; ++candidate) {
      const auto& w = chain.factors[i];
      const bool applies = candidate == n ? w[candidate - 1] == 0
                                          : (w[candidate - 1] == 0 && w[candidate] == 1);
      if (applies && swap_at(w, candidate) == chain.factors[i + 1]) {
        index = candidate;
        break;
      }
    }
    if (index == 0) {
      throw DomainError("consecutive factors are not related by any swap");
    }
    if (!seen.insert(index).second) {
      throw DomainError("swap indices do not form a permutation");
    }
    chain.sigma.push_back(index);
  }
  return chain;
}

std::vector<EquivalentPair2k> classify_length_2k_pairs(std::size_t m, std::uint32_t k,
                                                       std::uint64_t max_words) {
  if (m < 2 || k == 0) {
    throw DomainError("classify_length_2k_pairs requires m >= 2 and k >= 1");
  }
  const std::size_t n = 2 * static_cast<std::size_t>(k);
  double words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    words *= static_cast<double>(m);
    if (words > static_cast<double>(max_words)) {
      throw BudgetExceededError("pair enumeration would exceed max_words");
    }
  }
  const auto alphabet = Alphabet::indexed(m);
  const KOrder order(k);

  std::map<ClassSignature, std::vector<Word>> buckets;
  std::vector<Symbol> symbols(n, 0);
  while (true) {
    Word w(alphabet, symbols);
    buckets[signature(w, order)].push_back(std::move(w));
    std::size_t i = n;
    while (i > 0 && symbols[i - 1] == m - 1) {
      symbols[--i] = 0;
    }
    if (i == 0) {
      break;
    }
    symbols[i - 1]++;
  }

  std::vector<EquivalentPair2k> pairs;
  for (const auto& [sig, bucket] : buckets) {
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      for (std::size_t j = i + 1; j < bucket.size(); ++j) {
        const Word& u = bucket[i];
        const Word& v = bucket[j];
        // Classification: u = x a b rev(x), v = x b a rev(x), a != b.
        const Word x = u.prefix(k - 1);
        const Symbol a = u[k - 1];
        const Symbol b = u[k];
        const Word rx = reverse(x);
        bool ok = a != b && u.suffix(k - 1) == rx && v.prefix(k - 1) == x &&
                  v.suffix(k - 1) == rx && v[k - 1] == b && v[k] == a;
        if (ok) {
          const Symbol lo = std::min(a, b);
          const Symbol hi = std::max(a, b);
          const auto us = u.symbols();
          ok = std::all_of(us.begin(), us.end(), [&](Symbol s) { return s == lo || s == hi; });
          if (ok) {
            const Word xa = concat(x, Word(alphabet, {a}));
            const Word xb = concat(x, Word(alphabet, {b}));
            ok = is_balanced(project_binary(u, lo, hi)) && is_balanced(project_binary(v, lo, hi)) &&
                 is_balanced(project_binary(xa, lo, hi)) && is_balanced(project_binary(xb, lo, hi));
          }
        }
        if (!ok) {
          throw DomainError("equivalent pair of length 2k without the structural decomposition: " +
                            u.str() + " / " + v.str());
        }
        pairs.push_back({u, v, x});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const EquivalentPair2k& p, const EquivalentPair2k& r) { return p.u < r.u; });
  return pairs;
}

bool same_sturmian_equivalence(const Word& u, const Word& v, KOrder k, const Word& prefix) {
  require_same_alphabet(u, prefix);
  require_same_alphabet(v, prefix);
  if (u.empty() || occurrences(prefix, u) == 0 || v.empty() || occurrences(prefix, v) == 0) {
    throw DomainError("both words must be non-empty factors of the prefix");
  }
  bool criterion;
  if (k.is_infinite()) {
    criterion = u == v;
  } else if (u.size() != v.size()) {
    criterion = false;
  } else {
    const std::size_t affix = std::min<std::size_t>(u.size(), k.finite() - 1);
    criterion = r_class_key(u, KOrder(static_cast<std::uint32_t>(affix) + 1)) ==
                r_class_key(v, KOrder(static_cast<std::uint32_t>(affix) + 1));
  }
  const bool general = k_abelian_equivalent(u, v, k);
  if (criterion != general) {
    throw DomainError("simplified criterion disagrees with the general procedure; "
                      "the prefix is not a Sturmian window");
  }
  return criterion;
}

}  // namespace kabelian
