#include "kabelian/equivalence.hpp"

#include <algorithm>
#include <charconv>

namespace kabelian {

namespace {

std::vector<Symbol> affix_front(const Word& w, std::size_t len) {
  const auto s = w.symbols();
  return {s.begin(), s.begin() + static_cast<std::ptrdiff_t>(len)};
}

std::vector<Symbol> affix_back(const Word& w, std::size_t len) {
  const auto s = w.symbols();
  return {s.end() - static_cast<std::ptrdiff_t>(len), s.end()};
}

std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> sorted_counts(const Word& w,
                                                                         std::size_t j) {
  auto counts = factor_counts(w, j);
  return {counts.begin(), counts.end()};
}

}  // namespace

KOrder KOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") {
    return KOrder::infinity();
  }
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw ParseError("k must be a positive integer or 'inf', got '" + std::string(text) + "'");
  }
  return KOrder(value);
}

ClassSignature::ClassSignature(KOrder k, std::size_t word_length, AlphabetPtr alphabet,
                               std::vector<Symbol> prefix,
                               std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> counts)
    : k_(k),
      word_length_(word_length),
      alphabet_(std::move(alphabet)),
      prefix_(std::move(prefix)),
      counts_(std::move(counts)) {}

bool ClassSignature::operator==(const ClassSignature& other) const {
  if (alphabet_ != other.alphabet_ && !(*alphabet_ == *other.alphabet_)) {
    throw AlphabetMismatchError("signatures over different alphabets are not comparable");
  }
  return k_ == other.k_ && word_length_ == other.word_length_ && prefix_ == other.prefix_ &&
         counts_ == other.counts_;
}

bool ClassSignature::operator<(const ClassSignature& other) const {
  if (alphabet_ != other.alphabet_ && !(*alphabet_ == *other.alphabet_)) {
    throw AlphabetMismatchError("signatures over different alphabets are not comparable");
  }
  if (k_ != other.k_) return k_ < other.k_;
  if (word_length_ != other.word_length_) return word_length_ < other.word_length_;
  if (prefix_ != other.prefix_) return prefix_ < other.prefix_;
  return counts_ < other.counts_;
}

ClassSignature signature(const Word& w, KOrder k) {
  if (k.is_infinite()) {
    return ClassSignature(k, w.size(), w.alphabet_ptr(),
                          {w.symbols().begin(), w.symbols().end()}, {});
  }
  const std::uint32_t kk = k.finite();
  const std::size_t affix = k.affix_length(w.size());
  std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> counts;
  if (w.size() >= kk) {
    counts = sorted_counts(w, kk);
  }
  return ClassSignature(k, w.size(), w.alphabet_ptr(), affix_front(w, affix), std::move(counts));
}

KSpectrum spectrum(const Word& w, KOrder k) {
  KSpectrum sp;
  sp.k = k;
  sp.word_length = w.size();
  const std::size_t affix = k.affix_length(w.size());
  sp.prefix = affix_front(w, affix);
  sp.suffix = affix_back(w, affix);
  if (!k.is_infinite() && w.size() >= k.finite()) {
    sp.counts = sorted_counts(w, k.finite());
  }
  return sp;
}

bool k_abelian_equivalent(const Word& u, const Word& v, KOrder k) {
  require_same_alphabet(u, v);
  if (k.is_infinite()) {
    return u == v;
  }
  if (u.size() != v.size()) {
    return false;
  }
  return signature(u, k) == signature(v, k);
}

std::optional<Word> shortest_distinguishing_factor(const Word& u, const Word& v, KOrder k) {
  require_same_alphabet(u, v);
  const std::size_t longest = std::max(u.size(), v.size());
  const std::size_t limit =
      k.is_infinite() ? longest : std::min<std::size_t>(k.finite(), longest);
  for (std::size_t j = 1; j <= limit; ++j) {
    const auto cu = factor_counts(u, j);
    const auto cv = factor_counts(v, j);
    // Merge in lexicographic key order; first differing key wins.
    auto iu = cu.begin();
    auto iv = cv.begin();
    while (iu != cu.end() || iv != cv.end()) {
      if (iv == cv.end() || (iu != cu.end() && iu->first < iv->first)) {
        return Word(u.alphabet_ptr(), iu->first);
      }
      if (iu == cu.end() || iv->first < iu->first) {
        return Word(u.alphabet_ptr(), iv->first);
      }
      if (iu->second != iv->second) {
        return Word(u.alphabet_ptr(), iu->first);
      }
      ++iu;
      ++iv;
    }
  }
  return std::nullopt;
}

bool r_k_equivalent(const Word& u, const Word& v, KOrder k) {
  require_same_alphabet(u, v);
  if (k.is_infinite()) {
    return u == v;
  }
  const std::size_t affix = k.finite() - 1;
  if (u.size() < affix || v.size() < affix) {
    return u == v;
  }
  if (u.size() != v.size()) {
    return false;
  }
  // Abelian equivalence: letter counts agree.
  const std::size_t m = u.alphabet().size();
  std::vector<std::uint32_t> pu(m, 0);
  std::vector<std::uint32_t> pv(m, 0);
  for (Symbol s : u.symbols()) pu[s]++;
  for (Symbol s : v.symbols()) pv[s]++;
  if (pu != pv) {
    return false;
  }
  return affix_front(u, affix) == affix_front(v, affix) &&
         affix_back(u, affix) == affix_back(v, affix);
}

RClassKey r_class_key(const Word& w, KOrder k) {
  RClassKey key;
  if (k.is_infinite() || w.size() < k.finite() - 1) {
    key.prefix = {w.symbols().begin(), w.symbols().end()};
    return key;
  }
  const std::size_t affix = k.finite() - 1;
  key.prefix = affix_front(w, affix);
  key.suffix = affix_back(w, affix);
  key.parikh.assign(w.alphabet().size(), 0);
  for (Symbol s : w.symbols()) {
    key.parikh[s]++;
  }
  return key;
}

bool characterizations_agree(const Word& u, const Word& v, std::uint32_t k) {
  require_same_alphabet(u, v);
  if (k == 0) {
    throw DomainError("k must be positive");
  }
  if (u.size() + 1 < k || v.size() + 1 < k) {
    throw DomainError("characterizations_agree requires |u|, |v| >= k - 1");
  }
  if (factor_counts(u, k) != factor_counts(v, k)) {
    throw DomainError("characterizations_agree requires equal length-k factor counts");
  }

  // (1) counts agree for every non-empty factor length below k
  bool all_short_counts = true;
  for (std::size_t j = 1; j + 1 <= k && all_short_counts; ++j) {
    all_short_counts = factor_counts(u, j) == factor_counts(v, j);
  }
  // (2) counts agree at length exactly k - 1
  const bool counts_k_minus_1 = k == 1 || factor_counts(u, k - 1) == factor_counts(v, k - 1);
  // (3)-(5) affix conditions
  const std::size_t a = k - 1;
  const bool pref = affix_front(u, std::min(a, u.size())) == affix_front(v, std::min(a, v.size()));
  const bool suff = affix_back(u, std::min(a, u.size())) == affix_back(v, std::min(a, v.size()));
  const bool pref_and_suff = pref && suff;
  // (6) some split i: prefixes of length i and suffixes of length k-1-i agree
  bool split = false;
  for (std::size_t i = 0; i <= a && !split; ++i) {
    if (i > u.size() || i > v.size() || a - i > u.size() || a - i > v.size()) {
      continue;
    }
    split = affix_front(u, i) == affix_front(v, i) && affix_back(u, a - i) == affix_back(v, a - i);
  }

  const bool conditions[] = {all_short_counts, counts_k_minus_1, pref_and_suff, pref, suff, split};
  return std::all_of(std::begin(conditions), std::end(conditions),
                     [&](bool c) { return c == conditions[0]; });
}

}  // namespace kabelian
