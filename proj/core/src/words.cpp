#include "kabelian/words.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace kabelian {

namespace {

constexpr std::uint64_t kDenseTableLimit = std::uint64_t{1} << 22;

const char* kIndexedNames = "0123456789abcdefghijklmnopqrstuvwxyz";

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw DomainError("alphabet must contain at least one symbol");
  }
  if (symbols_.size() > 255) {
    throw DomainError("alphabet size exceeds 255");
  }
  for (const auto& s : symbols_) {
    if (s.empty()) {
      throw DomainError("alphabet symbols must be non-empty");
    }
  }
  auto sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("alphabet symbols must be pairwise distinct");
  }
}

AlphabetPtr Alphabet::make(std::vector<std::string> symbols) {
  return std::make_shared<const Alphabet>(std::move(symbols));
}

AlphabetPtr Alphabet::binary() {
  static const AlphabetPtr instance = make({"0", "1"});
  return instance;
}

AlphabetPtr Alphabet::indexed(std::size_t m) {
  if (m == 0 || m > 36) {
    throw DomainError("indexed alphabet size must be in [1, 36]");
  }
  if (m == 2) {
    return binary();
  }
  std::vector<std::string> symbols;
  symbols.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    symbols.emplace_back(1, kIndexedNames[i]);
  }
  return make(std::move(symbols));
}

AlphabetPtr Alphabet::infer(std::string_view text) {
  std::set<char> distinct(text.begin(), text.end());
  if (distinct.empty()) {
    throw ParseError("cannot infer an alphabet from empty text");
  }
  std::vector<std::string> symbols;
  for (char c : distinct) {
    symbols.emplace_back(1, c);
  }
  return make(std::move(symbols));
}

AlphabetPtr Alphabet::infer_delimited(std::string_view text, char delimiter) {
  std::set<std::string> distinct;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, delimiter)) {
    if (!token.empty()) {
      distinct.insert(token);
    }
  }
  if (distinct.empty()) {
    throw ParseError("cannot infer an alphabet from empty text");
  }
  return make(std::vector<std::string>(distinct.begin(), distinct.end()));
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= symbols_.size()) {
    throw DomainError("symbol index out of range for this alphabet");
  }
  return symbols_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == name) {
      return static_cast<Symbol>(i);
    }
  }
  return std::nullopt;
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) {
    throw DomainError("word requires an alphabet");
  }
}

Word::Word(AlphabetPtr alphabet, std::vector<Symbol> symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
  if (!alphabet_) {
    throw DomainError("word requires an alphabet");
  }
  for (Symbol s : symbols_) {
    if (s >= alphabet_->size()) {
      throw DomainError("word contains a symbol outside its alphabet");
    }
  }
}

Word Word::parse(std::string_view text, AlphabetPtr alphabet) {
  if (!alphabet) {
    throw DomainError("word requires an alphabet");
  }
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    auto s = alphabet->find(std::string_view(&c, 1));
    if (!s) {
      throw ParseError("symbol '" + std::string(1, c) + "' is not in the alphabet");
    }
    symbols.push_back(*s);
  }
  return Word(std::move(alphabet), std::move(symbols));
}

Word Word::parse(std::string_view text, AlphabetPtr alphabet, char delimiter) {
  if (!alphabet) {
    throw DomainError("word requires an alphabet");
  }
  std::vector<Symbol> symbols;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, delimiter)) {
    if (token.empty()) {
      continue;
    }
    auto s = alphabet->find(token);
    if (!s) {
      throw ParseError("symbol '" + token + "' is not in the alphabet");
    }
    symbols.push_back(*s);
  }
  return Word(std::move(alphabet), std::move(symbols));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  if (pos + len > symbols_.size()) {
    throw DomainError("subword range out of bounds");
  }
  return Word(alphabet_, std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                             symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word Word::suffix(std::size_t len) const {
  if (len > symbols_.size()) {
    throw DomainError("suffix longer than the word");
  }
  return subword(symbols_.size() - len, len);
}

std::string Word::str() const {
  std::string out;
  for (Symbol s : symbols_) {
    out += alphabet_->name(s);
  }
  return out;
}

bool Word::operator==(const Word& other) const {
  require_same_alphabet(*this, other);
  return symbols_ == other.symbols_;
}

bool Word::operator<(const Word& other) const {
  require_same_alphabet(*this, other);
  return std::lexicographical_compare(symbols_.begin(), symbols_.end(),
                                      other.symbols_.begin(), other.symbols_.end());
}

Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::vector<Symbol> symbols(u.symbols().begin(), u.symbols().end());
  symbols.insert(symbols.end(), v.symbols().begin(), v.symbols().end());
  return Word(u.alphabet_ptr(), std::move(symbols));
}

void require_same_alphabet(const Word& u, const Word& v) {
  if (u.alphabet_ptr() == v.alphabet_ptr()) {
    return;
  }
  if (!(u.alphabet() == v.alphabet())) {
    throw AlphabetMismatchError("words over different alphabets are not comparable");
  }
}

std::size_t occurrences(const Word& w, const Word& x) {
  require_same_alphabet(w, x);
  if (x.empty()) {
    throw DomainError("occurrences of the empty word are not defined");
  }
  if (x.size() > w.size()) {
    return 0;
  }
  const auto ws = w.symbols();
  const auto xs = x.symbols();
  std::size_t count = 0;
  for (std::size_t i = 0; i + xs.size() <= ws.size(); ++i) {
    if (std::equal(xs.begin(), xs.end(), ws.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++count;
    }
  }
  return count;
}

Word reverse(const Word& w) {
  std::vector<Symbol> symbols(w.symbols().rbegin(), w.symbols().rend());
  return Word(w.alphabet_ptr(), std::move(symbols));
}

std::set<Word> factors(const Word& w, std::size_t n) {
  std::set<Word> out;
  if (n > w.size()) {
    return out;
  }
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    out.insert(w.subword(i, n));
  }
  return out;
}

bool is_balanced(const Word& w) {
  if (w.alphabet().size() != 2) {
    throw DomainError("is_balanced requires a binary alphabet");
  }
  const auto s = w.symbols();
  // For each window length, the ones-count across all windows may spread by
  // at most 1.
  for (std::size_t n = 1; n <= w.size(); ++n) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ones += s[i];
    }
    std::size_t lo = ones;
    std::size_t hi = ones;
    for (std::size_t i = n; i < w.size(); ++i) {
      ones += s[i];
      ones -= s[i - n];
      lo = std::min(lo, ones);
      hi = std::max(hi, ones);
      if (hi - lo > 1) {
        return false;
      }
    }
  }
  return true;
}

std::uint64_t block_code(std::span<const Symbol> block, std::size_t m) {
  std::uint64_t code = 0;
  for (Symbol s : block) {
    code = code * m + s;
  }
  return code;
}

std::optional<std::uint64_t> code_space(std::size_t m, std::size_t j) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < j; ++i) {
    if (space > kDenseTableLimit / m) {
      return std::nullopt;
    }
    space *= m;
  }
  return space;
}

std::vector<std::uint32_t> factor_count_table(const Word& w, std::size_t j) {
  const std::size_t m = w.alphabet().size();
  auto space = code_space(m, j);
  if (!space) {
    throw DomainError("factor length too large for a dense count table");
  }
  std::vector<std::uint32_t> table(*space, 0);
  if (j == 0 || j > w.size()) {
    return table;
  }
  const auto s = w.symbols();
  const std::uint64_t modulus = *space / m;
  std::uint64_t code = block_code(s.subspan(0, j), m);
  table[code]++;
  for (std::size_t i = j; i < s.size(); ++i) {
    code = (code % modulus) * m + s[i];
    table[code]++;
  }
  return table;
}

std::map<std::vector<Symbol>, std::uint32_t> factor_counts(const Word& w, std::size_t j) {
  std::map<std::vector<Symbol>, std::uint32_t> counts;
  if (j == 0 || j > w.size()) {
    return counts;
  }
  const auto s = w.symbols();
  for (std::size_t i = 0; i + j <= s.size(); ++i) {
    counts[std::vector<Symbol>(s.begin() + static_cast<std::ptrdiff_t>(i),
                               s.begin() + static_cast<std::ptrdiff_t>(i + j))]++;
  }
  return counts;
}

std::vector<Symbol> decode_block(std::uint64_t code, std::size_t m, std::size_t j) {
  std::vector<Symbol> block(j, 0);
  for (std::size_t i = j; i-- > 0;) {
    block[i] = static_cast<Symbol>(code % m);
    code /= m;
  }
  return block;
}

}  // namespace kabelian
