#include "kabelian/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace kabelian {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t quotient = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    --quotient;
  }
  return quotient;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("expected an integer for " + std::string(what) + ", got '" +
                     std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view text, char delimiter) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, delimiter)) {
    parts.push_back(token);
  }
  if (!text.empty() && text.back() == delimiter) {
    parts.emplace_back();
  }
  return parts;
}

}  // namespace

Morphism::Morphism(AlphabetPtr alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (!alphabet_) {
    throw DomainError("morphism requires an alphabet");
  }
  if (images_.size() != alphabet_->size()) {
    throw DomainError("morphism must define an image for every symbol");
  }
  for (const auto& image : images_) {
    if (image.empty()) {
      throw DomainError("morphism images must be non-empty");
    }
    if (!(image.alphabet() == *alphabet_)) {
      throw AlphabetMismatchError("morphism image over a different alphabet");
    }
  }
}

Morphism Morphism::parse(std::string_view rules) {
  std::map<std::string, std::string> images;
  for (const auto& rule : split(rules, ',')) {
    const auto eq = rule.find('=');
    if (eq == std::string::npos || eq != 1 || rule.size() < 3) {
      throw ParseError("morphism rule must look like '0=01', got '" + rule + "'");
    }
    const std::string lhs = rule.substr(0, 1);
    if (images.contains(lhs)) {
      throw ParseError("duplicate morphism rule for symbol '" + lhs + "'");
    }
    images[lhs] = rule.substr(2);
  }
  if (images.empty()) {
    throw ParseError("morphism needs at least one rule");
  }
  std::set<char> used;
  for (const auto& [lhs, rhs] : images) {
    used.insert(lhs[0]);
    used.insert(rhs.begin(), rhs.end());
  }
  for (char c : used) {
    if (!images.contains(std::string(1, c))) {
      throw ParseError("symbol '" + std::string(1, c) + "' appears in an image but has no rule");
    }
  }
  std::vector<std::string> names;
  for (char c : used) {
    names.emplace_back(1, c);
  }
  auto alphabet = Alphabet::make(std::move(names));
  std::vector<Word> image_words;
  image_words.reserve(alphabet->size());
  for (std::size_t i = 0; i < alphabet->size(); ++i) {
    image_words.push_back(Word::parse(images.at(alphabet->name(static_cast<Symbol>(i))), alphabet));
  }
  return Morphism(alphabet, std::move(image_words));
}

const Word& Morphism::image(Symbol s) const {
  if (s >= images_.size()) {
    throw DomainError("symbol index out of range for this morphism");
  }
  return images_[s];
}

Word Morphism::apply(const Word& w) const {
  if (!(w.alphabet() == *alphabet_)) {
    throw AlphabetMismatchError("morphism applied to a word over a different alphabet");
  }
  std::vector<Symbol> out;
  for (Symbol s : w.symbols()) {
    const auto img = images_[s].symbols();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(alphabet_, std::move(out));
}

bool Morphism::prolongable_on(Symbol seed) const {
  if (seed >= images_.size()) {
    return false;
  }
  const Word& img = images_[seed];
  return img.size() >= 2 && img[0] == seed;
}

std::string Morphism::str() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += alphabet_->name(static_cast<Symbol>(i)) + "=" + images_[i].str();
  }
  return out;
}

WordStream WordStream::mechanical(std::int64_t p, std::int64_t q, std::int64_t rho) {
  if (q <= 0 || p <= 0 || p >= q) {
    throw DomainError("mechanical slope p/q must satisfy 0 < p < q");
  }
  if (std::gcd(p, q) != 1) {
    throw DomainError("mechanical slope p/q must be in lowest terms");
  }
  WordStream s;
  s.kind_ = Kind::Mechanical;
  s.alphabet_ = Alphabet::binary();
  s.p_ = p;
  s.q_ = q;
  s.rho_ = rho;
  return s;
}

WordStream WordStream::mechanical_from_continued_fraction(const std::vector<std::int64_t>& cf,
                                                          std::int64_t rho) {
  if (cf.size() < 2) {
    throw DomainError("continued fraction needs at least two terms");
  }
  // Standard convergent recurrence p_i = a_i p_{i-1} + p_{i-2}.
  std::int64_t p_prev = 1, p_cur = cf[0];
  std::int64_t q_prev = 0, q_cur = 1;
  for (std::size_t i = 1; i < cf.size(); ++i) {
    if (cf[i] <= 0) {
      throw DomainError("continued fraction terms after the first must be positive");
    }
    const std::int64_t p_next = cf[i] * p_cur + p_prev;
    const std::int64_t q_next = cf[i] * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
  }
  return mechanical(p_cur, q_cur, rho);
}

WordStream WordStream::morphic(Morphism mu, Symbol seed) {
  if (!mu.prolongable_on(seed)) {
    throw DomainError("morphism is not prolongable on the seed symbol");
  }
  WordStream s;
  s.kind_ = Kind::Morphic;
  s.alphabet_ = mu.alphabet_ptr();
  s.morphism_ = std::move(mu);
  s.seed_ = seed;
  return s;
}

WordStream WordStream::ultimately_periodic(Word preperiod, Word period) {
  if (period.empty()) {
    throw DomainError("period must be non-empty");
  }
  require_same_alphabet(preperiod, period);
  WordStream s;
  s.kind_ = Kind::UltimatelyPeriodic;
  s.alphabet_ = period.alphabet_ptr();
  s.preperiod_ = std::move(preperiod);
  s.period_ = std::move(period);
  return s;
}

WordStream WordStream::fibonacci() { return morphic(Morphism::parse("0=01,1=0"), 0); }

WordStream WordStream::thue_morse() { return morphic(Morphism::parse("0=01,1=10"), 0); }

WordStream WordStream::parse(std::string_view spec) {
  if (spec == "fib" || spec == "fibonacci") {
    return fibonacci();
  }
  if (spec == "tm" || spec == "thue-morse") {
    return thue_morse();
  }
  const auto parts = split(spec, ':');
  if (parts.empty()) {
    throw ParseError("empty word spec");
  }
  const std::string& head = parts[0];
  if (head == "mech") {
    if (parts.size() < 2 || parts.size() > 3) {
      throw ParseError("mechanical spec must be mech:P/Q[:RHO] or mech:cf=a0,a1,...[:RHO]");
    }
    const std::int64_t rho = parts.size() == 3 ? parse_int(parts[2], "rho") : 0;
    if (parts[1].starts_with("cf=")) {
      std::vector<std::int64_t> cf;
      for (const auto& term : split(std::string_view(parts[1]).substr(3), ',')) {
        cf.push_back(parse_int(term, "continued fraction term"));
      }
      return mechanical_from_continued_fraction(cf, rho);
    }
    const auto slash = parts[1].find('/');
    if (slash == std::string::npos) {
      throw ParseError("mechanical slope must be P/Q, got '" + parts[1] + "'");
    }
    return mechanical(parse_int(parts[1].substr(0, slash), "p"),
                      parse_int(parts[1].substr(slash + 1), "q"), rho);
  }
  if (head == "morphic") {
    if (parts.size() != 3 || !parts[2].starts_with("seed=") || parts[2].size() != 6) {
      throw ParseError("morphic spec must be morphic:RULES:seed=S");
    }
    Morphism mu = Morphism::parse(parts[1]);
    const auto seed = mu.alphabet_ptr()->find(parts[2].substr(5));
    if (!seed) {
      throw ParseError("seed symbol is not in the morphism's alphabet");
    }
    return morphic(std::move(mu), *seed);
  }
  if (head == "up") {
    if (parts.size() != 2) {
      throw ParseError("ultimately periodic spec must be up:U=...,V=...");
    }
    const auto fields = split(parts[1], ',');
    if (fields.size() != 2 || !fields[0].starts_with("U=") || !fields[1].starts_with("V=")) {
      throw ParseError("ultimately periodic spec must be up:U=...,V=...");
    }
    const std::string u_text = fields[0].substr(2);
    const std::string v_text = fields[1].substr(2);
    if (v_text.empty()) {
      throw ParseError("period V must be non-empty");
    }
    auto alphabet = Alphabet::infer(u_text + v_text);
    return ultimately_periodic(Word::parse(u_text, alphabet), Word::parse(v_text, alphabet));
  }
  throw ParseError("unknown word spec '" + std::string(spec) + "'");
}

Word WordStream::prefix(std::size_t n) const {
  switch (kind_) {
    case Kind::Mechanical: {
      std::vector<Symbol> out;
      out.reserve(n);
      std::int64_t prev = floor_div(rho_, q_);
      for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t cur =
            floor_div(static_cast<std::int64_t>(i + 1) * p_ + rho_, q_);
        out.push_back(static_cast<Symbol>(cur - prev));
        prev = cur;
      }
      return Word(alphabet_, std::move(out));
    }
    case Kind::Morphic: {
      std::vector<Symbol> w{seed_};
      while (w.size() < n) {
        std::vector<Symbol> next;
        next.reserve(w.size() * 2);
        for (Symbol s : w) {
          const auto img = morphism_->image(s).symbols();
          next.insert(next.end(), img.begin(), img.end());
        }
        w = std::move(next);
      }
      w.resize(n);
      return Word(alphabet_, std::move(w));
    }
    case Kind::UltimatelyPeriodic: {
      std::vector<Symbol> out;
      out.reserve(n);
      const auto u = preperiod_->symbols();
      const auto v = period_->symbols();
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(i < u.size() ? u[i] : v[(i - u.size()) % v.size()]);
      }
      return Word(alphabet_, std::move(out));
    }
  }
  throw DomainError("unreachable stream kind");
}

bool WordStream::coverage_valid(std::size_t n, std::size_t window) const {
  if (n == 0) {
    return true;
  }
  switch (kind_) {
    case Kind::Mechanical:
      // The word is periodic with period q; every factor of length n starts
      // within the first q positions.
      return window >= static_cast<std::size_t>(q_) + n - 1;
    case Kind::UltimatelyPeriodic:
      return window >= preperiod_->size() + period_->size() + n - 1;
    case Kind::Morphic: {
      // Saturation: the two largest iterates inside the window must expose
      // the same length-n factor set.
      std::size_t len_prev = 0;
      std::size_t len_cur = 1;
      while (true) {
        std::size_t next = 0;
        const Word stage = prefix(len_cur);
        for (Symbol s : stage.symbols()) {
          next += morphism_->image(s).size();
        }
        if (next > window || next <= len_cur) {
          break;
        }
        len_prev = len_cur;
        len_cur = next;
      }
      if (len_prev < n) {
        return false;
      }
      return factors(prefix(len_prev), n) == factors(prefix(len_cur), n);
    }
  }
  return false;
}

std::optional<std::size_t> WordStream::sturmian_validity_bound() const {
  if (kind_ == Kind::Mechanical) {
    return static_cast<std::size_t>(q_ - 1);
  }
  return std::nullopt;
}

std::string WordStream::spec_string() const {
  switch (kind_) {
    case Kind::Mechanical:
      return "mech:" + std::to_string(p_) + "/" + std::to_string(q_) + ":" + std::to_string(rho_);
    case Kind::Morphic:
      return "morphic:" + morphism_->str() + ":seed=" + alphabet_->name(seed_);
    case Kind::UltimatelyPeriodic:
      return "up:U=" + preperiod_->str() + ",V=" + period_->str();
  }
  return {};
}

}  // namespace kabelian
