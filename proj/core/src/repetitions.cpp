#include "kabelian/repetitions.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "kabelian/complexity.hpp"

namespace kabelian {

namespace {

std::size_t parse_size(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("expected a non-negative integer for " + std::string(what) + ", got '" +
                     std::string(text) + "'");
  }
  return value;
}

/// Least starting index of an N-power of block length l, or nullopt.
std::optional<std::size_t> scan_block_length(const Word& prefix, KOrder k, std::uint32_t N,
                                             const PositionSet& D, std::size_t l) {
  const std::size_t span = l * N;
  if (span > prefix.size()) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i + span <= prefix.size(); ++i) {
    bool in_set = true;
    for (std::uint32_t j = 0; j <= N && in_set; ++j) {
      in_set = D.contains(i + j * l);
    }
    if (!in_set) {
      continue;
    }
    const ClassSignature first = signature(prefix.subword(i, l), k);
    bool equivalent = true;
    for (std::uint32_t j = 1; j < N && equivalent; ++j) {
      equivalent = signature(prefix.subword(i + j * l, l), k) == first;
    }
    if (equivalent) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace

PositionSet PositionSet::all() { return PositionSet(); }

PositionSet PositionSet::explicit_set(std::set<std::size_t> members) {
  PositionSet d;
  d.kind_ = Kind::Explicit;
  d.members_ = std::move(members);
  return d;
}

PositionSet PositionSet::arithmetic(std::size_t start, std::size_t step) {
  if (step == 0) {
    throw DomainError("arithmetic progression step must be positive");
  }
  PositionSet d;
  d.kind_ = Kind::Arithmetic;
  d.a_ = start;
  d.b_ = step;
  return d;
}

PositionSet PositionSet::residue(std::size_t remainder, std::size_t modulus) {
  if (modulus == 0 || remainder >= modulus) {
    throw DomainError("residue class requires 0 <= remainder < modulus");
  }
  PositionSet d;
  d.kind_ = Kind::Residue;
  d.a_ = remainder;
  d.b_ = modulus;
  return d;
}

PositionSet PositionSet::parse(std::string_view spec) {
  if (spec == "all") {
    return all();
  }
  if (spec.starts_with("ap:")) {
    const auto rest = spec.substr(3);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("arithmetic position set must be ap:start,step");
    }
    return arithmetic(parse_size(rest.substr(0, comma), "start"),
                      parse_size(rest.substr(comma + 1), "step"));
  }
  if (spec.starts_with("res:")) {
    const auto rest = spec.substr(4);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("residue position set must be res:remainder,modulus");
    }
    return residue(parse_size(rest.substr(0, comma), "remainder"),
                   parse_size(rest.substr(comma + 1), "modulus"));
  }
  if (spec.starts_with("set:")) {
    std::set<std::size_t> members;
    std::string token;
    std::istringstream in{std::string(spec.substr(4))};
    while (std::getline(in, token, ',')) {
      if (!token.empty()) {
        members.insert(parse_size(token, "position"));
      }
    }
    return explicit_set(std::move(members));
  }
  throw ParseError("unknown position set spec '" + std::string(spec) + "'");
}

bool PositionSet::contains(std::size_t i) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Explicit:
      return members_.contains(i);
    case Kind::Arithmetic:
      return i >= a_ && (i - a_) % b_ == 0;
    case Kind::Residue:
      return i % b_ == a_;
  }
  return false;
}

double PositionSet::density_in(std::size_t window) const {
  if (window == 0) {
    return 0.0;
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < window; ++i) {
    hits += contains(i) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(window);
}

std::string PositionSet::str() const {
  switch (kind_) {
    case Kind::All:
      return "all";
    case Kind::Arithmetic:
      return "ap:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::Residue:
      return "res:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::Explicit: {
      std::string out = "set:";
      bool first = true;
      for (std::size_t i : members_) {
        if (!first) {
          out += ',';
        }
        out += std::to_string(i);
        first = false;
      }
      return out;
    }
  }
  return {};
}

bool is_k_power(const Word& w, std::uint32_t N, KOrder k) {
  if (N < 2) {
    throw DomainError("a power needs exponent N >= 2");
  }
  if (w.size() % N != 0) {
    throw DomainError("N must divide the word length");
  }
  const std::size_t l = w.size() / N;
  const ClassSignature first = signature(w.subword(0, l), k);
  for (std::uint32_t j = 1; j < N; ++j) {
    if (signature(w.subword(j * l, l), k) != first) {
      return false;
    }
  }
  return true;
}

std::optional<PowerWitness> find_power(const Word& prefix, KOrder k, std::uint32_t N,
                                       const PositionSet& D, std::size_t l_max, unsigned jobs) {
  if (N < 2) {
    throw DomainError("a power needs exponent N >= 2");
  }
  if (l_max * static_cast<std::size_t>(N) > prefix.size()) {
    throw DomainError("l_max * N exceeds the prefix length");
  }
  std::optional<std::size_t> best_l;
  std::optional<std::size_t> best_i;
  if (jobs <= 1) {
    for (std::size_t l = 1; l <= l_max; ++l) {
      if (auto i = scan_block_length(prefix, k, N, D, l)) {
        best_l = l;
        best_i = *i;
        break;
      }
    }
  } else {
    // Each block length is independent; the least l found wins.
    std::vector<std::optional<std::size_t>> hits(l_max + 1);
    std::atomic<std::size_t> next{1};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, l_max); ++w) {
      workers.emplace_back([&] {
        for (std::size_t l = next.fetch_add(1); l <= l_max; l = next.fetch_add(1)) {
          hits[l] = scan_block_length(prefix, k, N, D, l);
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
    for (std::size_t l = 1; l <= l_max; ++l) {
      if (hits[l]) {
        best_l = l;
        best_i = *hits[l];
        break;
      }
    }
  }
  if (!best_l) {
    return std::nullopt;
  }
  PowerWitness witness;
  witness.start = *best_i;
  witness.block_length = *best_l;
  witness.exponent = N;
  witness.k = k;
  for (std::uint32_t j = 0; j < N; ++j) {
    witness.blocks.push_back(prefix.subword(*best_i + j * *best_l, *best_l));
  }
  return witness;
}

bool validate_witness(const PowerWitness& witness, const Word& prefix, const PositionSet& D) {
  const std::size_t l = witness.block_length;
  if (l == 0 || witness.blocks.size() != witness.exponent ||
      witness.start + l * witness.exponent > prefix.size()) {
    return false;
  }
  for (std::uint32_t j = 0; j <= witness.exponent; ++j) {
    if (!D.contains(witness.start + j * l)) {
      return false;
    }
  }
  for (std::uint32_t j = 0; j < witness.exponent; ++j) {
    if (witness.blocks[j] != prefix.subword(witness.start + j * l, l)) {
      return false;
    }
  }
  for (std::uint32_t j = 1; j < witness.exponent; ++j) {
    if (!k_abelian_equivalent(witness.blocks[0], witness.blocks[j], witness.k)) {
      return false;
    }
  }
  return true;
}

namespace {

struct SpreadRecord {
  std::uint32_t spread = 0;
  std::size_t n = 0;
  std::uint64_t code = 0;
};

/// Largest per-code occurrence spread across equal-length windows, for one
/// factor length j. Returns the first attaining (n, code) in scan order.
SpreadRecord scan_factor_length(std::span<const Symbol> s, std::size_t m, std::size_t j) {
  const auto space = code_space(m, j);
  if (!space) {
    throw DomainError("factor length too large for the balance scan");
  }
  // Codes of every length-j block, by start position.
  std::vector<std::uint32_t> codes(s.size() - j + 1);
  const std::uint64_t modulus = *space / m;
  std::uint64_t code = block_code(s.subspan(0, j), m);
  codes[0] = static_cast<std::uint32_t>(code);
  for (std::size_t i = j; i < s.size(); ++i) {
    code = (code % modulus) * m + s[i];
    codes[i - j + 1] = static_cast<std::uint32_t>(code);
  }
  SpreadRecord best;
  std::vector<std::uint32_t> cur(*space), lo(*space), hi(*space);
  for (std::size_t n = j; n <= s.size(); ++n) {
    // Windows of length n contain the blocks at offsets [t, t + n - j].
    const std::size_t starts = s.size() - n + 1;
    const std::size_t blocks_per_window = n - j + 1;
    std::fill(cur.begin(), cur.end(), 0);
    for (std::size_t t = 0; t < blocks_per_window; ++t) {
      cur[codes[t]]++;
    }
    lo = cur;
    hi = cur;
    for (std::size_t t = 1; t < starts; ++t) {
      const std::uint32_t out = codes[t - 1];
      const std::uint32_t in = codes[t + blocks_per_window - 1];
      if (out != in) {
        cur[out]--;
        cur[in]++;
        lo[out] = std::min(lo[out], cur[out]);
        hi[in] = std::max(hi[in], cur[in]);
      }
    }
    for (std::uint64_t c = 0; c < *space; ++c) {
      const std::uint32_t spread = hi[c] - lo[c];
      if (spread > best.spread) {
        best = {spread, n, c};
      }
    }
  }
  return best;
}

}  // namespace

BalanceReport balance_bound(const Word& prefix, std::uint32_t k, unsigned jobs) {
  if (k == 0) {
    throw DomainError("balance_bound requires k >= 1");
  }
  BalanceReport report;
  report.k = k;
  report.window = prefix.size();
  report.max_window = Word(prefix.alphabet_ptr());
  report.min_window = Word(prefix.alphabet_ptr());
  report.factor_x = Word(prefix.alphabet_ptr());
  if (prefix.empty()) {
    return report;
  }
  const std::size_t m = prefix.alphabet().size();
  const auto s = prefix.symbols();
  const std::size_t j_max = std::min<std::size_t>(k, prefix.size());

  std::vector<SpreadRecord> records(j_max + 1);
  if (jobs <= 1 || j_max == 1) {
    for (std::size_t j = 1; j <= j_max; ++j) {
      records[j] = scan_factor_length(s, m, j);
    }
  } else {
    std::atomic<std::size_t> next{1};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, j_max); ++w) {
      workers.emplace_back([&] {
        for (std::size_t j = next.fetch_add(1); j <= j_max; j = next.fetch_add(1)) {
          records[j] = scan_factor_length(s, m, j);
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
  }
  // Smallest factor length wins ties, matching the sequential scan order.
  std::uint32_t best = 0;
  std::size_t best_j = 0, best_n = 0;
  std::uint64_t best_code = 0;
  for (std::size_t j = 1; j <= j_max; ++j) {
    if (records[j].spread > best) {
      best = records[j].spread;
      best_j = j;
      best_n = records[j].n;
      best_code = records[j].code;
    }
  }

  report.bound = best;
  if (best == 0) {
    report.max_window = prefix.prefix(std::min<std::size_t>(1, prefix.size()));
    report.min_window = report.max_window;
    report.factor_x = report.max_window;
    return report;
  }
  // Recover an attaining pair of windows for (best_j, best_n, best_code).
  {
    const std::size_t j = best_j, n = best_n;
    const auto space = *code_space(m, j);
    std::vector<std::uint32_t> codes(s.size() - j + 1);
    const std::uint64_t modulus = space / m;
    std::uint64_t code = block_code(s.subspan(0, j), m);
    codes[0] = static_cast<std::uint32_t>(code);
    for (std::size_t i = j; i < s.size(); ++i) {
      code = (code % modulus) * m + s[i];
      codes[i - j + 1] = static_cast<std::uint32_t>(code);
    }
    const std::size_t starts = s.size() - n + 1;
    const std::size_t blocks_per_window = n - j + 1;
    std::uint32_t count = 0;
    for (std::size_t t = 0; t < blocks_per_window; ++t) {
      count += codes[t] == best_code ? 1 : 0;
    }
    std::uint32_t lo_count = count, hi_count = count;
    std::size_t lo_at = 0, hi_at = 0;
    for (std::size_t t = 1; t < starts; ++t) {
      count -= codes[t - 1] == best_code ? 1 : 0;
      count += codes[t + blocks_per_window - 1] == best_code ? 1 : 0;
      if (count < lo_count) {
        lo_count = count;
        lo_at = t;
      }
      if (count > hi_count) {
        hi_count = count;
        hi_at = t;
      }
    }
    report.max_window = prefix.subword(hi_at, n);
    report.min_window = prefix.subword(lo_at, n);
    report.factor_x = Word(prefix.alphabet_ptr(), decode_block(best_code, m, j));
  }
  return report;
}

BalanceLinkReport balance_complexity_link(const Word& prefix, std::uint32_t k) {
  BalanceLinkReport report;
  const BalanceReport balance = balance_bound(prefix, k);
  report.bound = balance.bound;

  const std::size_t m = prefix.alphabet().size();
  // K = |A^{<=k}| counting the empty word.
  long double exponent = 1;
  long double mk = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    mk *= static_cast<long double>(m);
    exponent += mk;
  }
  const long double cap =
      std::pow(static_cast<long double>(balance.bound) + 1.0L, exponent);
  report.cap = cap >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())
                   ? std::numeric_limits<std::uint64_t>::max()
                   : static_cast<std::uint64_t>(cap);

  const KOrder order(k);
  for (std::size_t n = 1; n <= prefix.size(); ++n) {
    const std::size_t classes = k_complexity(prefix, order, n);
    if (static_cast<long double>(classes) > cap) {
      report.holds = false;
      report.first_violation_n = n;
      return report;
    }
  }
  return report;
}

}  // namespace kabelian
