#include "kabelian/complexity.hpp"

#include <algorithm>
#include <set>

namespace kabelian {

namespace {

constexpr std::uint64_t kDenseClassLimit = 4096;

/// Dense sliding-window class count for finite k and n >= k: the class key of
/// a window is its (k-1)-prefix plus the dense length-k count vector.
std::size_t dense_k_classes(const Word& prefix, std::uint32_t k, std::size_t n,
                            std::uint64_t space) {
  const auto s = prefix.symbols();
  const std::size_t m = prefix.alphabet().size();
  const std::uint64_t modulus = space / m;
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> counts(space, 0);

  std::uint64_t code = block_code(s.subspan(0, k), m);
  counts[code]++;
  for (std::size_t i = k; i < n; ++i) {
    code = (code % modulus) * m + s[i];
    counts[code]++;
  }
  auto snapshot = [&](std::size_t start) {
    std::vector<std::uint32_t> key;
    key.reserve(k - 1 + counts.size());
    for (std::size_t i = 0; i + 1 < k; ++i) {
      key.push_back(s[start + i]);
    }
    key.insert(key.end(), counts.begin(), counts.end());
    classes.insert(std::move(key));
  };
  snapshot(0);
  for (std::size_t t = 1; t + n <= s.size(); ++t) {
    counts[block_code(s.subspan(t - 1, k), m)]--;
    counts[block_code(s.subspan(t + n - k, k), m)]++;
    snapshot(t);
  }
  return classes.size();
}

std::size_t dense_r_classes(const Word& prefix, std::uint32_t k, std::size_t n) {
  const auto s = prefix.symbols();
  const std::size_t m = prefix.alphabet().size();
  const std::size_t affix = k - 1;
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> parikh(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    parikh[s[i]]++;
  }
  auto snapshot = [&](std::size_t start) {
    std::vector<std::uint32_t> key;
    key.reserve(2 * affix + m);
    for (std::size_t i = 0; i < affix; ++i) {
      key.push_back(s[start + i]);
    }
    for (std::size_t i = 0; i < affix; ++i) {
      key.push_back(s[start + n - affix + i]);
    }
    key.insert(key.end(), parikh.begin(), parikh.end());
    classes.insert(std::move(key));
  };
  snapshot(0);
  for (std::size_t t = 1; t + n <= s.size(); ++t) {
    parikh[s[t - 1]]--;
    parikh[s[t + n - 1]]++;
    snapshot(t);
  }
  return classes.size();
}

ComplexityProfile build_profile(const WordStream& stream, KOrder k, std::size_t n_max,
                                std::size_t window, bool r_variant) {
  if (window == 0) {
    window = default_window(stream, n_max);
  }
  if (n_max > window) {
    throw DomainError("profile n_max exceeds the analysis window");
  }
  ComplexityProfile profile;
  profile.k = k;
  profile.n_max = n_max;
  profile.window = window;
  const Word prefix = stream.prefix(window);
  profile.values.reserve(n_max);
  profile.valid.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    profile.values.push_back(r_variant ? r_complexity(prefix, k, n) : k_complexity(prefix, k, n));
    profile.valid.push_back(stream.coverage_valid(n, window) ? 1 : 0);
  }
  return profile;
}

}  // namespace

std::size_t q_threshold(KOrder k, std::size_t n) {
  if (k.is_infinite()) {
    return n + 1;
  }
  const std::size_t plateau = 2 * static_cast<std::size_t>(k.finite());
  return n + 1 <= plateau ? n + 1 : plateau;
}

std::size_t k_complexity(const Word& prefix, KOrder k, std::size_t n) {
  if (n > prefix.size()) {
    throw DomainError("factor length exceeds the analyzed prefix");
  }
  if (n == 0) {
    return 1;
  }
  if (k.is_infinite() || n < k.finite()) {
    // Classes of short factors are singletons; k = inf is plain factor count.
    return factors(prefix, n).size();
  }
  const std::uint32_t kk = k.finite();
  const auto space = code_space(prefix.alphabet().size(), kk);
  if (space && *space <= kDenseClassLimit) {
    return dense_k_classes(prefix, kk, n, *space);
  }
  std::set<ClassSignature> classes;
  for (std::size_t i = 0; i + n <= prefix.size(); ++i) {
    classes.insert(signature(prefix.subword(i, n), k));
  }
  return classes.size();
}

std::size_t r_complexity(const Word& prefix, KOrder k, std::size_t n) {
  if (n > prefix.size()) {
    throw DomainError("factor length exceeds the analyzed prefix");
  }
  if (n == 0) {
    return 1;
  }
  if (k.is_infinite() || n + 1 <= k.finite()) {
    // R_k on words shorter than k-1 is equality; so is R_inf.
    return factors(prefix, n).size();
  }
  return dense_r_classes(prefix, k.finite(), n);
}

std::size_t default_window(const WordStream& stream, std::size_t n_max) {
  switch (stream.kind()) {
    case WordStream::Kind::Mechanical:
    case WordStream::Kind::UltimatelyPeriodic: {
      // Smallest window with exact coverage at n_max.
      std::size_t window = n_max;
      while (!stream.coverage_valid(n_max, window)) {
        ++window;
      }
      return window;
    }
    case WordStream::Kind::Morphic:
      return std::max<std::size_t>(64 * n_max, 1024);
  }
  return std::max<std::size_t>(64 * n_max, 1024);
}

ComplexityProfile k_complexity_profile(const WordStream& stream, KOrder k, std::size_t n_max,
                                       std::size_t window) {
  return build_profile(stream, k, n_max, window, false);
}

ComplexityProfile r_complexity_profile(const WordStream& stream, KOrder k, std::size_t n_max,
                                       std::size_t window) {
  return build_profile(stream, k, n_max, window, true);
}

std::optional<std::size_t> periodicity_alarm(const ComplexityProfile& profile) {
  for (std::size_t n = 1; n <= profile.n_max; ++n) {
    if (profile.is_valid(n) && profile.value(n) < q_threshold(profile.k, n)) {
      return n;
    }
  }
  return std::nullopt;
}

SturmianCheckReport sturmian_profile_check(const WordStream& stream, std::uint32_t k_max,
                                           std::size_t n_max, std::size_t window) {
  if (k_max == 0) {
    throw DomainError("k_max must be positive");
  }
  if (stream.alphabet_ptr()->size() != 2) {
    throw DomainError("sturmian_profile_check requires a binary stream");
  }
  if (window == 0) {
    window = default_window(stream, n_max);
  }
  SturmianCheckReport report;
  report.k_max = k_max;
  report.n_max = n_max;
  report.window = window;
  const std::size_t n_cap = std::min(n_max, stream.sturmian_validity_bound().value_or(n_max));
  const Word prefix = stream.prefix(window);
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    const KOrder order(k);
    for (std::size_t n = 1; n <= n_cap; ++n) {
      if (!stream.coverage_valid(n, window)) {
        continue;
      }
      const std::size_t value = k_complexity(prefix, order, n);
      const std::size_t expected = q_threshold(order, n);
      report.checked++;
      if (value != expected) {
        report.violations.push_back({k, n, value, expected});
      }
    }
  }
  return report;
}

}  // namespace kabelian
