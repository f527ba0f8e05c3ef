// Acceptance suite: runs every contract criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kabelian/complexity.hpp"
#include "kabelian/equivalence.hpp"
#include "kabelian/flowgraph.hpp"
#include "kabelian/generators.hpp"
#include "kabelian/repetitions.hpp"
#include "kabelian/sturmian.hpp"
#include "kabelian/words.hpp"
#include "helpers.hpp"

using namespace kabelian;
using namespace kabelian::testutil;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      detail << "    " << message << "\n";
    }
  }
};

// --- criterion 1: paper worked examples ----------------------------------

void golden_examples(Check& c) {
  c.require(k_abelian_equivalent(bw("010110"), bw("011010"), KOrder(3)),
            "010110 and 011010 must be 3-equivalent");
  c.require(!k_abelian_equivalent(bw("010110"), bw("011010"), KOrder(4)),
            "010110 and 011010 must not be 4-equivalent");
  c.require(!k_abelian_equivalent(bw("0110"), bw("1101"), KOrder(2)),
            "0110 and 1101 must not be 2-equivalent");
  c.require(factor_counts(bw("0110"), 2) == factor_counts(bw("1101"), 2),
            "0110 and 1101 must share all length-2 counts");

  for (std::uint32_t k = 1; k <= 5; ++k) {
    const std::string zeros(k - 1, '0');
    const Word u = bw(zeros + "01" + zeros);
    const Word v = bw(zeros + "10" + zeros);
    c.require(u != v && k_abelian_equivalent(u, v, KOrder(k)),
              "tightness pair must be k-equivalent at k=" + std::to_string(k));
  }

  const Word prefix = WordStream::fibonacci().prefix(200);
  const auto chain = factor_chain(prefix, 6);
  const char* expected[] = {"001001", "001010", "010010", "010100",
                            "100100", "100101", "101001"};
  c.require(chain.factors.size() == 7, "Fibonacci must have 7 factors of length 6");
  for (std::size_t i = 0; i < chain.factors.size(); ++i) {
    c.require(chain.factors[i] == bw(expected[i]),
              "factor " + std::to_string(i + 1) + " must be " + expected[i]);
  }
  c.require(chain.sigma == std::vector<std::size_t>{5, 2, 4, 1, 6, 3},
            "swap indices must be (5,2,4,1,6,3)");

  // 2-Abelian classes among u1..u7: {u1}, {u2,u3,u4}, {u5}, {u6,u7}.
  const std::vector<std::vector<std::size_t>> expected_classes = {{0}, {1, 2, 3}, {4}, {5, 6}};
  for (const auto& group : expected_classes) {
    for (std::size_t a : group) {
      for (std::size_t b : group) {
        c.require(k_abelian_equivalent(chain.factors[a], chain.factors[b], KOrder(2)),
                  "factors inside one class must be 2-equivalent");
      }
    }
  }
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      bool same_group = false;
      for (const auto& group : expected_classes) {
        bool has_a = false, has_b = false;
        for (std::size_t i : group) {
          has_a = has_a || i == a;
          has_b = has_b || i == b;
        }
        same_group = same_group || (has_a && has_b);
      }
      c.require(k_abelian_equivalent(chain.factors[a], chain.factors[b], KOrder(2)) == same_group,
                "no 2-equivalences outside the four listed classes");
    }
  }
}

// --- criterion 2: oracle equivalence --------------------------------------

void oracle_equivalence(Check& c) {
  // Signature decision vs the definitional brute force.
  for (std::size_t m : {std::size_t{2}, std::size_t{3}}) {
    const std::size_t n_cap = m == 2 ? 8 : 6;
    std::vector<Word> words;
    for (std::size_t n = 0; n <= n_cap; ++n) {
      const auto layer = all_words(m, n);
      words.insert(words.end(), layer.begin(), layer.end());
    }
    for (std::uint32_t k = 1; k <= 4; ++k) {
      const KOrder order(k);
      // Cache signatures and count tables.
      std::vector<ClassSignature> sigs;
      sigs.reserve(words.size());
      std::vector<std::vector<std::map<std::vector<Symbol>, std::uint32_t>>> tables(words.size());
      for (std::size_t i = 0; i < words.size(); ++i) {
        sigs.push_back(signature(words[i], order));
        for (std::uint32_t j = 1; j <= k; ++j) {
          tables[i].push_back(factor_counts(words[i], j));
        }
      }
      std::size_t mismatches = 0;
      for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i; j < words.size(); ++j) {
          bool oracle = words[i].size() == words[j].size();
          for (std::uint32_t d = 0; d < k && oracle; ++d) {
            oracle = tables[i][d] == tables[j][d];
          }
          const bool decided = sigs[i] == sigs[j];
          mismatches += decided != oracle ? 1 : 0;
        }
      }
      c.require(mismatches == 0, "signature decision must match brute force (m=" +
                                     std::to_string(m) + ", k=" + std::to_string(k) + "): " +
                                     std::to_string(mismatches) + " mismatches");
    }
  }

  // Census: flow enumeration vs brute force.
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::size_t n = k - 1; n <= 12; ++n) {
      const auto flow = count_classes_flow(2, k, n);
      const auto brute = count_classes_bruteforce(2, k, n);
      c.require(flow == brute, "binary census must agree at k=" + std::to_string(k) +
                                   ", n=" + std::to_string(n) + ": " + std::to_string(flow) +
                                   " vs " + std::to_string(brute));
    }
  }
  for (std::uint32_t k = 1; k <= 2; ++k) {
    for (std::size_t n = k - 1; n <= 8; ++n) {
      const auto flow = count_classes_flow(3, k, n);
      const auto brute = count_classes_bruteforce(3, k, n);
      c.require(flow == brute, "ternary census must agree at k=" + std::to_string(k) +
                                   ", n=" + std::to_string(n));
    }
  }
  c.require(count_classes_flow(2, 2, 4) == 14, "(m=2,k=2,n=4) must count 14 classes");

  // Realizability vs exhaustive word existence, binary k=2, totals <= 6.
  std::size_t realizability_errors = 0;
  for (std::uint32_t c00 = 0; c00 <= 6; ++c00) {
    for (std::uint32_t c01 = 0; c00 + c01 <= 6; ++c01) {
      for (std::uint32_t c10 = 0; c00 + c01 + c10 <= 6; ++c10) {
        for (std::uint32_t c11 = 0; c00 + c01 + c10 + c11 <= 6; ++c11) {
          for (std::uint64_t s1 = 0; s1 < 2; ++s1) {
            for (std::uint64_t s2 = 0; s2 < 2; ++s2) {
              FlowFunction f;
              f.k = 2;
              f.alphabet = Alphabet::binary();
              f.counts = {c00, c01, c10, c11};
              f.s1 = s1;
              f.s2 = s2;
              bool exists = false;
              for (const Word& w : all_words(2, static_cast<std::size_t>(f.word_length()))) {
                const auto g = build_flow(w, 2);
                if (g.counts == f.counts && g.s1 == s1 && g.s2 == s2) {
                  exists = true;
                  break;
                }
              }
              realizability_errors += is_realizable(f) != exists ? 1 : 0;
            }
          }
        }
      }
    }
  }
  c.require(realizability_errors == 0,
            "Eulerian criterion must equal word existence on all binary k=2 flows with total <= 6");

  // realize round-trips build_flow.
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::size_t n = k - 1; n <= 8; ++n) {
      for (const Word& w : all_words(2, n)) {
        const auto f = build_flow(w, k);
        const Word again = realize(f);
        const auto g = build_flow(again, k);
        c.require(g.counts == f.counts && g.s1 == f.s1 && g.s2 == f.s2,
                  "realize must invert build_flow for " + w.str());
        c.require(k_abelian_equivalent(again, w, KOrder(k)),
                  "realize must stay in the class of " + w.str());
      }
    }
  }
}

// --- criterion 3: Sturmian characterization --------------------------------

void sturmian_characterization(Check& c) {
  const auto fib = sturmian_profile_check(WordStream::fibonacci(), 4, 40);
  c.require(fib.all_match() && fib.checked == 4 * 40,
            "Fibonacci must attain the threshold for k <= 4, n <= 40");

  const auto mech = sturmian_profile_check(WordStream::mechanical(13, 21, 0), 4, 40);
  c.require(mech.all_match(), "mechanical 13/21 must attain the threshold inside its bound");
  c.require(mech.checked == 4 * 20, "mechanical 13/21 must be checked up to its validity bound");

  const auto tm = sturmian_profile_check(WordStream::thue_morse(), 4, 40);
  c.require(!tm.all_match(), "Thue-Morse must violate the threshold somewhere");

  const auto periodic = sturmian_profile_check(WordStream::parse("up:U=,V=01"), 4, 40);
  c.require(!periodic.all_match(), "(01)^inf must violate the threshold somewhere");
}

// --- criterion 4: census growth --------------------------------------------

void census_growth(Check& c) {
  struct Target {
    std::size_t m;
    std::uint32_t k;
    double exponent;
    double tolerance;
  };
  for (const auto& target : {Target{2, 1, 1.0, 0.1}, Target{2, 2, 2.0, 0.3},
                             Target{3, 1, 2.0, 0.2}}) {
    std::vector<CensusRow> rows;
    for (std::size_t n = 10; n <= 60; ++n) {
      rows.push_back(
          {target.m, target.k, n, count_classes_flow(target.m, target.k, n), "flow-enumeration"});
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      c.require(rows[i].class_count >= rows[i - 1].class_count,
                "class counts must be monotone in n for m=" + std::to_string(target.m) +
                    ", k=" + std::to_string(target.k));
    }
    const auto fit = growth_exponent_fit(rows);
    c.require(std::abs(fit.theoretical_exponent - target.exponent) < 1e-9,
              "theoretical exponent must be m^k - m^{k-1}");
    c.require(std::abs(fit.fitted_exponent - target.exponent) <= target.tolerance,
              "fitted exponent " + std::to_string(fit.fitted_exponent) + " must be within " +
                  std::to_string(target.tolerance) + " of " + std::to_string(target.exponent) +
                  " for m=" + std::to_string(target.m) + ", k=" + std::to_string(target.k));
  }
}

// --- criterion 5: length-2k classification ---------------------------------

void length_2k_classification(Check& c) {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    std::vector<EquivalentPair2k> pairs;
    try {
      pairs = classify_length_2k_pairs(2, k);  // throws on any decomposition failure
    } catch (const Error& e) {
      c.require(false, std::string("binary classification failed: ") + e.what());
      continue;
    }
    std::set<std::pair<std::string, std::string>> reported;
    for (const auto& pair : pairs) {
      reported.insert({pair.u.str(), pair.v.str()});
      c.require(pair.u.prefix(k - 1) == pair.x, "x must be the shared prefix");
    }
    std::set<std::pair<std::string, std::string>> expected;
    const auto words = all_words(2, 2 * k);
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        if (definitional_equivalent(words[i], words[j], KOrder(k))) {
          expected.insert({words[i].str(), words[j].str()});
        }
      }
    }
    c.require(reported == expected,
              "binary k=" + std::to_string(k) + " pair list must match brute force exactly");
  }

  try {
    const auto ternary = classify_length_2k_pairs(3, 2);
    c.require(!ternary.empty(), "ternary k=2 must produce pairs");
    for (const auto& pair : ternary) {
      std::set<Symbol> support;
      for (Symbol s : pair.u.symbols()) {
        support.insert(s);
      }
      for (Symbol s : pair.v.symbols()) {
        support.insert(s);
      }
      c.require(support.size() <= 2,
                "ternary pair " + pair.u.str() + "/" + pair.v.str() + " must be binary-supported");
    }
  } catch (const Error& e) {
    c.require(false, std::string("ternary classification failed: ") + e.what());
  }
}

// --- criterion 6: repetitions ----------------------------------------------

void repetitions(Check& c) {
  const Word prefix = WordStream::fibonacci().prefix(2000);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    for (std::uint32_t N = 2; N <= 3; ++N) {
      const auto witness = find_power(prefix, KOrder(k), N, PositionSet::all(), 200);
      c.require(witness.has_value(), "Fibonacci must contain a power at k=" + std::to_string(k) +
                                         ", N=" + std::to_string(N));
      if (witness) {
        c.require(validate_witness(*witness, prefix, PositionSet::all()),
                  "witness must re-validate at k=" + std::to_string(k) +
                      ", N=" + std::to_string(N));
      }
    }
  }

  const Word short_prefix = WordStream::fibonacci().prefix(500);
  c.require(!find_power(short_prefix, KOrder::infinity(), 4, PositionSet::all(), 40).has_value(),
            "no fourth powers in the Fibonacci word");

  const Word balance_window = WordStream::fibonacci().prefix(2000);
  c.require(balance_bound(balance_window, 1).bound == 1, "Fibonacci balance at k=1 must be 1");
  for (std::uint32_t k = 1; k <= 4; ++k) {
    const auto report = balance_bound(balance_window, k);
    c.require(report.bound <= k, "Fibonacci balance at k=" + std::to_string(k) +
                                     " must stay within k (got " + std::to_string(report.bound) +
                                     ")");
  }

  for (const char* spec : {"fib", "tm", "up:U=,V=01", "up:U=000,V=1", "mech:13/21:0"}) {
    const Word window = WordStream::parse(spec).prefix(1000);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      const auto link = balance_complexity_link(window, k);
      c.require(link.holds, std::string("balance/complexity link must hold for ") + spec +
                                " at k=" + std::to_string(k));
    }
  }
}

// --- criterion 7: periodicity alarm ----------------------------------------

void periodicity(Check& c) {
  const auto alternating = k_complexity_profile(WordStream::parse("up:U=,V=01"), KOrder(2), 40);
  const auto alarm = periodicity_alarm(alternating);
  c.require(alarm.has_value() && *alarm == 2, "(01)^inf must trip the alarm at n0 = 2");

  for (std::uint32_t k = 1; k <= 4; ++k) {
    const auto fib = k_complexity_profile(WordStream::fibonacci(), KOrder(k), 40);
    c.require(!periodicity_alarm(fib).has_value(),
              "Fibonacci must stay silent for n <= 40 at k=" + std::to_string(k));
  }

  for (std::uint32_t k = 1; k <= 3; ++k) {
    const std::string zeros(2 * k - 1, '0');
    const auto stream = WordStream::parse("up:U=" + zeros + ",V=1");
    const auto profile = k_complexity_profile(stream, KOrder(k), 40);
    c.require(!periodicity_alarm(profile).has_value(),
              "0^{2k-1}1^inf must stay silent at k=" + std::to_string(k));
    for (std::size_t n = 1; n <= 40; ++n) {
      c.require(profile.value(n) == q_threshold(KOrder(k), n),
                "0^{2k-1}1^inf must sit exactly on the threshold at k=" + std::to_string(k) +
                    ", n=" + std::to_string(n));
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 paper worked examples", golden_examples},
      {"2 oracle equivalence", oracle_equivalence},
      {"3 Sturmian characterization", sturmian_characterization},
      {"4 census growth", census_growth},
      {"5 length-2k classification", length_2k_classification},
      {"6 repetitions and balance", repetitions},
      {"7 periodicity alarm", periodicity},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << "    unexpected exception: " << e.what() << "\n";
    }
    std::cout << (check.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.name << "\n";
    if (!check.ok) {
      std::cout << check.detail.str();
      ++failures;
    }
  }
  return failures;
}
