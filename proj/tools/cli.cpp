#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kabelian/complexity.hpp"
#include "kabelian/equivalence.hpp"
#include "kabelian/flowgraph.hpp"
#include "kabelian/generators.hpp"
#include "kabelian/repetitions.hpp"
#include "kabelian/sturmian.hpp"
#include "kabelian/words.hpp"

namespace kabelian::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("KABELIAN_BUDGET")) {
    std::uint64_t value = 0;
    const std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) {
      return value;
    }
    throw ParseError("KABELIAN_BUDGET must be a positive integer");
  }
  return CensusOptions{}.max_nodes;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw DomainError("cannot open output file '" + out_path + "'");
  }
  file << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// RFC-style CSV quoting: quote when the field contains a comma, quote or
/// newline; double embedded quotes.
std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

struct WordInput {
  std::string alphabet;  // declared symbols, in order; empty = infer
  char delimiter = 0;    // 0 = single-character symbols
};

Word parse_word(const std::string& text, const WordInput& input, const AlphabetPtr& shared) {
  AlphabetPtr alphabet = shared;
  if (!alphabet) {
    if (!input.alphabet.empty()) {
      std::vector<std::string> symbols;
      for (char c : input.alphabet) {
        symbols.emplace_back(1, c);
      }
      alphabet = Alphabet::make(std::move(symbols));
    } else if (input.delimiter != 0) {
      alphabet = Alphabet::infer_delimited(text, input.delimiter);
    } else {
      alphabet = Alphabet::infer(text);
    }
  }
  return input.delimiter != 0 ? Word::parse(text, alphabet, input.delimiter)
                              : Word::parse(text, alphabet);
}

/// One alphabet for several word literals (the inferred case pools their
/// symbols so the words stay comparable).
AlphabetPtr shared_alphabet(const std::vector<std::string>& texts, const WordInput& input) {
  if (!input.alphabet.empty()) {
    std::vector<std::string> symbols;
    for (char c : input.alphabet) {
      symbols.emplace_back(1, c);
    }
    return Alphabet::make(std::move(symbols));
  }
  std::string pooled;
  for (const auto& text : texts) {
    pooled += text;
    if (input.delimiter != 0) {
      pooled += input.delimiter;
    }
  }
  return input.delimiter != 0 ? Alphabet::infer_delimited(pooled, input.delimiter)
                              : Alphabet::infer(pooled);
}

PositionSet parse_position_spec(const std::string& spec) {
  if (spec.starts_with("set:")) {
    const std::string path = spec.substr(4);
    std::ifstream file(path);
    if (file) {
      std::set<std::size_t> members;
      std::size_t value = 0;
      while (file >> value) {
        members.insert(value);
      }
      return PositionSet::explicit_set(std::move(members));
    }
  }
  return PositionSet::parse(spec);
}

json word_list(const std::vector<Word>& words) {
  json list = json::array();
  for (const Word& w : words) {
    list.push_back(w.str());
  }
  return list;
}

json word_list(const std::set<Word>& words) {
  return word_list(std::vector<Word>(words.begin(), words.end()));
}

// --- subcommand handlers -------------------------------------------------

int run_eq(const std::string& u_text, const std::string& v_text, const std::string& k_text,
           const WordInput& input, const std::string& out_path, std::ostream& out) {
  const KOrder k = KOrder::parse(k_text);
  const auto alphabet = shared_alphabet({u_text, v_text}, input);
  const Word u = parse_word(u_text, input, alphabet);
  const Word v = parse_word(v_text, input, alphabet);
  const bool equivalent = k_abelian_equivalent(u, v, k);
  json j{{"k", k.str()}, {"u", u.str()}, {"v", v.str()}, {"equivalent", equivalent}};
  if (!equivalent) {
    const auto witness = shortest_distinguishing_factor(u, v, k);
    j["witness_x"] = witness ? witness->str() : "";
  }
  emit(dump(j), out_path, out);
  return equivalent ? kOk : kNegative;
}

json signature_json(const Word& w, KOrder k) {
  const auto sig = signature(w, k);
  json counts = json::object();
  for (const auto& [factor, count] : sig.counts()) {
    counts[Word(w.alphabet_ptr(), factor).str()] = count;
  }
  return json{{"word", w.str()},
              {"length", sig.word_length()},
              {"prefix", Word(w.alphabet_ptr(), sig.prefix()).str()},
              {"counts", counts}};
}

int run_sig(const std::string& w_text, const std::string& file, const std::string& k_text,
            const WordInput& input, const std::string& out_path, std::ostream& out) {
  const KOrder k = KOrder::parse(k_text);
  if (!file.empty()) {
    // Plain-text word list: one word per line.
    std::ifstream in(file);
    if (!in) {
      throw DomainError("cannot open word file '" + file + "'");
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) {
        lines.push_back(line);
      }
    }
    if (lines.empty()) {
      throw ParseError("word file '" + file + "' contains no words");
    }
    const auto alphabet = shared_alphabet(lines, input);
    json list = json::array();
    for (const auto& text : lines) {
      list.push_back(signature_json(parse_word(text, input, alphabet), k));
    }
    json j{{"k", k.str()}, {"signatures", list}};
    emit(dump(j), out_path, out);
    return kOk;
  }
  const Word w = parse_word(w_text, input, nullptr);
  json j = signature_json(w, k);
  j["k"] = k.str();
  emit(dump(j), out_path, out);
  return kOk;
}

int run_census(std::size_t m, std::uint32_t k, const std::string& range,
               const std::string& method, bool fit, const std::string& format,
               const CensusOptions& options, const std::string& out_path, std::ostream& out) {
  const auto dots = range.find("..");
  if (dots == std::string::npos) {
    throw ParseError("--n-range must look like 4..40");
  }
  std::size_t n_lo = 0, n_hi = 0;
  {
    const std::string lo = range.substr(0, dots);
    const std::string hi = range.substr(dots + 2);
    auto r1 = std::from_chars(lo.data(), lo.data() + lo.size(), n_lo);
    auto r2 = std::from_chars(hi.data(), hi.data() + hi.size(), n_hi);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || n_lo > n_hi) {
      throw ParseError("--n-range must look like 4..40");
    }
  }
  std::vector<CensusRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    if (method == "flow" || method == "both") {
      rows.push_back({m, k, n, count_classes_flow(m, k, n, options), "flow-enumeration"});
    }
    if (method == "bruteforce" || method == "both") {
      rows.push_back({m, k, n, count_classes_bruteforce(m, k, n, options), "bruteforce"});
    }
  }
  if (format == "csv") {
    std::ostringstream csv;
    csv << "m,k,n,count,method\n";
    for (const auto& row : rows) {
      csv << row.m << ',' << row.k << ',' << row.n << ',' << row.class_count << ','
          << csv_field(row.method) << '\n';
    }
    emit(csv.str(), out_path, out);
    return kOk;
  }
  if (format == "table") {
    std::ostringstream table;
    table << "m  k  n      count  method\n";
    for (const auto& row : rows) {
      table << row.m << "  " << row.k << "  " << row.n << "  " << row.class_count << "  "
            << row.method << '\n';
    }
    emit(table.str(), out_path, out);
    return kOk;
  }
  json j;
  j["rows"] = json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"m", row.m},
                         {"k", row.k},
                         {"n", row.n},
                         {"count", row.class_count},
                         {"method", row.method}});
  }
  if (fit) {
    std::vector<CensusRow> flow_rows;
    for (const auto& row : rows) {
      if (row.method == "flow-enumeration") {
        flow_rows.push_back(row);
      }
    }
    const auto result = growth_exponent_fit(flow_rows.size() >= 4 ? flow_rows : rows);
    j["fit"] = {{"fitted_exponent", result.fitted_exponent},
                {"theoretical_exponent", result.theoretical_exponent},
                {"points", result.points}};
  }
  emit(dump(j), out_path, out);
  return kOk;
}

int run_complexity(const std::string& word_spec, const std::string& k_text, std::size_t n_max,
                   std::size_t window, bool plot_data, const std::string& format,
                   const std::string& out_path, std::ostream& out) {
  const KOrder k = KOrder::parse(k_text);
  const auto stream = WordStream::parse(word_spec);
  const auto profile = k_complexity_profile(stream, k, n_max, window);
  const auto alarm = periodicity_alarm(profile);
  if (plot_data) {
    std::ostringstream series;
    for (std::size_t n = 1; n <= n_max; ++n) {
      series << n << ' ' << profile.value(n) << '\n';
    }
    emit(series.str(), out_path, out);
    return kOk;
  }
  if (format == "csv" || format == "table") {
    const char* sep = format == "csv" ? "," : "  ";
    std::ostringstream text;
    text << "n" << sep << "value" << sep << "q" << sep << "valid" << '\n';
    for (std::size_t n = 1; n <= n_max; ++n) {
      text << n << sep << profile.value(n) << sep << q_threshold(k, n) << sep
           << (profile.is_valid(n) ? 1 : 0) << '\n';
    }
    emit(text.str(), out_path, out);
    return kOk;
  }
  json rows = json::array();
  for (std::size_t n = 1; n <= n_max; ++n) {
    rows.push_back({{"n", n},
                    {"value", profile.value(n)},
                    {"q", q_threshold(k, n)},
                    {"valid", profile.is_valid(n)}});
  }
  json j{{"word", stream.spec_string()},
         {"k", k.str()},
         {"n_max", n_max},
         {"window", profile.window},
         {"rows", rows}};
  if (alarm) {
    j["alarm_n0"] = *alarm;
  }
  emit(dump(j), out_path, out);
  return kOk;
}

int run_sturmian_chain(const std::string& word_spec, std::size_t n, std::size_t window,
                       const std::string& out_path, std::ostream& out) {
  const auto stream = WordStream::parse(word_spec);
  if (window == 0) {
    window = default_window(stream, n + 1);
  }
  const auto chain = factor_chain(stream.prefix(window), n);
  json j{{"word", stream.spec_string()},
         {"n", chain.n},
         {"factors", word_list(chain.factors)},
         {"sigma", chain.sigma}};
  emit(dump(j), out_path, out);
  return kOk;
}

int run_sturmian_special(const std::string& word_spec, std::size_t n, std::size_t window,
                         const std::string& out_path, std::ostream& out) {
  const auto stream = WordStream::parse(word_spec);
  if (window == 0) {
    window = default_window(stream, n + 1);
  }
  const auto report = special_factors(stream.prefix(window), n);
  json j{{"word", stream.spec_string()},
         {"n", report.n},
         {"right_special", word_list(report.right_special)},
         {"left_special", word_list(report.left_special)},
         {"bispecial", word_list(report.bispecial)}};
  emit(dump(j), out_path, out);
  return kOk;
}

int run_sturmian_check(const std::string& word_spec, std::uint32_t k_max, std::size_t n_max,
                       std::size_t window, const std::string& out_path, std::ostream& out) {
  const auto stream = WordStream::parse(word_spec);
  const auto report = sturmian_profile_check(stream, k_max, n_max, window);
  json violations = json::array();
  for (const auto& violation : report.violations) {
    violations.push_back({{"k", violation.k},
                          {"n", violation.n},
                          {"value", violation.value},
                          {"expected", violation.expected}});
  }
  json j{{"word", stream.spec_string()},
         {"k_max", report.k_max},
         {"n_max", report.n_max},
         {"window", report.window},
         {"checked", report.checked},
         {"all_match", report.all_match()},
         {"violations", violations}};
  emit(dump(j), out_path, out);
  return report.all_match() ? kOk : kNegative;
}

int run_pairs2k(std::size_t m, std::uint32_t k, std::uint64_t max_words,
                const std::string& out_path, std::ostream& out) {
  const auto pairs = classify_length_2k_pairs(m, k, max_words);
  json list = json::array();
  for (const auto& pair : pairs) {
    list.push_back({{"u", pair.u.str()}, {"v", pair.v.str()}, {"x", pair.x.str()}});
  }
  json j{{"m", m}, {"k", k}, {"pairs", list}};
  emit(dump(j), out_path, out);
  return kOk;
}

int run_power(const std::string& word_spec, const std::string& k_text, std::uint32_t N,
              std::size_t l_max, const std::string& d_spec, std::size_t window, unsigned jobs,
              const std::string& out_path, std::ostream& out) {
  const KOrder k = KOrder::parse(k_text);
  const auto stream = WordStream::parse(word_spec);
  const auto positions = parse_position_spec(d_spec);
  if (window == 0) {
    window = std::max<std::size_t>(l_max * N, 1000);
  }
  const Word prefix = stream.prefix(window);
  const auto witness = find_power(prefix, k, N, positions, l_max, jobs);
  json j{{"word", stream.spec_string()}, {"k", k.str()},      {"N", N},
         {"lmax", l_max},                {"D", positions.str()}, {"window", window},
         {"found", witness.has_value()}};
  if (witness) {
    j["start"] = witness->start;
    j["block_length"] = witness->block_length;
    j["blocks"] = word_list(witness->blocks);
  }
  emit(dump(j), out_path, out);
  return witness ? kOk : kNegative;
}

int run_balance(const std::string& word_spec, std::uint32_t k, std::size_t window, bool check_link,
                unsigned jobs, const std::string& out_path, std::ostream& out) {
  const auto stream = WordStream::parse(word_spec);
  const Word prefix = stream.prefix(window);
  const auto report = balance_bound(prefix, k, jobs);
  json j{{"word", stream.spec_string()},
         {"k", report.k},
         {"window", report.window},
         {"bound", report.bound},
         {"witness",
          {{"u", report.max_window.str()},
           {"v", report.min_window.str()},
           {"x", report.factor_x.str()}}}};
  if (check_link) {
    const auto link = balance_complexity_link(prefix, k);
    j["link"] = {{"holds", link.holds}, {"cap", link.cap}, {"bound", link.bound}};
    if (!link.holds) {
      j["link"]["first_violation_n"] = link.first_violation_n;
    }
  }
  emit(dump(j), out_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-Abelian equivalence workbench"};
  app.require_subcommand(1);

  WordInput input;
  std::string out_path;
  std::string k_text = "1";
  std::string word_spec;
  std::size_t window = 0;
  unsigned jobs = 1;

  // eq
  auto* eq = app.add_subcommand("eq", "Decide k-Abelian equivalence of two words");
  std::string eq_u, eq_v;
  eq->add_option("--k", k_text, "k (positive integer or 'inf')")->required();
  eq->add_option("u", eq_u, "first word")->required();
  eq->add_option("v", eq_v, "second word")->required();
  eq->add_option("--alphabet", input.alphabet, "declared alphabet symbols, in order");
  eq->add_option("--delimiter", input.delimiter, "symbol delimiter for multi-character symbols");
  eq->add_option("--out", out_path, "output file (default stdout)");

  // sig
  auto* sig = app.add_subcommand("sig", "Print the canonical class signature of words");
  std::string sig_w, sig_file;
  sig->add_option("--k", k_text, "k (positive integer or 'inf')")->required();
  sig->add_option("w", sig_w, "word");
  sig->add_option("--file", sig_file, "read words from a file, one per line");
  sig->add_option("--alphabet", input.alphabet, "declared alphabet symbols, in order");
  sig->add_option("--delimiter", input.delimiter, "symbol delimiter for multi-character symbols");
  sig->add_option("--out", out_path, "output file (default stdout)");

  // census
  auto* census = app.add_subcommand("census", "Count k-Abelian classes of A^n over a range of n");
  std::size_t census_m = 2;
  std::uint32_t census_k = 1;
  std::string census_range, census_method = "both", census_format = "csv";
  std::uint64_t budget = 0;
  bool census_fit = false;
  census->add_option("--m", census_m, "alphabet size")->required();
  census->add_option("--k", census_k, "k (positive integer)")->required();
  census->add_option("--n-range", census_range, "inclusive range, e.g. 4..40")->required();
  census->add_option("--method", census_method, "flow|bruteforce|both")
      ->check(CLI::IsMember({"flow", "bruteforce", "both"}));
  census->add_option("--format", census_format, "csv|json|table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  census->add_flag("--fit", census_fit, "append a growth exponent fit (json format)");
  census->add_option("--budget", budget, "node budget for the flow enumeration");
  census->add_option("--jobs", jobs, "worker threads across endpoint pairs");
  census->add_option("--out", out_path, "output file (default stdout)");

  // complexity
  auto* complexity = app.add_subcommand("complexity", "Complexity profile of a stream prefix");
  std::size_t n_max = 0;
  bool plot_data = false;
  std::string complexity_format = "csv";
  complexity->add_option("--word", word_spec, "stream spec (fib, tm, mech:.., morphic:.., up:..)")
      ->required();
  complexity->add_option("--k", k_text, "k (positive integer or 'inf')")->required();
  complexity->add_option("--n-max", n_max, "largest factor length")->required();
  complexity->add_option("--window", window, "prefix length (0 = auto)");
  complexity->add_option("--format", complexity_format, "csv|json|table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  complexity->add_flag("--plot-data", plot_data, "emit a bare two-column n/value series");
  complexity->add_option("--out", out_path, "output file (default stdout)");

  // sturmian
  auto* sturmian = app.add_subcommand("sturmian", "Sturmian structure tools");
  sturmian->require_subcommand(1);
  auto* chain = sturmian->add_subcommand("chain", "Lexicographic factor chain with swap indices");
  std::size_t chain_n = 1;
  chain->add_option("--word", word_spec, "stream spec")->required();
  chain->add_option("--n", chain_n, "factor length")->required();
  chain->add_option("--window", window, "prefix length (0 = auto)");
  chain->add_option("--out", out_path, "output file (default stdout)");
  auto* special = sturmian->add_subcommand("special", "Left/right special factors of a window");
  special->add_option("--word", word_spec, "stream spec")->required();
  special->add_option("--n", chain_n, "factor length")->required();
  special->add_option("--window", window, "prefix length (0 = auto)");
  special->add_option("--out", out_path, "output file (default stdout)");
  auto* check = sturmian->add_subcommand("check", "Verify the complexity threshold profile");
  std::uint32_t k_max = 4;
  check->add_option("--word", word_spec, "stream spec")->required();
  check->add_option("--k-max", k_max, "largest k to verify");
  check->add_option("--n-max", n_max, "largest factor length")->required();
  check->add_option("--window", window, "prefix length (0 = auto)");
  check->add_option("--out", out_path, "output file (default stdout)");

  // pairs2k
  auto* pairs = app.add_subcommand("pairs2k", "Classify equivalent pairs of length 2k");
  std::size_t pairs_m = 2;
  std::uint32_t pairs_k = 1;
  pairs->add_option("--m", pairs_m, "alphabet size")->required();
  pairs->add_option("--k", pairs_k, "k (positive integer)")->required();
  pairs->add_option("--budget", budget, "word enumeration budget");
  pairs->add_option("--out", out_path, "output file (default stdout)");

  // power
  auto* power = app.add_subcommand("power", "Search for a k-Abelian N-power");
  std::uint32_t power_n = 2;
  std::size_t l_max = 100;
  std::string d_spec = "all";
  power->add_option("--word", word_spec, "stream spec")->required();
  power->add_option("--k", k_text, "k (positive integer or 'inf')")->required();
  power->add_option("--N", power_n, "exponent")->required();
  power->add_option("--lmax", l_max, "largest block length tried");
  power->add_option("--D", d_spec, "position set: all | ap:a,d | res:r,q | set:file-or-list");
  power->add_option("--window", window, "prefix length (0 = auto)");
  power->add_option("--jobs", jobs, "worker threads across block lengths");
  power->add_option("--out", out_path, "output file (default stdout)");

  // balance
  auto* balance = app.add_subcommand("balance", "Measure the (k,B)-balance of a stream prefix");
  std::uint32_t balance_k = 1;
  bool check_link = false;
  balance->add_option("--word", word_spec, "stream spec")->required();
  balance->add_option("--k", balance_k, "k (positive integer)")->required();
  std::size_t balance_window = 2000;
  balance->add_option("--window", balance_window, "prefix length (default 2000)");
  balance->add_flag("--check-link", check_link, "also verify the complexity cap (B+1)^K");
  balance->add_option("--jobs", jobs, "worker threads across factor lengths");
  balance->add_option("--out", out_path, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    CensusOptions options;
    options.max_nodes = budget > 0 ? budget : default_budget();
    options.max_words = options.max_nodes;
    options.jobs = jobs;
    if (eq->parsed()) {
      return run_eq(eq_u, eq_v, k_text, input, out_path, out);
    }
    if (sig->parsed()) {
      if (sig_w.empty() && sig_file.empty()) {
        err << "error: sig needs a word or --file\n";
        return kError;
      }
      return run_sig(sig_w, sig_file, k_text, input, out_path, out);
    }
    if (census->parsed()) {
      return run_census(census_m, census_k, census_range, census_method, census_fit,
                        census_format, options, out_path, out);
    }
    if (complexity->parsed()) {
      return run_complexity(word_spec, k_text, n_max, window, plot_data, complexity_format,
                            out_path, out);
    }
    if (sturmian->parsed()) {
      if (chain->parsed()) {
        return run_sturmian_chain(word_spec, chain_n, window, out_path, out);
      }
      if (special->parsed()) {
        return run_sturmian_special(word_spec, chain_n, window, out_path, out);
      }
      return run_sturmian_check(word_spec, k_max, n_max, window, out_path, out);
    }
    if (pairs->parsed()) {
      return run_pairs2k(pairs_m, pairs_k, budget > 0 ? budget : CensusOptions{}.max_words,
                         out_path, out);
    }
    if (power->parsed()) {
      return run_power(word_spec, k_text, power_n, l_max, d_spec, window, jobs, out_path, out);
    }
    if (balance->parsed()) {
      return run_balance(word_spec, balance_k, balance_window, check_link, jobs, out_path, out);
    }
    err << "error: no subcommand selected\n";
    return kError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace kabelian::cli
