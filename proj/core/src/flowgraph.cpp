#include "kabelian/flowgraph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "kabelian/equivalence.hpp"

namespace kabelian {

namespace {

struct UnionFind {
  std::vector<std::int64_t> parent;

  explicit UnionFind(std::size_t n) : parent(n, -1) {}

  std::int64_t root(std::int64_t x) {
    return parent[static_cast<std::size_t>(x)] < 0
               ? x
               : parent[static_cast<std::size_t>(x)] = root(parent[static_cast<std::size_t>(x)]);
  }

  void merge(std::int64_t a, std::int64_t b) {
    a = root(a);
    b = root(b);
    if (a == b) {
      return;
    }
    if (parent[static_cast<std::size_t>(a)] > parent[static_cast<std::size_t>(b)]) {
      std::swap(a, b);
    }
    parent[static_cast<std::size_t>(a)] += parent[static_cast<std::size_t>(b)];
    parent[static_cast<std::size_t>(b)] = a;
  }
};

std::int64_t endpoint_correction(std::uint64_t v, std::uint64_t s1, std::uint64_t s2) {
  if (s1 == s2) {
    return 0;
  }
  if (v == s1) {
    return -1;
  }
  if (v == s2) {
    return 1;
  }
  return 0;
}

/// Degree balance, connectivity up to isolated vertices, and endpoint
/// placement for an Eulerian path from s1 to s2 using every edge.
bool eulerian_feasible(std::span<const std::uint32_t> counts, std::uint64_t s1, std::uint64_t s2,
                       std::uint64_t m, std::uint64_t vertex_count) {
  const std::uint64_t vmod = vertex_count;
  std::vector<std::int64_t> in(vertex_count, 0);
  std::vector<std::int64_t> out(vertex_count, 0);
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t < counts.size(); ++t) {
    const std::uint32_t c = counts[t];
    if (c == 0) {
      continue;
    }
    out[t / m] += c;
    in[t % vmod] += c;
    total += c;
  }
  for (std::uint64_t v = 0; v < vertex_count; ++v) {
    if (in[v] != out[v] + endpoint_correction(v, s1, s2)) {
      return false;
    }
  }
  if (total == 0) {
    return s1 == s2;
  }
  UnionFind uf(vertex_count);
  for (std::uint64_t t = 0; t < counts.size(); ++t) {
    if (counts[t] > 0) {
      uf.merge(static_cast<std::int64_t>(t / m), static_cast<std::int64_t>(t % vmod));
    }
  }
  if (in[s1] + out[s1] == 0 || in[s2] + out[s2] == 0) {
    return false;
  }
  const std::int64_t component = uf.root(static_cast<std::int64_t>(s1));
  if (uf.root(static_cast<std::int64_t>(s2)) != component) {
    return false;
  }
  for (std::uint64_t v = 0; v < vertex_count; ++v) {
    if (in[v] + out[v] > 0 && uf.root(static_cast<std::int64_t>(v)) != component) {
      return false;
    }
  }
  return true;
}

std::uint64_t vertex_space(std::size_t m, std::uint32_t k) {
  auto space = code_space(m, k - 1);
  if (!space) {
    throw DomainError("k too large for a dense flow representation");
  }
  return *space;
}

void validate_flow(const FlowFunction& f) {
  if (f.k == 0) {
    throw DomainError("flow requires k >= 1");
  }
  if (!f.alphabet) {
    throw DomainError("flow requires an alphabet");
  }
  const auto cells = code_space(f.alphabet->size(), f.k);
  if (!cells || f.counts.size() != *cells) {
    throw DomainError("flow count table size must be m^k");
  }
  const std::uint64_t vcount = vertex_space(f.alphabet->size(), f.k);
  if (f.s1 >= vcount || f.s2 >= vcount) {
    throw DomainError("flow endpoints must be codes over A^{k-1}");
  }
}

/// DFS enumeration of realizable flows for one endpoint pair. Cells are
/// assigned in lexicographic code order; the last cell absorbs the remaining
/// total. Prunes on degree-balance violations as soon as a vertex's in- or
/// out-side is complete.
class FlowEnumerator {
public:
  FlowEnumerator(std::size_t m, std::uint32_t k, std::uint64_t total, std::uint64_t s1,
                 std::uint64_t s2, std::atomic<std::uint64_t>& nodes, std::uint64_t max_nodes)
      : m_(m),
        cells_(*code_space(m, k)),
        vcount_(vertex_space(m, k)),
        total_(total),
        s1_(s1),
        s2_(s2),
        nodes_(nodes),
        max_nodes_(max_nodes),
        counts_(cells_, 0),
        in_(vcount_, 0),
        out_(vcount_, 0) {
    last_in_cell_.resize(vcount_);
    last_out_cell_.resize(vcount_);
    for (std::uint64_t v = 0; v < vcount_; ++v) {
      last_in_cell_[v] = (m_ - 1) * vcount_ + v;
      last_out_cell_[v] = v * m_ + (m_ - 1);
    }
  }

  std::uint64_t run() {
    assign(0, total_);
    return found_;
  }

private:
  bool vertex_feasible(std::uint64_t v, std::uint64_t cell, std::uint64_t remaining) const {
    const std::int64_t c = endpoint_correction(v, s1_, s2_);
    const bool in_final = last_in_cell_[v] <= cell;
    const bool out_final = last_out_cell_[v] <= cell;
    if (in_final && out_final) {
      return in_[v] == out_[v] + c;
    }
    if (out_final) {
      // in can only grow, by at most the remaining total.
      return in_[v] <= out_[v] + c &&
             out_[v] + c - in_[v] <= static_cast<std::int64_t>(remaining);
    }
    if (in_final) {
      return out_[v] <= in_[v] - c && in_[v] - c - out_[v] <= static_cast<std::int64_t>(remaining);
    }
    return true;
  }

  bool prune(std::uint64_t cell, std::uint64_t remaining) const {
    const std::uint64_t from = cell / m_;
    const std::uint64_t to = cell % vcount_;
    if (!vertex_feasible(from, cell, remaining)) {
      return true;
    }
    return from != to && !vertex_feasible(to, cell, remaining);
  }

  void leaf() {
    UnionFind uf(vcount_);
    std::uint64_t edges = 0;
    for (std::uint64_t t = 0; t < cells_; ++t) {
      if (counts_[t] > 0) {
        uf.merge(static_cast<std::int64_t>(t / m_), static_cast<std::int64_t>(t % vcount_));
        edges += counts_[t];
      }
    }
    if (edges == 0) {
      if (s1_ == s2_) {
        ++found_;
      }
      return;
    }
    if (in_[s1_] + out_[s1_] == 0 || in_[s2_] + out_[s2_] == 0) {
      return;
    }
    const std::int64_t component = uf.root(static_cast<std::int64_t>(s1_));
    if (uf.root(static_cast<std::int64_t>(s2_)) != component) {
      return;
    }
    for (std::uint64_t v = 0; v < vcount_; ++v) {
      if (in_[v] + out_[v] > 0 && uf.root(static_cast<std::int64_t>(v)) != component) {
        return;
      }
    }
    ++found_;
  }

  void charge_node() {
    if (++local_nodes_ % 1024 == 0) {
      if (nodes_.fetch_add(1024, std::memory_order_relaxed) + 1024 > max_nodes_) {
        throw BudgetExceededError("flow enumeration exceeded its node budget");
      }
    }
  }

  void assign(std::uint64_t cell, std::uint64_t remaining) {
    const std::uint64_t from = cell / m_;
    const std::uint64_t to = cell % vcount_;
    const bool last = cell + 1 == cells_;
    const std::uint64_t max_value = remaining;
    for (std::uint64_t value = last ? remaining : 0; value <= max_value; ++value) {
      charge_node();
      counts_[cell] = static_cast<std::uint32_t>(value);
      out_[from] += static_cast<std::int64_t>(value);
      in_[to] += static_cast<std::int64_t>(value);
      const std::uint64_t rest = remaining - value;
      if (!prune(cell, rest)) {
        if (last) {
          leaf();
        } else {
          assign(cell + 1, rest);
        }
      }
      out_[from] -= static_cast<std::int64_t>(value);
      in_[to] -= static_cast<std::int64_t>(value);
      counts_[cell] = 0;
    }
  }

  std::size_t m_;
  std::uint64_t cells_;
  std::uint64_t vcount_;
  std::uint64_t total_;
  std::uint64_t s1_;
  std::uint64_t s2_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t max_nodes_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::int64_t> in_;
  std::vector<std::int64_t> out_;
  std::vector<std::uint64_t> last_in_cell_;
  std::vector<std::uint64_t> last_out_cell_;
  std::uint64_t found_ = 0;
  std::uint64_t local_nodes_ = 0;
};

}  // namespace

std::uint64_t FlowFunction::total() const {
  std::uint64_t sum = 0;
  for (std::uint32_t c : counts) {
    sum += c;
  }
  return sum;
}

DeBruijnGraph graph_of(const FlowFunction& f) {
  validate_flow(f);
  const std::size_t m = f.alphabet->size();
  DeBruijnGraph g;
  g.k = f.k;
  g.vertex_count = vertex_space(m, f.k);
  g.in_degree.assign(g.vertex_count, 0);
  g.out_degree.assign(g.vertex_count, 0);
  for (std::uint64_t t = 0; t < f.counts.size(); ++t) {
    g.out_degree[t / m] += f.counts[t];
    g.in_degree[t % g.vertex_count] += f.counts[t];
  }
  return g;
}

FlowFunction build_flow(const Word& w, std::uint32_t k) {
  if (k == 0) {
    throw DomainError("build_flow requires k >= 1");
  }
  if (w.size() + 1 < k) {
    throw DomainError("build_flow requires |w| >= k - 1");
  }
  const std::size_t m = w.alphabet().size();
  FlowFunction f;
  f.k = k;
  f.alphabet = w.alphabet_ptr();
  f.counts = factor_count_table(w, k);
  const std::size_t affix = k - 1;
  f.s1 = block_code(w.symbols().subspan(0, affix), m);
  f.s2 = block_code(w.symbols().subspan(w.size() - affix, affix), m);
  return f;
}

bool is_realizable(const FlowFunction& f) {
  validate_flow(f);
  return eulerian_feasible(f.counts, f.s1, f.s2, f.alphabet->size(),
                           vertex_space(f.alphabet->size(), f.k));
}

Word realize(const FlowFunction& f) {
  validate_flow(f);
  const std::size_t m = f.alphabet->size();
  const std::uint64_t vcount = vertex_space(m, f.k);
  if (!eulerian_feasible(f.counts, f.s1, f.s2, m, vcount)) {
    throw DomainError("flow is not realizable by any word");
  }
  std::vector<Symbol> word = decode_block(f.s1, m, f.k - 1);
  std::vector<std::uint32_t> remaining = f.counts;
  std::uint64_t current = f.s1;
  std::uint64_t left = f.total();
  while (left > 0) {
    bool advanced = false;
    for (std::size_t a = 0; a < m && !advanced; ++a) {
      const std::uint64_t t = current * m + a;
      if (remaining[t] == 0) {
        continue;
      }
      const std::uint64_t next = t % vcount;
      remaining[t]--;
      if (eulerian_feasible(remaining, next, f.s2, m, vcount)) {
        word.push_back(static_cast<Symbol>(a));
        current = next;
        --left;
        advanced = true;
      } else {
        remaining[t]++;
      }
    }
    if (!advanced) {
      throw DomainError("flow realization failed despite a feasible start");
    }
  }
  return Word(f.alphabet, std::move(word));
}

std::uint64_t count_classes_flow(std::size_t m, std::uint32_t k, std::size_t n,
                                 const CensusOptions& options) {
  if (m < 1 || k == 0) {
    throw DomainError("count_classes_flow requires m >= 1 and k >= 1");
  }
  if (n + 1 < k) {
    throw DomainError("count_classes_flow requires n >= k - 1");
  }
  const std::uint64_t vcount = vertex_space(m, k);
  if (!code_space(m, k)) {
    throw DomainError("k too large for a dense flow representation");
  }
  const std::uint64_t total = n - k + 1;
  const std::uint64_t pairs = vcount * vcount;

  std::atomic<std::uint64_t> nodes{0};
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || pairs == 1) {
    std::uint64_t count = 0;
    for (std::uint64_t pair = 0; pair < pairs; ++pair) {
      FlowEnumerator e(m, k, total, pair / vcount, pair % vcount, nodes, options.max_nodes);
      count += e.run();
    }
    return count;
  }

  std::atomic<std::uint64_t> next_pair{0};
  std::atomic<std::uint64_t> count{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  const unsigned worker_count = static_cast<unsigned>(std::min<std::uint64_t>(jobs, pairs));
  for (unsigned w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      try {
        std::uint64_t local = 0;
        for (std::uint64_t pair = next_pair.fetch_add(1); pair < pairs;
             pair = next_pair.fetch_add(1)) {
          FlowEnumerator e(m, k, total, pair / vcount, pair % vcount, nodes, options.max_nodes);
          local += e.run();
        }
        count.fetch_add(local);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next_pair.store(pairs);  // drain remaining work
      }
    });
  }
  for (auto& worker : workers) {
    worker.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return count.load();
}

std::uint64_t count_classes_bruteforce(std::size_t m, std::uint32_t k, std::size_t n,
                                       const CensusOptions& options) {
  if (m < 1 || k == 0) {
    throw DomainError("count_classes_bruteforce requires m >= 1 and k >= 1");
  }
  double words = 1;
  for (std::size_t i = 0; i < n; ++i) {
    words *= static_cast<double>(m);
    if (words > static_cast<double>(options.max_words)) {
      throw BudgetExceededError("brute-force census would enumerate more than max_words words");
    }
  }
  const auto alphabet = Alphabet::indexed(m);
  const KOrder order(k);
  std::set<ClassSignature> classes;
  std::vector<Symbol> symbols(n, 0);
  while (true) {
    classes.insert(signature(Word(alphabet, symbols), order));
    std::size_t i = n;
    while (i > 0 && symbols[i - 1] == m - 1) {
      symbols[--i] = 0;
    }
    if (i == 0) {
      break;
    }
    symbols[i - 1]++;
  }
  return classes.size();
}

GrowthFit growth_exponent_fit(const std::vector<CensusRow>& rows) {
  if (rows.size() < 4) {
    throw DomainError("growth fit requires at least four census rows");
  }
  const std::size_t m = rows.front().m;
  const std::uint32_t k = rows.front().k;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].m != m || rows[i].k != k) {
      throw DomainError("growth fit requires rows with a common (m, k)");
    }
    if (i > 0 && rows[i].n <= rows[i - 1].n) {
      throw DomainError("growth fit requires strictly increasing n");
    }
    if (rows[i].class_count == 0 || rows[i].n == 0) {
      throw DomainError("growth fit requires positive n and class counts");
    }
  }
  double sx = 0, sy = 0;
  for (const auto& row : rows) {
    sx += std::log(static_cast<double>(row.n));
    sy += std::log(static_cast<double>(row.class_count));
  }
  const double mx = sx / static_cast<double>(rows.size());
  const double my = sy / static_cast<double>(rows.size());
  double sxx = 0, sxy = 0;
  for (const auto& row : rows) {
    const double dx = std::log(static_cast<double>(row.n)) - mx;
    const double dy = std::log(static_cast<double>(row.class_count)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  GrowthFit fit;
  fit.points = rows.size();
  fit.fitted_exponent = sxy / sxx;
  fit.theoretical_exponent =
      std::pow(static_cast<double>(m), k) - std::pow(static_cast<double>(m), k - 1);
  return fit;
}

}  // namespace kabelian
