#include "asw/moduli.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>

#include "asw/errors.hpp"

namespace asw {

namespace {

constexpr std::size_t kGraphVertexCap = 4000;

std::string join(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

bool coprime_to(int a, std::uint32_t p) { return std::gcd(a, static_cast<int>(p)) == 1; }

// Depth-first search over multisets of rows (nonincreasing index order).
void dfs_multisets(const std::vector<Row>& rows, std::size_t start, std::vector<int>& remaining,
                   std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& out) {
  if (std::all_of(remaining.begin(), remaining.end(), [](int v) { return v == 0; })) {
    out.push_back(chosen);
    return;
  }
  for (std::size_t k = start; k < rows.size(); ++k) {
    const Row& r = rows[k];
    bool fits = true;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > remaining[i]) {
        fits = false;
        break;
      }
    if (!fits) continue;
    for (std::size_t i = 0; i < r.size(); ++i) remaining[i] -= r[i];
    chosen.push_back(k);
    dfs_multisets(rows, k, remaining, chosen, out);
    chosen.pop_back();
    for (std::size_t i = 0; i < r.size(); ++i) remaining[i] += r[i];
  }
}

std::vector<BranchingDatum> partitions_from_rows(const std::vector<Row>& rows, const std::vector<int>& d,
                                                 std::uint32_t p) {
  std::vector<int> remaining = d;
  std::vector<std::size_t> chosen;
  std::vector<std::vector<std::size_t>> picks;
  dfs_multisets(rows, 0, remaining, chosen, picks);
  std::vector<BranchingDatum> out;
  out.reserve(picks.size());
  for (const auto& pick : picks) {
    std::vector<Row> m;
    for (std::size_t k : pick) m.push_back(rows[k]);
    out.emplace_back(p, std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const BranchingDatum& a, const BranchingDatum& b) {
    if (a.rows.size() != b.rows.size()) return a.rows.size() < b.rows.size();
    return a.rows > b.rows;
  });
  return out;
}

bool assign_rows(const std::vector<Row>& fine, std::size_t k, std::vector<Row>& capacity) {
  if (k == fine.size())
    return std::all_of(capacity.begin(), capacity.end(),
                       [](const Row& c) { return std::all_of(c.begin(), c.end(), [](int v) { return v == 0; }); });
  const Row& r = fine[k];
  for (std::size_t j = 0; j < capacity.size(); ++j) {
    // Identical remaining capacities are interchangeable.
    bool seen = false;
    for (std::size_t i = 0; i < j && !seen; ++i) seen = capacity[i] == capacity[j];
    if (seen) continue;
    bool fits = true;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] > capacity[j][i]) {
        fits = false;
        break;
      }
    if (!fits) continue;
    for (std::size_t i = 0; i < r.size(); ++i) capacity[j][i] -= r[i];
    const bool ok = assign_rows(fine, k + 1, capacity);
    for (std::size_t i = 0; i < r.size(); ++i) capacity[j][i] += r[i];
    if (ok) return true;
  }
  return false;
}

bool assign_values(const std::vector<int>& parts, std::size_t k, std::vector<int>& capacity) {
  if (k == parts.size()) return std::all_of(capacity.begin(), capacity.end(), [](int v) { return v == 0; });
  for (std::size_t j = 0; j < capacity.size(); ++j) {
    bool seen = false;
    for (std::size_t i = 0; i < j && !seen; ++i) seen = capacity[i] == capacity[j];
    if (seen || parts[k] > capacity[j]) continue;
    capacity[j] -= parts[k];
    const bool ok = assign_values(parts, k + 1, capacity);
    capacity[j] += parts[k];
    if (ok) return true;
  }
  return false;
}

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

}  // namespace

bool Validation::violates(int condition) const {
  const std::string tag = "condition " + std::to_string(condition) + ":";
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [&](const std::string& s) { return s.rfind(tag, 0) == 0; });
}

Validation validate_datum(const BranchingDatum& m, const std::optional<std::vector<int>>& d) {
  Validation v;
  const std::uint32_t p = m.p;
  const int ip = static_cast<int>(p);
  auto fail = [&](int condition, std::string message) {
    v.valid = false;
    if (v.first_condition == 0 || condition < v.first_condition) v.first_condition = condition;
    v.diagnostics.push_back((condition == 5 ? std::string("shape: ") : "condition " + std::to_string(condition) + ": ") +
                            message);
  };
  if (m.rows.empty() || m.n == 0) fail(5, "no rows");
  for (std::size_t j = 0; j < m.rows.size(); ++j) {
    const Row& r = m.rows[j];
    const std::string where = "row " + std::to_string(j + 1) + " " + row_string(r);
    if (std::any_of(r.begin(), r.end(), [](int e) { return e < 0; })) {
      fail(5, where + " has a negative entry");
      continue;
    }
    if (std::all_of(r.begin(), r.end(), [](int e) { return e == 0; })) fail(5, where + " is zero");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (r[i - 1] != 0 && r[i] == 0) fail(5, where + " has a zero after a nonzero entry");
    if (r[0] % ip == 1) fail(1, where + ": first entry " + std::to_string(r[0]) + " is 1 mod " + std::to_string(p));
    for (std::size_t i = 1; i < r.size(); ++i) {
      const int low = ip * r[i - 1] - ip + 1;
      if (r[i] < low) {
        fail(2, where + ": entry " + std::to_string(i + 1) + " is " + std::to_string(r[i]) + " < " + std::to_string(low));
      } else if (r[i] > low && !coprime_to(r[i] - low, p)) {
        fail(3, where + ": entry " + std::to_string(i + 1) + " exceeds " + std::to_string(low) + " by " +
                    std::to_string(r[i] - low) + ", not coprime to " + std::to_string(p));
      }
    }
  }
  if (d) {
    if (d->size() != m.n) {
      fail(4, "datum has " + std::to_string(m.n) + " columns, conductor tuple " + std::to_string(d->size()));
    } else {
      const auto sums = m.conductors();
      if (sums != *d) fail(4, "column sums " + join(sums) + " differ from " + join(*d));
    }
  }
  std::stable_sort(v.diagnostics.begin(), v.diagnostics.end(), [](const std::string& a, const std::string& b) {
    auto rank = [](const std::string& s) { return s.rfind("shape", 0) == 0 ? 5 : s[10] - '0'; };
    return rank(a) < rank(b);
  });
  return v;
}

bool valid_row(const Row& row, std::uint32_t p) { return validate_datum(BranchingDatum(p, {row})).valid; }

bool admissible(const std::vector<int>& d, std::uint32_t p) {
  if (d.empty() || d[0] < 1) return false;
  const int ip = static_cast<int>(p);
  for (std::size_t i = 1; i < d.size(); ++i)
    if (d[i] < ip * d[i - 1] - ip) return false;
  return true;
}

void require_admissible(const std::vector<int>& d, std::uint32_t p) {
  if (!admissible(d, p)) throw InadmissibleError("conductor tuple " + join(d) + " is not admissible for p = " + std::to_string(p));
}

std::vector<Row> valid_rows(const std::vector<int>& d, std::uint32_t p) {
  const int ip = static_cast<int>(p);
  const std::size_t n = d.size();
  std::vector<Row> out;
  Row row(n, 0);
  // Extend a prefix level by level; entries after a zero prefix start fresh.
  auto extend = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (row.back() != 0) out.push_back(row);
      return;
    }
    const int prev = i == 0 ? 0 : row[i - 1];
    if (prev == 0) {
      row[i] = 0;
      self(self, i + 1);
      for (int e = 2; e <= d[i]; ++e) {
        if (e % ip == 1 % ip) continue;
        row[i] = e;
        self(self, i + 1);
      }
    } else {
      const int low = ip * prev - ip + 1;
      for (int e = low; e <= d[i]; ++e) {
        if (e > low && !coprime_to(e - low, p)) continue;
        row[i] = e;
        self(self, i + 1);
      }
    }
    row[i] = 0;
  };
  if (n) extend(extend, 0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<BranchingDatum> enumerate_partitions(const std::vector<int>& d, std::uint32_t p) {
  require_admissible(d, p);
  return partitions_from_rows(valid_rows(d, p), d, p);
}

bool refines(const BranchingDatum& m, const BranchingDatum& n, RefineMode mode) {
  if (m.n != n.n || m.p != n.p || m.conductors() != n.conductors()) return false;
  if (n.rows.size() < m.rows.size()) return false;
  if (mode == RefineMode::consistent) {
    std::vector<Row> fine = n.rows;
    std::sort(fine.begin(), fine.end(), std::greater<>());
    std::vector<Row> capacity = m.rows;
    return assign_rows(fine, 0, capacity);
  }
  for (unsigned i = 0; i < m.n; ++i) {
    std::vector<int> parts, capacity;
    for (const auto& r : n.rows)
      if (r[i]) parts.push_back(r[i]);
    for (const auto& r : m.rows) capacity.push_back(r[i]);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    if (!assign_values(parts, 0, capacity)) return false;
  }
  return true;
}

int EssentialParts::total() const { return std::accumulate(q.begin(), q.end(), 0); }

EssentialParts essential_parts(const Row& row, std::uint32_t p) {
  const int ip = static_cast<int>(p);
  EssentialParts e;
  e.q.assign(row.size(), 0);
  e.eps.assign(row.size(), 0);
  int prev_jump = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0) continue;
    const int jump = row[i] - 1;
    const int diff = jump - ip * prev_jump;
    if (diff < 0) throw InvalidDatumError("row " + row_string(row) + " has decreasing normalized jumps");
    e.q[i] = diff / ip;
    e.eps[i] = diff % ip;
    prev_jump = jump;
  }
  return e;
}

bool essential_free(const BranchingDatum& m) {
  return std::all_of(m.rows.begin(), m.rows.end(), [&](const Row& r) { return essential_parts(r, m.p).total() == 0; });
}

std::vector<int> column_support(const BranchingDatum& m) {
  std::vector<int> s(m.n, 0);
  for (const auto& r : m.rows)
    for (unsigned i = 0; i < m.n; ++i) s[i] += r[i] != 0;
  return s;
}

long long dim_cov(const BranchingDatum& m) {
  long long total = static_cast<long long>(m.rows.size());
  for (const auto& r : m.rows)
    for (int e : r)
      if (e > 0) total += (e - 1) - (e - 1) / static_cast<int>(m.p);
  return total;
}

long long dim_curve(const BranchingDatum& m) { return dim_cov(m) - 3; }

std::vector<std::size_t> PartitionGraph::component_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].component) out.push_back(i);
  return out;
}

bool PartitionGraph::graph_connected() const {
  if (vertices.empty()) return true;
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(vertices.size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
  }
  return count == vertices.size();
}

bool PartitionGraph::reachable(std::size_t i, std::size_t j) const {
  std::vector<std::vector<std::size_t>> adj(vertices.size());
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  std::vector<bool> seen(vertices.size(), false);
  std::queue<std::size_t> q;
  q.push(i);
  seen[i] = true;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    if (v == j) return true;
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
  }
  return false;
}

PartitionGraph build_graph(const std::vector<int>& d, std::uint32_t p, unsigned jobs) {
  PartitionGraph g;
  g.p = p;
  g.d = d;
  const auto data = enumerate_partitions(d, p);
  if (data.size() > kGraphVertexCap)
    throw LimitError("partition graph for " + join(d) + " has " + std::to_string(data.size()) +
                     " vertices (cap " + std::to_string(kGraphVertexCap) + ")");
  for (const auto& m : data) {
    PartitionVertex v;
    v.datum = m;
    v.strata = column_support(m);
    for (const auto& r : m.rows) v.essential_total += essential_parts(r, p).total();
    v.dim_cov = dim_cov(m);
    v.dim_curve = dim_curve(m);
    v.component = v.essential_total == 0;
    g.vertices.push_back(std::move(v));
  }

  const std::size_t V = data.size();
  const std::size_t words = (V + 63) / 64;
  std::vector<Bits> below(V, Bits(words, 0));  // below[i] has bit j iff data[i] refines to data[j]
  std::vector<std::vector<std::size_t>> diverge(V);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(V)));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < V; i += workers)
      for (std::size_t j = 0; j < V; ++j) {
        if (i == j) {
          set_bit(below[i], j);
          continue;
        }
        const bool c = refines(data[i], data[j], RefineMode::consistent);
        if (c) set_bit(below[i], j);
        if (data[j].rows.size() > data[i].rows.size() && c != refines(data[i], data[j], RefineMode::per_column))
          diverge[i].push_back(j);
      }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<Bits> above(V, Bits(words, 0));
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j)
      if (test_bit(below[i], j)) set_bit(above[j], i);
  for (std::size_t i = 0; i < V; ++i) {
    for (std::size_t j = 0; j < V; ++j) {
      if (i == j || !test_bit(below[i], j)) continue;
      bool between = false;
      for (std::size_t w = 0; w < words && !between; ++w) {
        std::uint64_t mid = below[i][w] & above[j][w];
        if (w == i / 64) mid &= ~(std::uint64_t{1} << (i % 64));
        if (w == j / 64) mid &= ~(std::uint64_t{1} << (j % 64));
        between = mid != 0;
      }
      if (!between) g.edges.emplace_back(i, j);
    }
    for (std::size_t j : diverge[i]) g.refine_divergences.emplace_back(i, j);
  }
  return g;
}

std::vector<BranchingDatum> components(const std::vector<int>& d, std::uint32_t p) {
  require_admissible(d, p);
  std::vector<Row> rows;
  for (auto& r : valid_rows(d, p))
    if (essential_parts(r, p).total() == 0) rows.push_back(std::move(r));
  return partitions_from_rows(rows, d, p);
}

bool irreducible(const std::vector<int>& d, std::uint32_t p) {
  require_admissible(d, p);
  if (d[0] != 2 && d[0] != 3) return false;
  const int ip = static_cast<int>(p);
  for (std::size_t i = 1; i < d.size(); ++i) {
    const int low = ip * d[i - 1] - ip + 1;
    if (d[i] != low && d[i] != low + 1) return false;
  }
  return true;
}

std::vector<BranchingDatum> strata(const std::vector<int>& d, const std::vector<int>& s, std::uint32_t p) {
  std::vector<BranchingDatum> out;
  for (auto& m : enumerate_partitions(d, p))
    if (column_support(m) == s) out.push_back(std::move(m));
  return out;
}

bool disconnected_criterion(int d1, std::uint32_t p) {
  return p >= 5 && d1 >= 3 && d1 <= 2 * static_cast<int>(p) - 2;
}

std::string to_dot(const PartitionGraph& g) {
  std::ostringstream os;
  os << "digraph omega {\n";
  os << "  label=\"p=" << g.p << " d=" << join(g.d) << "\";\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    os << "  v" << i << " [label=\"" << v.datum.rows_string() << "\", shape=" << (v.component ? "doublecircle" : "circle")
       << ", strata=\"" << join(v.strata) << "\", dim_cov=" << v.dim_cov << ", essential=" << v.essential_total
       << "];\n";
  }
  for (const auto& [a, b] : g.edges) os << "  v" << a << " -> v" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace asw
