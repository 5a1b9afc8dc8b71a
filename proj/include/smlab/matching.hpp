#pragma once

// Direct engine: explicit n x n instances and the greedy stable matching.
// With continuous i.i.d. costs the stable matching is a.s. unique and greedy
// (repeatedly match the globally cheapest edge between unmatched endpoints)
// finds it.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "cost_sequence.hpp"
#include "distributions.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace smlab {

constexpr std::size_t kDefaultInstanceCap = 5000;

struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> c;  // row-major, c[i*n + j]

  double at(std::size_t i, std::size_t j) const { return c[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return c[i * n + j]; }
};

struct Matching {
  // partner[i] = column matched to row i
  std::vector<std::size_t> partner;
};

struct UnstablePair {
  std::size_t row = 0;
  std::size_t col = 0;
};

inline CostMatrix generate_instance(std::size_t n, const Distribution& dist, Rng& rng,
                                    std::size_t cap = kDefaultInstanceCap) {
  if (n == 0) throw InvalidParameter("generate_instance: n must be >= 1");
  if (n > cap) throw ResourceError("generate_instance: n exceeds the dense-instance cap");
  CostMatrix m;
  m.n = n;
  m.c.resize(n * n);
  for (double& v : m.c) v = dist.sample(rng);
  return m;
}

inline Matching greedy_stable_matching(const CostMatrix& cm) {
  const std::size_t n = cm.n;
  if (n == 0) throw ShapeError("greedy_stable_matching: empty instance");
  std::vector<std::uint32_t> order(n * n);
  std::iota(order.begin(), order.end(), 0u);
  // ties broken lexicographically by (row, col) == flat index
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (cm.c[a] != cm.c[b]) return cm.c[a] < cm.c[b];
    return a < b;
  });
  Matching m;
  m.partner.assign(n, n);
  std::vector<char> col_used(n, 0);
  std::size_t matched = 0;
  for (std::uint32_t e : order) {
    const std::size_t i = e / n, j = e % n;
    if (m.partner[i] == n && !col_used[j]) {
      m.partner[i] = j;
      col_used[j] = 1;
      if (++matched == n) break;
    }
  }
  return m;
}

// All pairs (i, j) with cost < both endpoints' matched costs. Empty <=> stable.
inline std::vector<UnstablePair> verify_stability(const CostMatrix& cm, const Matching& m) {
  const std::size_t n = cm.n;
  if (m.partner.size() != n) throw ShapeError("verify_stability: matching size mismatch");
  std::vector<double> row_cost(n), col_cost(n);
  std::vector<char> col_seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = m.partner[i];
    if (j >= n || col_seen[j]) throw ShapeError("verify_stability: not a permutation");
    col_seen[j] = 1;
    row_cost[i] = cm.at(i, j);
    col_cost[j] = cm.at(i, j);
  }
  std::vector<UnstablePair> bad;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m.partner[i] == j) continue;
      const double w = cm.at(i, j);
      if (w < row_cost[i] && w < col_cost[j]) bad.push_back({i, j});
    }
  return bad;
}

inline CostSequence sorted_matched_costs(const CostMatrix& cm, const Matching& m) {
  const std::size_t n = cm.n;
  if (m.partner.size() != n) throw ShapeError("sorted_matched_costs: matching size mismatch");
  CostSequence s;
  s.view = View::Observed;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(cm.at(i, m.partner[i]));
  std::sort(s.values.begin(), s.values.end());
  return s;
}

// CSV round trip: first line n, then n rows of n %.17g costs.
inline void dump_csv(const CostMatrix& cm, std::ostream& os) {
  os << cm.n << "\n";
  char buf[40];
  for (std::size_t i = 0; i < cm.n; ++i) {
    for (std::size_t j = 0; j < cm.n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", cm.at(i, j));
      os << buf << (j + 1 == cm.n ? "\n" : ",");
    }
  }
  if (!os) throw IoError("dump_csv: write failed");
}

inline CostMatrix load_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("load_csv: missing header line");
  CostMatrix m;
  try {
    m.n = std::stoul(line);
  } catch (const std::exception&) {
    throw ParseError("load_csv: bad size line: " + line);
  }
  if (m.n == 0) throw ParseError("load_csv: n must be >= 1");
  m.c.reserve(m.n * m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    if (!std::getline(is, line)) throw ParseError("load_csv: truncated matrix");
    std::size_t pos = 0, fields = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      const char* b = line.data() + pos;
      const char* e = line.data() + comma;
      double v = 0.0;
      const auto res = std::from_chars(b, e, v);
      if (res.ec != std::errc() || res.ptr != e)
        throw ParseError("load_csv: bad number in row " + std::to_string(i));
      m.c.push_back(v);
      ++fields;
      pos = comma + 1;
      if (comma == line.size()) break;
    }
    if (fields != m.n) throw ParseError("load_csv: wrong field count in row " + std::to_string(i));
  }
  return m;
}

}  // namespace smlab
