// Brute-force reference implementations for tests. Nothing here calls the
// library's algorithms; only plain data is read from MetricAlgebra and Term.
#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "metalg/algebra.hpp"
#include "metalg/term.hpp"

namespace oracle {

using Q = boost::rational<std::int64_t>;
/// nullopt is infinity.
using D = std::optional<Q>;
using Rows = std::vector<std::vector<D>>;

inline bool le(const D& a, const D& b) { return !b || (a && *a <= *b); }
inline D add(const D& a, const D& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}
inline D maxd(const D& a, const D& b) { return le(a, b) ? b : a; }

inline D of(const metalg::ExtDistance& d) {
  if (d.is_infinite()) return std::nullopt;
  return d.value();
}

inline Rows rows_of(const metalg::MetricAlgebra& a) {
  Rows r(a.size(), std::vector<D>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = of(a.dist(i, j));
  return r;
}

inline bool is_metric(const Rows& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) return false;
    if (!d[i][i] || *d[i][i] != Q(0)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i]) return false;
      if (i != j && d[i][j] && *d[i][j] == Q(0)) return false;
      if (d[i][j] && *d[i][j] < Q(0)) return false;
      for (std::size_t k = 0; k < n; ++k) {
        if (!le(d[i][k], add(d[i][j], d[j][k]))) return false;
      }
    }
  }
  return true;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen); }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
  }
  bool coin() { return below(2) == 1; }
};

/// Shortest-path closure of random positive weights, with an occasional
/// missing edge (infinite weight).
inline Rows random_metric(Rng& rng, std::size_t n, bool allow_inf = true) {
  Rows d(n, std::vector<D>(n, Q(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      D w = Q(rng.between(1, 12), rng.between(1, 4));
      if (allow_inf && rng.below(8) == 0) w = std::nullopt;
      d[i][j] = d[j][i] = w;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const D via = add(d[i][k], d[k][j]);
        if (!le(d[i][j], via)) d[i][j] = via;
      }
  return d;
}

inline metalg::DistMatrix to_matrix(const Rows& d) {
  std::vector<std::vector<metalg::ExtDistance>> rows;
  for (const auto& r : d) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(x ? metalg::ExtDistance(*x) : metalg::ExtDistance::infinity());
  }
  return metalg::DistMatrix::from_rows(rows);
}

/// Random total tables over `sig` on n elements with a random closed metric.
inline metalg::AlgebraPtr random_algebra(Rng& rng, const metalg::Signature& sig, std::size_t n,
                                         bool allow_inf = true) {
  std::vector<metalg::OpTable> ops;
  for (const auto& s : sig.symbols()) {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < s.arity; ++k) cells *= n;
    metalg::OpTable t{s.arity, {}};
    for (std::size_t c = 0; c < cells; ++c) t.values.push_back(rng.below(n));
    ops.push_back(std::move(t));
  }
  return metalg::make_algebra(sig, metalg::index_names(n), to_matrix(random_metric(rng, n, allow_inf)),
                              std::move(ops));
}

/// Operation lookup by explicit positional arithmetic.
inline std::size_t apply(const metalg::MetricAlgebra& a, const std::string& symbol,
                         const std::vector<std::size_t>& args) {
  std::size_t s = 0;
  while (a.signature()[s].name != symbol) ++s;
  std::size_t cell = 0;
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::size_t weight = 1;
    for (std::size_t m = k + 1; m < args.size(); ++m) weight *= a.size();
    cell += args[k] * weight;
  }
  return a.table(s).values[cell];
}

inline std::size_t eval(const metalg::MetricAlgebra& a, const std::map<std::string, std::size_t>& v,
                        const metalg::Term& t) {
  if (t.is_var()) return v.at(t.name());
  std::vector<std::size_t> args;
  for (const auto& u : t.args()) args.push_back(eval(a, v, u));
  return apply(a, t.name(), args);
}

/// Every map vars -> {0..n-1}.
inline std::vector<std::map<std::string, std::size_t>> valuations(const std::set<std::string>& vars,
                                                                  std::size_t n) {
  std::vector<std::map<std::string, std::size_t>> out{{}};
  for (const auto& x : vars) {
    std::vector<std::map<std::string, std::size_t>> next;
    for (const auto& v : out) {
      for (std::size_t e = 0; e < n; ++e) {
        auto w = v;
        w[x] = e;
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline bool sat(const metalg::MetricAlgebra& a, const std::set<std::string>& vars,
                const metalg::Term& s, const metalg::Term& t, const Q& eps) {
  for (const auto& v : valuations(vars, a.size())) {
    if (!le(of(a.dist(eval(a, v, s), eval(a, v, t))), D(eps))) return false;
  }
  return true;
}

/// max over members and valuations of d(v# s, v# t).
inline D free_distance(const std::vector<metalg::AlgebraPtr>& k, const std::set<std::string>& vars,
                       const metalg::Term& s, const metalg::Term& t) {
  D best = Q(0);
  for (const auto& a : k) {
    for (const auto& v : valuations(vars, a->size())) {
      best = maxd(best, of(a->dist(eval(*a, v, s), eval(*a, v, t))));
    }
  }
  return best;
}

/// All terms up to `depth`, built by plain recursion (duplicates removed by text).
inline std::vector<metalg::Term> terms(const metalg::Signature& sig, const std::set<std::string>& vars,
                                       std::size_t depth) {
  std::vector<metalg::Term> all;
  for (const auto& x : vars) all.push_back(metalg::Term::var(x));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<metalg::Term> next = all;
    for (const auto& s : sig.symbols()) {
      std::vector<std::vector<metalg::Term>> tuples{{}};
      for (std::size_t k = 0; k < s.arity; ++k) {
        std::vector<std::vector<metalg::Term>> grown;
        for (const auto& tup : tuples)
          for (const auto& u : all) {
            auto g = tup;
            g.push_back(u);
            grown.push_back(std::move(g));
          }
        tuples = std::move(grown);
      }
      for (auto& tup : tuples) next.push_back(metalg::Term::app(s.name, std::move(tup)));
    }
    std::map<std::string, metalg::Term> unique;
    for (auto& t : next) unique.emplace(metalg::format_term(t), t);
    all.clear();
    for (auto& [text, t] : unique) all.push_back(t);
  }
  return all;
}

/// All set partitions of {0..n-1} as label vectors.
inline std::vector<std::vector<std::size_t>> partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> labels(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      labels[i] = b;
      go(i + 1, std::max(used, b + 1));
    }
  };
  go(0, 0);
  return out;
}

/// Compatibility: componentwise-related argument tuples give related results.
inline bool compatible(const metalg::MetricAlgebra& a, const std::vector<std::size_t>& label) {
  const std::size_t n = a.size();
  for (const auto& s : a.signature().symbols()) {
    std::vector<std::size_t> cells = {1};
    std::size_t total = 1;
    for (std::size_t k = 0; k < s.arity; ++k) total *= n;
    for (std::size_t x = 0; x < total; ++x) {
      for (std::size_t y = 0; y < total; ++y) {
        std::vector<std::size_t> xs(s.arity), ys(s.arity);
        std::size_t rx = x, ry = y;
        bool related = true;
        for (std::size_t k = s.arity; k-- > 0;) {
          xs[k] = rx % n, rx /= n;
          ys[k] = ry % n, ry /= n;
          related = related && label[xs[k]] == label[ys[k]];
        }
        if (related && label[apply(a, s.name, xs)] != label[apply(a, s.name, ys)]) return false;
      }
    }
  }
  return true;
}

inline bool non_expansive_ops(const metalg::MetricAlgebra& a) {
  const std::size_t n = a.size();
  for (const auto& s : a.signature().symbols()) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < s.arity; ++k) total *= n;
    for (std::size_t x = 0; x < total; ++x) {
      for (std::size_t y = 0; y < total; ++y) {
        std::vector<std::size_t> xs(s.arity), ys(s.arity);
        std::size_t rx = x, ry = y;
        D sup = Q(0);
        for (std::size_t k = s.arity; k-- > 0;) {
          xs[k] = rx % n, rx /= n;
          ys[k] = ry % n, ry /= n;
          sup = maxd(sup, of(a.dist(xs[k], ys[k])));
        }
        if (!le(of(a.dist(apply(a, s.name, xs), apply(a, s.name, ys))), sup)) return false;
      }
    }
  }
  return true;
}

}  // namespace oracle
