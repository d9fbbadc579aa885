#pragma once

// Brute-force reference computations used only by the test suites. They share
// no code with the library's fast paths.

#include "filtmult/monomial_ideal.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using filtmult::Exponent;
using filtmult::MonomialIdeal;

inline bool divides(const Exponent& g, const Exponent& a) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > a[i]) return false;
  }
  return true;
}

/// Pairwise-domination scan.
inline std::set<Exponent> minimal_set(const std::vector<Exponent>& raw) {
  std::set<Exponent> unique(raw.begin(), raw.end());
  std::set<Exponent> out;
  for (const auto& a : unique) {
    bool dominated = false;
    for (const auto& b : unique) {
      if (b != a && divides(b, a)) dominated = true;
    }
    if (!dominated) out.insert(a);
  }
  return out;
}

inline std::set<Exponent> gens(const MonomialIdeal& I) {
  auto g = I.generators();
  return {g.begin(), g.end()};
}

inline bool member(const std::vector<Exponent>& gens, const Exponent& a) {
  return std::any_of(gens.begin(), gens.end(), [&](const Exponent& g) { return divides(g, a); });
}

/// Counts monomials outside the ideal by scanning the box ∏[0, c_i).
inline std::int64_t box_colength(const MonomialIdeal& I) {
  const int d = I.dim();
  const auto g = I.generators();
  std::vector<int> cap(static_cast<std::size_t>(d), 0);
  for (const auto& e : g) {
    int support = -1, count = 0;
    for (int i = 0; i < d; ++i) {
      if (e[static_cast<std::size_t>(i)] != 0) {
        support = i;
        ++count;
      }
    }
    if (count == 0) return 0;
    if (count == 1) {
      int& c = cap[static_cast<std::size_t>(support)];
      c = c == 0 ? e[static_cast<std::size_t>(support)] : std::min(c, e[static_cast<std::size_t>(support)]);
    }
  }
  Exponent a(static_cast<std::size_t>(d), 0);
  std::int64_t count = 0;
  while (true) {
    if (!member(g, a)) ++count;
    int j = 0;
    while (j < d && a[static_cast<std::size_t>(j)] + 1 == cap[static_cast<std::size_t>(j)]) a[static_cast<std::size_t>(j++)] = 0;
    if (j == d) break;
    ++a[static_cast<std::size_t>(j)];
  }
  return count;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

/// Random m-primary ideal: a pure power on each axis plus a few random
/// monomials, every exponent <= max_exp.
inline MonomialIdeal random_primary(std::mt19937_64& rng, int d, int max_exp, int extra = 4) {
  std::vector<Exponent> raw;
  for (int i = 0; i < d; ++i) {
    Exponent e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = static_cast<int>(draw(rng, 1, static_cast<std::uint64_t>(max_exp)));
    raw.push_back(e);
  }
  const int k = static_cast<int>(draw(rng, 0, static_cast<std::uint64_t>(extra)));
  for (int t = 0; t < k; ++t) {
    Exponent e(static_cast<std::size_t>(d));
    for (auto& v : e) v = static_cast<int>(draw(rng, 0, static_cast<std::uint64_t>(max_exp)));
    if (std::all_of(e.begin(), e.end(), [](int v) { return v == 0; })) continue;
    raw.push_back(e);
  }
  return MonomialIdeal(d, raw);
}

}  // namespace oracle
