#pragma once

// Brute-force reference implementations used only by tests. They share the
// field arithmetic (checked independently by the axiom tests) but none of the
// library's factorization machinery: multiplication, division, and
// irreducibility here are plain schoolbook and trial division.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "fqlab/field.hpp"

namespace oracles {

using fqlab::FieldSpec;
using Idx = std::vector<std::uint32_t>;  // coefficients low-to-high, trimmed

inline Idx trim(Idx a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline Idx mul(const FieldSpec& f, const Idx& a, const Idx& b) {
  if (a.empty() || b.empty()) return {};
  Idx out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = f.data().add(out[i + j], f.data().mul(a[i], b[j]));
    }
  }
  return trim(std::move(out));
}

inline std::pair<Idx, Idx> divmod(const FieldSpec& f, Idx a, const Idx& b) {
  Idx quot;
  const std::size_t db = b.size() - 1;  // b nonzero
  if (a.size() <= db) return {quot, trim(std::move(a))};
  quot.assign(a.size() - db, 0);
  const std::uint32_t lead_inv = f.data().inv(b.back());
  for (std::size_t i = a.size(); i-- > db;) {
    std::uint32_t c = a[i];
    if (c == 0) continue;
    std::uint32_t qc = f.data().mul(c, lead_inv);
    quot[i - db] = qc;
    for (std::size_t j = 0; j <= db; ++j) {
      a[i - db + j] = f.data().sub(a[i - db + j], f.data().mul(qc, b[j]));
    }
  }
  return {trim(std::move(quot)), trim(std::move(a))};
}

inline bool divides(const FieldSpec& f, const Idx& d, const Idx& a) {
  return divmod(f, a, d).second.empty();
}

// All monic polynomials of the exact degree, by canonical odometer order.
inline std::vector<Idx> monic_polys(const FieldSpec& f, std::uint32_t degree) {
  std::vector<Idx> out;
  const std::uint64_t q = f.q();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < degree; ++i) total *= q;
  for (std::uint64_t t = 0; t < total; ++t) {
    Idx c(degree + 1, 0);
    std::uint64_t v = t;
    for (std::uint32_t i = 0; i < degree; ++i) {
      c[i] = static_cast<std::uint32_t>(v % q);
      v /= q;
    }
    c[degree] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

// Monic irreducibles up to max_degree via sieve by trial division.
inline std::vector<std::vector<Idx>> irreducibles_by_degree(const FieldSpec& f,
                                                            std::uint32_t max_degree) {
  std::vector<std::vector<Idx>> table(max_degree + 1);
  for (std::uint32_t d = 1; d <= max_degree; ++d) {
    for (Idx& cand : monic_polys(f, d)) {
      bool irreducible = true;
      for (std::uint32_t e = 1; irreducible && 2 * e <= d; ++e) {
        for (const Idx& p : table[e]) {
          if (divides(f, p, cand)) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) table[d].push_back(std::move(cand));
    }
  }
  return table;
}

// Splitting profile by trial division with multiplicity.
inline std::vector<std::uint32_t> splitting_profile(const FieldSpec& f, Idx P,
                                                    const std::vector<std::vector<Idx>>& irr) {
  const std::uint32_t n = static_cast<std::uint32_t>(P.size() - 1);
  std::vector<std::uint32_t> s(n, 0);
  for (std::uint32_t d = 1; d < irr.size() && P.size() > 1; ++d) {
    for (const Idx& p : irr[d]) {
      for (;;) {
        auto [quot, rem] = divmod(f, P, p);
        if (!rem.empty()) break;
        s[d - 1] += 1;
        P = std::move(quot);
      }
      if (P.size() <= 1) break;
    }
  }
  return s;
}

// Cycle-type tallies over all n! permutations.
inline std::map<std::vector<std::uint32_t>, std::uint64_t> cycle_type_tally(std::uint32_t n) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<std::uint32_t>, std::uint64_t> tally;
  do {
    std::vector<std::uint32_t> s(n, 0);
    std::vector<bool> seen(n, false);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::uint32_t len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = perm[j];
        ++len;
      }
      s[len - 1] += 1;
    }
    tally[s] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tally;
}

}  // namespace oracles
