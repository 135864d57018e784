#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqlab/field.hpp"

namespace fqlab {

/// Degrees of the irreducible factors of a degree-n polynomial, counted with
/// multiplicity: s[i-1] factors of degree i, with sum i*s_i = n. The same
/// tuple encodes the cycle type of a permutation of n letters.
struct SplittingType {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> s;  // length n

  SplittingType() = default;
  SplittingType(std::uint32_t n_, std::vector<std::uint32_t> s_);

  bool is_irreducible() const { return n >= 1 && s[n - 1] == 1; }
  std::uint32_t factor_count() const;
  std::string to_string() const;  // "s1-s2-...-sn"

  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

std::ostream& operator<<(std::ostream& os, const SplittingType& t);

/// Univariate polynomial over a fixed F_q. Coefficients are stored low-to-high
/// as canonical indices with the leading zero positions trimmed; the zero
/// polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly(FieldSpec field, std::vector<std::uint32_t> coeff_indices);

  static Poly zero(const FieldSpec& f);
  static Poly one(const FieldSpec& f);
  static Poly x(const FieldSpec& f);
  static Poly from_elements(const FieldSpec& f, const std::vector<FieldElement>& coeffs);
  /// Integer coefficients reduced into the prime subfield; used by recipes.
  static Poly from_ints(const FieldSpec& f, const std::vector<std::int64_t>& coeffs);

  const FieldSpec& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_constant() const { return c_.size() <= 1; }

  FieldElement coeff(std::uint32_t i) const;  // zero beyond the degree
  std::uint32_t coeff_index(std::uint32_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<std::uint32_t>& coeff_indices() const { return c_; }
  FieldElement leading() const;

  FieldElement eval(FieldElement at) const;
  std::uint32_t eval_index(std::uint32_t at) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator/(const Poly& o) const;
  Poly operator%(const Poly& o) const;
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

  Poly derivative() const;
  Poly monic() const;  // scaled by the inverse of the leading coefficient

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<std::uint32_t> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Monic gcd; inputs must share a field and not both be zero.
Poly gcd(const Poly& a, const Poly& b);

/// base^e mod m, square-and-multiply. m nonconstant.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// Monic squarefree parts with multiplicities: P = prod Q_j^{m_j}, the Q_j
/// pairwise coprime. Recurses through p-th roots when the derivative vanishes.
std::vector<std::pair<Poly, std::uint32_t>> squarefree_decomposition(const Poly& P);

/// Degrees-with-multiplicity profile via squarefree decomposition followed by
/// distinct-degree gcd splitting; no equal-degree splitting is performed.
SplittingType splitting_type(const Poly& P);

/// Short-circuit irreducibility test (gcd with x^{q^d} - x for d <= n/2).
/// For n = 2 over odd q the discriminant-character fast path is used.
bool is_irreducible(const Poly& P);

/// disc P = (-1)^{n(n-1)/2} Res(P, P') for monic P of degree n >= 2.
FieldElement discriminant(const Poly& P);

/// Resultant via the Euclidean remainder chain.
FieldElement resultant(const Poly& a, const Poly& b);
/// Resultant via the Sylvester-matrix determinant (cross-check route).
FieldElement resultant_sylvester(const Poly& a, const Poly& b);

/// Parity identity for squarefree monic P over odd q with r irreducible
/// factors: qchar(disc P) == (-1)^{n-r}. Returns whether it holds for P.
bool stickelberger_check(const Poly& P);

/// Exact count of monic irreducibles of degree n via the Moebius sum
/// (1/n) sum_{d|n} mu(d) q^{n/d}.
std::uint64_t count_irreducible(std::uint32_t n, const FieldSpec& spec);

}  // namespace fqlab
