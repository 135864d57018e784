#pragma once

// Allocation-light polynomial routines on raw coefficient vectors (canonical
// indices, low-to-high, trimmed). Shared by the Poly wrappers, the modulus
// search in field construction, and the enumeration engine's hot loop, which
// reuses one Workspace per worker so buffers keep their capacity.

#include <cstdint>
#include <utility>
#include <vector>

#include "fqlab/field.hpp"

namespace fqlab::polyraw {

using F = detail::FieldData;
using Coeffs = std::vector<std::uint32_t>;

// Scratch buffers with fixed roles; see the .cpp for who touches what.
struct Workspace {
  Coeffs u, xp, gg, diff, quot, rem;  // distinct-degree / irreducibility loops
  Coeffs ddf_q;                       // working copy of the profiled part
  Coeffs mulbuf;                      // product buffer inside mulmod
  Coeffs gcd_b, gcd_r;                // euclid loop carriers
  Coeffs pm_base;                     // powmod base carrier
  Coeffs swapbuf;                     // powmod/resultant exchange buffer
};

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Coeffs& a) { return a.empty(); }
inline bool is_one(const Coeffs& a) { return a.size() == 1 && a[0] == 1; }

void add(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out);
void sub(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out);
void mul(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out);
void scale(const F& f, Coeffs& a, std::uint32_t c);

// quot/rem must not alias a, b, or each other; b nonzero.
void divmod(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& quot, Coeffs& rem);
// rem must not alias b.
void mod(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& rem);

void make_monic(const F& f, Coeffs& a);
// Monic gcd; out must not alias a or b. Inputs not both zero.
void gcd_monic(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out, Workspace& ws);

void derivative(const F& f, const Coeffs& a, Coeffs& out);
std::uint32_t eval(const F& f, const Coeffs& a, std::uint32_t at);

// (a * b) mod m; m nonconstant monic; out must not alias the inputs or m.
void mulmod(const F& f, const Coeffs& a, const Coeffs& b, const Coeffs& m, Coeffs& out,
            Workspace& ws);
// base^e mod m; out must not alias base or m.
void powmod(const F& f, const Coeffs& base, std::uint64_t e, const Coeffs& m, Coeffs& out,
            Workspace& ws);

// Coefficient-wise p-th root of a polynomial whose derivative vanishes:
// positions i*p survive, mapped through the inverse Frobenius c -> c^{q/p}.
void pth_root(const F& f, const Coeffs& a, Coeffs& out);

// P = prod out[j].first ^ out[j].second, parts monic squarefree and pairwise
// coprime. P monic nonconstant.
void squarefree_decomposition(const F& f, const Coeffs& P,
                              std::vector<std::pair<Coeffs, std::uint32_t>>& out, Workspace& ws);

// Adds to s_out[d-1] the number of degree-d irreducible factors of P, counted
// with multiplicity times `mult`. s_out must hold deg(P) entries and is not
// cleared here. When quad_fastpath is set, monic quadratics over odd q are
// resolved by the discriminant character.
void splitting_profile(const F& f, const Coeffs& P, std::uint32_t mult, std::uint32_t* s_out,
                       Workspace& ws, bool quad_fastpath);

// Short-circuit irreducibility: factor-degree gcd probes for d <= n/2.
bool irreducible(const F& f, const Coeffs& P, Workspace& ws, bool quad_fastpath = true);

// Resultant of a and b via the Euclidean remainder chain (index result).
std::uint32_t resultant_euclid(const F& f, Coeffs a, Coeffs b, Workspace& ws);

}  // namespace fqlab::polyraw
