#include "polyraw.hpp"

#include <algorithm>
#include <cassert>

namespace fqlab::polyraw {

void add(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out) {
  const Coeffs& lo = a.size() <= b.size() ? a : b;
  const Coeffs& hi = a.size() <= b.size() ? b : a;
  out.resize(hi.size());
  for (std::size_t i = 0; i < lo.size(); ++i) out[i] = f.add(lo[i], hi[i]);
  for (std::size_t i = lo.size(); i < hi.size(); ++i) out[i] = hi[i];
  trim(out);
}

void sub(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out) {
  out.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint32_t ai = i < a.size() ? a[i] : 0;
    std::uint32_t bi = i < b.size() ? b[i] : 0;
    out[i] = f.sub(ai, bi);
  }
  trim(out);
}

void mul(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out) {
  if (&out == &a || &out == &b) {
    Coeffs tmp;
    mul(f, a, b, tmp);
    out.swap(tmp);
    return;
  }
  if (a.empty() || b.empty()) {
    out.clear();
    return;
  }
  out.assign(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(out);
}

void scale(const F& f, Coeffs& a, std::uint32_t c) {
  if (c == 0) {
    a.clear();
    return;
  }
  for (auto& ai : a) ai = f.mul(ai, c);
  trim(a);
}

void divmod(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& quot, Coeffs& rem) {
  assert(!b.empty());
  rem = a;
  if (deg(a) < deg(b)) {
    quot.clear();
    return;
  }
  const int db = deg(b);
  quot.assign(a.size() - b.size() + 1, 0);
  const std::uint32_t lbinv = f.inv(b.back());
  for (int i = deg(rem); i >= db; --i) {
    std::uint32_t c = rem[i];
    if (c == 0) continue;
    std::uint32_t qc = f.mul(c, lbinv);
    quot[i - db] = qc;
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] = f.sub(rem[i - db + j], f.mul(qc, b[j]));
    }
  }
  trim(rem);
  trim(quot);
}

void mod(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& rem) {
  assert(!b.empty());
  if (&rem != &a) rem = a;
  const int db = deg(b);
  if (db == 0) {
    rem.clear();
    return;
  }
  const std::uint32_t lbinv = f.inv(b.back());
  for (int i = deg(rem); i >= db; --i) {
    std::uint32_t c = rem[i];
    if (c == 0) continue;
    std::uint32_t qc = f.mul(c, lbinv);
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] = f.sub(rem[i - db + j], f.mul(qc, b[j]));
    }
  }
  trim(rem);
}

void make_monic(const F& f, Coeffs& a) {
  if (a.empty() || a.back() == 1) return;
  scale(f, a, f.inv(a.back()));
}

void gcd_monic(const F& f, const Coeffs& a, const Coeffs& b, Coeffs& out, Workspace& ws) {
  out = a;
  ws.gcd_b = b;
  while (!ws.gcd_b.empty()) {
    mod(f, out, ws.gcd_b, ws.gcd_r);
    out.swap(ws.gcd_b);
    ws.gcd_b.swap(ws.gcd_r);
  }
  make_monic(f, out);
}

void derivative(const F& f, const Coeffs& a, Coeffs& out) {
  if (a.size() <= 1) {
    out.clear();
    return;
  }
  out.resize(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    out[i - 1] = f.mul_scalar(a[i], static_cast<std::int64_t>(i % f.p()));
  }
  trim(out);
}

std::uint32_t eval(const F& f, const Coeffs& a, std::uint32_t at) {
  std::uint32_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, at), a[i]);
  return acc;
}

void mulmod(const F& f, const Coeffs& a, const Coeffs& b, const Coeffs& m, Coeffs& out,
            Workspace& ws) {
  mul(f, a, b, ws.mulbuf);
  mod(f, ws.mulbuf, m, out);
}

void powmod(const F& f, const Coeffs& base, std::uint64_t e, const Coeffs& m, Coeffs& out,
            Workspace& ws) {
  assert(deg(m) >= 1);
  out.assign(1, 1);
  mod(f, base, m, ws.pm_base);
  while (e) {
    if (e & 1) {
      mulmod(f, out, ws.pm_base, m, ws.swapbuf, ws);
      out.swap(ws.swapbuf);
    }
    e >>= 1;
    if (e) {
      mulmod(f, ws.pm_base, ws.pm_base, m, ws.swapbuf, ws);
      ws.pm_base.swap(ws.swapbuf);
    }
  }
}

void pth_root(const F& f, const Coeffs& a, Coeffs& out) {
  // a = r(x^p); inverse Frobenius c -> c^{q/p} recovers the p-th root of each
  // surviving coefficient.
  const std::uint64_t p = f.p();
  const std::int64_t inv_frob = static_cast<std::int64_t>(f.q() / p);
  out.assign((a.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < a.size(); i += p) {
    out[i / p] = f.pow(a[i], inv_frob);
  }
  trim(out);
}

namespace {

void sfd_rec(const F& f, Coeffs P, std::uint32_t mult,
             std::vector<std::pair<Coeffs, std::uint32_t>>& out, Workspace& ws) {
  if (deg(P) <= 0) return;
  Coeffs Pd;
  derivative(f, P, Pd);
  if (Pd.empty()) {
    Coeffs root;
    pth_root(f, P, root);
    sfd_rec(f, std::move(root), mult * static_cast<std::uint32_t>(f.p()), out, ws);
    return;
  }
  // Tame loop: peels parts with multiplicity not divisible by p; the leftover
  // C is a p-th power handled by recursion.
  Coeffs C, W, Y, Z, Q;
  gcd_monic(f, P, Pd, C, ws);
  divmod(f, P, C, W, Y);  // W = P / C
  std::uint32_t i = 1;
  while (deg(W) > 0) {
    gcd_monic(f, W, C, Y, ws);
    divmod(f, W, Y, Z, Q);  // Z: exact-multiplicity-i part
    if (deg(Z) > 0) out.emplace_back(Z, mult * i);
    divmod(f, C, Y, Q, Z);  // C /= Y
    C.swap(Q);
    W.swap(Y);
    ++i;
  }
  if (deg(C) > 0) {
    Coeffs root;
    pth_root(f, C, root);
    sfd_rec(f, std::move(root), mult * static_cast<std::uint32_t>(f.p()), out, ws);
  }
}

// Distinct-degree profile of squarefree monic ws.ddf_q (consumed): adds
// mult * (#factors of degree d) to s_out[d-1]. Re-uses the q-power map across
// degrees: u starts at x and is raised to the q-th power once per degree step.
void ddf_profile(const F& f, std::uint32_t mult, std::uint32_t* s_out, Workspace& ws) {
  Coeffs& Q = ws.ddf_q;
  if (deg(Q) <= 0) return;
  if (deg(Q) == 1) {
    s_out[0] += mult;
    return;
  }
  ws.xp.assign(2, 0);
  ws.xp[1] = 1;
  ws.u = ws.xp;
  std::uint32_t d = 0;
  while (2 * (d + 1) <= static_cast<std::uint32_t>(deg(Q))) {
    ++d;
    powmod(f, ws.u, f.q(), Q, ws.rem, ws);  // u <- u^q mod Q
    ws.u.swap(ws.rem);
    sub(f, ws.u, ws.xp, ws.diff);
    gcd_monic(f, ws.diff, Q, ws.gg, ws);
    if (deg(ws.gg) > 0) {
      s_out[d - 1] += mult * static_cast<std::uint32_t>(deg(ws.gg) / static_cast<int>(d));
      divmod(f, Q, ws.gg, ws.quot, ws.rem);
      Q.swap(ws.quot);
      if (deg(Q) <= 0) return;
      mod(f, ws.u, Q, ws.u);
    }
  }
  if (deg(Q) > 0) s_out[deg(Q) - 1] += mult;
}

}  // namespace

void squarefree_decomposition(const F& f, const Coeffs& P,
                              std::vector<std::pair<Coeffs, std::uint32_t>>& out, Workspace& ws) {
  sfd_rec(f, P, 1, out, ws);
}

void splitting_profile(const F& f, const Coeffs& P, std::uint32_t mult, std::uint32_t* s_out,
                       Workspace& ws, bool quad_fastpath) {
  const int n = deg(P);
  assert(n >= 1 && P.back() == 1);
  if (n == 1) {
    s_out[0] += mult;
    return;
  }
  if (n == 2 && quad_fastpath && f.q() % 2 == 1) {
    // monic x^2 + bx + c: irreducible iff b^2 - 4c is a non-square
    std::uint32_t disc = f.sub(f.mul(P[1], P[1]), f.mul_scalar(P[0], 4));
    if (f.qchar(disc) == -1) {
      s_out[1] += mult;
    } else {
      s_out[0] += 2 * mult;
    }
    return;
  }
  derivative(f, P, ws.diff);
  if (!ws.diff.empty()) {
    gcd_monic(f, P, ws.diff, ws.gg, ws);
    if (deg(ws.gg) == 0) {
      ws.ddf_q = P;
      ddf_profile(f, mult, s_out, ws);
      return;
    }
  }
  std::vector<std::pair<Coeffs, std::uint32_t>> parts;
  squarefree_decomposition(f, P, parts, ws);
  for (auto& [part, m] : parts) {
    ws.ddf_q.swap(part);
    ddf_profile(f, mult * m, s_out, ws);
  }
}

bool irreducible(const F& f, const Coeffs& P, Workspace& ws, bool quad_fastpath) {
  const int n = deg(P);
  assert(n >= 1 && P.back() == 1);
  if (n == 1) return true;
  if (n == 2 && quad_fastpath && f.q() % 2 == 1) {
    std::uint32_t disc = f.sub(f.mul(P[1], P[1]), f.mul_scalar(P[0], 4));
    return f.qchar(disc) == -1;
  }
  // every reducible P has an irreducible factor of degree <= n/2
  ws.xp.assign(2, 0);
  ws.xp[1] = 1;
  ws.u = ws.xp;
  for (int d = 1; 2 * d <= n; ++d) {
    powmod(f, ws.u, f.q(), P, ws.rem, ws);
    ws.u.swap(ws.rem);
    sub(f, ws.u, ws.xp, ws.diff);
    gcd_monic(f, ws.diff, P, ws.gg, ws);
    if (deg(ws.gg) != 0) return false;
  }
  return true;
}

std::uint32_t resultant_euclid(const F& f, Coeffs a, Coeffs b, Workspace& ws) {
  if (a.empty() || b.empty()) {
    // Res(A, 0) = 0 for deg A >= 1; the constant-vs-zero case does not arise.
    return 0;
  }
  std::uint32_t r = 1;
  bool flip = false;  // parity of accumulated (-1)^{deg A * deg B} factors
  if (deg(a) < deg(b)) {
    if ((deg(a) & 1) && (deg(b) & 1)) flip = !flip;
    a.swap(b);
  }
  if (deg(b) == 0) {
    std::uint32_t res = f.pow(b[0], deg(a));
    return flip ? f.neg(res) : res;
  }
  for (;;) {
    // invariant: deg a >= deg b >= 1
    mod(f, a, b, ws.swapbuf);
    if (ws.swapbuf.empty()) return 0;
    // Res(A,B) = (-1)^{dA dB} lc(B)^{dA - dR} Res(B, R)
    if ((deg(a) & 1) && (deg(b) & 1)) flip = !flip;
    r = f.mul(r, f.pow(b.back(), deg(a) - deg(ws.swapbuf)));
    a.swap(b);
    b.swap(ws.swapbuf);
    if (deg(b) == 0) {
      r = f.mul(r, f.pow(b[0], deg(a)));
      return flip ? f.neg(r) : r;
    }
  }
}

}  // namespace fqlab::polyraw
