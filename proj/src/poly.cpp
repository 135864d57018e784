#include "fqlab/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "fqlab/numeric.hpp"
#include "polyraw.hpp"

namespace fqlab {

SplittingType::SplittingType(std::uint32_t n_, std::vector<std::uint32_t> s_)
    : n(n_), s(std::move(s_)) {
  if (n < 1) raise(Errc::DegreeOutOfRange, "splitting type needs n >= 1");
  if (s.size() != n) raise(Errc::InvalidArgument, "splitting type needs n entries");
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < n; ++i) total += std::uint64_t(i + 1) * s[i];
  if (total != n) raise(Errc::InvalidArgument, "splitting type must satisfy sum i*s_i = n");
}

std::uint32_t SplittingType::factor_count() const {
  return std::accumulate(s.begin(), s.end(), std::uint32_t{0});
}

std::string SplittingType::to_string() const {
  std::string out;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i) out += '-';
    out += std::to_string(s[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const SplittingType& t) {
  return os << t.to_string();
}

namespace {

void check_same_field(const Poly& a, const Poly& b) {
  if (!a.field().same_field(b.field())) raise(Errc::FieldMismatch, "polynomials over different fields");
}

void require_monic_nonconstant(const Poly& P, const char* op) {
  if (P.degree() < 1) raise(Errc::Constant, std::string(op) + ": polynomial must be nonconstant");
  if (!P.is_monic()) raise(Errc::NotMonic, std::string(op) + ": polynomial must be monic");
}

}  // namespace

Poly::Poly(FieldSpec field, std::vector<std::uint32_t> coeff_indices)
    : field_(std::move(field)), c_(std::move(coeff_indices)) {
  for (std::uint32_t c : c_) {
    if (c >= field_.q()) raise(Errc::InvalidArgument, "coefficient index out of [0, q)");
  }
  polyraw::trim(c_);
}

Poly Poly::zero(const FieldSpec& f) { return Poly(f, {}); }
Poly Poly::one(const FieldSpec& f) { return Poly(f, {1}); }
Poly Poly::x(const FieldSpec& f) { return Poly(f, {0, 1}); }

Poly Poly::from_elements(const FieldSpec& f, const std::vector<FieldElement>& coeffs) {
  std::vector<std::uint32_t> idx;
  idx.reserve(coeffs.size());
  for (FieldElement e : coeffs) {
    if (!f.same_field(e.spec())) raise(Errc::FieldMismatch, "coefficient from a different field");
    idx.push_back(e.index());
  }
  return Poly(f, std::move(idx));
}

Poly Poly::from_ints(const FieldSpec& f, const std::vector<std::int64_t>& coeffs) {
  std::vector<std::uint32_t> idx;
  idx.reserve(coeffs.size());
  for (std::int64_t c : coeffs) idx.push_back(f.from_int(c).index());
  return Poly(f, std::move(idx));
}

FieldElement Poly::coeff(std::uint32_t i) const { return field_.element(coeff_index(i)); }

FieldElement Poly::leading() const {
  if (c_.empty()) raise(Errc::InvalidArgument, "zero polynomial has no leading coefficient");
  return field_.element(c_.back());
}

FieldElement Poly::eval(FieldElement at) const {
  if (!field_.same_field(at.spec())) raise(Errc::FieldMismatch, "evaluation point from a different field");
  return field_.element(eval_index(at.index()));
}

std::uint32_t Poly::eval_index(std::uint32_t at) const {
  return polyraw::eval(field_.data(), c_, at);
}

Poly Poly::operator+(const Poly& o) const {
  check_same_field(*this, o);
  std::vector<std::uint32_t> out;
  polyraw::add(field_.data(), c_, o.c_, out);
  return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
  check_same_field(*this, o);
  std::vector<std::uint32_t> out;
  polyraw::sub(field_.data(), c_, o.c_, out);
  return Poly(field_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  check_same_field(*this, o);
  std::vector<std::uint32_t> out;
  polyraw::mul(field_.data(), c_, o.c_, out);
  return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (b.is_zero()) raise(Errc::DivisionByZero, "polynomial division by zero");
  std::vector<std::uint32_t> q, r;
  polyraw::divmod(a.field().data(), a.c_, b.c_, q, r);
  return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly Poly::operator/(const Poly& o) const { return divmod(*this, o).first; }
Poly Poly::operator%(const Poly& o) const { return divmod(*this, o).second; }

Poly Poly::derivative() const {
  std::vector<std::uint32_t> out;
  polyraw::derivative(field_.data(), c_, out);
  return Poly(field_, std::move(out));
}

Poly Poly::monic() const {
  if (is_zero()) raise(Errc::InvalidArgument, "cannot normalize the zero polynomial");
  std::vector<std::uint32_t> out = c_;
  polyraw::make_monic(field_.data(), out);
  return Poly(field_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  return a.c_ == b.c_;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const bool prime_field = field_.k() == 1;
  for (std::uint32_t i = c_.size(); i-- > 0;) {
    std::uint32_t c = c_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = (c == 1);
    if (i == 0 || !unit) {
      if (prime_field) {
        os << c;
      } else {
        os << "a" << c;  // element with canonical index c
      }
      if (i >= 1) os << "*";
    }
    if (i >= 1) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

Poly gcd(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.is_zero() && b.is_zero()) raise(Errc::InvalidArgument, "gcd(0, 0) is undefined");
  polyraw::Workspace ws;
  std::vector<std::uint32_t> out;
  polyraw::gcd_monic(a.field().data(), a.coeff_indices(), b.coeff_indices(), out, ws);
  return Poly(a.field(), std::move(out));
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  check_same_field(base, m);
  if (m.degree() < 1) raise(Errc::Constant, "powmod modulus must be nonconstant");
  polyraw::Workspace ws;
  std::vector<std::uint32_t> out;
  polyraw::powmod(base.field().data(), base.coeff_indices(), e, m.coeff_indices(), out, ws);
  return Poly(base.field(), std::move(out));
}

std::vector<std::pair<Poly, std::uint32_t>> squarefree_decomposition(const Poly& P) {
  require_monic_nonconstant(P, "squarefree_decomposition");
  polyraw::Workspace ws;
  std::vector<std::pair<polyraw::Coeffs, std::uint32_t>> parts;
  polyraw::squarefree_decomposition(P.field().data(), P.coeff_indices(), parts, ws);
  std::vector<std::pair<Poly, std::uint32_t>> out;
  out.reserve(parts.size());
  for (auto& [coeffs, mult] : parts) out.emplace_back(Poly(P.field(), std::move(coeffs)), mult);
  return out;
}

SplittingType splitting_type(const Poly& P) {
  require_monic_nonconstant(P, "splitting_type");
  const std::uint32_t n = static_cast<std::uint32_t>(P.degree());
  std::vector<std::uint32_t> s(n, 0);
  polyraw::Workspace ws;
  polyraw::splitting_profile(P.field().data(), P.coeff_indices(), 1, s.data(), ws,
                             /*quad_fastpath=*/false);
  return SplittingType(n, std::move(s));
}

bool is_irreducible(const Poly& P) {
  require_monic_nonconstant(P, "is_irreducible");
  polyraw::Workspace ws;
  return polyraw::irreducible(P.field().data(), P.coeff_indices(), ws);
}

FieldElement discriminant(const Poly& P) {
  require_monic_nonconstant(P, "discriminant");
  const int n = P.degree();
  if (n < 2) raise(Errc::DegreeTooSmall, "discriminant needs degree >= 2");
  polyraw::Workspace ws;
  polyraw::Coeffs deriv;
  polyraw::derivative(P.field().data(), P.coeff_indices(), deriv);
  std::uint32_t res =
      polyraw::resultant_euclid(P.field().data(), P.coeff_indices(), std::move(deriv), ws);
  // (-1)^{n(n-1)/2} Res(P, P')
  if ((std::uint64_t(n) * (n - 1) / 2) % 2 == 1) res = P.field().data().neg(res);
  return P.field().element(res);
}

FieldElement resultant(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  polyraw::Workspace ws;
  std::uint32_t r =
      polyraw::resultant_euclid(a.field().data(), a.coeff_indices(), b.coeff_indices(), ws);
  return a.field().element(r);
}

FieldElement resultant_sylvester(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  const FieldSpec& fs = a.field();
  const detail::FieldData& f = fs.data();
  const int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return fs.zero();  // a zero operand: resultant vanishes
  if (m == 0 && n == 0) return fs.one();
  if (m == 0) return fs.element(f.pow(a.coeff_index(0), n));
  if (n == 0) return fs.element(f.pow(b.coeff_index(0), m));

  // Sylvester matrix: n rows of a's coefficients, m rows of b's, high-to-low.
  const int size = m + n;
  std::vector<std::uint32_t> mat(static_cast<std::size_t>(size) * size, 0);
  auto at = [&](int r, int c) -> std::uint32_t& { return mat[static_cast<std::size_t>(r) * size + c]; };
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j <= m; ++j) at(r, r + j) = a.coeff_index(static_cast<std::uint32_t>(m - j));
  }
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n; ++j) at(n + r, r + j) = b.coeff_index(static_cast<std::uint32_t>(n - j));
  }

  // Gaussian elimination; track row-swap parity.
  std::uint32_t det = 1;
  bool negate = false;
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r) {
      if (at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return fs.zero();
    if (pivot != col) {
      for (int c = col; c < size; ++c) std::swap(at(pivot, c), at(col, c));
      negate = !negate;
    }
    const std::uint32_t pv = at(col, col);
    det = f.mul(det, pv);
    const std::uint32_t pvinv = f.inv(pv);
    for (int r = col + 1; r < size; ++r) {
      std::uint32_t factor = at(r, col);
      if (factor == 0) continue;
      factor = f.mul(factor, pvinv);
      for (int c = col; c < size; ++c) {
        at(r, c) = f.sub(at(r, c), f.mul(factor, at(col, c)));
      }
    }
  }
  if (negate) det = f.neg(det);
  return fs.element(det);
}

bool stickelberger_check(const Poly& P) {
  const FieldSpec& fs = P.field();
  if (fs.q() % 2 == 0) raise(Errc::EvenCharacteristic, "stickelberger_check needs odd q");
  require_monic_nonconstant(P, "stickelberger_check");
  const int n = P.degree();
  if (n < 2) raise(Errc::DegreeTooSmall, "stickelberger_check needs degree >= 2");
  Poly d = P.derivative();
  if (d.is_zero() || gcd(P, d).degree() != 0) {
    raise(Errc::NotSquarefree, "stickelberger_check needs a squarefree polynomial");
  }
  const std::uint32_t r = splitting_type(P).factor_count();
  const int lhs = fs.qchar(discriminant(P));
  const int rhs = ((static_cast<std::uint32_t>(n) - r) % 2 == 0) ? 1 : -1;
  return lhs == rhs;
}

std::uint64_t count_irreducible(std::uint32_t n, const FieldSpec& spec) {
  if (n < 1) raise(Errc::DegreeOutOfRange, "count_irreducible needs n >= 1");
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 100;
  __int128 total = 0;
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    unsigned __int128 term = 1;
    for (std::uint32_t i = 0; i < n / d; ++i) {
      if (term > limit / spec.q()) raise(Errc::Overflow, "q^n too large for count_irreducible");
      term *= spec.q();
    }
    total += mu > 0 ? static_cast<__int128>(term) : -static_cast<__int128>(term);
  }
  total /= n;
  if (total < 0 || total > static_cast<__int128>(UINT64_MAX)) {
    raise(Errc::Overflow, "irreducible count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace fqlab
