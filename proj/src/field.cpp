#include "fqlab/field.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fqlab/numeric.hpp"
#include "polyraw.hpp"

namespace fqlab {

namespace detail {

namespace {

std::uint64_t checked_pow(std::uint64_t p, std::uint32_t k) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (q > FieldData::kMaxQ / p) {
      raise(Errc::Overflow, "p^k exceeds the supported word size (q <= 2^31)");
    }
    q *= p;
  }
  return q;
}

}  // namespace

FieldData::FieldData(std::uint64_t p, std::uint32_t k, std::vector<std::uint32_t> modulus,
                     bool build_luts)
    : p_(p), k_(k), q_(0), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) raise(Errc::NotPrime, "p = " + std::to_string(p_) + " is not prime");
  if (k_ < 1) raise(Errc::DegreeOutOfRange, "extension degree k must be >= 1");
  q_ = checked_pow(p_, k_);  // q <= 2^31 also caps k at kMaxK digits

  if (modulus_.size() != k_ + 1 || modulus_.back() != 1) {
    raise(Errc::InvalidArgument, "modulus must be monic of degree k");
  }
  for (std::uint32_t c : modulus_) {
    if (c >= p_) raise(Errc::InvalidArgument, "modulus coefficient out of [0, p)");
  }
  if (k_ == 1) {
    if (modulus_[0] != 0) raise(Errc::InvalidArgument, "prime-field modulus must be x");
  } else {
    // Verify irreducibility over F_p with a throwaway prime-field model.
    FieldData base(p_, 1, {0, 1}, false);
    polyraw::Workspace ws;
    if (!polyraw::irreducible(base, modulus_, ws)) {
      raise(Errc::InvalidArgument, "modulus is reducible over F_p");
    }
  }

  if (build_luts && q_ % 2 == 1 && q_ <= kQcharLutMax) {
    qchar_lut_.resize(q_);
    for (std::uint64_t i = 0; i < q_; ++i) {
      qchar_lut_[i] = static_cast<std::int8_t>(qchar_pow(static_cast<std::uint32_t>(i)));
    }
  }
}

void FieldData::unpack(std::uint32_t idx, std::uint32_t* digits) const {
  std::uint64_t v = idx;
  for (std::uint32_t i = 0; i < k_; ++i) {
    digits[i] = static_cast<std::uint32_t>(v % p_);
    v /= p_;
  }
}

std::uint32_t FieldData::pack(const std::uint32_t* digits) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = k_; i-- > 0;) v = v * p_ + digits[i];
  return static_cast<std::uint32_t>(v);
}

std::uint32_t FieldData::add(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return static_cast<std::uint32_t>(s);
  }
  std::uint32_t da[kMaxK], db[kMaxK];
  unpack(a, da);
  unpack(b, db);
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint64_t s = std::uint64_t(da[i]) + db[i];
    if (s >= p_) s -= p_;
    da[i] = static_cast<std::uint32_t>(s);
  }
  return pack(da);
}

std::uint32_t FieldData::sub(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
  }
  std::uint32_t da[kMaxK], db[kMaxK];
  unpack(a, da);
  unpack(b, db);
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = da[i] >= db[i] ? da[i] - db[i] : static_cast<std::uint32_t>(da[i] + p_ - db[i]);
  }
  return pack(da);
}

std::uint32_t FieldData::neg(std::uint32_t a) const { return sub(0, a); }

std::uint32_t FieldData::mul(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
  }
  if (a == 0 || b == 0) return 0;
  std::uint32_t da[kMaxK], db[kMaxK];
  unpack(a, da);
  unpack(b, db);
  // Schoolbook product; p <= 46340 for k >= 2, so the accumulators stay well
  // below 2^63 before the final reduction.
  std::uint64_t acc[2 * kMaxK - 1] = {0};
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) acc[i + j] += std::uint64_t(da[i]) * db[j];
  }
  for (std::uint32_t i = 0; i < 2 * k_ - 1; ++i) acc[i] %= p_;
  // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
  for (std::uint32_t i = 2 * k_ - 2; i >= k_; --i) {
    std::uint64_t d = acc[i];
    if (d) {
      for (std::uint32_t j = 0; j < k_; ++j) {
        acc[i - k_ + j] = (acc[i - k_ + j] + (p_ - modulus_[j]) * d) % p_;
      }
    }
  }
  std::uint32_t dr[kMaxK];
  for (std::uint32_t i = 0; i < k_; ++i) dr[i] = static_cast<std::uint32_t>(acc[i]);
  return pack(dr);
}

std::uint32_t FieldData::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    raise(Errc::DivisionByZero, "0 raised to a negative power");
  }
  const std::int64_t m = static_cast<std::int64_t>(q_ - 1);
  std::uint64_t ee = static_cast<std::uint64_t>(((e % m) + m) % m);
  std::uint32_t r = 1, base = a;
  while (ee) {
    if (ee & 1) r = mul(r, base);
    base = mul(base, base);
    ee >>= 1;
  }
  return r;
}

std::uint32_t FieldData::inv(std::uint32_t a) const {
  if (a == 0) raise(Errc::DivisionByZero, "inverse of zero");
  return pow(a, static_cast<std::int64_t>(q_) - 2);
}

std::uint32_t FieldData::scalar(std::int64_t s) const {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(((s % m) + m) % m);
}

std::uint32_t FieldData::mul_scalar(std::uint32_t a, std::int64_t s) const {
  return mul(a, scalar(s));
}

std::uint32_t FieldData::trace(std::uint32_t a) const {
  if (k_ == 1) return a;
  std::uint32_t acc = a, t = a;
  for (std::uint32_t i = 1; i < k_; ++i) {
    t = pow(t, static_cast<std::int64_t>(p_));
    acc = add(acc, t);
  }
  return acc;  // lies in the prime subfield, so the index is the residue
}

int FieldData::qchar_pow(std::uint32_t a) const {
  if (a == 0) return 0;
  std::uint32_t r = pow(a, static_cast<std::int64_t>((q_ - 1) / 2));
  return r == 1 ? 1 : -1;
}

int FieldData::qchar(std::uint32_t a) const {
  if (q_ % 2 == 0) raise(Errc::EvenCharacteristic, "quadratic character needs odd q");
  if (!qchar_lut_.empty()) return qchar_lut_[a];
  return qchar_pow(a);
}

std::complex<double> FieldData::add_char(std::uint32_t a) const {
  std::uint32_t t = trace(a);
  if (t == 0) return {1.0, 0.0};
  double ang = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p_);
  return std::polar(1.0, ang);
}

const FieldData& require_same_field(FieldElement a, FieldElement b) {
  const FieldData& fa = element_data(a);
  const FieldData& fb = element_data(b);
  if (&fa != &fb && !fa.same_value(fb)) {
    raise(Errc::FieldMismatch, "elements of different fields");
  }
  return fa;
}

}  // namespace detail

namespace {

// Canonical modulus: the monic irreducible of degree k over F_p with minimal
// canonical index of its non-leading part. Deterministic across runs.
std::vector<std::uint32_t> canonical_modulus(std::uint64_t p, std::uint32_t k) {
  if (!is_prime(p)) raise(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (k < 1) raise(Errc::DegreeOutOfRange, "extension degree k must be >= 1");
  std::uint64_t probe = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (probe > detail::FieldData::kMaxQ / p) {
      raise(Errc::Overflow, "p^k exceeds the supported word size (q <= 2^31)");
    }
    probe *= p;
  }
  if (k == 1) return {0, 1};
  detail::FieldData base(p, 1, {0, 1}, false);
  polyraw::Workspace ws;
  std::vector<std::uint32_t> cand(k + 1, 0);
  cand[k] = 1;
  for (;;) {
    if (polyraw::irreducible(base, cand, ws)) return cand;
    // increment the low part as a base-p counter
    std::uint32_t i = 0;
    while (i < k && ++cand[i] == p) cand[i++] = 0;
    if (i == k) break;  // unreachable: an irreducible of every degree exists
  }
  raise(Errc::InvalidArgument, "no irreducible modulus found");
}

}  // namespace

FieldSpec::FieldSpec(std::uint64_t p, std::uint32_t k)
    : data_(std::make_shared<detail::FieldData>(p, k, canonical_modulus(p, k))) {}

FieldSpec::FieldSpec(std::uint64_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : data_(std::make_shared<detail::FieldData>(p, k, std::move(modulus))) {}

FieldSpec make_field(std::uint64_t p, std::uint32_t k) { return FieldSpec(p, k); }

FieldElement FieldSpec::element(std::uint64_t canonical_index) const {
  if (canonical_index >= q()) raise(Errc::InvalidArgument, "canonical index out of [0, q)");
  return FieldElement(data_.get(), static_cast<std::uint32_t>(canonical_index));
}

FieldElement FieldSpec::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != k()) raise(Errc::InvalidArgument, "expected k coordinates");
  for (std::uint32_t c : coeffs) {
    if (c >= p()) raise(Errc::InvalidArgument, "coordinate out of [0, p)");
  }
  return FieldElement(data_.get(), data_->pack(coeffs.data()));
}

FieldElement FieldSpec::from_int(std::int64_t v) const {
  return FieldElement(data_.get(), data_->scalar(v));
}

FieldElement FieldSpec::generator() const {
  if (k() < 2) raise(Errc::InvalidArgument, "generator() needs an extension field");
  return element(p());
}

std::uint32_t FieldSpec::trace(FieldElement a) const { return data_->trace(a.index()); }
int FieldSpec::qchar(FieldElement a) const { return data_->qchar(a.index()); }
std::complex<double> FieldSpec::add_char(FieldElement a) const {
  return data_->add_char(a.index());
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "F_" << q();
  if (k() > 1) {
    os << " = F_" << p() << "[x]/(";
    bool first = true;
    for (std::uint32_t i = k() + 1; i-- > 0;) {
      std::uint32_t c = modulus()[i];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || c != 1) os << c;
      if (i >= 1) {
        if (i == 0 || c != 1) os << "*";
        os << "x";
        if (i > 1) os << "^" << i;
      }
    }
    os << ")";
  }
  return os.str();
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
  const detail::FieldData& f = element_data(*this);
  std::vector<std::uint32_t> out(f.k());
  f.unpack(idx_, out.data());
  return out;
}

FieldSpec FieldElement::spec() const {
  return FieldSpec(element_data(*this).shared_from_this());
}

FieldElement operator+(FieldElement a, FieldElement b) {
  const detail::FieldData& f = detail::require_same_field(a, b);
  return FieldElement(&f, f.add(a.idx_, b.idx_));
}

FieldElement operator-(FieldElement a, FieldElement b) {
  const detail::FieldData& f = detail::require_same_field(a, b);
  return FieldElement(&f, f.sub(a.idx_, b.idx_));
}

FieldElement operator*(FieldElement a, FieldElement b) {
  const detail::FieldData& f = detail::require_same_field(a, b);
  return FieldElement(&f, f.mul(a.idx_, b.idx_));
}

FieldElement operator/(FieldElement a, FieldElement b) {
  const detail::FieldData& f = detail::require_same_field(a, b);
  return FieldElement(&f, f.mul(a.idx_, f.inv(b.idx_)));
}

FieldElement operator-(FieldElement a) {
  const detail::FieldData& f = element_data(a);
  return FieldElement(&f, f.neg(a.idx_));
}

bool operator==(FieldElement a, FieldElement b) {
  if (a.f_ == nullptr || b.f_ == nullptr) return a.f_ == b.f_ && a.idx_ == b.idx_;
  detail::require_same_field(a, b);
  return a.idx_ == b.idx_;
}

FieldElement inv(FieldElement a) {
  const detail::FieldData& f = element_data(a);
  return FieldElement(&f, f.inv(a.idx_));
}

FieldElement pow(FieldElement a, std::int64_t e) {
  const detail::FieldData& f = element_data(a);
  return FieldElement(&f, f.pow(a.idx_, e));
}

std::ostream& operator<<(std::ostream& os, FieldElement a) { return os << a.index(); }

std::uint32_t trace(FieldElement a) { return element_data(a).trace(a.index()); }
int qchar(FieldElement a) { return element_data(a).qchar(a.index()); }
std::complex<double> add_char(FieldElement a) { return element_data(a).add_char(a.index()); }

FieldElement FieldRange::iterator::operator*() const {
  return FieldSpec(f_->shared_from_this()).element(i_);
}

FieldRange enumerate_field(const FieldSpec& spec) { return FieldRange(spec); }

}  // namespace fqlab
