#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fqlab/errors.hpp"

namespace fqlab {

class FieldSpec;
class FieldElement;

namespace detail {

// Immutable realization of F_{p^k} in the polynomial basis. Elements are
// encoded by their canonical index: the base-p evaluation of the coordinate
// vector (c_0, ..., c_{k-1}), which is a bijection onto [0, q).
//
// All index-level operations are pure and safe to call concurrently.
class FieldData : public std::enable_shared_from_this<FieldData> {
 public:
  // modulus: k+1 residues, low-to-high, monic; validated for irreducibility.
  // build_luts=false skips table construction (internal throwaway instances).
  FieldData(std::uint64_t p, std::uint32_t k, std::vector<std::uint32_t> modulus,
            bool build_luts = true);

  std::uint64_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;

  // Multiplies by a prime-subfield scalar given as an integer (reduced mod p).
  std::uint32_t mul_scalar(std::uint32_t a, std::int64_t s) const;
  std::uint32_t scalar(std::int64_t s) const;  // image of s under Z -> F_p -> F_q

  std::uint32_t trace(std::uint32_t a) const;       // residue in [0, p)
  int qchar(std::uint32_t a) const;                 // {-1, 0, +1}; q must be odd
  std::complex<double> add_char(std::uint32_t a) const;

  void unpack(std::uint32_t idx, std::uint32_t* digits) const;
  std::uint32_t pack(const std::uint32_t* digits) const;

  bool same_value(const FieldData& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

  static constexpr std::uint32_t kMaxK = 31;
  static constexpr std::uint64_t kMaxQ = std::uint64_t(1) << 31;
  static constexpr std::uint64_t kQcharLutMax = std::uint64_t(1) << 16;

 private:
  int qchar_pow(std::uint32_t a) const;

  std::uint64_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::int8_t> qchar_lut_;  // filled for odd q <= kQcharLutMax
};

}  // namespace detail

/// One element of a concrete F_q. Trivially copyable; the owning field must
/// outlive every element created from it.
class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t index() const { return idx_; }
  bool is_zero() const { return idx_ == 0; }

  /// Polynomial-basis coordinates, k residues in [0, p).
  std::vector<std::uint32_t> coeffs() const;

  FieldSpec spec() const;

  friend FieldElement operator+(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a, FieldElement b);
  friend FieldElement operator*(FieldElement a, FieldElement b);
  friend FieldElement operator/(FieldElement a, FieldElement b);
  friend FieldElement operator-(FieldElement a);
  friend bool operator==(FieldElement a, FieldElement b);
  friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

  friend FieldElement inv(FieldElement a);
  friend FieldElement pow(FieldElement a, std::int64_t e);

  friend std::ostream& operator<<(std::ostream& os, FieldElement a);

 private:
  friend class FieldSpec;
  friend const detail::FieldData& element_data(FieldElement);
  FieldElement(const detail::FieldData* f, std::uint32_t idx) : f_(f), idx_(idx) {}

  const detail::FieldData* f_ = nullptr;
  std::uint32_t idx_ = 0;
};

/// A concrete realization of F_{p^k}. Cheap to copy (shared immutable state).
/// The modulus is the canonical irreducible of degree k over F_p: the one of
/// minimal canonical index, so every run and platform agrees on it.
class FieldSpec {
 public:
  /// Canonical modulus. Throws NotPrime / DegreeOutOfRange / Overflow.
  FieldSpec(std::uint64_t p, std::uint32_t k);
  /// Explicit modulus (k+1 residues, low-to-high, monic, irreducible).
  FieldSpec(std::uint64_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  /// Wraps an existing shared field model.
  explicit FieldSpec(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}

  std::uint64_t p() const { return data_->p(); }
  std::uint32_t k() const { return data_->k(); }
  std::uint64_t q() const { return data_->q(); }
  const std::vector<std::uint32_t>& modulus() const { return data_->modulus(); }

  FieldElement element(std::uint64_t canonical_index) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// Image of an integer under Z -> F_p (prime subfield); handy for literals.
  FieldElement from_int(std::int64_t v) const;
  FieldElement zero() const { return element(0); }
  FieldElement one() const { return element(1); }
  /// The class of x in F_p[x]/(modulus); requires k >= 2.
  FieldElement generator() const;

  std::uint32_t trace(FieldElement a) const;
  int qchar(FieldElement a) const;
  std::complex<double> add_char(FieldElement a) const;

  bool same_field(const FieldSpec& o) const {
    return data_ == o.data_ || data_->same_value(*o.data_);
  }

  std::string to_string() const;  // "F_q" or "F_q = F_p[x]/(...)"

  const detail::FieldData& data() const { return *data_; }
  std::shared_ptr<const detail::FieldData> shared_data() const { return data_; }

 private:
  std::shared_ptr<const detail::FieldData> data_;
};

/// Factory mirroring the FieldSpec(p, k) constructor.
FieldSpec make_field(std::uint64_t p, std::uint32_t k);

std::uint32_t trace(FieldElement a);
int qchar(FieldElement a);
std::complex<double> add_char(FieldElement a);

/// Lazy range over all q elements in canonical-index order.
class FieldRange {
 public:
  explicit FieldRange(const FieldSpec& spec) : data_(spec.shared_data()) {}

  class iterator {
   public:
    using value_type = FieldElement;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const detail::FieldData* f, std::uint64_t i) : f_(f), i_(i) {}
    FieldElement operator*() const;
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++i_;
      return t;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }

   private:
    const detail::FieldData* f_ = nullptr;
    std::uint64_t i_ = 0;
  };

  iterator begin() const { return iterator(data_.get(), 0); }
  iterator end() const { return iterator(data_.get(), data_->q()); }
  std::uint64_t size() const { return data_->q(); }

 private:
  std::shared_ptr<const detail::FieldData> data_;
};

FieldRange enumerate_field(const FieldSpec& spec);

namespace detail {
// Shared precondition check; returns the data of a (throws on mismatch).
const FieldData& require_same_field(FieldElement a, FieldElement b);
}  // namespace detail

inline const detail::FieldData& element_data(FieldElement e) {
  if (e.f_ == nullptr) raise(Errc::InvalidArgument, "default-constructed FieldElement");
  return *e.f_;
}

}  // namespace fqlab
