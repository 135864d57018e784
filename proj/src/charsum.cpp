#include "fqlab/charsum.hpp"

#include <cmath>

#include "fqlab/coeff_sets.hpp"
#include "fqlab/numeric.hpp"

namespace fqlab {

namespace {

constexpr double kTol = 1e-9;

std::vector<std::complex<double>> echar_table(const detail::FieldData& f) {
  std::vector<std::complex<double>> e(f.q());
  for (std::uint64_t i = 0; i < f.q(); ++i) e[i] = f.add_char(static_cast<std::uint32_t>(i));
  return e;
}

}  // namespace

Spectrum fourier_indicator(const FieldSpec& spec, std::span<const std::uint32_t> set_indices) {
  const detail::FieldData& f = spec.data();
  const auto e = echar_table(f);
  Spectrum spectrum{spec, std::vector<std::complex<double>>(f.q())};
  const double inv_q = 1.0 / static_cast<double>(f.q());
  for (std::uint64_t beta = 0; beta < f.q(); ++beta) {
    std::complex<double> acc{0.0, 0.0};
    const std::uint32_t b = static_cast<std::uint32_t>(beta);
    for (std::uint32_t alpha : set_indices) acc += e[f.mul(alpha, b)];
    spectrum.values[beta] = acc * inv_q;
  }
  return spectrum;
}

double irregularity(const FieldSpec& spec, std::span<const std::uint32_t> set_indices) {
  if (set_indices.empty()) raise(Errc::EmptySet, "irregularity of the empty set");
  Spectrum spectrum = fourier_indicator(spec, set_indices);
  double sum = 0.0;
  for (const auto& v : spectrum.values) sum += std::abs(v);
  return sum * static_cast<double>(spec.q()) / static_cast<double>(set_indices.size());
}

double irregularity_power(const FieldSpec& spec, std::span<const std::uint32_t> set_indices,
                          std::uint32_t n) {
  return std::pow(irregularity(spec, set_indices), static_cast<double>(n));
}

double irregularity_2d_direct(const FieldSpec& spec, std::span<const std::uint32_t> set_indices) {
  if (set_indices.empty()) raise(Errc::EmptySet, "irregularity of the empty set");
  const detail::FieldData& f = spec.data();
  const auto e = echar_table(f);
  const double q = static_cast<double>(f.q());
  const double inv_q2 = 1.0 / (q * q);
  double sum = 0.0;
  std::vector<std::uint32_t> m1(set_indices.size());
  for (std::uint64_t b1 = 0; b1 < f.q(); ++b1) {
    for (std::size_t i = 0; i < set_indices.size(); ++i) {
      m1[i] = f.mul(set_indices[i], static_cast<std::uint32_t>(b1));
    }
    for (std::uint64_t b2 = 0; b2 < f.q(); ++b2) {
      std::complex<double> acc{0.0, 0.0};
      const std::uint32_t b = static_cast<std::uint32_t>(b2);
      for (std::size_t i = 0; i < set_indices.size(); ++i) {
        for (std::uint32_t a2 : set_indices) {
          acc += e[f.add(m1[i], f.mul(a2, b))];
        }
      }
      sum += std::abs(acc * inv_q2);
    }
  }
  const double size = static_cast<double>(set_indices.size());
  return sum * q * q / (size * size);
}

std::complex<double> gauss_sum(const FieldSpec& spec, FieldElement beta) {
  const detail::FieldData& f = spec.data();
  if (f.q() % 2 == 0) raise(Errc::EvenCharacteristic, "gauss_sum needs odd q");
  const std::uint32_t b = beta.index();
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t a = 1; a < f.q(); ++a) {
    const std::uint32_t ai = static_cast<std::uint32_t>(a);
    acc += static_cast<double>(f.qchar(ai)) * f.add_char(f.mul(ai, b));
  }
  return acc;
}

std::vector<SquaresBoundRow> squares_bound_report(std::span<const std::uint64_t> q_grid) {
  std::vector<SquaresBoundRow> rows;
  rows.reserve(q_grid.size());
  for (std::uint64_t q : q_grid) {
    auto pk = as_prime_power(q);
    if (!pk) raise(Errc::NotPrimePower, "grid value " + std::to_string(q) + " is not a prime power");
    if (q % 2 == 0) raise(Errc::EvenCharacteristic, "squares bound needs odd q");
    FieldSpec spec(pk->p, pk->k);
    PiSet squares = squares_set(spec);
    Spectrum spectrum = fourier_indicator(spec, squares.elements());

    SquaresBoundRow row;
    row.q = q;
    double sum = 0.0;
    row.min_offzero = 2.0;  // |1hat| <= 1 always
    for (std::uint64_t beta = 0; beta < q; ++beta) {
      const double mag = std::abs(spectrum.values[beta]);
      sum += mag;
      if (beta != 0) row.min_offzero = std::min(row.min_offzero, mag);
    }
    row.irreg = sum * static_cast<double>(q) / static_cast<double>(squares.size());
    const double sqrt_q = std::sqrt(static_cast<double>(q));
    row.bound = sqrt_q - 1.0;
    row.margin = row.irreg - row.bound;
    row.coeff_bound = (sqrt_q - 1.0) / (2.0 * static_cast<double>(q));
    row.pass = row.irreg >= row.bound - kTol && row.min_offzero >= row.coeff_bound - kTol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fqlab
