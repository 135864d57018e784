#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fqlab/field.hpp"

namespace fqlab {

/// Fourier coefficients of an indicator function: values[beta] = 1hat_S(beta)
/// = (1/q) sum_{a in S} e_q(a*beta), indexed by the canonical index of beta.
struct Spectrum {
  FieldSpec field;
  std::vector<std::complex<double>> values;
};

/// Direct O(q * #S) transform of the indicator of S (canonical indices).
Spectrum fourier_indicator(const FieldSpec& spec, std::span<const std::uint32_t> set_indices);

/// irreg(S) = (q / #S) * sum_beta |1hat_S(beta)|. S nonempty.
double irregularity(const FieldSpec& spec, std::span<const std::uint32_t> set_indices);

/// irreg(S^n) computed through the product identity irreg(S)^n.
double irregularity_power(const FieldSpec& spec, std::span<const std::uint32_t> set_indices,
                          std::uint32_t n);

/// irreg(S x S) by direct summation over the two-dimensional frequency grid;
/// the independent route used to validate the product identity (O(q^2 #S^2)).
double irregularity_2d_direct(const FieldSpec& spec, std::span<const std::uint32_t> set_indices);

/// sum_{a != 0} qchar(a) e_q(a*beta); magnitude sqrt(q) for beta != 0. Odd q.
std::complex<double> gauss_sum(const FieldSpec& spec, FieldElement beta);

struct SquaresBoundRow {
  std::uint64_t q = 0;
  double irreg = 0.0;
  double bound = 0.0;        // sqrt(q) - 1
  double margin = 0.0;       // irreg - bound
  double min_offzero = 0.0;  // min over beta != 0 of |1hat_S(beta)|
  double coeff_bound = 0.0;  // (sqrt(q) - 1) / (2q)
  bool pass = false;
};

/// Per-q irregularity of the squares set against the sqrt(q)-1 lower bound,
/// including the per-frequency floor on |1hat_S(beta)|. Grid entries must be
/// odd prime powers.
std::vector<SquaresBoundRow> squares_bound_report(std::span<const std::uint64_t> q_grid);

}  // namespace fqlab
