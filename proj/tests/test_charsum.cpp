#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "fqlab/charsum.hpp"
#include "fqlab/coeff_sets.hpp"
#include "fqlab/numeric.hpp"

using namespace fqlab;

namespace {

bool throws_code(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

std::vector<std::uint32_t> random_subset(std::uint64_t q, std::mt19937_64& rng) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 0; i < q; ++i) {
    if (rng() & 1) out.push_back(static_cast<std::uint32_t>(i));
  }
  if (out.empty()) out.push_back(static_cast<std::uint32_t>(rng() % q));
  return out;
}

}  // namespace

TEST_CASE("fourier_indicator examples") {
  FieldSpec f5 = make_field(5, 1);
  auto squares = squares_set(f5);
  Spectrum sp = fourier_indicator(f5, squares.elements());
  REQUIRE(sp.values.size() == 5);

  // value at zero is the density
  CHECK(std::abs(sp.values[0] - std::complex<double>(3.0 / 5.0, 0)) < 1e-12);

  // beta = 1: (1/5)(1 + e(1) + e(4)) with e(x) = exp(2 pi i x / 5)
  auto e = [](double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x / 5.0); };
  std::complex<double> expected = (e(0) + e(1) + e(4)) / 5.0;
  CHECK(std::abs(sp.values[1] - expected) < 1e-12);

  // the full field has a silent spectrum away from zero
  std::vector<std::uint32_t> whole(5);
  for (std::uint32_t i = 0; i < 5; ++i) whole[i] = i;
  Spectrum full = fourier_indicator(f5, whole);
  CHECK(std::abs(full.values[0] - std::complex<double>(1, 0)) < 1e-12);
  for (std::uint32_t b = 1; b < 5; ++b) CHECK(std::abs(full.values[b]) < 1e-12);
}

TEST_CASE("spectrum invariants") {
  std::mt19937_64 rng(71);
  for (std::uint64_t q : {7ull, 9ull, 64ull, 101ull, 243ull, 512ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    for (int rep = 0; rep < 100; ++rep) {
      auto set = random_subset(q, rng);
      Spectrum sp = fourier_indicator(f, set);
      // density at zero
      CHECK(std::abs(sp.values[0].real() -
                     static_cast<double>(set.size()) / static_cast<double>(q)) < 1e-12);
      CHECK(std::abs(sp.values[0].imag()) < 1e-12);
      // Parseval
      double power = 0;
      for (const auto& val : sp.values) power += std::norm(val);
      CHECK(std::abs(power - static_cast<double>(set.size()) / static_cast<double>(q)) <
            1e-10);
    }
  }
}

TEST_CASE("singleton spectra have flat magnitude 1/q") {
  FieldSpec f9 = make_field(3, 2);
  std::vector<std::uint32_t> single{5};
  Spectrum sp = fourier_indicator(f9, single);
  for (const auto& val : sp.values) CHECK(std::abs(std::abs(val) - 1.0 / 9.0) < 1e-14);
}

TEST_CASE("translation covariance") {
  std::mt19937_64 rng(77);
  for (std::uint64_t q : {7ull, 9ull, 25ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    auto set = random_subset(q, rng);
    const std::uint32_t c = static_cast<std::uint32_t>(1 + rng() % (q - 1));
    std::vector<std::uint32_t> shifted;
    for (std::uint32_t a : set) shifted.push_back(f.data().add(a, c));
    std::sort(shifted.begin(), shifted.end());

    Spectrum base = fourier_indicator(f, set);
    Spectrum moved = fourier_indicator(f, shifted);
    for (std::uint64_t b = 0; b < q; ++b) {
      // shifting by c multiplies the transform by the character at c*beta
      std::complex<double> factor =
          f.add_char(f.element(f.data().mul(c, static_cast<std::uint32_t>(b))));
      CHECK(std::abs(moved.values[b] - factor * base.values[b]) < 1e-12);
      CHECK(std::abs(std::abs(moved.values[b]) - std::abs(base.values[b])) < 1e-12);
    }
    CHECK(std::abs(irregularity(f, set) - irregularity(f, shifted)) < 1e-9);
  }
}

TEST_CASE("irregularity") {
  FieldSpec f7 = make_field(7, 1);
  std::vector<std::uint32_t> whole(7);
  for (std::uint32_t i = 0; i < 7; ++i) whole[i] = i;
  CHECK(irregularity(f7, whole) == doctest::Approx(1.0).epsilon(1e-12));

  FieldSpec f5 = make_field(5, 1);
  auto squares = squares_set(f5);
  const double irr = irregularity(f5, squares.elements());
  CHECK(irr >= std::sqrt(5.0) - 1.0);

  // reference value by a direct 5-term computation
  Spectrum sp = fourier_indicator(f5, squares.elements());
  double direct = 0;
  for (const auto& val : sp.values) direct += std::abs(val);
  direct *= 5.0 / 3.0;
  CHECK(irr == doctest::Approx(direct).epsilon(1e-12));

  // nonempty sets are never below 1 (the zero frequency contributes 1)
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto set = random_subset(25, rng);
    FieldSpec f25 = make_field(5, 2);
    CHECK(irregularity(f25, set) >= 1.0 - 1e-12);
  }

  CHECK(throws_code(Errc::EmptySet, [&] { irregularity(f5, {}); }));
}

TEST_CASE("product irregularity identity") {
  // direct two-dimensional summation against the multiplicative route
  for (std::uint64_t q : {9ull, 25ull, 49ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    auto squares = squares_set(f);
    const double direct = irregularity_2d_direct(f, squares.elements());
    const double product = irregularity_power(f, squares.elements(), 2);
    CHECK(std::abs(direct - product) < 1e-9);
  }
  // also on an arbitrary set
  std::mt19937_64 rng(11);
  FieldSpec f13 = make_field(13, 1);
  auto set = random_subset(13, rng);
  CHECK(std::abs(irregularity_2d_direct(f13, set) - irregularity_power(f13, set, 2)) < 1e-9);
}

TEST_CASE("gauss sums") {
  FieldSpec f5 = make_field(5, 1);
  CHECK(std::abs(gauss_sum(f5, f5.zero())) < 1e-10);
  CHECK(std::abs(std::abs(gauss_sum(f5, f5.one())) - std::sqrt(5.0)) < 1e-9);

  FieldSpec f7 = make_field(7, 1);
  CHECK(std::abs(std::abs(gauss_sum(f7, f7.from_int(3))) - std::sqrt(7.0)) < 1e-9);

  CHECK(throws_code(Errc::EvenCharacteristic,
                    [] { gauss_sum(make_field(2, 3), make_field(2, 3).zero()); }));

  for (std::uint64_t q : prime_powers_upto(49, true)) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    const double sqrt_q = std::sqrt(static_cast<double>(q));
    for (std::uint64_t b = 1; b < q; ++b) {
      CHECK(std::abs(std::abs(gauss_sum(f, f.element(b))) - sqrt_q) < 1e-9);
    }
  }
}

TEST_CASE("squares bound report") {
  std::vector<std::uint64_t> g5{5};
  auto rows = squares_bound_report(g5);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].pass);
  CHECK(rows[0].margin > 0);

  std::vector<std::uint64_t> gpp{9, 25, 49};
  for (const auto& row : squares_bound_report(gpp)) {
    CHECK(row.pass);
    CHECK(row.margin > 0);
    CHECK(row.min_offzero >= row.coeff_bound - 1e-9);
  }

  std::vector<std::uint64_t> bad_even{8};
  CHECK(throws_code(Errc::EvenCharacteristic, [&] { squares_bound_report(bad_even); }));
  std::vector<std::uint64_t> bad_q{15};
  CHECK(throws_code(Errc::NotPrimePower, [&] { squares_bound_report(bad_q); }));
}
