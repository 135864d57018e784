#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>

#include "fqlab/field.hpp"
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

}  // namespace

TEST_CASE("canonical moduli") {
  FieldSpec f5 = make_field(5, 1);
  CHECK(f5.q() == 5);
  CHECK(f5.modulus() == std::vector<std::uint32_t>{0, 1});  // x

  FieldSpec f9 = make_field(3, 2);
  CHECK(f9.q() == 9);
  CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1

  FieldSpec f8 = make_field(2, 3);
  CHECK(f8.q() == 8);
  CHECK(f8.modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3 + x + 1

  // determinism across constructions
  CHECK(make_field(3, 2).modulus() == f9.modulus());
  CHECK(make_field(3, 2).same_field(f9));
}

TEST_CASE("canonical modulus is the first irreducible in index order") {
  // exhaust all monic quadratics over F_3: a quadratic is irreducible exactly
  // when it has no root
  FieldSpec f3 = make_field(3, 1);
  std::uint64_t first_index = 0;
  bool found = false;
  for (std::uint64_t idx = 0; idx < 9 && !found; ++idx) {
    std::uint32_t c0 = idx % 3, c1 = static_cast<std::uint32_t>(idx / 3);
    bool has_root = false;
    for (std::uint32_t r = 0; r < 3; ++r) {
      std::uint32_t v = (r * r + c1 * r + c0) % 3;
      if (v == 0) has_root = true;
    }
    if (!has_root) {
      first_index = idx;
      found = true;
    }
  }
  REQUIRE(found);
  CHECK(first_index == 1);  // x^2 + 1 has low part (1, 0), index 1
  FieldSpec f9 = make_field(3, 2);
  CHECK(f9.modulus()[0] == first_index % 3);
  CHECK(f9.modulus()[1] == first_index / 3);
}

TEST_CASE("construction errors") {
  CHECK(throws_code(Errc::NotPrime, [] { make_field(4, 1); }));
  CHECK(throws_code(Errc::NotPrime, [] { make_field(1, 1); }));
  CHECK(throws_code(Errc::DegreeOutOfRange, [] { make_field(5, 0); }));
  CHECK(throws_code(Errc::Overflow, [] { make_field(2, 32); }));
  CHECK(throws_code(Errc::Overflow, [] { make_field(46349, 2); }));
  // explicit reducible modulus is rejected: x^2 over F_3
  CHECK(throws_code(Errc::InvalidArgument, [] { FieldSpec(3, 2, {0, 0, 1}); }));
}

TEST_CASE("arithmetic examples") {
  FieldSpec f7 = make_field(7, 1);
  CHECK(f7.from_int(3) + f7.from_int(5) == f7.from_int(1));

  FieldSpec f9 = make_field(3, 2);
  FieldElement xbar = f9.generator();
  CHECK(xbar * xbar == f9.from_int(-1));
  CHECK(xbar * xbar == f9.from_int(2));

  FieldSpec f5 = make_field(5, 1);
  CHECK(inv(f5.from_int(2)) == f5.from_int(3));

  CHECK(throws_code(Errc::DivisionByZero, [&] { inv(f5.zero()); }));
  CHECK(throws_code(Errc::FieldMismatch, [&] { (void)(f5.one() + f7.one()); }));
}

TEST_CASE("pow semantics") {
  FieldSpec f7 = make_field(7, 1);
  CHECK(pow(f7.zero(), 0) == f7.one());
  CHECK(pow(f7.zero(), 5) == f7.zero());
  CHECK(throws_code(Errc::DivisionByZero, [&] { pow(f7.zero(), -1); }));
  CHECK(pow(f7.from_int(3), -1) == inv(f7.from_int(3)));
  // exponent reduction mod q-1 for nonzero base
  CHECK(pow(f7.from_int(3), 6) == f7.one());
  CHECK(pow(f7.from_int(3), 6'000'000'000'000LL + 2) == f7.from_int(2));
}

TEST_CASE("trace") {
  FieldSpec f7 = make_field(7, 1);
  for (std::uint32_t c = 0; c < 7; ++c) CHECK(trace(f7.element(c)) == c);

  FieldSpec f9 = make_field(3, 2);
  CHECK(trace(f9.generator()) == 0);
  CHECK(trace(f9.one()) == 2);

  // F_p-linearity and surjectivity
  std::mt19937_64 rng(11);
  FieldSpec f27 = make_field(3, 3);
  std::set<std::uint32_t> image;
  for (std::uint64_t i = 0; i < f27.q(); ++i) image.insert(trace(f27.element(i)));
  CHECK(image == std::set<std::uint32_t>{0, 1, 2});
  for (int t = 0; t < 500; ++t) {
    FieldElement a = f27.element(rng() % 27), b = f27.element(rng() % 27);
    CHECK((trace(a) + trace(b)) % 3 == trace(a + b));
  }
}

TEST_CASE("quadratic character") {
  FieldSpec f5 = make_field(5, 1);
  CHECK(qchar(f5.zero()) == 0);
  CHECK(qchar(f5.from_int(4)) == 1);

  FieldSpec f7 = make_field(7, 1);
  CHECK(qchar(f7.from_int(3)) == -1);

  FieldSpec f8 = make_field(2, 3);
  CHECK(throws_code(Errc::EvenCharacteristic, [&] { qchar(f8.one()); }));

  std::mt19937_64 rng(7);
  for (std::uint64_t q : {9ull, 27ull, 121ull, 10007ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    long sum = 0, plus = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
      sum += f.qchar(f.element(i));
      plus += f.qchar(f.element(i)) == 1;
    }
    CHECK(sum == 0);
    CHECK(plus == static_cast<long>((q - 1) / 2));
    for (int t = 0; t < 300; ++t) {
      FieldElement a = f.element(1 + rng() % (q - 1));
      FieldElement b = f.element(1 + rng() % (q - 1));
      CHECK(f.qchar(a * b) == f.qchar(a) * f.qchar(b));
    }
  }

  // beyond the lookup-table range the power route is used; squares still read +1
  FieldSpec big = make_field(1'000'003, 1);
  for (int t = 0; t < 100; ++t) {
    FieldElement a = big.element(1 + rng() % (big.q() - 1));
    CHECK(big.qchar(a * a) == 1);
  }
}

TEST_CASE("additive character") {
  FieldSpec f5 = make_field(5, 1);
  CHECK(add_char(f5.zero()) == std::complex<double>{1.0, 0.0});
  const std::complex<double> expected = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
  CHECK(std::abs(add_char(f5.one()) - expected) < 1e-15);

  for (std::uint64_t q : {5ull, 8ull, 9ull, 49ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    std::complex<double> sum{0, 0};
    for (std::uint64_t i = 0; i < q; ++i) {
      CHECK(std::abs(std::abs(f.add_char(f.element(i))) - 1.0) < 1e-15);
      sum += f.add_char(f.element(i));
    }
    CHECK(std::abs(sum) < 1e-10);

    // sum over alpha of e(alpha*beta): q at beta = 0, zero otherwise
    std::complex<double> at_zero{0, 0};
    for (std::uint64_t a = 0; a < q; ++a) {
      at_zero += f.add_char(f.element(f.data().mul(static_cast<std::uint32_t>(a), 0)));
    }
    CHECK(std::abs(at_zero - std::complex<double>(static_cast<double>(q), 0)) < 1e-10);
    std::mt19937_64 rng(q);
    for (int t = 0; t < 5; ++t) {
      std::uint32_t beta = static_cast<std::uint32_t>(1 + rng() % (q - 1));
      std::complex<double> s{0, 0};
      for (std::uint64_t a = 0; a < q; ++a) {
        s += f.add_char(f.element(f.data().mul(static_cast<std::uint32_t>(a), beta)));
      }
      CHECK(std::abs(s) < 1e-10);
    }

    std::mt19937_64 rng2(q + 1);
    for (int t = 0; t < 300; ++t) {
      FieldElement a = f.element(rng2() % q), b = f.element(rng2() % q);
      CHECK(std::abs(f.add_char(a + b) - f.add_char(a) * f.add_char(b)) < 1e-12);
    }
  }
}

TEST_CASE("enumerate_field") {
  FieldSpec f3 = make_field(3, 1);
  std::vector<std::uint64_t> seen;
  for (FieldElement e : enumerate_field(f3)) seen.push_back(e.index());
  CHECK(seen == std::vector<std::uint64_t>{0, 1, 2});

  FieldSpec f9 = make_field(3, 2);
  // index of c0 + c1*xbar is c0 + 3*c1
  std::uint32_t coords[2] = {1, 2};
  CHECK(f9.from_coeffs(coords).index() == 7);
  std::size_t count = 0;
  std::set<std::uint64_t> distinct;
  for (FieldElement e : enumerate_field(f9)) {
    ++count;
    distinct.insert(e.index());
    CHECK(e.coeffs().size() == 2);
  }
  CHECK(count == 9);
  CHECK(distinct.size() == 9);

  FieldSpec f25 = make_field(5, 2);
  std::set<std::uint64_t> s25;
  for (FieldElement e : enumerate_field(f25)) s25.insert(e.index());
  CHECK(s25.size() == 25);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(42);
  for (std::uint64_t q : {2ull, 3ull, 8ull, 9ull, 25ull, 128ull, 343ull, 65537ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    for (int t = 0; t < 400; ++t) {
      FieldElement a = f.element(rng() % q), b = f.element(rng() % q), c = f.element(rng() % q);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + b == b + a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == f.zero());
      if (!a.is_zero()) CHECK(a * inv(a) == f.one());
      CHECK(pow(a, static_cast<std::int64_t>(q)) == a);  // Fermat in F_q
      // Frobenius is a ring endomorphism
      const auto pe = static_cast<std::int64_t>(f.p());
      CHECK(pow(a + b, pe) == pow(a, pe) + pow(b, pe));
      CHECK(pow(a * b, pe) == pow(a, pe) * pow(b, pe));
    }
  }
}

TEST_CASE("word-size boundary") {
  // largest supported prime field
  FieldSpec big = make_field(2147483647, 1);
  FieldElement m = big.from_int(-1);
  CHECK((m * m) == big.one());
  CHECK(inv(m) == m);

  // q = 2^31 as an extension field
  FieldSpec f231 = make_field(2, 31);
  CHECK(f231.q() == std::uint64_t(1) << 31);
  FieldElement a = f231.element(123456789);
  CHECK(a + a == f231.zero());
  CHECK(pow(a, 4) == (a * a) * (a * a));
  std::size_t taken = 0;
  for (auto it = enumerate_field(f231).begin(); taken < 4; ++it, ++taken) {
    CHECK((*it).index() == taken);
  }
}
