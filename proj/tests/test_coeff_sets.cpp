#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

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

// brute-force image via direct evaluation into a std::set
std::set<std::uint32_t> brute_image(const Poly& f) {
  std::set<std::uint32_t> out;
  for (std::uint64_t a = 0; a < f.field().q(); ++a) {
    out.insert(f.eval_index(static_cast<std::uint32_t>(a)));
  }
  return out;
}

Poly singleton_generator(const FieldSpec& f, std::int64_t alpha) {
  // x^q - x + alpha vanishes identically except for the constant
  std::vector<std::uint32_t> c(f.q() + 1, 0);
  c[0] = f.from_int(alpha).index();
  c[1] = f.from_int(-1).index();
  c[f.q()] = 1;
  return Poly(f, std::move(c));
}

}  // namespace

TEST_CASE("image_set examples") {
  FieldSpec f7 = make_field(7, 1);
  CHECK(image_set(Poly::x(f7)) == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 6});
  CHECK(image_set(Poly::from_ints(f7, {0, 0, 1})) == std::vector<std::uint32_t>{0, 1, 2, 4});

  // x^q - x + alpha has the singleton image {alpha}
  CHECK(image_set(singleton_generator(f7, 3)) == std::vector<std::uint32_t>{3});
  FieldSpec f9 = make_field(3, 2);
  CHECK(image_set(singleton_generator(f9, 1)) == std::vector<std::uint32_t>{1});

  CHECK(throws_code(Errc::ConstantPolynomial, [&] { image_set(Poly::one(f7)); }));
}

TEST_CASE("squares_set") {
  FieldSpec f7 = make_field(7, 1);
  PiSet s7 = squares_set(f7);
  CHECK(s7.elements() == std::vector<std::uint32_t>{0, 1, 2, 4});
  CHECK(s7.size() == 4);
  CHECK(s7.pi_complexity_bound() == 2);

  FieldSpec f9 = make_field(3, 2);
  CHECK(squares_set(f9).size() == 5);

  // char 2: squaring is a bijection
  FieldSpec f8 = make_field(2, 3);
  CHECK(squares_set(f8).size() == 8);

  for (std::uint64_t q : prime_powers_upto(361, true)) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    CHECK(squares_set(f).size() == (q + 1) / 2);
  }
}

TEST_CASE("intersect_images examples") {
  FieldSpec f7 = make_field(7, 1);
  PiSet only_squares = intersect_images({Poly::from_ints(f7, {0, 0, 1})});
  CHECK(only_squares.elements() == squares_set(f7).elements());

  // q = 3 mod 4: x^2 and -x^2 images meet only in zero
  PiSet meet7 =
      intersect_images({Poly::from_ints(f7, {0, 0, 1}), Poly::from_ints(f7, {0, 0, -1})});
  CHECK(meet7.elements() == std::vector<std::uint32_t>{0});

  // q = 1 mod 4: -1 is a square, the images coincide
  FieldSpec f13 = make_field(13, 1);
  PiSet meet13 =
      intersect_images({Poly::from_ints(f13, {0, 0, 1}), Poly::from_ints(f13, {0, 0, -1})});
  CHECK(meet13.elements() == squares_set(f13).elements());
  CHECK(meet13.size() == 7);

  CHECK(throws_code(Errc::EmptyGeneratorList, [] { intersect_images({}); }));
  CHECK(throws_code(Errc::FieldMismatch, [&] {
    intersect_images({Poly::x(f7), Poly::x(f13)});
  }));
  CHECK(throws_code(Errc::ConstantPolynomial, [&] {
    intersect_images({Poly::x(f7), Poly::one(f7)});
  }));
}

TEST_CASE("union_sets") {
  FieldSpec f7 = make_field(7, 1);
  ComplexSet single = union_sets({squares_set(f7)});
  CHECK(single.elements() == squares_set(f7).elements());
  CHECK(single.complexity_bound() == 2);

  // squares plus one singleton
  ComplexSet with_extra = union_sets(
      {squares_set(f7), intersect_images({singleton_generator(f7, 3)})});
  CHECK(with_extra.elements() == std::vector<std::uint32_t>{0, 1, 2, 3, 4});

  // covering every element by singletons recovers the whole field
  std::vector<PiSet> parts;
  for (std::int64_t a = 0; a < 7; ++a) {
    parts.push_back(intersect_images({singleton_generator(f7, a)}));
  }
  ComplexSet whole = union_sets(std::move(parts));
  CHECK(whole.size() == 7);
  CHECK(whole.complexity_bound() >= 7);

  CHECK(throws_code(Errc::EmptyPartsList, [] { union_sets({}); }));
}

TEST_CASE("materialized sets are sorted and duplicate-free") {
  std::mt19937_64 rng(3);
  for (std::uint64_t q : {7ull, 9ull, 25ull, 121ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    for (int t = 0; t < 20; ++t) {
      std::uint32_t deg = 1 + rng() % 5;
      std::vector<std::uint32_t> c(deg + 1);
      for (std::uint32_t i = 0; i <= deg; ++i) c[i] = static_cast<std::uint32_t>(rng() % q);
      if (c[deg] == 0) c[deg] = 1;
      auto img = image_set(Poly(f, std::move(c)));
      for (std::size_t i = 1; i < img.size(); ++i) CHECK(img[i - 1] < img[i]);
      CHECK(img.back() < q);
    }
  }
}

TEST_CASE("complex sets match the brute-force recomputation") {
  std::mt19937_64 rng(29);
  for (std::uint64_t q : {4ull, 9ull, 49ull, 121ull}) {
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    for (int t = 0; t < 15; ++t) {
      const std::size_t num_parts = 1 + rng() % 3;
      std::vector<PiSet> parts;
      std::set<std::uint32_t> expected_union;
      for (std::size_t pi = 0; pi < num_parts; ++pi) {
        const std::size_t num_gens = 1 + rng() % 3;
        std::vector<Poly> gens;
        std::set<std::uint32_t> expected;
        bool first = true;
        for (std::size_t g = 0; g < num_gens; ++g) {
          std::uint32_t deg = 1 + rng() % 4;
          std::vector<std::uint32_t> c(deg + 1);
          for (std::uint32_t i = 0; i <= deg; ++i) c[i] = static_cast<std::uint32_t>(rng() % q);
          if (c[deg] == 0) c[deg] = 1;
          Poly poly(f, std::move(c));
          auto img = brute_image(poly);
          if (first) {
            expected = img;
            first = false;
          } else {
            std::set<std::uint32_t> meet;
            for (std::uint32_t v : expected) {
              if (img.count(v)) meet.insert(v);
            }
            expected = std::move(meet);
          }
          gens.push_back(std::move(poly));
        }
        PiSet part = intersect_images(std::move(gens));
        CHECK(std::set<std::uint32_t>(part.elements().begin(), part.elements().end()) ==
              expected);
        expected_union.insert(expected.begin(), expected.end());
        parts.push_back(std::move(part));
      }
      ComplexSet u = union_sets(std::move(parts));
      CHECK(std::set<std::uint32_t>(u.elements().begin(), u.elements().end()) ==
            expected_union);
    }
  }
}

TEST_CASE("fiber-size lower bound on images") {
  std::mt19937_64 rng(59);
  auto powers = prime_powers_upto(1009, false);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t q = powers[rng() % powers.size()];
    auto pk = as_prime_power(q);
    FieldSpec f(pk->p, pk->k);
    std::uint32_t deg = 1 + rng() % 6;
    std::vector<std::uint32_t> c(deg + 1);
    for (std::uint32_t i = 0; i <= deg; ++i) c[i] = static_cast<std::uint32_t>(rng() % q);
    if (c[deg] == 0) c[deg] = 1;
    Poly poly(f, std::move(c));
    auto img = image_set(poly);
    CHECK(img.size() * static_cast<std::uint64_t>(poly.degree()) >= q);
  }
}

TEST_CASE("separability normalization never changes the image") {
  FieldSpec f9 = make_field(3, 2);
  // x^3 + 1 has vanishing derivative; the normal form is x + 1
  Poly g = Poly::from_ints(f9, {1, 0, 0, 1});
  Poly norm = separability_normalize(g);
  CHECK(norm == Poly::from_ints(f9, {1, 1}));
  CHECK(image_set(g) == image_set(norm));
  CHECK_FALSE(norm.derivative().is_zero());

  // x^9 + x^3 = g(x^3) with g = x^3 + x already separable
  FieldSpec f3 = make_field(3, 1);
  std::vector<std::int64_t> c(10, 0);
  c[9] = 1;
  c[3] = 1;
  Poly h = Poly::from_ints(f3, c);
  Poly hn = separability_normalize(h);
  CHECK(hn == Poly::from_ints(f3, {0, 1, 0, 1}));
  CHECK_FALSE(hn.derivative().is_zero());
  CHECK(image_set(h) == image_set(hn));

  // already separable: unchanged
  Poly s = Poly::from_ints(f9, {2, 1, 1});
  CHECK(separability_normalize(s) == s);
}

TEST_CASE("dichotomy scan") {
  DichotomyThresholds thresholds;

  SUBCASE("squares recipe is linear everywhere with ratio -> 1/2") {
    PiRecipe recipe{{0, 0, 1}};
    std::vector<std::uint64_t> grid;
    for (std::uint64_t p : primes_upto(97)) {
      if (p > 2) grid.push_back(p);
    }
    auto rows = dichotomy_scan(recipe, grid, thresholds);
    REQUIRE(rows.size() == grid.size());
    for (const auto& row : rows) {
      CHECK(row.flag == "linear");
      CHECK(row.set_size == (row.q + 1) / 2);
    }
  }

  SUBCASE("squares-meet-negated-squares alternates with q mod 4") {
    PiRecipe recipe{{0, 0, 1}, {0, 0, -1}};
    std::vector<std::uint64_t> grid;
    for (std::uint64_t p : primes_upto(101)) {
      if (p > 2) grid.push_back(p);
    }
    auto rows = dichotomy_scan(recipe, grid, thresholds);
    for (const auto& row : rows) {
      if (row.q % 4 == 3) {
        CHECK(row.flag == "small");
        CHECK(row.set_size == 1);
      } else {
        CHECK(row.flag == "linear");
        CHECK(row.set_size == (row.q + 1) / 2);
      }
    }
  }

  SUBCASE("identity recipe has ratio one") {
    PiRecipe recipe{{0, 1}};
    std::vector<std::uint64_t> grid{4, 5, 8, 9, 27};
    for (const auto& row : dichotomy_scan(recipe, grid, thresholds)) {
      CHECK(row.ratio == 1.0);
      CHECK(row.flag == "linear");
    }
  }

  SUBCASE("construction errors propagate") {
    PiRecipe degenerate{{1, 3}};  // reduces to the constant 1 mod 3
    std::vector<std::uint64_t> grid{3};
    CHECK(throws_code(Errc::ConstantPolynomial,
                      [&] { dichotomy_scan(degenerate, grid, thresholds); }));
    std::vector<std::uint64_t> bad_grid{6};
    CHECK(throws_code(Errc::NotPrimePower,
                      [&] { dichotomy_scan(PiRecipe{{0, 1}}, bad_grid, thresholds); }));
  }
}

TEST_CASE("materialization cap") {
  // fields above 2^24 elements construct fine but refuse to materialize sets
  FieldSpec big = make_field(2, 25);
  CHECK(throws_code(Errc::Overflow, [&] { squares_set(big); }));
  CHECK(throws_code(Errc::Overflow, [&] { image_set(Poly::x(big)); }));
}

TEST_CASE("build_set recipes") {
  FieldSpec f13 = make_field(13, 1);
  CHECK(build_set(SetRecipe::uniform(), f13)->size() == 13);
  CHECK(build_set(SetRecipe::squares(), f13)->size() == 7);
  CHECK(build_set(SetRecipe::squares(), f13)->label() == "squares");

  SetRecipe custom;
  custom.parts = {{{0, 0, 1}}, {{0, 0, -1}}};  // squares UNION negated squares
  auto s = build_set(custom, f13);
  CHECK(s->size() == 7);  // -1 is a square mod 13, so the parts coincide

  SetRecipe bad;
  bad.preset = "nope";
  CHECK(throws_code(Errc::InvalidArgument, [&] { build_set(bad, f13); }));
}
