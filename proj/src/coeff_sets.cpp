#include "fqlab/coeff_sets.hpp"

#include <algorithm>
#include <sstream>

#include "fqlab/numeric.hpp"

namespace fqlab {

namespace {

constexpr std::uint64_t kMaterializeCap = std::uint64_t(1) << 24;

void check_materializable(const FieldSpec& spec) {
  if (spec.q() > kMaterializeCap) {
    raise(Errc::Overflow, "set materialization is capped at q <= 2^24");
  }
}

// Image as a membership bitmap of length q.
std::vector<std::uint8_t> image_bitmap(const Poly& f) {
  const auto& fd = f.field().data();
  std::vector<std::uint8_t> in(fd.q(), 0);
  for (std::uint64_t a = 0; a < fd.q(); ++a) {
    in[f.eval_index(static_cast<std::uint32_t>(a))] = 1;
  }
  return in;
}

std::string default_pi_label(const std::vector<Poly>& gens) {
  std::ostringstream os;
  os << "pi[";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << ", ";
    os << gens[i].to_string();
  }
  os << "]";
  return os.str();
}

}  // namespace

std::vector<std::uint32_t> image_set(const Poly& f) {
  if (f.degree() < 1) raise(Errc::ConstantPolynomial, "image_set needs deg f >= 1");
  check_materializable(f.field());
  auto in = image_bitmap(f);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < in.size(); ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;  // ascending index order by construction
}

PiSet::PiSet(FieldSpec f, std::vector<Poly> gens, std::vector<std::uint32_t> elems,
             std::uint32_t bound, std::string label)
    : field_(std::move(f)),
      generators_(std::move(gens)),
      elements_(std::move(elems)),
      bound_(bound),
      label_(std::move(label)) {}

bool PiSet::contains_index(std::uint32_t idx) const {
  return std::binary_search(elements_.begin(), elements_.end(), idx);
}

PiSet intersect_images(std::vector<Poly> generators, std::string label) {
  if (generators.empty()) raise(Errc::EmptyGeneratorList, "at least one generator required");
  const FieldSpec field = generators.front().field();
  std::uint32_t bound = static_cast<std::uint32_t>(generators.size());
  for (const Poly& g : generators) {
    if (!field.same_field(g.field())) raise(Errc::FieldMismatch, "generators over different fields");
    if (g.degree() < 1) raise(Errc::ConstantPolynomial, "generators must be nonconstant");
    bound = std::max(bound, static_cast<std::uint32_t>(g.degree()));
  }
  check_materializable(field);

  std::vector<std::uint8_t> mask = image_bitmap(generators.front());
  for (std::size_t j = 1; j < generators.size(); ++j) {
    auto im = image_bitmap(generators[j]);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] &= im[i];
  }
  std::vector<std::uint32_t> elems;
  for (std::uint32_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) elems.push_back(i);
  }
  if (label.empty()) label = default_pi_label(generators);
  return PiSet(field, std::move(generators), std::move(elems), bound, std::move(label));
}

PiSet squares_set(const FieldSpec& spec) {
  return intersect_images({Poly(spec, {0, 0, 1})}, "squares");
}

ComplexSet::ComplexSet(FieldSpec f, std::vector<PiSet> parts, std::vector<std::uint32_t> elems,
                       std::uint32_t bound, std::string label)
    : field_(std::move(f)),
      parts_(std::move(parts)),
      elements_(std::move(elems)),
      bound_(bound),
      label_(std::move(label)) {}

bool ComplexSet::contains_index(std::uint32_t idx) const {
  return std::binary_search(elements_.begin(), elements_.end(), idx);
}

ComplexSet union_sets(std::vector<PiSet> parts, std::string label) {
  if (parts.empty()) raise(Errc::EmptyPartsList, "at least one part required");
  const FieldSpec field = parts.front().field();
  std::uint32_t bound = static_cast<std::uint32_t>(parts.size());
  for (const PiSet& part : parts) {
    if (!field.same_field(part.field())) raise(Errc::FieldMismatch, "parts over different fields");
    bound = std::max(bound, part.pi_complexity_bound());
  }
  std::vector<std::uint8_t> mask(field.q(), 0);
  for (const PiSet& part : parts) {
    for (std::uint32_t idx : part.elements()) mask[idx] = 1;
  }
  std::vector<std::uint32_t> elems;
  for (std::uint32_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) elems.push_back(i);
  }
  if (label.empty()) {
    std::ostringstream os;
    os << "union[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) os << ", ";
      os << parts[i].label();
    }
    os << "]";
    label = os.str();
  }
  return ComplexSet(field, std::move(parts), std::move(elems), bound, std::move(label));
}

ComplexSet uniform_set(const FieldSpec& spec) {
  return union_sets({intersect_images({Poly::x(spec)}, "identity")}, "uniform");
}

Poly separability_normalize(const Poly& f) {
  if (f.degree() < 1) raise(Errc::ConstantPolynomial, "normalization needs deg f >= 1");
  Poly g = f;
  const std::uint64_t p = f.field().p();
  while (g.degree() >= 1 && g.derivative().is_zero()) {
    // all exponents divisible by p: g(x) = h(x^p) with the same coefficients
    std::vector<std::uint32_t> h((g.coeff_indices().size() + p - 1) / p, 0);
    for (std::size_t i = 0; i < g.coeff_indices().size(); i += p) {
      h[i / p] = g.coeff_indices()[i];
    }
    g = Poly(f.field(), std::move(h));
  }
  return g;
}

std::string SetRecipe::label() const {
  if (!preset.empty()) return preset;
  std::ostringstream os;
  os << "recipe[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << " | ";
    os << "[";
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      if (j) os << ", ";
      os << "(";
      for (std::size_t c = 0; c < parts[i][j].size(); ++c) {
        if (c) os << ",";
        os << parts[i][j][c];
      }
      os << ")";
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::shared_ptr<const ComplexSet> build_set(const SetRecipe& recipe, const FieldSpec& spec) {
  if (recipe.preset == "uniform") {
    return std::make_shared<const ComplexSet>(uniform_set(spec));
  }
  if (recipe.preset == "squares") {
    return std::make_shared<const ComplexSet>(union_sets({squares_set(spec)}, "squares"));
  }
  if (!recipe.preset.empty()) {
    raise(Errc::InvalidArgument, "unknown set preset '" + recipe.preset + "'");
  }
  if (recipe.parts.empty()) raise(Errc::EmptyPartsList, "recipe has no parts");
  std::vector<PiSet> parts;
  parts.reserve(recipe.parts.size());
  for (const PiRecipe& part : recipe.parts) {
    if (part.empty()) raise(Errc::EmptyGeneratorList, "recipe part has no generators");
    std::vector<Poly> gens;
    gens.reserve(part.size());
    for (const auto& coeffs : part) gens.push_back(Poly::from_ints(spec, coeffs));
    parts.push_back(intersect_images(std::move(gens)));
  }
  return std::make_shared<const ComplexSet>(union_sets(std::move(parts), recipe.label()));
}

std::vector<DichotomyRow> dichotomy_scan(const PiRecipe& recipe,
                                         std::span<const std::uint64_t> q_grid,
                                         const DichotomyThresholds& thresholds) {
  if (recipe.empty()) raise(Errc::EmptyGeneratorList, "recipe has no generators");
  std::vector<DichotomyRow> rows;
  rows.reserve(q_grid.size());
  for (std::uint64_t q : q_grid) {
    auto pk = as_prime_power(q);
    if (!pk) raise(Errc::NotPrimePower, "grid value " + std::to_string(q) + " is not a prime power");
    FieldSpec spec(pk->p, pk->k);
    std::vector<Poly> gens;
    gens.reserve(recipe.size());
    for (const auto& coeffs : recipe) gens.push_back(Poly::from_ints(spec, coeffs));
    PiSet s = intersect_images(std::move(gens));
    DichotomyRow row;
    row.q = q;
    row.set_size = s.size();
    row.ratio = static_cast<double>(s.size()) / static_cast<double>(q);
    if (row.ratio >= thresholds.linear_ratio) {
      row.flag = "linear";
    } else if (s.size() <= thresholds.small_max) {
      row.flag = "small";
    } else {
      row.flag = "ambiguous";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fqlab
