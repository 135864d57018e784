#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fqlab/poly.hpp"

namespace fqlab {

/// { f(a) : a in F_q }, sorted by canonical index. deg f >= 1.
std::vector<std::uint32_t> image_set(const Poly& f);

/// Intersection of polynomial images with its complexity certificate: the
/// generators f_1..f_k and the bound max(k, deg f_j). Elements are
/// materialized at construction and kept sorted by canonical index.
class PiSet {
 public:
  const FieldSpec& field() const { return field_; }
  const std::vector<Poly>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& elements() const { return elements_; }
  std::uint64_t size() const { return elements_.size(); }
  std::uint32_t pi_complexity_bound() const { return bound_; }
  const std::string& label() const { return label_; }

  bool contains_index(std::uint32_t idx) const;
  FieldElement element_at(std::uint64_t i) const { return field_.element(elements_.at(i)); }

  friend PiSet intersect_images(std::vector<Poly> generators, std::string label);

 private:
  PiSet(FieldSpec f, std::vector<Poly> gens, std::vector<std::uint32_t> elems,
        std::uint32_t bound, std::string label);

  FieldSpec field_;
  std::vector<Poly> generators_;
  std::vector<std::uint32_t> elements_;
  std::uint32_t bound_;
  std::string label_;
};

/// Builds the intersection of the generator images. Generators must be
/// nonconstant and share one field.
PiSet intersect_images(std::vector<Poly> generators, std::string label = "");

/// The squares {a^2}: single generator x^2. For odd q the size is (q+1)/2;
/// for even q squaring is a bijection and the set is all of F_q.
PiSet squares_set(const FieldSpec& spec);

/// Union of PiSets with the combined complexity certificate
/// max(#parts, part bounds). This is the general bounded-complexity
/// coefficient set consumed by experiments.
class ComplexSet {
 public:
  const FieldSpec& field() const { return field_; }
  const std::vector<PiSet>& parts() const { return parts_; }
  const std::vector<std::uint32_t>& elements() const { return elements_; }
  std::uint64_t size() const { return elements_.size(); }
  std::uint32_t complexity_bound() const { return bound_; }
  const std::string& label() const { return label_; }

  bool contains_index(std::uint32_t idx) const;
  FieldElement element_at(std::uint64_t i) const { return field_.element(elements_.at(i)); }

  friend ComplexSet union_sets(std::vector<PiSet> parts, std::string label);

 private:
  ComplexSet(FieldSpec f, std::vector<PiSet> parts, std::vector<std::uint32_t> elems,
             std::uint32_t bound, std::string label);

  FieldSpec field_;
  std::vector<PiSet> parts_;
  std::vector<std::uint32_t> elements_;
  std::uint32_t bound_;
  std::string label_;
};

ComplexSet union_sets(std::vector<PiSet> parts, std::string label = "");

/// All of F_q as a complexity-1 set (generator x).
ComplexSet uniform_set(const FieldSpec& spec);

/// Strips x^{p^r} composition layers while the derivative vanishes; the image
/// is unchanged because x -> x^p permutes F_q.
Poly separability_normalize(const Poly& f);

/// Symbolic generator list with integer coefficients (low-to-high), reduced
/// mod p per field, so one recipe spans a q-grid.
using PiRecipe = std::vector<std::vector<std::int64_t>>;

/// Full set recipe: either a named preset or a union of PiRecipes.
struct SetRecipe {
  std::string preset;                  // "uniform" | "squares" | "" for parts
  std::vector<PiRecipe> parts;

  static SetRecipe uniform() { return {"uniform", {}}; }
  static SetRecipe squares() { return {"squares", {}}; }
  std::string label() const;
};

std::shared_ptr<const ComplexSet> build_set(const SetRecipe& recipe, const FieldSpec& spec);

struct DichotomyThresholds {
  double linear_ratio = 0.4;     // #S >= ratio * q            -> "linear"
  std::uint64_t small_max = 8;   // otherwise #S <= small_max  -> "small"
};

struct DichotomyRow {
  std::uint64_t q;
  std::uint64_t set_size;
  double ratio;
  std::string flag;  // "small", "linear", or "ambiguous"
};

/// Materializes the PiRecipe for each q in the grid and reports exact sizes,
/// flagged against the thresholds.
std::vector<DichotomyRow> dichotomy_scan(const PiRecipe& recipe,
                                         std::span<const std::uint64_t> q_grid,
                                         const DichotomyThresholds& thresholds = {});

}  // namespace fqlab
