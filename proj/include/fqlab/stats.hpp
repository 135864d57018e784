#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqlab/coeff_sets.hpp"
#include "fqlab/poly.hpp"

namespace fqlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// All splitting types of degree n (the integer partitions of n), in
/// descending lexicographic order of (s_1, ..., s_n). 1 <= n <= 30.
std::vector<SplittingType> enumerate_splitting_types(std::uint32_t n);

/// (prod_i i^{s_i} s_i!)^{-1}: the proportion of permutations of n letters
/// with the given cycle type, exact.
BigRational cauchy_density(const SplittingType& s);

/// n! * cauchy_density(s), exact: the conjugacy class size.
BigInt conjugacy_class_size(const SplittingType& s);

struct ExperimentMode {
  enum class Kind { Exhaustive, MonteCarlo };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;  // MonteCarlo only
  std::uint64_t seed = 0;     // MonteCarlo only
};

/// A splitting-statistics experiment: degree-n monic polynomials with
/// coefficient xi_i drawn from sets[i-1] (xi_1 is the x^{n-1} coefficient).
struct ExperimentConfig {
  FieldSpec field;
  std::uint32_t n = 2;
  std::vector<std::shared_ptr<const ComplexSet>> sets;  // n entries
  ExperimentMode mode;
  std::uint32_t shards = 0;  // worker-count hint; 0 = FQLAB_THREADS or hardware
  std::uint64_t budget = 1'000'000'000;
  bool force_general_path = false;  // disable the quadratic discriminant shortcut
};

struct SetSummary {
  std::string label;
  std::uint64_t size = 0;
};

/// Tally of splitting types plus reproducibility metadata. Counts are
/// independent of the worker count by construction (pure per-shard
/// accumulators merged by addition).
struct ExperimentResult {
  std::uint64_t q = 0;
  std::uint32_t n = 0;
  std::vector<SetSummary> sets;
  ExperimentMode mode;
  std::uint32_t shard_hint = 0;
  bool force_general_path = false;
  std::vector<SplittingType> types;   // enumerate_splitting_types(n) order
  std::vector<std::uint64_t> counts;  // aligned with types
  std::uint64_t total = 0;
  std::string prng;     // "splitmix64" for Monte Carlo runs
  std::string version;  // library version
  double wall_seconds = 0.0;  // diagnostics only; never part of emitted documents
};

/// Full sweep of U_1 x ... x U_n in odometer order (last coordinate fastest).
ExperimentResult run_exhaustive(const ExperimentConfig& config);

/// N independent tuples; coordinate j of sample i comes from a per-shard
/// splitmix64 substream and indexes the materialized set without rejection.
/// Bit-reproducible for a fixed seed regardless of the worker count.
ExperimentResult run_montecarlo(const ExperimentConfig& config);

/// Dispatch on config.mode.kind.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct ComparisonRow {
  SplittingType type;
  std::uint64_t count = 0;
  double empirical = 0.0;
  double predicted = 0.0;   // Cauchy density
  double delta = 0.0;       // |empirical - predicted|
  double sqrtq_delta = 0.0;
  double paper_delta = 0.0;  // delta * prod #U_i / q^{n-1/2}
  double std_error = 0.0;    // binomial, Monte Carlo runs only
};

/// Per-type comparison against the Cauchy prediction, in enumeration order.
std::vector<ComparisonRow> compare_to_prediction(const ExperimentResult& result);

struct ScalingFit {
  std::size_t points = 0;
  std::size_t exact_points = 0;  // grid points with delta exactly zero
  double max_sqrtq_delta = 0.0;
  double median_sqrtq_delta = 0.0;
  bool all_exact = false;
  std::optional<double> slope;  // log-log least squares over nonzero deltas
};

/// Decay-rate diagnostics of delta_s across a q-grid of results sharing
/// (n, set recipe). Requires at least 5 grid points.
ScalingFit scaling_fit(std::span<const ExperimentResult> results, const SplittingType& s);

/// Worker resolution: hint, else FQLAB_THREADS, else hardware concurrency.
/// Never affects experiment counts.
std::uint32_t resolve_worker_count(std::uint32_t hint);

}  // namespace fqlab
