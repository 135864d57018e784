#include "fqlab/stats.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "fqlab/version.hpp"
#include "polyraw.hpp"

namespace fqlab {

namespace {

constexpr std::uint32_t kMaxDegree = 30;
constexpr std::uint32_t kLogicalShards = 64;  // fixed Monte Carlo substream layout

void gen_types(std::uint32_t n, std::uint32_t i, std::uint32_t rem, std::vector<std::uint32_t>& s,
               std::vector<SplittingType>& out) {
  if (i == n) {
    if (rem == 0) out.emplace_back(n, s);
    return;
  }
  // descending choice of s_{i+1} yields descending lexicographic output
  for (std::uint32_t v = rem / (i + 1) + 1; v-- > 0;) {
    s[i] = v;
    gen_types(n, i + 1, rem - (i + 1) * v, s, out);
  }
  s[i] = 0;
}

// splitmix64: a counter-based 64-bit generator (state steps by a fixed odd
// constant; output is an avalanche permutation of the state).
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

std::uint64_t avalanche64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Substream seed for a logical shard: master seed mixed with the shard index
// through the avalanche permutation.
std::uint64_t substream_seed(std::uint64_t master, std::uint32_t shard) {
  return avalanche64(master ^ (0x9E3779B97F4A7C15ull * (std::uint64_t(shard) + 1)));
}

// Unbiased-to-2^-64 index draw, no rejection loop.
std::uint64_t draw_index(std::uint64_t r, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * m) >> 64);
}

// Maps a raw splitting profile to its row in enumeration order.
struct TypeIndexer {
  std::vector<std::vector<std::uint32_t>> keys;  // sorted lexicographically
  std::vector<std::uint32_t> rows;               // keys[i] -> enumeration row

  explicit TypeIndexer(const std::vector<SplittingType>& types) {
    std::vector<std::uint32_t> order(types.size());
    for (std::uint32_t i = 0; i < types.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return types[a].s < types[b].s; });
    keys.reserve(types.size());
    rows.reserve(types.size());
    for (std::uint32_t i : order) {
      keys.push_back(types[i].s);
      rows.push_back(i);
    }
  }

  std::uint32_t index_of(const std::uint32_t* s, std::uint32_t n) const {
    std::size_t lo = 0, hi = keys.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (std::lexicographical_compare(keys[mid].data(), keys[mid].data() + n, s, s + n)) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return rows[lo];
  }
};

struct Validated {
  const detail::FieldData* f;
  std::vector<const std::vector<std::uint32_t>*> elements;  // per slot
  std::vector<std::uint64_t> sizes;
};

Validated validate_config(const ExperimentConfig& config) {
  if (config.n < 1 || config.n > kMaxDegree) {
    raise(Errc::DegreeOutOfRange, "experiment degree must be in [1, 30]");
  }
  if (config.sets.size() != config.n) {
    raise(Errc::InvalidArgument, "need one coefficient set per degree slot");
  }
  Validated v;
  v.f = &config.field.data();
  for (const auto& set : config.sets) {
    if (!set) raise(Errc::InvalidArgument, "null coefficient set");
    if (!config.field.same_field(set->field())) {
      raise(Errc::FieldMismatch, "coefficient set over a different field");
    }
    if (set->size() == 0) raise(Errc::EmptySet, "empty coefficient set");
    v.elements.push_back(&set->elements());
    v.sizes.push_back(set->size());
  }
  return v;
}

std::vector<SetSummary> set_summaries(const ExperimentConfig& config) {
  std::vector<SetSummary> out;
  out.reserve(config.sets.size());
  for (const auto& set : config.sets) out.push_back({set->label(), set->size()});
  return out;
}

// Shared per-worker loop state: polynomial buffer and profile scratch.
struct TupleKernel {
  const Validated& v;
  std::uint32_t n;
  bool quad_fastpath;
  const TypeIndexer& indexer;
  polyraw::Workspace ws;
  std::vector<std::uint32_t> coeffs;  // n+1, monic
  std::vector<std::uint32_t> profile;

  TupleKernel(const Validated& v_, std::uint32_t n_, bool fast, const TypeIndexer& idx)
      : v(v_), n(n_), quad_fastpath(fast), indexer(idx), coeffs(n_ + 1, 0), profile(n_, 0) {
    coeffs[n] = 1;
  }

  // digit j indexes the set of xi_{j+1}, which is the x^{n-1-j} coefficient
  void set_coeff(std::uint32_t j, std::uint64_t digit) {
    coeffs[n - 1 - j] = (*v.elements[j])[digit];
  }

  std::uint32_t classify() {
    std::memset(profile.data(), 0, profile.size() * sizeof(std::uint32_t));
    polyraw::splitting_profile(*v.f, coeffs, 1, profile.data(), ws, quad_fastpath);
    return indexer.index_of(profile.data(), n);
  }
};

}  // namespace

std::vector<SplittingType> enumerate_splitting_types(std::uint32_t n) {
  if (n < 1 || n > kMaxDegree) raise(Errc::DegreeOutOfRange, "degree must be in [1, 30]");
  std::vector<SplittingType> out;
  std::vector<std::uint32_t> s(n, 0);
  gen_types(n, 0, n, s, out);
  return out;
}

BigRational cauchy_density(const SplittingType& s) {
  BigInt denom = 1;
  for (std::uint32_t i = 0; i < s.n; ++i) {
    for (std::uint32_t rep = 0; rep < s.s[i]; ++rep) denom *= (i + 1);
    for (std::uint32_t rep = 2; rep <= s.s[i]; ++rep) denom *= rep;
  }
  return BigRational(1, denom);
}

BigInt conjugacy_class_size(const SplittingType& s) {
  BigInt fact = 1;
  for (std::uint32_t i = 2; i <= s.n; ++i) fact *= i;
  BigRational r = cauchy_density(s) * fact;
  return boost::multiprecision::numerator(r);  // denominator is 1: class sizes are integers
}

std::uint32_t resolve_worker_count(std::uint32_t hint) {
  std::uint32_t w = hint;
  if (w == 0) {
    if (const char* env = std::getenv("FQLAB_THREADS")) {
      char* end = nullptr;
      long parsed = std::strtol(env, &end, 10);
      if (end != env && parsed > 0) w = static_cast<std::uint32_t>(parsed);
    }
  }
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return std::min(w, 256u);
}

ExperimentResult run_exhaustive(const ExperimentConfig& config) {
  if (config.mode.kind != ExperimentMode::Kind::Exhaustive) {
    raise(Errc::InvalidArgument, "run_exhaustive needs exhaustive mode");
  }
  const auto t0 = std::chrono::steady_clock::now();
  Validated v = validate_config(config);

  unsigned __int128 total128 = 1;
  for (std::uint64_t m : v.sizes) {
    total128 *= m;
    if (total128 > config.budget) {
      raise(Errc::BudgetExceeded, "tuple space exceeds the exhaustive budget");
    }
  }
  const std::uint64_t total = static_cast<std::uint64_t>(total128);

  const std::vector<SplittingType> types = enumerate_splitting_types(config.n);
  const TypeIndexer indexer(types);
  const bool fast = !config.force_general_path;
  const std::uint32_t n = config.n;

  const std::uint32_t workers =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(resolve_worker_count(config.shards),
                                                         std::max<std::uint64_t>(total, 1)));

  std::vector<std::vector<std::uint64_t>> tallies(workers,
                                                  std::vector<std::uint64_t>(types.size(), 0));

  auto work = [&](std::uint32_t w) {
    const std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
    const std::uint64_t end =
        total / workers * (w + 1) + std::min<std::uint64_t>(w + 1, total % workers);
    if (begin >= end) return;
    TupleKernel kernel(v, n, fast, indexer);
    std::vector<std::uint64_t>& counts = tallies[w];

    // unrank `begin` into odometer digits (last digit fastest)
    std::vector<std::uint64_t> digits(n, 0);
    std::uint64_t t = begin;
    for (std::uint32_t j = n; j-- > 0;) {
      digits[j] = t % v.sizes[j];
      t /= v.sizes[j];
    }
    for (std::uint32_t j = 0; j < n; ++j) kernel.set_coeff(j, digits[j]);

    for (std::uint64_t i = begin; i < end; ++i) {
      counts[kernel.classify()]++;
      // odometer increment
      for (std::uint32_t j = n; j-- > 0;) {
        if (++digits[j] < v.sizes[j]) {
          kernel.set_coeff(j, digits[j]);
          break;
        }
        digits[j] = 0;
        kernel.set_coeff(j, 0);
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.q = config.field.q();
  result.n = n;
  result.sets = set_summaries(config);
  result.mode = config.mode;
  result.shard_hint = config.shards;
  result.force_general_path = config.force_general_path;
  result.types = types;
  result.counts.assign(types.size(), 0);
  for (const auto& tally : tallies) {
    for (std::size_t i = 0; i < tally.size(); ++i) result.counts[i] += tally[i];
  }
  result.total = total;
  result.version = kVersion;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

ExperimentResult run_montecarlo(const ExperimentConfig& config) {
  if (config.mode.kind != ExperimentMode::Kind::MonteCarlo) {
    raise(Errc::InvalidArgument, "run_montecarlo needs Monte Carlo mode");
  }
  if (config.mode.samples < 1) {
    raise(Errc::InvalidArgument, "Monte Carlo sample count must be >= 1");
  }
  const auto t0 = std::chrono::steady_clock::now();
  Validated v = validate_config(config);

  const std::vector<SplittingType> types = enumerate_splitting_types(config.n);
  const TypeIndexer indexer(types);
  const bool fast = !config.force_general_path;
  const std::uint32_t n = config.n;
  const std::uint64_t samples = config.mode.samples;
  const std::uint64_t seed = config.mode.seed;

  // The sample space is cut into a fixed number of logical shards, each with
  // its own substream; workers execute whole shards, so any worker count
  // replays the identical sample stream.
  std::vector<std::vector<std::uint64_t>> tallies(kLogicalShards,
                                                  std::vector<std::uint64_t>(types.size(), 0));
  std::atomic<std::uint32_t> next_shard{0};

  auto work = [&]() {
    TupleKernel kernel(v, n, fast, indexer);
    for (;;) {
      const std::uint32_t shard = next_shard.fetch_add(1);
      if (shard >= kLogicalShards) return;
      std::uint64_t count = samples / kLogicalShards + (shard < samples % kLogicalShards ? 1 : 0);
      if (count == 0) continue;
      SplitMix64 rng{substream_seed(seed, shard)};
      std::vector<std::uint64_t>& counts = tallies[shard];
      for (std::uint64_t i = 0; i < count; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          kernel.set_coeff(j, draw_index(rng.next(), v.sizes[j]));
        }
        counts[kernel.classify()]++;
      }
    }
  };

  const std::uint32_t workers =
      std::min(resolve_worker_count(config.shards), kLogicalShards);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.q = config.field.q();
  result.n = n;
  result.sets = set_summaries(config);
  result.mode = config.mode;
  result.shard_hint = config.shards;
  result.force_general_path = config.force_general_path;
  result.types = types;
  result.counts.assign(types.size(), 0);
  for (const auto& tally : tallies) {
    for (std::size_t i = 0; i < tally.size(); ++i) result.counts[i] += tally[i];
  }
  result.total = samples;
  result.prng = "splitmix64";
  result.version = kVersion;
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return config.mode.kind == ExperimentMode::Kind::Exhaustive ? run_exhaustive(config)
                                                              : run_montecarlo(config);
}

std::vector<ComparisonRow> compare_to_prediction(const ExperimentResult& result) {
  if (result.types.size() != result.counts.size() || result.total == 0) {
    raise(Errc::InvalidArgument, "incomplete experiment result");
  }
  double prod_sizes = 1.0;
  for (const auto& s : result.sets) prod_sizes *= static_cast<double>(s.size);
  const double paper_scale =
      prod_sizes / std::pow(static_cast<double>(result.q),
                            static_cast<double>(result.n) - 0.5);
  const double sqrt_q = std::sqrt(static_cast<double>(result.q));
  const bool montecarlo = result.mode.kind == ExperimentMode::Kind::MonteCarlo;

  std::vector<ComparisonRow> rows;
  rows.reserve(result.types.size());
  for (std::size_t i = 0; i < result.types.size(); ++i) {
    ComparisonRow row;
    row.type = result.types[i];
    row.count = result.counts[i];
    row.empirical = static_cast<double>(result.counts[i]) / static_cast<double>(result.total);
    row.predicted = cauchy_density(result.types[i]).convert_to<double>();
    row.delta = std::abs(row.empirical - row.predicted);
    row.sqrtq_delta = sqrt_q * row.delta;
    row.paper_delta = paper_scale * row.delta;
    if (montecarlo) {
      row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) /
                                static_cast<double>(result.total));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ScalingFit scaling_fit(std::span<const ExperimentResult> results, const SplittingType& s) {
  if (results.size() < 5) raise(Errc::GridTooSmall, "scaling fit needs at least 5 grid points");
  for (const auto& r : results) {
    if (r.n != s.n) raise(Errc::InvalidArgument, "result degree does not match the splitting type");
    if (r.sets.size() != results.front().sets.size()) {
      raise(Errc::InvalidArgument, "results use different set recipes");
    }
    for (std::size_t i = 0; i < r.sets.size(); ++i) {
      if (r.sets[i].label != results.front().sets[i].label) {
        raise(Errc::InvalidArgument, "results use different set recipes");
      }
    }
  }

  const double predicted = cauchy_density(s).convert_to<double>();
  std::vector<double> sqrtq_deltas;
  std::vector<std::pair<double, double>> logpts;  // (log q, log delta)
  std::size_t exact = 0;
  for (const auto& r : results) {
    std::size_t row = 0;
    while (row < r.types.size() && !(r.types[row] == s)) ++row;
    if (row == r.types.size()) raise(Errc::InvalidArgument, "splitting type missing from result");
    const double emp = static_cast<double>(r.counts[row]) / static_cast<double>(r.total);
    const double delta = std::abs(emp - predicted);
    sqrtq_deltas.push_back(std::sqrt(static_cast<double>(r.q)) * delta);
    if (delta == 0.0) {
      ++exact;
    } else {
      logpts.emplace_back(std::log(static_cast<double>(r.q)), std::log(delta));
    }
  }

  ScalingFit fit;
  fit.points = results.size();
  fit.exact_points = exact;
  fit.all_exact = exact == results.size();
  fit.max_sqrtq_delta = *std::max_element(sqrtq_deltas.begin(), sqrtq_deltas.end());
  std::vector<double> sorted = sqrtq_deltas;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  fit.median_sqrtq_delta =
      sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (logpts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : logpts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(logpts.size());
    const double denom = m * sxx - sx * sx;
    if (denom != 0.0) fit.slope = (m * sxy - sx * sy) / denom;
  }
  return fit;
}

}  // namespace fqlab
