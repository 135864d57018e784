// fqlab command-line front end: factor / stats / irreg / scan / verify / count.
// Exit codes: 0 success, 1 assertion or bound failure, 2 usage/config error.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fqlab/charsum.hpp"
#include "fqlab/coeff_sets.hpp"
#include "fqlab/field.hpp"
#include "fqlab/numeric.hpp"
#include "fqlab/poly.hpp"
#include "fqlab/report.hpp"
#include "fqlab/stats.hpp"
#include "fqlab/version.hpp"

namespace {

using namespace fqlab;

FieldSpec field_from_q(std::uint64_t q) {
  auto pk = as_prime_power(q);
  if (!pk) raise(Errc::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");
  return FieldSpec(pk->p, pk->k);
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoll(item));
  }
  if (out.empty()) raise(Errc::InvalidArgument, "empty list: '" + csv + "'");
  return out;
}

std::vector<std::uint64_t> parse_grid(const std::string& csv) {
  std::vector<std::uint64_t> out;
  for (std::int64_t v : parse_int_list(csv)) {
    if (v < 2) raise(Errc::InvalidArgument, "grid values must be >= 2");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

SplittingType parse_type(const std::string& text) {
  std::vector<std::uint32_t> s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '-')) s.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  const auto n = static_cast<std::uint32_t>(s.size());
  return SplittingType(n, std::move(s));
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    write_text_file(path, content);
    std::cerr << "wrote " << path << "\n";
  }
}

ordered_json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::Io, "cannot read config file " + path);
  ordered_json doc;
  in >> doc;
  // unwrap result documents and manifests down to the config object
  if (doc.contains("manifest")) return doc.at("manifest").at("config");
  if (doc.contains("config") && doc.contains("version")) return doc.at("config");
  return doc;
}

// ---------------------------------------------------------------- factor ---

int cmd_factor(std::uint64_t q, const std::string& poly_csv) {
  FieldSpec field = field_from_q(q);
  Poly P = Poly::zero(field);
  if (field.k() == 1) {
    P = Poly::from_ints(field, parse_int_list(poly_csv));
  } else {
    // extension fields: entries are canonical indices, not residues
    std::vector<std::uint32_t> idx;
    for (std::int64_t c : parse_int_list(poly_csv)) {
      if (c < 0 || static_cast<std::uint64_t>(c) >= field.q()) {
        raise(Errc::InvalidArgument, "coefficient index out of [0, q)");
      }
      idx.push_back(static_cast<std::uint32_t>(c));
    }
    P = Poly(field, std::move(idx));
  }
  std::cout << "field: " << field.to_string() << "\n";
  std::cout << "poly: " << P.to_string() << "\n";
  SplittingType type = splitting_type(P);
  std::cout << "splitting_type: " << type.to_string() << "\n";
  std::cout << "irreducible: " << (is_irreducible(P) ? "yes" : "no") << "\n";
  if (P.degree() >= 2) {
    std::cout << "discriminant: " << discriminant(P).index() << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- stats ---

int cmd_stats(ordered_json cfg, const std::string& out_flag, const std::string& format_flag) {
  ParsedExperiment parsed = parse_experiment_config(cfg);
  ExperimentResult result = run_experiment(parsed.config);
  RunManifest manifest = make_manifest(parsed.config, parsed.echo);

  std::string path = !out_flag.empty() ? out_flag : parsed.output_path;
  std::string format = !format_flag.empty() ? format_flag : parsed.output_format;
  if (format != "json" && format != "csv") {
    raise(Errc::InvalidArgument, "format must be json or csv");
  }

  std::cerr << "q=" << result.q << " n=" << result.n << " total=" << result.total
            << " wall=" << result.wall_seconds << "s\n";
  for (const ComparisonRow& row : compare_to_prediction(result)) {
    std::cerr << "  s=" << row.type.to_string() << " count=" << row.count
              << " empirical=" << row.empirical << " predicted=" << row.predicted
              << " sqrtq_delta=" << row.sqrtq_delta << "\n";
  }

  const std::string content = format == "json"
                                  ? render_document(result_document(result, manifest))
                                  : result_csv(result);
  write_or_print(path, content);
  return 0;
}

// ----------------------------------------------------------------- irreg ---

int cmd_irreg(std::vector<std::uint64_t> grid, bool check_gauss, const std::string& out) {
  std::vector<SquaresBoundRow> rows = squares_bound_report(grid);
  std::string csv = "q,irreg,bound,margin,min_coeff,coeff_bound,pass\n";
  bool all_pass = true;
  for (const auto& row : rows) {
    csv += std::to_string(row.q) + "," + format_table_double(row.irreg) + "," +
           format_table_double(row.bound) + "," + format_table_double(row.margin) + "," +
           format_table_double(row.min_offzero) + "," + format_table_double(row.coeff_bound) +
           "," + (row.pass ? "1" : "0") + "\n";
    all_pass = all_pass && row.pass;
  }
  if (check_gauss) {
    for (std::uint64_t q : grid) {
      FieldSpec field = field_from_q(q);
      const double sqrt_q = std::sqrt(static_cast<double>(q));
      for (std::uint64_t b = 1; b < q; ++b) {
        const double mag = std::abs(gauss_sum(field, field.element(b)));
        if (std::abs(mag - sqrt_q) > 1e-9) {
          std::cerr << "gauss magnitude violated at q=" << q << " beta=" << b << "\n";
          all_pass = false;
        }
      }
    }
    std::cerr << "gauss magnitudes checked on " << grid.size() << " fields\n";
  }
  write_or_print(out, csv);
  if (!all_pass) {
    std::cerr << "bound violated\n";
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------------ scan ---

int cmd_scan_dichotomy(const std::string& recipe_json, std::vector<std::uint64_t> grid,
                       const DichotomyThresholds& thresholds, const std::string& out) {
  ordered_json doc = ordered_json::parse(recipe_json);
  PiRecipe recipe;
  for (const auto& coeffs : doc) recipe.push_back(coeffs.get<std::vector<std::int64_t>>());
  std::string csv = "q,size,ratio,flag\n";
  for (const DichotomyRow& row : dichotomy_scan(recipe, grid, thresholds)) {
    csv += std::to_string(row.q) + "," + std::to_string(row.set_size) + "," +
           format_table_double(row.ratio) + "," + row.flag + "\n";
  }
  write_or_print(out, csv);
  return 0;
}

int cmd_scan_scaling(const std::string& set_text, std::uint32_t n,
                     std::vector<std::uint64_t> grid, const std::string& type_text,
                     std::uint64_t budget, const std::string& out) {
  SetRecipe recipe = set_text.empty() || set_text == "uniform" ? SetRecipe::uniform()
                     : set_text == "squares"
                         ? SetRecipe::squares()
                         : parse_set_recipe(ordered_json::parse(set_text));
  SplittingType type = type_text.empty()
                           ? SplittingType(n, [&] {
                               std::vector<std::uint32_t> s(n, 0);
                               s[n - 1] = 1;
                               return s;
                             }())
                           : parse_type(type_text);

  std::vector<ExperimentResult> results;
  results.reserve(grid.size());
  for (std::uint64_t q : grid) {
    FieldSpec field = field_from_q(q);
    ExperimentConfig config{field, n, {}, {}, 0, budget, false};
    auto set = build_set(recipe, field);
    config.sets.assign(n, set);
    results.push_back(run_exhaustive(config));
  }

  std::string csv = "q,count,empirical,predicted,delta,sqrtq_delta,paper_delta\n";
  for (const auto& result : results) {
    for (const ComparisonRow& row : compare_to_prediction(result)) {
      if (!(row.type == type)) continue;
      csv += std::to_string(result.q) + "," + std::to_string(row.count) + "," +
             format_table_double(row.empirical) + "," + format_table_double(row.predicted) +
             "," + format_table_double(row.delta) + "," + format_table_double(row.sqrtq_delta) +
             "," + format_table_double(row.paper_delta) + "\n";
    }
  }
  write_or_print(out, csv);

  ScalingFit fit = scaling_fit(results, type);
  std::cerr << "scaling fit for s=" << type.to_string() << ": points=" << fit.points
            << " exact=" << fit.exact_points << " max_sqrtq_delta=" << fit.max_sqrtq_delta
            << " median_sqrtq_delta=" << fit.median_sqrtq_delta;
  if (fit.slope) {
    std::cerr << " slope=" << *fit.slope;
  } else {
    std::cerr << (fit.all_exact ? " slope=exact" : " slope=undefined");
  }
  std::cerr << "\n";
  return 0;
}

// ---------------------------------------------------------------- verify ---

struct VerifyState {
  int failures = 0;
  void check(bool ok, const std::string& name, const std::string& detail = "") {
    if (ok) {
      std::cout << "ok " << name << "\n";
    } else {
      std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
      ++failures;
    }
  }
};

int cmd_verify(bool quick) {
  VerifyState v;
  std::mt19937_64 rng(20240901);
  const std::size_t trials = quick ? 300 : 2000;

  // field axioms and Frobenius on a spread of fields
  for (std::uint64_t q : {2ull, 3ull, 8ull, 9ull, 31ull, 49ull, 101ull}) {
    FieldSpec f = field_from_q(q);
    bool ok = true;
    for (std::size_t t = 0; t < trials && ok; ++t) {
      FieldElement a = f.element(rng() % q), b = f.element(rng() % q), c = f.element(rng() % q);
      ok = ok && (a + b) + c == a + (b + c) && a + b == b + a;
      ok = ok && (a * b) * c == a * (b * c) && a * b == b * a;
      ok = ok && a * (b + c) == a * b + a * c;
      ok = ok && a + (-a) == f.zero() && (a.is_zero() || a * inv(a) == f.one());
      ok = ok && pow(a, static_cast<std::int64_t>(q)) == a;
      FieldElement frob_sum = pow(a + b, static_cast<std::int64_t>(f.p()));
      ok = ok && frob_sum == pow(a, static_cast<std::int64_t>(f.p())) +
                                 pow(b, static_cast<std::int64_t>(f.p()));
    }
    v.check(ok, "field axioms F_" + std::to_string(q));
  }

  // quadratic character: multiplicativity, zero sum, square count
  for (std::uint64_t q : {5ull, 9ull, 27ull, 101ull}) {
    FieldSpec f = field_from_q(q);
    bool ok = true;
    long sum = 0, plus = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
      int ci = f.qchar(f.element(i));
      sum += ci;
      plus += ci == 1;
    }
    ok = ok && sum == 0 && plus == static_cast<long>((q - 1) / 2);
    for (std::size_t t = 0; t < trials && ok; ++t) {
      FieldElement a = f.element(1 + rng() % (q - 1)), b = f.element(1 + rng() % (q - 1));
      ok = ok && f.qchar(a * b) == f.qchar(a) * f.qchar(b);
    }
    v.check(ok, "quadratic character F_" + std::to_string(q));
  }

  // additive character orthogonality and homomorphism
  for (std::uint64_t q : {7ull, 8ull, 9ull, 25ull}) {
    FieldSpec f = field_from_q(q);
    bool ok = true;
    std::complex<double> total{0, 0};
    for (std::uint64_t i = 0; i < q; ++i) total += f.add_char(f.element(i));
    ok = ok && std::abs(total) < 1e-10;
    for (std::size_t t = 0; t < std::min<std::size_t>(trials, 500) && ok; ++t) {
      FieldElement a = f.element(rng() % q), b = f.element(rng() % q);
      ok = ok && std::abs(f.add_char(a + b) - f.add_char(a) * f.add_char(b)) < 1e-12;
    }
    v.check(ok, "additive character F_" + std::to_string(q));
  }

  // class equation
  {
    bool ok = true;
    for (std::uint32_t n = 1; n <= 10 && ok; ++n) {
      BigRational total = 0;
      BigInt class_total = 0, fact = 1;
      for (std::uint32_t i = 2; i <= n; ++i) fact *= i;
      for (const SplittingType& s : enumerate_splitting_types(n)) {
        total += cauchy_density(s);
        class_total += conjugacy_class_size(s);
      }
      ok = ok && total == 1 && class_total == fact;
    }
    v.check(ok, "class equation n<=10");
  }

  // prime polynomial counts vs exhaustive enumeration
  {
    bool ok = true;
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull}) {
      FieldSpec f = field_from_q(q);
      for (std::uint32_t n = 1; n <= (quick ? 3u : 4u) && ok; ++n) {
        ExperimentConfig config{f, n, {}, {}, 0, 1'000'000'000, false};
        auto uni = std::make_shared<const ComplexSet>(uniform_set(f));
        config.sets.assign(n, uni);
        ExperimentResult r = run_exhaustive(config);
        ok = ok && r.counts.back() == count_irreducible(n, f);
      }
    }
    v.check(ok, "prime polynomial theorem counts");
  }

  // Stickelberger parity on random squarefree polynomials
  {
    bool ok = true;
    std::vector<FieldSpec> fields;
    for (std::uint64_t q : prime_powers_upto(81, true)) fields.push_back(field_from_q(q));
    std::size_t samples = quick ? 2000 : 20000;
    for (std::size_t t = 0; t < samples && ok; ++t) {
      const FieldSpec& f = fields[rng() % fields.size()];
      std::uint32_t n = 2 + rng() % 7;
      std::vector<std::uint32_t> c(n + 1);
      for (std::uint32_t i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>(rng() % f.q());
      c[n] = 1;
      Poly P(f, std::move(c));
      Poly d = P.derivative();
      if (d.is_zero() || gcd(P, d).degree() != 0) continue;  // resample non-squarefree
      ok = ok && stickelberger_check(P);
    }
    v.check(ok, "stickelberger parity");
  }

  // Parseval on random subsets
  {
    bool ok = true;
    for (std::uint64_t q : {64ull, 81ull, 101ull}) {
      FieldSpec f = field_from_q(q);
      for (int rep = 0; rep < (quick ? 3 : 10) && ok; ++rep) {
        std::vector<std::uint32_t> set;
        for (std::uint64_t i = 0; i < q; ++i) {
          if (rng() & 1) set.push_back(static_cast<std::uint32_t>(i));
        }
        if (set.empty()) set.push_back(0);
        Spectrum sp = fourier_indicator(f, set);
        double power = 0;
        for (const auto& val : sp.values) power += std::norm(val);
        ok = ok &&
             std::abs(power - static_cast<double>(set.size()) / static_cast<double>(q)) < 1e-10;
      }
    }
    v.check(ok, "parseval identity");
  }

  // Gauss magnitudes
  {
    bool ok = true;
    for (std::uint64_t q : prime_powers_upto(quick ? 49 : 121, true)) {
      FieldSpec f = field_from_q(q);
      const double sqrt_q = std::sqrt(static_cast<double>(q));
      for (std::uint64_t b = 1; b < q && ok; ++b) {
        ok = std::abs(std::abs(gauss_sum(f, f.element(b))) - sqrt_q) < 1e-9;
      }
      ok = ok && std::abs(gauss_sum(f, f.element(0))) < 1e-10;
    }
    v.check(ok, "gauss sum magnitudes");
  }

  // squares set sizes and the mod-4 intersection dichotomy
  {
    bool ok = true;
    for (std::uint64_t q : prime_powers_upto(quick ? 121 : 361, true)) {
      FieldSpec f = field_from_q(q);
      ok = ok && squares_set(f).size() == (q + 1) / 2;
    }
    int checked = 0;
    for (std::uint64_t p : primes_upto(200)) {
      if (p == 2 || checked >= 20) continue;
      FieldSpec f = field_from_q(p);
      PiSet s = intersect_images(
          {Poly::from_ints(f, {0, 0, 1}), Poly::from_ints(f, {0, 0, -1})});
      if (p % 4 == 3) {
        ok = ok && s.size() == 1 && s.elements()[0] == 0;
      } else {
        ok = ok && s.size() == (p + 1) / 2;
      }
      ++checked;
    }
    v.check(ok, "coefficient set machinery");
  }

  // determinism across worker counts
  {
    FieldSpec f = field_from_q(13);
    auto sq = std::make_shared<const ComplexSet>(union_sets({squares_set(f)}, "squares"));
    bool ok = true;
    std::vector<std::uint64_t> base_counts;
    for (std::uint32_t shards : {1u, 3u, 7u}) {
      ExperimentConfig config{f, 2, {sq, sq}, {}, shards, 1'000'000'000, false};
      ExperimentResult r = run_exhaustive(config);
      if (base_counts.empty()) {
        base_counts = r.counts;
      } else {
        ok = ok && base_counts == r.counts;
      }
    }
    std::vector<std::uint64_t> mc_counts;
    for (std::uint32_t shards : {1u, 4u, 16u}) {
      ExperimentConfig config{
          f, 2, {sq, sq}, {ExperimentMode::Kind::MonteCarlo, 20000, 42}, shards,
          1'000'000'000, false};
      ExperimentResult r = run_montecarlo(config);
      if (mc_counts.empty()) {
        mc_counts = r.counts;
      } else {
        ok = ok && mc_counts == r.counts;
      }
    }
    v.check(ok, "worker-count independence");
  }

  if (v.failures > 0) {
    std::cout << v.failures << " suite(s) failed\n";
    return 1;
  }
  std::cout << "all suites passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fqlab: splitting statistics of random polynomials over finite fields"};
  app.set_version_flag("--version", std::string("fqlab ") + fqlab::kVersion);
  app.require_subcommand(1);

  auto* count_cmd = app.add_subcommand("count", "count monic irreducibles of degree n over F_q");
  std::uint64_t count_q = 0;
  std::uint32_t count_n = 1;
  count_cmd->add_option("--q", count_q, "field size (prime power)")->required();
  count_cmd->add_option("--n", count_n, "degree")->required();

  auto* factor_cmd =
      app.add_subcommand("factor", "splitting type and discriminant of one polynomial");
  std::uint64_t factor_q = 0;
  std::string factor_poly;
  factor_cmd->add_option("--q", factor_q, "field size (prime power)")->required();
  factor_cmd->add_option("--poly", factor_poly, "coefficients, low to high, comma separated")
      ->required();

  auto* stats_cmd = app.add_subcommand("stats", "run a splitting-type experiment");
  std::string stats_config, stats_set, stats_sets, stats_mode, stats_out, stats_format;
  std::uint64_t stats_q = 0, stats_samples = 0, stats_budget = 0, stats_seed = 0;
  std::uint32_t stats_n = 0, stats_shards = 0;
  bool stats_force_general = false;
  stats_cmd->add_option("--config", stats_config, "config file (or manifest/result document)");
  stats_cmd->add_option("--q", stats_q, "field size (prime power)");
  stats_cmd->add_option("--n", stats_n, "degree");
  stats_cmd->add_option("--set", stats_set, "one recipe for all slots: uniform|squares|json");
  stats_cmd->add_option("--sets", stats_sets, "json array of per-slot recipes");
  stats_cmd->add_option("--mode", stats_mode, "exhaustive|montecarlo");
  stats_cmd->add_option("--samples", stats_samples, "Monte Carlo sample count");
  auto* seed_opt = stats_cmd->add_option("--seed", stats_seed, "Monte Carlo master seed");
  stats_cmd->add_option("--shards", stats_shards, "worker-count hint (never affects results)");
  stats_cmd->add_option("--budget", stats_budget, "exhaustive tuple budget");
  stats_cmd->add_flag("--force-general", stats_force_general,
                      "disable the quadratic discriminant fast path");
  stats_cmd->add_option("--out", stats_out, "output path (stdout if omitted)");
  stats_cmd->add_option("--format", stats_format, "json|csv");

  auto* irreg_cmd = app.add_subcommand("irreg", "irregularity and Gauss-sum reports");
  std::string irreg_grid, irreg_out;
  std::uint64_t irreg_qmax = 0;
  bool irreg_gauss = false;
  irreg_cmd->add_option("--q-grid", irreg_grid, "comma-separated odd prime powers");
  irreg_cmd->add_option("--q-max", irreg_qmax, "all odd prime powers up to this bound");
  irreg_cmd->add_flag("--gauss", irreg_gauss, "also verify |gauss_sum| = sqrt(q) for beta != 0");
  irreg_cmd->add_option("--out", irreg_out, "output path (stdout if omitted)");

  auto* scan_cmd = app.add_subcommand("scan", "dichotomy and scaling sweeps over a q-grid");
  std::string scan_recipe, scan_grid, scan_set, scan_type, scan_out;
  std::uint32_t scan_n = 2;
  std::uint64_t scan_budget = 1'000'000'000;
  double scan_ratio = DichotomyThresholds{}.linear_ratio;
  std::uint64_t scan_small = DichotomyThresholds{}.small_max;
  bool scan_dichotomy = false, scan_scaling = false;
  scan_cmd->add_flag("--dichotomy", scan_dichotomy, "scan a pi-set recipe's size across the grid");
  scan_cmd->add_flag("--scaling", scan_scaling, "scan splitting-type error decay across the grid");
  scan_cmd->add_option("--recipe", scan_recipe, "dichotomy: json generator list [[c0,c1,...],...]");
  scan_cmd->add_option("--q-grid", scan_grid, "comma-separated prime powers")->required();
  scan_cmd->add_option("--set", scan_set, "scaling: uniform|squares|json recipe");
  scan_cmd->add_option("--n", scan_n, "scaling: degree");
  scan_cmd->add_option("--type", scan_type, "scaling: splitting type s1-s2-...-sn");
  scan_cmd->add_option("--budget", scan_budget, "scaling: exhaustive budget per grid point");
  scan_cmd->add_option("--ratio", scan_ratio, "dichotomy: linear flag threshold");
  scan_cmd->add_option("--small-max", scan_small, "dichotomy: small flag threshold");
  scan_cmd->add_option("--out", scan_out, "output path (stdout if omitted)");

  auto* verify_cmd = app.add_subcommand("verify", "run the library invariant suites");
  bool verify_quick = false;
  verify_cmd->add_flag("--quick", verify_quick, "reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (count_cmd->parsed()) {
      std::cout << count_irreducible(count_n, field_from_q(count_q)) << "\n";
      return 0;
    }
    if (factor_cmd->parsed()) return cmd_factor(factor_q, factor_poly);
    if (stats_cmd->parsed()) {
      ordered_json cfg =
          stats_config.empty() ? ordered_json::object() : load_config_file(stats_config);
      if (stats_q != 0) {
        auto pk = as_prime_power(stats_q);
        if (!pk) raise(Errc::NotPrimePower, "q is not a prime power");
        cfg["field"] = ordered_json{{"p", pk->p}, {"k", pk->k}};
      }
      if (!cfg.contains("field")) raise(Errc::InvalidArgument, "need --q or a config field entry");
      if (stats_n != 0) cfg["n"] = stats_n;
      if (!stats_set.empty()) {
        cfg["sets"] = ordered_json::array(
            {stats_set == "uniform" || stats_set == "squares" ? ordered_json(stats_set)
                                                              : ordered_json::parse(stats_set)});
      }
      if (!stats_sets.empty()) cfg["sets"] = ordered_json::parse(stats_sets);
      if (!stats_mode.empty()) {
        cfg["mode"]["type"] = stats_mode == "mc" ? "montecarlo" : stats_mode;
      }
      if (stats_samples != 0) cfg["mode"]["samples"] = stats_samples;
      if (seed_opt->count() > 0) cfg["mode"]["seed"] = stats_seed;
      if (stats_shards != 0) cfg["shards"] = stats_shards;
      if (stats_budget != 0) cfg["budget"] = stats_budget;
      if (stats_force_general) cfg["force_general_path"] = true;
      return cmd_stats(std::move(cfg), stats_out, stats_format);
    }
    if (irreg_cmd->parsed()) {
      std::vector<std::uint64_t> grid;
      if (!irreg_grid.empty()) grid = parse_grid(irreg_grid);
      if (irreg_qmax != 0) grid = prime_powers_upto(irreg_qmax, true);
      if (grid.empty()) raise(Errc::InvalidArgument, "need --q-grid or --q-max");
      return cmd_irreg(std::move(grid), irreg_gauss, irreg_out);
    }
    if (scan_cmd->parsed()) {
      std::vector<std::uint64_t> grid = parse_grid(scan_grid);
      if (scan_dichotomy == scan_scaling) {
        raise(Errc::InvalidArgument, "choose exactly one of --dichotomy / --scaling");
      }
      if (scan_dichotomy) {
        if (scan_recipe.empty()) raise(Errc::InvalidArgument, "--dichotomy needs --recipe");
        return cmd_scan_dichotomy(scan_recipe, std::move(grid),
                                  DichotomyThresholds{scan_ratio, scan_small}, scan_out);
      }
      return cmd_scan_scaling(scan_set, scan_n, std::move(grid), scan_type, scan_budget,
                              scan_out);
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_quick);
  } catch (const fqlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
