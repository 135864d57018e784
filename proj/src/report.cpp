#include "fqlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>

#include "fqlab/numeric.hpp"
#include "fqlab/version.hpp"

namespace fqlab {

std::string format_probability(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string format_table_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunManifest make_manifest(const ExperimentConfig& config, const ordered_json& config_echo) {
  RunManifest m;
  m.version = kVersion;
  m.prng = config.mode.kind == ExperimentMode::Kind::MonteCarlo ? "splitmix64" : "";
  m.p = config.field.p();
  m.k = config.field.k();
  m.q = config.field.q();
  m.modulus = config.field.modulus();
  m.shard_hint = config.shards;
  m.config = config_echo;
  return m;
}

ordered_json manifest_to_json(const RunManifest& manifest) {
  ordered_json j;
  j["tool"] = "fqlab";
  j["version"] = manifest.version;
  if (!manifest.prng.empty()) j["prng"] = manifest.prng;
  j["field"] = ordered_json{{"p", manifest.p},
                            {"k", manifest.k},
                            {"q", manifest.q},
                            {"modulus", manifest.modulus}};
  j["shards"] = manifest.shard_hint;
  j["config"] = manifest.config;
  return j;
}

ordered_json result_document(const ExperimentResult& result, const RunManifest& manifest) {
  ordered_json doc;
  doc["manifest"] = manifest_to_json(manifest);
  doc["q"] = result.q;
  doc["n"] = result.n;
  ordered_json sets = ordered_json::array();
  for (const auto& s : result.sets) {
    sets.push_back(ordered_json{{"recipe", s.label}, {"size", s.size}});
  }
  doc["sets"] = sets;
  ordered_json mode;
  if (result.mode.kind == ExperimentMode::Kind::Exhaustive) {
    mode["type"] = "exhaustive";
  } else {
    mode["type"] = "montecarlo";
    mode["samples"] = result.mode.samples;
    mode["seed"] = result.mode.seed;
  }
  doc["mode"] = mode;

  const bool exhaustive = result.mode.kind == ExperimentMode::Kind::Exhaustive;
  ordered_json rows = ordered_json::array();
  for (const ComparisonRow& row : compare_to_prediction(result)) {
    ordered_json r;
    r["s"] = row.type.to_string();
    r["count"] = row.count;
    r["empirical"] = format_probability(row.empirical);
    if (exhaustive) {
      const std::uint64_t g = std::gcd(row.count, result.total);
      r["num"] = row.count / (g ? g : 1);
      r["den"] = result.total / (g ? g : 1);
    }
    r["predicted"] = format_probability(row.predicted);
    r["delta"] = format_probability(row.delta);
    r["sqrtq_delta"] = format_probability(row.sqrtq_delta);
    r["paper_delta"] = format_probability(row.paper_delta);
    if (!exhaustive) r["std_error"] = format_probability(row.std_error);
    rows.push_back(r);
  }
  doc["rows"] = rows;
  doc["totals"] = ordered_json{{"tuples", result.total},
                               {"count_sum", std::accumulate(result.counts.begin(),
                                                             result.counts.end(),
                                                             std::uint64_t{0})}};
  return doc;
}

std::string result_csv(const ExperimentResult& result) {
  std::string out = kResultCsvHeader;
  out += '\n';
  for (const ComparisonRow& row : compare_to_prediction(result)) {
    out += row.type.to_string();
    out += ',';
    out += std::to_string(row.count);
    out += ',';
    out += format_table_double(row.empirical);
    out += ',';
    out += format_table_double(row.predicted);
    out += ',';
    out += format_table_double(row.delta);
    out += ',';
    out += format_table_double(row.sqrtq_delta);
    out += ',';
    out += format_table_double(row.paper_delta);
    out += '\n';
  }
  return out;
}

std::string render_document(const ordered_json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::Io, "cannot open " + path + " for writing");
  out << content;
  if (!out) raise(Errc::Io, "failed writing " + path);
}

void emit_result(const ExperimentResult& result, const RunManifest& manifest,
                 const std::string& path, OutputFormat format) {
  if (format == OutputFormat::Json) {
    write_text_file(path, render_document(result_document(result, manifest)));
  } else {
    write_text_file(path, result_csv(result));
  }
}

SetRecipe parse_set_recipe(const ordered_json& entry) {
  if (entry.is_string()) {
    const std::string name = entry.get<std::string>();
    if (name == "uniform") return SetRecipe::uniform();
    if (name == "squares") return SetRecipe::squares();
    raise(Errc::InvalidArgument, "unknown set preset '" + name + "'");
  }
  if (!entry.is_object() || !entry.contains("parts")) {
    raise(Errc::InvalidArgument, "set recipe must be a preset name or {\"parts\": [...]}");
  }
  SetRecipe recipe;
  for (const auto& part : entry.at("parts")) {
    PiRecipe gens;
    for (const auto& coeffs : part) {
      gens.push_back(coeffs.get<std::vector<std::int64_t>>());
    }
    recipe.parts.push_back(std::move(gens));
  }
  return recipe;
}

ordered_json set_recipe_to_json(const SetRecipe& recipe) {
  if (!recipe.preset.empty()) return recipe.preset;
  ordered_json parts = ordered_json::array();
  for (const auto& part : recipe.parts) {
    ordered_json gens = ordered_json::array();
    for (const auto& coeffs : part) gens.push_back(coeffs);
    parts.push_back(gens);
  }
  return ordered_json{{"parts", parts}};
}

ParsedExperiment parse_experiment_config(const ordered_json& doc) {
  // Accept raw configs, manifests, and full result documents.
  const ordered_json* cfg = &doc;
  if (doc.contains("manifest")) {
    cfg = &doc.at("manifest").at("config");
  } else if (doc.contains("config") && doc.contains("version")) {
    cfg = &doc.at("config");
  }

  if (!cfg->contains("field")) raise(Errc::InvalidArgument, "config needs a field entry");
  const auto& field = cfg->at("field");
  const std::uint64_t p = field.at("p").get<std::uint64_t>();
  const std::uint32_t k = field.value("k", 1u);
  const std::uint32_t n = cfg->value("n", 2u);

  std::vector<SetRecipe> recipes;
  if (cfg->contains("sets")) {
    for (const auto& entry : cfg->at("sets")) recipes.push_back(parse_set_recipe(entry));
  } else {
    recipes.push_back(SetRecipe::uniform());
  }
  if (recipes.size() == 1 && n > 1) {
    recipes.resize(n, recipes.front());
  }
  if (recipes.size() != n) {
    raise(Errc::InvalidArgument, "sets must list one recipe, or one per degree slot");
  }

  ExperimentMode mode;
  if (cfg->contains("mode")) {
    const auto& m = cfg->at("mode");
    const std::string type = m.value("type", "exhaustive");
    if (type == "exhaustive") {
      mode.kind = ExperimentMode::Kind::Exhaustive;
    } else if (type == "montecarlo") {
      mode.kind = ExperimentMode::Kind::MonteCarlo;
      mode.samples = m.value("samples", std::uint64_t{1'000'000});
      mode.seed = m.value("seed", std::uint64_t{0});
    } else {
      raise(Errc::InvalidArgument, "mode.type must be exhaustive or montecarlo");
    }
  }

  ParsedExperiment parsed{
      ExperimentConfig{FieldSpec(p, k), n, {}, mode, cfg->value("shards", 0u),
                       cfg->value("budget", std::uint64_t{1'000'000'000}),
                       cfg->value("force_general_path", false)},
      {},
      {},
      cfg->contains("output") ? cfg->at("output").value("path", "") : "",
      cfg->contains("output") ? cfg->at("output").value("format", "json") : "json"};

  parsed.config.sets.reserve(n);
  for (const SetRecipe& recipe : recipes) {
    parsed.config.sets.push_back(build_set(recipe, parsed.config.field));
  }

  if (cfg->contains("thresholds")) {
    const auto& t = cfg->at("thresholds");
    parsed.thresholds.linear_ratio = t.value("dichotomy_ratio", parsed.thresholds.linear_ratio);
    parsed.thresholds.small_max = t.value("dichotomy_small", parsed.thresholds.small_max);
  }

  // Normalized echo: defaults made explicit, key order fixed.
  ordered_json echo;
  echo["field"] = ordered_json{{"p", p}, {"k", k}};
  echo["n"] = n;
  ordered_json sets = ordered_json::array();
  for (const SetRecipe& recipe : recipes) sets.push_back(set_recipe_to_json(recipe));
  echo["sets"] = sets;
  ordered_json mj;
  if (mode.kind == ExperimentMode::Kind::Exhaustive) {
    mj["type"] = "exhaustive";
  } else {
    mj["type"] = "montecarlo";
    mj["samples"] = mode.samples;
    mj["seed"] = mode.seed;
  }
  echo["mode"] = mj;
  echo["shards"] = parsed.config.shards;
  echo["budget"] = parsed.config.budget;
  echo["force_general_path"] = parsed.config.force_general_path;
  echo["thresholds"] = ordered_json{{"dichotomy_ratio", parsed.thresholds.linear_ratio},
                                    {"dichotomy_small", parsed.thresholds.small_max}};
  if (!parsed.output_path.empty()) {
    echo["output"] = ordered_json{{"path", parsed.output_path}, {"format", parsed.output_format}};
  }
  parsed.echo = echo;
  return parsed;
}

}  // namespace fqlab
