#pragma once

#include <json.hpp>
#include <string>

#include "fqlab/coeff_sets.hpp"
#include "fqlab/stats.hpp"

namespace fqlab {

using ordered_json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv };

/// Reproducibility header embedded in every result document: tool version,
/// the normalized config echo, and the concrete field model. Re-running the
/// embedded config reproduces the document byte for byte, so no volatile
/// fields (timestamps, wall time) appear here; those go to the diagnostic
/// stream instead.
struct RunManifest {
  std::string version;
  std::string prng;  // empty for exhaustive runs
  std::uint64_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::uint32_t shard_hint = 0;
  ordered_json config;
};

RunManifest make_manifest(const ExperimentConfig& config, const ordered_json& config_echo);
ordered_json manifest_to_json(const RunManifest& manifest);

/// The JSON result document: {manifest, q, n, sets, mode, rows, totals}.
/// Probabilities are decimal strings with 17 significant digits; exhaustive
/// rows carry the exact reduced fraction as well.
ordered_json result_document(const ExperimentResult& result, const RunManifest& manifest);

inline constexpr const char* kResultCsvHeader =
    "s,count,empirical,predicted,delta,sqrtq_delta,paper_delta";

/// Plot-ready table, one row per splitting type in enumeration order.
std::string result_csv(const ExperimentResult& result);

std::string render_document(const ordered_json& doc);  // dump(2) + trailing newline
void write_text_file(const std::string& path, const std::string& content);

/// Writes the result to `path`: the JSON document (with embedded manifest)
/// or the CSV table, depending on format. Bytes depend only on the inputs.
void emit_result(const ExperimentResult& result, const RunManifest& manifest,
                 const std::string& path, OutputFormat format);

struct ParsedExperiment {
  ExperimentConfig config;
  ordered_json echo;  // normalized config document
  DichotomyThresholds thresholds;
  std::string output_path;    // optional
  std::string output_format;  // "json" (default) or "csv"
};

/// Accepts a raw config document, a manifest, or a full result document
/// (the manifest's config is extracted), validates it, and builds the
/// experiment. The echo is the normalized form embedded in manifests.
ParsedExperiment parse_experiment_config(const ordered_json& doc);

/// Parses a set recipe entry: "uniform" | "squares" | {"parts": [[[c...]]]}.
SetRecipe parse_set_recipe(const ordered_json& entry);
ordered_json set_recipe_to_json(const SetRecipe& recipe);

/// 17-significant-digit decimal string; locale-independent.
std::string format_probability(double v);
/// Shortest deterministic %.17g rendering for table output.
std::string format_table_double(double v);

}  // namespace fqlab
