#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mutascan/catalog.hpp"
#include "mutascan/config.hpp"
#include "mutascan/neuralnet.hpp"
#include "mutascan/variants.hpp"

namespace mutascan {

enum class Verdict { Normal, Abnormal };

std::string_view to_string(Verdict v) noexcept;

/// Network and catalog evidence for one DNA variant.
struct ScoredVariant {
  Variant variant;
  /// False when the variant cannot be encoded (insertion past the gene end).
  bool encoded = false;
  std::vector<double> scores;  // one per configured gene
  std::vector<CatalogEntry> matches;
};

struct Prediction {
  Verdict verdict = Verdict::Normal;
  /// Highest network output per gene over all candidate variants.
  std::map<std::string, double> per_gene_scores;
  std::vector<CatalogEntry> matched_catalog_entries;
  double threshold = 0.5;
  std::vector<ScoredVariant> variants;
};

struct InputSummary {
  std::string id;
  std::size_t length = 0;
};

struct AlignmentSummary {
  int score = 0;
  double identity = 0.0;
  std::size_t columns = 0;
  bool banded = false;
  bool band_hit = false;
};

AlignmentSummary summarize(const Alignment& al);

struct Timings {
  double assess_ms = 0.0;
  double classify_ms = 0.0;
  double total_ms = 0.0;
};

struct RunReport {
  InputSummary reference;
  InputSummary patient;
  std::string gene;
  AlignmentSummary dna_alignment;
  std::optional<AlignmentSummary> protein_alignment;
  CandidateVerdict candidate;
  Verdict verdict = Verdict::Normal;
  /// Absent when the patient has no malignancy candidate; the network is
  /// not consulted in that case.
  std::optional<Prediction> prediction;
  PipelineConfig config;
  Timings timings;
};

/// Gene under test: cfg.gene when set, else the reference id when it names a
/// configured gene. Throws UnknownGene.
std::string resolve_gene(const Sequence& ref, const PipelineConfig& cfg);

/// Detects candidates, then matches each DNA variant against the catalog and
/// scores it with the network. Abnormal iff some catalog entry matched or
/// some per-gene score reaches the threshold.
///
/// Errors: ModelShapeMismatch, UnknownGene, and whatever assess_candidate
/// raises.
RunReport predict(const Sequence& ref, const Sequence& patient, const Network& model,
                  const std::vector<CatalogEntry>& catalog, const PipelineConfig& cfg);

struct TrainingOutcome {
  Network model;
  TrainReport report;
  std::vector<LabeledExample> examples;
};

/// Builds the labeled set from the catalog and trains a fresh network. The
/// negatives generator and the weight initializer draw from separate streams
/// derived from cfg.seed.
///
/// Errors: anything from build_training_set, init_network or train;
/// ConfigError for an arch that does not fit the encoder.
TrainingOutcome train_classifier(const PipelineConfig& cfg, const std::vector<CatalogEntry>& catalog,
                                 const std::map<std::string, Sequence>& references);

/// Human-readable summary, ending with the research-use disclaimer.
std::string render_summary(const RunReport& report);

inline constexpr std::string_view kDisclaimer =
    "Research reproduction only. Not a medical device; do not use for diagnosis.";

/// Command-line entry point. Returns 0 on success, 1 on domain errors (one
/// `error: <Code>: <message>` line on `err`), 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mutascan
