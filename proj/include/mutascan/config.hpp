#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mutascan/align.hpp"
#include "mutascan/catalog.hpp"
#include "mutascan/variants.hpp"

namespace mutascan {

/// Paths of the files a run consumed, recorded for reproducibility.
struct RunFiles {
  std::string reference;
  std::string patient;
  std::string model;
  std::string catalog;

  friend bool operator==(const RunFiles&, const RunFiles&) = default;
};

struct PipelineConfig {
  ScoringScheme dna_scheme = default_dna_scheme();
  ScoringScheme protein_scheme = default_protein_scheme();
  FrameChoice frame = kAutoFrame;
  std::size_t seed_k = kDefaultSeedK;

  std::vector<std::string> genes = default_genes();
  /// Gene under test; inferred from the reference id when unset.
  std::optional<std::string> gene;
  double threshold = 0.5;

  /// Full architecture n,h1,...,m; defaults to n,16,16,m.
  std::optional<std::vector<std::size_t>> arch;
  double learning_rate = 0.5;
  double mse_goal = 1e-7;
  std::size_t max_epochs = 500'000;
  double init_range = 0.5;
  std::size_t negatives = 3;
  std::uint64_t seed = 1;

  std::string endpoint;
  double timeout_seconds = 30.0;

  RunFiles files;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

inline const std::vector<std::size_t>& default_hidden_layers() {
  static const std::vector<std::size_t> hidden{16, 16};
  return hidden;
}

/// Resolves the network shape for `inputs` features and `outputs` genes.
/// Throws ConfigError when a configured arch disagrees with either end.
std::vector<std::size_t> resolve_arch(const PipelineConfig& cfg, std::size_t inputs, std::size_t outputs);

/// "n,h1,h2,m" -> sizes. Throws ConfigError.
std::vector<std::size_t> parse_arch(std::string_view text);
/// "0", "1", "2" or "auto". Throws ConfigError.
FrameChoice parse_frame(std::string_view text);
std::string frame_to_string(FrameChoice frame);

/// Applies one `key=value` setting. Throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// Applies a config file body: `key = value` lines, `#` comments, blank lines.
/// Recognized keys:
///   align.match align.mismatch align.gap_open align.gap_extend
///   align.protein.match align.protein.mismatch align.protein.gap_open
///   align.protein.gap_extend align.seed_k align.frame
///   genes predict.gene predict.threshold
///   train.arch train.lr train.goal train.max_epochs train.init_range
///   train.negatives seed fetch.endpoint fetch.timeout
void apply_config_text(PipelineConfig& cfg, std::string_view text);
void apply_config_file(PipelineConfig& cfg, const std::string& path);

}  // namespace mutascan
