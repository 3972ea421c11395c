#pragma once

#include "json.hpp"
#include "mutascan/config.hpp"
#include "mutascan/pipeline.hpp"

namespace mutascan {

// JSON mappings for every type that appears in a RunReport.

void to_json(nlohmann::json& j, const InputSummary& s);
void from_json(const nlohmann::json& j, InputSummary& s);
void to_json(nlohmann::json& j, const AlignmentSummary& s);
void from_json(const nlohmann::json& j, AlignmentSummary& s);
void to_json(nlohmann::json& j, const Timings& t);
void from_json(const nlohmann::json& j, Timings& t);
void to_json(nlohmann::json& j, const RunFiles& f);
void from_json(const nlohmann::json& j, RunFiles& f);
void to_json(nlohmann::json& j, const ScoringScheme& s);
void from_json(const nlohmann::json& j, ScoringScheme& s);
void to_json(nlohmann::json& j, const Variant& v);
void from_json(const nlohmann::json& j, Variant& v);
void to_json(nlohmann::json& j, const Alignment& al);
void from_json(const nlohmann::json& j, Alignment& al);
void to_json(nlohmann::json& j, const SeedSummary& s);
void from_json(const nlohmann::json& j, SeedSummary& s);
void to_json(nlohmann::json& j, const CandidateVerdict& v);
void from_json(const nlohmann::json& j, CandidateVerdict& v);
void to_json(nlohmann::json& j, const CatalogEntry& e);
void from_json(const nlohmann::json& j, CatalogEntry& e);
void to_json(nlohmann::json& j, const ScoredVariant& v);
void from_json(const nlohmann::json& j, ScoredVariant& v);
void to_json(nlohmann::json& j, const Prediction& p);
void from_json(const nlohmann::json& j, Prediction& p);
void to_json(nlohmann::json& j, const PipelineConfig& c);
void from_json(const nlohmann::json& j, PipelineConfig& c);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);
void to_json(nlohmann::json& j, const LabeledExample& e);

/// Report JSON with the `timings` member removed, for reproducibility checks.
nlohmann::json without_timings(const RunReport& r);

}  // namespace mutascan
