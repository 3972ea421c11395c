#include "mutascan/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "mutascan/error.hpp"
#include "mutascan/random.hpp"

namespace mutascan {

namespace {

using Clock = std::chrono::steady_clock;

// Seed sub-streams derived from the single user-facing seed.
constexpr std::uint64_t kTrainingSetStream = 0;
constexpr std::uint64_t kInitStream = 1;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept { return v == Verdict::Normal ? "Normal" : "Abnormal"; }

AlignmentSummary summarize(const Alignment& al) {
  return {al.score, percent_identity(al), al.size(), al.banded, al.band_hit};
}

std::string resolve_gene(const Sequence& ref, const PipelineConfig& cfg) {
  const std::string gene = cfg.gene.value_or(ref.id);
  if (std::find(cfg.genes.begin(), cfg.genes.end(), gene) == cfg.genes.end()) {
    throw Error(ErrorCode::UnknownGene, cfg.gene ? "gene '" + gene + "' is not configured"
                                                 : "reference id '" + gene +
                                                       "' is not a configured gene; pass --gene");
  }
  return gene;
}

RunReport predict(const Sequence& ref, const Sequence& patient, const Network& model,
                  const std::vector<CatalogEntry>& catalog, const PipelineConfig& cfg) {
  const auto started = Clock::now();
  const FeatureEncoder encoder(cfg.genes);
  if (model.input_size() != encoder.length() || model.output_size() != encoder.gene_count()) {
    throw Error(ErrorCode::ModelShapeMismatch,
                "model maps " + std::to_string(model.input_size()) + " -> " + std::to_string(model.output_size()) +
                    " but the encoder needs " + std::to_string(encoder.length()) + " -> " +
                    std::to_string(encoder.gene_count()));
  }

  RunReport report;
  report.config = cfg;
  report.gene = resolve_gene(ref, cfg);
  report.reference = {ref.id, ref.size()};
  report.patient = {patient.id, patient.size()};

  report.candidate = assess_candidate(ref, patient, cfg.frame, cfg.dna_scheme, cfg.protein_scheme, cfg.seed_k);
  report.dna_alignment = summarize(report.candidate.dna_alignment);
  if (report.candidate.protein_alignment) report.protein_alignment = summarize(*report.candidate.protein_alignment);
  report.timings.assess_ms = elapsed_ms(started);

  if (!report.candidate.malignant_candidate) {
    report.verdict = Verdict::Normal;
    report.timings.total_ms = elapsed_ms(started);
    return report;
  }

  const auto classify_started = Clock::now();
  Prediction prediction;
  prediction.threshold = cfg.threshold;
  for (const std::string& g : cfg.genes) prediction.per_gene_scores[g] = 0.0;

  for (const Variant& v : report.candidate.dna_variants) {
    ScoredVariant scored;
    scored.variant = v;
    scored.matches = match_catalog(catalog, report.gene, v, ref.residues);
    for (const CatalogEntry& e : scored.matches) prediction.matched_catalog_entries.push_back(e);

    if (v.ref_pos < ref.size()) {
      const std::vector<double> x = encoder.encode(report.gene, v, ref, ref.size());
      scored.scores = forward(model, x).output();
      scored.encoded = true;
      for (std::size_t k = 0; k < cfg.genes.size(); ++k) {
        double& best = prediction.per_gene_scores[cfg.genes[k]];
        best = std::max(best, scored.scores[k]);
      }
    }
    prediction.variants.push_back(std::move(scored));
  }

  const bool any_score = std::any_of(prediction.variants.begin(), prediction.variants.end(),
                                     [](const ScoredVariant& s) { return s.encoded; });
  double max_score = 0.0;
  for (const auto& [gene, score] : prediction.per_gene_scores) max_score = std::max(max_score, score);
  const bool network_flag = any_score && max_score >= cfg.threshold;
  prediction.verdict =
      (network_flag || !prediction.matched_catalog_entries.empty()) ? Verdict::Abnormal : Verdict::Normal;

  report.verdict = prediction.verdict;
  report.prediction = std::move(prediction);
  report.timings.classify_ms = elapsed_ms(classify_started);
  report.timings.total_ms = elapsed_ms(started);
  return report;
}

TrainingOutcome train_classifier(const PipelineConfig& cfg, const std::vector<CatalogEntry>& catalog,
                                 const std::map<std::string, Sequence>& references) {
  const FeatureEncoder encoder(cfg.genes);
  TrainingOutcome outcome;
  outcome.examples = build_training_set(catalog, references, encoder, cfg.negatives,
                                        derive_seed(cfg.seed, kTrainingSetStream));

  std::vector<Sample> samples;
  samples.reserve(outcome.examples.size());
  for (const LabeledExample& e : outcome.examples) samples.push_back({e.features, e.target});

  TrainConfig tc;
  tc.learning_rate = cfg.learning_rate;
  tc.mse_goal = cfg.mse_goal;
  tc.max_epochs = cfg.max_epochs;
  tc.seed = cfg.seed;
  tc.init_range = cfg.init_range;
  tc.validate();

  const std::vector<std::size_t> arch = resolve_arch(cfg, encoder.length(), encoder.gene_count());
  outcome.model = init_network(arch, derive_seed(cfg.seed, kInitStream), cfg.init_range);
  outcome.report = train(outcome.model, samples, tc);
  return outcome;
}

std::string render_summary(const RunReport& r) {
  std::ostringstream out;
  const CandidateVerdict& c = r.candidate;
  out << "reference: " << r.reference.id << " (" << r.reference.length << " bp, gene " << r.gene << ")\n";
  out << "patient:   " << r.patient.id << " (" << r.patient.length << " bp)\n";
  out << "DNA alignment: score " << r.dna_alignment.score << ", identity " << fixed(100.0 * r.dna_alignment.identity, 2)
      << "%";
  if (r.dna_alignment.band_hit) out << " (banded; band edge reached)";
  out << "\n";
  out << "DNA variants (" << c.dna_variants.size() << "):";
  for (const Variant& v : c.dna_variants) out << ' ' << v.notation();
  out << "\n";
  if (r.protein_alignment) {
    out << "protein alignment: score " << r.protein_alignment->score << ", identity "
        << fixed(100.0 * r.protein_alignment->identity, 2) << "%\n";
    out << "protein variants (" << c.protein_variants.size() << "):";
    for (const Variant& v : c.protein_variants) out << ' ' << v.notation();
    out << "\n";
  }
  out << "rationale: " << to_string(c.rationale) << "\n";
  if (r.prediction) {
    const Prediction& p = *r.prediction;
    for (const auto& [gene, score] : p.per_gene_scores) {
      out << "network score " << gene << ": " << fixed(score, 6) << " (threshold " << fixed(p.threshold, 3) << ")\n";
    }
    for (const CatalogEntry& e : p.matched_catalog_entries) {
      out << "catalog match: " << e.gene << ' ' << e.variant.notation();
      if (!e.source.empty()) out << " [" << e.source << "]";
      out << "\n";
    }
  } else {
    out << "network not consulted: no protein-level change\n";
  }
  out << "verdict: " << to_string(r.verdict) << "\n";
  out << kDisclaimer << "\n";
  return out.str();
}

}  // namespace mutascan
