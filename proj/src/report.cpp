#include "mutascan/report.hpp"

namespace mutascan {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(VariantLevel, {{VariantLevel::DNA, "DNA"}, {VariantLevel::Protein, "Protein"}})
NLOHMANN_JSON_SERIALIZE_ENUM(VariantKind, {{VariantKind::Substitution, "Substitution"},
                                           {VariantKind::Insertion, "Insertion"},
                                           {VariantKind::Deletion, "Deletion"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Rationale, {{Rationale::NoDnaDifference, "NoDnaDifference"},
                                         {Rationale::SilentDnaOnly, "SilentDnaOnly"},
                                         {Rationale::ProteinChanged, "ProteinChanged"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::Normal, "Normal"}, {Verdict::Abnormal, "Abnormal"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Label, {{Label::Pathogenic, "Pathogenic"}})

namespace {

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, const InputSummary& s) { j = json{{"id", s.id}, {"length", s.length}}; }
void from_json(const json& j, InputSummary& s) {
  j.at("id").get_to(s.id);
  j.at("length").get_to(s.length);
}

void to_json(json& j, const AlignmentSummary& s) {
  j = json{{"score", s.score}, {"identity", s.identity}, {"columns", s.columns}, {"banded", s.banded},
           {"band_hit", s.band_hit}};
}
void from_json(const json& j, AlignmentSummary& s) {
  j.at("score").get_to(s.score);
  j.at("identity").get_to(s.identity);
  j.at("columns").get_to(s.columns);
  j.at("banded").get_to(s.banded);
  j.at("band_hit").get_to(s.band_hit);
}

void to_json(json& j, const Timings& t) {
  j = json{{"assess_ms", t.assess_ms}, {"classify_ms", t.classify_ms}, {"total_ms", t.total_ms}};
}
void from_json(const json& j, Timings& t) {
  j.at("assess_ms").get_to(t.assess_ms);
  j.at("classify_ms").get_to(t.classify_ms);
  j.at("total_ms").get_to(t.total_ms);
}

void to_json(json& j, const RunFiles& f) {
  j = json{{"reference", f.reference}, {"patient", f.patient}, {"model", f.model}, {"catalog", f.catalog}};
}
void from_json(const json& j, RunFiles& f) {
  j.at("reference").get_to(f.reference);
  j.at("patient").get_to(f.patient);
  j.at("model").get_to(f.model);
  j.at("catalog").get_to(f.catalog);
}

void to_json(json& j, const ScoringScheme& s) {
  j = json{{"match", s.match}, {"mismatch", s.mismatch}, {"gap_open", s.gap_open}, {"gap_extend", s.gap_extend}};
}
void from_json(const json& j, ScoringScheme& s) {
  j.at("match").get_to(s.match);
  j.at("mismatch").get_to(s.mismatch);
  j.at("gap_open").get_to(s.gap_open);
  j.at("gap_extend").get_to(s.gap_extend);
}

void to_json(json& j, const Variant& v) {
  j = json{{"level", v.level},       {"kind", v.kind},         {"ref_pos", v.ref_pos},
           {"ref_allele", v.ref_allele}, {"alt_allele", v.alt_allele}, {"notation", v.notation()}};
}
void from_json(const json& j, Variant& v) {
  j.at("level").get_to(v.level);
  j.at("kind").get_to(v.kind);
  j.at("ref_pos").get_to(v.ref_pos);
  j.at("ref_allele").get_to(v.ref_allele);
  j.at("alt_allele").get_to(v.alt_allele);
}

void to_json(json& j, const Alignment& al) {
  j = json{{"row_a", al.row_a},   {"row_b", al.row_b},       {"score", al.score},
           {"scheme", al.scheme}, {"banded", al.banded}, {"band_hit", al.band_hit}};
}
void from_json(const json& j, Alignment& al) {
  j.at("row_a").get_to(al.row_a);
  j.at("row_b").get_to(al.row_b);
  j.at("score").get_to(al.score);
  j.at("scheme").get_to(al.scheme);
  j.at("banded").get_to(al.banded);
  j.at("band_hit").get_to(al.band_hit);
}

void to_json(json& j, const SeedSummary& s) {
  j = json{{"k", s.k}, {"hits", s.hits}, {"longest", s.longest}, {"identity_shortcut", s.identity_shortcut}};
}
void from_json(const json& j, SeedSummary& s) {
  j.at("k").get_to(s.k);
  j.at("hits").get_to(s.hits);
  j.at("longest").get_to(s.longest);
  j.at("identity_shortcut").get_to(s.identity_shortcut);
}

void to_json(json& j, const CandidateVerdict& v) {
  j = json{{"dna_variants", v.dna_variants},
           {"protein_variants", v.protein_variants},
           {"malignant_candidate", v.malignant_candidate},
           {"rationale", v.rationale},
           {"dna_alignment", v.dna_alignment},
           {"protein_alignment", optional_to_json(v.protein_alignment)},
           {"frame", optional_to_json(v.frame)},
           {"reference_cds_start", optional_to_json(v.reference_cds_start)},
           {"patient_cds_start", optional_to_json(v.patient_cds_start)},
           {"reference_protein", v.reference_protein},
           {"patient_protein", v.patient_protein},
           {"seeds", v.seeds}};
}
void from_json(const json& j, CandidateVerdict& v) {
  j.at("dna_variants").get_to(v.dna_variants);
  j.at("protein_variants").get_to(v.protein_variants);
  j.at("malignant_candidate").get_to(v.malignant_candidate);
  j.at("rationale").get_to(v.rationale);
  j.at("dna_alignment").get_to(v.dna_alignment);
  v.protein_alignment = optional_from_json<Alignment>(j, "protein_alignment");
  v.frame = optional_from_json<std::size_t>(j, "frame");
  v.reference_cds_start = optional_from_json<std::size_t>(j, "reference_cds_start");
  v.patient_cds_start = optional_from_json<std::size_t>(j, "patient_cds_start");
  j.at("reference_protein").get_to(v.reference_protein);
  j.at("patient_protein").get_to(v.patient_protein);
  j.at("seeds").get_to(v.seeds);
}

void to_json(json& j, const CatalogEntry& e) {
  j = json{{"gene", e.gene}, {"variant", e.variant}, {"label", e.label}, {"source", e.source}};
}
void from_json(const json& j, CatalogEntry& e) {
  j.at("gene").get_to(e.gene);
  j.at("variant").get_to(e.variant);
  j.at("label").get_to(e.label);
  j.at("source").get_to(e.source);
}

void to_json(json& j, const ScoredVariant& v) {
  j = json{{"variant", v.variant}, {"encoded", v.encoded}, {"scores", v.scores}, {"matches", v.matches}};
}
void from_json(const json& j, ScoredVariant& v) {
  j.at("variant").get_to(v.variant);
  j.at("encoded").get_to(v.encoded);
  j.at("scores").get_to(v.scores);
  j.at("matches").get_to(v.matches);
}

void to_json(json& j, const Prediction& p) {
  j = json{{"verdict", p.verdict},
           {"per_gene_scores", p.per_gene_scores},
           {"matched_catalog_entries", p.matched_catalog_entries},
           {"threshold", p.threshold},
           {"variants", p.variants}};
}
void from_json(const json& j, Prediction& p) {
  j.at("verdict").get_to(p.verdict);
  j.at("per_gene_scores").get_to(p.per_gene_scores);
  j.at("matched_catalog_entries").get_to(p.matched_catalog_entries);
  j.at("threshold").get_to(p.threshold);
  j.at("variants").get_to(p.variants);
}

void to_json(json& j, const PipelineConfig& c) {
  j = json{{"dna_scheme", c.dna_scheme},
           {"protein_scheme", c.protein_scheme},
           {"frame", frame_to_string(c.frame)},
           {"seed_k", c.seed_k},
           {"genes", c.genes},
           {"gene", optional_to_json(c.gene)},
           {"threshold", c.threshold},
           {"arch", optional_to_json(c.arch)},
           {"learning_rate", c.learning_rate},
           {"mse_goal", c.mse_goal},
           {"max_epochs", c.max_epochs},
           {"init_range", c.init_range},
           {"negatives", c.negatives},
           {"seed", c.seed},
           {"endpoint", c.endpoint},
           {"timeout_seconds", c.timeout_seconds},
           {"files", c.files}};
}
void from_json(const json& j, PipelineConfig& c) {
  j.at("dna_scheme").get_to(c.dna_scheme);
  j.at("protein_scheme").get_to(c.protein_scheme);
  c.frame = parse_frame(j.at("frame").get<std::string>());
  j.at("seed_k").get_to(c.seed_k);
  j.at("genes").get_to(c.genes);
  c.gene = optional_from_json<std::string>(j, "gene");
  j.at("threshold").get_to(c.threshold);
  c.arch = optional_from_json<std::vector<std::size_t>>(j, "arch");
  j.at("learning_rate").get_to(c.learning_rate);
  j.at("mse_goal").get_to(c.mse_goal);
  j.at("max_epochs").get_to(c.max_epochs);
  j.at("init_range").get_to(c.init_range);
  j.at("negatives").get_to(c.negatives);
  j.at("seed").get_to(c.seed);
  j.at("endpoint").get_to(c.endpoint);
  j.at("timeout_seconds").get_to(c.timeout_seconds);
  j.at("files").get_to(c.files);
}

void to_json(json& j, const RunReport& r) {
  j = json{{"reference", r.reference},
           {"patient", r.patient},
           {"gene", r.gene},
           {"dna_alignment", r.dna_alignment},
           {"protein_alignment", optional_to_json(r.protein_alignment)},
           {"candidate", r.candidate},
           {"verdict", r.verdict},
           {"prediction", optional_to_json(r.prediction)},
           {"config", r.config},
           {"timings", r.timings}};
}
void from_json(const json& j, RunReport& r) {
  j.at("reference").get_to(r.reference);
  j.at("patient").get_to(r.patient);
  j.at("gene").get_to(r.gene);
  j.at("dna_alignment").get_to(r.dna_alignment);
  r.protein_alignment = optional_from_json<AlignmentSummary>(j, "protein_alignment");
  j.at("candidate").get_to(r.candidate);
  j.at("verdict").get_to(r.verdict);
  r.prediction = optional_from_json<Prediction>(j, "prediction");
  j.at("config").get_to(r.config);
  j.at("timings").get_to(r.timings);
}

void to_json(json& j, const LabeledExample& e) {
  j = json{{"gene", e.gene}, {"variant", e.variant}, {"features", e.features}, {"target", e.target}};
}

json without_timings(const RunReport& r) {
  json j = r;
  j.erase("timings");
  return j;
}

}  // namespace mutascan
