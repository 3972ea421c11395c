#include "mutascan/variants.hpp"

#include <algorithm>
#include <charconv>

#include "mutascan/error.hpp"
#include "mutascan/translate.hpp"

namespace mutascan {

std::string_view to_string(VariantLevel level) noexcept {
  return level == VariantLevel::DNA ? "DNA" : "Protein";
}

std::string_view to_string(VariantKind kind) noexcept {
  switch (kind) {
    case VariantKind::Substitution: return "Substitution";
    case VariantKind::Insertion: return "Insertion";
    case VariantKind::Deletion: return "Deletion";
  }
  return "?";
}

std::string_view to_string(Rationale r) noexcept {
  switch (r) {
    case Rationale::NoDnaDifference: return "NoDnaDifference";
    case Rationale::SilentDnaOnly: return "SilentDnaOnly";
    case Rationale::ProteinChanged: return "ProteinChanged";
  }
  return "?";
}

std::string Variant::notation() const {
  const std::string pos = std::to_string(ref_pos);
  switch (kind) {
    case VariantKind::Substitution: return pos + ":" + ref_allele + ">" + alt_allele;
    case VariantKind::Insertion: return pos + ":ins:" + alt_allele;
    case VariantKind::Deletion: return pos + ":del:" + ref_allele;
  }
  return pos;
}

void validate(const Variant& v) {
  bool ok = false;
  switch (v.kind) {
    case VariantKind::Substitution:
      ok = !v.ref_allele.empty() && v.ref_allele.size() == v.alt_allele.size();
      break;
    case VariantKind::Insertion: ok = v.ref_allele.empty() && !v.alt_allele.empty(); break;
    case VariantKind::Deletion: ok = !v.ref_allele.empty() && v.alt_allele.empty(); break;
  }
  if (!ok) throw Error(ErrorCode::InvalidArgument, "alleles inconsistent with kind in " + v.notation());
}

Variant parse_variant(std::string_view text, VariantLevel level) {
  const auto bad = [&] { return Error(ErrorCode::InvalidArgument, "bad variant '" + std::string(text) + "'"); };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw bad();
  Variant v;
  v.level = level;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + colon, v.ref_pos);
  if (ec != std::errc{} || end != text.data() + colon) throw bad();
  const std::string_view rest = text.substr(colon + 1);
  if (rest.starts_with("ins:")) {
    v.kind = VariantKind::Insertion;
    v.alt_allele = std::string(rest.substr(4));
  } else if (rest.starts_with("del:")) {
    v.kind = VariantKind::Deletion;
    v.ref_allele = std::string(rest.substr(4));
  } else {
    const auto arrow = rest.find('>');
    if (arrow == std::string_view::npos) throw bad();
    v.kind = VariantKind::Substitution;
    v.ref_allele = std::string(rest.substr(0, arrow));
    v.alt_allele = std::string(rest.substr(arrow + 1));
  }
  validate(v);
  return v;
}

std::vector<Variant> call_variants(const Alignment& al, bool reference_is_row_a, VariantLevel level) {
  const std::string& ref = reference_is_row_a ? al.row_a : al.row_b;
  const std::string& alt = reference_is_row_a ? al.row_b : al.row_a;

  std::vector<Variant> out;
  std::optional<Variant> open;
  std::size_t ref_pos = 0;
  for (std::size_t c = 0; c < ref.size(); ++c) {
    const char r = ref[c];
    const char p = alt[c];
    std::optional<VariantKind> kind;
    if (r == kGap) {
      kind = VariantKind::Insertion;
    } else if (p == kGap) {
      kind = VariantKind::Deletion;
    } else if (r != p) {
      kind = VariantKind::Substitution;
    }

    if (open && (!kind || *kind != open->kind)) {
      out.push_back(std::move(*open));
      open.reset();
    }
    if (kind) {
      if (!open) {
        open.emplace();
        open->level = level;
        open->kind = *kind;
        open->ref_pos = ref_pos;
      }
      if (r != kGap) open->ref_allele.push_back(r);
      if (p != kGap) open->alt_allele.push_back(p);
    }
    if (r != kGap) ++ref_pos;
  }
  if (open) out.push_back(std::move(*open));
  std::stable_sort(out.begin(), out.end(),
                   [](const Variant& x, const Variant& y) { return x.ref_pos < y.ref_pos; });
  return out;
}

std::string apply_variants(std::string_view reference, const std::vector<Variant>& variants) {
  std::string out;
  std::size_t cursor = 0;
  for (const Variant& v : variants) {
    if (v.ref_pos < cursor || v.ref_pos > reference.size() ||
        reference.substr(v.ref_pos, v.ref_allele.size()) != v.ref_allele) {
      throw Error(ErrorCode::InvalidArgument, "variant " + v.notation() + " does not apply to the reference");
    }
    out.append(reference.substr(cursor, v.ref_pos - cursor));
    out += v.alt_allele;
    cursor = v.ref_pos + v.ref_allele.size();
  }
  out.append(reference.substr(cursor));
  return out;
}

Variant left_normalize(const Variant& v, std::string_view reference) {
  if (v.kind == VariantKind::Substitution) return v;
  Variant out = v;
  std::string& allele = out.kind == VariantKind::Insertion ? out.alt_allele : out.ref_allele;
  while (out.ref_pos > 0 && out.ref_pos <= reference.size() && reference[out.ref_pos - 1] == allele.back()) {
    allele.pop_back();
    allele.insert(allele.begin(), reference[out.ref_pos - 1]);
    --out.ref_pos;
  }
  return out;
}

namespace {

// Patient offset aligned to the reference residue at `ref_offset`.
std::size_t map_reference_offset(const Alignment& al, std::size_t ref_offset) {
  std::size_t ref_count = 0, patient_count = 0;
  for (std::size_t c = 0; c < al.size(); ++c) {
    if (al.row_a[c] != kGap) {
      if (ref_count == ref_offset) return patient_count;
      ++ref_count;
    }
    if (al.row_b[c] != kGap) ++patient_count;
  }
  return patient_count;
}

}  // namespace

CandidateVerdict assess_candidate(const Sequence& ref_dna, const Sequence& patient_dna, FrameChoice frame,
                                  const ScoringScheme& scheme_dna, const ScoringScheme& scheme_protein,
                                  std::size_t seed_k) {
  for (const Sequence* s : {&ref_dna, &patient_dna}) {
    if (s->alphabet != Alphabet::DNA) throw Error(ErrorCode::NotDNA, "'" + s->id + "' is not DNA");
    if (s->residues.empty()) throw Error(ErrorCode::EmptyRecord, "'" + s->id + "' is empty");
  }
  if (frame && *frame > 2) throw Error(ErrorCode::InvalidArgument, "frame must be 0, 1, 2 or auto");
  scheme_dna.validate();
  scheme_protein.validate();

  CandidateVerdict verdict;

  const std::size_t k = std::min({seed_k, ref_dna.size(), patient_dna.size()});
  verdict.seeds.k = k;
  if (k > 0) {
    const auto hits = seed_scan(patient_dna, ref_dna, k);
    verdict.seeds.hits = hits.size();
    for (const SeedHit& h : hits) {
      verdict.seeds.longest = std::max(verdict.seeds.longest, h.length);
      if (h.query_pos == 0 && h.subject_pos == 0 && h.length == ref_dna.size() &&
          h.length == patient_dna.size()) {
        verdict.seeds.identity_shortcut = true;
      }
    }
  }

  if (verdict.seeds.identity_shortcut) {
    verdict.dna_alignment.row_a = ref_dna.residues;
    verdict.dna_alignment.row_b = patient_dna.residues;
    verdict.dna_alignment.scheme = scheme_dna;
    verdict.dna_alignment.score = score_rows(ref_dna.residues, patient_dna.residues, scheme_dna);
  } else {
    verdict.dna_alignment = align_residues(ref_dna.residues, patient_dna.residues, scheme_dna);
  }
  verdict.dna_variants = call_variants(verdict.dna_alignment, true, VariantLevel::DNA);
  if (verdict.dna_variants.empty()) {
    verdict.rationale = Rationale::NoDnaDifference;
    return verdict;
  }

  std::size_t ref_start = 0, patient_start = 0;
  if (frame) {
    translate(ref_dna, *frame, StopPolicy::TruncateAtStop);  // precondition check only
    ref_start = patient_start = *frame;
    verdict.frame = *frame;
  } else {
    const OrfResult orf = best_orf_frame(ref_dna);
    verdict.frame = orf.frame;
    ref_start = orf.start;
    patient_start = map_reference_offset(verdict.dna_alignment, ref_start);
  }
  verdict.reference_cds_start = ref_start;
  verdict.patient_cds_start = patient_start;
  verdict.reference_protein = translate_residues(ref_dna.residues, ref_start, StopPolicy::TruncateAtStop);
  verdict.patient_protein = translate_residues(patient_dna.residues, patient_start, StopPolicy::TruncateAtStop);

  verdict.protein_alignment = align_residues(verdict.reference_protein, verdict.patient_protein, scheme_protein);
  verdict.protein_variants = call_variants(*verdict.protein_alignment, true, VariantLevel::Protein);
  verdict.malignant_candidate = !verdict.protein_variants.empty();
  verdict.rationale = verdict.malignant_candidate ? Rationale::ProteinChanged : Rationale::SilentDnaOnly;
  return verdict;
}

}  // namespace mutascan
