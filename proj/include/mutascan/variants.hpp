#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mutascan/align.hpp"
#include "mutascan/seqio.hpp"

namespace mutascan {

enum class VariantLevel { DNA, Protein };
enum class VariantKind { Substitution, Insertion, Deletion };

std::string_view to_string(VariantLevel level) noexcept;
std::string_view to_string(VariantKind kind) noexcept;

/// One reference-vs-patient difference.
///
/// `ref_pos` is 0-based in the ungapped reference. For substitutions and
/// deletions it is the first affected reference residue; for insertions it is
/// the number of reference residues preceding the inserted bases, so the
/// insertion sits between ref[ref_pos - 1] and ref[ref_pos].
struct Variant {
  VariantLevel level = VariantLevel::DNA;
  VariantKind kind = VariantKind::Substitution;
  std::size_t ref_pos = 0;
  std::string ref_allele;
  std::string alt_allele;

  /// `pos:REF>ALT`, `pos:ins:SEQ` or `pos:del:SEQ`.
  std::string notation() const;

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// Parses the notation produced by Variant::notation. Throws InvalidArgument.
Variant parse_variant(std::string_view text, VariantLevel level = VariantLevel::DNA);

/// Checks the allele/kind invariants; throws InvalidArgument when violated.
void validate(const Variant& v);

/// Extracts variants from an alignment, merging adjacent columns of the same
/// kind. Sorted by ref_pos (column order among equal positions).
std::vector<Variant> call_variants(const Alignment& al, bool reference_is_row_a,
                                   VariantLevel level = VariantLevel::DNA);

/// Applies a call_variants list to the reference, yielding the patient.
/// Throws InvalidArgument when variants overlap or disagree with the reference.
std::string apply_variants(std::string_view reference, const std::vector<Variant>& variants);

/// Shifts an indel to its leftmost equivalent position; substitutions are
/// returned unchanged.
Variant left_normalize(const Variant& v, std::string_view reference);

enum class Rationale { NoDnaDifference, SilentDnaOnly, ProteinChanged };

std::string_view to_string(Rationale r) noexcept;

/// Frame selection for assess_candidate; std::nullopt means automatic.
using FrameChoice = std::optional<std::size_t>;
inline constexpr FrameChoice kAutoFrame = std::nullopt;

struct SeedSummary {
  std::size_t k = 0;
  std::size_t hits = 0;
  std::size_t longest = 0;
  bool identity_shortcut = false;
};

struct CandidateVerdict {
  std::vector<Variant> dna_variants;
  std::vector<Variant> protein_variants;
  bool malignant_candidate = false;
  Rationale rationale = Rationale::NoDnaDifference;

  Alignment dna_alignment;
  /// Present only when the DNA differs.
  std::optional<Alignment> protein_alignment;
  std::optional<std::size_t> frame;
  /// Offsets where translation started in the reference and the patient.
  std::optional<std::size_t> reference_cds_start;
  std::optional<std::size_t> patient_cds_start;
  std::string reference_protein;
  std::string patient_protein;
  SeedSummary seeds;
};

inline constexpr std::size_t kDefaultSeedK = 11;

/// Aligns the two genes, and when they differ, translates both and aligns the
/// proteins. A DNA difference is a malignancy candidate only if the protein
/// changes.
///
/// With kAutoFrame the reference's best ORF fixes the frame and the start
/// codon; the patient's start is the aligned position of that codon. A fixed
/// frame translates both sequences from that offset. Translation stops at the
/// first stop codon in both cases.
CandidateVerdict assess_candidate(const Sequence& ref_dna, const Sequence& patient_dna, FrameChoice frame,
                                  const ScoringScheme& scheme_dna, const ScoringScheme& scheme_protein,
                                  std::size_t seed_k = kDefaultSeedK);

}  // namespace mutascan
