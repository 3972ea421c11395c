#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "mutascan/seqio.hpp"

namespace mutascan {

/// Standard genetic code (NCBI translation table 1).
class CodonTable {
 public:
  static const CodonTable& standard();

  /// Amino acid for an uppercase codon; 'X' when the codon holds anything
  /// other than A/C/G/T (e.g. 'N').
  char translate(std::string_view codon) const noexcept;
  bool is_stop(std::string_view codon) const noexcept { return translate(codon) == '*'; }

 private:
  explicit CodonTable(std::string_view amino_by_index);
  std::array<char, 64> amino_{};
};

enum class StopPolicy { TruncateAtStop, TranslateThrough };

/// Translates forward-strand codons starting at `frame` (0, 1 or 2); the
/// trailing partial codon is ignored. The result keeps dna.id and may be
/// empty under TruncateAtStop when the first codon is a stop.
///
/// Errors: NotDNA, InvalidArgument (frame > 2), EmptyFrame (< 3 residues
/// after the offset).
Sequence translate(const Sequence& dna, std::size_t frame, StopPolicy policy);

/// Translation of raw residues from an arbitrary offset, without the
/// precondition checks. Returns "" when fewer than 3 residues remain.
std::string translate_residues(std::string_view dna, std::size_t offset, StopPolicy policy);

struct OrfResult {
  std::size_t frame = 0;
  /// Offset of the start codon in the DNA.
  std::size_t start = 0;
  Sequence protein;
};

/// Picks the forward frame whose read-through translation has the longest
/// stop-free run beginning at 'M' (smaller frame wins ties; within a frame the
/// earliest such run wins). Errors: NotDNA, EmptyFrame (length < 3), NoORF.
OrfResult best_orf_frame(const Sequence& dna);

/// Reverse complement of a DNA sequence ('N' maps to 'N').
Sequence revcomp(const Sequence& dna);

}  // namespace mutascan
