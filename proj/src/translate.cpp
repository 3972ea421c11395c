#include "mutascan/translate.hpp"

#include <algorithm>

#include "mutascan/error.hpp"

namespace mutascan {

namespace {

int base_index(char c) noexcept {
  switch (c) {
    case 'T': return 0;
    case 'C': return 1;
    case 'A': return 2;
    case 'G': return 3;
    default: return -1;
  }
}

void require_dna(const Sequence& seq) {
  if (seq.alphabet != Alphabet::DNA) throw Error(ErrorCode::NotDNA, "'" + seq.id + "' is not DNA");
}

}  // namespace

CodonTable::CodonTable(std::string_view amino_by_index) {
  std::copy_n(amino_by_index.begin(), amino_.size(), amino_.begin());
}

const CodonTable& CodonTable::standard() {
  // Codons enumerated in TCAG order for each position.
  static const CodonTable table("FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG");
  return table;
}

char CodonTable::translate(std::string_view codon) const noexcept {
  if (codon.size() != 3) return 'X';
  int index = 0;
  for (char c : codon) {
    const int b = base_index(c);
    if (b < 0) return 'X';
    index = index * 4 + b;
  }
  return amino_[static_cast<std::size_t>(index)];
}

std::string translate_residues(std::string_view dna, std::size_t offset, StopPolicy policy) {
  const CodonTable& table = CodonTable::standard();
  std::string protein;
  for (std::size_t pos = offset; pos + 3 <= dna.size(); pos += 3) {
    const char aa = table.translate(dna.substr(pos, 3));
    if (aa == '*' && policy == StopPolicy::TruncateAtStop) break;
    protein.push_back(aa);
  }
  return protein;
}

Sequence translate(const Sequence& dna, std::size_t frame, StopPolicy policy) {
  require_dna(dna);
  if (frame > 2) throw Error(ErrorCode::InvalidArgument, "frame must be 0, 1 or 2");
  if (dna.size() < frame + 3) {
    throw Error(ErrorCode::EmptyFrame, "'" + dna.id + "' has fewer than 3 residues after frame offset " +
                                           std::to_string(frame));
  }
  Sequence protein;
  protein.id = dna.id;
  protein.description = "frame " + std::to_string(frame);
  protein.alphabet = Alphabet::Protein;
  protein.residues = translate_residues(dna.residues, frame, policy);
  return protein;
}

OrfResult best_orf_frame(const Sequence& dna) {
  require_dna(dna);
  if (dna.size() < 3) throw Error(ErrorCode::EmptyFrame, "'" + dna.id + "' is shorter than one codon");

  bool found = false;
  std::size_t best_len = 0;
  OrfResult best;
  for (std::size_t frame = 0; frame < 3 && frame + 3 <= dna.size(); ++frame) {
    const std::string through = translate_residues(dna.residues, frame, StopPolicy::TranslateThrough);
    std::size_t i = 0;
    while (i < through.size()) {
      if (through[i] != 'M') {
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end < through.size() && through[end] != '*') ++end;
      const std::size_t len = end - i;
      if (!found || len > best_len) {
        found = true;
        best_len = len;
        best.frame = frame;
        best.start = frame + 3 * i;
        best.protein.residues = through.substr(i, len);
      }
      // Later Ms inside this run give shorter runs.
      i = end + 1;
    }
  }
  if (!found) throw Error(ErrorCode::NoORF, "no start codon in any forward frame of '" + dna.id + "'");
  best.protein.id = dna.id;
  best.protein.description = "frame " + std::to_string(best.frame) + " orf@" + std::to_string(best.start);
  best.protein.alphabet = Alphabet::Protein;
  return best;
}

Sequence revcomp(const Sequence& dna) {
  require_dna(dna);
  Sequence out = dna;
  std::reverse(out.residues.begin(), out.residues.end());
  for (char& c : out.residues) {
    switch (c) {
      case 'A': c = 'T'; break;
      case 'T': c = 'A'; break;
      case 'C': c = 'G'; break;
      case 'G': c = 'C'; break;
      default: break;
    }
  }
  return out;
}

}  // namespace mutascan
