#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mutascan/catalog.hpp"
#include "mutascan/translate.hpp"
#include "mutascan/variants.hpp"

namespace fixtures {

inline const std::string kDataDir = MUTASCAN_DATA_DIR;

inline std::map<std::string, mutascan::Sequence> sample_references() {
  std::map<std::string, mutascan::Sequence> refs;
  for (auto& s : mutascan::read_fasta_file(kDataDir + "/references.fa")) refs.emplace(s.id, s);
  return refs;
}

inline std::vector<mutascan::CatalogEntry> sample_catalog() {
  return mutascan::load_catalog_file(kDataDir + "/sample_catalog.tsv", mutascan::default_genes());
}

// The patient gene carrying exactly `v`.
inline mutascan::Sequence plant(const mutascan::Sequence& ref, const mutascan::Variant& v,
                                const std::string& id = "patient") {
  return mutascan::Sequence{id, "", mutascan::apply_variants(ref.residues, {v}), mutascan::Alphabet::DNA};
}

// First third-position substitution inside the reference ORF that keeps
// (synonymous) or changes (missense, never to a stop) the encoded residue.
inline std::optional<mutascan::Variant> coding_substitution(const mutascan::Sequence& ref, bool synonymous) {
  using namespace mutascan;
  const OrfResult orf = best_orf_frame(ref);
  const auto& code = CodonTable::standard();
  // Skip the start codon so the ORF keeps its anchor.
  for (std::size_t c = 1; c < orf.protein.size(); ++c) {
    const std::size_t pos = orf.start + 3 * c;
    const std::string codon = ref.residues.substr(pos, 3);
    for (std::size_t offset : {2u, 0u, 1u}) {
      for (char base : std::string("ACGT")) {
        if (base == codon[offset]) continue;
        std::string mutated = codon;
        mutated[offset] = base;
        const char before = code.translate(codon), after = code.translate(mutated);
        if (after == '*') continue;
        if ((before == after) == synonymous) {
          return Variant{VariantLevel::DNA, VariantKind::Substitution, pos + offset, std::string(1, codon[offset]),
                         std::string(1, base)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace fixtures
