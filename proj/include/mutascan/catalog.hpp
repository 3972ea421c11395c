#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mutascan/seqio.hpp"
#include "mutascan/variants.hpp"

namespace mutascan {

enum class Label { Pathogenic };

struct CatalogEntry {
  std::string gene;
  Variant variant;  // DNA level
  Label label = Label::Pathogenic;
  std::string source;
};

inline const std::vector<std::string>& default_genes() {
  static const std::vector<std::string> genes{"BRCA1", "BRCA2"};
  return genes;
}

/// Parses the catalog TSV: `gene<TAB>pos<TAB>ref<TAB>alt[<TAB>source]`, with
/// `#` comments and blank lines ignored. '-' denotes an empty allele, and the
/// kind follows from which allele is empty. Positions are 0-based.
///
/// Errors: MalformedLine (with line number), DuplicateEntry, UnknownGene.
std::vector<CatalogEntry> load_catalog(std::string_view text, const std::vector<std::string>& genes);
std::vector<CatalogEntry> load_catalog_file(const std::string& path, const std::vector<std::string>& genes);

/// Fixed-length numeric encoding of a DNA variant:
///
///   [gene one-hot | kind one-hot (3) | position (1) | ref base (4) |
///    alt base (4) | 5' context (2x4) | 3' context (2x4)]
///
/// Multi-base alleles contribute their first base. Insertions leave the ref
/// segment zero, deletions the alt segment. Context bases falling off either
/// end of the reference, or equal to 'N', encode as zeros.
class FeatureEncoder {
 public:
  static constexpr std::size_t kBaseWidth = 4;
  static constexpr std::size_t kContext = 2;
  static constexpr std::size_t kFixedWidth = 3 + 1 + 4 + 4 + 2 * kContext * kBaseWidth;

  explicit FeatureEncoder(std::vector<std::string> genes);

  const std::vector<std::string>& genes() const noexcept { return genes_; }
  std::size_t gene_count() const noexcept { return genes_.size(); }
  std::size_t length() const noexcept { return genes_.size() + kFixedWidth; }
  /// Index of `gene`; throws UnknownGene.
  std::size_t gene_index(std::string_view gene) const;

  /// Throws UnknownGene, PositionOutOfRange (ref_pos >= gene_length or past
  /// the reference), InvalidArgument (protein-level variant).
  std::vector<double> encode(std::string_view gene, const Variant& v, const Sequence& reference,
                             std::size_t gene_length) const;

  /// Named segments as [begin, end) offsets, in layout order.
  struct Segment {
    std::string_view name;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Segment> segments() const;

 private:
  std::vector<std::string> genes_;
};

struct LabeledExample {
  std::string gene;
  Variant variant;
  std::vector<double> features;
  /// Per-gene indicator; all zeros is benign.
  std::vector<double> target;
};

/// Checks every entry against its reference: known gene, reference present,
/// position in range, ref allele matching. Throws UnknownGene,
/// PositionOutOfRange or RefAlleleMismatch.
void check_catalog(const std::vector<CatalogEntry>& catalog, const std::map<std::string, Sequence>& references);

/// One positive per catalog entry followed by `negatives_per_positive`
/// benign substitutions drawn from the entry's gene. Negatives prefer
/// synonymous changes inside the reference ORF, never coincide with a catalog
/// variant, and are distinct across the set. Deterministic given `seed`.
///
/// Errors: those of check_catalog, InvalidArgument, InsufficientSpace.
std::vector<LabeledExample> build_training_set(const std::vector<CatalogEntry>& catalog,
                                               const std::map<std::string, Sequence>& references,
                                               const FeatureEncoder& encoder, std::size_t negatives_per_positive,
                                               std::uint64_t seed);

/// Entries of `gene` equal to `v` after left-normalizing both against the
/// reference.
std::vector<CatalogEntry> match_catalog(const std::vector<CatalogEntry>& catalog, std::string_view gene,
                                        const Variant& v, std::string_view reference);

}  // namespace mutascan
