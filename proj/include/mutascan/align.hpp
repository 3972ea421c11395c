#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mutascan/seqio.hpp"

namespace mutascan {

inline constexpr char kGap = '-';

/// Affine scoring: a gap of length L costs gap_open + (L - 1) * gap_extend.
struct ScoringScheme {
  int match = 2;
  int mismatch = -1;
  int gap_open = -4;
  int gap_extend = -1;

  /// Throws InvalidScheme unless match > mismatch, mismatch <= 0 and
  /// gap_open <= gap_extend <= 0.
  void validate() const;

  int substitution(char a, char b) const noexcept { return a == b ? match : mismatch; }
  int gap(std::size_t length) const noexcept {
    return length == 0 ? 0 : gap_open + static_cast<int>(length - 1) * gap_extend;
  }

  friend bool operator==(const ScoringScheme&, const ScoringScheme&) = default;
};

ScoringScheme default_dna_scheme() noexcept;
ScoringScheme default_protein_scheme() noexcept;

/// A maximal exact match between query and subject.
struct SeedHit {
  std::size_t query_pos = 0;
  std::size_t subject_pos = 0;
  std::size_t length = 0;
  std::int64_t diagonal = 0;  // subject_pos - query_pos

  friend bool operator==(const SeedHit&, const SeedHit&) = default;
};

/// k-mer position index over one sequence.
class KmerIndex {
 public:
  KmerIndex(std::string_view text, std::size_t k);
  /// Builds the index by inserting k-mer start positions in `order`.
  KmerIndex(std::string_view text, std::size_t k, std::span<const std::size_t> order);

  std::span<const std::size_t> lookup(std::string_view kmer) const;
  std::size_t k() const noexcept { return k_; }

 private:
  std::string_view text_;
  std::size_t k_;
  std::unordered_map<std::string_view, std::vector<std::size_t>> positions_;
};

/// All maximal exact matches of length >= k, sorted by (diagonal, query_pos).
/// Errors: AlphabetMismatch, KTooLarge (k == 0 or k > min length).
std::vector<SeedHit> seed_scan(const Sequence& query, const Sequence& subject, std::size_t k);
std::vector<SeedHit> seed_scan(std::string_view query, const KmerIndex& subject_index,
                               std::string_view subject);

struct AlignmentColumn {
  char a;
  char b;
};

struct Alignment {
  std::string row_a;
  std::string row_b;
  int score = 0;
  ScoringScheme scheme;
  /// DP was restricted to a diagonal band (long inputs).
  bool banded = false;
  /// The traceback touched the band edge, so optimality is not guaranteed.
  bool band_hit = false;

  std::size_t size() const noexcept { return row_a.size(); }
  std::vector<AlignmentColumn> columns() const;
};

/// Sequences at or below this length use the full DP matrix.
inline constexpr std::size_t kFullMatrixLimit = 10'000;

/// Optimal global alignment under affine gaps (Gotoh). Traceback prefers
/// diagonal over up (gap in b) over left (gap in a) at every cell.
/// Errors: AlphabetMismatch, EmptyRecord (empty input), InvalidScheme.
Alignment global_align(const Sequence& a, const Sequence& b, const ScoringScheme& scheme);

/// Residue-level variant of global_align. Accepts empty inputs, which yield
/// an all-gap alignment.
Alignment align_residues(std::string_view a, std::string_view b, const ScoringScheme& scheme);

/// Recomputes the score of two gapped rows under `scheme`.
int score_rows(std::string_view row_a, std::string_view row_b, const ScoringScheme& scheme);

/// Fraction of columns holding identical non-gap residues; 1.0 for an empty alignment.
double percent_identity(const Alignment& al);

struct MismatchColumn {
  std::size_t column = 0;
  char a = kGap;
  char b = kGap;

  friend bool operator==(const MismatchColumn&, const MismatchColumn&) = default;
};

std::vector<MismatchColumn> mismatch_columns(const Alignment& al);

/// Rows with a '|' midline for identical columns, wrapped at `width` columns.
std::string format_alignment(const Alignment& al, std::size_t width = 60);

}  // namespace mutascan
