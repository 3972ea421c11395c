#include "mutascan/align.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>

#include "mutascan/error.hpp"

namespace mutascan {

namespace {

void require_same_alphabet(const Sequence& a, const Sequence& b) {
  if (a.alphabet != b.alphabet) {
    throw Error(ErrorCode::AlphabetMismatch, "'" + a.id + "' is " + std::string(to_string(a.alphabet)) +
                                                 " but '" + b.id + "' is " +
                                                 std::string(to_string(b.alphabet)));
  }
}

// DP states. The numeric order is the traceback preference.
enum State : std::uint8_t { kDiag = 0, kUp = 1, kLeft = 2 };

constexpr std::int64_t kNeg = std::numeric_limits<std::int64_t>::min() / 4;

// Picks the best of three candidates, first index winning ties.
std::pair<std::int64_t, std::uint8_t> best_of(std::int64_t diag, std::int64_t up, std::int64_t left) {
  std::int64_t best = diag;
  std::uint8_t from = kDiag;
  if (up > best) {
    best = up;
    from = kUp;
  }
  if (left > best) {
    best = left;
    from = kLeft;
  }
  return {std::max(best, kNeg), from};
}

// Traceback pointers for the cells of one row inside the band.
struct PointerRow {
  std::size_t first_col = 0;
  std::vector<std::uint8_t> cells;  // bits 0-1: diag pred, 2-3: up pred, 4-5: left pred
};

struct Band {
  std::int64_t lo;  // minimum j - i
  std::int64_t hi;  // maximum j - i
};

Alignment gotoh(std::string_view a, std::string_view b, const ScoringScheme& scheme, Band band,
                bool banded) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  const auto col_range = [&](std::size_t i) {
    const std::int64_t ii = static_cast<std::int64_t>(i);
    const std::int64_t first = std::max<std::int64_t>(0, ii + band.lo);
    const std::int64_t last = std::min<std::int64_t>(static_cast<std::int64_t>(m), ii + band.hi);
    return std::pair<std::size_t, std::size_t>{static_cast<std::size_t>(first),
                                               static_cast<std::size_t>(last)};
  };

  std::array<std::vector<std::int64_t>, 3> prev, cur;
  for (auto* rows : {&prev, &cur}) {
    for (auto& r : *rows) r.assign(m + 2, kNeg);
  }
  std::vector<PointerRow> pointers(n + 1);

  const std::int64_t open = scheme.gap_open;
  const std::int64_t extend = scheme.gap_extend;

  for (std::size_t i = 0; i <= n; ++i) {
    const auto [first, last] = col_range(i);
    PointerRow& prow = pointers[i];
    prow.first_col = first;
    prow.cells.assign(last - first + 1, 0);
    for (auto& r : cur) {
      if (first > 0) r[first - 1] = kNeg;
      r[last + 1] = kNeg;
    }

    for (std::size_t j = first; j <= last; ++j) {
      std::uint8_t ptr = 0;
      std::int64_t diag = kNeg, up = kNeg, left = kNeg;
      if (i == 0 && j == 0) {
        diag = 0;
      } else {
        if (i > 0 && j > 0) {
          const auto [v, from] = best_of(prev[kDiag][j - 1], prev[kUp][j - 1], prev[kLeft][j - 1]);
          diag = v == kNeg ? kNeg : v + scheme.substitution(a[i - 1], b[j - 1]);
          ptr |= from;
        }
        if (i > 0) {
          const auto [v, from] = best_of(prev[kDiag][j] + open, prev[kUp][j] + extend, prev[kLeft][j] + open);
          up = v;
          ptr |= static_cast<std::uint8_t>(from << 2);
        }
        if (j > 0) {
          const auto [v, from] = best_of(cur[kDiag][j - 1] + open, cur[kUp][j - 1] + open, cur[kLeft][j - 1] + extend);
          left = v;
          ptr |= static_cast<std::uint8_t>(from << 4);
        }
      }
      cur[kDiag][j] = std::max(diag, kNeg);
      cur[kUp][j] = up;
      cur[kLeft][j] = left;
      prow.cells[j - first] = ptr;
    }
    std::swap(prev, cur);
  }

  Alignment al;
  al.scheme = scheme;
  al.banded = banded;
  const auto [end_score, end_state] = best_of(prev[kDiag][m], prev[kUp][m], prev[kLeft][m]);
  al.score = static_cast<int>(end_score);

  std::size_t i = n, j = m;
  std::uint8_t state = end_state;
  while (i > 0 || j > 0) {
    if (banded) {
      const std::int64_t d = static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i);
      if ((d == band.lo && i < n) || (d == band.hi && j < m)) al.band_hit = true;
    }
    const PointerRow& prow = pointers[i];
    const std::uint8_t ptr = prow.cells[j - prow.first_col];
    switch (state) {
      case kDiag:
        al.row_a.push_back(a[i - 1]);
        al.row_b.push_back(b[j - 1]);
        state = ptr & 3u;
        --i;
        --j;
        break;
      case kUp:
        al.row_a.push_back(a[i - 1]);
        al.row_b.push_back(kGap);
        state = (ptr >> 2) & 3u;
        --i;
        break;
      default:
        al.row_a.push_back(kGap);
        al.row_b.push_back(b[j - 1]);
        state = (ptr >> 4) & 3u;
        --j;
        break;
    }
  }
  std::reverse(al.row_a.begin(), al.row_a.end());
  std::reverse(al.row_b.begin(), al.row_b.end());
  return al;
}

}  // namespace

void ScoringScheme::validate() const {
  if (!(match > mismatch) || mismatch > 0 || !(gap_open <= gap_extend) || gap_extend > 0) {
    throw Error(ErrorCode::InvalidScheme,
                "scheme requires match > mismatch, mismatch <= 0, gap_open <= gap_extend <= 0 (got " +
                    std::to_string(match) + "/" + std::to_string(mismatch) + "/" +
                    std::to_string(gap_open) + "/" + std::to_string(gap_extend) + ")");
  }
}

ScoringScheme default_dna_scheme() noexcept { return {2, -1, -4, -1}; }
ScoringScheme default_protein_scheme() noexcept { return {2, -1, -6, -1}; }

KmerIndex::KmerIndex(std::string_view text, std::size_t k) : text_(text), k_(k) {
  if (k == 0 || k > text.size()) return;
  for (std::size_t pos = 0; pos + k <= text.size(); ++pos) positions_[text.substr(pos, k)].push_back(pos);
}

KmerIndex::KmerIndex(std::string_view text, std::size_t k, std::span<const std::size_t> order)
    : text_(text), k_(k) {
  for (std::size_t pos : order) {
    if (k > 0 && pos + k <= text.size()) positions_[text.substr(pos, k)].push_back(pos);
  }
}

std::span<const std::size_t> KmerIndex::lookup(std::string_view kmer) const {
  const auto it = positions_.find(kmer);
  if (it == positions_.end()) return {};
  return it->second;
}

std::vector<SeedHit> seed_scan(std::string_view query, const KmerIndex& subject_index,
                               std::string_view subject) {
  const std::size_t k = subject_index.k();
  std::vector<SeedHit> hits;
  if (k == 0 || k > query.size()) return hits;
  for (std::size_t qi = 0; qi + k <= query.size(); ++qi) {
    for (std::size_t sj : subject_index.lookup(query.substr(qi, k))) {
      // Only left-maximal starts; interior k-mers of a run are skipped.
      if (qi > 0 && sj > 0 && query[qi - 1] == subject[sj - 1]) continue;
      std::size_t len = k;
      while (qi + len < query.size() && sj + len < subject.size() && query[qi + len] == subject[sj + len]) ++len;
      hits.push_back({qi, sj, len, static_cast<std::int64_t>(sj) - static_cast<std::int64_t>(qi)});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const SeedHit& x, const SeedHit& y) {
    return std::tie(x.diagonal, x.query_pos) < std::tie(y.diagonal, y.query_pos);
  });
  return hits;
}

std::vector<SeedHit> seed_scan(const Sequence& query, const Sequence& subject, std::size_t k) {
  require_same_alphabet(query, subject);
  if (k == 0 || k > std::min(query.size(), subject.size())) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " must be in [1, " +
                                          std::to_string(std::min(query.size(), subject.size())) + "]");
  }
  const KmerIndex index(subject.residues, k);
  return seed_scan(query.residues, index, subject.residues);
}

std::vector<AlignmentColumn> Alignment::columns() const {
  std::vector<AlignmentColumn> cols;
  cols.reserve(row_a.size());
  for (std::size_t c = 0; c < row_a.size(); ++c) cols.push_back({row_a[c], row_b[c]});
  return cols;
}

Alignment align_residues(std::string_view a, std::string_view b, const ScoringScheme& scheme) {
  scheme.validate();
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (std::max(n, m) <= kFullMatrixLimit) {
    return gotoh(a, b, scheme, {-static_cast<std::int64_t>(n), static_cast<std::int64_t>(m)}, false);
  }
  const std::int64_t diff = static_cast<std::int64_t>(m) - static_cast<std::int64_t>(n);
  const std::int64_t half = 32 + std::abs(diff) / 2;
  const Band band{std::min<std::int64_t>(0, diff) - half, std::max<std::int64_t>(0, diff) + half};
  return gotoh(a, b, scheme, band, true);
}

Alignment global_align(const Sequence& a, const Sequence& b, const ScoringScheme& scheme) {
  require_same_alphabet(a, b);
  if (a.residues.empty() || b.residues.empty()) {
    throw Error(ErrorCode::EmptyRecord, "global_align requires non-empty sequences");
  }
  return align_residues(a.residues, b.residues, scheme);
}

int score_rows(std::string_view row_a, std::string_view row_b, const ScoringScheme& scheme) {
  int score = 0;
  bool in_gap_a = false, in_gap_b = false;
  for (std::size_t c = 0; c < row_a.size(); ++c) {
    const bool gap_a = row_a[c] == kGap;
    const bool gap_b = row_b[c] == kGap;
    if (gap_a) {
      score += in_gap_a ? scheme.gap_extend : scheme.gap_open;
    } else if (gap_b) {
      score += in_gap_b ? scheme.gap_extend : scheme.gap_open;
    } else {
      score += scheme.substitution(row_a[c], row_b[c]);
    }
    in_gap_a = gap_a;
    in_gap_b = gap_b;
  }
  return score;
}

double percent_identity(const Alignment& al) {
  if (al.row_a.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t c = 0; c < al.row_a.size(); ++c) {
    if (al.row_a[c] != kGap && al.row_a[c] == al.row_b[c]) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(al.row_a.size());
}

std::vector<MismatchColumn> mismatch_columns(const Alignment& al) {
  std::vector<MismatchColumn> out;
  for (std::size_t c = 0; c < al.row_a.size(); ++c) {
    if (al.row_a[c] != al.row_b[c]) out.push_back({c, al.row_a[c], al.row_b[c]});
  }
  return out;
}

std::string format_alignment(const Alignment& al, std::size_t width) {
  if (width == 0) width = al.size() + 1;
  std::string out;
  for (std::size_t start = 0; start < al.size(); start += width) {
    const std::size_t len = std::min(width, al.size() - start);
    out.append(al.row_a, start, len);
    out += '\n';
    for (std::size_t c = start; c < start + len; ++c) {
      out += (al.row_a[c] != kGap && al.row_a[c] == al.row_b[c]) ? '|' : ' ';
    }
    out += '\n';
    out.append(al.row_b, start, len);
    out += '\n';
    if (start + len < al.size()) out += '\n';
  }
  return out;
}

}  // namespace mutascan
