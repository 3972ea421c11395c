#include "mutascan/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "mutascan/error.hpp"
#include "mutascan/random.hpp"
#include "mutascan/translate.hpp"

namespace mutascan {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return fields;
}

bool is_allele(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return is_dna_residue(c); });
}

int base_slot(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

using VariantKey = std::tuple<std::size_t, std::string, std::string>;

VariantKey key_of(const Variant& v) { return {v.ref_pos, v.ref_allele, v.alt_allele}; }

}  // namespace

std::vector<CatalogEntry> load_catalog(std::string_view text, const std::vector<std::string>& genes) {
  std::vector<CatalogEntry> entries;
  std::set<std::pair<std::string, VariantKey>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const auto malformed = [&](const std::string& why) {
      return Error(ErrorCode::MalformedLine, "catalog line " + std::to_string(line_no) + ": " + why);
    };
    const auto fields = split_tabs(line);
    if (fields.size() < 4 || fields.size() > 5) throw malformed("expected 4 or 5 tab-separated fields");

    CatalogEntry entry;
    entry.gene = std::string(fields[0]);
    if (std::find(genes.begin(), genes.end(), entry.gene) == genes.end()) {
      throw Error(ErrorCode::UnknownGene,
                  "catalog line " + std::to_string(line_no) + ": gene '" + entry.gene + "' is not configured");
    }
    Variant& v = entry.variant;
    const auto [end, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), v.ref_pos);
    if (ec != std::errc{} || end != fields[1].data() + fields[1].size()) throw malformed("bad position");
    const std::string_view ref = fields[2];
    const std::string_view alt = fields[3];
    if (ref == "-" && alt == "-") throw malformed("both alleles empty");
    if (ref != "-" && !is_allele(ref)) throw malformed("bad ref allele");
    if (alt != "-" && !is_allele(alt)) throw malformed("bad alt allele");
    if (ref == "-") {
      v.kind = VariantKind::Insertion;
      v.alt_allele = std::string(alt);
    } else if (alt == "-") {
      v.kind = VariantKind::Deletion;
      v.ref_allele = std::string(ref);
    } else {
      if (ref.size() != alt.size()) throw malformed("substitution alleles differ in length");
      if (ref == alt) throw malformed("ref equals alt");
      v.kind = VariantKind::Substitution;
      v.ref_allele = std::string(ref);
      v.alt_allele = std::string(alt);
    }
    if (fields.size() == 5) entry.source = std::string(fields[4]);

    if (!seen.emplace(entry.gene, key_of(v)).second) {
      throw Error(ErrorCode::DuplicateEntry, "catalog line " + std::to_string(line_no) + ": duplicate " +
                                                 entry.gene + " " + v.notation());
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CatalogEntry> load_catalog_file(const std::string& path, const std::vector<std::string>& genes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str(), genes);
}

FeatureEncoder::FeatureEncoder(std::vector<std::string> genes) : genes_(std::move(genes)) {
  if (genes_.empty()) throw Error(ErrorCode::InvalidArgument, "gene set is empty");
}

std::size_t FeatureEncoder::gene_index(std::string_view gene) const {
  const auto it = std::find(genes_.begin(), genes_.end(), gene);
  if (it == genes_.end()) throw Error(ErrorCode::UnknownGene, "gene '" + std::string(gene) + "' is not configured");
  return static_cast<std::size_t>(it - genes_.begin());
}

std::vector<FeatureEncoder::Segment> FeatureEncoder::segments() const {
  const std::size_t g = genes_.size();
  return {
      {"gene", 0, g},
      {"kind", g, g + 3},
      {"position", g + 3, g + 4},
      {"ref_base", g + 4, g + 8},
      {"alt_base", g + 8, g + 12},
      {"context5_1", g + 12, g + 16},
      {"context5_2", g + 16, g + 20},
      {"context3_1", g + 20, g + 24},
      {"context3_2", g + 24, g + 28},
  };
}

std::vector<double> FeatureEncoder::encode(std::string_view gene, const Variant& v, const Sequence& reference,
                                           std::size_t gene_length) const {
  if (v.level != VariantLevel::DNA) throw Error(ErrorCode::InvalidArgument, "only DNA variants are encoded");
  const std::size_t g = gene_index(gene);
  if (gene_length == 0 || v.ref_pos >= gene_length || v.ref_pos > reference.size()) {
    throw Error(ErrorCode::PositionOutOfRange, "position " + std::to_string(v.ref_pos) +
                                                   " outside gene of length " + std::to_string(gene_length));
  }

  std::vector<double> x(length(), 0.0);
  const std::size_t n = genes_.size();
  x[g] = 1.0;
  x[n + static_cast<std::size_t>(v.kind)] = 1.0;
  x[n + 3] = static_cast<double>(v.ref_pos) / static_cast<double>(gene_length);

  const auto set_base = [&](std::size_t offset, char base) {
    if (const int slot = base_slot(base); slot >= 0) x[offset + static_cast<std::size_t>(slot)] = 1.0;
  };
  if (!v.ref_allele.empty()) set_base(n + 4, v.ref_allele.front());
  if (!v.alt_allele.empty()) set_base(n + 8, v.alt_allele.front());

  const std::string& r = reference.residues;
  // 5' flank: the two residues before ref_pos, farthest first.
  for (std::size_t k = 0; k < kContext; ++k) {
    const std::size_t back = kContext - k;
    if (v.ref_pos >= back) set_base(n + 12 + 4 * k, r[v.ref_pos - back]);
  }
  // 3' flank: the two residues after the reference allele.
  const std::size_t after = v.ref_pos + v.ref_allele.size();
  for (std::size_t k = 0; k < kContext; ++k) {
    if (after + k < r.size()) set_base(n + 20 + 4 * k, r[after + k]);
  }
  return x;
}

void check_catalog(const std::vector<CatalogEntry>& catalog, const std::map<std::string, Sequence>& references) {
  for (const CatalogEntry& e : catalog) {
    const auto it = references.find(e.gene);
    if (it == references.end()) {
      throw Error(ErrorCode::UnknownGene, "no reference sequence for gene '" + e.gene + "'");
    }
    const std::string& ref = it->second.residues;
    const Variant& v = e.variant;
    const bool fits = v.kind == VariantKind::Insertion ? v.ref_pos <= ref.size()
                                                        : v.ref_pos + v.ref_allele.size() <= ref.size();
    if (!fits) {
      throw Error(ErrorCode::PositionOutOfRange, e.gene + " " + v.notation() + " exceeds reference length " +
                                                     std::to_string(ref.size()));
    }
    if (ref.compare(v.ref_pos, v.ref_allele.size(), v.ref_allele) != 0) {
      throw Error(ErrorCode::RefAlleleMismatch, e.gene + " " + v.notation() + " disagrees with the reference");
    }
  }
}

namespace {

// Candidate benign substitutions for one gene, split by preference.
struct NegativePool {
  std::vector<Variant> synonymous;
  std::vector<Variant> other;
};

NegativePool make_pool(const Sequence& reference, const std::set<VariantKey>& excluded) {
  NegativePool pool;
  const std::string& r = reference.residues;
  std::vector<bool> synonymous_site(r.size() * 4, false);

  try {
    const OrfResult orf = best_orf_frame(reference);
    const CodonTable& table = CodonTable::standard();
    const std::size_t end = orf.start + 3 * orf.protein.size();
    for (std::size_t codon = orf.start; codon + 3 <= end; codon += 3) {
      const std::string original = r.substr(codon, 3);
      const char aa = table.translate(original);
      for (std::size_t offset = 0; offset < 3; ++offset) {
        for (char alt : std::string_view("ACGT")) {
          if (alt == original[offset]) continue;
          std::string mutated = original;
          mutated[offset] = alt;
          if (table.translate(mutated) == aa) synonymous_site[(codon + offset) * 4 + base_slot(alt)] = true;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoORF && e.code() != ErrorCode::EmptyFrame) throw;
  }

  for (std::size_t pos = 0; pos < r.size(); ++pos) {
    if (base_slot(r[pos]) < 0) continue;
    for (char alt : std::string_view("ACGT")) {
      if (alt == r[pos]) continue;
      Variant v{VariantLevel::DNA, VariantKind::Substitution, pos, std::string(1, r[pos]), std::string(1, alt)};
      if (excluded.count(key_of(v))) continue;
      auto& bucket = synonymous_site[pos * 4 + base_slot(alt)] ? pool.synonymous : pool.other;
      bucket.push_back(std::move(v));
    }
  }
  return pool;
}

Variant take_random(std::vector<Variant>& bucket, Rng& rng) {
  const std::size_t i = static_cast<std::size_t>(rng.below(bucket.size()));
  Variant v = std::move(bucket[i]);
  bucket[i] = std::move(bucket.back());
  bucket.pop_back();
  return v;
}

}  // namespace

std::vector<LabeledExample> build_training_set(const std::vector<CatalogEntry>& catalog,
                                               const std::map<std::string, Sequence>& references,
                                               const FeatureEncoder& encoder, std::size_t negatives_per_positive,
                                               std::uint64_t seed) {
  if (catalog.empty()) throw Error(ErrorCode::InvalidArgument, "catalog is empty");
  if (negatives_per_positive == 0) throw Error(ErrorCode::InvalidArgument, "negatives per positive must be >= 1");
  check_catalog(catalog, references);

  std::map<std::string, std::set<VariantKey>> excluded;
  for (const CatalogEntry& e : catalog) excluded[e.gene].insert(key_of(e.variant));

  Rng rng(seed);
  std::map<std::string, NegativePool> pools;
  std::vector<LabeledExample> out;
  out.reserve(catalog.size() * (1 + negatives_per_positive));

  for (const CatalogEntry& e : catalog) {
    const Sequence& reference = references.at(e.gene);
    const std::size_t g = encoder.gene_index(e.gene);

    LabeledExample positive;
    positive.gene = e.gene;
    positive.variant = e.variant;
    positive.features = encoder.encode(e.gene, e.variant, reference, reference.size());
    positive.target.assign(encoder.gene_count(), 0.0);
    positive.target[g] = 1.0;
    out.push_back(std::move(positive));

    auto [it, fresh] = pools.try_emplace(e.gene);
    if (fresh) it->second = make_pool(reference, excluded[e.gene]);
    NegativePool& pool = it->second;
    for (std::size_t n = 0; n < negatives_per_positive; ++n) {
      auto& bucket = !pool.synonymous.empty() ? pool.synonymous : pool.other;
      if (bucket.empty()) {
        throw Error(ErrorCode::InsufficientSpace, "gene " + e.gene + " has no room for more distinct negatives");
      }
      LabeledExample negative;
      negative.gene = e.gene;
      negative.variant = take_random(bucket, rng);
      negative.features = encoder.encode(e.gene, negative.variant, reference, reference.size());
      negative.target.assign(encoder.gene_count(), 0.0);
      out.push_back(std::move(negative));
    }
  }
  return out;
}

std::vector<CatalogEntry> match_catalog(const std::vector<CatalogEntry>& catalog, std::string_view gene,
                                        const Variant& v, std::string_view reference) {
  std::vector<CatalogEntry> hits;
  if (v.level != VariantLevel::DNA) return hits;
  const Variant probe = left_normalize(v, reference);
  for (const CatalogEntry& e : catalog) {
    if (e.gene != gene || e.variant.kind != v.kind) continue;
    if (left_normalize(e.variant, reference) == probe) hits.push_back(e);
  }
  return hits;
}

}  // namespace mutascan
