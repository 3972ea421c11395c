#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mutascan {

enum class Alphabet { DNA, Protein };

std::string_view to_string(Alphabet alphabet) noexcept;

/// One FASTA record. Residues are stored uppercase.
struct Sequence {
  std::string id;
  std::string description;
  std::string residues;
  Alphabet alphabet = Alphabet::DNA;
  /// Set when RNA 'U' residues were rewritten to 'T' during parsing.
  bool rna_normalized = false;

  std::size_t size() const noexcept { return residues.size(); }

  /// Identity comparison (id, description, residues, alphabet). The RNA flag
  /// is provenance and does not participate.
  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.id == b.id && a.description == b.description && a.residues == b.residues &&
           a.alphabet == b.alphabet;
  }
};

bool is_dna_residue(char c) noexcept;
bool is_protein_residue(char c) noexcept;

/// Parses FASTA text into records in file order. Alphabet is inferred per
/// record: Protein iff some residue lies outside {A,C,G,T,N,U}.
///
/// Throws Error with EmptyInput, MalformedHeader, IllegalResidue (message
/// carries the 1-based line number) or EmptyRecord.
std::vector<Sequence> parse_fasta(std::string_view text);

/// Canonical FASTA text, residues wrapped at `line_width` (must be >= 1).
std::string write_fasta(const std::vector<Sequence>& seqs, std::size_t line_width = 60);

/// Reads a FASTA file from disk. Throws IoError when unreadable.
std::vector<Sequence> read_fasta_file(const std::string& path);

/// Endpoint placeholder substituted by fetch_reference.
inline constexpr std::string_view kAccessionPlaceholder = "{accession}";

/// Performs one HTTP GET on `endpoint` with `{accession}` substituted and
/// returns the first FASTA record of the body.
///
/// Errors: InvalidArgument (bad template or accession), TransportError,
/// RemoteError (non-2xx status), ParseError (body is not FASTA).
Sequence fetch_reference(std::string_view accession, std::string_view endpoint,
                         std::chrono::milliseconds timeout);

}  // namespace mutascan
