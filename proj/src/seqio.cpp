#include "mutascan/seqio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "httplib.h"
#include "mutascan/error.hpp"

namespace mutascan {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Residue bookkeeping for the record currently being read.
struct PendingRecord {
  Sequence seq;
  std::size_t header_line = 0;
  std::size_t first_u_line = 0;
  bool has_non_nucleotide = false;
};

void finish_record(PendingRecord& rec, std::vector<Sequence>& out) {
  if (rec.seq.residues.empty()) {
    throw Error(ErrorCode::EmptyRecord, "record '" + rec.seq.id + "' at line " +
                                            std::to_string(rec.header_line) + " has no residues");
  }
  if (rec.has_non_nucleotide) {
    rec.seq.alphabet = Alphabet::Protein;
    if (rec.first_u_line != 0) {
      throw Error(ErrorCode::IllegalResidue,
                  "line " + std::to_string(rec.first_u_line) + ": 'U' is not valid in protein record '" +
                      rec.seq.id + "'");
    }
  } else {
    rec.seq.alphabet = Alphabet::DNA;
    if (rec.first_u_line != 0) {
      std::replace(rec.seq.residues.begin(), rec.seq.residues.end(), 'U', 'T');
      rec.seq.rna_normalized = true;
    }
  }
  out.push_back(std::move(rec.seq));
}

bool is_nucleotide_symbol(char c) {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T' || c == 'N' || c == 'U';
}

}  // namespace

std::string_view to_string(Alphabet alphabet) noexcept {
  return alphabet == Alphabet::DNA ? "DNA" : "Protein";
}

bool is_dna_residue(char c) noexcept {
  return c == 'A' || c == 'C' || c == 'G' || c == 'T' || c == 'N';
}

bool is_protein_residue(char c) noexcept {
  static constexpr std::string_view kAmino = "ACDEFGHIKLMNPQRSTVWY*X";
  return kAmino.find(c) != std::string_view::npos;
}

std::vector<Sequence> parse_fasta(std::string_view text) {
  std::vector<Sequence> out;
  std::optional<PendingRecord> current;
  std::size_t line_no = 0;

  while (!text.empty() || line_no == 0) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (!line.empty() && line.front() == '>') {
      if (current) finish_record(*current, out);
      const std::string_view header = trim(line.substr(1));
      const auto split = std::find_if(header.begin(), header.end(), is_space);
      const std::string_view id(header.data(), static_cast<std::size_t>(split - header.begin()));
      if (id.empty()) {
        throw Error(ErrorCode::MalformedHeader,
                    "line " + std::to_string(line_no) + ": header without identifier");
      }
      current.emplace();
      current->seq.id = std::string(id);
      current->seq.description = std::string(trim(header.substr(id.size())));
      current->header_line = line_no;
    } else {
      for (char raw : line) {
        if (is_space(raw)) continue;
        if (!current) {
          throw Error(ErrorCode::MalformedHeader,
                      "line " + std::to_string(line_no) + ": sequence data before first '>' header");
        }
        const char c = upper(raw);
        if (!is_nucleotide_symbol(c) && !is_protein_residue(c)) {
          throw Error(ErrorCode::IllegalResidue, "line " + std::to_string(line_no) +
                                                     ": illegal residue '" + std::string(1, raw) + "'");
        }
        if (c == 'U' && current->first_u_line == 0) current->first_u_line = line_no;
        if (!is_nucleotide_symbol(c)) current->has_non_nucleotide = true;
        current->seq.residues.push_back(c);
      }
    }
    if (nl == std::string_view::npos) break;
  }
  if (current) finish_record(*current, out);
  if (out.empty()) throw Error(ErrorCode::EmptyInput, "no FASTA records in input");
  return out;
}

std::string write_fasta(const std::vector<Sequence>& seqs, std::size_t line_width) {
  if (line_width == 0) throw Error(ErrorCode::InvalidArgument, "line width must be positive");
  std::string out;
  for (const auto& seq : seqs) {
    out += '>';
    out += seq.id;
    if (!seq.description.empty()) {
      out += ' ';
      out += seq.description;
    }
    out += '\n';
    for (std::size_t i = 0; i < seq.residues.size(); i += line_width) {
      out.append(seq.residues, i, line_width);
      out += '\n';
    }
  }
  return out;
}

std::vector<Sequence> read_fasta_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_fasta(buf.str());
}

Sequence fetch_reference(std::string_view accession, std::string_view endpoint,
                         std::chrono::milliseconds timeout) {
  const bool token_ok =
      !accession.empty() && std::all_of(accession.begin(), accession.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
      });
  if (!token_ok) {
    throw Error(ErrorCode::InvalidArgument, "accession '" + std::string(accession) + "' is not a token");
  }
  if (endpoint.find(kAccessionPlaceholder) == std::string_view::npos) {
    throw Error(ErrorCode::InvalidArgument, "endpoint has no {accession} placeholder");
  }

  std::string url(endpoint);
  for (auto at = url.find(kAccessionPlaceholder); at != std::string::npos;
       at = url.find(kAccessionPlaceholder, at + accession.size())) {
    url.replace(at, kAccessionPlaceholder.size(), accession);
  }

  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "endpoint '" + url + "' lacks a scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  if (!client.is_valid()) throw Error(ErrorCode::InvalidArgument, "unsupported endpoint '" + origin + "'");
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);

  auto res = client.Get(path);
  if (!res) {
    throw Error(ErrorCode::TransportError,
                "GET " + url + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::RemoteError, "GET " + url + " returned status " + std::to_string(res->status));
  }
  try {
    return parse_fasta(res->body).front();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, "response from " + url + " is not FASTA: " + e.what());
  }
}

}  // namespace mutascan
