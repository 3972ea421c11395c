#include <chrono>
#include <thread>

#include "doctest.h"
#include "expect_error.hpp"
#include "httplib.h"
#include "mutascan/error.hpp"
#include "mutascan/random.hpp"
#include "mutascan/seqio.hpp"

using namespace mutascan;

TEST_CASE("parse_fasta reads records") {
  const auto seqs = parse_fasta(">s1 ref\nACGT\nACGT");
  REQUIRE(seqs.size() == 1);
  CHECK(seqs[0].id == "s1");
  CHECK(seqs[0].description == "ref");
  CHECK(seqs[0].residues == "ACGTACGT");
  CHECK(seqs[0].alphabet == Alphabet::DNA);

  const auto prot = parse_fasta(">p\nMK*\n");
  REQUIRE(prot.size() == 1);
  CHECK(prot[0].residues == "MK*");
  CHECK(prot[0].alphabet == Alphabet::Protein);
}

TEST_CASE("parse_fasta normalizes case, whitespace and RNA") {
  const auto seqs = parse_fasta("\n>a  two words here \r\nac gt\r\n\n>b\nmkv\n>c\nACGU\n");
  REQUIRE(seqs.size() == 3);
  CHECK(seqs[0].description == "two words here");
  CHECK(seqs[0].residues == "ACGT");
  CHECK(seqs[1].residues == "MKV");
  CHECK(seqs[1].alphabet == Alphabet::Protein);
  CHECK(seqs[2].residues == "ACGT");
  CHECK(seqs[2].rna_normalized);
  CHECK_FALSE(seqs[0].rna_normalized);
}

TEST_CASE("parse_fasta errors") {
  CHECK(code_of([] { parse_fasta("ACGT"); }) == ErrorCode::MalformedHeader);
  CHECK(code_of([] { parse_fasta(""); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { parse_fasta("\n  \n"); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { parse_fasta(">a\n>b\nAC\n"); }) == ErrorCode::EmptyRecord);
  CHECK(code_of([] { parse_fasta(">\nACGT\n"); }) == ErrorCode::MalformedHeader);
  // 'U' is RNA in a nucleotide record but not an amino acid.
  CHECK(code_of([] { parse_fasta(">p\nMKU\n"); }) == ErrorCode::IllegalResidue);

  try {
    parse_fasta(">a\nACGT\nAC-T\n");
    FAIL("expected IllegalResidue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalResidue);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  // Ambiguity codes other than N are rejected rather than guessed.
  CHECK(code_of([] { parse_fasta(">a\nACGTB\n"); }) == ErrorCode::IllegalResidue);
}

TEST_CASE("write_fasta wraps lines") {
  Sequence s{"s1", "", "ACGTA", Alphabet::DNA};
  CHECK(write_fasta({s}, 4) == ">s1\nACGT\nA\n");
  CHECK(write_fasta({}, 4).empty());
  s.description = "a b";
  CHECK(write_fasta({s}, 10) == ">s1 a b\nACGTA\n");
  CHECK(code_of([&] { write_fasta({s}, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: write/parse round trip for every width") {
  Rng rng(7);
  static constexpr std::string_view kDna = "ACGTN";
  static constexpr std::string_view kAmino = "ACDEFGHIKLMNPQRSTVWY*X";
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Sequence> seqs;
    const auto count = 1 + rng.below(4);
    for (std::uint64_t r = 0; r < count; ++r) {
      Sequence s;
      s.id = "id" + std::to_string(trial) + "_" + std::to_string(r);
      if (rng.below(2)) s.description = "desc " + std::to_string(rng.below(1000)) + " x";
      const bool protein = rng.below(2) == 1;
      s.alphabet = protein ? Alphabet::Protein : Alphabet::DNA;
      const auto len = 1 + rng.below(150);
      const std::string_view alphabet = protein ? kAmino : kDna;
      for (std::uint64_t i = 0; i < len; ++i) s.residues.push_back(alphabet[rng.below(alphabet.size())]);
      // A protein record must carry a non-nucleotide residue to be recognizable.
      if (protein) s.residues[rng.below(len)] = 'W';
      seqs.push_back(std::move(s));
    }
    const std::size_t width = 1 + rng.below(80);
    CHECK(parse_fasta(write_fasta(seqs, width)) == seqs);
  }
}

TEST_CASE("property: parsing never drops residues") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    std::size_t expected = 0;
    const auto records = 1 + rng.below(3);
    for (std::uint64_t r = 0; r < records; ++r) {
      text += ">r" + std::to_string(r) + " note\n";
      const auto lines = 1 + rng.below(4);
      for (std::uint64_t l = 0; l < lines; ++l) {
        const auto len = 1 + rng.below(30);
        for (std::uint64_t i = 0; i < len; ++i) {
          text.push_back("acgtACGT"[rng.below(8)]);
          ++expected;
          if (rng.below(10) == 0) text.push_back(' ');
        }
        text += rng.below(2) ? "\n" : "\r\n";
      }
    }
    std::size_t total = 0;
    for (const auto& s : parse_fasta(text)) total += s.size();
    CHECK(total == expected);
  }
}

TEST_CASE("alphabet inference is order independent") {
  CHECK(parse_fasta(">a\nWACGT\n")[0].alphabet == Alphabet::Protein);
  CHECK(parse_fasta(">a\nACGTW\n")[0].alphabet == Alphabet::Protein);
  CHECK(parse_fasta(">a\nNACGT\n")[0].alphabet == Alphabet::DNA);
}

namespace {

// Local HTTP fixture serving canned FASTA bodies.
class FixtureServer {
 public:
  FixtureServer() {
    server_.Get(R"(/fasta/X1)", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(">X1\nACGT", "text/plain");
    });
    server_.Get(R"(/fasta/(.*))", [](const httplib::Request&, httplib::Response& res) {
      res.status = 404;
      res.set_content("not found", "text/plain");
    });
    server_.Get(R"(/junk/(.*))", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not fasta", "text/plain");
    });
    server_.Get(R"(/slow/(.*))", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      res.set_content(">late\nACGT\n", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FixtureServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("fetch_reference against a fixture server") {
  FixtureServer fixture;
  const auto timeout = std::chrono::milliseconds(2000);

  const Sequence s = fetch_reference("X1", fixture.url("/fasta/{accession}"), timeout);
  CHECK(s.id == "X1");
  CHECK(s.residues == "ACGT");

  CHECK(code_of([&] { fetch_reference("NOPE", fixture.url("/fasta/{accession}"), timeout); }) ==
        ErrorCode::RemoteError);
  CHECK(code_of([&] { fetch_reference("X1", fixture.url("/junk/{accession}"), timeout); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([&] {
          fetch_reference("X1", fixture.url("/slow/{accession}"), std::chrono::milliseconds(200));
        }) == ErrorCode::TransportError);
  CHECK(code_of([&] { fetch_reference("X1", fixture.url("/fasta/X1"), timeout); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { fetch_reference("a b", fixture.url("/fasta/{accession}"), timeout); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("fetch_reference reports refused connections as transport errors") {
  // Grab a free port, then release it so nothing listens there.
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  const std::string endpoint = "http://127.0.0.1:" + std::to_string(port) + "/{accession}";
  CHECK(code_of([&] { fetch_reference("X1", endpoint, std::chrono::milliseconds(500)); }) ==
        ErrorCode::TransportError);
}
