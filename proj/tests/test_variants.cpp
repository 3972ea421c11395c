#include "doctest.h"
#include "expect_error.hpp"
#include "mutascan/random.hpp"
#include "mutascan/variants.hpp"
#include "oracles.hpp"

using namespace mutascan;

namespace {

Sequence dna(std::string residues, std::string id = "g") {
  return Sequence{std::move(id), "", std::move(residues), Alphabet::DNA};
}

CandidateVerdict assess(const std::string& ref, const std::string& patient, FrameChoice frame = kAutoFrame) {
  return assess_candidate(dna(ref, "ref"), dna(patient, "patient"), frame, default_dna_scheme(),
                          default_protein_scheme());
}

// Reference and patient with a few random point edits and short indels.
std::pair<std::string, std::string> mutated_pair(Rng& rng) {
  const std::string ref = oracle::random_dna(rng, 1 + rng.below(80));
  std::string patient = ref;
  const auto edits = rng.below(5);
  for (std::uint64_t e = 0; e < edits; ++e) {
    const auto pos = rng.below(patient.size() + 1);
    switch (rng.below(3)) {
      case 0:
        if (pos < patient.size()) patient[pos] = "ACGT"[rng.below(4)];
        break;
      case 1:
        patient.insert(pos, oracle::random_dna(rng, 1 + rng.below(3)));
        break;
      default:
        if (pos < patient.size()) patient.erase(pos, 1 + rng.below(3));
    }
  }
  if (patient.empty()) patient = "A";
  return {ref, patient};
}

}  // namespace

TEST_CASE("call_variants examples") {
  const auto scheme = default_dna_scheme();
  const Alignment sub = global_align(dna("ACGT"), dna("AGGT"), scheme);
  const auto vs = call_variants(sub, true);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].notation() == "1:C>G");
  CHECK(vs[0].kind == VariantKind::Substitution);

  CHECK(call_variants(global_align(dna("ACGT"), dna("ACGT"), scheme), true).empty());

  Alignment indel;
  indel.row_a = "AC--GTTA";
  indel.row_b = "ACTTG--A";
  const auto calls = call_variants(indel, true);
  REQUIRE(calls.size() == 2);
  CHECK(calls[0] == Variant{VariantLevel::DNA, VariantKind::Insertion, 2, "", "TT"});
  CHECK(calls[1] == Variant{VariantLevel::DNA, VariantKind::Deletion, 3, "TT", ""});
  CHECK(apply_variants("ACGTTA", calls) == "ACTTGA");

  // Reading the same alignment with the reference in row b swaps the roles.
  const auto swapped = call_variants(indel, false);
  REQUIRE(swapped.size() == 2);
  CHECK(swapped[0].kind == VariantKind::Deletion);
  CHECK(swapped[1].kind == VariantKind::Insertion);
}

TEST_CASE("variant notation parses back") {
  for (const char* text : {"5:A>G", "0:ins:TT", "12:del:ACG", "3:AC>GT"}) {
    CHECK(parse_variant(text).notation() == text);
  }
  CHECK(parse_variant("1:G>R", VariantLevel::Protein).level == VariantLevel::Protein);
  for (const char* bad : {"", "x:A>G", "5:A", "5:ins:", "5:A>", "-1:A>G", "5:AC>G"}) {
    CHECK(code_of([&] { parse_variant(bad); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("left_normalize shifts indels through repeats") {
  const std::string ref = "GAAAAT";
  CHECK(left_normalize(Variant{VariantLevel::DNA, VariantKind::Deletion, 3, "A", ""}, ref).ref_pos == 1);
  CHECK(left_normalize(Variant{VariantLevel::DNA, VariantKind::Insertion, 5, "", "A"}, ref).ref_pos == 1);
  const Variant rot = left_normalize(Variant{VariantLevel::DNA, VariantKind::Deletion, 2, "AC", ""}, "ACACAT");
  CHECK(rot.ref_pos == 0);
  CHECK(rot.ref_allele == "AC");
  const Variant sub{VariantLevel::DNA, VariantKind::Substitution, 2, "A", "C"};
  CHECK(left_normalize(sub, ref) == sub);
}

TEST_CASE("property: applying called variants rebuilds the patient") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto [ref, patient] = mutated_pair(rng);
    const Alignment al = global_align(dna(ref), dna(patient), default_dna_scheme());
    const auto vs = call_variants(al, true);
    CHECK(apply_variants(ref, vs) == patient);
    for (std::size_t i = 1; i < vs.size(); ++i) CHECK(vs[i - 1].ref_pos <= vs[i].ref_pos);
    for (const auto& v : vs) CHECK_NOTHROW(validate(v));
  }
}

TEST_CASE("assess_candidate: synonymous change") {
  const auto v = assess("ATGGGA", "ATGGGG");
  REQUIRE(v.dna_variants.size() == 1);
  CHECK(v.dna_variants[0] == Variant{VariantLevel::DNA, VariantKind::Substitution, 5, "A", "G"});
  CHECK(v.protein_variants.empty());
  CHECK_FALSE(v.malignant_candidate);
  CHECK(v.rationale == Rationale::SilentDnaOnly);
  CHECK(v.reference_protein == "MG");
  CHECK(v.patient_protein == "MG");
}

TEST_CASE("assess_candidate: missense change") {
  const auto v = assess("ATGGGA", "ATGCGA");
  REQUIRE(v.protein_variants.size() == 1);
  CHECK(v.protein_variants[0] == Variant{VariantLevel::Protein, VariantKind::Substitution, 1, "G", "R"});
  CHECK(v.malignant_candidate);
  CHECK(v.rationale == Rationale::ProteinChanged);
  REQUIRE(v.protein_alignment.has_value());
}

TEST_CASE("assess_candidate: identical genes") {
  const auto v = assess("ATGGGATAA", "ATGGGATAA");
  CHECK(v.dna_variants.empty());
  CHECK(v.rationale == Rationale::NoDnaDifference);
  CHECK_FALSE(v.malignant_candidate);
  CHECK_FALSE(v.protein_alignment.has_value());
}

TEST_CASE("assess_candidate: fixed and automatic frames") {
  // The ORF starts at offset 2; frame 2 and auto agree.
  const std::string ref = "CCATGAAACCCGGGTAA";
  const std::string patient = "CCATGAAACCCTGGTAA";
  const auto autov = assess(ref, patient);
  const auto fixed = assess(ref, patient, 2);
  CHECK(autov.frame == 2);
  CHECK(autov.reference_cds_start == 2);
  CHECK(autov.patient_cds_start == 2);
  CHECK(autov.protein_variants == fixed.protein_variants);
  CHECK(autov.rationale == Rationale::ProteinChanged);

  // A change upstream of the start codon is outside the coding region.
  const auto utr = assess(ref, "GCATGAAACCCGGGTAA");
  CHECK(utr.dna_variants.size() == 1);
  CHECK(utr.rationale == Rationale::SilentDnaOnly);
}

TEST_CASE("property: a frameshift inside the coding region changes the protein") {
  Rng rng(42);
  static constexpr std::string_view kSense[] = {"GCT", "CGT", "AAC", "GAC", "TGC", "CAA", "GGT", "CAC",
                                                "ATT", "CTG", "AAA", "TTC", "CCT", "TCT", "ACT", "TAC"};
  for (int trial = 0; trial < 60; ++trial) {
    std::string ref = "CC";
    ref += "ATG";
    for (int c = 0; c < 20; ++c) ref += kSense[rng.below(std::size(kSense))];
    ref += "TAAGCGC";
    std::string patient = ref;
    const std::size_t pos = 8 + rng.below(40);
    patient.erase(pos, 1);
    const auto v = assess(ref, patient);
    REQUIRE_FALSE(v.dna_variants.empty());
    CHECK(v.malignant_candidate);
    CHECK(v.rationale == Rationale::ProteinChanged);
  }
}

TEST_CASE("assess_candidate requires DNA") {
  const Sequence prot{"p", "", "MKW", Alphabet::Protein};
  CHECK(code_of([&] {
          assess_candidate(dna("ATG"), prot, kAutoFrame, default_dna_scheme(), default_protein_scheme());
        }) == ErrorCode::NotDNA);
}
