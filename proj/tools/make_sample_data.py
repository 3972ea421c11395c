#!/usr/bin/env python3
"""Regenerates the SYNTHETIC sample genes and catalog under data/.

The sequences are random coding sequences, not real BRCA1/BRCA2 loci; the
catalog entries are placeholders chosen so every one alters the encoded
protein. Output is deterministic.
"""
import random
from pathlib import Path

BASES = "TCAG"
AMINO = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG"
CODE = {a + b + c: AMINO[16 * i + 4 * j + k]
        for i, a in enumerate(BASES) for j, b in enumerate(BASES) for k, c in enumerate(BASES)}
SENSE = [c for c, aa in CODE.items() if aa != "*" and c != "ATG"]


def gene(rng, utr5, codons, utr3):
    def noise(n):
        while True:
            s = "".join(rng.choice("ACGT") for _ in range(n))
            if "ATG" not in s:
                return s
    body = "ATG" + "".join(rng.choice(SENSE) for _ in range(codons)) + "TAA"
    return noise(utr5) + body, utr5, noise(utr3)


def protein(seq, start):
    out = []
    for p in range(start, len(seq) - 2, 3):
        aa = CODE[seq[p:p + 3]]
        if aa == "*":
            break
        out.append(aa)
    return "".join(out)


def apply(seq, pos, ref, alt):
    assert seq[pos:pos + len(ref)] == ref
    return seq[:pos] + alt + seq[pos + len(ref):]


def missense(seq, start, codon_index, offset):
    """First amino-acid-changing single-base change, trying `offset` first."""
    for shift in range(3):
        o = (offset + shift) % 3
        pos = start + 3 * codon_index + o
        codon = seq[pos - o:pos - o + 3]
        for alt in "ACGT":
            mutated = codon[:o] + alt + codon[o + 1:]
            if alt != codon[o] and CODE[mutated] not in ("*", CODE[codon]):
                return pos, codon[o], alt
    raise ValueError("no missense alternative")


def nonsense(seq, start, codon_index):
    """First single-base change at or after codon_index that creates a stop."""
    while True:
        base = start + 3 * codon_index
        codon = seq[base:base + 3]
        for offset in range(3):
            for alt in "ACGT":
                mutated = codon[:offset] + alt + codon[offset + 1:]
                if alt != codon[offset] and CODE[mutated] == "*":
                    return base + offset, codon[offset], alt
        codon_index += 1


def left_normalize(seq, pos, ref, alt):
    """Leftmost equivalent placement of an indel ('-' marks the empty allele)."""
    if ref != "-" and alt != "-":
        return pos, ref, alt
    allele = alt if ref == "-" else ref
    while pos > 0 and seq[pos - 1] == allele[-1]:
        allele = seq[pos - 1] + allele[:-1]
        pos -= 1
    return (pos, "-", allele) if ref == "-" else (pos, allele, "-")


def main():
    rng = random.Random(20130617)
    data = Path(__file__).resolve().parent.parent / "data"
    data.mkdir(exist_ok=True)

    brca1, s1, tail1 = gene(rng, 24, 190, 30)
    brca2, s2, tail2 = gene(rng, 18, 160, 27)
    brca1 += tail1
    brca2 += tail2

    entries = []
    # BRCA1: three missense, one single-base deletion, one nonsense.
    for codon_index, offset in ((12, 1), (47, 0), (88, 2)):
        entries.append(("BRCA1",) + missense(brca1, s1, codon_index, offset))
    pos = s1 + 3 * 120 + 1
    entries.append(("BRCA1", pos, brca1[pos], "-"))
    entries.append(("BRCA1",) + nonsense(brca1, s1, 151))
    # BRCA2: two missense, a two-base insertion, one missense.
    for codon_index, offset in ((9, 0), (64, 1)):
        entries.append(("BRCA2",) + missense(brca2, s2, codon_index, offset))
    entries.append(("BRCA2", s2 + 3 * 101 + 2, "-", "GC"))
    entries.append(("BRCA2",) + missense(brca2, s2, 140, 2))

    refs = {"BRCA1": (brca1, s1), "BRCA2": (brca2, s2)}
    entries = [(n, *left_normalize(refs[n][0], p, r, a)) for n, p, r, a in entries]
    for name, pos, ref, alt in entries:
        seq, start = refs[name]
        r = "" if ref == "-" else ref
        a = "" if alt == "-" else alt
        assert protein(apply(seq, pos, r, a), start) != protein(seq, start), (name, pos)

    def fasta(name, seq):
        lines = [seq[i:i + 60] for i in range(0, len(seq), 60)]
        return f">{name} SYNTHETIC sample reference, not a real {name} locus\n" + "\n".join(lines) + "\n"

    (data / "BRCA1.fa").write_text(fasta("BRCA1", brca1))
    (data / "BRCA2.fa").write_text(fasta("BRCA2", brca2))
    (data / "references.fa").write_text(fasta("BRCA1", brca1) + fasta("BRCA2", brca2))

    rows = ["# SYNTHETIC sample catalog: placeholder pathogenic mutations for the bundled",
            "# synthetic BRCA1/BRCA2 references. Not clinical data.",
            "# gene\tpos(0-based)\tref\talt\tsource"]
    for i, (name, pos, ref, alt) in enumerate(entries):
        rows.append(f"{name}\t{pos}\t{ref}\t{alt}\tsynthetic-{i + 1}")
    (data / "sample_catalog.tsv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
