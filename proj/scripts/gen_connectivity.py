#!/usr/bin/env python3
"""Writes data/connectivity.tsv from the label groups below."""

import sys

OPEN = ["open"]
SONORANT = ["n=", "l=", "m=", "ng="]
STOP_KEPT = ["g=", "d=", "b="]
NEUTRALIZED = ["ch>d", "s>d", "ss>d", "j>d", "th>d", "ph>b", "kh>g", "gg>g", "bs>b"]
LINKED = ["gg=", "gs=", "nj=", "nh=", "lg=", "lm=", "lb=", "ls=", "lth=", "lph=", "lh=",
          "s=", "ss=", "j=", "ch=", "kh=", "th=", "ph=", "h=", "bs=", "bs>bss"]
NASALIZED = ["g>ng", "d>n", "b>m", "s>n", "ch>n", "th>n", "bs>m"]

LAX = ["k=", "t=", "p=", "s=", "j="]
STRONG = ["ch=", "kh=", "th=", "ph=", "h=", "gg=", "tt=", "pp=", "ss=", "jj="]
NASAL = ["n=", "m="]
LIQUID = ["r="]
VOWEL = ["_="]
TENSED = ["k>gg", "t>tt", "p>pp", "s>ss", "j>jj"]

EDGE = "|"


def pairs():
    yield from ((r, l) for r in OPEN for l in LAX + STRONG + NASAL + LIQUID + VOWEL)
    yield from ((r, l) for r in SONORANT for l in LAX + STRONG + NASAL + VOWEL)
    yield ("l=", "r=")
    yield from ((r, l) for r in STOP_KEPT for l in TENSED + STRONG + VOWEL)
    yield from ((r, l) for r in NEUTRALIZED for l in TENSED + STRONG)
    yield from ((r, l) for r in LINKED for l in VOWEL)
    yield from ((r, l) for r in NASALIZED for l in NASAL)
    yield from ((EDGE, l) for l in LAX + STRONG + NASAL + LIQUID + VOWEL)
    yield from ((r, EDGE) for r in OPEN + SONORANT + STOP_KEPT + NEUTRALIZED)


def main():
    out = sys.stdout
    out.write("#g2p-v1\n")
    out.write("# right-label\tleft-label  (generated by scripts/gen_connectivity.py)\n")
    seen = set()
    for p in pairs():
        if p not in seen:
            seen.add(p)
            out.write(f"{p[0]}\t{p[1]}\n")


if __name__ == "__main__":
    main()
