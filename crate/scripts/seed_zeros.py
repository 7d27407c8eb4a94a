#!/usr/bin/env python3
"""Write crates/lab/data/zeros_seed.tsv: index<TAB>gamma for the first zeros.

usage: seed_zeros.py [COUNT] > crates/lab/data/zeros_seed.tsv
"""
import sys

from mpmath import im, mp, nstr, zetazero

count = int(sys.argv[1]) if len(sys.argv) > 1 else 2610
mp.dps = 25
print("# ordinates of the first nontrivial zeta zeros, 22 significant digits")
print("# generated by scripts/seed_zeros.py (mpmath zetazero)")
for n in range(1, count + 1):
    print(f"{n}\t{nstr(im(zetazero(n)), 22, strip_zeros=False)}")
