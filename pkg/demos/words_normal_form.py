#!/usr/bin/env python3
"""The irreducible-word normal form of the cubic q-Serre algebra.

Counts irreducible words by length, shows the graded split at length 4,
and reduces a few elements to normal form, once with alpha = 0 and once
with a nonzero alpha where the inverse generator z^-1 enters the result.
"""
from __future__ import annotations

from qtet import (
    AqAlpha,
    enumerate_irreducible,
    format_element,
    graded_split,
    parse_element,
    reduce_element,
)
from qtet.scalars import FieldSpec


def main():
    field = FieldSpec.symbolic()

    print("1. irreducible word counts by length")
    for n in range(7):
        words = enumerate_irreducible(n)
        print(f"   length {n}: {len(words)} of {2 ** n}")
    print("   length 4 drops exactly xyxx and yxyy")

    print("\n2. graded split at length 4")
    omega, lam = graded_split(4, field)
    print(f"   dim Omega_4 = {len(omega)}, dim Lambda_4 = {len(lam)}")
    for e in lam:
        print(f"   relation-side basis vector: {format_element(e)}")

    print("\n3. reduction at alpha = 0 (the words only rearrange)")
    alg0 = AqAlpha(field.zero(), field)
    for text in ("xyxx", "yxyy", "xxyxyy"):
        e = parse_element(text, field)
        print(f"   {text} -> {format_element(reduce_element(e, alg0))}")

    print("\n4. reduction at alpha = q (z^-1 appears with its coefficient)")
    algq = AqAlpha(field.q(), field)
    for text in ("xyxx", "xyx^2", "xyxxz^2"):
        e = parse_element(text, field)
        print(f"   {text} -> {format_element(reduce_element(e, algq))}")

    print("\n5. an irreducible element is its own normal form")
    e = parse_element("xyx + 3*yxy", field)
    assert reduce_element(e, algq) == e
    print(f"   {format_element(e)} is fixed")


if __name__ == "__main__":
    main()
