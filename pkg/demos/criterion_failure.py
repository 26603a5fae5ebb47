#!/usr/bin/env python3
"""Three ways the machinery answers "no".

A collision parameter where no q-mixed pair exists, an injected zeta
sequence whose criterion value vanishes, and a commuting pair that is not
a tridiagonal pair at all.
"""
from __future__ import annotations

from qtet import (
    GenerationError,
    GenSpec,
    MatrixE,
    TriPair,
    build_P,
    derive_profile,
    derive_qmixed,
    evaluate_criterion,
    generate_qgeometric,
    verify_axioms,
)
from qtet.scalars import FieldSpec


def main():
    field = FieldSpec.symbolic()
    qv = field.q()

    print("1. the collision parameter c = q^2 at diameter 2")
    geo = generate_qgeometric(GenSpec(2, "q_geometric", field))
    try:
        derive_qmixed(geo, qv ** 2)
    except GenerationError as exc:
        print(f"   refused: {exc}")

    print("\n2. a zeta sequence that zeroes the criterion at d = 1")
    zeta = (field.one(), -((qv - qv ** -1) ** 2))
    res = evaluate_criterion(build_P(zeta, 1, field))
    print(f"   P coefficients: [{', '.join(str(a) for a in res.P_coeffs)}]")
    print(f"   lambda* = {res.lambda_star}")
    print(f"   P(lambda*) = {res.P_at_lambda_star}")
    print(f"   module exists: {res.exists_module}")

    print("\n3. a commuting diagonal pair fails the axioms")
    A = MatrixE.build(field, [["q^-1", 0], [0, "q"]])
    Astar = MatrixE.build(field, [["q", 0], [0, "q^-1"]])
    pair = TriPair(A, Astar)
    profile = derive_profile(pair)
    print(f"   eigenvalue pattern: {profile.pair_class.kind}, d = {profile.d}")
    report = verify_axioms(pair, profile)
    print(f"   diagonalizable:    {report.diagonalizable}")
    print(f"   A* tridiagonal:    {report.astar_tridiagonal}")
    print(f"   A tridiagonal:     {report.a_tridiagonal}")
    print(f"   irreducible:       {report.irreducible}")
    for name, why in report.details.items():
        print(f"   detail ({name}): {why}")


if __name__ == "__main__":
    main()
