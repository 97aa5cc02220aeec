"""A tour of generalized matrix exponentials.

The classical exp(Az) weights the power A^p z^p by 1/p!.  Swapping p! for
another positive "moment" sequence m(p) gives

    E_m(Az) = sum_p A^p z^p / m(p),

which keeps some familiar properties (it solves a first-order system in the
matching calculus) and loses others (multiplicativity, entirety).  This demo
evaluates a few sequences side by side and shows a sequence for which the
series has a finite radius of convergence.
"""

import math

from momexp import (
    CMatrix,
    MomentSequence,
    eval_exp,
    growth_probe,
)


def main():
    A = CMatrix([[1.0, 0, 1], [1, 2, 0], [0, 0, 1]])
    z = 0.3

    print("E_m(Az) for a fixed 3x3 matrix at z = 0.3, three sequences:\n")
    for seq in (
        MomentSequence.factorial(),
        MomentSequence.mittag_leffler(2),
        MomentSequence.q_factorial(2),
    ):
        rep = eval_exp(A, z, seq)
        print(f"  m = {seq.specifier():<10} terms={rep.terms_used:<4}"
              f" tail<={rep.tail_estimate:.1e}")
        for row in rep.value.rows:
            print("    ", "  ".join(f"{x.real:+.6f}" for x in row))
        print()

    print("Sanity check: factorial moments reduce to the classical exp,")
    got = eval_exp(CMatrix([[0.7]]), 1.0, MomentSequence.factorial()).value
    print(f"  E(0.7) = {got.rows[0][0].real:.12f}   exp(0.7) = {math.exp(0.7):.12f}\n")

    # A geometric sequence m(p) = 2^p grows too slowly: the series is a plain
    # geometric series with radius 2, and the usual exponential law fails.
    geom = MomentSequence.geometric(2)
    probe = growth_probe(geom, 64)
    print(f"geometric m(p)=2^p: m(p)^(1/p) plateaus near {probe.min_root:.3f},")
    print(f"  finite radius suspected: {probe.finite_radius_suspected}")

    I = CMatrix.identity(2)  # exact backend: Gaussian-rational arithmetic
    e_plus = eval_exp(I, 1, geom).value
    e_minus = eval_exp(-I, 1, geom).value
    prod = e_plus @ e_minus
    print(f"  E(I)      = {e_plus.rows[0][0]} * I")
    print(f"  E(-I)     = {e_minus.rows[0][0]} * I")
    print(f"  E(I)E(-I) = {prod.rows[0][0]} * I   (not the identity!)")

    rep = eval_exp(I.to_float(), 3.0, geom)
    print(f"\n  at z=3 (outside the radius) evaluation reports: {rep.status}")


if __name__ == "__main__":
    main()
