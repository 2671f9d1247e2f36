"""Certify smoothness of a quintic with rational coefficients by reduction mod p.

X is smooth iff the partial derivatives have no common zero in P^4.  Over a
field this holds iff every variable has a power in the Jacobian ideal, which
shows up as a pure-power leading monomial in a Groebner basis.  A smooth
reduction mod p (p not 5, p not dividing a denominator) implies smoothness in
characteristic zero.

Usage: python3 scripts/check_smoothness.py FILE.json [--prime P]
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import sympy as sp

from quintic_orbifold.cyclo import parse_coeff


def is_smooth_mod_p(records, conductor: int, prime: int) -> bool:
    xs = sp.symbols("x1:6")
    poly = 0
    for rec in records:
        c = parse_coeff(rec["coeff"], conductor)
        if not c.is_rational():
            raise SystemExit("only rational coefficients can be certified by this script")
        q = Fraction(c.rational_value())
        if q.denominator % prime == 0:
            raise SystemExit(f"prime {prime} divides a denominator")
        mono = sp.Mul(*(x**e for x, e in zip(xs, rec["monomial"])))
        poly += sp.Rational(q.numerator, q.denominator) * mono
    partials = [sp.diff(poly, x) for x in xs]
    basis = sp.groebner(partials, *xs, order="grevlex", modulus=prime)
    leads = [sp.Poly(g, *xs).monoms(order="grevlex")[0] for g in basis.exprs]
    pure = {next(i for i, e in enumerate(m) if e) for m in leads if sum(1 for e in m if e) == 1}
    return pure == set(range(5))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="+")
    ap.add_argument("--prime", type=int, default=10007)
    args = ap.parse_args(argv)
    if args.prime == 5:
        ap.error("characteristic 5 is not allowed")
    status = 0
    for path in args.files:
        with open(path) as fh:
            doc = json.load(fh)
        ok = is_smooth_mod_p(doc["quintic"], doc.get("conductor", 1), args.prime)
        print(f"{path}: {'smooth' if ok else 'NOT certified'} (mod {args.prime})")
        status |= not ok
    return status


if __name__ == "__main__":
    sys.exit(main())
