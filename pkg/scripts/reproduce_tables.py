"""Print the per-class tables, the single-element and pair fixed loci, and the batch summary.

Usage: python3 scripts/reproduce_tables.py [--fixtures DIR]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from quintic_orbifold.fixloc import Kind
from quintic_orbifold.mckay import OrbifoldAnalysis
from quintic_orbifold.pgroup import close
from quintic_orbifold.pipeline import analyze, batch, bundled_corpus, format_table, parse_input

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def _analysis(path: Path) -> OrbifoldAnalysis:
    inp = parse_input(path)
    return OrbifoldAnalysis(inp.quintic, close(inp.generators))


def _locus_summary(locus) -> str:
    parts = []
    for s in locus.strata:
        if s.kind in (Kind.ISOLATED_POINT, Kind.FINITE_POINTS):
            parts.append(f"{s.components} pt (age {s.age})")
        else:
            parts.append(f"{s.kind.value} (age {s.age})")
    return ", ".join(parts) or "empty"


def single_elements(fixtures: Path) -> None:
    print("single elements: ord, trace, max multiplicity, e(X^g), h11 within <g>, X^g")
    for path in sorted(fixtures.glob("ord*.json")):
        a = _analysis(path)
        g = a.table.generators[0]
        lift = a.lift(g)
        print(
            f"  {path.stem:<14}{a.table.element_order(g):>4}  {str(lift.trace):<28}{lift.max_multiplicity:>3}"
            f"{a.locus(g).euler:>6}{a.h11_class(g):>4}  {_locus_summary(a.locus(g))}"
        )


def pairs(fixtures: Path) -> None:
    print("commuting pairs: |<g,h>|, lifts commute, e(X^g ∩ X^h)")
    for path in sorted(fixtures.glob("pair_*.json")):
        a = _analysis(path)
        g, h = a.table.generators
        print(f"  {path.stem:<26}{a.table.order:>4}  {str(a.commuting(g, h)):<6}{a.pair_euler(g, h):>4}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", type=Path, default=FIXTURES)
    args = ap.parse_args()

    for name in ("d20", "fermat_heisenberg125"):
        t0 = time.perf_counter()
        out = analyze(parse_input(bundled_corpus() / f"{name}.json"))
        print(format_table(out))
        print(f"({time.perf_counter() - t0:.2f}s)\n")

    if args.fixtures.is_dir():
        single_elements(args.fixtures)
        print()
        pairs(args.fixtures)
        print()

    print(batch(bundled_corpus()).summary())


if __name__ == "__main__":
    main()
