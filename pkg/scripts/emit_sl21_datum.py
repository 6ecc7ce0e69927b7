#!/usr/bin/env python3
"""Emit the symbolic quantum sl(2|1) modular datum and run the checks on it."""

import sys

sys.path.insert(0, "src")

from relmod.checks import check_nondegeneracy, check_premodular_inputs  # noqa: E402
from relmod.datum import Degree, save_datum  # noqa: E402
from relmod.sl21 import emit_datum  # noqa: E402


def main(ell: int, out: str | None):
    datum = emit_datum(ell)
    g = Degree(alpha=1)
    print(f"emitted datum for ell={ell}: {len(datum.index_sets[g])} simple labels")
    if out:
        save_datum(datum, out)
        print(f"wrote {out}")
    print(check_premodular_inputs(datum).render_text())
    print(check_nondegeneracy(datum, g).render_text())


if __name__ == "__main__":
    ell = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    out = sys.argv[2] if len(sys.argv) > 2 else None
    main(ell, out)
