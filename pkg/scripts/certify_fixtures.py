"""Certify every reference graph family and print a census table.

Builds the order-3 imaginary circulant, the order-4 examples, the flat-spectrum
family, and the two-prime sparse circulants, runs the full certification on
each, and reports verdicts plus the analytic/scan agreement.

usage: python3 scripts/certify_fixtures.py [--scan-steps N]
"""

import argparse
import math
import sys
import time

import numpy as np

from upst.cyclotomic import CycNum, zeta
from upst.graph import CirculantSpec, circulant_to_graph
from upst.spectra import circulant_eigensystem
from upst.constructors import (
    NoncirculantParams,
    gk_example,
    nondense_circulant,
    noncirculant_graph,
)
from upst.walk import spacing_test, verify_upst


def fixture_list():
    circ_i = CirculantSpec(3, (CycNum.zero(4), -zeta(4), zeta(4)))
    yield "Circ(0,-i,i)", circulant_to_graph(circ_i), circulant_eigensystem(circ_i)
    for k in (2, 4, 6, 8):
        graph, es = gk_example(k)
        yield "G_%d" % k, graph, es
    for abb in ((2, 2, 2), (3, 2, 2), (3, 3, 2), (4, 2, 3)):
        graph, es = noncirculant_graph(NoncirculantParams(*abb))
        yield "flat(%d,%d,%d)" % abb, graph, es
    for pq in ((2, 3), (3, 5)):
        spec = nondense_circulant(*pq)
        yield "sparse(%d,%d)" % pq, circulant_to_graph(spec), circulant_eigensystem(spec)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scan-steps", type=int, default=None, help="time-scan grid density")
    args = parser.parse_args()

    header = "%-14s %3s  %-5s %-7s %-5s %12s %12s %10s  %6s" % (
        "fixture", "n", "upst", "spacing", "dense", "t_{0,1}", "period", "agree", "sec"
    )
    print(header)
    print("-" * len(header))
    failures = 0
    for name, graph, es in fixture_list():
        start = time.monotonic()
        report = verify_upst(graph, es, scan_steps=args.scan_steps)
        elapsed = time.monotonic() - start
        if report.upst:
            agree = float(np.max(np.abs(report.min_times[0] - report.analytic_times)))
            spacing = "yes" if spacing_test(report) else "no"
            print(
                "%-14s %3d  %-5s %-7s %-5s %12.6f %12.6f %10.1e  %6.2f"
                % (
                    name,
                    report.n,
                    "yes",
                    spacing,
                    {True: "yes", False: "no", None: "-"}[report.dense],
                    report.min_times[0, 1],
                    report.return_period,
                    agree,
                    elapsed,
                )
            )
        else:
            failures += 1
            print(
                "%-14s %3d  %-5s %s" % (name, report.n, "NO", ", ".join(report.reasons))
            )
    if failures:
        print("\n%d fixture(s) failed certification" % failures, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
