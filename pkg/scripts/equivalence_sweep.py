#!/usr/bin/env python3
"""Seeded sweep over the two equivalence experiments.

Experiment 1 compares the four crossed-module candidate checks against
their differential-calculus counterparts (squares and graded commutator of
the two Weil differentials) on a mixed valid/edited population.

Experiment 2 runs the three Lie 2-bialgebra verifiers (bialgebra cocycle,
matched pair, differential-is-a-derivation-of-the-bracket) on seeded pairs
and reports the verdict agreement rate, which must be 100%.

Usage: python3 scripts/equivalence_sweep.py [--count N] [--seed-base B]
       [--degree-bound K] [--verbose]
"""

import argparse
import random
import sys
import time
from collections import Counter

from l2b import catalog
from l2b.bicross import verify_l2b_def, verify_l2b_matched, verify_l2b_weil
from l2b.documents import build_crossed_module, build_lie2_bialgebra
from l2b.twoterm import verify_cm
from l2b.weil import verify_cm_via_weil

CM_FAMILIES = ("abelian", "adjoint", "random_basis_change:adjoint")
L2B_FAMILIES = (
    "scaling",
    "abelian_dual",
    "random_basis_change:scaling",
    "random_basis_change:abelian_dual",
)

E1_MAP = {
    "jacobi": "delta_h.square_zero.side",
    "representation": "delta_h.square_zero.core",
    "equivariance": "commute.side",
    "skew_action": "commute.core",
}


def edited_doc(family, seed, edits):
    doc = catalog.gen_document(family, seed)
    rng = random.Random(seed * 7919 + edits)
    for _ in range(edits):
        doc = catalog.perturb_document(doc, rng)
    return doc


def sweep_e1(count, seed_base, verbose):
    mismatches = 0
    verdicts = Counter()
    component_fails = Counter()
    t0 = time.perf_counter()
    for k in range(count):
        seed = seed_base + k
        cm = build_crossed_module(
            edited_doc(CM_FAMILIES[k % len(CM_FAMILIES)], seed, k % 3)
        )
        direct = verify_cm(cm)
        weil = verify_cm_via_weil(cm)
        agree = direct.passed == weil.passed and all(
            direct.check(c).passed == weil.check(w).passed for c, w in E1_MAP.items()
        )
        mismatches += not agree
        verdicts["valid" if direct.passed else "invalid"] += 1
        for cond in E1_MAP:
            if not direct.check(cond).passed:
                component_fails[cond] += 1
        if verbose and not agree:
            print(f"  MISMATCH seed={seed}")
    dt = time.perf_counter() - t0
    print(f"experiment 1: {count} instances in {dt:.1f}s")
    print(f"  verdicts: {dict(verdicts)}")
    print(f"  failing conditions seen: {dict(component_fails)}")
    print(f"  component-level mismatches: {mismatches}")
    return mismatches


def sweep_e2(count, seed_base, degree_bound, verbose):
    mismatches = 0
    verdicts = Counter()
    t0 = time.perf_counter()
    for k in range(count):
        seed = seed_base + k
        d = build_lie2_bialgebra(
            edited_doc(L2B_FAMILIES[k % len(L2B_FAMILIES)], seed, k % 3)
        )
        trio = (
            verify_l2b_def(d).passed,
            verify_l2b_matched(d).passed,
            verify_l2b_weil(d, degree_bound).passed,
        )
        agree = len(set(trio)) == 1
        mismatches += not agree
        verdicts["valid" if trio[0] else "invalid"] += 1
        if verbose and not agree:
            print(f"  DISAGREEMENT seed={seed}: def/matched/weil = {trio}")
    dt = time.perf_counter() - t0
    print(f"experiment 2: {count} instances in {dt:.1f}s (degree bound {degree_bound})")
    print(f"  verdicts: {dict(verdicts)}")
    print(f"  verifier disagreements: {mismatches}")
    return mismatches


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed-base", type=int, default=0)
    parser.add_argument("--degree-bound", type=int, default=4)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    bad = sweep_e1(args.count, args.seed_base, args.verbose)
    bad += sweep_e2(max(args.count // 2, 1), args.seed_base, args.degree_bound, args.verbose)
    if bad:
        print(f"TOTAL DISAGREEMENTS: {bad} (kernel defect)")
        return 1
    print("all characterizations agree")
    return 0


if __name__ == "__main__":
    sys.exit(main())
