#!/usr/bin/env python3
"""Long-running randomized audit of the main soundness properties.

Bigger and more configurable than the test-suite gates: use it to hammer
the library after a change, e.g.

    python3 scripts/randomized_audit.py --trials 1000 --max-height 6 --seed 3
"""
import argparse
import time

import numpy as np

from zhdd import (
    Settings,
    canonical_from_vector,
    interpret_sqmdd,
    interpret_zh,
    is_irreducible,
    iso_equal,
    max_deviation,
    plug_bra_plus,
    reduce_diagram,
    sqmdd_to_zh,
    z_merge_outputs,
    zh_to_sqmdd,
)
from zhdd.duality import to_state_form
from zhdd.generate import random_dag, random_term, random_vector, scramble, tree_from_vector
from zhdd.oracle import dense_merge_outputs, dense_plug_plus, interpret_zh_state


def audit_translation(rng, n, max_h, settings):
    worst = 0.0
    for k in range(n):
        d = random_dag(rng, 1 + k % max_h, settings=settings)
        got = interpret_zh(sqmdd_to_zh(d, settings), settings).reshape(-1)
        worst = max(worst, max_deviation(got, interpret_sqmdd(d, settings)))
    return worst


def audit_canonicity(rng, n, max_h, settings):
    failures = 0
    for k in range(n):
        v = random_vector(rng, 1 + k % max_h)
        tree = tree_from_vector(v)
        a = reduce_diagram(scramble(tree, rng), settings)[0]
        b = reduce_diagram(scramble(tree, rng), settings)[0]
        want = canonical_from_vector(v, settings)
        if not (iso_equal(a, want, settings) and iso_equal(b, want, settings)):
            failures += 1
    return failures


def audit_contraction(rng, n, max_h, settings):
    worst = 0.0
    for k in range(n):
        t = random_term(rng, max_generators=10, max_boundary=7)
        d = zh_to_sqmdd(t, settings)
        assert is_irreducible(d, settings)
        s = to_state_form(t) if t.n_in else t
        worst = max(
            worst,
            max_deviation(interpret_sqmdd(d, settings), interpret_zh_state(s, settings)),
        )
    return worst


def audit_primitives(rng, n, max_h, settings):
    worst = 0.0
    for k in range(n):
        h = 2 + k % (max_h - 1)
        d = random_dag(rng, h, settings=settings)
        v = interpret_sqmdd(d, settings)
        i = int(rng.integers(h - 1))
        j = int(rng.integers(i + 1, h))
        worst = max(worst, max_deviation(
            interpret_sqmdd(z_merge_outputs(d, i, j, settings), settings),
            dense_merge_outputs(v, h, i, j),
        ))
        p = int(rng.integers(h))
        worst = max(worst, max_deviation(
            interpret_sqmdd(plug_bra_plus(d, p, settings), settings),
            dense_plug_plus(v, h, p),
        ))
    return worst


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--max-height", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-qubits", type=int, default=24)
    args = ap.parse_args()

    settings = Settings(max_qubits=args.max_qubits)
    checks = [
        ("diagram -> term -> vector", audit_translation),
        ("canonicity of scrambles", audit_canonicity),
        ("term -> diagram, exact scalar", audit_contraction),
        ("merge/plug vs dense", audit_primitives),
    ]
    print(f"{args.trials} trials per check, heights <= {args.max_height}, "
          f"seed {args.seed}\n")
    for name, fn in checks:
        rng = np.random.default_rng(args.seed)
        t0 = time.time()
        out = fn(rng, args.trials, args.max_height, settings)
        dt = time.time() - t0
        if isinstance(out, float):
            verdict = f"worst deviation {out:.2e}"
            ok = out <= settings.eps
        else:
            verdict = f"{out} mismatches"
            ok = out == 0
        print(f"  {'ok ' if ok else 'FAIL'} {name:34s} {verdict:24s} ({dt:.1f}s)")
    print("\ndone")


if __name__ == "__main__":
    main()
