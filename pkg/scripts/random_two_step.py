"""Slices for seeded random two-step algebras with free pairs, checked by exact roundtrips."""
import argparse
import random
import time

from biquotient.induced import induced_action
from biquotient.randomize import random_normal_pair, random_two_step
from biquotient.slices import LevelSetSlice, SliceFunctions, degree_one_slice, roundtrip


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--max-dim", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    done = failures = 0
    start = time.time()
    while done < args.count:
        A = random_two_step(rng, args.max_dim, name=f"random{done}")
        pair = random_normal_pair(A, rng)
        if pair is None:
            continue
        v, h = pair
        chart, derivs = induced_action(A, v, h)
        res = degree_one_slice(derivs)
        if isinstance(res, SliceFunctions):
            roundtrip(LevelSetSlice(A, list(v.basis), chart, derivs, res.functions), v, h, args.samples, seed=done)
            funcs = ", ".join(str(f) for f in res.functions)
        else:
            failures += 1
            funcs = "none"
        print(f"{A.name}: dim {A.dim}, dim v {v.dim}, slice {{{funcs}}}")
        done += 1
    print(f"{done} pairs, {failures} without slice, {time.time() - start:.1f}s")


if __name__ == "__main__":
    main()
