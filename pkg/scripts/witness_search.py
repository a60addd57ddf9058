"""Search non-properness rays for every catalog action and print the outcome."""
import argparse
import json
import time

from biquotient.action import ActionFamily, action_degree, family_freeness
from biquotient.catalog import ACTIONS, action
from biquotient.properness import DEFAULT_ANSATZ, properness_witness_search


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ansatz", type=int, default=DEFAULT_ANSATZ)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    for name in ACTIONS:
        _, derivs = action(name)
        fam = ActionFamily.from_derivations(derivs, name)
        start = time.time()
        res = properness_witness_search(fam, args.ansatz, seed=args.seed)
        row = {
            "action": name,
            "degree": action_degree(fam),
            "freeness": family_freeness(derivs).verdict,
            "seconds": round(time.time() - start, 2),
            **res.to_dict(),
        }
        print(json.dumps(row, ensure_ascii=False))


if __name__ == "__main__":
    main()
