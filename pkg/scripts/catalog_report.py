"""Freeness, induced action, slice and reduction summary for every catalog pair."""
import argparse

from biquotient.cli import main as cli_main
from biquotient.catalog import pair_names


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    extra = ["--json"] if args.json else []
    for name in pair_names():
        cli_main(["demo", name] + extra)
        cli_main(["reduce", name] + extra)
        print()


if __name__ == "__main__":
    main()
