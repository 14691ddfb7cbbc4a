"""Family counts for the exceptional formats, with the coset data behind each count."""
import argparse

from dynres.lie_core import Format, classify_type, format_to_shape
from dynres.repdecomp import betti_options
from dynres.weyl import family_count, format_coset_table

FORMATS = [(1, 5, 6, 2), (1, 6, 7, 2), (1, 5, 7, 3), (1, 7, 8, 2), (1, 5, 8, 4)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--details", action="store_true", help="list the Betti numbers of every nontrivial coset")
    args = ap.parse_args()
    for f in map(lambda x: Format(*x), FORMATS):
        kind = classify_type(format_to_shape(f)).name
        print(f"{f} {kind:>3}: {len(format_coset_table(f)):>4} double cosets, {family_count(f):>3} families")
        if args.details:
            for k, betti in enumerate(betti_options(f), 1):
                print(f"    [{k}] {betti}")


if __name__ == "__main__":
    main()
