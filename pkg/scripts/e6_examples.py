"""Generic examples for the format (1,5,6,2): build both charts, resolve, classify."""
import argparse
import json
import time

from dynres.betti_check import BettiTable, admissibility_report
from dynres.graded_res import classify_family, validate_complex
from dynres.lie_core import Format
from dynres.polyalg import ideal_codim
from dynres.repdecomp import support_betti
from dynres.schubert import patch_parametrization, schubert_ideal, schubert_resolution
from dynres.weyl import format_coset_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dump", metavar="DIR", help="write each resolution as JSON into DIR")
    args = ap.parse_args()
    f = Format(1, 5, 6, 2)
    tab = format_coset_table(f)
    for k in range(1, len(tab)):
        if support_betti(f, tab.rep_word(k)) != f.as_tuple():
            continue
        start = time.perf_counter()
        word = tab.rep_labels(k)
        chart = patch_parametrization(f, word)
        c = schubert_resolution(chart)
        rep = validate_complex(c)
        label = classify_family(c)
        print(f"coset {','.join(word)}")
        print(f"  {chart.nvars} variables, codim {ideal_codim(schubert_ideal(chart))}, minimal {c.is_minimal()}")
        print(f"  twists s1={c.s[1]} s3={c.s[3]}")
        print(f"  acyclic {rep.acyclic}, dual acyclic {rep.dual_acyclic}")
        print(f"  m11 zero: {label.m11_zero} -> {label.name}")
        print(f"  admissibility: {admissibility_report(BettiTable.from_complex(c)).verdict()}")
        for g in chart.generators():
            print("    " + g.to_str(chart.names))
        print(f"  {time.perf_counter() - start:.1f}s")
        if args.dump:
            path = f"{args.dump}/e6_coset_{k}.json"
            with open(path, "w") as fh:
                json.dump(c.to_json(), fh, indent=2, sort_keys=True)
            print(f"  wrote {path}")


if __name__ == "__main__":
    main()
