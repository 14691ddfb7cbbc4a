"""Print the grid of double-coset counts #(d,t) and the time taken for each entry."""
import argparse
import json
import time

from dynres.weyl import TABLE_ROWS, count_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    grid, timings = {}, {}
    for d, width in TABLE_ROWS.items():
        row = []
        for t in range(1, width + 1):
            start = time.perf_counter()
            row.append(count_table(d, t))
            timings[f"{d},{t}"] = round(time.perf_counter() - start, 3)
        grid[d] = row
    if args.json:
        print(json.dumps({"grid": grid, "seconds": timings}, indent=2, sort_keys=True))
        return
    for d, row in grid.items():
        print(f"d={d}: " + " ".join(f"{v:>4}" for v in row))
    print(f"total {sum(timings.values()):.2f}s")


if __name__ == "__main__":
    main()
