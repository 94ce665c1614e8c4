"""Count contractions, non-constant contractions and C# over every image in
a lattice window.  Exhaustive; use small windows.

    python3 scripts/contraction_census.py --window 3x3 --max-points 4 --u 2
"""
import argparse
from collections import Counter

from digifix.complexity import parse_window
from digifix.image import Metric
from digifix.selfmap import SelfMap, collapse_depth
from digifix.sweep import images_in_window, scan_all_maps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", default="3x3")
    ap.add_argument("--max-points", type=int, default=4)
    ap.add_argument("--u", type=int, default=1)
    ap.add_argument("--metric", default="l2")
    ap.add_argument("--connected-only", action="store_true")
    args = ap.parse_args()

    metric = Metric.parse(args.metric)
    window = parse_window(args.window)
    by_size = Counter()
    nonconst = Counter()
    depth = Counter()
    for img in images_in_window(window, range(1, args.max_points + 1), args.u, args.connected_only):
        scan = scan_all_maps(metric, img)
        by_size[len(img)] += int(scan.contraction.sum())
        nonconst[len(img)] += int((scan.contraction & ~scan.constant).sum())
        best = 0
        for row in scan.tables[scan.contraction]:
            best = max(best, collapse_depth(SelfMap(tuple(int(v) for v in row))) or 0)
        depth[(len(img), best)] += 1

    print(f"window {args.window}, c{args.u}, {metric.name}")
    print("size  contractions  non-constant")
    for k in sorted(by_size):
        print(f"{k:>4}  {by_size[k]:>12}  {nonconst[k]:>12}")
    print("size  C#  images")
    for (k, c), count in sorted(depth.items()):
        print(f"{k:>4}  {c:>2}  {count:>6}")


if __name__ == "__main__":
    main()
