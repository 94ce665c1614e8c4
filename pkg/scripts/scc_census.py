"""Induced cycles in a planar window by length, with C# and the
neighbourhood premise for each (one per translation class)."""
import argparse

from digifix.complexity import all_sccs, han44_premise_and_bound, parse_window
from digifix.image import DigitalImage


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", default="5x5")
    ap.add_argument("--u", type=int, default=2)
    ap.add_argument("--max-len", type=int, default=8)
    args = ap.parse_args()
    window = parse_window(args.window)
    for length in range(4, args.max_len + 1):
        curves = all_sccs(len(window), args.u, length, window)
        rows = []
        for c in curves:
            res = han44_premise_and_bound(DigitalImage(c, args.u), cap=max(length, 7))
            rows.append((res.premise, res.c_sharp))
        print(f"length {length}: {len(curves)} curve(s)")
        for (premise, cs), c in zip(rows, curves):
            print(f"   premise={premise!s:<5} C#={cs}  {list(c)}")


if __name__ == "__main__":
    main()
