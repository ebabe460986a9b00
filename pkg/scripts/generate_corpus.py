"""
Script to generate seeded set files for the proximity-lab CLI
"""
import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

# Add parent directory to path so we can import from proximity_lab
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from proximity_lab.expander import FAMILIES, family_set
from proximity_lab.formats import write_set_file
from proximity_lab.seeding import stage_rng


def random_rationals(seed: int, stage: str, size: int, denominator: int = 4):
    """size distinct rationals p/q with 1 <= q <= denominator and |p/q| <= size"""
    rng = stage_rng(seed, stage)
    values = set()
    while len(values) < size:
        q = rng.randint(1, denominator)
        p = rng.randint(-size * q, size * q)
        values.add(Fraction(p, q))
    return sorted(values)


def generate_corpus(out_dir: Path, seed: int, sizes):
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for size in sizes:
        for family in FAMILIES:
            for role in ("A", "B", "C"):
                path = out_dir / f"{family}_{size}_{role}.txt"
                values = family_set(family, size, seed, f"corpus/{role}")
                write_set_file(path, values, comment=f"{family} family, N={size}, seed={seed}")
                written.append(path)
        for role in ("A", "B", "C"):
            path = out_dir / f"rational_{size}_{role}.txt"
            write_set_file(path, random_rationals(seed, f"corpus/rational/{role}/{size}", size),
                           comment=f"random rationals, N={size}, seed={seed}")
            written.append(path)
    print(f"Generated {len(written)} set files in {out_dir}")
    return written


def main():
    parser = argparse.ArgumentParser(description="Generate seeded set files")
    parser.add_argument("--out", default="corpus")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sizes", default="8,16,32")
    args = parser.parse_args()
    generate_corpus(Path(args.out), args.seed, [int(s) for s in args.sizes.split(",")])


if __name__ == "__main__":
    main()
