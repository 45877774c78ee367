#!/usr/bin/env python3
"""Generate a synthetic toy dataset on disk.

Usage: python3 scripts/make_toy_dataset.py OUTPUT_DIR [--seed N] [--videos-a N]
       [--videos-b N] [--frames N] [--annotators N]
"""

import argparse
from pathlib import Path

from anomevent.synthetic import SyntheticSpec, make_synthetic_dataset


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", type=Path)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--videos-a", type=int, default=3)
    parser.add_argument("--videos-b", type=int, default=3)
    parser.add_argument("--frames", type=int, default=40)
    parser.add_argument("--annotators", type=int, default=4)
    args = parser.parse_args()

    spec = SyntheticSpec(
        n_videos_a=args.videos_a,
        n_videos_b=args.videos_b,
        frame_count=args.frames,
        n_annotators=args.annotators,
        seed=args.seed,
    )
    truths = make_synthetic_dataset(args.output, spec)
    for vid, event in sorted(truths.items()):
        print(f"{vid}: true event [{event.start}, {event.end}]")
    print(f"wrote {len(truths)} videos to {args.output}")


if __name__ == "__main__":
    main()
