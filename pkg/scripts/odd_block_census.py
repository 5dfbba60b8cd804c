#!/usr/bin/env python3
"""Census of odd blocks within enumeration bounds.

Defaults complete in well under a minute single-threaded; raise the bounds
with the flags (the search space grows fast) or add --jobs for parallelism.
"""

import argparse
import sys
import time

from nccwk.harness.search import census_lines, search_odd_blocks


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p", type=int, default=3, help="most point blocks")
    ap.add_argument("--max-l", type=int, default=2, help="most interval blocks")
    ap.add_argument("--max-mult", type=int, default=2, help="largest endpoint multiplicity")
    ap.add_argument("--max-size", type=int, default=1, help="largest point block size")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    t0 = time.time()
    blocks = search_odd_blocks(args.max_p, args.max_l, args.max_mult, args.max_size,
                               jobs=args.jobs)
    dt = time.time() - t0
    print(f"{len(blocks)} odd blocks within p <= {args.max_p}, l <= {args.max_l}, "
          f"mult <= {args.max_mult}, size <= {args.max_size}  ({dt:.1f}s)")
    for line in census_lines(blocks):
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
