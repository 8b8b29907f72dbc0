"""Constant-score stand-in for an external scorer.

Usage: ``python -m lemcoref.echo_scorer [--constant X] REQUEST_FILE SCORE_FILE``

Echoes the same score for both concatenation orders of every request,
which makes the discriminator a no-op (constant 1.0 reproduces the
heuristic clustering; 0.0 dissolves every link).
"""

from __future__ import annotations

import argparse
import json
import sys


def main(argv=None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--constant", type=float, default=1.0)
    parser.add_argument("request_file")
    parser.add_argument("score_file")
    args = parser.parse_args(argv)

    with open(args.request_file, encoding="utf-8") as fin, \
            open(args.score_file, "w", encoding="utf-8", newline="\n") as fout:
        for line in fin:
            line = line.strip()
            if not line:
                continue
            request = json.loads(line)
            fout.write(json.dumps({
                "pair_id": request["pair_id"],
                "score_ab": args.constant,
                "score_ba": args.constant,
            }) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
