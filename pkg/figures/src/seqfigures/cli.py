"""Entry point: render one figure family (or all) from exported data.

    seqfigures <figure-id|all> --data-dir DATA [--out-dir OUT] [--prepare]

With --prepare, missing input CSVs are produced by invoking the
greedysphere CLI first.  Exits nonzero with a message when inputs are
missing or malformed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import DataError, prepare_data, render
from .specs import FIGURES


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="seqfigures", description=__doc__)
    parser.add_argument("figure_id", choices=(*FIGURES, "all"))
    parser.add_argument("--data-dir", required=True)
    parser.add_argument("--out-dir", default=".")
    parser.add_argument("--format", choices=("png", "svg"), default="png")
    parser.add_argument("--prepare", action="store_true",
                        help="generate missing input CSVs via the greedysphere CLI")
    args = parser.parse_args(argv)

    ids = list(FIGURES) if args.figure_id == "all" else [args.figure_id]
    data_dir = Path(args.data_dir)
    out_dir = Path(args.out_dir)
    try:
        for fid in ids:
            spec = FIGURES[fid]
            if args.prepare:
                prepare_data(spec, data_dir)
            path = render(spec, data_dir, out_dir / f"{fid}.{args.format}")
            print(f"wrote {path}")
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
