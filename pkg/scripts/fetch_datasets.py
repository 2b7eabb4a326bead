#!/usr/bin/env python3
"""Fetch the public proximity datasets used by the reproduction suite.

Downloads the SocioPatterns high-school 2013 contact list into data/
(~5 MB gzipped).  The Copenhagen Networks Study bluetooth file sits
behind a figshare archive, so it is fetched manually; instructions are
printed.  Re-run `pytest tests/test_acceptance.py` afterwards: the
dataset-gated criteria pick the files up automatically.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

HS_URL = (
    "http://www.sociopatterns.org/wp-content/uploads/2015/07/"
    "High-School_data_2013.csv.gz"
)
HS_NAME = "High-School_data_2013.csv.gz"
CNS_DOI = "https://doi.org/10.6084/m9.figshare.7267433"
CNS_NAME = "bt_symmetric.csv"


def fetch(url: str, dest: Path) -> None:
    print(f"downloading {url} -> {dest}")
    with urllib.request.urlopen(url, timeout=60) as resp, open(dest, "wb") as out:
        out.write(resp.read())
    print(f"  wrote {dest.stat().st_size} bytes")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--data-dir", default=Path(__file__).resolve().parent.parent / "data",
        type=Path,
    )
    args = ap.parse_args()
    args.data_dir.mkdir(parents=True, exist_ok=True)

    hs = args.data_dir / HS_NAME
    if hs.exists():
        print(f"{hs} already present")
    else:
        try:
            fetch(HS_URL, hs)
        except OSError as exc:
            print(f"could not download the high-school dataset: {exc}")
            print(f"fetch it manually from {HS_URL} into {hs}")
            return 1

    cns = args.data_dir / CNS_NAME
    if cns.exists():
        print(f"{cns} already present")
    else:
        print(
            f"CNS bluetooth data: download '{CNS_NAME}' from the archive at\n"
            f"  {CNS_DOI}\nand place it at {cns} (enables the extended suite)."
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
