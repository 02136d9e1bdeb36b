"""Rewrite the pinned sha256 hashes of the built-in cover files.

Run only after a deliberate change to a dataset; the test suite fails on drift.
"""

import hashlib
import json
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "tricover" / "data"


def main() -> None:
    hashes = {p.stem: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(DATA.glob("*.cover"))}
    (DATA / "datasets.json").write_text(json.dumps({"schema": 1, "sha256": hashes}, indent=2, sort_keys=True) + "\n")
    for name, h in hashes.items():
        print(f"{name:12s} {h}")


if __name__ == "__main__":
    main()
