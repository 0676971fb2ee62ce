"""On-disk cache of Euler-factor records, one JSON file per (k, p).

Integers are stored as decimal strings. Files are written to a temporary
name in the cache directory and renamed into place, so concurrent writers
never leave a partial file behind.
"""

from __future__ import annotations

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .arith.poly import IntPolynomial
from .errors import CheckFailed
from .local_factors import EulerFactorRecord, euler_record, run_record_checks

SCHEMA_VERSION = 1
ENV_VAR = "SYMKL_CACHE_DIR"


def cache_dir() -> Path:
    """$SYMKL_CACHE_DIR, defaulting to ~/.cache/symkl."""
    return Path(os.environ.get(ENV_VAR) or Path.home() / ".cache" / "symkl")


def entry_path(k: int, p: int, directory: Path | None = None) -> Path:
    return Path(directory or cache_dir()) / f"k{k}_p{p}.json"


def record_to_entry(rec: EulerFactorRecord) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "k": rec.k,
        "p": rec.p,
        "Z": rec.Z.to_strings(),
        "R": rec.R.to_strings(),
        "M": rec.M.to_strings(),
        "moments": {str(n): str(m) for n, m in sorted(rec.provenance.get("moments", {}).items())},
        "method": rec.provenance.get("method", "enumerated"),
        "checks": dict(sorted(rec.checks.items())),
        "created_at": datetime.now(timezone.utc).isoformat(),
        "code_version": __version__,
    }


def entry_to_record(entry: dict, verify: bool = True) -> EulerFactorRecord:
    """Rebuild a record; with ``verify`` every stored check is re-run."""
    if entry.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {entry.get('schema_version')}")
    rec = EulerFactorRecord(
        k=int(entry["k"]), p=int(entry["p"]),
        Z=IntPolynomial.from_strings(entry["Z"]),
        R=IntPolynomial.from_strings(entry["R"]),
        M=IntPolynomial.from_strings(entry["M"]),
        provenance={"method": entry.get("method", "enumerated"),
                    "moments": {int(n): int(m) for n, m in entry.get("moments", {}).items()}},
    )
    stored = dict(entry.get("checks", {}))
    if verify:
        run_record_checks(rec, predict=bool(stored.get("predict_next_moment")))
        missing = [name for name, ok in stored.items() if ok and not rec.checks.get(name)]
        if missing:
            raise CheckFailed("cache_verify", f"checks {missing} did not re-pass on load")
    else:
        rec.checks.update(stored)
    return rec


def canonical_json(entry: dict) -> str:
    """Serialization used to compare entries; ignores the timestamp."""
    body = {key: v for key, v in entry.items() if key != "created_at"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def write_entry(entry: dict, directory: Path | None = None) -> Path:
    target = entry_path(entry["k"], entry["p"], directory)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=target.name + ".", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh, indent=1, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def read_entry(k: int, p: int, directory: Path | None = None) -> dict | None:
    path = entry_path(k, p, directory)
    if not path.exists():
        return None
    with open(path) as fh:
        return json.load(fh)


def load_or_compute(k: int, p: int, *, directory: Path | None = None, complete: bool = False,
                    predict: bool = False, use_cache: bool = True):
    """(record, entry, cache_hit). Cached entries are verified before use."""
    if use_cache:
        entry = read_entry(k, p, directory)
        if entry is not None and (not predict or entry["checks"].get("predict_next_moment")):
            return entry_to_record(entry), entry, True
    rec = euler_record(k, p, complete=complete, predict=predict)
    entry = record_to_entry(rec)
    if use_cache:
        write_entry(entry, directory)
    return rec, entry, False
