"""JSON serialization of scalars and matrices, and the on-disk 6j cache.

Exact scalars are written as {"conductor": M, "coeffs": [...]} with the
coefficients as rational strings over the power basis of Q(zeta_M); approx
scalars as [re, im].
"""

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .cyclotomic import Cyc, field
from .linalg import Mat

SCHEMA = "skein-kernel/1"
CACHE_ENV = "SKEIN_KERNEL_CACHE"


def scalar_to_json(x):
    if isinstance(x, Cyc):
        return {"conductor": x.F.M, "coeffs": [str(c) for c in x.coeffs()]}
    z = complex(x)
    return [z.real, z.imag]


def scalar_from_json(doc, ring=None):
    """Decode; with an exact ring the value is embedded into its field."""
    if isinstance(doc, dict):
        M = doc["conductor"]
        exact = ring is not None and getattr(ring, "mode", None) == "exact"
        F = ring.F if exact and ring.F.M == M else field(M)
        v = F.from_coeffs([Fraction(c) for c in doc["coeffs"]])
        return v.embed(ring.F) if exact else v
    re, im = doc
    return complex(re, im)


def matrix_to_json(M, dense=False):
    doc = {"rows": M.rows, "cols": M.cols}
    if dense:
        doc["dense"] = [[scalar_to_json(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    else:
        doc["entries"] = [[i, j, scalar_to_json(v)] for (i, j), v in sorted(M.items())]
    return doc


def matrix_from_json(doc, ring):
    M = Mat(ring, doc["rows"], doc["cols"])
    if "dense" in doc:
        for i, row in enumerate(doc["dense"]):
            for j, v in enumerate(row):
                x = scalar_from_json(v, ring)
                if not ring.is_zero(x):
                    M[i, j] = x
    else:
        for i, j, v in doc["entries"]:
            M[i, j] = scalar_from_json(v, ring)
    return M


def atomic_write_json(path, doc):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def default_cache_root():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "skein-kernel"


class DiskSixjStore:
    """One JSON file per normalized 6j key under ``root``."""

    def __init__(self, root=None):
        self.root = Path(root) if root else default_cache_root()

    @staticmethod
    def key(ring, a, b, g, e1, e2, method):
        mode = ring.mode
        parts = [SCHEMA, ring.root.N, ring.root.kprime, mode, str(a), str(b), str(g), e1, e2, method]
        return hashlib.sha256(json.dumps(parts).encode()).hexdigest()

    def path(self, *args):
        k = self.key(*args)
        return self.root / k[:2] / f"{k}.json"

    def get(self, ring, a, b, g, e1, e2, method):
        p = self.path(ring, a, b, g, e1, e2, method)
        try:
            with open(p) as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            return None
        return scalar_from_json(doc["value"], ring)

    def put(self, ring, a, b, g, e1, e2, method, value):
        doc = {"schema": SCHEMA, "N": ring.root.N, "kprime": ring.root.kprime,
               "args": [str(a), str(b), str(g), e1, e2], "method": method,
               "value": scalar_to_json(value)}
        atomic_write_json(self.path(ring, a, b, g, e1, e2, method), doc)
