"""On-disk cache of reduced Gröbner bases keyed by a content hash of the input.

Entries are written once through a temporary file and an atomic rename.  An
entry that fails to parse or whose header does not match is ignored and
recomputed; the cache never changes a computed value because a reduced basis
is determined by the ideal and the order.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile

log = logging.getLogger(__name__)

# bases cheaper than this are not worth a file
MIN_SECONDS = 0.05


class BasisCache:
    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.writes = 0
        self.corrupt = 0

    @staticmethod
    def key(ring, order, gens) -> str:
        h = hashlib.sha256()
        h.update(ring.describe().encode())
        h.update(f"|{order}|".encode())
        for s in sorted(str(g) for g in gens):
            h.update(s.encode())
            h.update(b";")
        return h.hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.root, key[:2], key + ".gb")

    def get(self, key: str, ring) -> list | None:
        path = self._path(key)
        if not os.path.exists(path):
            self.misses += 1
            return None
        try:
            with open(path) as fh:
                lines = fh.read().splitlines()
            if lines[0] != f"# key {key}" or lines[1] != f"# count {len(lines) - 3}" or lines[2] != ring.describe():
                raise ValueError("header mismatch")
            basis = [ring.parse(ln) for ln in lines[3:]]
        except Exception as exc:  # corrupt entries are recomputed
            log.warning("ignoring corrupt cache entry %s: %s", path, exc)
            self.corrupt += 1
            self.misses += 1
            return None
        self.hits += 1
        return basis

    def put(self, key: str, ring, basis) -> None:
        path = self._path(key)
        if os.path.exists(path):
            return
        os.makedirs(os.path.dirname(path), exist_ok=True)
        body = "\n".join([f"# key {key}", f"# count {len(basis)}", ring.describe()] + [str(b) for b in basis])
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(body + "\n")
            os.replace(tmp, path)
            self.writes += 1
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", path, exc)
            if os.path.exists(tmp):
                os.unlink(tmp)

    def stats(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "writes": self.writes, "corrupt": self.corrupt}


_active: BasisCache | None = None


def activate(root: str | None) -> BasisCache | None:
    global _active
    _active = BasisCache(root) if root else None
    return _active


def active() -> BasisCache | None:
    return _active
