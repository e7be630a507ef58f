"""The built-in corpus of groups swept by the ``corpus`` command."""
from __future__ import annotations

from fnmatch import fnmatch

MAX_ORDER = 64
CYCLIC = list(range(1, MAX_ORDER + 1))
DIHEDRAL = list(range(4, MAX_ORDER + 1, 2))
TWO_GROUP_ORDERS = [16, 32, 64]

CORPUS = (
    [f"cyclic:{n}" for n in CYCLIC]
    + [f"dihedral:{n}" for n in DIHEDRAL]
    + [f"quaternion:{n}" for n in [8] + TWO_GROUP_ORDERS]
    + [f"semidihedral:{n}" for n in TWO_GROUP_ORDERS]
    + [f"quasidihedral:{n}" for n in TWO_GROUP_ORDERS]
    + ["modular:16", "modular:27", "modular:32", "modular:64"]
    + ["extraspecial:2:+", "extraspecial:2:-", "extraspecial:3:+", "extraspecial:3:-"]
    + ["wreath:2", "wreath:3"]
    + [
        "product:cyclic:2*cyclic:2",
        "product:cyclic:2*cyclic:4",
        "product:cyclic:3*cyclic:3",
        "product:cyclic:2*cyclic:2*cyclic:2",
        "product:dihedral:8*cyclic:2",
        "product:quaternion:8*cyclic:2",
        "product:file:s3.tab*cyclic:2",
        "product:file:s3.tab*cyclic:3",
        "product:dihedral:8*cyclic:3",
    ]
    + ["file:s3.tab", "file:klein4.tab"]
)


def corpus(pattern: str | None = None) -> list[str]:
    if pattern is None:
        return list(CORPUS)
    return [s for s in CORPUS if fnmatch(s, pattern)]
