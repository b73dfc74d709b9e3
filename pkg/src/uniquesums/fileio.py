"""Set and multiset files, plus deterministic JSON emission.

A set file is a JSON document:

    {"group": [n_1, ..., n_k], "elements": [[r_1, ..., r_k], ...]}

A multiset file adds a parallel "counts" array of positive multiplicities.
Elements need not be sorted or reduced on input; outputs are always
canonical.  All structured output in the package goes through dump_json,
which sorts keys and uses fixed separators so identical results are
byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import SetFileError
from .groups import Group, GMultiset, GSet, make_group

SCHEMA_PREFIX = "uniquesums"
SCHEMA_VERSION = 1


def schema(kind: str) -> str:
    return f"{SCHEMA_PREFIX}.{kind}/{SCHEMA_VERSION}"


def dump_json(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def set_to_dict(A: GSet) -> dict:
    return {
        "group": list(A.group.moduli),
        "elements": [list(e) for e in A.elements],
    }


def multiset_to_dict(Z: GMultiset) -> dict:
    return {
        "group": list(Z.group.moduli),
        "elements": [list(e) for e, _ in Z.items],
        "counts": [m for _, m in Z.items],
    }


def _parse_group(doc: dict, where: str) -> Group:
    try:
        moduli = doc["group"]
    except KeyError:
        raise SetFileError(f"{where}: missing 'group' field") from None
    if not isinstance(moduli, list) or not all(isinstance(n, int) for n in moduli):
        raise SetFileError(f"{where}: 'group' must be a list of integers")
    try:
        return make_group(moduli)
    except Exception as exc:
        raise SetFileError(f"{where}: {exc}") from None


def _parse_elements(doc: dict, group: Group, where: str) -> list[tuple]:
    try:
        raw = doc["elements"]
    except KeyError:
        raise SetFileError(f"{where}: missing 'elements' field") from None
    if not isinstance(raw, list):
        raise SetFileError(f"{where}: 'elements' must be a list")
    out = []
    for i, e in enumerate(raw):
        if not isinstance(e, list) or not all(isinstance(r, int) for r in e):
            raise SetFileError(f"{where}: element {i} must be a list of integers")
        if len(e) != len(group.moduli):
            raise SetFileError(
                f"{where}: element {i} has {len(e)} coordinates, group has {len(group.moduli)}"
            )
        out.append(tuple(e))
    return out


def set_from_dict(doc: dict, where: str = "set") -> GSet:
    group = _parse_group(doc, where)
    return GSet.make(group, _parse_elements(doc, group, where))


def multiset_from_dict(doc: dict, where: str = "multiset") -> GMultiset:
    group = _parse_group(doc, where)
    elems = _parse_elements(doc, group, where)
    counts = doc.get("counts")
    if counts is None:
        return GMultiset.make(group, elems)
    if not isinstance(counts, list) or len(counts) != len(elems):
        raise SetFileError(f"{where}: 'counts' must parallel 'elements'")
    tally: dict[tuple, int] = {}
    for e, m in zip(elems, counts):
        if not isinstance(m, int) or m < 1:
            raise SetFileError(f"{where}: multiplicity {m!r} must be a positive integer")
        key = group.reduce(e)
        tally[key] = tally.get(key, 0) + m
    return GMultiset.make(group, tally)


def _load_doc(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SetFileError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SetFileError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SetFileError(f"{path}: top level must be an object")
    return doc


def load_set(path: str) -> GSet:
    return set_from_dict(_load_doc(path), where=path)


def load_multiset(path: str) -> GMultiset:
    return multiset_from_dict(_load_doc(path), where=path)


def save_set(A: GSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(set_to_dict(A)))


def save_multiset(Z: GMultiset, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(multiset_to_dict(Z)))
