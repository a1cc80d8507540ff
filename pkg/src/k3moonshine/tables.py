"""Character-table fixtures: generation and cached loading.

All fixtures are derived in-repo: the eleven maximal-group tables come
from the Dixon engine over explicit group models, the M23/M24 tables from
the permutation-character mill, and the Co0 fixture lists restrictions of
explicit virtual characters of Aut(Leech) (the lambda-ring of the 24-
dimensional representation, evaluated through power-trace data) at the
eight symplectic classes.  Every fixture revalidates on load.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache

from .chartab import CharacterTable, CharacterEntry, ClassEntry
from .mill import class_data, mill_rational_table
from .mukai import MUKAI_GROUPS, mukai_table
from .lattice import hnf_basis

__all__ = [
    "data_dir", "load_m23", "load_m24", "load_mukai", "load_co0_restricted",
    "generate_all", "SYMPLECTIC_M24_LABELS", "SYMPLECTIC_M23_LABELS",
    "CO0_ORDER",
]

SYMPLECTIC_M24_LABELS = ("1A", "2A", "3A", "4B", "5A", "6A", "7AB", "8A")
SYMPLECTIC_M23_LABELS = ("1A", "2A", "3A", "4A", "5A", "6A", "7AB", "8A")
CO0_CLASS_LABELS = ("1A+", "2A+", "3B+", "4C+", "5B+", "6E+", "7B+", "8E+")
CO0_ORDER = 8315553613086720000

_ENV_VAR = "K3MOONSHINE_DATA"


def data_dir() -> str:
    env = os.environ.get(_ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def _path(name: str) -> str:
    return os.path.join(data_dir(), name)


def _mill_to_table(name: str) -> CharacterTable:
    data, rows = mill_rational_table(name)
    classes = [ClassEntry(c.label, c.order, c.size, c.merged)
               for c in data.classes]
    chars = []
    pos = 1
    for values, norm in rows:
        deg = values[0] // norm
        if norm == 1:
            name_i = f"chi{pos}"
        else:
            name_i = "chi" + "_".join(str(pos + j) for j in range(norm))
        pos += norm
        chars.append(CharacterEntry(name_i, norm, deg,
                                    tuple(Fraction(v) for v in values)))
    return CharacterTable(name, data.order, classes, chars).validate()


def _mukai_to_table(index: int) -> CharacterTable:
    spec = MUKAI_GROUPS[index - 1]
    t = mukai_table(index)
    classes = []
    seen: dict = {}
    for i, order in enumerate(t.class_orders):
        seen[order] = seen.get(order, 0) + 1
        label = f"{order}-{seen[order]}"
        classes.append(ClassEntry(label, order, t.class_sizes[i],
                                  t.class_count[i]))
    chars = []
    for o, (values, orbit, deg) in enumerate(
            zip(t.values, t.orbit_sizes, t.degrees)):
        chars.append(CharacterEntry(f"chi{o + 1}", orbit, deg,
                                    tuple(Fraction(v) for v in values)))
    table = CharacterTable(spec.name, t.group_order, classes, chars)
    return table.validate()


def leech_power_traces() -> dict:
    """Traces of g^j on the 24-dim representation for the eight classes.

    The symplectic classes embed through the coordinate-permutation copy
    of M24 in Aut(Leech), so the trace of g^j is the fixed-point count of
    the corresponding M24 power class.
    """
    m24 = class_data("M24")
    idx = {c.label: i for i, c in enumerate(m24.classes)}
    cols = [idx[l] for l in SYMPLECTIC_M24_LABELS]
    out = {}
    for lab, col in zip(CO0_CLASS_LABELS, cols):
        order = m24.classes[col].order
        chain = []
        for j in range(1, order + 1):
            pc = m24.power_class(col, j)
            chain.append(dict(m24.classes[pc].cycle_type).get(1, 0))
        out[lab] = chain
    return out


def co0_restricted_rows(max_exterior: int = 24) -> list:
    """Restrictions of exterior powers of the Leech representation (and
    their pointwise products) at the eight symplectic classes."""
    traces = leech_power_traces()
    k = len(CO0_CLASS_LABELS)
    lams = [[1] * k]
    for deg in range(1, max_exterior + 1):
        row = []
        for i, lab in enumerate(CO0_CLASS_LABELS):
            chain = traces[lab]
            order = len(chain)
            acc = Fraction(0)
            for j in range(1, deg + 1):
                sign = 1 if j % 2 else -1
                psi = chain[(j - 1) % order]
                acc += sign * psi * lams[deg - j][i]
            row.append(acc / deg)
        if any(x.denominator != 1 for x in row):
            raise ArithmeticError("non-integral exterior power")
        lams.append([int(x) for x in row])
    rows = [tuple(r) for r in lams]
    # close under pointwise products, keeping a small generating set
    lattice = hnf_basis([list(r) for r in rows], ambient=k)
    gens = list(rows)
    grown = True
    while grown:
        grown = False
        for a in list(gens):
            for b in list(gens):
                p = tuple(x * y for x, y in zip(a, b))
                if not lattice.contains(p):
                    gens.append(p)
                    lattice = hnf_basis(
                        [list(r) for r in lattice.basis] + [list(p)], ambient=k)
                    grown = True
    return gens


def _co0_to_table() -> CharacterTable:
    rows = co0_restricted_rows()
    classes = [ClassEntry(lab, order, 0, 1)
               for lab, order in zip(CO0_CLASS_LABELS, (1, 2, 3, 4, 5, 6, 7, 8))]
    chars = [CharacterEntry(f"gen{i}", 1, int(r[0]), tuple(Fraction(x) for x in r))
             for i, r in enumerate(rows)]
    table = CharacterTable("Co0", CO0_ORDER, classes, chars)
    # restricted slice: size/orthogonality validation does not apply
    return table


_FIXTURES = {
    "m23.tbl": lambda: _mill_to_table("M23"),
    "m24.tbl": lambda: _mill_to_table("M24"),
    "co0_restricted.tbl": _co0_to_table,
}
for _spec in MUKAI_GROUPS:
    _FIXTURES[f"mukai_{_spec.index:02d}.tbl"] = (
        lambda i=_spec.index: _mukai_to_table(i))


def generate_all(directory=None, force=False):
    directory = directory or data_dir()
    os.makedirs(directory, exist_ok=True)
    written = []
    for fname, builder in _FIXTURES.items():
        path = os.path.join(directory, fname)
        if force or not os.path.exists(path):
            table = builder()
            table.dump(path)
            written.append(fname)
    return written


def _load(fname: str, validate: bool = True) -> CharacterTable:
    path = _path(fname)
    if not os.path.exists(path):
        raise FileNotFoundError(
            f"fixture {fname} not found in {data_dir()}; "
            f"run k3moonshine.tables.generate_all()")
    with open(path) as fh:
        text = fh.read()
    if validate:
        return CharacterTable.loads(text)
    # restricted fixtures skip the full-table validation
    table = CharacterTable.loads_unchecked(text)
    return table


@lru_cache(maxsize=None)
def load_m23() -> CharacterTable:
    return _load("m23.tbl")


@lru_cache(maxsize=None)
def load_m24() -> CharacterTable:
    return _load("m24.tbl")


@lru_cache(maxsize=None)
def load_mukai(index: int) -> CharacterTable:
    return _load(f"mukai_{index:02d}.tbl")


@lru_cache(maxsize=None)
def load_co0_restricted() -> CharacterTable:
    return _load("co0_restricted.tbl", validate=False)
