"""The catalog of power-associative evolution algebras up to dimension 6.

Twenty-one indecomposable nil families are primitive data; every other
catalog entry is a direct sum of those plus orthogonal idempotent lines,
generated here as block-diagonal symbolic forms.  Indices follow the
published tables for dimensions up to 5.  Dimension 6 has no published
table: the indecomposable nil entries keep their stated numbers 16-26,
derived decomposable nil entries are numbered 27-42 (ordered by type
sequence, then component dimensions), and mixed entries continue from 43.
"""

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import new_evolution_algebra
from .errors import InternalConsistency, ParamConstraintViolated, UnknownLabel

PARAM_LETTERS = "abcdefgh"


def _entry(tok):
    """Parse a symbolic matrix entry: 0, 1, -1, a or -a."""
    if tok.lstrip("-").isdigit():
        return (int(tok), None)
    if tok.startswith("-"):
        return (-1, tok[1:])
    return (1, tok)


def _rows(lines):
    return tuple(tuple(_entry(t) for t in line.split()) for line in lines)


@dataclass(frozen=True)
class Family:
    dim: int
    index: int
    kind: str               # "nil" | "mixed" | "semisimple"
    s: int                  # number of idempotent lines
    components: tuple       # ((dim, index, nparams), ...) nil blocks in order
    param_names: tuple
    rows: tuple             # symbolic entries (coeff, param-or-None)
    det_constraints: tuple  # 4-tuples (pa, pb, pc, pd): pa*pd - pb*pc != 0
    type_seq: Optional[tuple]
    associative: bool
    display: str            # e.g. "N_{5,7} = N_{4,6}+N_{1,1}"
    radical_index: Optional[int]  # nil label index of the radical (mixed only)

    @property
    def nparams(self):
        return len(self.param_names)

    def prefix(self):
        return "N" if self.kind == "nil" else "E"

    def name(self, params=None):
        base = f"{self.prefix()}_{{{self.dim},{self.index}}}"
        if self.nparams == 0:
            return base
        if params is None:
            return base + "(" + ",".join(self.param_names) + ")"
        return base + "(" + ",".join(str(p) for p in params) + ")"


@dataclass(frozen=True)
class CatalogLabel:
    kind: str
    dim: int
    index: int
    params: tuple

    def name(self):
        fam = family(self.dim, self.index)
        return fam.name(self.params if fam.nparams else None)


# ---------------------------------------------------------------------------
# primitive data: the indecomposable nil families

_BASE = []


def _base(dim, index, params, table, type_seq, associative, dets=()):
    _BASE.append(Family(
        dim=dim, index=index, kind="nil", s=0,
        components=((dim, index, len(params)),),
        param_names=tuple(params), rows=_rows(table),
        det_constraints=tuple(dets), type_seq=tuple(type_seq),
        associative=associative, display="", radical_index=None))


_base(1, 1, "", ["0"], (1,), True)
_base(2, 2, "", ["0 1", "0 0"], (1, 1), True)
_base(3, 3, "a", ["0 0 1", "0 0 a", "0 0 0"], (1, 2), True)
_base(4, 5, "ab", ["0 0 0 1", "0 0 0 a", "0 0 0 b", "0 0 0 0"], (1, 3), True)
_base(4, 6, "", ["0 1 1 0", "0 0 0 1", "0 0 0 -1", "0 0 0 0"], (1, 2, 1), False)
_base(5, 8, "abc",
      ["0 0 0 0 1", "0 0 0 0 a", "0 0 0 0 b", "0 0 0 0 c", "0 0 0 0 0"],
      (1, 4), True)
_base(5, 9, "ab",
      ["0 0 0 1 0", "0 0 0 a b", "0 0 0 0 1", "0 0 0 0 0", "0 0 0 0 0"],
      (2, 3), True)
_base(5, 10, "a",
      ["0 1 1 0 0", "0 0 0 0 1", "0 0 0 0 -1", "0 0 0 0 a", "0 0 0 0 0"],
      (1, 3, 1), False)
_base(5, 11, "a",
      ["0 1 1 0 0", "0 0 0 0 1", "0 0 0 0 -1", "0 a a 0 0", "0 0 0 0 0"],
      (1, 2, 2), False)
_base(5, 12, "ab",
      ["0 1 1 0 0", "0 0 0 0 1", "0 0 0 0 -1", "0 a a 0 b", "0 0 0 0 0"],
      (1, 2, 2), False)
_base(6, 16, "abcd",
      ["0 0 0 0 0 1", "0 0 0 0 0 a", "0 0 0 0 0 b", "0 0 0 0 0 c",
       "0 0 0 0 0 d", "0 0 0 0 0 0"], (1, 5), True)
_base(6, 17, "abc",
      ["0 0 0 0 1 0", "0 0 0 0 a b", "0 0 0 0 0 c", "0 0 0 0 0 1",
       "0 0 0 0 0 0", "0 0 0 0 0 0"], (2, 4), True)
_base(6, 18, "abcd",
      ["0 0 0 0 1 0", "0 0 0 0 a b", "0 0 0 0 c d", "0 0 0 0 0 1",
       "0 0 0 0 0 0", "0 0 0 0 0 0"], (2, 4), True,
      dets=(("a", "b", "c", "d"),))
_base(6, 19, "ab",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 0 0 0 0 a",
       "0 0 0 0 0 b", "0 0 0 0 0 0"], (1, 4, 1), False)
_base(6, 20, "ab",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 a a 0 0 0",
       "0 0 0 0 0 b", "0 0 0 0 0 0"], (1, 3, 2), False)
_base(6, 21, "abc",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 a a 0 0 b",
       "0 0 0 0 0 c", "0 0 0 0 0 0"], (1, 3, 2), False)
_base(6, 22, "ab",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 a a 0 0 0",
       "0 b b 0 0 0", "0 0 0 0 0 0"], (1, 2, 3), False)
_base(6, 23, "abcd",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 a a 0 0 b",
       "0 c c 0 0 d", "0 0 0 0 0 0"], (1, 2, 3), False,
      dets=(("a", "b", "c", "d"),))
_base(6, 24, "abc",
      ["0 1 1 0 0 0", "0 0 0 0 0 1", "0 0 0 0 0 -1", "0 a a 0 0 b",
       "0 c c 0 0 0", "0 0 0 0 0 0"], (1, 2, 3), False)
_base(6, 25, "a",
      ["0 1 1 0 0 0", "0 0 0 0 1 0", "0 0 0 0 -1 0", "0 a a 0 0 1",
       "0 0 0 0 0 0", "0 0 0 0 0 0"], (2, 2, 2), False)
_base(6, 26, "",
      ["0 1 1 1 0 0", "0 0 0 0 1 0", "0 0 0 0 0 1", "0 0 0 0 -1 -1",
       "0 0 0 0 0 0", "0 0 0 0 0 0"], (2, 3, 1), False)

_BASE_BY_KEY = {(f.dim, f.index): f for f in _BASE}

# table order of the decomposable nil entries up to dimension 5
_KNOWN_NIL_DECOMPOSABLE = {
    2: [(((1, 1), (1, 1)), 1)],
    3: [(((1, 1),) * 3, 1), (((2, 2), (1, 1)), 2)],
    4: [(((1, 1),) * 4, 1), (((2, 2), (1, 1), (1, 1)), 2),
        (((3, 3), (1, 1)), 3), (((2, 2), (2, 2)), 4)],
    5: [(((1, 1),) * 5, 1), (((2, 2), (1, 1), (1, 1), (1, 1)), 2),
        (((3, 3), (1, 1), (1, 1)), 3), (((2, 2), (2, 2), (1, 1)), 4),
        (((4, 5), (1, 1)), 5), (((3, 3), (2, 2)), 6), (((4, 6), (1, 1)), 7)],
}


def _component_sort_key(key):
    return (-key[0], key[1])


def _multisets(total, parts_by_dim, smallest=None):
    """Multisets of component keys with dimensions summing to ``total``."""
    if total == 0:
        yield ()
        return
    for d in range(total, 0, -1):
        for key in parts_by_dim.get(d, ()):
            if smallest is not None and _component_sort_key(key) < smallest:
                continue
            for rest in _multisets(total - d, parts_by_dim, _component_sort_key(key)):
                yield (key,) + rest


def _padded_type_sum(types):
    length = max(len(t) for t in types)
    out = [0] * length
    for t in types:
        for i, v in enumerate(t):
            out[i] += v
    return tuple(out)


def _compound_rows(s, comp_keys):
    """Block-diagonal symbolic rows: s idempotent lines, then nil blocks."""
    dims = [1] * s + [k[0] for k in comp_keys]
    n = sum(dims)
    rows = [[(0, None)] * n for _ in range(n)]
    names = []
    off = 0
    dets = []
    for i in range(s):
        rows[i][i] = (1, None)
        off += 1
    for key in comp_keys:
        fam = _BASE_BY_KEY[key]
        rename = {}
        for pn in fam.param_names:
            letter = PARAM_LETTERS[len(names)]
            names.append(letter)
            rename[pn] = letter
        for i, row in enumerate(fam.rows):
            for j, (c, pn) in enumerate(row):
                if c != 0:
                    rows[off + i][off + j] = (c, rename[pn] if pn else None)
        for det in fam.det_constraints:
            dets.append(tuple(rename[p] for p in det))
        off += fam.dim
    return tuple(tuple(r) for r in rows), tuple(names), tuple(dets)


def _nil_label_name(dim, comp_keys, names_by_multiset, param_names):
    idx = names_by_multiset[(dim, comp_keys)]
    base = f"N_{{{dim},{idx}}}"
    if param_names:
        base += "(" + ",".join(param_names) + ")"
    return base


def _build_catalog():
    parts_by_dim = {}
    for f in _BASE:
        parts_by_dim.setdefault(f.dim, []).append((f.dim, f.index))

    families = {}
    nil_index_of_multiset = {}
    nil_labels_by_dim = {}

    for dim in range(1, 7):
        entries = []  # (index, comp_keys)
        decomposable = [m for m in _multisets(dim, parts_by_dim) if len(m) > 1]
        if dim in _KNOWN_NIL_DECOMPOSABLE or dim == 1:
            known = {tuple(sorted(m, key=_component_sort_key)): idx
                     for m, idx in _KNOWN_NIL_DECOMPOSABLE.get(dim, [])}
            if len(known) != len(decomposable):
                raise InternalConsistency("decomposable enumeration mismatch")
            for m in decomposable:
                entries.append((known[m], m))
        else:
            # dimension 6: derived ordering, numbered after the stated 16-26
            def order_key(m):
                types = [_BASE_BY_KEY[k].type_seq for k in m]
                tsum = _padded_type_sum(types)
                dims = tuple(k[0] for k in m)
                idxs = tuple(k[1] for k in m)
                return (tuple(-v for v in tsum), tuple(-d for d in dims), idxs)
            for i, m in enumerate(sorted(decomposable, key=order_key)):
                entries.append((27 + i, m))
        for f in _BASE:
            if f.dim == dim:
                entries.append((f.index, ((f.dim, f.index),)))
        entries.sort()

        nil_labels_by_dim[dim] = []
        for index, comp_keys in entries:
            nil_index_of_multiset[(dim, comp_keys)] = index
        for index, comp_keys in entries:
            if len(comp_keys) == 1:
                fam = _BASE_BY_KEY[comp_keys[0]]
                fam = Family(**{**fam.__dict__, "display": fam.name()})
                families[(dim, index)] = fam
                nil_labels_by_dim[dim].append(index)
                continue
            rows, names, dets = _compound_rows(0, comp_keys)
            comps = tuple((k[0], k[1], _BASE_BY_KEY[k].nparams) for k in comp_keys)
            tseq = _padded_type_sum([_BASE_BY_KEY[k].type_seq for k in comp_keys])
            assoc = all(_BASE_BY_KEY[k].associative for k in comp_keys)
            head, last = comp_keys[:-1], comp_keys[-1]
            head_names = names[:len(names) - _BASE_BY_KEY[last].nparams]
            tail_names = names[len(names) - _BASE_BY_KEY[last].nparams:]
            display_rest = _nil_label_name(dim - last[0], head, nil_index_of_multiset,
                                           head_names)
            display_last = f"N_{{{last[0]},{last[1]}}}"
            if tail_names:
                display_last += "(" + ",".join(tail_names) + ")"
            fam = Family(dim=dim, index=index, kind="nil", s=0, components=comps,
                         param_names=names, rows=rows, det_constraints=dets,
                         type_seq=tseq, associative=assoc,
                         display=f"{display_rest}+{display_last}",
                         radical_index=None)
            fam = Family(**{**fam.__dict__,
                            "display": f"{fam.name()} = {fam.display}"})
            families[(dim, index)] = fam
            nil_labels_by_dim[dim].append(index)

        # mixed and semisimple entries continue after the nil indices
        next_index = max(i for i, _ in entries) + 1 if entries else 1
        for s in range(1, dim + 1):
            rad_dim = dim - s
            rad_indices = nil_labels_by_dim.get(rad_dim, []) if rad_dim else [None]
            for rad_index in rad_indices:
                if rad_dim == 0:
                    comp_keys = ()
                    kind = "semisimple"
                else:
                    rad_fam = families[(rad_dim, rad_index)]
                    comp_keys = tuple((c[0], c[1]) for c in rad_fam.components)
                    kind = "mixed"
                rows, names, dets = _compound_rows(s, comp_keys)
                comps = tuple((k[0], k[1], _BASE_BY_KEY[k].nparams) for k in comp_keys)
                assoc = all(_BASE_BY_KEY[k].associative for k in comp_keys)
                display = f"E_{{{s}{s}}}"
                if rad_dim:
                    rad_name = f"N_{{{rad_dim},{rad_index}}}"
                    if names:
                        rad_name += "(" + ",".join(names) + ")"
                    display += "+" + rad_name
                fam = Family(dim=dim, index=next_index, kind=kind, s=s,
                             components=comps, param_names=names, rows=rows,
                             det_constraints=dets, type_seq=None,
                             associative=assoc, display="",
                             radical_index=rad_index)
                fam = Family(**{**fam.__dict__,
                                "display": f"{fam.name()} = {display}"})
                families[(dim, next_index)] = fam
                next_index += 1

    return families, nil_index_of_multiset, nil_labels_by_dim


FAMILIES, NIL_INDEX_OF_MULTISET, NIL_LABELS_BY_DIM = _build_catalog()


def family(dim, index):
    fam = FAMILIES.get((dim, index))
    if fam is None:
        raise UnknownLabel(f"no catalog entry ({dim},{index})")
    return fam


def families_of_dim(dim):
    return [FAMILIES[k] for k in sorted(FAMILIES) if k[0] == dim]


def nil_index_for_components(dim, comp_keys):
    """Catalog index of the nil entry with the given indecomposable blocks."""
    key = (dim, tuple(sorted(comp_keys, key=_component_sort_key)))
    idx = NIL_INDEX_OF_MULTISET.get(key)
    if idx is None:
        raise UnknownLabel(f"no nil catalog entry for components {comp_keys}")
    return idx


def mixed_index_for(dim, s, radical_index):
    """Catalog index of the entry with s idempotents and the given radical."""
    for k in sorted(FAMILIES):
        if k[0] != dim:
            continue
        fam = FAMILIES[k]
        if fam.s == s and fam.radical_index == radical_index:
            return fam.index
    raise UnknownLabel(f"no catalog entry at dim {dim} with s={s}, "
                       f"radical index {radical_index}")


def make_label(dim, index, params=()):
    fam = family(dim, index)
    return CatalogLabel(fam.kind, dim, index, tuple(params))


def check_params(fam, field, params):
    if len(params) != fam.nparams:
        raise ParamConstraintViolated(
            f"{fam.name()} takes {fam.nparams} parameter(s), got {len(params)}")
    values = dict(zip(fam.param_names, params))
    for name, v in values.items():
        if field.is_zero(v):
            raise ParamConstraintViolated(f"{fam.name()}: parameter {name} must be nonzero")
    for pa, pb, pc, pd in fam.det_constraints:
        det = field.sub(field.mul(values[pa], values[pd]),
                        field.mul(values[pb], values[pc]))
        if field.is_zero(det):
            raise ParamConstraintViolated(
                f"{fam.name()}: needs {pa}*{pd}-{pb}*{pc} != 0")
    return values


def instantiate(fam, field, params):
    values = check_params(fam, field, tuple(field.coerce(p) for p in params))
    rows = []
    for row in fam.rows:
        out = []
        for c, pn in row:
            v = field.coerce(c)
            if pn is not None:
                v = field.mul(v, values[pn])
            out.append(v)
        rows.append(out)
    return new_evolution_algebra(field, rows)


def canonical_algebra(label, field):
    """The exact canonical structure matrix of a catalog label."""
    fam = family(label.dim, label.index)
    return instantiate(fam, field, label.params)


def emit_catalog(field, max_dim, param_grid):
    """Instantiate every catalog entry of dimension <= max_dim on the grid.

    ``param_grid`` supplies the nonzero scalars substituted for each
    parameter slot; tuples violating a family constraint are skipped.
    """
    if max_dim > 6:
        raise UnknownLabel("the catalog stops at dimension 6")
    grid = [field.coerce(g) for g in param_grid]
    for g in grid:
        if field.is_zero(g):
            raise ParamConstraintViolated("parameter grid values must be nonzero")
    out = []
    for dim in range(1, max_dim + 1):
        for fam in families_of_dim(dim):
            for combo in itertools.product(grid, repeat=fam.nparams):
                try:
                    A = instantiate(fam, field, combo)
                except ParamConstraintViolated:
                    continue
                out.append((CatalogLabel(fam.kind, dim, fam.index, tuple(combo)), A))
    return out


def symbolic_multiplication(fam):
    """Human-readable multiplication table, e.g. "e1^2 = e2 + e3, ..."."""
    parts = []
    for i, row in enumerate(fam.rows):
        terms = [(c, pn, f"e{j + 1}") for j, (c, pn) in enumerate(row) if c != 0]
        if not terms:
            parts.append(f"e{i + 1}^2 = 0")
            continue
        text = ""
        for k, (c, name, basis) in enumerate(terms):
            mag = f"{name}*{basis}" if name else basis
            if k == 0:
                text = ("-" if c < 0 else "") + mag
            else:
                text += (" - " if c < 0 else " + ") + mag
        parts.append(f"e{i + 1}^2 = {text}")
    return ", ".join(parts)


def constraint_text(fam):
    if fam.nparams == 0:
        return "-"
    bits = [",".join(fam.param_names) + " nonzero"]
    for pa, pb, pc, pd in fam.det_constraints:
        bits.append(f"{pa}*{pd}-{pb}*{pc} nonzero")
    return "; ".join(bits)
