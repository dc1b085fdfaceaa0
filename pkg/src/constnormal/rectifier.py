"""Rule engine deriving that tangents of constant-normal sets are vertical half-spaces.

State: a subspace ``I`` of invariant directions (X 1_E = 0) and a list ``M`` of
monotone directions (X 1_E >= 0), kept reduced modulo ``I``. Rules:

* closure: invariant directions form a subalgebra;
* adjoint: for Y in I and X in M, e^{t ad Y} X is monotone for every real t.
  Modulo I this is a polynomial c_0 + ... + c_K t^K. Dividing by t^K and
  letting t -> +inf shows c_K is monotone; for odd K, t -> -inf shows -c_K is
  monotone too, so c_K is invariant and the rule continues on the lower-degree
  remainder. After an even K nothing is known about the remainder, so the
  rule stops there;
* promotion (once, for almost every point and every tangent): monotone
  directions with no horizontal component become invariant.

The verdict is VerticalHalfSpace when every non-horizontal layer ends up in I.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .liecore import CarnotAlgebra, LieVec, bracket, exp_ad

CITED = (
    "AKL Prop. 4.7(i): invariant directions form a subalgebra",
    "AKL Prop. 4.7(ii): Ad_{exp tY} X is monotone for Y invariant, X monotone, t real",
    "AKL Lemma 5.8: at a.e. point, non-horizontal monotone directions are invariant for every tangent",
    "De Giorgi / FSSC: a.e. vertical half-space tangents give intrinsic rectifiability",
)

CAVEAT = "after promotion the conclusion concerns every tangent at almost every point of the reduced boundary"


class RectifierError(ValueError):
    pass


class Subspace:
    """Span of exact vectors, kept in reduced echelon form (pivot = first nonzero index)."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []

    def copy(self) -> "Subspace":
        s = Subspace(self.dim)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s

    def reduce(self, v: Sequence) -> List[Fraction]:
        v = [Fraction(c) for c in v]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        r = self.reduce(v)
        p = next((i for i, c in enumerate(r) if c), None)
        if p is None:
            return False
        r = [c / r[p] for c in r]
        new_rows = []
        for row in self.rows:
            c = row[p]
            new_rows.append([a - c * b for a, b in zip(row, r)] if c else row)
        new_rows.append(r)
        order = sorted(range(len(new_rows)), key=lambda k: next(i for i, c in enumerate(new_rows[k]) if c))
        self.rows = [new_rows[k] for k in order]
        self.pivots = [next(i for i, c in enumerate(row) if c) for row in self.rows]
        return True

    def __len__(self):
        return len(self.rows)


def _vec_text(v: Sequence) -> List[str]:
    return [str(Fraction(c)) for c in v]


@dataclass
class DirectionState:
    algebra: CarnotAlgebra
    I: Subspace
    M: List[List[Fraction]] = field(default_factory=list)
    stage: str = "PreTangent"

    def copy(self) -> "DirectionState":
        return DirectionState(self.algebra, self.I.copy(), [list(m) for m in self.M], self.stage)

    def lie(self, coeffs) -> LieVec:
        return LieVec(self.algebra, tuple(Fraction(c) for c in coeffs))

    def add_monotone(self, v) -> bool:
        r = self.I.reduce(v)
        if not any(r):
            return False
        if any(r == m for m in self.M):
            return False
        self.M.append(r)
        return True

    def rereduce(self):
        out = []
        for m in self.M:
            r = self.I.reduce(m)
            if any(r) and r not in out:
                out.append(r)
        self.M = out

    def layers_missing(self) -> List[int]:
        alg = self.algebra
        missing = []
        for k in range(2, alg.step + 1):
            for i in alg.layer_indices(k):
                e = [0] * alg.dim
                e[i] = 1
                if not self.I.contains(e):
                    missing.append(k)
                    break
        return missing

    def snapshot(self):
        return ([tuple(r) for r in self.I.rows], [tuple(m) for m in self.M], self.stage)


@dataclass
class DerivationLog:
    entries: List[dict] = field(default_factory=list)

    def record(self, entry: dict):
        self.entries.append(entry)

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return copy.deepcopy(self.entries)


def close_invariants(state: DirectionState, log: Optional[DerivationLog] = None) -> DirectionState:
    added = []
    changed = True
    while changed:
        changed = False
        rows = [list(r) for r in state.I.rows]
        for a in range(len(rows)):
            for b in range(a + 1, len(rows)):
                w = bracket(state.lie(rows[a]), state.lie(rows[b]))
                if state.I.add(w.coeffs):
                    added.append(list(w.coeffs))
                    changed = True
    state.rereduce()
    if added and log is not None:
        log.record({"rule": "close", "added": [_vec_text(v) for v in added]})
    return state


def _adjoint_conclusions(state: DirectionState, y, x, continue_after_even: bool):
    poly = exp_ad(state.lie(y), state.lie(x))
    coeffs = [state.I.reduce(c.coeffs) for c in poly.coeffs]
    steps = []
    invariant = state.I.copy()
    K = len(coeffs) - 1
    while K >= 1:
        c = invariant.reduce(coeffs[K])
        if not any(c):
            K -= 1
            continue
        if K % 2 == 1:
            steps.append({"degree": K, "kind": "invariant", "vector": c})
            invariant.add(c)
            K -= 1
            continue
        steps.append({"degree": K, "kind": "monotone", "vector": c})
        if not continue_after_even:
            break
        K -= 1
    return [c.coeffs for c in poly.coeffs], steps


def adjoint_rule(state: DirectionState, y, x, log: Optional[DerivationLog] = None,
                 continue_after_even: bool = False) -> bool:
    """Apply the adjoint rule to Y in I and X in M; returns whether the state changed."""
    if not state.I.contains(y):
        raise RectifierError("Y must be an invariant direction")
    poly, steps = _adjoint_conclusions(state, y, x, continue_after_even)
    changed = False
    for s in steps:
        if s["kind"] == "invariant":
            changed |= state.I.add(s["vector"])
        else:
            changed |= state.add_monotone(s["vector"])
    if changed:
        state.rereduce()
        if log is not None:
            log.record({
                "rule": "adjoint",
                "Y": _vec_text(y),
                "X": _vec_text(x),
                "poly": [_vec_text(c) for c in poly],
                "steps": [{"degree": s["degree"], "kind": s["kind"], "vector": _vec_text(s["vector"])} for s in steps],
                "continue_after_even": continue_after_even,
            })
    return changed


def _horizontal_free(state: DirectionState, v) -> bool:
    """True if v lies in span(I) + (V2 + ... + Vs)."""
    alg = state.algebra
    sub = state.I.copy()
    for i in range(alg.dim):
        if alg.layer_of[i] >= 2:
            e = [0] * alg.dim
            e[i] = 1
            sub.add(e)
    return sub.contains(v)


def tangent_promote(state: DirectionState, log: Optional[DerivationLog] = None) -> DirectionState:
    if state.stage == "PostTangent" and not getattr(state, "_allow_repeat", False):
        raise RectifierError("tangent promotion already applied")
    moved = [m for m in state.M if _horizontal_free(state, m)]
    for m in moved:
        state.I.add(m)
    state.M = [m for m in state.M if not _horizontal_free(state, m) or m not in moved]
    state.rereduce()
    state.stage = "PostTangent"
    if log is not None:
        log.record({"rule": "promote", "moved": [_vec_text(m) for m in moved]})
    return state


def saturate(state: DirectionState, log: Optional[DerivationLog] = None, continue_after_even: bool = False):
    while True:
        close_invariants(state, log)
        changed = False
        for y in [list(r) for r in state.I.rows]:
            for x in [list(m) for m in state.M]:
                if adjoint_rule(state, y, x, log, continue_after_even):
                    changed = True
        if not changed:
            return state


@dataclass
class Verdict:
    kind: str
    missing_layers: List[int]
    log: DerivationLog
    state: DirectionState
    promotions: int = 1
    cited: tuple = CITED
    caveat: str = CAVEAT

    @property
    def vertical(self) -> bool:
        return self.kind == "VerticalHalfSpace"

    def invariant_dims(self):
        """Dimension of I intersected with each layer, as a dict."""
        alg = self.state.algebra
        out = {}
        for k in range(1, alg.step + 1):
            idx = alg.layer_indices(k)
            # rank of the projection of I onto the complement of lower layers, per layer
            sub = Subspace(alg.dim)
            for r in self.state.I.rows:
                sub.add(r)
            count = 0
            for i in idx:
                e = [0] * alg.dim
                e[i] = 1
                if sub.contains(e):
                    count += 1
            out[k] = (count, len(idx))
        return out

    def to_json(self):
        alg = self.state.algebra
        return {
            "schema": 1,
            "verdict": self.kind,
            "algebra": alg.name,
            "layers": list(alg.layer_sizes),
            "missing_layers": self.missing_layers,
            "invariant": [_vec_text(r) for r in self.state.I.rows],
            "monotone": [_vec_text(m) for m in self.state.M],
            "promotions": self.promotions,
            "caveat": self.caveat,
            "cited": list(self.cited),
            "log": self.log.to_json(),
        }


def initial_state(algebra: CarnotAlgebra, normal_index: int, invariant_indices: Sequence[int]) -> DirectionState:
    h = algebra.layer_indices(1)
    idx = [normal_index] + list(invariant_indices)
    if any(i - 1 not in h for i in idx):
        raise RectifierError("normal and invariant directions must be horizontal basis vectors")
    I = Subspace(algebra.dim)
    for j in invariant_indices:
        e = [0] * algebra.dim
        e[j - 1] = 1
        I.add(e)
    n = [0] * algebra.dim
    n[normal_index - 1] = 1
    if I.contains(n):
        raise RectifierError("the normal lies in the span of the invariant directions")
    span = I.copy()
    span.add(n)
    if len(span) != len(h):
        raise RectifierError("normal and invariant directions must span the first layer")
    state = DirectionState(algebra, I)
    state.add_monotone(n)
    return state


def run(algebra: CarnotAlgebra, normal_index: int = 1, invariant_indices: Optional[Sequence[int]] = None,
        promotions: int = 1, continue_after_even: bool = False) -> Verdict:
    """Saturate, promote ``promotions`` times (saturating after each), and report."""
    if invariant_indices is None:
        invariant_indices = [i + 1 for i in algebra.layer_indices(1) if i + 1 != normal_index]
    state = initial_state(algebra, normal_index, invariant_indices)
    log = DerivationLog()
    log.record({
        "rule": "init",
        "normal": normal_index,
        "invariant": list(invariant_indices),
        "continue_after_even": continue_after_even,
    })
    saturate(state, log, continue_after_even)
    for k in range(promotions):
        state._allow_repeat = k > 0
        tangent_promote(state, log)
        saturate(state, log, continue_after_even)
    missing = state.layers_missing()
    kind = "VerticalHalfSpace" if not missing else "Stuck"
    return Verdict(kind, missing, log, state, promotions)


def replay(algebra: CarnotAlgebra, log: DerivationLog) -> DirectionState:
    """Re-execute a log from its init entry, checking every recorded conclusion."""
    entries = log.entries
    if not entries or entries[0]["rule"] != "init":
        raise RectifierError("log must start with an init entry")
    init = entries[0]
    state = initial_state(algebra, init["normal"], init["invariant"])
    for e in entries[1:]:
        rule = e["rule"]
        if rule == "close":
            for v in e["added"]:
                vec = [Fraction(c) for c in v]
                # each added vector must be a bracket of two current invariants
                rows = [list(r) for r in state.I.rows]
                ok = any(
                    bracket(state.lie(rows[a]), state.lie(rows[b])).coeffs == tuple(vec)
                    for a in range(len(rows))
                    for b in range(a + 1, len(rows))
                )
                if not ok:
                    raise RectifierError(f"closure step not justified: {v}")
                state.I.add(vec)
            state.rereduce()
        elif rule == "adjoint":
            y = [Fraction(c) for c in e["Y"]]
            x = [Fraction(c) for c in e["X"]]
            if not state.I.contains(y):
                raise RectifierError("adjoint premise Y is not invariant")
            if list(x) not in state.M:
                raise RectifierError("adjoint premise X is not a monotone direction")
            poly, steps = _adjoint_conclusions(state, y, x, e["continue_after_even"])
            got = [{"degree": s["degree"], "kind": s["kind"], "vector": _vec_text(s["vector"])} for s in steps]
            if got != e["steps"] or [_vec_text(c) for c in poly] != e["poly"]:
                raise RectifierError("adjoint conclusions differ on replay")
            for s in steps:
                if s["kind"] == "invariant":
                    state.I.add(s["vector"])
                else:
                    state.add_monotone(s["vector"])
            state.rereduce()
        elif rule == "promote":
            moved = [m for m in state.M if _horizontal_free(state, m)]
            if [_vec_text(m) for m in moved] != e["moved"]:
                raise RectifierError("promotion differs on replay")
            state._allow_repeat = True
            tangent_promote(state)
        else:
            raise RectifierError(f"unknown rule {rule!r}")
    return state
