"""Graded nilpotent Lie algebras given by structure constants.

Basis elements are numbered from 1 as in the usual ``X_1, ..., X_n``
notation; internally they are stored 0-based. Coefficients of a
:class:`LieVec` may be any commutative ring elements that support ``+``,
``*`` and ``== 0`` (Fractions, floats, or :class:`~constnormal.polyalg.MPoly`),
which is how the symbolic group-law checks are done.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from .polyalg import as_fraction


class LieError(ValueError):
    pass


class AlgebraMismatch(LieError):
    pass


class JacobiViolation(LieError):
    pass


def _is_zero(c) -> bool:
    # works for Fraction, float and MPoly
    return not c


class CarnotAlgebra:
    """Stratified nilpotent Lie algebra with basis ``X_1..X_dim``.

    ``structure`` maps 1-based pairs ``(i, j)`` to the coefficient vector of
    ``[X_i, X_j]``. Missing pairs are zero; antisymmetric partners are filled
    in. Construction checks antisymmetry, the grading and the Jacobi identity.
    """

    def __init__(self, layers: Sequence[int], structure: Dict[Tuple[int, int], Sequence], name: str = ""):
        self.name = name
        self.layer_sizes = tuple(int(k) for k in layers)
        if any(k <= 0 for k in self.layer_sizes):
            raise LieError("layer sizes must be positive")
        self.dim = sum(self.layer_sizes)
        self.step = len(self.layer_sizes)
        self.layer_of = []
        for depth, size in enumerate(self.layer_sizes, start=1):
            self.layer_of.extend([depth] * size)
        self.layer_of = tuple(self.layer_of)

        table: List[List[Tuple]] = [[None] * self.dim for _ in range(self.dim)]
        zero = tuple(Fraction(0) for _ in range(self.dim))
        for (i, j), coeffs in structure.items():
            coeffs = tuple(as_fraction(c) for c in coeffs)
            if len(coeffs) != self.dim:
                raise LieError(f"[X{i}, X{j}] has {len(coeffs)} coefficients, expected {self.dim}")
            if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                raise LieError(f"index out of range in [X{i}, X{j}]")
            neg = tuple(-c for c in coeffs)
            for (a, b, v) in ((i, j, coeffs), (j, i, neg)):
                old = table[a - 1][b - 1]
                if old is not None and old != v:
                    raise LieError(f"inconsistent or non-antisymmetric entry for [X{a}, X{b}]")
                table[a - 1][b - 1] = v
        for i in range(self.dim):
            for j in range(self.dim):
                if table[i][j] is None:
                    table[i][j] = zero
            if any(table[i][i]):
                raise LieError(f"[X{i + 1}, X{i + 1}] must vanish")
        self._table = table
        self._check_grading()
        self._check_jacobi()

    def __repr__(self):
        return f"CarnotAlgebra({self.name or self.layer_sizes})"

    def layer_indices(self, k: int) -> List[int]:
        """0-based indices of the basis vectors in layer ``k``."""
        return [i for i, d in enumerate(self.layer_of) if d == k]

    def _check_grading(self):
        for i in range(self.dim):
            for j in range(self.dim):
                target = self.layer_of[i] + self.layer_of[j]
                for k, c in enumerate(self._table[i][j]):
                    if c and self.layer_of[k] != target:
                        raise LieError(
                            f"[X{i + 1}, X{j + 1}] has a component outside layer {target}"
                        )

    def _check_jacobi(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            xi, xj, xk = self.basis(i + 1), self.basis(j + 1), self.basis(k + 1)
            total = bracket(xi, bracket(xj, xk)) + bracket(xj, bracket(xk, xi)) + bracket(xk, bracket(xi, xj))
            if not total.is_zero():
                raise JacobiViolation(f"Jacobi fails on (X{i + 1}, X{j + 1}, X{k + 1})")

    def structure(self, i: int, j: int) -> "LieVec":
        return LieVec(self, self._table[i - 1][j - 1])

    def basis(self, i: int) -> "LieVec":
        return LieVec(self, tuple(Fraction(1) if k == i - 1 else Fraction(0) for k in range(self.dim)))

    def zero(self) -> "LieVec":
        return LieVec(self, (Fraction(0),) * self.dim)

    def vec(self, coeffs) -> "LieVec":
        return LieVec(self, coeffs)

    def to_table(self) -> str:
        """Plain-text table: a ``layers`` line then one ``i j c1 .. cdim`` line per bracket."""
        lines = ["layers " + " ".join(str(k) for k in self.layer_sizes)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                coeffs = self._table[i][j]
                if any(coeffs):
                    lines.append(f"{i + 1} {j + 1} " + " ".join(str(c) for c in coeffs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table(cls, text: str, name: str = "") -> "CarnotAlgebra":
        layers = None
        structure = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] == "layers":
                layers = [int(x) for x in fields[1:]]
                continue
            if layers is None:
                raise LieError(f"line {lineno}: 'layers' line must come first")
            try:
                i, j = int(fields[0]), int(fields[1])
                coeffs = [Fraction(x) for x in fields[2:]]
            except ValueError as exc:
                raise LieError(f"line {lineno}: {exc}") from None
            structure[(i, j)] = coeffs
        if layers is None:
            raise LieError("missing 'layers' line")
        return cls(layers, structure, name=name)

    @classmethod
    def load(cls, path) -> "CarnotAlgebra":
        path = Path(path)
        return cls.from_table(path.read_text(), name=path.stem)


class LieVec:
    """Element of a :class:`CarnotAlgebra`, as a coefficient tuple."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: CarnotAlgebra, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != algebra.dim:
            raise LieError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = coeffs

    def _same(self, other: "LieVec"):
        if not isinstance(other, LieVec):
            raise TypeError("expected a LieVec")
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("vectors live in different algebras")

    def __add__(self, other):
        self._same(other)
        return LieVec(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return LieVec(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return LieVec(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar):
        return LieVec(self.algebra, tuple(a * scalar for a in self.coeffs))

    def __rmul__(self, scalar):
        return LieVec(self.algebra, tuple(scalar * a for a in self.coeffs))

    def __truediv__(self, scalar):
        return LieVec(self.algebra, tuple(a / scalar for a in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, LieVec) or other.algebra is not self.algebra:
            return NotImplemented
        return all(_is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def layer_part(self, k: int) -> "LieVec":
        return LieVec(
            self.algebra,
            tuple(c if d == k else c * 0 for c, d in zip(self.coeffs, self.algebra.layer_of)),
        )

    def layers(self) -> List[int]:
        """Layers in which this vector has a nonzero component."""
        return sorted({d for c, d in zip(self.coeffs, self.algebra.layer_of) if not _is_zero(c)})

    def __getitem__(self, i: int):
        """1-based coefficient access, ``v[3]`` is the X_3 coefficient."""
        return self.coeffs[i - 1]

    def __repr__(self):
        terms = [f"{c}*X{i}" for i, c in enumerate(self.coeffs, start=1) if not _is_zero(c)]
        return " + ".join(terms) if terms else "0"


def bracket(u: LieVec, v: LieVec) -> LieVec:
    u._same(v)
    alg = u.algebra
    table = alg._table
    out = [0] * alg.dim
    nonzero_u = [(i, a) for i, a in enumerate(u.coeffs) if not _is_zero(a)]
    nonzero_v = [(j, b) for j, b in enumerate(v.coeffs) if not _is_zero(b)]
    for i, a in nonzero_u:
        row = table[i]
        for j, b in nonzero_v:
            s = row[j]
            if not any(s):
                continue
            ab = a * b
            for k, c in enumerate(s):
                if c:
                    out[k] = out[k] + ab * c
    zero = Fraction(0)
    return LieVec(alg, tuple(x if not isinstance(x, int) else zero + x for x in out))


def ad_power(y: LieVec, x: LieVec, k: int) -> LieVec:
    for _ in range(k):
        x = bracket(y, x)
    return x


class TPoly:
    """Polynomial in ``t`` with Lie algebra coefficients; ``coeffs[k]`` multiplies ``t**k``."""

    def __init__(self, coeffs: Sequence[LieVec]):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def __call__(self, t) -> LieVec:
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc

    def __getitem__(self, k: int) -> LieVec:
        if k < len(self.coeffs):
            return self.coeffs[k]
        return self.coeffs[0].algebra.zero()

    def __repr__(self):
        return " + ".join(f"({c})*t^{k}" for k, c in enumerate(self.coeffs))


def exp_ad(y: LieVec, x: LieVec) -> TPoly:
    """``e^{ad_{tY}} X`` as a polynomial in ``t``; the series stops by nilpotency."""
    y._same(x)
    coeffs = [x]
    term = x
    k = 0
    while True:
        k += 1
        term = bracket(y, term)
        if term.is_zero() or k > y.algebra.step:
            break
        coeffs.append(term / math.factorial(k))
    return TPoly(coeffs)


def ad_exp(y: LieVec, x: LieVec) -> LieVec:
    """``Ad_{exp Y} X = e^{ad_Y} X``."""
    return exp_ad(y, x)(Fraction(1))


def _dynkin_words(max_degree: int):
    """Terms of Dynkin's series up to total degree ``max_degree``.

    Yields ``(coefficient, word)`` where word is a sequence of 0 (X) and 1 (Y)
    to be evaluated as the right-nested bracket ``[w1, [w2, ... w_m]]``.
    """
    out = []
    for n in range(1, max_degree + 1):
        sign = Fraction((-1) ** (n - 1), n)
        # each block (r_i, s_i) with r_i + s_i >= 1
        pairs = [(r, s) for r in range(max_degree + 1) for s in range(max_degree + 1) if 1 <= r + s <= max_degree]
        for blocks in itertools.product(pairs, repeat=n):
            total = sum(r + s for r, s in blocks)
            if total > max_degree:
                continue
            denom = total
            for r, s in blocks:
                denom *= math.factorial(r) * math.factorial(s)
            word = []
            for r, s in blocks:
                word.extend([0] * r + [1] * s)
            out.append((sign / denom, tuple(word)))
    return out


_DYNKIN_CACHE: Dict[int, list] = {}


def _nested(word, x: LieVec, y: LieVec) -> LieVec:
    letters = (x, y)
    acc = letters[word[-1]]
    for w in reversed(word[:-1]):
        acc = bracket(letters[w], acc)
        if acc.is_zero():
            break
    return acc


def bch(u: LieVec, v: LieVec) -> LieVec:
    """``log(exp(u) exp(v))`` via Dynkin's series truncated at the algebra's step."""
    u._same(v)
    step = u.algebra.step
    if step > 4:
        raise LieError("bch is only supported up to step 4")
    terms = _DYNKIN_CACHE.get(step)
    if terms is None:
        merged: Dict[tuple, Fraction] = {}
        for c, w in _dynkin_words(step):
            merged[w] = merged.get(w, 0) + c
        terms = [(c, w) for w, c in merged.items() if c]
        _DYNKIN_CACHE[step] = terms
    result = u.algebra.zero()
    cache = {}
    for c, word in terms:
        # words with the same right-nested value are common; cache by word
        val = cache.get(word)
        if val is None:
            val = _nested(word, u, v)
            cache[word] = val
        if not val.is_zero():
            result = result + val * c
    return result


def bch_many(vectors: Sequence[LieVec]) -> LieVec:
    acc = vectors[0]
    for v in vectors[1:]:
        acc = bch(acc, v)
    return acc


def dilate_alg(lam, u: LieVec) -> LieVec:
    return LieVec(u.algebra, tuple(c * lam**d for c, d in zip(u.coeffs, u.algebra.layer_of)))


# concrete algebras


def _vec(dim, **entries):
    out = [0] * dim
    for key, val in entries.items():
        out[int(key[1:]) - 1] = val
    return out


def f23() -> CarnotAlgebra:
    """Free rank-2 step-3 algebra: X3=[X2,X1], X4=[X3,X1], X5=[X3,X2]."""
    return _cached("F23", lambda: CarnotAlgebra(
        (2, 1, 2),
        {
            (2, 1): _vec(5, x3=1),
            (3, 1): _vec(5, x4=1),
            (3, 2): _vec(5, x5=1),
        },
        name="F23",
    ))


def f24() -> CarnotAlgebra:
    """Free rank-2 step-4 algebra extending F23 with X6=[X4,X1], X7=[X4,X2], X8=[X5,X2].

    The Jacobi identity forces [X5,X1] = [X4,X2] = X7.
    """
    return _cached("F24", lambda: CarnotAlgebra(
        (2, 1, 2, 3),
        {
            (2, 1): _vec(8, x3=1),
            (3, 1): _vec(8, x4=1),
            (3, 2): _vec(8, x5=1),
            (4, 1): _vec(8, x6=1),
            (4, 2): _vec(8, x7=1),
            (5, 1): _vec(8, x7=1),
            (5, 2): _vec(8, x8=1),
        },
        name="F24",
    ))


_ALGEBRAS: Dict[str, CarnotAlgebra] = {}


def _cached(key, build):
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = _ALGEBRAS[key] = build()
    return alg


def _lyndon_words(alphabet: int, max_len: int):
    """Duval's algorithm; letters are 0..alphabet-1."""
    words = []
    w = [-1]
    while w:
        w[-1] += 1
        words.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet - 1:
            w.pop()
    return words


def _standard_factor(word):
    # w = uv with v the longest proper Lyndon suffix
    for i in range(1, len(word)):
        suffix = word[i:]
        if _is_lyndon(suffix):
            return word[:i], suffix
    raise AssertionError("not a Lyndon word")


def _is_lyndon(word) -> bool:
    return all(word < word[i:] for i in range(1, len(word)))


def _assoc_bracket(p, q, max_len):
    out: Dict[tuple, int] = {}
    for a, ca in p.items():
        for b, cb in q.items():
            if len(a) + len(b) > max_len:
                continue
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    return {w: c for w, c in out.items() if c}


def free_nilpotent(rank: int, step: int) -> CarnotAlgebra:
    """Free nilpotent Lie algebra of the given rank and step in a Lyndon basis.

    The Lie polynomials of the standard bracketings of Lyndon words are
    computed in the free associative algebra; brackets of basis elements are
    then expanded back in the basis by exact elimination. Basis order: by
    word length, then lexicographically, so X1..X_rank are the generators.
    """
    key = f"free:{rank}:{step}"
    if key in _ALGEBRAS:
        return _ALGEBRAS[key]
    words = sorted(_lyndon_words(rank, step), key=lambda w: (len(w), w))
    polys = {}
    for w in words:
        if len(w) == 1:
            polys[w] = {w: 1}
        else:
            u, v = _standard_factor(w)
            polys[w] = _assoc_bracket(polys[u], polys[v], step)
    index = {w: i for i, w in enumerate(words)}
    by_len: Dict[int, List[tuple]] = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)

    def expand(poly, length):
        # solve sum_k c_k P_{w_k} = poly over basis words of this length
        basis = by_len.get(length, [])
        if not poly:
            return {}
        cols = sorted({m for b in basis for m in polys[b]} | set(poly))
        rows = [[Fraction(polys[b].get(m, 0)) for b in basis] + [Fraction(poly.get(m, 0))] for m in cols]
        nb = len(basis)
        r = 0
        pivots = []
        for col in range(nb):
            piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            lead = rows[r][col]
            rows[r] = [x / lead for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][col] != 0:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
        if any(row[-1] != 0 for row in rows[r:]):
            raise LieError("bracket not in the span of the Lyndon basis")
        return {basis[col]: rows[i][-1] for i, col in enumerate(pivots) if rows[i][-1] != 0}

    dim = len(words)
    layers = [len(by_len[k]) for k in range(1, step + 1)]
    structure = {}
    for a, b in itertools.combinations(words, 2):
        length = len(a) + len(b)
        if length > step:
            continue
        comb = expand(_assoc_bracket(polys[a], polys[b], step), length)
        if comb:
            coeffs = [0] * dim
            for w, c in comb.items():
                coeffs[index[w]] = c
            structure[(index[a] + 1, index[b] + 1)] = coeffs
    alg = CarnotAlgebra(layers, structure, name=f"free({rank},{step})")
    alg.words = words
    _ALGEBRAS[key] = alg
    return alg


def algebra_by_name(name: str) -> CarnotAlgebra:
    """``F23``, ``F24``, ``free:RANK:STEP``, or a path to a structure-constant table."""
    upper = name.upper()
    if upper == "F23":
        return f23()
    if upper == "F24":
        return f24()
    if name.lower().startswith("free:"):
        _, r, s = name.split(":")
        return free_nilpotent(int(r), int(s))
    return CarnotAlgebra.load(name)
