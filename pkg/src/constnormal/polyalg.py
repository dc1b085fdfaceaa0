"""Sparse exact multivariate polynomials and rational functions over Q.

Coefficients are :class:`fractions.Fraction`. Polynomials are immutable and
keep their terms in a dict keyed by exponent tuples. Binary operations extend
both operands to the union of their variable lists, so ``x + y`` just works.

Rational functions are kept unreduced (no multivariate gcd); equality is
tested by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

BigRational = Fraction

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyError(ValueError):
    pass


class UnknownVariable(PolyError):
    pass


class MissingAssignment(PolyError):
    pass


class ZeroDenominator(PolyError, ZeroDivisionError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # exact binary value of the float
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MPoly:
    """A polynomial with rational coefficients in named variables."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, Scalar] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolyError(f"repeated variable in {variables}")
        n = len(variables)
        clean: Dict[Monomial, Fraction] = {}
        for mono, c in dict(terms).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise PolyError(f"exponent vector {mono} does not match variables {variables}")
            c = as_fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self.variables = variables
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def var(cls, name: str, variables: Sequence[str] = None) -> "MPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise UnknownVariable(name)
        mono = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {mono: 1})

    @classmethod
    def const(cls, c: Scalar, variables: Sequence[str] = ()) -> "MPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MPoly":
        return cls(variables, {})

    # alignment

    def extend(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over ``variables`` (a superset of the current list)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = [v for v in self.variables if v not in variables]
        if missing:
            if any(self.degree(v) > 0 for v in missing):
                raise UnknownVariable(f"{missing} not in {variables}")
        index = {v: i for i, v in enumerate(variables)}
        out = {}
        for mono, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, mono):
                if e:
                    new[index[v]] = e
            out[tuple(new)] = c
        return MPoly(variables, out)

    def _align(self, other: "MPoly"):
        if self.variables == other.variables:
            return self, other
        union = list(self.variables)
        union.extend(v for v in other.variables if v not in self.variables)
        return self.extend(union), other.extend(union)

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return MPoly.const(other, self.variables)
        return NotImplemented

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self, var: str = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(m[i] for m in self.terms)

    def coefficients(self):
        return list(self.terms.values())

    def coeff_in(self, var: str, k: int) -> "MPoly":
        """Coefficient of ``var**k``, as a polynomial over the same variables."""
        if var not in self.variables:
            return self if k == 0 else MPoly.zero(self.variables)
        i = self.variables.index(var)
        out = {}
        for mono, c in self.terms.items():
            if mono[i] == k:
                out[mono[:i] + (0,) + mono[i + 1:]] = c
        return MPoly(self.variables, out)

    # ring operations

    def __neg__(self):
        return MPoly(self.variables, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._align(other)
        out = dict(a.terms)
        for m, c in b.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(a.variables, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            c = as_fraction(other)
            return MPoly(self.variables, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._align(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(a.variables, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (Fraction(1) / as_fraction(other))
        if isinstance(other, MPoly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(other, self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = MPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            other = MPoly.const(other, self.variables)
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            names = sorted(
                (tuple((v, e) for v, e in zip(self.variables, m) if e), c)
                for m, c in self.terms.items()
            )
            self._hash = hash(tuple(names))
        return self._hash

    # calculus and evaluation

    def diff(self, var: str) -> "MPoly":
        if var not in self.variables:
            raise UnknownVariable(var)
        i = self.variables.index(var)
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                out[mono[:i] + (e - 1,) + mono[i + 1:]] = c * e
        return MPoly(self.variables, out)

    def eval(self, point):
        """Evaluate at a sequence (ordered like ``variables``) or a mapping."""
        if isinstance(point, Mapping):
            try:
                values = [point[v] for v in self.variables]
            except KeyError as exc:
                raise MissingAssignment(str(exc)) from None
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise PolyError(
                    f"point has {len(values)} entries, polynomial has {len(self.variables)} variables"
                )
        total = 0
        for mono, c in self.terms.items():
            term = c
            for v, e in zip(values, mono):
                if e:
                    term = term * v**e
            total = total + term
        return total

    __call__ = eval

    def compose(self, assignment: Mapping[str, "MPoly"]) -> "MPoly":
        """Substitute polynomials (or scalars) for variables."""
        for v in self.variables:
            if v not in assignment and self.degree(v) > 0:
                raise MissingAssignment(v)
        powers = {}
        total = None
        for mono, c in self.terms.items():
            term = None
            for v, e in zip(self.variables, mono):
                if not e:
                    continue
                key = (v, e)
                if key not in powers:
                    powers[key] = assignment[v] ** e
                term = powers[key] if term is None else term * powers[key]
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return MPoly.zero()
        if not isinstance(total, MPoly):
            return MPoly.const(total)
        return total

    # printing

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_text(self) -> str:
        """Canonical serialization: grlex-descending terms, coefficients as num/den."""
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"{c.numerator}/{c.denominator}"]
            for v, e in zip(self.variables, mono):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mono_s = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, mono) if e
            )
            if not mono_s:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_s)
            elif c == -1:
                parts.append("-" + mono_s)
            else:
                parts.append(f"{c}*{mono_s}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MPoly({self})"


def symbols(names: str):
    """``x, y = symbols("x y")``; each polynomial lives in its own one-variable ring."""
    return tuple(MPoly.var(n) for n in names.split())


class RatFunc:
    """Quotient ``num / den`` of polynomials, never reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if not isinstance(num, MPoly):
            num = MPoly.const(num)
        if not isinstance(den, MPoly):
            den = MPoly.const(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        self.num, self.den = num._align(den)

    @staticmethod
    def _lift(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (MPoly, int, Fraction, Rational)):
            return RatFunc(x)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.den == self.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def diff(self, var: str) -> "RatFunc":
        n, d = self.num, self.den
        if var not in n.variables:
            return RatFunc(MPoly.zero(n.variables), d)
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def eval(self, point):
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDenominator("denominator vanishes at the evaluation point")
        return self.num.eval(point) / d

    __call__ = eval

    def is_polynomial_exactly(self) -> bool:
        return self.den.is_constant()

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"


# free-function API mirroring the operations used across the package


def poly_arith(op: str, p: MPoly, q=None) -> MPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "scale":
        return p * as_fraction(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: MPoly, var: str) -> MPoly:
    return p.diff(var)


def poly_subst(p: MPoly, assignment: Mapping[str, object]) -> RatFunc:
    """Compose ``p`` with rational functions; always returns a RatFunc."""
    for v in p.variables:
        if v not in assignment and p.degree(v) > 0:
            raise MissingAssignment(v)
    lifted = {}
    for v, r in assignment.items():
        r = RatFunc._lift(r)
        if r is NotImplemented:
            raise TypeError(f"cannot substitute {type(assignment[v]).__name__} for {v}")
        lifted[v] = r
    total = RatFunc(0)
    for mono, c in p.terms.items():
        term = RatFunc(c)
        for v, e in zip(p.variables, mono):
            if e:
                term = term * lifted[v] ** e
        total = total + term
    return total


def poly_eval(p: MPoly, point) -> Fraction:
    return p.eval([as_fraction(v) for v in point] if not isinstance(point, Mapping) else point)


def det3(m) -> MPoly:
    """Cofactor-expansion determinant of a 3x3 matrix of polynomials or scalars."""
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("det3 needs a 3x3 matrix")
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def jacobian(polys: Sequence[MPoly], variables: Sequence[str]):
    return [[p.diff(v) if v in p.variables else MPoly.zero(p.variables) for v in variables] for p in polys]


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a matrix of exact rationals by fraction-exact elimination."""
    mat = [[as_fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col] / mat[r][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def quadratic_discriminant(p: MPoly, var: str) -> MPoly:
    """``b^2 - 4ac`` for ``p`` viewed as a quadratic in ``var``."""
    if p.degree(var) > 2:
        raise PolyError(f"degree in {var} exceeds 2")
    a, b, c = p.coeff_in(var, 2), p.coeff_in(var, 1), p.coeff_in(var, 0)
    return b * b - a * c * 4
