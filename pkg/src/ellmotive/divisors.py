"""Formal divisors on E and named divisor classes on E^n.

Two layers:

* `FormalDivisor` — an exact-coefficient formal sum of points of E(k), with
  Abel's principality criterion (degree zero and group-law sum equal to the
  identity).  Divisor recipes for the functions h_n live here.

* `ProductDivisorClass` — a formal sum of *named* codimension-1 classes on
  E^n: coordinate fibers D_i(q) = p_i^*(q), diagonals Delta_{i,j}, the
  antidiagonal Psi_{i,j} = {x_i + x_j = 0}, and the class Dsum(q) cut out by
  p_{n+1} = -sum(p_i) taking the value q.  On E^2 the class Dsum(0) is the
  antidiagonal and is normalized to Psi_{1,2} on construction.  The recipes
  for F-bar_n and F_n and the fiberwise restriction rules live here, as does
  the (Z/2Z)^2 alternating projection used on E x E classes.

Generic fiber points are symbolic (named indeterminates with an evaluation
map to concrete points); restriction therefore returns divisors over symbolic
point expressions, which evaluate exactly once an assignment is given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import CurvePoint, EllipticCurve, ec_add, ec_neg, ec_scalar_mul, is_two_torsion


class DivisorError(ValueError):
    """Domain errors: bad indices, non-integer coefficients, wrong torsion."""


class DegeneracyError(ValueError):
    """A restriction or face hit a special locus; carries the locus name."""


# ---------------------------------------------------------------------------
# formal divisors on E


@dataclass(frozen=True)
class FormalDivisor:
    """Exact formal sum of points on one curve; zero terms are never stored."""

    curve: EllipticCurve
    terms: tuple = ()  # tuple of (CurvePoint, Fraction), sorted by point key

    @staticmethod
    def of(curve: EllipticCurve, items) -> "FormalDivisor":
        acc = {}
        for point, coeff in items:
            coeff = Fraction(coeff)
            if point.curve != curve:
                raise DivisorError("divisor point on the wrong curve")
            acc[point] = acc.get(point, Fraction(0)) + coeff
        terms = tuple(sorted(((p, c) for p, c in acc.items() if c != 0), key=lambda t: t[0].key()))
        return FormalDivisor(curve, terms)

    def coeff(self, point: CurvePoint) -> Fraction:
        for p, c in self.terms:
            if p == point:
                return c
        return Fraction(0)

    def support(self):
        return [p for p, _ in self.terms]

    def degree(self) -> Fraction:
        return sum((c for _, c in self.terms), Fraction(0))

    def __add__(self, other: "FormalDivisor") -> "FormalDivisor":
        return FormalDivisor.of(self.curve, list(self.terms) + list(other.terms))

    def __sub__(self, other: "FormalDivisor") -> "FormalDivisor":
        return self + other.scale(-1)

    def scale(self, k) -> "FormalDivisor":
        return FormalDivisor.of(self.curve, [(p, c * Fraction(k)) for p, c in self.terms])

    def negate_points(self) -> "FormalDivisor":
        """Pullback along x -> -x; detects even functions (self-invariance)."""
        return FormalDivisor.of(self.curve, [(ec_neg(p), c) for p, c in self.terms])

    def is_zero(self) -> bool:
        return not self.terms

    def serialize(self):
        return [{"point": point_payload(p), "coeff": str(c)} for p, c in self.terms]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}({p!r})" for p, c in self.terms)


def point_payload(p: CurvePoint):
    if p.infinity:
        return "inf"
    F = p.curve.field
    return [F.key(p.x), F.key(p.y)]


def is_principal(D: FormalDivisor) -> bool:
    """Abel's criterion on E: degree 0 and group-law sum equal to the identity."""
    sum_point = CurvePoint.at_infinity(D.curve)
    for p, c in D.terms:
        if c.denominator != 1:
            raise DivisorError("principality requires integer coefficients")
        sum_point = ec_add(sum_point, ec_scalar_mul(int(c), p))
    return D.degree() == 0 and sum_point.infinity


def make_hn_divisor(n: int, u: CurvePoint, v: CurvePoint) -> FormalDivisor:
    """Divisor of h_n: n(u) - n(0) for even n, (n-2)(u)+(v)+(u+v)-n(0) for odd n."""
    if n < 2:
        raise DivisorError("h_n needs n >= 2")
    curve = u.curve
    for t in (u, v):
        if t.infinity or not is_two_torsion(t):
            raise DivisorError("u, v must be nonzero 2-torsion points")
    if u == v:
        raise DivisorError("u, v must be distinct")
    zero = CurvePoint.at_infinity(curve)
    if n % 2 == 0:
        return FormalDivisor.of(curve, [(u, n), (zero, -n)])
    return FormalDivisor.of(curve, [(u, n - 2), (v, 1), (ec_add(u, v), 1), (zero, -n)])


# ---------------------------------------------------------------------------
# named classes on E^n

# NamedClass keys:
#   ("D", i, point)   coordinate fiber p_i^*(point), 1 <= i <= n
#   ("Delta", i, j)   {x_i = x_j}, i < j
#   ("Psi", i, j)     {x_i + x_j = 0}, i < j
#   ("Dsum", point)   {-(x_1+...+x_n) = point}; the class D_{n+1}(point)


def _class_key(cls) -> str:
    kind = cls[0]
    if kind == "D":
        return f"D{cls[1]}({cls[2].key()})"
    if kind in ("Delta", "Psi"):
        return f"{kind}{cls[1]},{cls[2]}"
    if kind == "Dsum":
        return f"Dsum({cls[1].key()})"
    raise DivisorError(f"unknown class {cls!r}")


@dataclass(frozen=True)
class ProductDivisorClass:
    """Formal sum of named codimension-1 classes on E^n."""

    curve: EllipticCurve
    n: int
    terms: tuple = ()  # tuple of (NamedClass, Fraction), sorted by class key

    @staticmethod
    def of(curve: EllipticCurve, n: int, items) -> "ProductDivisorClass":
        acc = {}
        for cls, coeff in items:
            cls = _normalize_class(cls, n)
            acc[cls] = acc.get(cls, Fraction(0)) + Fraction(coeff)
        terms = tuple(sorted(((k, c) for k, c in acc.items() if c != 0), key=lambda t: _class_key(t[0])))
        return ProductDivisorClass(curve, n, terms)

    def coeff(self, cls) -> Fraction:
        cls = _normalize_class(cls, self.n)
        for k, c in self.terms:
            if k == cls:
                return c
        return Fraction(0)

    def __add__(self, other):
        if self.n != other.n:
            raise DivisorError("ambient exponent mismatch")
        return ProductDivisorClass.of(self.curve, self.n, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k) -> "ProductDivisorClass":
        return ProductDivisorClass.of(self.curve, self.n, [(cls, c * Fraction(k)) for cls, c in self.terms])

    def diff(self, other: "ProductDivisorClass"):
        """Term-by-term difference report: list of (class key, self coeff, other coeff)."""
        keys = {}
        for cls, c in self.terms:
            keys.setdefault(_class_key(cls), [Fraction(0), Fraction(0)])[0] += c
        for cls, c in other.terms:
            keys.setdefault(_class_key(cls), [Fraction(0), Fraction(0)])[1] += c
        return [(k, a, b) for k, (a, b) in sorted(keys.items()) if a != b]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{_class_key(cls)}" for cls, c in self.terms)


def _normalize_class(cls, n: int):
    kind = cls[0]
    if kind == "D":
        _, i, q = cls
        if not 1 <= i <= n:
            raise DivisorError(f"fiber index {i} out of range for E^{n}")
        return ("D", i, q)
    if kind in ("Delta", "Psi"):
        _, i, j = cls
        if i > j:
            i, j = j, i
        if not (1 <= i < j <= n):
            raise DivisorError(f"{kind} indices ({i},{j}) out of range for E^{n}")
        return (kind, i, j)
    if kind == "Dsum":
        _, q = cls
        # On E^2, {x1 + x2 = -q}: for q = 0 this is exactly the antidiagonal.
        if n == 2 and q.infinity:
            return ("Psi", 1, 2)
        return ("Dsum", q)
    raise DivisorError(f"unknown class {cls!r}")


def make_fbar_divisor(curve: EllipticCurve, n: int) -> ProductDivisorClass:
    """(F-bar_n) = -n * sum_i D_i(0) + sum_{i<j} Delta_{i,j} + D_{n+1}(0) on E^n."""
    if n < 2:
        raise DivisorError("F-bar_n needs n >= 2")
    zero = CurvePoint.at_infinity(curve)
    items = [(("D", i, zero), -n) for i in range(1, n + 1)]
    items += [(("Delta", i, j), 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    items.append((("Dsum", zero), 1))
    return ProductDivisorClass.of(curve, n, items)


def pullback_to_factor(D: FormalDivisor, n: int, j: int) -> ProductDivisorClass:
    """p_j^*(D) on E^n: each point q of D contributes D_j(q)."""
    return ProductDivisorClass.of(D.curve, n, [(("D", j, p), c) for p, c in D.terms])


@dataclass(frozen=True)
class FnDivisorReport:
    """Both readings of (F_n) plus their term-by-term difference.

    `product` is the divisor of the defining product
    F-bar_n * h_n^{-1}(z_2) ... h_n^{-1}(z_n); `displayed` is the closed-form
    divisor with poles at u in every coordinate.  The two disagree (the
    product leaves coordinate 1 with poles at 0), so both are returned and
    the difference is flagged downstream.
    """

    product: ProductDivisorClass
    displayed: ProductDivisorClass
    difference: list


def make_fn_divisor(curve: EllipticCurve, n: int, u: CurvePoint, v: CurvePoint) -> FnDivisorReport:
    hn = make_hn_divisor(n, u, v)
    product = make_fbar_divisor(curve, n)
    for j in range(2, n + 1):
        product = product - pullback_to_factor(hn, n, j)

    zero = CurvePoint.at_infinity(curve)
    items = []
    if n % 2 == 0:
        items += [(("D", i, u), -n) for i in range(1, n + 1)]
    else:
        items += [(("D", i, u), -(n - 2)) for i in range(1, n + 1)]
        items += [(("D", i, v), -1) for i in range(1, n + 1)]
        uv = ec_add(u, v)
        items += [(("D", i, uv), -1) for i in range(1, n + 1)]
    items += [(("Delta", i, j), 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    items.append((("Dsum", zero), 1))
    displayed = ProductDivisorClass.of(curve, n, items)

    return FnDivisorReport(product, displayed, product.diff(displayed))


# ---------------------------------------------------------------------------
# symbolic points and fiberwise restriction


@dataclass(frozen=True)
class SymPoint:
    """An affine expression sum(c_k * s_k) + const with named generic points s_k."""

    curve: EllipticCurve
    coeffs: tuple = ()  # tuple of (name, int), sorted, nonzero
    const: CurvePoint = None

    @staticmethod
    def generic(curve: EllipticCurve, name: str) -> "SymPoint":
        return SymPoint(curve, ((name, 1),), CurvePoint.at_infinity(curve))

    @staticmethod
    def constant(p: CurvePoint) -> "SymPoint":
        return SymPoint(p.curve, (), p)

    @staticmethod
    def combine(curve, parts, const=None) -> "SymPoint":
        acc = {}
        for name, c in parts:
            acc[name] = acc.get(name, 0) + c
        coeffs = tuple(sorted((n, c) for n, c in acc.items() if c != 0))
        return SymPoint(curve, coeffs, const if const is not None else CurvePoint.at_infinity(curve))

    def __neg__(self) -> "SymPoint":
        return SymPoint(self.curve, tuple((n, -c) for n, c in self.coeffs), ec_neg(self.const))

    def __add__(self, other: "SymPoint") -> "SymPoint":
        return SymPoint.combine(
            self.curve, list(self.coeffs) + list(other.coeffs), ec_add(self.const, other.const)
        )

    def is_constant(self) -> bool:
        return not self.coeffs

    def evaluate(self, assignment) -> CurvePoint:
        acc = self.const
        for name, c in self.coeffs:
            acc = ec_add(acc, ec_scalar_mul(c, assignment[name]))
        return acc

    def key(self) -> str:
        sym = "+".join(f"{c}*{n}" for n, c in self.coeffs)
        return f"<{sym}|{self.const.key()}>"

    def __repr__(self) -> str:
        return self.key()


@dataclass(frozen=True)
class SymbolicDivisor:
    """Formal divisor whose points are symbolic expressions."""

    curve: EllipticCurve
    terms: tuple = ()  # tuple of (SymPoint, Fraction)

    @staticmethod
    def of(curve, items) -> "SymbolicDivisor":
        acc = {}
        for pt, c in items:
            acc[pt] = acc.get(pt, Fraction(0)) + Fraction(c)
        terms = tuple(sorted(((p, c) for p, c in acc.items() if c != 0), key=lambda t: t[0].key()))
        return SymbolicDivisor(curve, terms)

    def degree(self) -> Fraction:
        return sum((c for _, c in self.terms), Fraction(0))

    def evaluate(self, assignment) -> FormalDivisor:
        return FormalDivisor.of(self.curve, [(p.evaluate(assignment), c) for p, c in self.terms])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}({p!r})" for p, c in self.terms)


def restrict_to_fiber(cls: ProductDivisorClass, i: int, fixed: dict) -> SymbolicDivisor:
    """Restrict a class on E^n to the fiber over coordinate i.

    `fixed` maps every coordinate j != i to a SymPoint (generic symbols or
    constants).  Rules: D_j(q) for j != i contributes nothing unless the fixed
    value equals q (a degeneracy); D_i(q) -> (q); Delta_{i,j} -> (q_j);
    Psi_{i,j} -> (-q_j); Dsum(q) -> (-q - sum_{j != i} q_j).
    """
    n = cls.n
    if not 1 <= i <= n:
        raise DivisorError(f"coordinate {i} out of range for E^{n}")
    missing = [j for j in range(1, n + 1) if j != i and j not in fixed]
    if missing:
        raise DivisorError(f"missing fixed values for coordinates {missing}")
    out = []
    for named, c in cls.terms:
        kind = named[0]
        if kind == "D":
            _, j, q = named
            if j == i:
                out.append((SymPoint.constant(q), c))
            elif fixed[j].is_constant() and fixed[j].const == q:
                raise DegeneracyError(f"fixed value for coordinate {j} lies on {_class_key(named)}")
        elif kind in ("Delta", "Psi"):
            _, a, b = named
            if i not in (a, b):
                _check_off_locus(named, fixed, a, b)
                continue
            j = b if a == i else a
            val = fixed[j] if kind == "Delta" else -fixed[j]
            out.append((val, c))
        elif kind == "Dsum":
            _, q = named
            total = SymPoint.constant(ec_neg(q))
            for j in range(1, n + 1):
                if j != i:
                    total = total + (-fixed[j])
            out.append((total, c))
    return SymbolicDivisor.of(cls.curve, out)


def _check_off_locus(named, fixed, a, b):
    kind = named[0]
    fa, fb = fixed[a], fixed[b]
    if fa.is_constant() and fb.is_constant():
        if kind == "Delta" and fa.const == fb.const:
            raise DegeneracyError(f"fixed values lie on {_class_key(named)}")
        if kind == "Psi" and fa.const == ec_neg(fb.const):
            raise DegeneracyError(f"fixed values lie on {_class_key(named)}")
    elif fa == fb and kind == "Delta":
        raise DegeneracyError(f"fixed values lie on {_class_key(named)}")


# ---------------------------------------------------------------------------
# the (Z/2Z)^2 alternating projection on E^2 classes


def _negate_coordinate(named, k: int, n: int):
    kind = named[0]
    if kind == "D":
        _, i, q = named
        return ("D", i, ec_neg(q)) if i == k else named
    if kind == "Delta":
        _, i, j = named
        return ("Psi", i, j) if k in (i, j) else named
    if kind == "Psi":
        _, i, j = named
        return ("Delta", i, j) if k in (i, j) else named
    raise DivisorError(f"cannot negate a coordinate of {_class_key(named)}")


def alt_project_square(cls: ProductDivisorClass) -> ProductDivisorClass:
    """Sum over (Z/2Z)^2 of sign(g) * g acting on an E^2 class by negations."""
    if cls.n != 2:
        raise DivisorError("alternating projection is defined on E^2 classes")
    items = []
    for e1 in (0, 1):
        for e2 in (0, 1):
            sign = (-1) ** (e1 + e2)
            for named, c in cls.terms:
                img = named
                if e1:
                    img = _negate_coordinate(img, 1, 2)
                if e2:
                    img = _negate_coordinate(img, 2, 2)
                items.append((img, c * sign))
    return ProductDivisorClass.of(cls.curve, 2, items)


def swap_factors_square(cls: ProductDivisorClass) -> ProductDivisorClass:
    """Pushforward along the swap (x, y) -> (y, x) of E^2."""
    if cls.n != 2:
        raise DivisorError("factor swap is defined on E^2 classes")
    items = []
    for named, c in cls.terms:
        if named[0] == "D":
            _, i, q = named
            items.append((("D", 3 - i, q), c))
        else:
            items.append((named, c))
    return ProductDivisorClass.of(cls.curve, 2, items)
