"""Symbolic parametric cubical cycles on E^b x (P^1 - {1})^c.

A `ParamCycle` is the image of an affine parametrization: each E-coordinate
is an expression sum(+-t_k) + const in named E-valued parameters, each cube
coordinate is either a function evaluated at such expressions (identified
with its divisor; nothing is ever evaluated in a function field) or a
symbolic constant.

Equality of cycle sums is canonical-form equality under the symmetries the
ambient algebra imposes:

* reparametrization (renaming and sign changes of parameters) is free;
* negating one E-coordinate costs a sign (the (Z/2Z)^b alternation);
* permuting E-coordinates costs the sign character (the tensor identification
  over the symmetric group transports cycles with that sign);
* permuting cube coordinates costs the sign character (the G_c alternation).

A term carried to itself by an odd symmetry is zero; the orbit scan detects
this as the same canonical string reached with both signs.  This single rule
is what kills constant 2-torsion E-coordinates and the diagonal-type faces of
the boundary.

The cubical boundary takes, for each cube slot, the zero and pole faces of
the coordinate's divisor, solves the face equation for one parameter, and
substitutes; signs follow the fixed convention sum_k (-1)^(k-1) (d0_k - dinf_k).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .curves import CurvePoint, EllipticCurve, ec_add, ec_neg, ec_scalar_mul, is_two_torsion
from .divisors import (
    DegeneracyError,
    DivisorError,
    FormalDivisor,
    FnDivisorReport,
    ProductDivisorClass,
    is_principal,
    make_fbar_divisor,
    make_fn_divisor,
)
from .gl2 import PureMotive
from .symgrp import GroupAlgebraElement, Permutation, YoungShape, action_sign, transpose_projector


class CycleError(ValueError):
    """Structural errors in cycle construction."""


class AdmissibilityError(ValueError):
    """Raised when a construction is attempted with inadmissible data."""

    def __init__(self, report):
        super().__init__("; ".join(report.violations))
        self.report = report


# ---------------------------------------------------------------------------
# affine E-valued expressions


@dataclass(frozen=True)
class PointExpr:
    """sum(c_k * t_k) + const, with integer coefficients and a point constant."""

    curve: EllipticCurve
    coeffs: tuple = ()  # tuple of (name, int), sorted by name, nonzero
    const: CurvePoint = None

    @staticmethod
    def make(curve, items, const=None) -> "PointExpr":
        acc = {}
        for name, c in items:
            acc[name] = acc.get(name, 0) + c
        coeffs = tuple(sorted((n, c) for n, c in acc.items() if c != 0))
        return PointExpr(curve, coeffs, const if const is not None else CurvePoint.at_infinity(curve))

    @staticmethod
    def param(curve, name: str) -> "PointExpr":
        return PointExpr.make(curve, [(name, 1)])

    @staticmethod
    def constant(p: CurvePoint) -> "PointExpr":
        return PointExpr.make(p.curve, [], p)

    def params(self):
        return [n for n, _ in self.coeffs]

    def is_const(self) -> bool:
        return not self.coeffs

    def __neg__(self) -> "PointExpr":
        return PointExpr(self.curve, tuple((n, -c) for n, c in self.coeffs), ec_neg(self.const))

    def __add__(self, other: "PointExpr") -> "PointExpr":
        return PointExpr.make(
            self.curve, list(self.coeffs) + list(other.coeffs), ec_add(self.const, other.const)
        )

    def __sub__(self, other: "PointExpr") -> "PointExpr":
        return self + (-other)

    def sub_point(self, q: CurvePoint) -> "PointExpr":
        return PointExpr(self.curve, self.coeffs, ec_add(self.const, ec_neg(q)))

    def scale(self, k: int) -> "PointExpr":
        if k == 0:
            return PointExpr.make(self.curve, [])
        return PointExpr(
            self.curve, tuple((n, k * c) for n, c in self.coeffs), ec_scalar_mul(k, self.const)
        )

    def substitute(self, name: str, repl: "PointExpr") -> "PointExpr":
        c = dict(self.coeffs).get(name)
        if c is None:
            return self
        rest = PointExpr(self.curve, tuple((n, v) for n, v in self.coeffs if n != name), self.const)
        return rest + repl.scale(c)

    def rename(self, mapping: dict) -> "PointExpr":
        return PointExpr.make(
            self.curve, [(mapping.get(n, n), c) for n, c in self.coeffs], self.const
        )

    def key(self) -> str:
        body = "+".join(f"{c}{n}" for n, c in self.coeffs)
        return f"{body}|{self.const.key()}"

    def __repr__(self) -> str:
        return self.key()


# ---------------------------------------------------------------------------
# function specs: a cube coordinate is a function known only by its divisor


@dataclass(frozen=True)
class UserFunction:
    """A named rational function on E, given by its (principal) divisor."""

    name: str
    divisor: FormalDivisor

    def __post_init__(self):
        if not is_principal(self.divisor):
            raise DivisorError(f"divisor of {self.name} fails Abel's criterion")

    @property
    def arity(self) -> int:
        return 1

    def components(self):
        """Face components as (kind tuple, coefficient)."""
        return [(("D", 1, p), c) for p, c in self.divisor.terms]

    def sym_classes(self):
        return ((1,),)

    def spec_key(self) -> str:
        return f"user:{self.name}"


@dataclass(frozen=True)
class FbarSpec:
    """The function on E^n with divisor -n sum D_i(0) + sum Delta_{i,j} + Dsum(0)."""

    curve: EllipticCurve
    n: int

    @property
    def arity(self) -> int:
        return self.n

    def divisor_class(self) -> ProductDivisorClass:
        return make_fbar_divisor(self.curve, self.n)

    def components(self):
        return list(self.divisor_class().terms)

    def sym_classes(self):
        # fully symmetric in all arguments
        return (tuple(range(1, self.n + 1)),)

    def spec_key(self) -> str:
        return f"fbar:{self.n}"


@dataclass(frozen=True)
class FnSpec:
    """F-bar_n corrected by h_n in coordinates 2..n; two divisor readings."""

    curve: EllipticCurve
    n: int
    u: CurvePoint
    v: CurvePoint
    construction: str = "product"  # "product" | "displayed"

    @property
    def arity(self) -> int:
        return self.n

    def report(self) -> FnDivisorReport:
        return make_fn_divisor(self.curve, self.n, self.u, self.v)

    def divisor_class(self) -> ProductDivisorClass:
        rep = self.report()
        return rep.product if self.construction == "product" else rep.displayed

    def components(self):
        return list(self.divisor_class().terms)

    def sym_classes(self):
        if self.construction == "product":
            # coordinate 1 keeps its poles at 0, coordinates 2..n are interchangeable
            return ((1,), tuple(range(2, self.n + 1)))
        return (tuple(range(1, self.n + 1)),)

    def spec_key(self) -> str:
        return f"fn:{self.n}:{self.u.key()}:{self.v.key()}:{self.construction}"


@dataclass(frozen=True)
class FunCoord:
    spec: object
    args: tuple  # tuple of PointExpr, length spec.arity

    def __post_init__(self):
        if len(self.args) != self.spec.arity:
            raise CycleError("argument count does not match the function arity")


@dataclass(frozen=True)
class ConstCoord:
    """A function evaluated at a fixed point; faces on it are empty."""

    spec: object
    point: CurvePoint


# ---------------------------------------------------------------------------
# parametric cycles


@dataclass(frozen=True)
class ParamCycle:
    curve: EllipticCurve
    params: tuple  # ordered tuple of names
    ecoords: tuple  # tuple of PointExpr
    qcoords: tuple  # tuple of FunCoord | ConstCoord

    def __post_init__(self):
        used = set()
        for e in self.ecoords:
            used.update(e.params())
        for q in self.qcoords:
            if isinstance(q, FunCoord):
                for a in q.args:
                    used.update(a.params())
        declared = set(self.params)
        if used - declared:
            raise CycleError(f"undeclared parameters {sorted(used - declared)}")
        if declared - used:
            raise CycleError(f"unused parameters {sorted(declared - used)}")

    @property
    def b(self) -> int:
        return len(self.ecoords)

    @property
    def c(self) -> int:
        return len(self.qcoords)

    @property
    def dim(self) -> int:
        return len(self.params)

    @property
    def codim(self) -> int:
        return self.b + self.c - self.dim

    def rename_params(self, mapping: dict) -> "ParamCycle":
        ecoords = tuple(e.rename(mapping) for e in self.ecoords)
        qcoords = tuple(
            FunCoord(q.spec, tuple(a.rename(mapping) for a in q.args))
            if isinstance(q, FunCoord)
            else q
            for q in self.qcoords
        )
        return ParamCycle(self.curve, tuple(mapping.get(p, p) for p in self.params), ecoords, qcoords)

    def permute_ecoords(self, sigma: Permutation) -> "ParamCycle":
        inv = sigma.inverse()
        ecoords = tuple(self.ecoords[inv(i) - 1] for i in range(1, self.b + 1))
        return ParamCycle(self.curve, self.params, ecoords, self.qcoords)

    def negate_ecoord(self, i: int) -> "ParamCycle":
        ecoords = list(self.ecoords)
        ecoords[i - 1] = -ecoords[i - 1]
        return ParamCycle(self.curve, self.params, tuple(ecoords), self.qcoords)

    def permute_qcoords(self, sigma: Permutation) -> "ParamCycle":
        inv = sigma.inverse()
        qcoords = tuple(self.qcoords[inv(i) - 1] for i in range(1, self.c + 1))
        return ParamCycle(self.curve, self.params, self.ecoords, qcoords)

    def __repr__(self) -> str:
        es = ", ".join(e.key() for e in self.ecoords)
        qs = ", ".join(_qcoord_key(q, {}) for q in self.qcoords)
        return f"Cycle[({es}) ; ({qs})]"


def _qcoord_key(q, naming: dict) -> str:
    if isinstance(q, ConstCoord):
        return f"K({q.spec.spec_key()}@{q.point.key()})"
    args = ",".join(_expr_key(a, naming) for a in q.args)
    return f"F({q.spec.spec_key()};{args})"


def _expr_key(e: PointExpr, naming: dict) -> str:
    body = "+".join(f"{c}{naming.get(n, '?' + n)}" for n, c in e.coeffs)
    return f"{body}|{e.const.key()}"


# ---------------------------------------------------------------------------
# canonical forms


def _point_orbit_key(p: CurvePoint) -> str:
    return min(p.key(), ec_neg(p).key())


def _ecoord_profile(e: PointExpr) -> tuple:
    if e.is_const():
        return ("c", _point_orbit_key(e.const))
    mags = tuple(sorted(abs(c) for _, c in e.coeffs))
    return ("x", mags, _point_orbit_key(e.const))


_canonical_cache: dict = {}


def canonical_term(cycle: ParamCycle):
    """Canonical representative and sign, or (None, 0) when the term dies.

    Scans the orbit of the term under the signed symmetries (E-coordinate
    permutations within equal-profile blocks after profile sorting,
    E-coordinate negations, parameter renaming/sign absorption, cube
    coordinate sorting) and returns the minimal serialization.  If the same
    serialization is reached with opposite accumulated signs the class is
    zero.
    """
    cached = _canonical_cache.get(cycle)
    if cached is not None:
        return cached

    b = cycle.b
    profiles = [_ecoord_profile(e) for e in cycle.ecoords]
    order = sorted(range(b), key=lambda i: (profiles[i], i))
    blocks = []
    for idx in order:
        if blocks and profiles[blocks[-1][-1]] == profiles[idx]:
            blocks[-1].append(idx)
        else:
            blocks.append([idx])

    best = None  # (serialization, sign, rebuilt cycle)
    seen_signs: dict = {}
    dead = False

    for arrangement in _block_arrangements(blocks):
        perm_sign = _arrangement_parity(arrangement)
        ecoords = [cycle.ecoords[i] for i in arrangement]
        for flips in itertools.product((1, -1), repeat=b):
            flip_sign = 1
            flipped = []
            for e, f in zip(ecoords, flips):
                if f == -1:
                    flip_sign = -flip_sign
                    flipped.append(-e)
                else:
                    flipped.append(e)
            total = perm_sign * flip_sign
            for ser, extra, rebuilt in _serialize_candidates(cycle, flipped):
                s = total * extra
                prev = seen_signs.get(ser)
                if prev is None:
                    seen_signs[ser] = (s, rebuilt)
                elif prev[0] != s:
                    dead = True
                    break
                if best is None or ser < best[0]:
                    best = (ser, s, rebuilt)
            if dead:
                break
        if dead:
            break

    result = (None, Fraction(0)) if dead else (best[2], Fraction(best[1]))
    _canonical_cache[cycle] = result
    return result


def _block_arrangements(blocks):
    """All position orders obtained by permuting within equal-profile blocks."""
    perms_per_block = [list(itertools.permutations(block)) for block in blocks]
    for choice in itertools.product(*perms_per_block):
        yield [i for block in choice for i in block]


def _arrangement_parity(arrangement) -> int:
    seen = [False] * len(arrangement)
    sign = 1
    for start in range(len(arrangement)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = arrangement[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _serialize_candidates(cycle: ParamCycle, ecoords):
    """Serializations of one (sigma, flips) variant.

    Parameters are renamed in first-occurrence order with their signs absorbed
    (reparametrization is free); naming ties among parameters introduced
    together, and cube-coordinate sort ties, are enumerated.
    """
    out = []
    for naming, signs in _namings_from_ecoords(cycle, ecoords):
        norm_ecoords = [_normalize_expr(e, signs) for e in ecoords]
        qdata = [_normalize_qcoord(q, signs) for q in cycle.qcoords]
        for full_naming, qorder, qsign in _qcoord_orders(cycle, qdata, naming, signs):
            eser = tuple(_expr_ser(e, full_naming) for e in norm_ecoords)
            qser = tuple(_qcoord_ser(qdata[j], full_naming) for j in qorder)
            rebuilt = _rebuild(cycle, norm_ecoords, qdata, qorder, full_naming)
            out.append(((eser, qser), qsign, rebuilt))
    return out


def _namings_from_ecoords(cycle, ecoords):
    """Name parameters in first-occurrence order along the E-coordinates.

    Within one expression, new parameters are ordered by (|coeff|, sign); ties
    are enumerated.  Each parameter's sign is absorbed so its first occurrence
    has a positive coefficient.
    """
    orderings = [([], {})]  # (ordered names, sign map)
    for e in ecoords:
        new_orderings = []
        for names, signs in orderings:
            fresh = [(n, c) for n, c in e.coeffs if n not in signs]
            if not fresh:
                new_orderings.append((names, signs))
                continue
            fresh_sorted = sorted(fresh, key=lambda t: abs(t[1]))
            groups = itertools.groupby(fresh_sorted, key=lambda t: abs(t[1]))
            variants = [[]]
            for _, group in groups:
                group = list(group)
                variants = [v + list(p) for v in variants for p in itertools.permutations(group)]
            for variant in variants:
                names2 = list(names)
                signs2 = dict(signs)
                for n, c in variant:
                    names2.append(n)
                    signs2[n] = 1 if c > 0 else -1
                new_orderings.append((names2, signs2))
        orderings = new_orderings
    results = []
    for names, signs in orderings:
        naming = {n: f"t{i}" for i, n in enumerate(names)}
        results.append((naming, signs))
    return results


def _normalize_expr(e: PointExpr, signs: dict) -> PointExpr:
    return PointExpr.make(
        e.curve, [(n, c * signs.get(n, 1)) for n, c in e.coeffs], e.const
    )


def _const_collapse(q):
    """A unary function at a constant argument is a constant coordinate."""
    if isinstance(q, FunCoord) and q.spec.arity == 1 and q.args[0].is_const():
        return ConstCoord(q.spec, q.args[0].const)
    return q


def _normalize_qcoord(q, signs):
    q = _const_collapse(q)
    if isinstance(q, ConstCoord):
        return q
    args = tuple(_normalize_expr(a, signs) for a in q.args)
    # sort arguments within the spec's symmetric argument classes
    arg_list = list(args)
    for cls in q.spec.sym_classes():
        if len(cls) > 1:
            chunk = sorted((arg_list[i - 1] for i in cls), key=lambda a: a.key())
            for pos, val in zip(cls, chunk):
                arg_list[pos - 1] = val
    return FunCoord(q.spec, tuple(arg_list))


def _qcoord_orders(cycle, qdata, naming, signs):
    """Sorted cube-slot orders; parameters unseen on the E side are named in
    sorted-slot scan order.  Ties are enumerated with their parities."""
    keys = [_qcoord_ser(q, naming) for q in qdata]
    order = sorted(range(len(qdata)), key=lambda j: (keys[j], j))
    groups = []
    for j in order:
        if groups and keys[groups[-1][-1]] == keys[j]:
            groups[-1].append(j)
        else:
            groups.append([j])
    for choice in itertools.product(*[list(itertools.permutations(g)) for g in groups]):
        qorder = [j for g in choice for j in g]
        parity = _arrangement_parity(_positions_to_perm(qorder))
        full = dict(naming)
        counter = len(full)
        ok = True
        for j in qorder:
            q = qdata[j]
            if isinstance(q, ConstCoord):
                continue
            for a in q.args:
                for n, c in a.coeffs:
                    if n not in full:
                        full[n] = f"t{counter}"
                        counter += 1
                        if signs.get(n, 1) == -1:
                            ok = False  # sign not absorbed; covered by flip variants
        if ok:
            yield full, qorder, parity


def _positions_to_perm(order):
    # order[pos] = original index; parity of the rearrangement
    return order


def _expr_ser(e: PointExpr, naming: dict):
    items = tuple(sorted((naming.get(n, "?"), c) for n, c in e.coeffs))
    return ("e", items, e.const.key())


def _qcoord_ser(q, naming: dict):
    if isinstance(q, ConstCoord):
        return ("K", q.spec.spec_key(), q.point.key())
    return ("F", q.spec.spec_key(), tuple(_expr_ser(a, naming) for a in q.args))


def _rebuild(cycle, ecoords, qdata, qorder, naming) -> ParamCycle:
    ecoords2 = tuple(e.rename(naming) for e in ecoords)
    qcoords2 = []
    for j in qorder:
        q = qdata[j]
        if isinstance(q, ConstCoord):
            qcoords2.append(q)
        else:
            qcoords2.append(FunCoord(q.spec, tuple(a.rename(naming) for a in q.args)))
    names = sorted(naming.values(), key=lambda s: int(s[1:]))
    return ParamCycle(cycle.curve, tuple(names), ecoords2, tuple(qcoords2))


# ---------------------------------------------------------------------------
# cycle sums


@dataclass(frozen=True)
class CycleSum:
    """Exact linear combination of parametric cycles with a motive label."""

    terms: tuple = ()  # tuple of (Fraction, ParamCycle)
    motives: tuple = ()  # ordered tensor factors (PureMotive), bookkeeping only

    @staticmethod
    def of(items, motives=()) -> "CycleSum":
        acc = {}
        for coeff, cyc in items:
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            canon, sign = canonical_term(cyc)
            if canon is None:
                continue
            acc[canon] = acc.get(canon, Fraction(0)) + coeff * sign
        terms = tuple(
            sorted(((c, k) for k, c in acc.items() if c != 0), key=lambda t: _cycle_sort_key(t[1]))
        )
        return CycleSum(terms, tuple(motives))

    @staticmethod
    def single(cycle: ParamCycle, coeff=1, motives=()) -> "CycleSum":
        return CycleSum.of([(coeff, cycle)], motives)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CycleSum") -> "CycleSum":
        return CycleSum.of(list(self.terms) + list(other.terms), self.motives or other.motives)

    def __sub__(self, other: "CycleSum") -> "CycleSum":
        return self + other.scale(-1)

    def scale(self, k) -> "CycleSum":
        return CycleSum(tuple((c * Fraction(k), cyc) for c, cyc in self.terms), self.motives)

    def relabel(self, motives) -> "CycleSum":
        return CycleSum(self.terms, tuple(motives))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{cyc!r}" for c, cyc in self.terms)


def _cycle_sort_key(cyc: ParamCycle):
    naming = {p: p for p in cyc.params}
    return (
        tuple(_expr_ser(e, naming) for e in cyc.ecoords),
        tuple(_qcoord_ser(q, naming) for q in cyc.qcoords),
    )


def canonicalize(s: CycleSum) -> CycleSum:
    """Normal form; CycleSum.of already canonicalizes, this re-normalizes."""
    return CycleSum.of(list(s.terms), s.motives)


# ---------------------------------------------------------------------------
# boundary


_face_cache: dict = {}


def _component_equation(q: FunCoord, component) -> PointExpr:
    kind = component[0]
    args = q.args
    if kind == "D":
        _, i, pt = component
        return args[i - 1].sub_point(pt)
    if kind == "Delta":
        _, i, j = component
        return args[i - 1] - args[j - 1]
    if kind == "Psi":
        _, i, j = component
        return args[i - 1] + args[j - 1]
    if kind == "Dsum":
        _, pt = component
        total = PointExpr.constant(pt)
        for a in args:
            total = total + a
        return total
    raise CycleError(f"unknown divisor component {component!r}")


def _solve_face(cycle: ParamCycle, slot: int, eq: PointExpr):
    """Impose eq = 0, eliminate one parameter, drop the cube slot.

    Returns the face cycle, or None when the equation has no solution on the
    family; raises DegeneracyError when it holds identically or cannot be
    solved with a unit pivot.
    """
    if eq.is_const():
        if eq.const.infinity:
            raise DegeneracyError(
                f"cube coordinate {slot} is identically degenerate on a face"
            )
        return None
    pivot = None
    for name in cycle.params:
        c = dict(eq.coeffs).get(name)
        if c in (1, -1):
            pivot = (name, c)
            break
    if pivot is None:
        raise DegeneracyError(f"face equation {eq.key()} has no unit pivot")
    name, c = pivot
    rest = PointExpr(eq.curve, tuple((n, v) for n, v in eq.coeffs if n != name), eq.const)
    repl = rest.scale(-c)  # c = +-1
    ecoords = tuple(e.substitute(name, repl) for e in cycle.ecoords)
    qcoords = []
    for j, q in enumerate(cycle.qcoords, start=1):
        if j == slot:
            continue
        if isinstance(q, ConstCoord):
            qcoords.append(q)
        else:
            qcoords.append(
                _const_collapse(FunCoord(q.spec, tuple(a.substitute(name, repl) for a in q.args)))
            )
    params = tuple(p for p in cycle.params if p != name)
    face = ParamCycle(cycle.curve, params, ecoords, tuple(qcoords))
    _check_nondegenerate(face)
    return face


def _check_nondegenerate(cycle: ParamCycle):
    for j, q in enumerate(cycle.qcoords, start=1):
        if isinstance(q, ConstCoord):
            if q.spec.arity == 1 and q.point in q.spec.divisor.support():
                raise DegeneracyError(
                    f"cube coordinate {j} is the constant 0 or infinity"
                )
            continue
        for component, _ in q.spec.components():
            eq = _component_equation(q, component)
            if eq.is_const() and eq.const.infinity:
                raise DegeneracyError(
                    f"cube coordinate {j} became identically zero or infinite"
                )


def term_faces(cycle: ParamCycle):
    """All boundary faces of one cycle: list of (coefficient, face cycle)."""
    cached = _face_cache.get(cycle)
    if cached is not None:
        return cached
    out = []
    for slot, q in enumerate(cycle.qcoords, start=1):
        if isinstance(q, ConstCoord):
            continue
        slot_sign = -1 if (slot - 1) % 2 else 1
        for component, coeff in q.spec.components():
            if coeff.denominator != 1:
                raise CycleError("face multiplicities must be integers")
            eq = _component_equation(q, component)
            face = _solve_face(cycle, slot, eq)
            if face is None:
                continue
            # zeros (coeff > 0) enter with +, poles with -; multiplicity |coeff|
            out.append((Fraction(slot_sign) * coeff, face))
    _face_cache[cycle] = out
    return out


def boundary(s: CycleSum) -> CycleSum:
    items = []
    for coeff, cyc in s.terms:
        for fc, face in term_faces(cyc):
            items.append((coeff * fc, face))
    return CycleSum.of(items, s.motives)


# ---------------------------------------------------------------------------
# products and projector actions


_fresh_counter = itertools.count()


def _freshen(cycle: ParamCycle, taken: set) -> ParamCycle:
    mapping = {}
    for p in cycle.params:
        if p in taken:
            mapping[p] = f"w{next(_fresh_counter)}"
    return cycle.rename_params(mapping) if mapping else cycle


def external_product(s1: CycleSum, s2: CycleSum, target: PureMotive = None) -> CycleSum:
    """Concatenate E-factors and cube factors; bilinear.

    When a target motive is supplied, the decoration is projected onto it:
    the target must be a Clebsch-Gordan component of the factors' labels.
    """
    items = []
    for c1, z1 in s1.terms:
        for c2, z2 in s2.terms:
            z2f = _freshen(z2, set(z1.params))
            prod = ParamCycle(
                z1.curve,
                z1.params + z2f.params,
                z1.ecoords + z2f.ecoords,
                z1.qcoords + z2f.qcoords,
            )
            items.append((c1 * c2, prod))
    motives = tuple(s1.motives) + tuple(s2.motives)
    if target is not None:
        if not tensor_supports(motives, target):
            raise CycleError(
                f"{target!r} is not a component of the product decoration"
            )
        motives = (target,)
    return CycleSum.of(items, motives)


def tensor_supports(motives, target: PureMotive) -> bool:
    """Whether the target appears in the iterated Clebsch-Gordan expansion."""
    from .gl2 import clebsch_gordan

    if not motives:
        return target == PureMotive(0, 0)
    support = {motives[0]}
    for mot in motives[1:]:
        support = {W for V in support for W, _ in clebsch_gordan(V, mot).terms}
    return target in support


def apply_projector_signed(s: CycleSum, element: GroupAlgebraElement, convention="parity") -> CycleSum:
    """Formal signed action on E-coordinates: sum of c_g * sign(g) * g(Z).

    With the parity convention this realizes the right action Z . p = p^t(Z)
    of the untransposed projector.
    """
    items = []
    for coeff, cyc in s.terms:
        if element.degree != cyc.b:
            raise CycleError("projector degree does not match the cycle")
        for sigma, c in element.terms:
            items.append((coeff * c * action_sign(sigma, convention), cyc.permute_ecoords(sigma)))
    return CycleSum.of(items, s.motives)


def cube_swap(s: CycleSum, i: int, j: int) -> CycleSum:
    """Transpose two cube slots (no sign; the class changes by the swap)."""
    items = []
    for coeff, cyc in s.terms:
        sigma = Permutation.transposition(cyc.c, i, j)
        items.append((coeff, cyc.permute_qcoords(sigma)))
    return CycleSum.of(items, s.motives)


# ---------------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class AdmissibilityReport:
    passed: bool
    violations: tuple = ()


def check_admissible(gs, mode: str = "fbar", n: int = None, curve=None) -> AdmissibilityReport:
    """Divisor-level admissibility of a function tuple.

    Checks pairwise disjoint supports, supports avoiding the identity (and in
    Fn mode the nonzero 2-torsion), evenness, and the 2n-distinct-points
    count.
    """
    violations = []
    n = len(gs) if n is None else n
    supports = []
    for g in gs:
        if not is_principal(g.divisor):
            raise DivisorError(f"divisor of {g.name} is not principal")
        supports.append(set(g.divisor.support()))
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            overlap = supports[i] & supports[j]
            if overlap:
                violations.append(
                    f"supports of {gs[i].name} and {gs[j].name} overlap at "
                    + ", ".join(sorted(p.key() for p in overlap))
                )
    special = set()
    if supports:
        zero = CurvePoint.at_infinity(gs[0].divisor.curve)
        special.add(zero)
        if mode == "fn":
            from .curves import full_two_torsion

            special.update(full_two_torsion(gs[0].divisor.curve))
    for g, supp in zip(gs, supports):
        hit = supp & special
        if hit:
            violations.append(
                f"support of {g.name} meets excluded points " + ", ".join(sorted(p.key() for p in hit))
            )
        if g.divisor.negate_points() == g.divisor:
            violations.append(f"{g.name} is even (divisor invariant under x -> -x)")
    distinct = set().union(*supports) if supports else set()
    if len(distinct) < 2 * n:
        violations.append(f"only {len(distinct)} distinct support points; need at least {2 * n}")
    return AdmissibilityReport(not violations, tuple(violations))


def _check_fixed_points(fixed, gs):
    seen = set()
    for a in fixed:
        if a.infinity:
            raise AdmissibilityError(
                AdmissibilityReport(False, ("fixed decoration points must be nonzero",))
            )
        if is_two_torsion(a) or ec_scalar_mul(3, a).infinity:
            raise AdmissibilityError(
                AdmissibilityReport(False, (f"fixed point {a.key()} is 2- or 3-torsion",))
            )
        if a in seen:
            raise AdmissibilityError(
                AdmissibilityReport(False, (f"fixed point {a.key()} repeated",))
            )
        seen.add(a)
        for g in gs:
            if a in g.divisor.support() or ec_neg(a) in g.divisor.support():
                raise AdmissibilityError(
                    AdmissibilityReport(False, (f"fixed point {a.key()} meets the support of {g.name}",))
                )


# ---------------------------------------------------------------------------
# the cycle families


def _fspec(curve, N, mode, u=None, v=None, construction="product"):
    if mode == "fbar":
        return FbarSpec(curve, N)
    if mode == "fn":
        return FnSpec(curve, N, u, v, construction)
    raise CycleError(f"unknown mode {mode!r}")


def build_family(kind, curve, n, gs, fixed=(), mode="fbar", j=None, b1=None, b2=None, uv=None):
    """Construct the X, Y, or Z family as a single ParamCycle.

    X(n, r): E-coordinates (x, -x - sum(y) - sum(a), y_1..y_n), cube
    coordinates (F_{n+1+r}(x, y, a), g_1(y_1), .., g_n(y_n)).
    Y(n, a):  ((-sum(y) - a), y_1..y_n; g_1(y_1)..g_n(y_n)).
    Z(n, j, b1, b2): x, (-x - sum_{i != j} y_i - b1 - b2), y's without y_j;
    the j-th cube coordinate is the constant g_j(b2).
    """
    report = check_admissible(gs, mode)
    if not report.passed:
        raise AdmissibilityError(report)
    u, v = uv if uv else (None, None)

    if kind == "X":
        r = len(fixed)
        if n + r < 1:
            raise CycleError("X needs n + r >= 1")
        _check_fixed_points(fixed, gs)
        N = n + 1 + r
        params = ("x",) + tuple(f"y{i}" for i in range(1, n + 1))
        x = PointExpr.param(curve, "x")
        ys = [PointExpr.param(curve, f"y{i}") for i in range(1, n + 1)]
        asum = CurvePoint.at_infinity(curve)
        for a in fixed:
            asum = ec_add(asum, a)
        balance = PointExpr.make(
            curve,
            [("x", -1)] + [(f"y{i}", -1) for i in range(1, n + 1)],
            ec_neg(asum),
        )
        fargs = tuple([x] + ys + [PointExpr.constant(a) for a in fixed])
        qcoords = [FunCoord(_fspec(curve, N, mode, u, v), fargs)]
        qcoords += [FunCoord(g, (ys[i],)) for i, g in enumerate(gs)]
        return ParamCycle(curve, params, tuple([x, balance] + ys), tuple(qcoords))

    if kind == "Y":
        a = fixed[0] if fixed else CurvePoint.at_infinity(curve)
        if n == 0:
            return ParamCycle(curve, (), (PointExpr.constant(ec_neg(a)),), ())
        params = tuple(f"y{i}" for i in range(1, n + 1))
        ys = [PointExpr.param(curve, f"y{i}") for i in range(1, n + 1)]
        lead = PointExpr.make(curve, [(f"y{i}", -1) for i in range(1, n + 1)], ec_neg(a))
        qcoords = tuple(FunCoord(g, (ys[i],)) for i, g in enumerate(gs))
        return ParamCycle(curve, params, tuple([lead] + ys), qcoords)

    if kind == "Z":
        if j is None or b1 is None or b2 is None:
            raise CycleError("Z needs j, b1, b2")
        if not 1 <= j <= n:
            raise CycleError("Z index j out of range")
        if b2 in gs[j - 1].divisor.support():
            raise AdmissibilityError(
                AdmissibilityReport(False, (f"b2 = {b2.key()} lies in the divisor of {gs[j-1].name}",))
            )
        other = [i for i in range(1, n + 1) if i != j]
        params = ("x",) + tuple(f"y{i}" for i in other)
        x = PointExpr.param(curve, "x")
        ys = {i: PointExpr.param(curve, f"y{i}") for i in other}
        balance = PointExpr.make(
            curve,
            [("x", -1)] + [(f"y{i}", -1) for i in other],
            ec_neg(ec_add(b1, b2)),
        )
        qcoords = []
        for i in range(1, n + 1):
            if i == j:
                qcoords.append(ConstCoord(gs[j - 1], b2))
            else:
                qcoords.append(FunCoord(gs[i - 1], (ys[i],)))
        ecoords = tuple([x, balance] + [ys[i] for i in other])
        return ParamCycle(curve, params, ecoords, tuple(qcoords))

    raise CycleError(f"unknown family kind {kind!r}")


def decorate(kind, cycle_or_point, n=None, motive=None, convention="parity") -> CycleSum:
    """Projector decoration and motive tag for the cycle families.

    eta: signed transposed-tabloid action of rho^t_{n,1} on X, tagged
    Sym^n h^1(E)(-1); mu: Y as is, tagged Sym^{n+1} h^1(E); nu: signed
    rho^t_{n-1,1} action on Z, tagged Sym^{n-1} h^1(E)(-1); eta_point: the
    divisor (p) - (-p) tagged h^1(E).
    """
    if kind == "eta_point":
        p = cycle_or_point
        if p.infinity:
            raise CycleError("eta_point needs a nonzero point")
        curve = p.curve
        plus = ParamCycle(curve, (), (PointExpr.constant(p),), ())
        minus = ParamCycle(curve, (), (PointExpr.constant(ec_neg(p)),), ())
        return CycleSum.of([(1, plus), (-1, minus)], (PureMotive(1, 0),))

    cycle = cycle_or_point
    if kind == "eta":
        if cycle.b != n + 2:
            raise CycleError("eta expects an X-family cycle with b = n + 2")
        shape = YoungShape.standard((n + 1, 1), "tabloid")
        element = transpose_projector(shape)
        out = apply_projector_signed(CycleSum.single(cycle), element, convention)
        return out.relabel((motive or PureMotive(n, 1),))
    if kind == "mu":
        if cycle.b != n + 1:
            raise CycleError("mu expects a Y-family cycle with b = n + 1")
        return CycleSum.single(cycle, motives=(motive or PureMotive(n + 1, 0),))
    if kind == "nu":
        if cycle.b != n + 1:
            raise CycleError("nu expects a Z-family cycle with b = n + 1")
        if n < 1:
            raise CycleError("nu needs n >= 1")
        shape = YoungShape.standard((n, 1), "tabloid") if n >= 1 else None
        element = transpose_projector(shape)
        out = apply_projector_signed(CycleSum.single(cycle), element, convention)
        return out.relabel((motive or PureMotive(n - 1, 1),))
    raise CycleError(f"unknown decoration kind {kind!r}")


# ---------------------------------------------------------------------------
# kill-cycle families (the two homotopy families of the triviality argument)


def build_mu_killer(curve, gs, i: int, shift: CurvePoint, extra_name="z"):
    """((-sum(y) - z - shift), y_1..y_n ; g_1(y_1)..g_n(y_n), g_i(z)).

    Its z-face sweeps sum_p m_p * mu^{p + shift}(gs): the boundary reproduces
    the mu contributions.
    """
    n = len(gs)
    params = tuple(f"y{k}" for k in range(1, n + 1)) + (extra_name,)
    ys = [PointExpr.param(curve, f"y{k}") for k in range(1, n + 1)]
    z = PointExpr.param(curve, extra_name)
    lead = PointExpr.make(
        curve,
        [(f"y{k}", -1) for k in range(1, n + 1)] + [(extra_name, -1)],
        ec_neg(shift),
    )
    qcoords = [FunCoord(g, (ys[k],)) for k, g in enumerate(gs)]
    qcoords.append(FunCoord(gs[i - 1], (z,)))
    return ParamCycle(curve, params, tuple([lead] + ys), tuple(qcoords))


def build_nu_killer(curve, gs, j: int, b1: CurvePoint, b2: CurvePoint):
    """(x, (-x - sum(y) - b1), y's without y_j ; g_1(y_1)..g_n(y_n), g_j(b2)).

    Its y_j-face sweeps the nu-family cycles: the boundary reproduces the nu
    contributions (the s = b2 term is the nu cycle itself).
    """
    n = len(gs)
    if b2 in gs[j - 1].divisor.support():
        raise AdmissibilityError(
            AdmissibilityReport(False, (f"b2 = {b2.key()} lies in the divisor of {gs[j-1].name}",))
        )
    params = ("x",) + tuple(f"y{k}" for k in range(1, n + 1))
    x = PointExpr.param(curve, "x")
    ys = {k: PointExpr.param(curve, f"y{k}") for k in range(1, n + 1)}
    balance = PointExpr.make(
        curve,
        [("x", -1)] + [(f"y{k}", -1) for k in range(1, n + 1)],
        ec_neg(b1),
    )
    ecoords = tuple([x, balance] + [ys[k] for k in range(1, n + 1) if k != j])
    qcoords = [FunCoord(g, (ys[k],)) for k, g in enumerate(gs, start=1)]
    qcoords.append(ConstCoord(gs[j - 1], b2))
    return ParamCycle(curve, params, ecoords, tuple(qcoords))
