"""Exact group-algebra arithmetic over the symmetric group.

Permutations use one-line notation on {1..b}; composition is right-to-left,
so (sigma * tau)(x) = sigma(tau(x)): tau acts first.  Group-algebra elements
are exact-rational formal sums of permutations.  Young symmetrizers are
stored unnormalized (the raw sums of group elements); a separate
`normalize` divides by the quasi-idempotency eigenvalue when a true
idempotent is needed.

The right action of a permutation on cycle-valued vectors carries a sign.
The displayed formula admits two readings of that sign, (-1)^{|sigma|} (the
sign character) and (-1)^{|sigma|+1}; both are implemented behind the
`convention` switch and the mismatch is surfaced in reports rather than
silently resolved.  Only the sign-character reading is multiplicative, so it
is the default.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial


class GroupAlgebraError(ValueError):
    """Structural errors: degree mismatch, malformed shapes, bad mode."""


@dataclass(frozen=True)
class Permutation:
    """One-line notation: images[i-1] is the image of i."""

    images: tuple

    @staticmethod
    def identity(b: int) -> "Permutation":
        return Permutation(tuple(range(1, b + 1)))

    @staticmethod
    def transposition(b: int, i: int, j: int) -> "Permutation":
        images = list(range(1, b + 1))
        images[i - 1], images[j - 1] = j, i
        return Permutation(tuple(images))

    @staticmethod
    def from_cycle(b: int, cycle) -> "Permutation":
        images = list(range(1, b + 1))
        for k, x in enumerate(cycle):
            images[x - 1] = cycle[(k + 1) % len(cycle)]
        return Permutation(tuple(images))

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise GroupAlgebraError(f"{self.images} is not a permutation")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # right-to-left: apply other first
        if self.degree != other.degree:
            raise GroupAlgebraError("degree mismatch in composition")
        return Permutation(tuple(self(other(x)) for x in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        images = [0] * self.degree
        for x in range(1, self.degree + 1):
            images[self(x) - 1] = x
        return Permutation(tuple(images))

    def transposition_count(self) -> int:
        """|sigma|: size of a minimal decomposition into transpositions."""
        seen = set()
        count = 0
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            length = 0
            x = start
            while x not in seen:
                seen.add(x)
                x = self(x)
                length += 1
            count += length - 1
        return count

    def sign(self) -> int:
        return -1 if self.transposition_count() % 2 else 1

    def __repr__(self) -> str:
        return "".join(str(i) for i in self.images) if self.degree <= 9 else str(self.images)


def action_sign(sigma: Permutation, convention: str = "parity") -> int:
    """The sign a permutation carries when acting on cycles.

    "parity" reads the displayed exponent as |sigma|, i.e. the sign character;
    "parity-plus-one" takes the literal (-1)^{|sigma|+1}.
    """
    if convention == "parity":
        return sigma.sign()
    if convention == "parity-plus-one":
        return -sigma.sign()
    raise GroupAlgebraError(f"unknown sign convention {convention!r}")


@dataclass(frozen=True)
class GroupAlgebraElement:
    degree: int
    terms: tuple = ()  # tuple of (Permutation, Fraction), sorted

    @staticmethod
    def of(degree: int, items) -> "GroupAlgebraElement":
        acc = {}
        for perm, coeff in items:
            if perm.degree != degree:
                raise GroupAlgebraError("permutation degree mismatch")
            acc[perm] = acc.get(perm, Fraction(0)) + Fraction(coeff)
        terms = tuple(sorted(((p, c) for p, c in acc.items() if c != 0), key=lambda t: t[0].images))
        return GroupAlgebraElement(degree, terms)

    @staticmethod
    def unit(degree: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement.of(degree, [(Permutation.identity(degree), 1)])

    def coeff(self, perm: Permutation) -> Fraction:
        for p, c in self.terms:
            if p == perm:
                return c
        return Fraction(0)

    def __add__(self, other):
        self._check(other)
        return GroupAlgebraElement.of(self.degree, list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k) -> "GroupAlgebraElement":
        return GroupAlgebraElement.of(self.degree, [(p, c * Fraction(k)) for p, c in self.terms])

    def __mul__(self, other):
        self._check(other)
        items = []
        for p1, c1 in self.terms:
            for p2, c2 in other.terms:
                items.append((p1 * p2, c1 * c2))
        return GroupAlgebraElement.of(self.degree, items)

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement) or self.degree != other.degree:
            raise GroupAlgebraError("degree mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{p!r}]" for p, c in self.terms)


def ga_multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return a * b


def right_act(vector: GroupAlgebraElement, sigma: Permutation, convention: str = "parity"):
    """Right action on formal vectors: v . sigma = sign * (sigma^{-1} v).

    With the "parity" convention this is a genuine right action, so acting
    twice via an element p equals acting once via p*p.
    """
    s = action_sign(sigma, convention)
    left = GroupAlgebraElement.of(vector.degree, [(sigma.inverse(), s)])
    return left * vector


def right_act_element(vector, element: GroupAlgebraElement, convention: str = "parity"):
    out = GroupAlgebraElement.of(vector.degree, [])
    for sigma, c in element.terms:
        out = out + right_act(vector, sigma, convention).scale(c)
    return out


def signed_antipode(element: GroupAlgebraElement, convention: str = "parity") -> GroupAlgebraElement:
    """sum c_g sign(g) g^{-1}; for a Young symmetrizer this is its transpose."""
    return GroupAlgebraElement.of(
        element.degree,
        [(p.inverse(), c * action_sign(p, convention)) for p, c in element.terms],
    )


# ---------------------------------------------------------------------------
# Young shapes, symmetrizers, tabloid projectors


@dataclass(frozen=True)
class YoungShape:
    """A filled Young diagram, flagged as tableau or tabloid.

    rows are weakly decreasing lengths; filling is a bijection of {1..b} onto
    the cells, given row by row.
    """

    rows: tuple
    filling: tuple  # tuple of tuples, matching rows
    mode: str = "tableau"  # "tableau" | "tabloid"

    @staticmethod
    def standard(rows, mode: str = "tableau") -> "YoungShape":
        """Row-major filling 1, 2, ..., b."""
        filling = []
        k = 1
        for r in rows:
            filling.append(tuple(range(k, k + r)))
            k += r
        return YoungShape(tuple(rows), tuple(filling), mode)

    def __post_init__(self):
        if self.mode not in ("tableau", "tabloid"):
            raise GroupAlgebraError(f"bad mode {self.mode!r}")
        if any(self.rows[i] < self.rows[i + 1] for i in range(len(self.rows) - 1)):
            raise GroupAlgebraError("row lengths must be weakly decreasing")
        if tuple(len(r) for r in self.filling) != self.rows:
            raise GroupAlgebraError("filling does not match the shape")
        cells = [x for row in self.filling for x in row]
        if sorted(cells) != list(range(1, len(cells) + 1)):
            raise GroupAlgebraError("filling is not a bijection onto the cells")

    @property
    def size(self) -> int:
        return sum(self.rows)

    def columns(self):
        cols = []
        for c in range(self.rows[0] if self.rows else 0):
            cols.append(tuple(row[c] for row in self.filling if len(row) > c))
        return cols

    def transpose(self) -> "YoungShape":
        """Flip about the diagonal, keeping the inscribed entries."""
        cols = tuple(self.columns())
        return YoungShape(tuple(len(c) for c in cols), cols, self.mode)

    def __repr__(self) -> str:
        body = "/".join(",".join(str(x) for x in row) for row in self.filling)
        return f"{self.mode}[{body}]"


def _subgroup_sum(b: int, blocks, signed: bool) -> GroupAlgebraElement:
    """Sum over the Young subgroup preserving each block, optionally signed."""
    items = []
    for parts in itertools.product(*[itertools.permutations(block) for block in blocks]):
        images = list(range(1, b + 1))
        for block, perm in zip(blocks, parts):
            for src, dst in zip(block, perm):
                images[src - 1] = dst
        sigma = Permutation(tuple(images))
        items.append((sigma, sigma.sign() if signed else 1))
    return GroupAlgebraElement.of(b, items)


def row_sum(shape: YoungShape) -> GroupAlgebraElement:
    """c_T = sum over permutations preserving each row."""
    return _subgroup_sum(shape.size, shape.filling, signed=False)


def signed_column_sum(shape: YoungShape) -> GroupAlgebraElement:
    """d_T = sum of sgn(h) h over permutations preserving each column."""
    return _subgroup_sum(shape.size, shape.columns(), signed=True)


def young_symmetrizer(shape: YoungShape) -> GroupAlgebraElement:
    """c_T * d_T for a tableau."""
    if shape.mode != "tableau":
        raise GroupAlgebraError("young_symmetrizer needs tableau mode")
    return row_sum(shape) * signed_column_sum(shape)


def tabloid_row_projector(shape: YoungShape) -> GroupAlgebraElement:
    """c_T alone, for a tabloid."""
    if shape.mode != "tabloid":
        raise GroupAlgebraError("tabloid_row_projector needs tabloid mode")
    return row_sum(shape)


def transpose_projector(shape: YoungShape) -> GroupAlgebraElement:
    """The projector of the diagonal-flipped filling.

    Tableau -> symmetrizer of the flipped tableau; tabloid -> row projector
    of the flipped shape (the row tabloid of the transposed shape).
    """
    flipped = shape.transpose()
    if shape.mode == "tableau":
        return young_symmetrizer(flipped)
    return tabloid_row_projector(flipped)


def hook_length_dimension(rows) -> int:
    """dim of the irreducible S^lambda via the hook length formula."""
    rows = tuple(rows)
    b = sum(rows)
    cols = [sum(1 for r in rows if r > c) for c in range(rows[0] if rows else 0)]
    prod = 1
    for i, r in enumerate(rows):
        for j in range(r):
            prod *= (r - j) + (cols[j] - i) - 1
    return factorial(b) // prod


def standard_tableaux(rows):
    """All standard Young tableaux of the given shape (entries increase
    along rows and down columns)."""
    rows = tuple(rows)
    b = sum(rows)
    results = []

    def place(k, grid):
        if k > b:
            results.append(YoungShape(rows, tuple(tuple(r) for r in grid), "tableau"))
            return
        for i, r in enumerate(rows):
            j = len(grid[i])
            if j < r and (i == 0 or len(grid[i - 1]) > j):
                grid[i].append(k)
                place(k + 1, grid)
                grid[i].pop()

    place(1, [[] for _ in rows])
    return results


def partitions(b: int):
    """All partitions of b, largest part first."""
    if b == 0:
        yield ()
        return
    for first in range(b, 0, -1):
        for rest in partitions(b - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


# ---------------------------------------------------------------------------
# the signed group G_c = (Z/2Z)^c x| Sigma_c


@dataclass(frozen=True)
class SignedGroupElement:
    """(signs, permutation) with the semidirect product law."""

    signs: tuple  # entries in {1, -1}
    perm: Permutation

    def __post_init__(self):
        if len(self.signs) != self.perm.degree:
            raise GroupAlgebraError("sign vector length mismatch")

    def __mul__(self, other: "SignedGroupElement") -> "SignedGroupElement":
        # (s, sigma)(t, tau) = (s * sigma(t), sigma tau), sigma(t)_i = t_{sigma^{-1}(i)}
        inv = self.perm.inverse()
        moved = tuple(other.signs[inv(i) - 1] for i in range(1, self.perm.degree + 1))
        signs = tuple(a * b for a, b in zip(self.signs, moved))
        return SignedGroupElement(signs, self.perm * other.perm)

    def character_sign(self) -> int:
        """Parity of the permutation times the product of the sign entries."""
        prod = 1
        for s in self.signs:
            prod *= s
        return self.perm.sign() * prod

    def __repr__(self) -> str:
        return f"({''.join('+' if s == 1 else '-' for s in self.signs)};{self.perm!r})"


@dataclass(frozen=True)
class SignedGroupAlgebraElement:
    degree: int
    terms: tuple = ()

    @staticmethod
    def of(degree: int, items) -> "SignedGroupAlgebraElement":
        acc = {}
        for g, coeff in items:
            acc[g] = acc.get(g, Fraction(0)) + Fraction(coeff)
        terms = tuple(
            sorted(((g, c) for g, c in acc.items() if c != 0), key=lambda t: (t[0].signs, t[0].perm.images))
        )
        return SignedGroupAlgebraElement(degree, terms)

    def __mul__(self, other):
        if self.degree != other.degree:
            raise GroupAlgebraError("degree mismatch")
        items = []
        for g1, c1 in self.terms:
            for g2, c2 in other.terms:
                items.append((g1 * g2, c1 * c2))
        return SignedGroupAlgebraElement.of(self.degree, items)

    def scale(self, k):
        return SignedGroupAlgebraElement.of(self.degree, [(g, c * Fraction(k)) for g, c in self.terms])

    def __eq__(self, other):
        return isinstance(other, SignedGroupAlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, self.terms))

    def term_count(self) -> int:
        return len(self.terms)


def alt_signed_group(c: int) -> SignedGroupAlgebraElement:
    """Alt over G_c: sum of character_sign(g) * g, 2^c c! terms."""
    items = []
    for perm_images in itertools.permutations(range(1, c + 1)):
        perm = Permutation(tuple(perm_images))
        for signs in itertools.product((1, -1), repeat=c):
            g = SignedGroupElement(tuple(signs), perm)
            items.append((g, g.character_sign()))
    return SignedGroupAlgebraElement.of(c, items)


def sign_convention_table(b: int = 4):
    """Both readings of the action sign on sample permutations, for reports."""
    samples = [
        ("identity", Permutation.identity(b)),
        ("transposition (1 2)", Permutation.transposition(b, 1, 2)),
        ("3-cycle (1 2 3)", Permutation.from_cycle(b, (1, 2, 3))),
        ("4-cycle (1 2 3 4)", Permutation.from_cycle(b, (1, 2, 3, 4))),
    ]
    rows = []
    for name, sigma in samples:
        rows.append(
            {
                "permutation": name,
                "transposition_count": sigma.transposition_count(),
                "parity": action_sign(sigma, "parity"),
                "parity-plus-one": action_sign(sigma, "parity-plus-one"),
            }
        )
    return rows
