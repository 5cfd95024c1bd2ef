"""The pure-motive label algebra for GL2.

Labels are Sym^n h^1(E)(-m): dimension n+1, Adams weight n+2m, effective when
m >= 0.  Tensor products decompose by the GL2 Clebsch-Gordan rule, symmetric
and exterior squares by the classical plethysms; both closed forms are
validated against an independent character oracle (exact Laurent polynomials
in the two diagonal eigenvalues), since the closed forms are standard but the
engine must not trust them unchecked.
"""

from __future__ import annotations

from dataclasses import dataclass


class MotiveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PureMotive:
    """Sym^n h^1(E)(-m); Q(-1) is PureMotive(0, 1), h^1(E) is PureMotive(1, 0)."""

    n: int
    m: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise MotiveError("symmetric power must be >= 0")

    @property
    def dimension(self) -> int:
        return self.n + 1

    @property
    def weight(self) -> int:
        """Adams weight n + 2m."""
        return self.n + 2 * self.m

    @property
    def effective(self) -> bool:
        return self.m >= 0

    def twist(self, k: int) -> "PureMotive":
        """Tensor by Q(-k)."""
        return PureMotive(self.n, self.m + k)

    def render(self) -> str:
        base = f"Sym^{self.n} h1(E)" if self.n else "Q"
        if self.n == 1:
            base = "h1(E)"
        return f"{base}(-{self.m})" if self.m else base

    def __repr__(self) -> str:
        return self.render()


QQ = PureMotive(0, 0)
TATE = PureMotive(0, 1)  # Q(-1) = wedge^2 h^1(E)
H1 = PureMotive(1, 0)


@dataclass(frozen=True)
class MotiveSum:
    """Multiset of pure motives with multiplicities."""

    terms: tuple = ()  # tuple of (PureMotive, int), sorted

    @staticmethod
    def of(items) -> "MotiveSum":
        acc = {}
        for mot, mult in items:
            acc[mot] = acc.get(mot, 0) + mult
        terms = tuple(sorted((m, k) for m, k in acc.items() if k != 0))
        if any(k < 0 for _, k in terms):
            raise MotiveError("negative multiplicity")
        return MotiveSum(terms)

    def multiplicity(self, mot: PureMotive) -> int:
        for m, k in self.terms:
            if m == mot:
                return k
        return 0

    def contains(self, mot: PureMotive) -> bool:
        return self.multiplicity(mot) > 0

    @property
    def dimension(self) -> int:
        return sum(m.dimension * k for m, k in self.terms)

    def __add__(self, other: "MotiveSum") -> "MotiveSum":
        return MotiveSum.of(list(self.terms) + list(other.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join((f"{k}*" if k > 1 else "") + m.render() for m, k in self.terms)


def clebsch_gordan(V: PureMotive, W: PureMotive) -> MotiveSum:
    """Sym^a(-c) (x) Sym^b(-d) = sum_{k=0}^{min(a,b)} Sym^{a+b-2k}(-(c+d+k)).

    Only two-row diagrams survive for GL2 (wedge^3 of a 2-dimensional space
    vanishes), which is what collapses Littlewood-Richardson to this ladder.
    """
    a, b = V.n, W.n
    return MotiveSum.of(
        [(PureMotive(a + b - 2 * k, V.m + W.m + k), 1) for k in range(min(a, b) + 1)]
    )


def plethysm2(kind: str, V: PureMotive) -> MotiveSum:
    """Sym^2 or wedge^2 of Sym^n(-m).

    Sym^2(Sym^n) = (+)_{j >= 0, 2n-4j >= 0} Sym^{2n-4j}(-2j),
    wedge^2(Sym^n) = (+)_{j >= 0, 2n-4j-2 >= 0} Sym^{2n-4j-2}(-(2j+1));
    a twist of V shifts every term by twice that twist.
    """
    n, shift = V.n, 2 * V.m
    items = []
    if kind == "sym":
        j = 0
        while 2 * n - 4 * j >= 0:
            items.append((PureMotive(2 * n - 4 * j, 2 * j + shift), 1))
            j += 1
    elif kind == "wedge":
        j = 0
        while 2 * n - 4 * j - 2 >= 0:
            items.append((PureMotive(2 * n - 4 * j - 2, 2 * j + 1 + shift), 1))
            j += 1
    else:
        raise MotiveError(f"plethysm kind must be sym or wedge, not {kind!r}")
    return MotiveSum.of(items)


# ---------------------------------------------------------------------------
# character oracle: exact Laurent polynomials in the torus eigenvalues
#
# char(Sym^n h^1(-m)) at diag(x, y) is sum_{i=0}^{n} x^{n-i+m} y^{i+m}.
# Characters are dicts (x-exponent, y-exponent) -> int.


def character(mot: PureMotive) -> dict:
    return {(mot.n - i + mot.m, i + mot.m): 1 for i in range(mot.n + 1)}


def char_add(c1: dict, c2: dict) -> dict:
    out = dict(c1)
    for k, v in c2.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def char_mul(c1: dict, c2: dict) -> dict:
    out = {}
    for (a1, b1), v1 in c1.items():
        for (a2, b2), v2 in c2.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, 0) + v1 * v2
            if out[k] == 0:
                del out[k]
    return out


def char_sym2(c: dict) -> dict:
    """Character of Sym^2: (chi(g)^2 + chi(g^2)) / 2, exactly."""
    sq = char_mul(c, c)
    frob = {(2 * a, 2 * b): v for (a, b), v in c.items()}
    return {k: (sq.get(k, 0) + frob.get(k, 0)) // 2 for k in set(sq) | set(frob)}


def char_wedge2(c: dict) -> dict:
    sq = char_mul(c, c)
    frob = {(2 * a, 2 * b): v for (a, b), v in c.items()}
    return {k: v for k in set(sq) | set(frob) if (v := (sq.get(k, 0) - frob.get(k, 0)) // 2) != 0}


def decompose_character(c: dict) -> MotiveSum:
    """Strip highest weights greedily; exact, raises if not a genuine character."""
    c = {k: v for k, v in c.items() if v != 0}
    items = []
    while c:
        (a, b) = max(c, key=lambda k: (k[0] - k[1], -k[1]))
        mult = c[(a, b)]
        if mult < 0 or a - b < 0:
            raise MotiveError("not a polynomial GL2 character")
        mot = PureMotive(a - b, b)
        items.append((mot, mult))
        c = char_add(c, {k: -mult * v for k, v in character(mot).items()})
    return MotiveSum.of(items)


def clebsch_gordan_by_characters(V: PureMotive, W: PureMotive) -> MotiveSum:
    return decompose_character(char_mul(character(V), character(W)))


def plethysm2_by_characters(kind: str, V: PureMotive) -> MotiveSum:
    c = character(V)
    return decompose_character(char_sym2(c) if kind == "sym" else char_wedge2(c))


# ---------------------------------------------------------------------------
# the cochain-complex pair enumeration and untwisting presentations


def _sym_of_pair(V: PureMotive, W: PureMotive) -> MotiveSum:
    """Sym(V (x) W): Sym^2 V if V = W, else the full tensor product."""
    return plethysm2("sym", V) if V == W else clebsch_gordan(V, W)


def _wedge_of_pair(V: PureMotive, W: PureMotive) -> MotiveSum:
    return plethysm2("wedge", V) if V == W else clebsch_gordan(V, W)


def enumerate_cochain_pairs(target: PureMotive, weight_bound: int) -> list:
    """All unordered pairs (V, W) under the weight bound through which the
    target appears, tagged "symside" or "wedgeside" per the two sums of the
    degree-2 cochain term."""
    if target.weight > weight_bound:
        return []
    candidates = []
    for n in range(weight_bound + 1):
        for m in range(0, (weight_bound - n) // 2 + 1):
            if n + 2 * m <= weight_bound:
                candidates.append(PureMotive(n, m))
    out = []
    for i, V in enumerate(candidates):
        for W in candidates[i:]:
            if V.weight + W.weight != target.weight:
                continue
            if _sym_of_pair(V, W).contains(target):
                out.append((V, W, "symside"))
            if _wedge_of_pair(V, W).contains(target):
                out.append((V, W, "wedgeside"))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def untwist_presentations(W: PureMotive, cmax: int) -> list:
    """All ways (V effective of weight n+2c, twist shift c), 0 <= c <= cmax,
    of writing W as a positive twist of an effective motive."""
    if cmax < 0:
        raise MotiveError("cmax must be >= 0")
    out = []
    for c in range(cmax + 1):
        out.append((PureMotive(W.n, W.m + c), c))
    return out
