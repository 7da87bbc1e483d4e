"""The Picard lattice of the plane blown up in r general points.

Classes are written ``d*H + c_1*E_1 + ... + c_r*E_r``.  The intersection form
is ``diag(1, -1, ..., -1)`` and the anticanonical class is ``3H - E_1 - ... - E_r``.
(-1)-curves carry labels ``E_i``, ``m_ij`` (lines), ``Q_I`` (conics, indexed by
the points they miss) and ``C_i`` (cubics singular at ``p_i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

MIN_R, MAX_R = 3, 7

# Table of (-1)-curve and root counts, used as completeness checks.
CURVE_COUNTS = {3: 6, 4: 10, 5: 16, 6: 27, 7: 56}
ROOT_COUNTS = {3: 8, 4: 20, 5: 40, 6: 72, 7: 126}
ROOT_SYSTEMS = {3: "A2+A1", 4: "A4", 5: "D5", 6: "E6", 7: "E7"}


def _check_r(r: int) -> None:
    if not isinstance(r, int) or not MIN_R <= r <= MAX_R:
        raise ValueError(f"r must be an integer in [{MIN_R}, {MAX_R}], got {r!r}")


def n_curves(r: int) -> int:
    """Number of (-1)-curves, including ``0, 1, 3`` for ``r = 0, 1, 2``."""
    small = {0: 0, 1: 1, 2: 3}
    return small[r] if r in small else CURVE_COUNTS[r]


@dataclass(frozen=True)
class DivisorClass:
    r: int
    d: int
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.r:
            raise ValueError(f"expected {self.r} exceptional coefficients, got {len(self.c)}")

    @classmethod
    def from_vector(cls, r: int, coefficients) -> "DivisorClass":
        coefficients = tuple(int(x) for x in coefficients)
        return cls(r, coefficients[0], coefficients[1:])

    @classmethod
    def hyperplane(cls, r: int) -> "DivisorClass":
        return cls(r, 1, (0,) * r)

    @classmethod
    def exceptional(cls, r: int, i: int) -> "DivisorClass":
        if not 1 <= i <= r:
            raise ValueError(f"no exceptional divisor E_{i} for r={r}")
        return cls(r, 0, tuple(1 if j == i else 0 for j in range(1, r + 1)))

    @classmethod
    def anticanonical(cls, r: int) -> "DivisorClass":
        return cls(r, 3, (-1,) * r)

    @classmethod
    def canonical(cls, r: int) -> "DivisorClass":
        return -cls.anticanonical(r)

    @property
    def vector(self) -> tuple[int, ...]:
        return (self.d, *self.c)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        """``m_i`` in ``d*H - sum m_i E_i``: the vanishing orders at the points."""
        return tuple(-x for x in self.c)

    def _same(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.r != self.r:
            raise ValueError(f"classes on different surfaces (r={self.r} vs r={other.r})")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.r, self.d + other.d, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.r, -self.d, tuple(-a for a in self.c))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.r, k * self.d, tuple(k * a for a in self.c))

    __rmul__ = __mul__

    def degree(self) -> int:
        """Anticanonical degree ``(D, -K)``."""
        return 3 * self.d + sum(self.c)

    def __str__(self) -> str:
        parts = [("" if self.d == 1 else "-" if self.d == -1 else str(self.d)) + "H"] if self.d else []
        for i, a in enumerate(self.c, start=1):
            if a:
                coeff = "" if abs(a) == 1 else str(abs(a))
                parts.append(("+ " if a > 0 else "- ") + f"{coeff}E{i}")
        if not parts:
            return "0"
        out = " ".join(parts)
        if out.startswith("+ "):
            return out[2:]
        return "-" + out[2:] if out.startswith("- ") else out


def intersection(a: DivisorClass, b: DivisorClass) -> int:
    a._same(b)
    return a.d * b.d - sum(x * y for x, y in zip(a.c, b.c))


def gram_matrix(r: int) -> list[list[int]]:
    _check_r(r)
    basis = [DivisorClass.hyperplane(r)] + [DivisorClass.exceptional(r, i) for i in range(1, r + 1)]
    return [[intersection(u, v) for v in basis] for u in basis]


_KIND_ORDER = {"E": 0, "m": 1, "Q": 2, "C": 3}


@dataclass(frozen=True, order=False)
class CurveLabel:
    """Name of a (-1)-curve; ``Q`` indices list the points the conic misses."""

    kind: str
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if tuple(sorted(self.indices)) != self.indices:
            raise ValueError("curve indices must be sorted")

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.indices)

    def __lt__(self, other: "CurveLabel") -> bool:
        return self.sort_key() < other.sort_key()

    def divisor_class(self, r: int) -> DivisorClass:
        _check_r(r)
        idx = set(self.indices)
        if any(not 1 <= i <= r for i in idx):
            raise ValueError(f"label {self} does not exist for r={r}")
        if self.kind == "E":
            return DivisorClass.exceptional(r, self.indices[0])
        if self.kind == "m":
            return DivisorClass(r, 1, tuple(-1 if i in idx else 0 for i in range(1, r + 1)))
        if self.kind == "Q":
            if len(self.indices) != r - 5:
                raise ValueError(f"label {self} does not exist for r={r}")
            return DivisorClass(r, 2, tuple(0 if i in idx else -1 for i in range(1, r + 1)))
        return DivisorClass(r, 3, tuple(-2 if i in idx else -1 for i in range(1, r + 1)))

    @classmethod
    def from_class(cls, D: DivisorClass) -> "CurveLabel":
        """Label of a (-1)-curve class; raises ValueError for other classes."""
        if intersection(D, D) != -1 or D.degree() != 1:
            raise ValueError(f"{D} is not a (-1)-curve class")
        pos = lambda value: tuple(i + 1 for i, a in enumerate(D.c) if a == value)  # noqa: E731
        if D.d == 0:
            return cls("E", pos(1))
        if D.d == 1:
            return cls("m", pos(-1))
        if D.d == 2:
            return cls("Q", pos(0))
        if D.d == 3:
            return cls("C", pos(-2))
        raise ValueError(f"{D} is not a (-1)-curve class for r <= 7")

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        """Parse ``E1``, ``m12``, ``Q2``, ``Q12``, ``Q``, ``C3`` (or the coordinate names)."""
        text = text.strip()
        for prefix, kind in (("eta", "E"), ("mu", "m"), ("nu", "Q"), ("lam", None)):
            if text.startswith(prefix):
                digits = tuple(int(ch) for ch in text[len(prefix):])
                if kind is None:
                    # lam_i is Q_i on the cubic surface, C_i in degree 2; ambiguous without r
                    raise ValueError("use CurveLabel.from_symbol for lam coordinates")
                return cls(kind, digits)
        if not text or text[0] not in _KIND_ORDER:
            raise ValueError(f"cannot parse curve label {text!r}")
        return cls(text[0], tuple(int(ch) for ch in text[1:].replace(",", "").replace("_", "")))

    @classmethod
    def from_symbol(cls, symbol: str, r: int) -> "CurveLabel":
        if symbol.startswith("lam"):
            digits = tuple(int(ch) for ch in symbol[3:])
            return cls("Q" if r == 6 else "C", digits)
        return cls.parse(symbol)

    def symbol(self) -> str:
        """Coordinate name: ``eta``, ``mu``, ``nu`` (conics in degree 2) or ``lam``."""
        digits = "".join(str(i) for i in self.indices)
        if self.kind == "E":
            return f"eta{digits}"
        if self.kind == "m":
            return f"mu{digits}"
        if self.kind == "Q" and len(self.indices) == 2:
            return f"nu{digits}"
        return f"lam{digits}"

    def __str__(self) -> str:
        return self.kind + "".join(str(i) for i in self.indices)

    def __repr__(self) -> str:
        return f"CurveLabel({self})"


@lru_cache(maxsize=None)
def enumerate_minus_one_curves(r: int) -> tuple[CurveLabel, ...]:
    """All (-1)-curves by exhaustive search, in coordinate order."""
    _check_r(r)
    found = []
    for c in product(range(-2, 2), repeat=r):
        num = 1 - sum(c)
        if num % 3 or num < 0:
            continue
        D = DivisorClass(r, num // 3, c)
        if intersection(D, D) == -1:
            found.append(CurveLabel.from_class(D))
    found.sort()
    if len(found) != CURVE_COUNTS[r]:
        raise AssertionError(f"found {len(found)} (-1)-curves for r={r}, expected {CURVE_COUNTS[r]}")
    return tuple(found)


@lru_cache(maxsize=None)
def enumerate_roots(r: int) -> tuple[DivisorClass, ...]:
    """All roots: classes with ``(a,a) = -2`` orthogonal to ``K``."""
    _check_r(r)
    found = []
    for c in product(range(-2, 3), repeat=r):
        s = -sum(c)
        if s % 3:
            continue
        D = DivisorClass(r, s // 3, c)
        if intersection(D, D) == -2:
            found.append(D)
    found.sort(key=lambda D: D.vector)
    if len(found) != ROOT_COUNTS[r]:
        raise AssertionError(f"found {len(found)} roots for r={r}, expected {ROOT_COUNTS[r]}")
    return tuple(found)


def is_root(alpha: DivisorClass) -> bool:
    return intersection(alpha, alpha) == -2 and alpha.degree() == 0


def weyl_reflect(alpha: DivisorClass, v: DivisorClass) -> DivisorClass:
    """Reflection in the root ``alpha``: ``v + (v, alpha) alpha``."""
    if not is_root(alpha):
        raise ValueError(f"{alpha} is not a root")
    return v + intersection(v, alpha) * alpha


def curve_class(label: CurveLabel | str, r: int) -> DivisorClass:
    if isinstance(label, str):
        label = CurveLabel.parse(label)
    return label.divisor_class(r)


def curve_intersection(a: CurveLabel, b: CurveLabel, r: int) -> int:
    return intersection(a.divisor_class(r), b.divisor_class(r))


def neighbors(E: CurveLabel, k: int, r: int) -> tuple[CurveLabel, ...]:
    """``N(E)_k``: the (-1)-curves meeting ``E`` with intersection number ``k``."""
    DE = E.divisor_class(r)
    return tuple(F for F in enumerate_minus_one_curves(r) if intersection(DE, F.divisor_class(r)) == k)


Pair = tuple[CurveLabel, CurveLabel]


@dataclass(frozen=True)
class Ruling:
    divisor: DivisorClass
    k: int
    pairs: tuple[Pair, ...]
    symbol: str | None = None

    @property
    def r(self) -> int:
        return self.divisor.r

    def pair_index(self, curve: CurveLabel) -> int:
        for i, pair in enumerate(self.pairs):
            if curve in pair:
                return i
        raise KeyError(f"{curve} does not occur in ruling {self.name}")

    @property
    def name(self) -> str:
        return self.symbol or str(self.divisor)

    def __str__(self) -> str:
        return self.name


def _pair_key(pair: Pair) -> tuple:
    return (pair[0].sort_key(), pair[1].sort_key())


@lru_cache(maxsize=None)
def _rulings_by_class(r: int, k: int) -> dict[DivisorClass, tuple[Pair, ...]]:
    curves = enumerate_minus_one_curves(r)
    classes = {E: E.divisor_class(r) for E in curves}
    groups: dict[DivisorClass, list[Pair]] = {}
    for a, b in combinations(curves, 2):
        if intersection(classes[a], classes[b]) == k:
            groups.setdefault(classes[a] + classes[b], []).append((a, b))
    return {D: tuple(sorted(pairs, key=_pair_key)) for D, pairs in groups.items()}


def ruling_symbol(D: DivisorClass) -> str | None:
    """Symbol ``D(n)_I`` of a (1)-ruling in degree 2, ``-K7`` for the (2)-ruling."""
    if D.r != 7:
        return None
    if D == DivisorClass.anticanonical(7):
        return "-K7"
    n = D.d
    c = D.c
    if n == 1:
        idx = [i + 1 for i, a in enumerate(c) if a == -1]
        return f"D(1)_{idx[0]}" if len(idx) == 1 else None
    if n == 2:
        idx = [i + 1 for i, a in enumerate(c) if a == 0]
        return "D(2)_" + ",".join(map(str, idx)) if len(idx) == 3 else None
    if n == 3:
        i = [t + 1 for t, a in enumerate(c) if a == 0]
        j = [t + 1 for t, a in enumerate(c) if a == -2]
        return f"D(3)_{i[0]},{j[0]}" if len(i) == 1 and len(j) == 1 else None
    if n == 4:
        idx = [i + 1 for i, a in enumerate(c) if a == -1]
        return "D(4)_" + ",".join(map(str, idx)) if len(idx) == 4 else None
    if n == 5:
        idx = [i + 1 for i, a in enumerate(c) if a == -1]
        return f"D(5)_{idx[0]}" if len(idx) == 1 else None
    return None


def ruling_from_symbol(symbol: str) -> DivisorClass:
    """Inverse of :func:`ruling_symbol`."""
    r = 7
    if symbol == "-K7":
        return DivisorClass.anticanonical(r)
    head, _, tail = symbol.partition("_")
    n = int(head[2])
    idx = [int(t) for t in tail.split(",")]
    if n == 1:
        return DivisorClass(r, 1, tuple(-1 if t == idx[0] else 0 for t in range(1, r + 1)))
    if n == 2:
        return DivisorClass(r, 2, tuple(0 if t in idx else -1 for t in range(1, r + 1)))
    if n == 3:
        i, j = idx
        return DivisorClass(r, 3, tuple(-1 + (t == i) - (t == j) for t in range(1, r + 1)))
    if n == 4:
        return DivisorClass(r, 4, tuple(-2 + (t in idx) for t in range(1, r + 1)))
    if n == 5:
        return DivisorClass(r, 5, tuple(-2 + (t == idx[0]) for t in range(1, r + 1)))
    raise ValueError(f"unknown ruling symbol {symbol!r}")


def _symbol_sort_key(symbol: str) -> tuple:
    if symbol == "-K7":
        return (9, ())
    head, _, tail = symbol.partition("_")
    return (int(head[2]), tuple(int(t) for t in tail.split(",")))


@lru_cache(maxsize=None)
def enumerate_rulings(r: int, k: int) -> tuple[Ruling, ...]:
    """All (k)-rulings with complete pair lists.

    On the cubic surface the (1)-rulings are ordered like the curves ``E``
    with ``D = -K - E``; in degree 2 they are ordered by symbol.
    """
    _check_r(r)
    groups = _rulings_by_class(r, k)
    rulings = [Ruling(D, k, pairs, ruling_symbol(D)) for D, pairs in groups.items()]
    if r == 6 and k == 1:
        minus_k = DivisorClass.anticanonical(6)
        order = {E: i for i, E in enumerate(enumerate_minus_one_curves(6))}
        rulings.sort(key=lambda R: order[CurveLabel.from_class(minus_k - R.divisor)])
    elif r == 7:
        rulings.sort(key=lambda R: _symbol_sort_key(R.symbol or ""))
    else:
        rulings.sort(key=lambda R: R.divisor.vector)
    return tuple(rulings)


def ruling_of(D: DivisorClass, k: int | None = None) -> Ruling:
    """The ruling with class ``D`` (``k`` inferred from ``(D, D) = 2k - 2``)."""
    if k is None:
        k = (intersection(D, D) + 2) // 2
    pairs = _rulings_by_class(D.r, k).get(D)
    if not pairs:
        raise ValueError(f"{D} is not a ({k})-ruling")
    return Ruling(D, k, pairs, ruling_symbol(D))


def complement_curve(D: DivisorClass) -> CurveLabel:
    """For ``D`` a (1)-ruling on the cubic surface, the curve ``E`` with ``D = -K - E``."""
    return CurveLabel.from_class(DivisorClass.anticanonical(D.r) - D)


def membership_set(r: int) -> tuple[Ruling, ...]:
    """Rulings whose cone equations suffice for the embedding test.

    ``{E_1 + E : E in N(E_1)_1}``, together with ``D(3)_2,1`` in degree 2.
    """
    if r not in (6, 7):
        raise ValueError("membership sets are defined for r in {6, 7}")
    E1 = CurveLabel("E", (1,))
    D1 = E1.divisor_class(r)
    out = [ruling_of(D1 + E.divisor_class(r), 1) for E in neighbors(E1, 1, r)]
    if r == 7:
        out.append(ruling_of(ruling_from_symbol("D(3)_2,1"), 1))
    return tuple(out)


def iter_curve_classes(r: int) -> Iterator[tuple[CurveLabel, DivisorClass]]:
    for E in enumerate_minus_one_curves(r):
        yield E, E.divisor_class(r)
