"""Exact rational scalars, vectors, and small bivariate polynomials.

Everything here is built on :class:`fractions.Fraction` (arbitrary-precision,
always reduced, positive denominator), because the polyhedral predicates
downstream decide exact equalities such as wall membership.  No floating
point is used anywhere in this package's computation paths.

Polynomials are restricted to at most two parameters, named ``b`` and ``c``.
That is enough for the bundled two-dimensional unipotent groups; systems that
would need more elimination power than the documented strategy provides
return ``UNDECIDED`` rather than guessing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class EmptyInput(ValueError):
    """Raised when an operation requiring a nonempty input receives none."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"num"`` or ``"num/den"`` into a Fraction."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    """Canonical string form ``num`` or ``num/den`` (denominator > 0)."""
    return str(Fraction(q))


@dataclass(frozen=True)
class RationalVector:
    """An exact point of character/cocharacter space."""

    entries: tuple[Fraction, ...]

    def __init__(self, entries: Iterable[Fraction | int | str]):
        object.__setattr__(
            self, "entries", tuple(Fraction(e) for e in entries)
        )
        if not self.entries:
            raise ValueError("RationalVector needs at least one entry")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @staticmethod
    def zero(dim: int) -> "RationalVector":
        return RationalVector([Fraction(0)] * dim)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self.entries)

    def scale(self, q: Fraction | int) -> "RationalVector":
        q = Fraction(q)
        return RationalVector(q * a for a in self.entries)

    def dot(self, other: "RationalVector") -> Fraction:
        """Canonical cocharacter/weight pairing (plain dot product)."""
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def primitive_integral(self) -> "RationalVector":
        """The shortest integral vector on the ray through this one.

        Equivalently q * self for the smallest positive rational q with
        integral image.  Errors on the zero vector.
        """
        if self.is_zero():
            raise ValueError("zero vector has no primitive integral multiple")
        lcm = 1
        for e in self.entries:
            lcm = lcm * e.denominator // gcd(lcm, e.denominator)
        ints = [int(e * lcm) for e in self.entries]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        return RationalVector(Fraction(v, g) for v in ints)

    def sort_key(self) -> tuple[Fraction, ...]:
        return self.entries

    def _check_dim(self, other: "RationalVector") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return "(" + ", ".join(format_rational(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class InnerProduct:
    """A positive definite symmetric integer bilinear form.

    Positive definiteness is checked at construction via leading principal
    minors; the same Gram matrix is used for norms on weight and cocharacter
    space alike (the corpus files use identity forms, under which the
    canonical pairing and the form pairing agree).
    """

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("gram matrix must be symmetric")
        for k in range(1, n + 1):
            minor = [[Fraction(rows[i][j]) for j in range(k)] for i in range(k)]
            if _det(minor) <= 0:
                raise ValueError("gram matrix must be positive definite")
        object.__setattr__(self, "gram", rows)
        object.__setattr__(
            self,
            "_is_identity",
            all(rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)),
        )

    @staticmethod
    def identity(rank: int) -> "InnerProduct":
        return InnerProduct(
            [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
        )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pairing(self, u: RationalVector, v: RationalVector) -> Fraction:
        if u.dim != self.rank or v.dim != self.rank:
            raise ValueError("vector dimension does not match form rank")
        if self._is_identity:
            return sum(
                (a * b for a, b in zip(u.entries, v.entries)), Fraction(0)
            )
        total = Fraction(0)
        for i, ui in enumerate(u.entries):
            if ui == 0:
                continue
            row = self.gram[i]
            total += ui * sum(
                (row[j] * vj for j, vj in enumerate(v.entries)), Fraction(0)
            )
        return total

    def norm_sq(self, v: RationalVector) -> Fraction:
        return self.pairing(v, v)


def _det(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [a - f * bv for a, bv in zip(m[r], m[col])]
    return det


# ---------------------------------------------------------------------------
# Bivariate polynomials in the unipotent parameters b, c
# ---------------------------------------------------------------------------

_VARS = ("b", "c")

_TERM_RE = re.compile(
    r"^(?P<coef>-?\d+(?:/\d+)?)?"
    r"(?P<bpart>\*?-?b(?:\^\d+)?)?"
    r"(?P<cpart>\*?-?c(?:\^\d+)?)?$"
)


@dataclass(frozen=True)
class BiPoly:
    """A polynomial in at most the two parameters b and c.

    Stored sparsely as a map from exponent pairs (e_b, e_c) to nonzero
    rational coefficients; the zero polynomial is the empty map.
    """

    coeffs: tuple[tuple[tuple[int, int], Fraction], ...] = field(default=())

    def __init__(self, coeffs: dict[tuple[int, int], Fraction] | None = None):
        items = []
        if coeffs:
            for (eb, ec), q in coeffs.items():
                q = Fraction(q)
                if eb < 0 or ec < 0:
                    raise ValueError("exponents must be nonnegative")
                if q != 0:
                    items.append(((int(eb), int(ec)), q))
        items.sort(key=lambda kv: kv[0], reverse=True)
        object.__setattr__(self, "coeffs", tuple(items))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly()

    @staticmethod
    def const(q: Fraction | int | str) -> "BiPoly":
        return BiPoly({(0, 0): Fraction(q)})

    @staticmethod
    def var(name: str) -> "BiPoly":
        if name == "b":
            return BiPoly({(1, 0): Fraction(1)})
        if name == "c":
            return BiPoly({(0, 1): Fraction(1)})
        raise ValueError(f"unknown parameter {name!r} (only b, c exist)")

    # -- ring structure ----------------------------------------------------

    def _as_dict(self) -> dict[tuple[int, int], Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        d = self._as_dict()
        for k, q in other.coeffs:
            d[k] = d.get(k, Fraction(0)) + q
        return BiPoly(d)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        d = self._as_dict()
        for k, q in other.coeffs:
            d[k] = d.get(k, Fraction(0)) - q
        return BiPoly(d)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -q for k, q in self.coeffs})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        d: dict[tuple[int, int], Fraction] = {}
        for (eb1, ec1), q1 in self.coeffs:
            for (eb2, ec2), q2 in other.coeffs:
                k = (eb1 + eb2, ec1 + ec2)
                d[k] = d.get(k, Fraction(0)) + q1 * q2
        return BiPoly(d)

    def scale(self, q: Fraction | int) -> "BiPoly":
        q = Fraction(q)
        return BiPoly({k: q * v for k, v in self.coeffs})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k, _ in self.coeffs)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def degree(self, var: str) -> int:
        """Degree in the named parameter; -1 for the zero polynomial."""
        idx = _VARS.index(var)
        if not self.coeffs:
            return -1
        return max(k[idx] for k, _ in self.coeffs)

    def uses(self, var: str) -> bool:
        return self.degree(var) > 0

    def eval_at(self, b: Fraction | int, c: Fraction | int) -> Fraction:
        b, c = Fraction(b), Fraction(c)
        total = Fraction(0)
        for (eb, ec), q in self.coeffs:
            total += q * b**eb * c**ec
        return total

    def substitute(self, var: str, value: Fraction | int) -> "BiPoly":
        """Substitute a rational value for one parameter."""
        value = Fraction(value)
        idx = _VARS.index(var)
        d: dict[tuple[int, int], Fraction] = {}
        for (eb, ec), q in self.coeffs:
            exps = [eb, ec]
            q = q * value ** exps[idx]
            exps[idx] = 0
            k = (exps[0], exps[1])
            d[k] = d.get(k, Fraction(0)) + q
        return BiPoly(d)

    def coefficients_in(self, var: str) -> list["BiPoly"]:
        """Coefficient list w.r.t. one parameter, ascending, as polynomials
        in the other parameter.  Empty list for the zero polynomial."""
        if self.is_zero():
            return []
        idx = _VARS.index(var)
        deg = self.degree(var)
        buckets: list[dict[tuple[int, int], Fraction]] = [
            {} for _ in range(deg + 1)
        ]
        for (eb, ec), q in self.coeffs:
            exps = [eb, ec]
            power = exps[idx]
            exps[idx] = 0
            buckets[power][(exps[0], exps[1])] = q
        return [BiPoly(d) for d in buckets]

    # -- canonical string form ----------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (eb, ec), q in self.coeffs:  # already descending lex in (eb, ec)
            terms.append(f"{format_rational(q)}*b^{eb}*c^{ec}")
        return "+".join(terms)

    @staticmethod
    def parse(text: str) -> "BiPoly":
        """Parse the canonical form, plus shorthands like "b", "-c", "2*b*c"."""
        text = text.strip()
        if text == "0":
            return BiPoly.zero()
        d: dict[tuple[int, int], Fraction] = {}
        for raw in text.split("+"):
            term = raw.strip().replace(" ", "")
            if not term:
                raise ValueError(f"empty term in polynomial {text!r}")
            coef, eb, ec = _parse_term(term, text)
            k = (eb, ec)
            d[k] = d.get(k, Fraction(0)) + coef
        return BiPoly(d)


def _parse_term(term: str, context: str) -> tuple[Fraction, int, int]:
    m = _TERM_RE.match(term)
    if not m or (m.group("coef") is None and not m.group("bpart") and not m.group("cpart")):
        raise ValueError(f"cannot parse term {term!r} in polynomial {context!r}")
    coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
    eb = ec = 0
    for name, part in (("b", m.group("bpart")), ("c", m.group("cpart"))):
        if not part:
            continue
        part = part.lstrip("*")
        if part.startswith("-"):
            coef = -coef
            part = part[1:]
        if "^" in part:
            exp = int(part.split("^")[1])
        else:
            exp = 1
        if name == "b":
            eb = exp
        else:
            ec = exp
    return coef, eb, ec


def poly_is_zero(p: BiPoly) -> bool:
    """True iff p is identically zero (coefficients are kept normalised)."""
    return p.is_zero()


# ---------------------------------------------------------------------------
# Univariate helpers (coefficient lists over Fraction)
# ---------------------------------------------------------------------------


def _univariate_coeffs(p: BiPoly, var: str) -> list[Fraction]:
    other = "c" if var == "b" else "b"
    if p.uses(other):
        raise ValueError(f"polynomial {p} is not univariate in {var}")
    out = [Fraction(0)] * (max(p.degree(var), 0) + 1)
    idx = _VARS.index(var)
    for k, q in p.coeffs:
        out[k[idx]] = q
    return out


def _poly_trim(cs: list[Fraction]) -> list[Fraction]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_divmod(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    num = num[:]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and num:
        f = num[-1] / den[-1]
        shift = len(num) - len(den)
        q[shift] = f
        for i, d in enumerate(den):
            num[shift + i] -= f * d
        _poly_trim(num)
    return q, num


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of univariate polynomials (coefficient lists, ascending)."""
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def gcd_univariate(polys: Sequence[BiPoly], var: str) -> BiPoly:
    """Monic gcd of polynomials univariate in `var`; zero inputs are ignored.

    Returns the zero polynomial when every input is zero.
    """
    acc: list[Fraction] = []
    for p in polys:
        if p.is_zero():
            continue
        cs = _univariate_coeffs(p, var)
        acc = _poly_gcd(acc, cs) if acc else _poly_trim(cs)
        if len(acc) == 1:  # constant gcd: cannot shrink further
            break
    if not acc:
        return BiPoly.zero()
    key = (lambda i: (i, 0)) if var == "b" else (lambda i: (0, i))
    return BiPoly({key(i): q for i, q in enumerate(acc)})


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


_ROOT_SEARCH_LIMIT = 10**7  # coefficient size beyond which we give up factoring


def rational_roots(p: BiPoly, var: str) -> tuple[list[Fraction], bool]:
    """All rational roots of a univariate polynomial, with multiplicity
    stripped, plus a flag telling whether the polynomial splits over Q
    (so the returned roots account for every root in the algebraic closure).
    """
    cs = _univariate_coeffs(p, var)
    cs = _poly_trim(cs)
    if not cs:
        raise ValueError("zero polynomial has every value as a root")
    if len(cs) == 1:
        return [], True
    # clear denominators to integer coefficients
    lcm = 1
    for q in cs:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in cs]
    roots: list[Fraction] = []
    # factor out powers of the variable
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        ints = ints[k:]
    if len(ints) == 1:
        return roots, True
    if abs(ints[0]) > _ROOT_SEARCH_LIMIT or abs(ints[-1]) > _ROOT_SEARCH_LIMIT:
        return roots, False
    candidates = [
        sign * Fraction(nu, de)
        for nu in _divisors(ints[0])
        for de in _divisors(ints[-1])
        for sign in (1, -1)
    ]
    work = [Fraction(v) for v in ints]
    for cand in sorted(set(candidates)):
        while len(work) > 1 and _horner(work, cand) == 0:
            if cand not in roots:
                roots.append(cand)
            work = _deflate(work, cand)
    return sorted(set(roots)), len(work) == 1


def _horner(cs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _deflate(cs: list[Fraction], root: Fraction) -> list[Fraction]:
    # synthetic division by (x - root); the remainder is known to be zero
    out = [Fraction(0)] * (len(cs) - 1)
    out[-1] = cs[-1]
    for i in range(len(cs) - 3, -1, -1):
        out[i] = cs[i + 1] + out[i + 1] * root
    return out


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------


def resultant(p: BiPoly, q: BiPoly, eliminate: str) -> BiPoly:
    """Sylvester resultant eliminating one parameter.

    Convention: determinant of the Sylvester matrix with the p-coefficient
    rows first, then the q rows, coefficients in descending order.  If one
    argument is free of the eliminated parameter it is returned unchanged.
    """
    if not p.uses(eliminate):
        return p
    if not q.uses(eliminate):
        return q
    pc = list(reversed(p.coefficients_in(eliminate)))
    qc = list(reversed(q.coefficients_in(eliminate)))
    m, n = len(pc) - 1, len(qc) - 1  # degrees
    size = m + n
    rows: list[list[BiPoly]] = []
    for i in range(n):
        row = [BiPoly.zero()] * size
        for j, coef in enumerate(pc):
            row[i + j] = coef
        rows.append(row)
    for i in range(m):
        row = [BiPoly.zero()] * size
        for j, coef in enumerate(qc):
            row[i + j] = coef
        rows.append(row)
    return _det_poly(rows)


def _det_poly(rows: list[list[BiPoly]]) -> BiPoly:
    n = len(rows)
    if n == 0:
        return BiPoly.const(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    # expand along the row with the most zeros
    best = max(range(n), key=lambda i: sum(1 for e in rows[i] if e.is_zero()))
    total = BiPoly.zero()
    for j, entry in enumerate(rows[best]):
        if entry.is_zero():
            continue
        minor = [
            [row[k] for k in range(n) if k != j]
            for i, row in enumerate(rows)
            if i != best
        ]
        term = entry * _det_poly(minor)
        if (best + j) % 2:
            term = -term
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Common-zero detection
# ---------------------------------------------------------------------------


class CZStatus(str, Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class CommonZeroResult:
    status: CZStatus
    witness: Optional[tuple[Fraction, Fraction]] = None


@dataclass(frozen=True)
class ZeroSetInfo:
    """Structured description of the common zero set of a system in (b, c).

    kind:
      * "empty"      -- provably no common zero over the algebraic closure
      * "finite"     -- provably zero-dimensional; `points` lists the rational
                        ones, exhaustively iff `complete`
      * "lines"      -- contains full coordinate lines {var = value} x A^1
      * "curve"      -- contains the zero locus of `curve` (a single
                        nonconstant polynomial system)
      * "everything" -- every parameter pair is a zero (all polynomials zero)
      * "unknown"    -- the elimination strategy degenerated
    """

    kind: str
    points: tuple[tuple[Fraction, Fraction], ...] = ()
    complete: bool = False
    lines: tuple[tuple[str, Fraction], ...] = ()
    lines_complete: bool = False
    curve: Optional[BiPoly] = None
    has_nonrational: bool = False


def analyze_common_zeros(polys: Iterable[BiPoly]) -> ZeroSetInfo:
    """Describe the common zero set of a polynomial system in (b, c).

    Strategy, in order: constant check; single-variable gcd; pairwise
    resultants eliminating c; gcd of the resulting univariates in b;
    back-substitution at its rational roots.  Completeness of the rational
    data is tracked so that callers can distinguish "no common zero" from
    "none found".
    """
    original = list(polys)
    if not original:
        raise EmptyInput("common-zero analysis requires at least one polynomial")
    system = [p for p in original if not p.is_zero()]
    if not system:
        return ZeroSetInfo(kind="everything", points=((Fraction(0), Fraction(0)),))
    if any(p.is_constant() for p in system):
        return ZeroSetInfo(kind="empty")  # a nonzero constant kills the system

    uses_b = any(p.uses("b") for p in system)
    uses_c = any(p.uses("c") for p in system)

    if uses_b and not uses_c:
        return _lines_info(system, "b")
    if uses_c and not uses_b:
        return _lines_info(system, "c")

    if len(system) == 1:
        pts = _curve_points(system[0], limit=6)
        return ZeroSetInfo(
            kind="curve", points=tuple(pts), curve=system[0], has_nonrational=True
        )

    c_polys = [p for p in system if p.uses("c")]
    b_only = [p for p in system if not p.uses("c")]
    elim: list[BiPoly] = list(b_only)
    for i in range(len(c_polys)):
        for j in range(i + 1, len(c_polys)):
            elim.append(resultant(c_polys[i], c_polys[j], "c"))
    nonzero_elim = [p for p in elim if not p.is_zero()]
    if not nonzero_elim:
        # every pairwise resultant vanished: shared factors; fall back to search
        pts = _grid_witnesses(system, bound=4)
        if pts:
            return ZeroSetInfo(kind="unknown", points=tuple(pts), has_nonrational=True)
        return ZeroSetInfo(kind="unknown")
    g = gcd_univariate(nonzero_elim, "b")
    if g.is_constant():
        return ZeroSetInfo(kind="empty")
    roots, b_split = rational_roots(g, "b")

    points: list[tuple[Fraction, Fraction]] = []
    lines: list[tuple[str, Fraction]] = []
    fibres_split = True
    exists_nonrational = False
    for r in roots:
        subbed = [p.substitute("b", r) for p in system]
        live = [p for p in subbed if not p.is_zero()]
        if any(p.is_constant() for p in live):
            continue  # this fibre is blocked by a nonzero constant
        if not live:
            lines.append(("b", r))
            points.append((r, Fraction(0)))
            continue
        gc = gcd_univariate(live, "c")
        if gc.is_constant():
            continue  # coprime on this fibre: no common c
        exists_nonrational = True
        croots, c_split = rational_roots(gc, "c")
        points.extend((r, cr) for cr in croots)
        if not c_split:
            fibres_split = False

    if lines:
        # the listed lines and points describe the whole zero set exactly
        # when the eliminant splits and every contributing fibre splits
        return ZeroSetInfo(
            kind="lines",
            points=tuple(points),
            lines=tuple(lines),
            lines_complete=b_split and fibres_split,
            has_nonrational=exists_nonrational,
        )
    if points or exists_nonrational:
        return ZeroSetInfo(
            kind="finite",
            points=tuple(points),
            complete=b_split and fibres_split,
            has_nonrational=exists_nonrational,
        )
    if b_split:
        # every possible b-projection was enumerated and failed
        return ZeroSetInfo(kind="empty")
    return ZeroSetInfo(kind="unknown")


def _lines_info(system: list[BiPoly], var: str) -> ZeroSetInfo:
    g = gcd_univariate(system, var)
    if g.is_constant():
        return ZeroSetInfo(kind="empty")
    roots, split = rational_roots(g, var)
    lines = tuple((var, r) for r in roots)
    pts = tuple(
        (r, Fraction(0)) if var == "b" else (Fraction(0), r) for r in roots
    )
    # when the gcd splits over Q the listed lines exhaust the zero set
    return ZeroSetInfo(
        kind="lines",
        points=pts,
        lines=lines,
        lines_complete=split,
    )


def _curve_points(p: BiPoly, limit: int) -> list[tuple[Fraction, Fraction]]:
    pts = []
    for b0 in range(-limit, limit + 1):
        fibre = p.substitute("b", Fraction(b0))
        if fibre.is_zero():
            pts.append((Fraction(b0), Fraction(0)))
            continue
        if fibre.is_constant():
            continue
        roots, _ = rational_roots(fibre, "c")
        pts.extend((Fraction(b0), r) for r in roots)
    return pts


def _grid_witnesses(
    system: list[BiPoly], bound: int
) -> list[tuple[Fraction, Fraction]]:
    pts = []
    for b0 in range(-bound, bound + 1):
        for c0 in range(-bound, bound + 1):
            if all(p.eval_at(b0, c0) == 0 for p in system):
                pts.append((Fraction(b0), Fraction(c0)))
    return pts


def common_zero_exists(polys: Iterable[BiPoly]) -> CommonZeroResult:
    """Decide whether a system has a common zero over the algebraic closure.

    Yes carries a rational witness when the elimination finds one; Undecided
    is reserved for genuine degenerations of the documented strategy.
    """
    info = analyze_common_zeros(polys)
    if info.kind == "empty":
        return CommonZeroResult(CZStatus.NO)
    if info.kind == "everything":
        return CommonZeroResult(CZStatus.YES, (Fraction(0), Fraction(0)))
    if info.points:
        return CommonZeroResult(CZStatus.YES, min(info.points))
    if info.kind in ("lines", "curve") or info.has_nonrational:
        return CommonZeroResult(CZStatus.YES, None)
    return CommonZeroResult(CZStatus.UNDECIDED)


def nonvanishing_point(
    polys: Sequence[BiPoly],
) -> tuple[Fraction, Fraction]:
    """A rational point at which no polynomial of the list vanishes.

    Exists whenever no input is identically zero: a polynomial of degree
    (d_b, d_c) cannot vanish on a (d_b+1) x (d_c+1) grid, so trying the grid
    for the product of the inputs always terminates.
    """
    live = [p for p in polys if not p.is_zero()]
    if len(live) != len(list(polys)):
        raise ValueError("an identically zero polynomial vanishes everywhere")
    prod = BiPoly.const(1)
    for p in live:
        prod = prod * p
    db, dc = max(prod.degree("b"), 0), max(prod.degree("c"), 0)
    for b0 in range(db + 1):
        for c0 in range(dc + 1):
            if prod.eval_at(b0, c0) != 0:
                return (Fraction(b0), Fraction(c0))
    raise AssertionError("unreachable: a nonzero polynomial misses some grid point")


def common_zero_avoiding(
    vanish: Sequence[BiPoly], avoid: Sequence[BiPoly]
) -> CommonZeroResult:
    """Decide whether some common zero of `vanish` avoids every zero of `avoid`.

    Used to test achievability of orbit supports: the coordinates outside a
    candidate support must vanish simultaneously while those inside stay
    nonzero.  `avoid` entries must be nonzero polynomials.
    """
    for p in avoid:
        if p.is_zero():
            raise ValueError("avoid-polynomials must be nonzero")
    if not list(vanish):
        return CommonZeroResult(CZStatus.YES, nonvanishing_point(avoid))
    info = analyze_common_zeros(vanish)
    if info.kind == "empty":
        return CommonZeroResult(CZStatus.NO)
    if info.kind == "everything":
        return CommonZeroResult(CZStatus.YES, nonvanishing_point(avoid))

    def point_ok(pt: tuple[Fraction, Fraction]) -> bool:
        return all(p.eval_at(*pt) != 0 for p in avoid)

    good = [pt for pt in info.points if point_ok(pt)]
    if good:
        return CommonZeroResult(CZStatus.YES, min(good))

    if info.kind == "lines":
        for var, value in info.lines:
            restricted = [p.substitute(var, value) for p in avoid]
            if any(p.is_zero() for p in restricted):
                continue  # this line is contained in a forbidden locus
            other = "c" if var == "b" else "b"
            prod = BiPoly.const(1)
            for p in restricted:
                prod = prod * p
            for t in range(max(prod.degree(other), 0) + 1):
                if prod.substitute(other, t).constant_value() != 0:
                    pt = (value, Fraction(t)) if var == "b" else (Fraction(t), value)
                    return CommonZeroResult(CZStatus.YES, pt)
        if info.lines_complete:
            # the listed lines and points exhaust the zero set: every line is
            # inside a forbidden locus and every point failed above
            return CommonZeroResult(CZStatus.NO)
        return CommonZeroResult(CZStatus.UNDECIDED)

    if info.kind == "finite":
        if info.complete:
            return CommonZeroResult(CZStatus.NO)
        return CommonZeroResult(CZStatus.UNDECIDED)

    if info.kind == "curve":
        more = _curve_points(info.curve, limit=10)
        good = [pt for pt in more if point_ok(pt)]
        if good:
            return CommonZeroResult(CZStatus.YES, min(good))
        return CommonZeroResult(CZStatus.UNDECIDED)

    return CommonZeroResult(CZStatus.UNDECIDED)
