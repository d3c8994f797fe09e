"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Every scalar in the engine (F/R symbols, twists, pivots, quantum dimensions,
s-matrix entries, diagram values) is a :class:`Cyc`: a vector of rationals
representing a polynomial in a primitive N-th root of unity ``z``, reduced
modulo the N-th cyclotomic polynomial.  Reduction mod the cyclotomic
polynomial (rather than ``x^N - 1``) gives a unique canonical form, so scalar
equality is plain coefficient comparison and no tolerances appear anywhere.

:class:`RootExt` adjoins a formal square root ``D`` with ``D^2`` a given
element of the base field; it only shows up in the heterochiral prefactor
``sqrt(Dim C_L * Dim C_R)`` when that value leaves the base field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class ScalarError(ArithmeticError):
    """Raised on invalid scalar operations (division by zero, bad embeddings)."""


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    while a and not a[-1]:
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial (ascending, monic)."""
    if n < 1:
        raise ScalarError(f"conductor must be positive, got {n}")
    poly = [-Fraction(1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    # row k: x^(deg+k) mod Phi_n, for exponents up to max(2*deg-2, n-1)
    phi = list(cyclotomic_poly(n))
    deg = len(phi) - 1
    count = max(deg - 1, n - deg, 1)
    rows = []
    # x^deg = -(phi[0] + ... + phi[deg-1] x^{deg-1})
    cur = [-c for c in phi[:-1]]
    for _ in range(count):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    deg = len(cyclotomic_poly(n)) - 1
    out = list(coeffs[:deg]) + [Fraction(0)] * max(0, deg - len(coeffs))
    if len(coeffs) > deg:
        table = _reduction_table(n)
        if len(coeffs) - deg > len(table):
            _, rem = _poly_divmod(list(coeffs), list(cyclotomic_poly(n)))
            return tuple(rem + [Fraction(0)] * (deg - len(rem)))
        for k in range(deg, len(coeffs)):
            c = coeffs[k]
            if c:
                row = table[k - deg]
                for i in range(deg):
                    out[i] += c * row[i]
    return tuple(out)


class Cyc:
    """An element of Q(zeta_N), stored reduced mod the N-th cyclotomic polynomial.

    Instances are immutable; all arithmetic returns new objects.  Mixed
    conductors embed into the lcm automatically.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs) -> None:
        self.n = n
        self.coeffs = _reduce(n, [Fraction(c) for c in coeffs])

    # ---- constructors -------------------------------------------------
    @staticmethod
    def zero(n: int = 1) -> "Cyc":
        return Cyc(n, [])

    @staticmethod
    def one(n: int = 1) -> "Cyc":
        return Cyc(n, [Fraction(1)])

    @staticmethod
    def rational(q, n: int = 1) -> "Cyc":
        return Cyc(n, [Fraction(q)])

    @staticmethod
    def zeta(n: int, power: int = 1) -> "Cyc":
        power %= n
        return Cyc(n, [Fraction(0)] * power + [Fraction(1)])

    # ---- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self.coeffs[0]

    def embed(self, m: int) -> "Cyc":
        """Re-express in Q(zeta_m); requires conductor | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ScalarError(f"cannot embed conductor {self.n} into {m}")
        step = m // self.n
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            out[k * step] = c
        return Cyc(m, out)

    def descend(self, m: int) -> "Cyc | None":
        """The same value in Q(zeta_m) if it lies there, else None (m | conductor)."""
        if self.n % m:
            raise ScalarError(f"{m} does not divide conductor {self.n}")
        if m == self.n:
            return self
        deg_m = len(cyclotomic_poly(m)) - 1
        # basis of the subfield inside Q(zeta_n): powers zeta_n^(k * n/m)
        step = self.n // m
        cols = [Cyc.zeta(self.n, k * step).coeffs for k in range(deg_m)]
        # solve sum_k x_k * cols[k] = self.coeffs by Gaussian elimination
        deg_n = len(self.coeffs)
        aug = [[cols[k][r] for k in range(deg_m)] + [self.coeffs[r]] for r in range(deg_n)]
        piv_cols: list[int] = []
        r = 0
        for c in range(deg_m):
            p = next((i for i in range(r, deg_n) if aug[i][c]), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(deg_n):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
            piv_cols.append(c)
            r += 1
        sol = [Fraction(0)] * deg_m
        for row, c in enumerate(piv_cols):
            sol[c] = aug[row][deg_m]
        for i in range(r, deg_n):
            if aug[i][deg_m]:
                return None
        # verify (guards non-pivot inconsistencies)
        cand = Cyc(m, sol)
        return cand if cand.embed(self.n) == self else None

    def minimal(self) -> "Cyc":
        """Canonical copy over the smallest conductor containing the value."""
        best = self
        for d in sorted(_divisors(self.n)):
            down = self.descend(d)
            if down is not None:
                best = down
                break
        return best

    # ---- arithmetic ----------------------------------------------------
    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        if isinstance(other, (int, Fraction)):
            other = Cyc.rational(other, self.n)
        if not isinstance(other, Cyc):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        if self.n == other.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyc(a.n, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def inv(self) -> "Cyc":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ScalarError("division by zero in cyclotomic field")
        phi = list(cyclotomic_poly(self.n))
        r0, r1 = phi, [c for c in self.coeffs]
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        # invariant: s_i * self = r_i  (mod phi)
        while len(r1) > 1:
            q, r2 = _poly_divmod(r0, r1)
            qs = _poly_mul(q, s1)
            width = max(len(s0), len(qs))
            s2 = [(s0[i] if i < len(s0) else Fraction(0)) - (qs[i] if i < len(qs) else Fraction(0))
                  for i in range(width)]
            r0, r1, s0, s1 = r1, r2, s1, s2
        if not r1 or not r1[0]:
            raise ScalarError("element not invertible (degenerate reduction)")
        c = r1[0]
        return Cyc(self.n, [x / c for x in s1])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inv()

    def __rtruediv__(self, other):
        return Cyc.rational(other, self.n) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = Cyc.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "Cyc":
        """Complex conjugation: the ring involution zeta -> zeta^(N-1)."""
        res = Cyc.zero(self.n)
        for k, c in enumerate(self.coeffs):
            if c:
                res = res + Cyc.zeta(self.n, (-k) % self.n) * c
        return res

    # ---- comparison / io ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        m = self.minimal()
        return hash((m.n, m.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyc({self.n}, {self})"

    def __str__(self):
        return format_scalar(self)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# quadratic extension


class RootExt:
    """Element a + b*D of Q(zeta_N)[D]/(D^2 - disc), disc a fixed Cyc."""

    __slots__ = ("a", "b", "disc")

    def __init__(self, a: Cyc, b: Cyc, disc: Cyc) -> None:
        self.a, self.b, self.disc = a, b, disc

    @staticmethod
    def of(base: Cyc, disc: Cyc) -> "RootExt":
        return RootExt(base, Cyc.zero(base.n), disc)

    @staticmethod
    def root(disc: Cyc) -> "RootExt":
        return RootExt(Cyc.zero(disc.n), Cyc.one(disc.n), disc)

    def _check(self, other: "RootExt") -> None:
        if self.disc != other.disc:
            raise ScalarError("mixing different quadratic extensions")

    def __add__(self, other: "RootExt") -> "RootExt":
        self._check(other)
        return RootExt(self.a + other.a, self.b + other.b, self.disc)

    def __sub__(self, other: "RootExt") -> "RootExt":
        self._check(other)
        return RootExt(self.a - other.a, self.b - other.b, self.disc)

    def __neg__(self) -> "RootExt":
        return RootExt(-self.a, -self.b, self.disc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return RootExt(self.a * other, self.b * other, self.disc)
        self._check(other)
        return RootExt(self.a * other.a + self.b * other.b * self.disc,
                       self.a * other.b + self.b * other.a, self.disc)

    __rmul__ = __mul__

    def inv(self) -> "RootExt":
        nrm = self.a * self.a - self.b * self.b * self.disc
        if nrm.is_zero():
            raise ScalarError("division by zero in quadratic extension")
        ninv = nrm.inv()
        return RootExt(self.a * ninv, -self.b * ninv, self.disc)

    def __truediv__(self, other: "RootExt") -> "RootExt":
        return self * other.inv()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.b.is_zero() and self.a == other
        if not isinstance(other, RootExt):
            return NotImplemented
        return self.disc == other.disc and self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"RootExt({self.a}, {self.b}, disc={self.disc})"

    def __str__(self):
        return f"({self.a}) + ({self.b})*D"


def sqrt_in_ext(value: Cyc) -> RootExt:
    """A formal square root of `value` as a RootExt over its own field."""
    return RootExt.root(value)


# ---------------------------------------------------------------------------
# textual scalar syntax:  rationals, `z` for zeta_conductor, ^ * + -


def parse_scalar(text: str, conductor: int) -> Cyc:
    """Parse the data-file scalar syntax, e.g. ``1/2 - 1/2*z^2 - 1/2*z^3``."""
    toks = _tokenize(text)
    val, pos = _parse_sum(toks, 0, conductor)
    if pos != len(toks):
        raise ScalarError(f"trailing input in scalar {text!r} at token {pos}")
    return val


def _tokenize(text: str) -> list[str]:
    toks, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch in "+-*/^()z":
            toks.append(ch)
            i += 1
        else:
            raise ScalarError(f"bad character {ch!r} in scalar {text!r}")
    return toks


def _parse_sum(toks, pos, n):
    val, pos = _parse_term(toks, pos, n)
    while pos < len(toks) and toks[pos] in "+-":
        op = toks[pos]
        rhs, pos = _parse_term(toks, pos + 1, n)
        val = val + rhs if op == "+" else val - rhs
    return val, pos


def _parse_term(toks, pos, n):
    val, pos = _parse_factor(toks, pos, n)
    while pos < len(toks) and toks[pos] in "*/":
        op = toks[pos]
        rhs, pos = _parse_factor(toks, pos + 1, n)
        val = val * rhs if op == "*" else val / rhs
    return val, pos


def _parse_factor(toks, pos, n):
    neg = False
    while pos < len(toks) and toks[pos] in "+-":
        if toks[pos] == "-":
            neg = not neg
        pos += 1
    if pos >= len(toks):
        raise ScalarError("unexpected end of scalar")
    tok = toks[pos]
    if tok == "(":
        val, pos = _parse_sum(toks, pos + 1, n)
        if pos >= len(toks) or toks[pos] != ")":
            raise ScalarError("unbalanced parenthesis in scalar")
        pos += 1
    elif tok == "z":
        val, pos = Cyc.zeta(n, 1), pos + 1
    elif tok.isdigit():
        val, pos = Cyc.rational(Fraction(int(tok)), n), pos + 1
    else:
        raise ScalarError(f"unexpected token {tok!r} in scalar")
    if pos < len(toks) and toks[pos] == "^":
        pos += 1
        sign = 1
        if pos < len(toks) and toks[pos] == "-":
            sign, pos = -1, pos + 1
        if pos >= len(toks) or not toks[pos].isdigit():
            raise ScalarError("expected integer exponent")
        val = val ** (sign * int(toks[pos]))
        pos += 1
    return (-val if neg else val), pos


def format_scalar(x: Cyc) -> str:
    """Canonical rendering, inverse to :func:`parse_scalar` on its output."""
    parts = []
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        coef = str(mag)
        if k == 0:
            body = coef
        elif mag == 1:
            body = "z" if k == 1 else f"z^{k}"
        else:
            body = f"{coef}*z" if k == 1 else f"{coef}*z^{k}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
