"""Exact scalars: cyclotomic numbers extended by formal invertible variables.

A scalar lives in Q(zeta_m)[v, v^-1 : v in V] where zeta_m = exp(2*pi*i/m) and
V is an open-ended set of formal variable names (the standard ones are ``u``,
``x``, ``y``, ``w``; ad-hoc unknowns such as ``s0_1`` are allowed too).  The
representation is canonical: powers of zeta_m are reduced modulo the m-th
cyclotomic polynomial and zero coefficients are dropped, so ``==`` decides
mathematical equality.

All operations are pure; instances are immutable once constructed.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache


class InexactDivision(ArithmeticError):
    """Raised when an exact ring division does not come out even."""


class ScalarParseError(ValueError):
    """Raised on malformed scalar literals."""


# ---------------------------------------------------------------------------
# cyclotomic polynomial machinery
# ---------------------------------------------------------------------------

def _poly_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_div_exact_int(num: list[int], den: list[int]) -> list[int]:
    # den is monic; the division must be exact (used for X^m - 1 over
    # products of cyclotomic polynomials).
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact integer polynomial division")
    return _poly_trim(q)


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError(f"conductor must be >= 1, got {m}")
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_div_exact_int(num, list(cyclotomic_coeffs(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _zeta_reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e-deg expresses zeta_m^e (deg <= e < m) over the basis 1..zeta^(deg-1)."""
    phi = cyclotomic_coeffs(m)
    deg = len(phi) - 1
    rows = []
    # zeta^deg = -(phi_0 + phi_1 zeta + ...), phi is monic
    rows.append(tuple(-c for c in phi[:-1]))
    for _ in range(deg + 1, m):
        prev = rows[-1]
        nxt = [0] * deg
        for i in range(deg - 1):
            nxt[i + 1] += prev[i]
        top = prev[deg - 1]
        if top:
            base = rows[0]
            for i in range(deg):
                nxt[i] += top * base[i]
        rows.append(tuple(nxt))
    return tuple(rows)


def _degree(m: int) -> int:
    return len(cyclotomic_coeffs(m)) - 1


# ---------------------------------------------------------------------------
# field arithmetic on zeta-coefficient dicts {zpow: Fraction}
# ---------------------------------------------------------------------------

def _zcanon(m: int, d: dict[int, Fraction]) -> dict[int, Fraction]:
    deg = _degree(m)
    rows = _zeta_reduction_rows(m) if deg < m else ()
    out: dict[int, Fraction] = {}
    for zp, c in d.items():
        if not c:
            continue
        zp %= m
        if zp < deg:
            out[zp] = out.get(zp, Fraction(0)) + c
        else:
            row = rows[zp - deg]
            for i, r in enumerate(row):
                if r:
                    out[i] = out.get(i, Fraction(0)) + c * r
    return {k: v for k, v in out.items() if v}


def _zmul(m: int, a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    raw: dict[int, Fraction] = {}
    for za, ca in a.items():
        for zb, cb in b.items():
            k = za + zb
            raw[k] = raw.get(k, Fraction(0)) + ca * cb
    return _zcanon(m, raw)


def _zinv(m: int, a: dict[int, Fraction]) -> dict[int, Fraction]:
    """Inverse in Q(zeta_m) via the extended Euclidean algorithm mod Phi_m."""
    if not a:
        raise ZeroDivisionError("inverse of zero cyclotomic element")
    deg = _degree(m)
    apoly = [Fraction(0)] * deg
    for zp, c in a.items():
        apoly[zp] = c
    _poly_trim_frac(apoly)
    phi = [Fraction(c) for c in cyclotomic_coeffs(m)]

    # extended gcd: s*a + t*phi = r, track s only
    r0, r1 = phi, apoly
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, rem = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub_frac(s0, _poly_mul_frac(q, s1))
    # Phi_m is irreducible over Q, so the gcd r0 is a nonzero constant.
    if len(r0) != 1:
        raise ArithmeticError("cyclotomic gcd not constant; conductor data corrupt")
    c = r0[0]
    inv = {i: s / c for i, s in enumerate(s0) if s}
    return _zcanon(m, inv)


def _poly_trim_frac(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim_frac(out)


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim_frac(out)


def _poly_divmod_frac(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _poly_trim_frac(q), _poly_trim_frac(a)


# ---------------------------------------------------------------------------
# the scalar type
# ---------------------------------------------------------------------------

VarKey = tuple[tuple[str, int], ...]
Key = tuple[int, VarKey]


def _vk_mul(a: VarKey, b: VarKey) -> VarKey:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for name, e in b:
        ne = d.get(name, 0) + e
        if ne:
            d[name] = ne
        else:
            del d[name]
    return tuple(sorted(d.items()))


class CycScalar:
    """Element of Q(zeta_m) extended by formal Laurent variables."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: dict[Key, Fraction], *, _canonical: bool = False):
        self.conductor = conductor
        if _canonical:
            self.coeffs = coeffs
            return
        deg = _degree(conductor)
        out: dict[Key, Fraction] = {}
        for (zp, vk), c in coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            vk = tuple(sorted((n, e) for n, e in vk if e))
            zp %= conductor
            if zp < deg:
                k = (zp, vk)
                out[k] = out.get(k, Fraction(0)) + c
            else:
                row = _zeta_reduction_rows(conductor)[zp - deg]
                for i, r in enumerate(row):
                    if r:
                        k = (i, vk)
                        out[k] = out.get(k, Fraction(0)) + c * r
        self.coeffs = {k: v for k, v in out.items() if v}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(conductor: int) -> "CycScalar":
        return CycScalar(conductor, {}, _canonical=True)

    @staticmethod
    def one(conductor: int) -> "CycScalar":
        return CycScalar.rational(1, conductor)

    @staticmethod
    def rational(q, conductor: int) -> "CycScalar":
        q = Fraction(q)
        if not q:
            return CycScalar.zero(conductor)
        return CycScalar(conductor, {(0, ()): q}, _canonical=True)

    @staticmethod
    def zeta(conductor: int, power: int = 1) -> "CycScalar":
        return CycScalar(conductor, {(power, ()): Fraction(1)})

    @staticmethod
    def variable(name: str, conductor: int, exponent: int = 1) -> "CycScalar":
        if exponent == 0:
            return CycScalar.one(conductor)
        return CycScalar(conductor, {(0, ((name, exponent),)): Fraction(1)}, _canonical=True)

    # -- predicates / conversions -------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return self.coeffs == {(0, ()): Fraction(1)}

    @property
    def is_rational(self) -> bool:
        return not self.coeffs or (len(self.coeffs) == 1 and (0, ()) in self.coeffs)

    def as_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_rational:
            raise ValueError(f"scalar {self} is not rational")
        return self.coeffs[(0, ())]

    def as_int(self) -> int:
        f = self.as_fraction()
        if f.denominator != 1:
            raise ValueError(f"scalar {self} is not an integer")
        return f.numerator

    def variables(self) -> set[str]:
        out: set[str] = set()
        for _, vk in self.coeffs:
            out.update(name for name, _ in vk)
        return out

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.conductor != self.conductor:
                raise ValueError(
                    f"conductor mismatch: {self.conductor} vs {other.conductor}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.rational(other, self.conductor)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            nc = out.get(k, Fraction(0)) + c
            if nc:
                out[k] = nc
            elif k in out:
                del out[k]
        return CycScalar(self.conductor, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.conductor, {k: -c for k, c in self.coeffs.items()}, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        m = self.conductor
        raw: dict[Key, Fraction] = {}
        for (z1, v1), c1 in self.coeffs.items():
            for (z2, v2), c2 in other.coeffs.items():
                k = (z1 + z2, _vk_mul(v1, v2))
                raw[k] = raw.get(k, Fraction(0)) + c1 * c2
        return CycScalar(m, raw)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycScalar.one(self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.rational(other, self.conductor)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, frozenset(self.coeffs.items())))

    def __bool__(self):
        return not self.is_zero

    # -- division -----------------------------------------------------------

    def exact_div(self, other: "CycScalar") -> "CycScalar":
        """Divide exactly in the Laurent ring; raise InexactDivision otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("exact division by zero")
        if self.is_zero:
            return CycScalar.zero(self.conductor)
        m = self.conductor
        names = sorted(self.variables() | other.variables())

        def collect(s: CycScalar) -> dict[tuple[int, ...], dict[int, Fraction]]:
            out: dict[tuple[int, ...], dict[int, Fraction]] = {}
            for (zp, vk), c in s.coeffs.items():
                d = dict(vk)
                key = tuple(d.get(n, 0) for n in names)
                out.setdefault(key, {})
                out[key][zp] = out[key].get(zp, Fraction(0)) + c
            return {k: {z: c for z, c in v.items() if c} for k, v in out.items() if any(v.values())}

        f = collect(self)
        g = collect(other)
        nv = len(names)
        valf = tuple(min(k[i] for k in f) for i in range(nv)) if nv else ()
        valg = tuple(min(k[i] for k in g) for i in range(nv)) if nv else ()
        f = {tuple(k[i] - valf[i] for i in range(nv)): v for k, v in f.items()}
        g = {tuple(k[i] - valg[i] for i in range(nv)): v for k, v in g.items()}

        gl = max(g)
        glc_inv = _zinv(m, g[gl])
        quot: dict[tuple[int, ...], dict[int, Fraction]] = {}
        while f:
            fl = max(f)
            t = tuple(fl[i] - gl[i] for i in range(nv))
            if any(e < 0 for e in t):
                raise InexactDivision(f"{self} is not divisible by {other}")
            cq = _zmul(m, f[fl], glc_inv)
            quot[t] = cq
            # f -= (cq * X^t) * g
            for gk, gc in g.items():
                k = tuple(gk[i] + t[i] for i in range(nv))
                prod = _zmul(m, cq, gc)
                cell = f.get(k, {})
                for zp, c in prod.items():
                    nc = cell.get(zp, Fraction(0)) - c
                    if nc:
                        cell[zp] = nc
                    elif zp in cell:
                        del cell[zp]
                if cell:
                    f[k] = cell
                elif k in f:
                    del f[k]
        shift = tuple(valf[i] - valg[i] for i in range(nv))
        out: dict[Key, Fraction] = {}
        for k, zd in quot.items():
            vk = tuple(sorted((names[i], k[i] + shift[i]) for i in range(nv) if k[i] + shift[i]))
            for zp, c in zd.items():
                out[(zp, vk)] = c
        return CycScalar(m, out, _canonical=True)

    def inverse(self) -> "CycScalar":
        return CycScalar.one(self.conductor).exact_div(self)

    def try_inverse(self):
        try:
            return self.inverse()
        except (InexactDivision, ZeroDivisionError):
            return None

    @property
    def is_unit(self) -> bool:
        return self.try_inverse() is not None

    # -- evaluation and printing --------------------------------------------

    def evaluate(self, variables: dict[str, complex] | None = None) -> complex:
        """Numerically evaluate at zeta_m = exp(2*pi*i/m) and the given variable values."""
        variables = variables or {}
        z = cmath.exp(2j * cmath.pi / self.conductor)
        total = 0j
        for (zp, vk), c in self.coeffs.items():
            term = complex(c) * z ** zp
            for name, e in vk:
                if name not in variables:
                    raise KeyError(f"no value supplied for variable {name!r}")
                term *= variables[name] ** e
            total += term
        return total

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for (zp, vk), c in sorted(self.coeffs.items()):
            factors = []
            if abs(c) != 1 or (zp == 0 and not vk):
                factors.append(str(abs(c)))
            if zp:
                factors.append(f"z{self.conductor}" + (f"^{zp}" if zp != 1 else ""))
            for name, e in vk:
                factors.append(name + (f"^{e}" if e != 1 else ""))
            body = "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"CycScalar({self.conductor}, {self})"


# ---------------------------------------------------------------------------
# quantum integers
# ---------------------------------------------------------------------------

def quantum_integer(n: int, ell: int) -> CycScalar:
    """[n] = (q^n - q^-n)/(q - q^-1) at q = zeta_ell, for odd ell >= 3.

    Uses the telescoped form q^(n-1) + q^(n-3) + ... + q^(1-n), so no division
    is involved.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError(f"ell must be odd and >= 3, got {ell}")
    if n == 0:
        return CycScalar.zero(ell)
    sign = 1
    if n < 0:
        n, sign = -n, -1
    # colliding exponents must accumulate, so go through the canonical ctor
    raw: dict[Key, Fraction] = {}
    for i in range(n):
        k = (n - 1 - 2 * i, ())
        raw[k] = raw.get(k, Fraction(0)) + sign
    return CycScalar(ell, raw)


# ---------------------------------------------------------------------------
# parsing of the scalar literal grammar
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[\^*+\-()]))"
)
_ZETA_RE = re.compile(r"^z(\d+)$")


class _Parser:
    def __init__(self, text: str, conductor: int):
        self.text = text
        self.conductor = conductor
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            mo = _TOKEN_RE.match(text, pos)
            if not mo or mo.end() == pos:
                raise ScalarParseError(f"bad character at offset {pos} in {text!r}")
            self.tokens.append(mo.group("num") or mo.group("name") or mo.group("op"))
            pos = mo.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> CycScalar:
        v = self.expr()
        if self.peek() is not None:
            raise ScalarParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return v

    def expr(self) -> CycScalar:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self) -> CycScalar:
        v = self.factor()
        while self.peek() == "*":
            self.take()
            v = v * self.factor()
        return v

    def factor(self) -> CycScalar:
        neg = False
        while self.peek() == "-":
            self.take()
            neg = not neg
        v = self.atom()
        if self.peek() == "^":
            self.take()
            esign = 1
            if self.peek() == "-":
                self.take()
                esign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ScalarParseError(f"bad exponent in {self.text!r}")
            v = v ** (esign * int(tok))
        return -v if neg else v

    def atom(self) -> CycScalar:
        tok = self.take()
        if tok is None:
            raise ScalarParseError(f"unexpected end of input in {self.text!r}")
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise ScalarParseError(f"unbalanced parentheses in {self.text!r}")
            return v
        if tok[0].isdigit():
            return CycScalar.rational(Fraction(tok), self.conductor)
        mo = _ZETA_RE.match(tok)
        if mo:
            m = int(mo.group(1))
            if m != self.conductor:
                raise ScalarParseError(
                    f"root of unity z{m} does not match conductor {self.conductor}")
            return CycScalar.zeta(self.conductor)
        return CycScalar.variable(tok, self.conductor)


def parse_scalar(text: str, conductor: int) -> CycScalar:
    """Parse the scalar grammar: rationals, z{m}^k, variables, * + - ( )."""
    return _Parser(text, conductor).parse()
