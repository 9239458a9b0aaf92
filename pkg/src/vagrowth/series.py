"""Exact power-series prefixes and canonical integer rational functions.

A rational function is stored as ascending integer coefficient lists
(num, den) with den(0) > 0, joint content 1, and no common polynomial
factor over Q.  Reconstruction from a coefficient prefix finds the minimal
linear recurrence by Berlekamp-Massey over Q, fitted on the prefix minus a
guard window and certified against every supplied coefficient; it never
returns a function that contradicts the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class InsufficientData(Exception):
    """No recurrence of admissible degree certifies on the guard window."""


def _ptrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _pdivmod(a, b):
    a = list(a)
    b = _ptrim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(_ptrim(a)) >= len(b):
        a = _ptrim(a)
        k = len(a) - len(b)
        c = Fraction(a[-1]) / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a[-1] = Fraction(0)
    return q, _ptrim(a)


def _pgcd(a, b):
    a = _ptrim([Fraction(x) for x in a])
    b = _ptrim([Fraction(x) for x in b])
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


@dataclass(frozen=True)
class RationalFunction:
    num: tuple
    den: tuple

    def __str__(self):
        return f"{list(self.num)}/{list(self.den)}"

    def to_json(self):
        return {"num": list(self.num), "den": list(self.den)}


def make_rational(num, den):
    """Canonicalise exact coefficient lists into a RationalFunction."""
    num = _ptrim([Fraction(x) for x in num])
    den = _ptrim([Fraction(x) for x in den])
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    if not num:
        return RationalFunction((0,), (1,))
    g = _pgcd(num, den)
    if len(g) > 1:
        num, _ = _pdivmod(num, g)
        num = _ptrim(num)
        den, _ = _pdivmod(den, g)
        den = _ptrim(den)
    scale = 1
    for c in num + den:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ni = [int(c * scale) for c in num]
    di = [int(c * scale) for c in den]
    content = 0
    for c in ni + di:
        content = gcd(content, c)
    ni = [c // content for c in ni]
    di = [c // content for c in di]
    if di[0] < 0:
        ni = [-c for c in ni]
        di = [-c for c in di]
    return RationalFunction(tuple(ni), tuple(di))


ZERO = RationalFunction((0,), (1,))
ONE = RationalFunction((1,), (1,))


def expand(rf, n):
    """Exact series coefficients c_0..c_n of num/den."""
    num, den = rf.num, rf.den
    if den[0] == 0:
        raise ValueError("denominator vanishes at 0")
    coeffs = []
    for k in range(n + 1):
        s = Fraction(num[k] if k < len(num) else 0)
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * coeffs[k - j]
        coeffs.append(s / den[0])
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ValueError("series has non-integer coefficients")
        out.append(int(c))
    return out


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def rf_add(r1, r2):
    num = [x + y for x, y in zip_pad(_pmul(r1.num, r2.den), _pmul(r2.num, r1.den))]
    return make_rational(num, _pmul(r1.den, r2.den))


def rf_sub(r1, r2):
    num = [x - y for x, y in zip_pad(_pmul(r1.num, r2.den), _pmul(r2.num, r1.den))]
    return make_rational(num, _pmul(r1.den, r2.den))


def zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _berlekamp_massey(seq):
    """Minimal LFSR (L, C) over Q with C[0] = 1 generating seq from index L."""
    C = [Fraction(1)]
    B = [Fraction(1)]
    L = 0
    m = 1
    b = Fraction(1)
    for n, s in enumerate(seq):
        d = Fraction(s)
        for i in range(1, L + 1):
            d += C[i] * seq[n - i]
        if d == 0:
            m += 1
            continue
        coef = d / b
        if 2 * L <= n:
            T = C[:]
            if len(C) < len(B) + m:
                C = C + [Fraction(0)] * (len(B) + m - len(C))
            for i, bv in enumerate(B):
                C[i + m] -= coef * bv
            L = n + 1 - L
            B = T
            b = d
            m = 1
        else:
            if len(C) < len(B) + m:
                C = C + [Fraction(0)] * (len(B) + m - len(C))
            for i, bv in enumerate(B):
                C[i + m] -= coef * bv
            m += 1
    return L, C


def reconstruct(prefix, guard=16, max_den_degree=64):
    """Fit the minimal recurrence on prefix[:-guard], certify on the rest.

    Returns the canonical RationalFunction whose expansion reproduces the
    whole prefix, or raises InsufficientData; never a silently wrong answer.
    """
    if guard < 1:
        raise ValueError("guard must be >= 1")
    if len(prefix) < 8 + guard:
        raise ValueError(f"prefix too short: need at least {8 + guard} terms")
    fit = list(prefix[: len(prefix) - guard])
    L, C = _berlekamp_massey(fit)
    if L > max_den_degree or 2 * L > len(fit):
        raise InsufficientData(f"no certified recurrence of degree <= {max_den_degree}")
    # num = C * prefix, which must vanish from index L on (incl. guard terms)
    p = []
    for n in range(len(prefix)):
        s = Fraction(prefix[n])
        for j in range(1, len(C)):
            if n - j >= 0:
                s += C[j] * prefix[n - j]
        p.append(s)
    if any(p[n] != 0 for n in range(L, len(prefix))):
        raise InsufficientData("fitted recurrence fails on held-out coefficients")
    rf = make_rational(p[:L] if L else [p[0]] if p else [0], C)
    if expand(rf, len(prefix) - 1) != list(prefix):
        raise InsufficientData("certification failed")
    return rf
