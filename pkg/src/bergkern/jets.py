"""Truncated power series in the four variable blocks z, zbar, w, wbar.

A :class:`PolyJet` stores a sparse table of Taylor coefficients

    a(z, w) = sum  a[alpha, beta, gamma, delta] * zbar^alpha z^beta wbar^gamma w^delta

truncated at a fixed total degree.  Keys are quadruples of exponent tuples in
the order (zbar, z, wbar, w).  Coefficients may be ``complex`` or the exact
rational :class:`~bergkern.scalars.QC`.

Everything here is immutable-by-convention: operations return new jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .scalars import abs_val, conj

BLOCKS = ("zbar", "z", "wbar", "w")
_BLOCK_POS = {b: i for i, b in enumerate(BLOCKS)}
# conjugation swaps zbar<->z and wbar<->w
_CONJ_POS = (1, 0, 3, 2)


@dataclass(frozen=True)
class MultiIndex:
    """Exponent vector with the primed / double-primed split at position q."""

    entries: tuple
    q: int

    def __post_init__(self):
        if any(e < 0 for e in self.entries):
            raise ValueError("multi-index entries must be nonnegative")
        if not 0 <= self.q <= len(self.entries):
            raise ValueError("split point out of range")

    @property
    def order(self) -> int:
        return sum(self.entries)

    @property
    def primed(self) -> tuple:
        return self.entries[: self.q]

    @property
    def doubleprimed(self) -> tuple:
        return self.entries[self.q :]

    def join(self) -> tuple:
        return self.primed + self.doubleprimed


def zero_index(n: int) -> tuple:
    return (0,) * n


def unit_index(n: int, j: int) -> tuple:
    """e_j as an exponent tuple; j is 1-based."""
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")
    return tuple(1 if i == j - 1 else 0 for i in range(n))


def add_index(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def index_factorial(a: tuple) -> int:
    out = 1
    for e in a:
        out *= math.factorial(e)
    return out


def lambda_pairing(lams, alpha, q: int, mode: str):
    """Weighted sums <lambda', alpha'> etc. over one block of a multi-index.

    mode is one of ``signed-primed``, ``signed-doubleprimed``, ``abs-primed``,
    ``abs-doubleprimed``; the primed block is the first q entries.
    """
    if mode == "signed-primed":
        return sum(lams[j] * alpha[j] for j in range(q))
    if mode == "signed-doubleprimed":
        return sum(lams[j] * alpha[j] for j in range(q, len(alpha)))
    if mode == "abs-primed":
        return sum(abs_val(lams[j]) * alpha[j] for j in range(q))
    if mode == "abs-doubleprimed":
        return sum(abs_val(lams[j]) * alpha[j] for j in range(q, len(alpha)))
    raise ValueError(f"unknown pairing mode {mode!r}")


class PolyJet:
    """Sparse truncated polynomial in (zbar, z, wbar, w)."""

    __slots__ = ("n", "max_degree", "coeffs")

    def __init__(self, n: int, max_degree: int = 4, coeffs=None):
        self.n = n
        self.max_degree = max_degree
        self.coeffs = {}
        if coeffs:
            for key, val in coeffs.items():
                if val == 0:
                    continue
                if _key_degree(key) <= max_degree:
                    self.coeffs[key] = val

    # -- construction helpers ----------------------------------------------
    @classmethod
    def constant(cls, n: int, value, max_degree: int = 4) -> "PolyJet":
        key = (zero_index(n),) * 4
        return cls(n, max_degree, {key: value})

    @classmethod
    def variable(cls, n: int, block: str, j: int, max_degree: int = 4) -> "PolyJet":
        key = [zero_index(n)] * 4
        key[_BLOCK_POS[block]] = unit_index(n, j)
        return cls(n, max_degree, {tuple(key): 1})

    def copy(self) -> "PolyJet":
        return PolyJet(self.n, self.max_degree, dict(self.coeffs))

    # -- ring operations -----------------------------------------------------
    def _check(self, other: "PolyJet"):
        if self.n != other.n or self.max_degree != other.max_degree:
            raise ValueError(
                f"jet mismatch: (n={self.n}, deg={self.max_degree}) vs "
                f"(n={other.n}, deg={other.max_degree})"
            )

    def __add__(self, other):
        if not isinstance(other, PolyJet):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for key, val in other.coeffs.items():
            new = out.get(key, 0) + val
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return PolyJet(self.n, self.max_degree, out)

    def __neg__(self):
        return PolyJet(self.n, self.max_degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, PolyJet):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "PolyJet":
        if c == 0:
            return PolyJet(self.n, self.max_degree)
        return PolyJet(self.n, self.max_degree, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyJet):
            return self.scale(other)
        self._check(other)
        out = {}
        cutoff = self.max_degree
        for k1, v1 in self.coeffs.items():
            d1 = _key_degree(k1)
            for k2, v2 in other.coeffs.items():
                if d1 + _key_degree(k2) > cutoff:
                    continue
                key = tuple(add_index(a, b) for a, b in zip(k1, k2))
                new = out.get(key, 0) + v1 * v2
                if new == 0:
                    out.pop(key, None)
                else:
                    out[key] = new
        return PolyJet(self.n, self.max_degree, out)

    __rmul__ = __mul__

    # -- calculus -------------------------------------------------------------
    def diff(self, block: str, j: int) -> "PolyJet":
        """Formal partial derivative in the given variable; j is 1-based."""
        if not 1 <= j <= self.n:
            raise IndexError(f"variable index {j} out of range 1..{self.n}")
        pos = _BLOCK_POS[block]
        out = {}
        for key, val in self.coeffs.items():
            e = key[pos][j - 1]
            if e == 0:
                continue
            exp = list(key[pos])
            exp[j - 1] = e - 1
            new_key = key[:pos] + (tuple(exp),) + key[pos + 1 :]
            out[new_key] = out.get(new_key, 0) + e * val
        return PolyJet(self.n, self.max_degree, out)

    def conjugate(self) -> "PolyJet":
        """Jet of the pointwise complex conjugate function."""
        out = {}
        for key, val in self.coeffs.items():
            out[tuple(key[p] for p in _CONJ_POS)] = conj(val)
        return PolyJet(self.n, self.max_degree, out)

    def swap_conjugate(self) -> "PolyJet":
        """Jet of -conj(a(w, z)); the phase antisymmetry fixes psi."""
        out = {}
        for (a, b, g, d), val in self.coeffs.items():
            out[(d, g, b, a)] = -conj(val)
        return PolyJet(self.n, self.max_degree, out)

    # -- slicing ----------------------------------------------------------------
    def coefficient(self, alpha, beta, gamma=None, delta=None):
        g = zero_index(self.n) if gamma is None else tuple(gamma)
        d = zero_index(self.n) if delta is None else tuple(delta)
        return self.coeffs.get((tuple(alpha), tuple(beta), g, d), 0)

    def derivative_at_zero(self, alpha, beta, gamma=None, delta=None):
        g = zero_index(self.n) if gamma is None else tuple(gamma)
        d = zero_index(self.n) if delta is None else tuple(delta)
        key = (tuple(alpha), tuple(beta), g, d)
        c = self.coeffs.get(key, 0)
        if c == 0:
            return c
        return c * index_factorial(key[0]) * index_factorial(key[1]) * \
            index_factorial(key[2]) * index_factorial(key[3])

    def homogeneous_part(self, m: int) -> "PolyJet":
        return PolyJet(
            self.n, self.max_degree,
            {k: v for k, v in self.coeffs.items() if _key_degree(k) == m},
        )

    def truncated(self, m: int) -> "PolyJet":
        return PolyJet(
            self.n, self.max_degree,
            {k: v for k, v in self.coeffs.items() if _key_degree(k) <= m},
        )

    def w_degree_part(self, m: int) -> "PolyJet":
        return PolyJet(
            self.n, self.max_degree,
            {k: v for k, v in self.coeffs.items() if sum(k[2]) + sum(k[3]) == m},
        )

    def set_w_zero(self) -> "PolyJet":
        return self.w_degree_part(0)

    def restrict_diagonal(self) -> "PolyJet":
        """Substitute w = z; result lives in the (zbar, z) blocks only."""
        zero = zero_index(self.n)
        out = {}
        for (a, b, g, d), val in self.coeffs.items():
            key = (add_index(a, g), add_index(b, d), zero, zero)
            new = out.get(key, 0) + val
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return PolyJet(self.n, self.max_degree, out)

    def rename_z_to_w(self) -> "PolyJet":
        """Relabel the z blocks as w blocks; input must not involve w."""
        zero = zero_index(self.n)
        out = {}
        for (a, b, g, d), val in self.coeffs.items():
            if g != zero or d != zero:
                raise ValueError("rename_z_to_w requires a w-free jet")
            out[(zero, zero, a, b)] = val
        return PolyJet(self.n, self.max_degree, out)

    # -- misc ---------------------------------------------------------------------
    def max_abs(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PolyJet):
            return NotImplemented
        return (self.n, self.max_degree) == (other.n, other.max_degree) and \
            self.coeffs == other.coeffs

    def close_to(self, other: "PolyJet", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self):
        terms = []
        for key in sorted(self.coeffs, key=lambda k: (_key_degree(k), k)):
            val = self.coeffs[key]
            mono = "".join(
                f"{name}{i + 1}^{e}" if e > 1 else f"{name}{i + 1}"
                for name, exps in zip(("zb", "z", "wb", "w"), key)
                for i, e in enumerate(exps) if e
            )
            terms.append(f"({val})*{mono or '1'}")
        body = " + ".join(terms) if terms else "0"
        return f"PolyJet[n={self.n}, deg<={self.max_degree}]: {body}"


def _key_degree(key) -> int:
    return sum(sum(part) for part in key)


def jet_product(a: PolyJet, b: PolyJet) -> PolyJet:
    return a * b


def jet_diff(a: PolyJet, block: str, j: int) -> PolyJet:
    return a.diff(block, j)


def jet_swap_conjugate(a: PolyJet) -> PolyJet:
    return a.swap_conjugate()
