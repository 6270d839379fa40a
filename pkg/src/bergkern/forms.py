"""Operator calculus on (0,q)-forms at a point of C^n.

Operators are stored in the basis M[J, K] mapping dzbar^J to dzbar^K, where
J, K run over strictly increasing multi-indices of length q.  Entries are
scalars (:class:`FormOp`) or :class:`~bergkern.jets.PolyJet` coefficients
(:class:`FormOpJet`) for operator-valued polynomials such as the amplitude
expansion terms.

Composition convention: ``compose(A, B)`` applies B first, so
(A o B)[J, K] = sum_I B[J, I] * A[I, K].
"""

from __future__ import annotations

from itertools import combinations

from .jets import PolyJet
from .scalars import conj


def increasing_indices(n: int, q: int):
    """All strictly increasing multi-indices of length q in 1..n, lex order."""
    return [tuple(c) for c in combinations(range(1, n + 1), q)]


def wedge_sign(j: int, idx: tuple):
    """dzbar_j wedged onto dzbar^idx: (sign, resulting index) or None."""
    if j in idx:
        return None
    below = sum(1 for i in idx if i < j)
    return (-1) ** below, tuple(sorted(idx + (j,)))


def contract_sign(j: int, idx: tuple):
    """Contraction of dzbar_j out of dzbar^idx: (sign, resulting index) or None."""
    if j not in idx:
        return None
    below = sum(1 for i in idx if i < j)
    return (-1) ** below, tuple(i for i in idx if i != j)


class FormOp:
    """Linear operator Lambda^{0,q_in} -> Lambda^{0,q_out} with scalar entries."""

    __slots__ = ("n", "q_in", "q_out", "entries")

    def __init__(self, n: int, q_in: int, q_out: int = None, entries=None):
        self.n = n
        self.q_in = q_in
        self.q_out = q_in if q_out is None else q_out
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val != 0:
                    self.entries[key] = val

    @classmethod
    def identity(cls, n: int, q: int) -> "FormOp":
        return cls(n, q, q, {(J, J): 1 for J in increasing_indices(n, q)})

    @classmethod
    def basis(cls, n: int, J: tuple, K: tuple) -> "FormOp":
        """The operator M[J, K]: dzbar^J -> dzbar^K."""
        return cls(n, len(J), len(K), {(tuple(J), tuple(K)): 1})

    def copy(self) -> "FormOp":
        return FormOp(self.n, self.q_in, self.q_out, dict(self.entries))

    def _check_add(self, other: "FormOp"):
        if (self.n, self.q_in, self.q_out) != (other.n, other.q_in, other.q_out):
            raise ValueError("form operator shape mismatch")

    def __add__(self, other):
        if not isinstance(other, FormOp):
            return NotImplemented
        self._check_add(other)
        out = dict(self.entries)
        for key, val in other.entries.items():
            new = out.get(key, 0) + val
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return FormOp(self.n, self.q_in, self.q_out, out)

    def __neg__(self):
        return FormOp(self.n, self.q_in, self.q_out, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, FormOp):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "FormOp":
        if c == 0:
            return FormOp(self.n, self.q_in, self.q_out)
        return FormOp(self.n, self.q_in, self.q_out, {k: c * v for k, v in self.entries.items()})

    def adjoint(self) -> "FormOp":
        return FormOp(
            self.n, self.q_out, self.q_in,
            {(K, J): conj(v) for (J, K), v in self.entries.items()},
        )

    def trace(self):
        if self.q_in != self.q_out:
            raise ValueError("trace needs an endomorphism")
        return sum((v for (J, K), v in self.entries.items() if J == K), start=0)

    def hat_component(self):
        """Coefficient along M[I0, I0] with I0 = (1, ..., q)."""
        if self.q_in != self.q_out:
            raise ValueError("hat component needs an endomorphism")
        I0 = tuple(range(1, self.q_in + 1))
        return self.entries.get((I0, I0), 0)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.entries.values()), default=0.0)

    def close_to(self, other: "FormOp", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self):
        body = ", ".join(f"M[{J}->{K}]: {v}" for (J, K), v in sorted(self.entries.items()))
        return f"FormOp(n={self.n}, {self.q_in}->{self.q_out}; {body or '0'})"


def compose(a: FormOp, b: FormOp) -> FormOp:
    """a o b, applying b first."""
    if a.n != b.n or b.q_out != a.q_in:
        raise ValueError("composition shape mismatch")
    out = {}
    for (J, I), vb in b.entries.items():
        for (I2, K), va in a.entries.items():
            if I2 != I:
                continue
            key = (J, K)
            new = out.get(key, 0) + vb * va
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
    return FormOp(a.n, b.q_in, a.q_out, out)


def generator(kind: str, j: int, n: int, q_src: int) -> FormOp:
    """dzbar_j^wedge (q_src -> q_src+1) or dzbar_j^contract (q_src -> q_src-1)."""
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")
    entries = {}
    if kind == "wedge":
        for J in increasing_indices(n, q_src):
            res = wedge_sign(j, J)
            if res:
                entries[(J, res[1])] = res[0]
        return FormOp(n, q_src, q_src + 1, entries)
    if kind == "contract":
        if q_src == 0:
            raise ValueError("cannot contract a (0,0)-form")
        for J in increasing_indices(n, q_src):
            res = contract_sign(j, J)
            if res:
                entries[(J, res[1])] = res[0]
        return FormOp(n, q_src, q_src - 1, entries)
    raise ValueError(f"unknown generator kind {kind!r}")


def wedge_contract(n: int, q: int, j: int, t: int) -> FormOp:
    """dzbar_j^wedge o dzbar_t^contract on Lambda^{0,q} (contract first)."""
    if q == 0:
        return FormOp(n, 0, 0)
    return compose(generator("wedge", j, n, q - 1), generator("contract", t, n, q))


def contract_wedge(n: int, q: int, t: int, j: int) -> FormOp:
    """dzbar_t^contract o dzbar_j^wedge on Lambda^{0,q} (wedge first)."""
    if q == n:
        return FormOp(n, n, n)
    return compose(generator("contract", t, n, q + 1), generator("wedge", j, n, q))


def form_trace(t: FormOp):
    return t.trace()


def form_adjoint(t: FormOp) -> FormOp:
    return t.adjoint()


def hat_component(t: FormOp):
    return t.hat_component()


class FormOpJet:
    """Operator-valued polynomial: a FormOp whose entries are PolyJets."""

    __slots__ = ("n", "q_in", "q_out", "max_degree", "entries")

    def __init__(self, n: int, q_in: int, q_out: int = None, max_degree: int = 4, entries=None):
        self.n = n
        self.q_in = q_in
        self.q_out = q_in if q_out is None else q_out
        self.max_degree = max_degree
        self.entries = {}
        if entries:
            for key, jet in entries.items():
                if jet:
                    self.entries[key] = jet

    @classmethod
    def from_form_op(cls, op: FormOp, max_degree: int = 4) -> "FormOpJet":
        entries = {
            key: PolyJet.constant(op.n, val, max_degree) for key, val in op.entries.items()
        }
        return cls(op.n, op.q_in, op.q_out, max_degree, entries)

    def _blank(self):
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree)

    def __add__(self, other):
        if not isinstance(other, FormOpJet):
            return NotImplemented
        out = dict(self.entries)
        for key, jet in other.entries.items():
            cur = out.get(key)
            new = jet if cur is None else cur + jet
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree, out)

    def __neg__(self):
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree,
                         {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if not isinstance(other, FormOpJet):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "FormOpJet":
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree,
                         {k: v.scale(c) for k, v in self.entries.items()})

    def scale_jet(self, jet: PolyJet) -> "FormOpJet":
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree,
                         {k: v * jet for k, v in self.entries.items()})

    def diff(self, block: str, j: int) -> "FormOpJet":
        out = {}
        for key, jet in self.entries.items():
            d = jet.diff(block, j)
            if d:
                out[key] = d
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree, out)

    def adjoint(self) -> "FormOpJet":
        """Pointwise operator adjoint: coefficients conjugated as functions."""
        return FormOpJet(
            self.n, self.q_out, self.q_in, self.max_degree,
            {(K, J): jet.conjugate() for (J, K), jet in self.entries.items()},
        )

    def trace(self) -> PolyJet:
        if self.q_in != self.q_out:
            raise ValueError("trace needs an endomorphism")
        out = PolyJet(self.n, self.max_degree)
        for (J, K), jet in self.entries.items():
            if J == K:
                out = out + jet
        return out

    def coefficient_slice(self, alpha, beta, gamma=None, delta=None) -> FormOp:
        """The constant FormOp multiplying one monomial."""
        out = {}
        for key, jet in self.entries.items():
            c = jet.coefficient(alpha, beta, gamma, delta)
            if c != 0:
                out[key] = c
        return FormOp(self.n, self.q_in, self.q_out, out)

    def w_degree_part(self, m: int) -> "FormOpJet":
        out = {}
        for key, jet in self.entries.items():
            part = jet.w_degree_part(m)
            if part:
                out[key] = part
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree, out)

    def homogeneous_part(self, m: int) -> "FormOpJet":
        out = {}
        for key, jet in self.entries.items():
            part = jet.homogeneous_part(m)
            if part:
                out[key] = part
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree, out)

    def rename_z_to_w(self) -> "FormOpJet":
        return FormOpJet(self.n, self.q_in, self.q_out, self.max_degree,
                         {k: v.rename_z_to_w() for k, v in self.entries.items()})

    def value_at_zero(self) -> FormOp:
        n0 = (0,) * self.n
        return self.coefficient_slice(n0, n0, n0, n0)

    def max_abs(self) -> float:
        return max((jet.max_abs() for jet in self.entries.values()), default=0.0)

    def close_to(self, other: "FormOpJet", tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def __bool__(self):
        return bool(self.entries)

    def __repr__(self):
        body = "; ".join(f"M[{J}->{K}]: {jet!r}" for (J, K), jet in sorted(self.entries.items()))
        return f"FormOpJet(n={self.n}, {self.q_in}->{self.q_out}; {body or '0'})"


def compose_jets(a, b):
    """a o b with b applied first; either argument may be FormOp or FormOpJet."""
    if isinstance(a, FormOp):
        a = FormOpJet.from_form_op(a, b.max_degree if isinstance(b, FormOpJet) else 4)
    if isinstance(b, FormOp):
        b = FormOpJet.from_form_op(b, a.max_degree)
    if a.n != b.n or b.q_out != a.q_in:
        raise ValueError("composition shape mismatch")
    out = {}
    for (J, I), jb in b.entries.items():
        for (I2, K), ja in a.entries.items():
            if I2 != I:
                continue
            prod = ja * jb
            if not prod:
                continue
            key = (J, K)
            cur = out.get(key)
            new = prod if cur is None else cur + prod
            if new:
                out[key] = new
            else:
                out.pop(key, None)
    return FormOpJet(a.n, b.q_in, a.q_out, a.max_degree, out)
