"""Weight ingestion and reduction to the diagonal normal form.

A weight is a real-valued polynomial phi given by a Hermitian-symmetric
coefficient table.  ``normalize_weight`` recenters phi at the base point,
diagonalizes the mixed Hessian by a unitary change of frame, removes the
affine part and the pure holomorphic quadratic part, and returns a
:class:`WeightJet`: the table of derivatives through total order 4 together
with the eigenvalues sorted negatives-first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateHessianError, ValidationError
from .jets import PolyJet, index_factorial, unit_index, zero_index
from .scalars import QC, conj

MAX_ORDER = 4


@dataclass
class WeightSpec:
    """Polynomial weight: sum over (alpha, beta) of c * zbar^alpha z^beta."""

    n: int
    point: tuple
    monomials: dict

    @classmethod
    def from_json_dict(cls, data) -> "WeightSpec":
        try:
            n = int(data["n"])
            raw_point = list(data.get("point", [0.0] * (2 * n)))
            entries = data["monomials"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"weight spec missing field: {exc}") from exc
        if n < 1:
            raise ValidationError("dimension n must be >= 1")
        if len(raw_point) != 2 * n:
            raise ValidationError(f"point must have {2 * n} real entries")
        point = tuple(complex(raw_point[2 * j], raw_point[2 * j + 1]) for j in range(n))
        monomials = {}
        for item in entries:
            alpha = tuple(int(a) for a in item["alpha"])
            beta = tuple(int(b) for b in item["beta"])
            if len(alpha) != n or len(beta) != n:
                raise ValidationError(f"exponent length mismatch in {item}")
            if any(a < 0 for a in alpha + beta):
                raise ValidationError(f"negative exponent in {item}")
            c = complex(float(item.get("re", 0.0)), float(item.get("im", 0.0)))
            monomials[(alpha, beta)] = monomials.get((alpha, beta), 0) + c
        spec = cls(n=n, point=point, monomials=monomials)
        spec.validate_hermitian()
        return spec

    def to_json_dict(self) -> dict:
        pt = []
        for p in self.point:
            pt.extend([complex(p).real, complex(p).imag])
        mono = [
            {"alpha": list(a), "beta": list(b),
             "re": complex(c).real, "im": complex(c).imag}
            for (a, b), c in sorted(self.monomials.items())
        ]
        return {"n": self.n, "point": pt, "monomials": mono}

    def validate_hermitian(self):
        """phi is real iff the (beta, alpha) entry conjugates the (alpha, beta) one."""
        for (a, b), c in self.monomials.items():
            partner = self.monomials.get((b, a))
            if partner is None or abs(complex(partner) - complex(conj(c))) > 1e-12 * max(1.0, abs(complex(c))):
                raise ValidationError(
                    f"weight not Hermitian-symmetric at alpha={a}, beta={b}: "
                    f"missing or wrong conjugate entry"
                )

    def is_radial(self) -> bool:
        """Depends on |z_1|^2 only (n = 1, alpha == beta everywhere)."""
        return self.n == 1 and all(a == b for (a, b) in self.monomials)

    def evaluate(self, z) -> complex:
        total = 0j
        for (a, b), c in self.monomials.items():
            term = c
            for i in range(self.n):
                term *= conj(z[i]) ** a[i] * z[i] ** b[i]
            total += term
        return total


def _falling(m: int, k: int) -> int:
    if m < k:
        return 0
    return math.factorial(m) // math.factorial(m - k)


def derivative_table(spec: WeightSpec, point=None, max_order: int = MAX_ORDER) -> dict:
    """All derivatives d^{|a|+|b|} phi / dzbar^a dz^b at the point, |a|+|b| <= max_order."""
    n = spec.n
    p = spec.point if point is None else tuple(point)
    table = {}
    for total in range(max_order + 1):
        for da in range(total + 1):
            for alpha in _exponents(n, da):
                for beta in _exponents(n, total - da):
                    val = 0j
                    for (a, b), c in spec.monomials.items():
                        coeff = c
                        ok = True
                        for i in range(n):
                            fa = _falling(a[i], alpha[i])
                            fb = _falling(b[i], beta[i])
                            if fa == 0 or fb == 0:
                                ok = False
                                break
                            coeff *= fa * fb
                            coeff *= conj(p[i]) ** (a[i] - alpha[i]) * p[i] ** (b[i] - beta[i])
                        if ok:
                            val += coeff
                    if val != 0:
                        table[(alpha, beta)] = val
    return table


def _exponents(n: int, total: int):
    """All exponent tuples of length n with the given sum."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents(n - 1, total - first):
            yield (first,) + rest


@dataclass
class WeightJet:
    """Normalized weight data at the base point.

    derivs holds D(alpha, beta) in the rotated frame with the affine and pure
    quadratic parts removed, so D(e_j, e_k) = delta_{jk} lambda_j and the only
    other nonzero entries have total order 3 or 4.
    """

    n: int
    lams: tuple
    derivs: dict
    point: tuple = None
    unitary: np.ndarray = None
    removed: dict = field(default_factory=dict)
    exact: bool = False

    def __post_init__(self):
        if self.point is None:
            self.point = (0j,) * self.n

    @property
    def n_minus(self) -> int:
        return sum(1 for lam in self.lams if lam < 0)

    @property
    def n_plus(self) -> int:
        return self.n - self.n_minus

    @property
    def q(self) -> int:
        return self.n_minus

    def abs_lam(self, j: int):
        """|lambda_j|, 1-based."""
        lam = self.lams[j - 1]
        return -lam if lam < 0 else lam

    def abs_lam_product(self):
        out = 1
        for lam in self.lams:
            out = out * (-lam if lam < 0 else lam)
        return out

    def d(self, zbar=(), z=()):
        """Derivative by 1-based index lists, e.g. d(zbar=(j,), z=(k, s))."""
        alpha = [0] * self.n
        beta = [0] * self.n
        for j in zbar:
            alpha[j - 1] += 1
        for k in z:
            beta[k - 1] += 1
        return self.derivs.get((tuple(alpha), tuple(beta)), _zero_like(self))

    def deriv(self, alpha, beta):
        return self.derivs.get((tuple(alpha), tuple(beta)), _zero_like(self))

    def phi_jet(self, max_degree: int = MAX_ORDER, min_order: int = 2) -> PolyJet:
        """phi as a jet in the (zbar, z) blocks, orders min_order..max_degree."""
        zero = zero_index(self.n)
        coeffs = {}
        for (alpha, beta), val in self.derivs.items():
            order = sum(alpha) + sum(beta)
            if not min_order <= order <= max_degree:
                continue
            coeffs[(alpha, beta, zero, zero)] = val * _inv_factorial(alpha, beta, self.exact)
        return PolyJet(self.n, max_degree, coeffs)

    def phi_part(self, m: int) -> PolyJet:
        return self.phi_jet().homogeneous_part(m)

    def is_quadratic(self, tol: float = 0.0) -> bool:
        return all(
            abs(complex(v)) <= tol
            for (a, b), v in self.derivs.items()
            if sum(a) + sum(b) >= 3
        )

    @classmethod
    def from_normal_data(cls, lams, derivs, exact: bool = False) -> "WeightJet":
        """Build directly from eigenvalues and order-3/4 tensors (tests, fuzzing)."""
        lams = tuple(lams)
        n = len(lams)
        q = sum(1 for lam in lams if lam < 0)
        neg, pos = lams[:q], lams[q:]
        if any(lam >= 0 for lam in neg) or any(lam <= 0 for lam in pos):
            raise ValidationError("eigenvalues must be sorted negatives first")
        if list(neg) != sorted(neg) or list(pos) != sorted(pos):
            raise ValidationError("eigenvalues must be ascending within sign blocks")
        full = {}
        for (a, b), v in derivs.items():
            a, b = tuple(a), tuple(b)
            if sum(a) + sum(b) not in (3, 4):
                raise ValidationError("from_normal_data accepts order-3/4 entries only")
            if v != 0:
                full[(a, b)] = v
        _check_reality(full)
        for j in range(n):
            e = unit_index(n, j + 1)
            full[(e, e)] = lams[j]
        return cls(n=n, lams=lams, derivs=full, exact=exact)


def _zero_like(w: WeightJet):
    return QC(0) if w.exact else 0j


def _inv_factorial(alpha, beta, exact: bool):
    f = index_factorial(alpha) * index_factorial(beta)
    return Fraction(1, f) if exact else 1.0 / f


def _check_reality(derivs, tol: float = 1e-10):
    for (a, b), v in derivs.items():
        partner = derivs.get((b, a), 0)
        if abs(complex(partner) - complex(conj(v))) > tol * max(1.0, abs(complex(v))):
            raise ValidationError(f"derivative table not Hermitian at {(a, b)}")


def transform_derivative_table(derivs: dict, u: np.ndarray, n: int,
                               max_order: int = MAX_ORDER) -> dict:
    """Covariant transform of the derivative table under z = U zeta.

    zbar-slots contract with conj(U), z-slots with U, both indexed
    [old, new].
    """
    out = {}
    uc = np.conj(u)
    for a_ord in range(max_order + 1):
        for b_ord in range(max_order + 1 - a_ord):
            tensor = np.zeros((n,) * (a_ord + b_ord), dtype=complex)
            filled = False
            for idx in itertools.product(range(n), repeat=a_ord + b_ord):
                alpha = _indices_to_exponent(idx[:a_ord], n)
                beta = _indices_to_exponent(idx[a_ord:], n)
                val = derivs.get((alpha, beta))
                if val is not None:
                    tensor[idx] = complex(val)
                    filled = True
            if not filled:
                continue
            for axis in range(a_ord):
                tensor = np.tensordot(tensor, uc, axes=([axis], [0]))
                tensor = np.moveaxis(tensor, -1, axis)
            for axis in range(a_ord, a_ord + b_ord):
                tensor = np.tensordot(tensor, u, axes=([axis], [0]))
                tensor = np.moveaxis(tensor, -1, axis)
            for idx in itertools.product(range(n), repeat=a_ord + b_ord):
                if idx[:a_ord] != tuple(sorted(idx[:a_ord])):
                    continue
                if idx[a_ord:] != tuple(sorted(idx[a_ord:])):
                    continue
                val = tensor[idx]
                if val != 0:
                    alpha = _indices_to_exponent(idx[:a_ord], n)
                    beta = _indices_to_exponent(idx[a_ord:], n)
                    out[(alpha, beta)] = val
    return out


def _indices_to_exponent(idx, n: int) -> tuple:
    exp = [0] * n
    for i in idx:
        exp[i] += 1
    return tuple(exp)


def normalize_weight(raw: WeightSpec, point=None, tol_sig: float = 1e-9,
                     exact: bool = False) -> WeightJet:
    """Reduce phi to sum lambda_j |z_j|^2 + O(|z|^3) with negatives first."""
    raw.validate_hermitian()
    n = raw.n
    if exact:
        return _normalize_exact(raw, point, tol_sig)
    derivs = derivative_table(raw, point=point)
    _check_reality(derivs)
    hess = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for k in range(n):
            hess[j, k] = derivs.get((unit_index(n, j + 1), unit_index(n, k + 1)), 0)
    evals, evecs = np.linalg.eigh(hess)
    if evals.size and abs(evals).min() <= tol_sig * max(abs(evals).max(), 1e-300):
        raise DegenerateHessianError(
            f"degenerate Hessian: eigenvalues {evals.tolist()} within tolerance {tol_sig}"
        )
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    u = evecs[:, order]
    rotated = transform_derivative_table(derivs, u, n)
    lams = tuple(float(v) for v in evals)
    removed = {}
    cleaned = {}
    for (a, b), v in rotated.items():
        total = sum(a) + sum(b)
        is_mixed2 = total == 2 and sum(a) == 1 and sum(b) == 1
        if total <= 1 or (total == 2 and not is_mixed2):
            removed[(a, b)] = v
            continue
        if is_mixed2:
            continue
        if v != 0:
            cleaned[(a, b)] = v
    for j in range(n):
        e = unit_index(n, j + 1)
        cleaned[(e, e)] = lams[j]
    pt = raw.point if point is None else tuple(point)
    return WeightJet(n=n, lams=lams, derivs=cleaned, point=tuple(pt),
                     unitary=u, removed=removed, exact=False)


def _normalize_exact(raw: WeightSpec, point, tol_sig: float) -> WeightJet:
    """Exact-rational path: base point must leave the mixed Hessian diagonal."""
    n = raw.n
    p = raw.point if point is None else tuple(point)
    if any(complex(x) != 0 for x in p):
        raise ValidationError("exact mode supports the base point 0 only")
    mono = {}
    for (a, b), c in raw.monomials.items():
        cc = complex(c)
        mono[(a, b)] = QC(Fraction(cc.real).limit_denominator(10**12),
                          Fraction(cc.imag).limit_denominator(10**12))
    for j in range(n):
        for k in range(n):
            if j != k:
                ejk = (unit_index(n, j + 1), unit_index(n, k + 1))
                if ejk in mono and mono[ejk] != QC(0):
                    raise ValidationError(
                        "exact mode requires an already-diagonal mixed Hessian"
                    )
    lams = []
    for j in range(n):
        e = unit_index(n, j + 1)
        val = mono.get((e, e), QC(0))
        if val.im != 0:
            raise ValidationError("diagonal Hessian entries must be real")
        lams.append(val.re)
    if any(lam == 0 for lam in lams):
        raise DegenerateHessianError("zero eigenvalue in exact mode")
    perm = sorted(range(n), key=lambda j: (lams[j] >= 0, lams[j]))
    inv = {old: new for new, old in enumerate(perm)}
    derivs = {}
    removed = {}
    for (a, b), c in mono.items():
        total = sum(a) + sum(b)
        if total > MAX_ORDER:
            raise ValidationError("exact mode supports polynomial degree <= 4")
        fac = index_factorial(a) * index_factorial(b)
        val = c * fac
        a2 = _permute_exponent(a, inv)
        b2 = _permute_exponent(b, inv)
        is_mixed2 = total == 2 and sum(a) == 1 and sum(b) == 1
        if total <= 1 or (total == 2 and not is_mixed2):
            removed[(a2, b2)] = val
        elif total >= 3:
            derivs[(a2, b2)] = val
    sorted_lams = tuple(lams[j] for j in perm)
    for j in range(n):
        e = unit_index(n, j + 1)
        derivs[(e, e)] = sorted_lams[j]
    return WeightJet(n=n, lams=sorted_lams, derivs=derivs, point=(0j,) * n,
                     unitary=None, removed=removed, exact=True)


def _permute_exponent(exp: tuple, inv: dict) -> tuple:
    out = [0] * len(exp)
    for old, e in enumerate(exp):
        out[inv[old]] = e
    return tuple(out)


def random_normal_weight(rng: np.random.Generator, n: int, q: int,
                         scale: float = 0.3, quartic: bool = True) -> WeightJet:
    """Random normalized weight with signature (q, n - q); used by the
    randomized verification suites."""
    neg = sorted(-rng.uniform(0.5, 3.0, size=q))
    pos = sorted(rng.uniform(0.5, 3.0, size=n - q))
    lams = tuple(list(neg) + list(pos))
    derivs = {}
    orders = (3, 4) if quartic else (3,)
    for total in orders:
        for da in range(total + 1):
            for alpha in _exponents(n, da):
                for beta in _exponents(n, total - da):
                    if (alpha, beta) in derivs or (beta, alpha) in derivs:
                        continue
                    if alpha == beta:
                        val = complex(rng.normal(0, scale), 0.0)
                        derivs[(alpha, beta)] = val
                    else:
                        val = complex(rng.normal(0, scale), rng.normal(0, scale))
                        derivs[(alpha, beta)] = val
                        derivs[(beta, alpha)] = conj(val)
    return WeightJet.from_normal_data(lams, derivs)
