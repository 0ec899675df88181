"""Dense multilinear forms and their mixed, weak and comparison norms.

An arity-m form on l_{p_1} x ... x l_{p_m} is stored as its dense coefficient
tensor a[j_1, ..., j_m] = T(e_{j_1}, ..., e_{j_m}), row-major, float64 or
complex128.  The mixed norm nests one l_s reduction per axis, innermost axis
first, with an infinite order meaning a running maximum; the leading modulus
is factored out before any exponentiation so extreme orders neither overflow
nor underflow.  JSON interchange keeps the flat row-major coefficient list
with complex entries as [re, im] pairs.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .exponents import ExponentVector, ExtLike, ExtRational, as_ext, conjugate

__all__ = [
    "MultilinearForm",
    "evaluate",
    "mixed_norm",
    "lp_norm",
    "weak_norm",
    "minkowski_gap",
    "to_dict",
    "from_dict",
    "save_tensor",
    "load_tensor",
]


class MultilinearForm:
    """Immutable dense m-linear form with per-slot domain orders.

    ``domain_p`` defaults to the critical choice: every slot on l_m where m
    is the arity.  ``analytic_norm`` is optional closed-form operator norm
    metadata (on the stored domain); ``analytic_norm_derived`` marks values
    extrapolated beyond the directly argued cases.
    """

    __slots__ = ("coeffs", "domain_p", "analytic_norm", "analytic_norm_derived")

    def __init__(self, coeffs, domain_p=None, analytic_norm=None,
                 analytic_norm_derived=False):
        arr = np.asarray(coeffs)
        if arr.ndim < 1:
            raise ValueError("coefficients must carry at least one axis")
        if any(d < 1 for d in arr.shape):
            raise ValueError(f"all dimensions must be positive, got {arr.shape}")
        dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
        arr = np.array(arr, dtype=dtype, order="C", copy=True)
        arr.setflags(write=False)
        self.coeffs = arr
        if domain_p is None:
            domain_p = ExponentVector.uniform(arr.ndim, arr.ndim)
        elif not isinstance(domain_p, ExponentVector):
            domain_p = ExponentVector(domain_p)
        if len(domain_p) != arr.ndim:
            raise ValueError(
                f"domain orders: expected {arr.ndim} entries, got {len(domain_p)}"
            )
        for i, e in enumerate(domain_p, start=1):
            if e < 1:
                raise ValueError(f"slot {i} domain order {e} < 1; unit balls need p >= 1")
        self.domain_p = domain_p
        self.analytic_norm = None if analytic_norm is None else float(analytic_norm)
        self.analytic_norm_derived = bool(analytic_norm_derived)

    @property
    def arity(self) -> int:
        return self.coeffs.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self.coeffs.shape

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.coeffs)

    @property
    def scalar_field(self) -> str:
        return "complex" if self.is_complex else "real"

    def with_domain(self, domain_p) -> "MultilinearForm":
        """Same coefficients on different unit balls (analytic metadata drops,
        since a closed-form norm is tied to its domain)."""
        return MultilinearForm(self.coeffs, domain_p)

    def __repr__(self):
        shape = "x".join(map(str, self.dims))
        return f"MultilinearForm({self.scalar_field} {shape} on l_{self.domain_p})"


def evaluate(T: MultilinearForm, xs: Sequence) -> float | complex:
    """Contract the form against one vector per slot."""
    xs = list(xs)
    if len(xs) != T.arity:
        raise ValueError(f"expected {T.arity} vectors, got {len(xs)}")
    out = T.coeffs
    for k, x in enumerate(xs):
        x = np.asarray(x)
        if x.shape != (T.dims[k],):
            raise ValueError(f"slot {k + 1}: expected shape ({T.dims[k]},), got {x.shape}")
        out = np.tensordot(out, x, axes=(0, 0))
    return out.item()


def mixed_norm(T, orders) -> float:
    """Nested norm of the coefficient moduli, innermost axis first.

    ``orders[k-1]`` is applied along axis k, starting with the last axis; an
    infinite order takes the maximum of the level below.  Exact orders are
    converted to double precision once; the global maximum modulus is
    factored out first, which makes the result exactly homogeneous and keeps
    large orders stable.  Accepts a form or a bare array.
    """
    arr = T.coeffs if isinstance(T, MultilinearForm) else np.asarray(T)
    s = orders if isinstance(orders, ExponentVector) else ExponentVector(orders)
    if len(s) != arr.ndim:
        raise ValueError(f"expected {arr.ndim} orders for arity {arr.ndim}, got {len(s)}")
    work = np.abs(arr).astype(np.float64, copy=False)
    if work.size == 0:
        return 0.0
    scale = float(work.max())
    if scale == 0.0:
        return 0.0
    work = work / scale
    for order in reversed(s):
        if order.is_inf:
            work = work.max(axis=-1)
        else:
            e = float(order.fraction)
            work = np.power(work, e).sum(axis=-1) ** (1.0 / e)
    return float(work) * scale


def lp_norm(x, order: ExtLike) -> float:
    """l_p norm of a vector for any order > 0; inf means the maximum modulus."""
    p = as_ext(order)
    a = np.abs(np.asarray(x)).astype(np.float64, copy=False).ravel()
    if a.size == 0:
        return 0.0
    if p.is_inf:
        return float(a.max())
    e = float(p.fraction)
    if e <= 0:
        raise ValueError(f"norm order must be positive, got {p}")
    scale = float(a.max())
    if scale == 0.0:
        return 0.0
    return scale * float(np.power(a / scale, e).sum() ** (1.0 / e))


def weak_norm(vectors, p: ExtLike, space_q: ExtLike, *, restarts: int = 8,
              tol: float = 1e-12, max_iters: int = 200, seed: int = 0) -> float:
    """Weak-l_p norm of a finite sequence of vectors living in l_{space_q}^n.

    Equals the operator norm of the map c -> sum_k c_k x_k from the unit
    l_{p*} ball into l_{space_q}.  The l_2 -> l_2 case (p = 2 into q = 2) is
    a largest singular value and is computed exactly; every other case runs
    the seeded block ascent on the induced bilinear pairing, so the value is
    an attained lower bound.  ``vectors`` are the rows of a 2-d array.
    """
    X = np.asarray(vectors)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2:
        raise ValueError("pass the sequence as rows of a 2-d array")
    p = as_ext(p)
    if p < 1:
        raise ValueError(f"weak norms need p >= 1, got {p}")
    q = as_ext(space_q)
    if q < 1:
        raise ValueError(f"the container space needs q >= 1, got {q}")
    from .opnorm import ascent_norm, spectral_norm  # deferred: opnorm builds on this module

    if p == 2 and q == 2:
        return spectral_norm(X).value
    pairing = MultilinearForm(X, domain_p=(conjugate(p), conjugate(q)))
    return ascent_norm(pairing, restarts=restarts, tol=tol, max_iters=max_iters,
                       seed=seed).value


def minkowski_gap(matrix, p: ExtLike, q: ExtLike) -> float:
    """Columns-inside minus rows-inside mixed norm of a nonnegative matrix.

    For 0 < p <= q <= inf the value l_q(rows of l_p) never exceeds
    l_p(columns of l_q), so the gap is nonnegative up to rounding.
    """
    A = np.asarray(matrix, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    if (A < 0).any():
        raise ValueError("entries must be nonnegative")
    p, q = as_ext(p), as_ext(q)
    for name, e in (("p", p), ("q", q)):
        if not e.is_inf and e.fraction <= 0:
            raise ValueError(f"{name} must be positive, got {e}")
    if q < p:
        raise ValueError(f"needs p <= q, got p = {p} > q = {q}")
    if A.size == 0:
        return 0.0
    scale = float(A.max())
    if scale == 0.0:
        return 0.0
    W = A / scale

    def reduce(arr, order, axis):
        if order.is_inf:
            return arr.max(axis=axis)
        e = float(order.fraction)
        return np.power(arr, e).sum(axis=axis) ** (1.0 / e)

    left = float(reduce(reduce(W, p, 1), q, 0))
    right = float(reduce(reduce(W, q, 0), p, 0))
    return (right - left) * scale


def to_dict(T: MultilinearForm) -> dict:
    """Interchange dict: m, dims, scalar, flat row-major coeffs (complex as
    [re, im] pairs); non-default domain orders ride along as token strings."""
    flat = T.coeffs.ravel(order="C")
    if T.is_complex:
        coeffs = [[float(z.real), float(z.imag)] for z in flat]
    else:
        coeffs = [float(v) for v in flat]
    payload = {
        "m": T.arity,
        "dims": list(T.dims),
        "scalar": T.scalar_field,
        "coeffs": coeffs,
    }
    if T.domain_p != ExponentVector.uniform(T.arity, T.arity):
        payload["domain_p"] = [str(e) for e in T.domain_p]
    return payload


def from_dict(payload: dict) -> MultilinearForm:
    m = int(payload["m"])
    dims = tuple(int(d) for d in payload["dims"])
    if len(dims) != m:
        raise ValueError(f"dims has {len(dims)} entries but m = {m}")
    scalar = payload["scalar"]
    raw = payload["coeffs"]
    size = math.prod(dims)
    if len(raw) != size:
        raise ValueError(f"expected {size} coefficients, got {len(raw)}")
    if scalar == "real":
        arr = np.array(raw, dtype=np.float64).reshape(dims)
    elif scalar == "complex":
        arr = np.array([complex(re, im) for re, im in raw], dtype=np.complex128).reshape(dims)
    else:
        raise ValueError(f"unknown scalar field {scalar!r}")
    domain = payload.get("domain_p")
    return MultilinearForm(arr, domain_p=ExponentVector(domain) if domain else None)


def save_tensor(T: MultilinearForm, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(T), fh)
        fh.write("\n")


def load_tensor(path) -> MultilinearForm:
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh))
