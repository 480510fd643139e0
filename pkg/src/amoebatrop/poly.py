"""Sparse Laurent polynomials over the complex numbers.

Two representations:

  LaurentPolynomial   finite map {exponent vector m -> complex a_m}
  LaurentFamily       finite map {m -> Laurent polynomial in a parameter t},
                      i.e. a one-parameter family that can be specialized at
                      any t = a != 0

Coefficients are double-precision complex.  Canonical form never stores a
zero coefficient; cancellation is only recognised when the arithmetic
result is exactly zero, which is the right notion for the small-integer
inputs this library targets.  Support is kept sorted lexicographically so
serialization and hashing are deterministic.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .tropical import TropicalPolynomial

ExponentVector = tuple[int, ...]


def _compensated_sum(values: Iterable[complex]) -> complex:
    # Neumaier compensated summation on real and imaginary streams.
    sr = si = 0.0
    cr = ci = 0.0
    for v in values:
        x, y = v.real, v.imag
        t = sr + x
        cr += (sr - t) + x if abs(sr) >= abs(x) else (x - t) + sr
        sr = t
        t = si + y
        ci += (si - t) + y if abs(si) >= abs(y) else (y - t) + si
        si = t
    return complex(sr + cr, si + ci)


def _as_exponent(expo, dim: int) -> ExponentVector:
    key = tuple(int(e) for e in expo)
    if len(key) != dim:
        raise ValueError(f"exponent {tuple(expo)!r} has wrong dimension (expected {dim})")
    return key


def _power(base: complex, k: int) -> complex:
    return base ** k


class LaurentPolynomial:
    """Finitely supported sum of complex multiples of z^m, m in Z^n."""

    __slots__ = ("_dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[ExponentVector, complex]):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        clean: dict[ExponentVector, complex] = {}
        for expo, coeff in terms.items():
            key = _as_exponent(expo, dim)
            c = complex(coeff)
            if c != 0:
                clean[key] = c
        self._dim = dim
        self._terms = {k: clean[k] for k in sorted(clean)}

    # -- basic structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self) -> dict[ExponentVector, complex]:
        return dict(self._terms)

    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Max of m_1 + ... + m_n over the support (nonnegative supports)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self._terms)

    def coefficient_scale(self) -> float:
        """Sum of coefficient moduli; 0 for the zero polynomial."""
        return sum(abs(c) for c in self._terms.values())

    # -- arithmetic ---------------------------------------------------------

    def evaluate(self, z: Sequence) -> complex:
        """Evaluate at a point of the complex torus (all coordinates nonzero).

        The sum over monomials uses compensated summation.
        """
        zs = [complex(v) for v in z]
        if len(zs) != self._dim:
            raise ValueError(f"point has dimension {len(zs)}, expected {self._dim}")
        if any(v == 0 for v in zs):
            raise ValueError("evaluation requires all coordinates nonzero")
        return _compensated_sum(
            c * _monomial(zs, m) for m, c in self._terms.items()
        )

    def __mul__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other._dim != self._dim:
            raise ValueError("dimension mismatch in product")
        acc: dict[ExponentVector, complex] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = acc.get(m, 0j) + c1 * c2
        return LaurentPolynomial(self._dim, acc)

    def scaled(self, factor: complex) -> "LaurentPolynomial":
        return LaurentPolynomial(self._dim, {m: factor * c for m, c in self._terms.items()})

    # -- tropical shadow ----------------------------------------------------

    def trivial_tropicalization(self) -> TropicalPolynomial:
        """Support with all coefficients 0 (tropicalization for the trivial norm)."""
        if self.is_zero():
            raise ValueError("zero polynomial has no tropicalization")
        return TropicalPolynomial(self._dim, {m: 0.0 for m in self._terms})

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._dim, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {c}" for m, c in self._terms.items())
        return f"LaurentPolynomial(dim={self._dim}, {{{body}}})"


def _monomial(zs, m) -> complex:
    out = 1 + 0j
    for base, k in zip(zs, m):
        if k:
            out *= _power(base, k)
    return out


class LaurentFamily:
    """Laurent polynomial whose coefficients are Laurent polynomials in t."""

    __slots__ = ("_dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[ExponentVector, Mapping[int, complex]]):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        clean: dict[ExponentVector, dict[int, complex]] = {}
        for expo, inner in terms.items():
            key = _as_exponent(expo, dim)
            inner_clean = {}
            for k, coeff in inner.items():
                c = complex(coeff)
                if c != 0:
                    inner_clean[int(k)] = c
            if inner_clean:
                clean[key] = {k: inner_clean[k] for k in sorted(inner_clean)}
        self._dim = dim
        self._terms = {k: clean[k] for k in sorted(clean)}

    @classmethod
    def constant(cls, poly: LaurentPolynomial) -> "LaurentFamily":
        """Embed a t-free polynomial as a constant family."""
        return cls(poly.dim, {m: {0: c} for m, c in poly.terms.items()})

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def terms(self) -> dict[ExponentVector, dict[int, complex]]:
        return {m: dict(inner) for m, inner in self._terms.items()}

    def support(self) -> tuple[ExponentVector, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant_in_t(self) -> bool:
        return all(set(inner) == {0} for inner in self._terms.values())

    def specialize(self, a: complex) -> LaurentPolynomial:
        """Substitute t = a (a != 0); negative t-powers make a = 0 meaningless."""
        a = complex(a)
        if a == 0:
            raise ValueError("cannot specialize at t = 0 (negative t-powers)")
        coeffs = {}
        for m, inner in self._terms.items():
            coeffs[m] = _compensated_sum(c * _power(a, k) for k, c in inner.items())
        return LaurentPolynomial(self._dim, coeffs)

    def __mul__(self, other) -> "LaurentFamily":
        if not isinstance(other, LaurentFamily):
            return NotImplemented
        if other._dim != self._dim:
            raise ValueError("dimension mismatch in product")
        acc: dict[ExponentVector, dict[int, complex]] = {}
        for m1, inner1 in self._terms.items():
            for m2, inner2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                bucket = acc.setdefault(m, {})
                for k1, c1 in inner1.items():
                    for k2, c2 in inner2.items():
                        k = k1 + k2
                        bucket[k] = bucket.get(k, 0j) + c1 * c2
        return LaurentFamily(self._dim, acc)

    def t_valuation(self) -> TropicalPolynomial:
        """Per-monomial t-adic order: c_m = min t-exponent of the coefficient of z^m.

        With |t| = e^{-1} this is exactly -log of the coefficient norm, so
        the result is the tropicalization of the family over Laurent series.
        """
        if self.is_zero():
            raise ValueError("zero polynomial has no t-adic valuation")
        return TropicalPolynomial(self._dim, {m: float(min(inner)) for m, inner in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentFamily):
            return NotImplemented
        return self._dim == other._dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._dim, tuple((m, tuple(inner.items())) for m, inner in self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{m}: {inner}" for m, inner in self._terms.items())
        return f"LaurentFamily(dim={self._dim}, {{{body}}})"


# ---------------------------------------------------------------------------
# polynomial exchange documents
# ---------------------------------------------------------------------------
#
# {"dim": n,
#  "terms": [{"exponent": [m1, ..., mn], "coeff": {"re": x, "im": y}}, ...]}
#
# Family coefficients instead carry {"t_terms": [{"k": k, "re": x, "im": y}]}.
# Floats round-trip bit-exactly because json emits shortest-repr decimals.

def polynomial_to_document(poly) -> dict:
    if isinstance(poly, LaurentPolynomial):
        terms = [
            {"exponent": list(m), "coeff": {"re": c.real, "im": c.imag}}
            for m, c in poly.terms.items()
        ]
    elif isinstance(poly, LaurentFamily):
        terms = [
            {"exponent": list(m),
             "coeff": {"t_terms": [{"k": k, "re": c.real, "im": c.imag}
                                   for k, c in inner.items()]}}
            for m, inner in poly.terms.items()
        ]
    else:
        raise TypeError(f"unsupported polynomial type {type(poly)!r}")
    return {"dim": poly.dim, "terms": terms}


def polynomial_from_document(doc: Mapping):
    try:
        dim = int(doc["dim"])
        records = doc["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial document: {exc}") from exc
    plain: dict[ExponentVector, complex] = {}
    family: dict[ExponentVector, dict[int, complex]] = {}
    has_family = False
    for rec in records:
        expo = _as_exponent(rec["exponent"], dim)
        coeff = rec["coeff"]
        if "t_terms" in coeff:
            has_family = True
            family[expo] = {int(t["k"]): complex(float(t["re"]), float(t["im"]))
                            for t in coeff["t_terms"]}
        else:
            value = complex(float(coeff["re"]), float(coeff["im"]))
            plain[expo] = value
            family[expo] = {0: value}
    if has_family:
        return LaurentFamily(dim, family)
    return LaurentPolynomial(dim, plain)


def save_polynomial(path, poly) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(polynomial_to_document(poly), fh, indent=1)
        fh.write("\n")


def load_polynomial(path):
    """Read a polynomial document; parse errors carry line/column info."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"{path}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return polynomial_from_document(doc)
