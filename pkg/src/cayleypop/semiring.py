"""Arithmetic of R+Z4, the group semiring (R+Z4)G and the group algebra CG.

``PosQuad`` holds four nonnegative reals ``(b0, b1, b2, b3)``, the coefficients
of ``1, xi, xi^2, xi^3`` where ``xi`` generates Z4. The quotient map ``chi``
sends ``xi -> i``; its kernel is generated by ``1 + xi^2``. ``section`` is a
right inverse of ``chi`` that is R+-linear but not multiplicative.

Complex numbers are Python ``complex``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .exceptions import DomainError, GroupMismatchError
from .groups import CyclicGroup, FiniteGroup, ProductGroup, group_from_json

__all__ = [
    "PosQuad",
    "SemiringElement",
    "AlgebraElement",
    "ALGEBRA_PRUNE_TOL",
    "XI_GROUP",
    "quad_add",
    "quad_mul",
    "quad_scale",
    "chi_quad",
    "section_scalar",
    "elem_add",
    "elem_mul",
    "elem_scale",
    "star",
    "trace",
    "inner_product",
    "chi_elem",
    "section_elem",
    "decorated_group",
    "lift_to_decorated",
    "lower_from_decorated",
    "polynomial",
    "element_to_json",
    "element_from_json",
]

ALGEBRA_PRUNE_TOL = 1e-15
XI_GROUP = CyclicGroup(4)


@dataclass(frozen=True)
class PosQuad:
    """Element of R+Z4: ``sum_j beta[j] * xi**j`` with every ``beta[j] >= 0``."""

    beta: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        beta = tuple(float(b) for b in self.beta)
        if len(beta) != 4:
            raise ValueError(f"PosQuad needs exactly four coefficients, got {len(beta)}")
        if any(not b >= 0 for b in beta):
            raise DomainError(f"PosQuad coefficients must be nonnegative: {beta}")
        object.__setattr__(self, "beta", beta)

    @classmethod
    def xi(cls, power: int = 1, weight: float = 1.0) -> "PosQuad":
        beta = [0.0] * 4
        beta[power % 4] = weight
        return cls(tuple(beta))

    @classmethod
    def scalar(cls, r: float) -> "PosQuad":
        return cls((r, 0.0, 0.0, 0.0))

    def is_zero(self) -> bool:
        return not any(self.beta)

    def is_scalar(self) -> bool:
        return not any(self.beta[1:])

    def __add__(self, other: "PosQuad") -> "PosQuad":
        if not isinstance(other, PosQuad):
            return NotImplemented
        return PosQuad(tuple(a + b for a, b in zip(self.beta, other.beta)))

    def __mul__(self, other):
        if isinstance(other, PosQuad):
            p, q = self.beta, other.beta
            out = [0.0] * 4
            for i in range(4):
                if p[i]:
                    for j in range(4):
                        out[(i + j) % 4] += p[i] * q[j]
            return PosQuad(tuple(out))
        if isinstance(other, Number) and not isinstance(other, complex):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, r: float) -> "PosQuad":
        if r < 0:
            raise DomainError(f"cannot scale R+Z4 by a negative number ({r})")
        return PosQuad(tuple(r * b for b in self.beta))

    def chi(self) -> complex:
        b0, b1, b2, b3 = self.beta
        return complex(b0 - b2, b1 - b3)

    def __repr__(self):
        return f"PosQuad{self.beta}"


ZERO_QUAD = PosQuad()


def quad_add(a: PosQuad, b: PosQuad) -> PosQuad:
    return a + b


def quad_mul(a: PosQuad, b: PosQuad) -> PosQuad:
    return a * b


def quad_scale(r: float, a: PosQuad) -> PosQuad:
    return a.scale(r)


def chi_quad(a: PosQuad) -> complex:
    """The quotient map: ``(b0 - b2) + i (b1 - b3)``."""
    return a.chi()


def section_scalar(z: complex) -> PosQuad:
    """Place ``|Re z|`` on ``xi^0`` or ``xi^2`` and ``|Im z|`` on ``xi^1`` or ``xi^3`` by sign."""
    z = complex(z)
    a, b = z.real, z.imag
    beta = [0.0] * 4
    beta[0 if a >= 0 else 2] = abs(a)
    beta[1 if b >= 0 else 3] = abs(b)
    return PosQuad(tuple(beta))


class _GroupSum:
    """Finite formal sum ``sum_g c_g g`` over a fixed finite group, kept pruned."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Mapping[int, object] | Iterable = ()):
        self.group = group
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean = {}
        for g, c in items:
            g = group.check(int(g))
            c = self._coerce(c)
            clean[g] = self._add_coeff(clean[g], c) if g in clean else c
        self._coeffs = {g: c for g, c in sorted(clean.items()) if not self._is_zero(c)}

    # coefficient arithmetic, provided by subclasses
    @staticmethod
    def _coerce(c):
        raise NotImplementedError

    @staticmethod
    def _is_zero(c) -> bool:
        raise NotImplementedError

    @staticmethod
    def _add_coeff(a, b):
        return a + b

    @staticmethod
    def _mul_coeff(a, b):
        return a * b

    @classmethod
    def zero(cls, group: FiniteGroup):
        return cls(group)

    @classmethod
    def basis(cls, group: FiniteGroup, g: int, coeff=None):
        return cls(group, {g: cls._unit() if coeff is None else coeff})

    @classmethod
    def identity(cls, group: FiniteGroup):
        return cls.basis(group, group.identity)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def coeff(self, g: int):
        return self._coeffs.get(g, self._zero_coeff())

    def terms(self) -> Iterator[tuple[int, object]]:
        return iter(self._coeffs.items())

    def support(self) -> list[int]:
        return list(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    __hash__ = None

    def _check_group(self, other: "_GroupSum") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.group != other.group:
            raise GroupMismatchError(f"elements live over different groups: {self.group!r} vs {other.group!r}")

    def __add__(self, other):
        if not isinstance(other, _GroupSum):
            return NotImplemented
        self._check_group(other)
        out = dict(self._coeffs)
        for g, c in other.terms():
            out[g] = self._add_coeff(out[g], c) if g in out else c
        return type(self)(self.group, out)

    def __mul__(self, other):
        if isinstance(other, _GroupSum):
            self._check_group(other)
            G = self.group
            out: dict = {}
            for g1, a1 in self.terms():
                for g2, a2 in other.terms():
                    g = G.multiply(g1, g2)
                    c = self._mul_coeff(a1, a2)
                    out[g] = self._add_coeff(out[g], c) if g in out else c
            return type(self)(G, out)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, _GroupSum):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = type(self).identity(self.group)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, r):
        raise NotImplementedError

    def __repr__(self):
        body = " + ".join(f"{c!r}*[{self.group.label(g)}]" for g, c in self.terms()) or "0"
        return f"{type(self).__name__}({self.group!r}: {body})"


class SemiringElement(_GroupSum):
    """Element of (R+Z4)G, coefficients are :class:`PosQuad`."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, PosQuad):
            return c
        if isinstance(c, Number) and not isinstance(c, complex):
            return PosQuad.scalar(c)
        if isinstance(c, (tuple, list)):
            return PosQuad(tuple(c))
        raise TypeError(f"cannot use {c!r} as an R+Z4 coefficient")

    @staticmethod
    def _is_zero(c) -> bool:
        return c.is_zero()

    @staticmethod
    def _zero_coeff():
        return ZERO_QUAD

    @staticmethod
    def _unit():
        return PosQuad.scalar(1.0)

    def scale(self, r) -> "SemiringElement":
        """Multiply by a nonnegative real or by an element of R+Z4."""
        if isinstance(r, PosQuad):
            return SemiringElement(self.group, {g: r * c for g, c in self.terms()})
        if isinstance(r, Number) and not isinstance(r, complex):
            if r < 0:
                raise DomainError(f"cannot scale by a negative number ({r})")
            return SemiringElement(self.group, {g: c.scale(r) for g, c in self.terms()})
        return NotImplemented

    def is_scalar(self) -> bool:
        """True when every coefficient sits on ``xi^0``, i.e. the element is in R+G."""
        return all(c.is_scalar() for _, c in self.terms())

    def total_weight(self) -> float:
        return math.fsum(sum(c.beta) for _, c in self.terms())

    def star(self) -> "SemiringElement":
        """``xi^j g -> xi^-j g^-1``; the involution induced by inversion on Z4 x G."""
        G = self.group
        return SemiringElement(
            G, {G.inverse(g): PosQuad((b[0], b[3], b[2], b[1])) for g, c in self.terms() for b in [c.beta]}
        )


class AlgebraElement(_GroupSum):
    """Element of the complex group algebra CG."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Number):
            return complex(c)
        raise TypeError(f"cannot use {c!r} as a complex coefficient")

    @staticmethod
    def _is_zero(c) -> bool:
        return abs(c) <= ALGEBRA_PRUNE_TOL

    @staticmethod
    def _zero_coeff():
        return 0j

    @staticmethod
    def _unit():
        return 1 + 0j

    def scale(self, r) -> "AlgebraElement":
        if not isinstance(r, Number):
            return NotImplemented
        r = complex(r)
        return AlgebraElement(self.group, {g: r * c for g, c in self.terms()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def star(self) -> "AlgebraElement":
        G = self.group
        return AlgebraElement(G, {G.inverse(g): c.conjugate() for g, c in self.terms()})

    def trace(self) -> complex:
        return self.coeff(self.group.identity)

    def inner(self, other: "AlgebraElement") -> complex:
        self._check_group(other)
        return sum((c.conjugate() * other.coeff(g) for g, c in self.terms()), 0j)

    def is_self_adjoint(self, tol: float = 0.0) -> bool:
        diff = self - self.star()
        return all(abs(c) <= tol for _, c in diff.terms())

    def max_abs_diff(self, other: "AlgebraElement") -> float:
        return max((abs(c) for _, c in (self - other).terms()), default=0.0)


Element = Union[SemiringElement, AlgebraElement]


def elem_add(a: Element, b: Element) -> Element:
    return a + b


def elem_mul(a: Element, b: Element) -> Element:
    return a * b


def elem_scale(r, a: Element) -> Element:
    return a.scale(r)


def star(q: Element) -> Element:
    return q.star()


def trace(q: AlgebraElement) -> complex:
    return q.trace()


def inner_product(q: AlgebraElement, q2: AlgebraElement) -> complex:
    """``<q, q2> = T(q* q2) = sum_g conj(q_g) q2_g``."""
    return q.inner(q2)


def chi_elem(q: SemiringElement) -> AlgebraElement:
    return AlgebraElement(q.group, {g: c.chi() for g, c in q.terms()})


def section_elem(q: AlgebraElement) -> SemiringElement:
    return SemiringElement(q.group, {g: section_scalar(c) for g, c in q.terms()})


def decorated_group(G: FiniteGroup) -> ProductGroup:
    """``Z4 x G`` with the Z4 factor on the left."""
    return ProductGroup(XI_GROUP, G)


def _base_of_decorated(K: FiniteGroup) -> FiniteGroup:
    if not isinstance(K, ProductGroup) or K.left != XI_GROUP:
        raise DomainError(f"{K!r} is not of the form Z4 x G")
    return K.right


def lift_to_decorated(q: SemiringElement) -> SemiringElement:
    """Identify (R+Z4)G with R+(Z4 x G): ``beta_j`` at ``g`` becomes a real weight at ``(j, g)``."""
    K = decorated_group(q.group)
    out = {}
    for g, c in q.terms():
        for j, b in enumerate(c.beta):
            if b:
                out[K.compose(j, g)] = b
    return SemiringElement(K, out)


def lower_from_decorated(q: SemiringElement) -> SemiringElement:
    """Inverse of :func:`lift_to_decorated`."""
    G = _base_of_decorated(q.group)
    if not q.is_scalar():
        raise DomainError("decorated element must have real (xi^0) coefficients")
    acc: dict[int, list[float]] = {}
    for h, c in q.terms():
        j, g = q.group.decompose(h)
        acc.setdefault(g, [0.0] * 4)[j] += c.beta[0]
    return SemiringElement(G, {g: PosQuad(tuple(b)) for g, b in acc.items()})


def polynomial(coeffs: Sequence[complex], q: Element) -> Element:
    """Evaluate ``sum_k coeffs[k] q^k`` by Horner's rule.

    On the semiring side each complex coefficient is carried over by the section.
    """
    G = q.group
    if isinstance(q, SemiringElement):
        lift = lambda c: SemiringElement.basis(G, G.identity, section_scalar(c))
    else:
        lift = lambda c: AlgebraElement.basis(G, G.identity, c)
    result = type(q).zero(G)
    for c in reversed(list(coeffs)):
        result = result * q + lift(c)
    return result


def _element_id_to_json(G: FiniteGroup, g: int):
    if isinstance(G, ProductGroup):
        a, b = G.decompose(g)
        return [_element_id_to_json(G.left, a), _element_id_to_json(G.right, b)]
    return g


def _element_id_from_json(G: FiniteGroup, data) -> int:
    if isinstance(data, list):
        if not isinstance(G, ProductGroup):
            raise ValueError(f"tuple element {data} given for non-product group {G!r}")
        return G.compose(_element_id_from_json(G.left, data[0]), _element_id_from_json(G.right, data[1]))
    return int(data)


def element_to_json(q: Element) -> dict:
    terms = []
    for g, c in q.terms():
        coeff = list(c.beta) if isinstance(c, PosQuad) else {"re": c.real, "im": c.imag}
        terms.append({"g": _element_id_to_json(q.group, g), "coeff": coeff})
    return {"group": q.group.to_json(), "terms": terms}


def element_from_json(data: dict) -> Element:
    G = group_from_json(data["group"])
    terms = data["terms"]
    if terms and isinstance(terms[0]["coeff"], dict):
        return AlgebraElement(
            G, [(_element_id_from_json(G, t["g"]), complex(t["coeff"]["re"], t["coeff"]["im"])) for t in terms]
        )
    return SemiringElement(G, [(_element_id_from_json(G, t["g"]), PosQuad(tuple(t["coeff"]))) for t in terms])
