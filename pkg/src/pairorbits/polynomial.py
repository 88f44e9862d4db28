"""Exact integer polynomials in one variable ``q``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InexactDivision, ParseError


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in ascending degree, no trailing zeros (``()`` is zero)."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def geometric(cls, lo: int, hi: int, coeff: int = 1) -> IntPolynomial:
        """coeff * (q^lo + ... + q^hi); zero when hi < lo."""
        return cls(tuple(coeff if lo <= j else 0 for j in range(hi + 1)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coefficient(j) + other.coefficient(j) for j in range(n)))

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPolynomial:
        out = IntPolynomial((1,))
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, other: IntPolynomial | int) -> IntPolynomial:
        """Quotient by ``other``; raises InexactDivision on any remainder."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dlen = len(other.coeffs)
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - dlen + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            top = rem[k + dlen - 1]
            if top % lead:
                raise InexactDivision(f"{self} is not divisible by {other}")
            c = top // lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        if any(rem):
            raise InexactDivision(f"{self} is not divisible by {other}")
        return IntPolynomial(tuple(quot))

    def __floordiv__(self, other) -> IntPolynomial:
        return self.exact_div(other)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def ascending(self) -> str:
        """Coefficients ``c0 c1 ... cd`` separated by spaces (``0`` for zero)."""
        return " ".join(str(c) for c in self.coeffs) or "0"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if j == 0:
                body = str(a)
            else:
                var = "q" if j == 1 else f"q^{j}"
                body = var if a == 1 else f"{a}{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        return out + "".join(s + b for s, b in terms[1:])

    def __repr__(self) -> str:
        return f"IntPolynomial({self})"


Q = IntPolynomial.monomial(1)


def from_ascending(text: str | Sequence[int]) -> IntPolynomial:
    if isinstance(text, str):
        try:
            return IntPolynomial(tuple(int(t) for t in text.split()))
        except ValueError as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
    return IntPolynomial(tuple(text))
