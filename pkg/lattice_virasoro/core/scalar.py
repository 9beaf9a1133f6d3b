"""Exact scalars of the form sum_k c_k * pi^(k/2) with Gaussian-rational c_k.

Every kernel value, monomial value, correlation and commutator residual in the
package is a PiScalar, so identities are compared by exact equality. pi is
treated as transcendental: no relation between different powers is used.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Mapping, Optional, Set, Tuple, Union

from mpmath import mp

from .errors import ScalarError

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction]


def _fraction(value: Any) -> Fraction:
    if type(value) is Fraction:
        return value
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot convert {value!r} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``.

    Args:
        text: Rational literal, e.g. ``"1/2"`` or ``"-3"``

    Returns:
        Fraction: Parsed value

    Raises:
        ValueError: If the text is not an integer or an integer ratio
    """
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("Empty rational literal")
    try:
        if '/' in cleaned:
            num, den = cleaned.split('/', 1)
            return Fraction(int(num), int(den))
        return Fraction(int(cleaned))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid rational literal '{text}': {e}") from e


class GaussianRational:
    """An element re + i*im of Q[i]. Instances are never mutated."""

    __slots__ = ('re', 'im')

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = _fraction(re)
        self.im = _fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> 'GaussianRational':
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    def __add__(self, other: 'GaussianRational') -> 'GaussianRational':
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    def __sub__(self, other: 'GaussianRational') -> 'GaussianRational':
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __mul__(self, other: 'GaussianRational') -> 'GaussianRational':
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational._raw(-self.re, -self.im)

    def scale(self, factor: Fraction) -> 'GaussianRational':
        return GaussianRational._raw(self.re * factor, self.im * factor)

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> 'GaussianRational':
        n = self.norm()
        if n == 0:
            raise ScalarError("Division by zero Gaussian rational")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


ZERO_Q = GaussianRational()
ONE_Q = GaussianRational(1)
I_Q = GaussianRational(0, 1)


class PiScalar:
    """Canonical finite sum of c_k * pi^(k/2).

    Terms are keyed by the integer k (the exponent numerator over 2). Zero
    coefficients are never stored, so structural equality is value equality.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, Any]] = None):
        canonical: Dict[int, GaussianRational] = {}
        for k, coeff in (terms or {}).items():
            coeff = _coerce_coefficient(coeff)
            if coeff:
                canonical[int(k)] = coeff
        self._terms = canonical

    @classmethod
    def _wrap(cls, terms: Dict[int, GaussianRational]) -> 'PiScalar':
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def coerce(cls, value: Any) -> 'PiScalar':
        """Convert ints, Fractions, Gaussian rationals and PiScalars to a PiScalar."""
        if isinstance(value, PiScalar):
            return value
        coeff = _coerce_coefficient(value)
        return cls._wrap({0: coeff} if coeff else {})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[int, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, GaussianRational]]:
        return iter(sorted(self._terms.items(), reverse=True))

    def coefficient(self, k: int) -> GaussianRational:
        return self._terms.get(k, ZERO_Q)

    def pi_support(self) -> Set[int]:
        """Exponent numerators k carrying a nonzero coefficient."""
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self._terms.values())

    def is_imaginary(self) -> bool:
        return all(c.re == 0 for c in self._terms.values())

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def real_part(self) -> 'PiScalar':
        return PiScalar._wrap({k: GaussianRational._raw(c.re, Fraction(0))
                               for k, c in self._terms.items() if c.re})

    def imag_part(self) -> 'PiScalar':
        """Imaginary part as a real PiScalar."""
        return PiScalar._wrap({k: GaussianRational._raw(c.im, Fraction(0))
                               for k, c in self._terms.items() if c.im})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Any) -> 'PiScalar':
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for k, c in other._terms.items():
            current = result.get(k)
            if current is None:
                result[k] = c
            else:
                total = current + c
                if total:
                    result[k] = total
                else:
                    del result[k]
        return PiScalar._wrap(result)

    __radd__ = __add__

    def __neg__(self) -> 'PiScalar':
        return PiScalar._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Any) -> 'PiScalar':
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'PiScalar':
        return PiScalar.coerce(other) - self

    def __mul__(self, other: Any) -> 'PiScalar':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        result: Dict[int, GaussianRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                product = c1 * c2
                current = result.get(k)
                result[k] = product if current is None else current + product
        return PiScalar._wrap({k: c for k, c in result.items() if c})

    __rmul__ = __mul__

    def scale(self, factor: RationalLike) -> 'PiScalar':
        """Multiply by an exact rational."""
        factor = _fraction(factor)
        if factor == 0:
            return ZERO
        return PiScalar._wrap({k: c.scale(factor) for k, c in self._terms.items()})

    def inverse(self) -> 'PiScalar':
        """Inverse of a single-term scalar c * pi^(k/2).

        Raises:
            ScalarError: If the scalar is zero or has more than one term
        """
        if len(self._terms) != 1:
            raise ScalarError(f"Only single-term scalars are invertible, got {self}")
        (k, c), = self._terms.items()
        return PiScalar._wrap({-k: c.inverse()})

    def __truediv__(self, other: Any) -> 'PiScalar':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarError("Division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        return self * PiScalar.coerce(other).inverse()

    def __pow__(self, exponent: int) -> 'PiScalar':
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> 'PiScalar':
        return PiScalar._wrap({k: c.conjugate() for k, c in self._terms.items()})

    # -- comparison --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        try:
            other = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        # equal scalars hash equal, including against ints, Fractions and Gaussian rationals
        if not self._terms:
            return 0
        if len(self._terms) == 1 and 0 in self._terms:
            return hash(self._terms[0])
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- conversion --------------------------------------------------------

    def to_float(self, pi_digits: int = 30) -> complex:
        """Evaluate numerically, substituting pi with ``pi_digits`` digits.

        Args:
            pi_digits: Working precision in significant digits (at least 15)

        Returns:
            complex: Numeric value
        """
        if pi_digits < 15:
            raise ValueError(f"pi_digits must be at least 15, got {pi_digits}")
        with mp.workdps(pi_digits):
            root_pi = mp.sqrt(mp.pi)
            total = mp.mpc(0)
            for k, c in self._terms.items():
                coeff = mp.mpc(mp.mpf(c.re.numerator) / c.re.denominator,
                               mp.mpf(c.im.numerator) / c.im.denominator)
                total += coeff * root_pi ** k
            return complex(total)

    def to_json(self) -> List[Dict[str, Any]]:
        """Serialize as a list of ``{exp_num, re, im}`` records (exponent exp_num/2)."""
        return [
            {'exp_num': k, 're': _rational_str(c.re), 'im': _rational_str(c.im)}
            for k, c in self.items()
        ]

    @classmethod
    def from_json(cls, records: List[Mapping[str, Any]]) -> 'PiScalar':
        terms: Dict[int, GaussianRational] = {}
        for record in records:
            k = int(record['exp_num'])
            coeff = GaussianRational(parse_rational(str(record['re'])),
                                     parse_rational(str(record['im'])))
            terms[k] = terms.get(k, ZERO_Q) + coeff
        return cls(terms)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"PiScalar({format_scalar(self)})"


def _coerce_coefficient(value: Any) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._raw(Fraction(value), Fraction(0))
    if isinstance(value, complex):
        raise TypeError("Floating complex values are not exact scalars")
    raise TypeError(f"Cannot convert {value!r} to a PiScalar")


def _rational_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def gaussian(re: RationalLike = 0, im: RationalLike = 0) -> PiScalar:
    """The PiScalar re + i*im."""
    return PiScalar.coerce(GaussianRational(re, im))


def pi_power(k: int, coeff: Any = 1) -> PiScalar:
    """The PiScalar coeff * pi^(k/2)."""
    return PiScalar({k: _coerce_coefficient(coeff)})


ZERO = PiScalar()
ONE = PiScalar({0: ONE_Q})
I = PiScalar({0: I_Q})
PI = pi_power(2)
SQRT_PI = pi_power(1)
INV_PI = pi_power(-2)
INV_SQRT_PI = pi_power(-1)


def add(a: PiScalar, b: PiScalar) -> PiScalar:
    return PiScalar.coerce(a) + b


def mul(a: PiScalar, b: PiScalar) -> PiScalar:
    return PiScalar.coerce(a) * b


def conj(a: PiScalar) -> PiScalar:
    return PiScalar.coerce(a).conjugate()


def to_float(a: PiScalar, pi_digits: int = 30) -> complex:
    return PiScalar.coerce(a).to_float(pi_digits)


# -- formatting ---------------------------------------------------------------

def _pi_factor(k: int) -> str:
    n = abs(k)
    if n % 2 == 0:
        return 'pi' if n == 2 else f"pi^{n // 2}"
    return 'sqrt(pi)' if n == 1 else f"pi^({n}/2)"


def _coefficient_str(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        im = c.im
        if im == 1:
            return 'i'
        if im == -1:
            return '-i'
        if im.denominator == 1:
            return f"{im.numerator}i"
        if abs(im.numerator) == 1:
            return f"{'-' if im < 0 else ''}i/{im.denominator}"
        return f"{im.numerator}i/{im.denominator}"
    sign = '+' if c.im > 0 else '-'
    return f"({c.re}{sign}{_coefficient_str(GaussianRational(0, abs(c.im)))})"


def _term_str(k: int, c: GaussianRational) -> str:
    coeff = _coefficient_str(c)
    if k == 0:
        return coeff
    factor = _pi_factor(k)
    if k > 0:
        if coeff == '1':
            return factor
        if coeff == '-1':
            return f"-{factor}"
        return f"{coeff}*{factor}"
    if c.im == 0:
        num, den = c.re.numerator, c.re.denominator
        return f"{num}/{factor}" if den == 1 else f"{num}/({den}*{factor})"
    return f"{coeff}/{factor}"


def format_scalar(a: PiScalar) -> str:
    """Exact human-readable rendering, e.g. ``4 - 8/pi``, ``i/2`` or ``2i*pi``."""
    if a.is_zero():
        return '0'
    text = ''
    for k, c in a.items():
        term = _term_str(k, c)
        if not text:
            text = term
        elif term.startswith('-'):
            text += f" - {term[1:]}"
        else:
            text += f" + {term}"
    return text
