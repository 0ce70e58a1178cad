"""Base rings: the integers, the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from exactcat import kernels


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class BaseRing:
    """One of Z, Q or F_p.

    Scalars are plain ``int`` for Z and F_p (reduced into ``[0, p)``) and
    ``fractions.Fraction`` for Q.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime modulus, got {self.p!r}")
            if self.p >= 2**31:
                raise ValueError("prime modulus must be below 2**31")
        elif self.p is not None:
            raise ValueError("modulus only allowed for F_p")

    @classmethod
    def integers(cls) -> BaseRing:
        return cls("Z")

    @classmethod
    def rationals(cls) -> BaseRing:
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> BaseRing:
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> BaseRing:
        """Parse ``Z``, ``Q``, ``Fp 5`` or ``F5``."""
        parts = text.split()
        if not parts:
            raise ValueError("empty ring specification")
        head = parts[0]
        if head in ("Z", "ZZ") and len(parts) == 1:
            return cls.integers()
        if head in ("Q", "QQ") and len(parts) == 1:
            return cls.rationals()
        if head == "Fp" and len(parts) == 2:
            return cls.prime_field(int(parts[1]))
        if head.startswith("F") and head[1:].isdigit() and len(parts) == 1:
            return cls.prime_field(int(head[1:]))
        raise ValueError(f"bad ring specification {text!r}")

    def __str__(self):
        return f"Fp {self.p}" if self.kind == "Fp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce ``x`` into a normalized scalar of this ring."""
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            return int(x)
        if self.kind == "Fp":
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def parse_scalar(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def format_scalar(self, x) -> str:
        if self.kind == "Q":
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(x)

    def reduce(self, x, modulus: int = 0):
        """Normalize ``x``; for Z also reduce modulo a torsion order."""
        if self.kind == "Fp":
            return x % self.p
        if modulus and self.kind == "Z":
            return x % modulus
        return x

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return bool(x)

    def inverse(self, x):
        if self.kind == "Z":
            if x not in (1, -1):
                raise ZeroDivisionError(f"{x} is not a unit in Z")
            return x
        if self.kind == "Fp":
            return pow(x, self.p - 2, self.p)
        return 1 / x

    def divides(self, a, b) -> bool:
        """Whether ``a`` divides ``b``."""
        if not a:
            return not b
        if self.kind == "Z":
            return b % a == 0
        return True

    def exact_quotient(self, b, a):
        """``b / a`` assuming ``a`` divides ``b``."""
        if self.kind == "Z":
            return b // a
        if self.kind == "Fp":
            return b * pow(a, self.p - 2, self.p) % self.p
        return b / a

    def smith(self, rows, m, n):
        """Dispatch to the elimination kernel for this ring."""
        if self.kind == "Z":
            return kernels.smith_int(rows, m, n)
        if self.kind == "Fp":
            return kernels.smith_mod_p(rows, m, n, self.p)
        return kernels.smith_field(rows, m, n, Fraction(0), Fraction(1))

    def elements(self, modulus: int = 0, box: int = 2):
        """Enumerate scalars: all of F_p or Z/modulus, else a symmetric box."""
        if self.kind == "Fp":
            return list(range(self.p))
        if self.kind == "Z" and modulus:
            return list(range(modulus))
        vals = [0]
        for k in range(1, box + 1):
            vals += [k, -k]
        return [self(v) for v in vals]


ZZ = BaseRing.integers()
QQ = BaseRing.rationals()


def GF(p: int) -> BaseRing:
    return BaseRing.prime_field(p)
