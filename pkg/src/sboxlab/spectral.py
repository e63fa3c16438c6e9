"""Walsh spectra, linearity measures, algebraic normal forms and degree spectra.

The Walsh coefficient convention is the signed correlation sum
W[a][b] = sum_x (-1)^(<b, f(x)> + <a, x>), so |W| <= 2^m and Parseval gives
sum_a W[a][b]^2 = 2^(2m) for every output mask b.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import SBox, derivative

#: degree reported for the constant-zero function (no monomials at all)
NEG_INFINITY_DEGREE = float("-inf")


@dataclass(frozen=True)
class BooleanComponent:
    """Truth table of a single-output function F_2^m -> F_2."""

    m: int
    truth: tuple[int, ...]

    def __post_init__(self):
        if len(self.truth) != 1 << self.m:
            raise ValueError(f"truth table has {len(self.truth)} entries, "
                             f"expected {1 << self.m}")
        if any(bit not in (0, 1) for bit in self.truth):
            raise ValueError("truth table entries must be 0 or 1")

    @property
    def balanced(self) -> bool:
        return sum(self.truth) == 1 << (self.m - 1)


@dataclass(frozen=True)
class WalshSpectrum:
    """Full table of Walsh coefficients, indexed w[a][b]."""

    m: int
    w: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return 1 << self.m


@dataclass(frozen=True)
class ANF:
    """Algebraic normal form: coefficients[s] is the coefficient of the
    monomial prod_{i in s} x_i."""

    m: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int | float:
        degs = [s.bit_count() for s, c in enumerate(self.coefficients) if c]
        return max(degs) if degs else NEG_INFINITY_DEGREE

    def truth_table(self) -> BooleanComponent:
        """Evaluate the polynomial everywhere (the transform is an involution)."""
        return BooleanComponent(self.m, mobius_transform(self.coefficients))


def component(f: SBox, v: int) -> BooleanComponent:
    """The component <f, v>: x -> parity(f(x) & v)."""
    if not 0 <= v < f.size:
        raise ValueError(f"mask v={v} outside [0, {f.size})")
    return BooleanComponent(f.m, tuple((f.table[x] & v).bit_count() & 1
                                       for x in range(f.size)))


def fwht(values) -> list[int]:
    """In-place-style fast Walsh-Hadamard transform; input length must be 2^k."""
    out = list(values)
    n = len(out)
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    h = 1
    while h < n:
        for i in range(0, n, h * 2):
            for j in range(i, i + h):
                a, b = out[j], out[j + h]
                out[j] = a + b
                out[j + h] = a - b
        h *= 2
    return out


def walsh_spectrum(f: SBox) -> WalshSpectrum:
    """Walsh coefficients of every component, one FWHT per output mask b."""
    n = f.size
    columns = []
    for b in range(n):
        signs = [1 - 2 * ((f.table[x] & b).bit_count() & 1) for x in range(n)]
        columns.append(fwht(signs))
    rows = tuple(tuple(columns[b][a] for b in range(n)) for a in range(n))
    return WalshSpectrum(f.m, rows)


def lin(f: SBox) -> int:
    """Largest |Walsh coefficient| over all input masks and nonzero output masks."""
    spec = walsh_spectrum(f).w
    return max(abs(spec[a][b]) for a in range(f.size) for b in range(1, f.size))


def lin1(f: SBox) -> int:
    """Largest |Walsh coefficient| over weight-1 input and output masks."""
    spec = walsh_spectrum(f).w
    singles = [1 << i for i in range(f.m)]
    return max(abs(spec[a][b]) for a in singles for b in singles)


def mobius_transform(values) -> tuple[int, ...]:
    """Binary Mobius transform (truth table <-> ANF coefficients, self-inverse)."""
    out = list(values)
    n = len(out)
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    step = 1
    while step < n:
        for x in range(n):
            if x & step:
                out[x] ^= out[x ^ step]
        step *= 2
    return tuple(out)


def anf(c: BooleanComponent) -> ANF:
    """Algebraic normal form of a single-output function."""
    return ANF(c.m, mobius_transform(c.truth))


def component_degree(f: SBox, v: int) -> int | float:
    """Algebraic degree of the component <f, v>, v != 0."""
    if v == 0:
        raise ValueError("mask v=0 selects the zero component; use a nonzero mask")
    return anf(component(f, v)).degree


def degree_spectrum(f: SBox) -> dict:
    """Map degree -> number of nonzero masks v with deg(<f, v>) equal to it.

    Values sum to 2^m - 1; constant-zero components land in the
    NEG_INFINITY_DEGREE bucket (never the case for bijective f).
    """
    spectrum: dict = {}
    for v in range(1, f.size):
        d = component_degree(f, v)
        spectrum[d] = spectrum.get(d, 0) + 1
    return spectrum


def algebraic_degree(f: SBox) -> int | float:
    """Largest component degree over nonzero masks."""
    return max(component_degree(f, v) for v in range(1, f.size))


def n_hat(f: SBox) -> int:
    """Largest (over nonzero u) number of nonzero masks v whose component
    <f_u, v> of the derivative is constant (constant 0 or constant 1).

    A component is constant exactly when v is orthogonal to the span of
    {f_u(x) ^ f_u(0)}, so the count per direction is 2^(m - rank) - 1.
    """
    best = 0
    for u in range(1, f.size):
        deriv = derivative(f, u)
        base = deriv[0]
        basis = [0] * f.m
        rank = 0
        for value in deriv:
            value ^= base
            while value:
                top = value.bit_length() - 1
                if basis[top] == 0:
                    basis[top] = value
                    rank += 1
                    break
                value ^= basis[top]
        best = max(best, (1 << (f.m - rank)) - 1)
    return best
