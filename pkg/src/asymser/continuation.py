"""Numerical analytic continuation of the companion series from 0 to 1.

The companion function u is known only through a coefficient prefix at
center 0.  Its Taylor coefficients at center x + dx follow from those at x by

    b_k = sum_{n>=k} a_n * C(n, k) * dx**(n-k),

iterated along 0 -> dx -> 2*dx -> ... -> 1.  Two practical rules make the
iteration usable on a finite, possibly divergent-at-1 prefix:

* every available term is summed, and an output coefficient counts as
  *converged* only when the trailing terms of its sum have fallen below the
  threshold alpha -- i.e. the sum visibly settled before the data ran out;
* between steps only the leading block of converged coefficients is carried
  forward.  The non-converged tail is dominated by truncation garbage, and
  carrying it turns the whole iteration into a plain (divergent) partial sum.

The per-step count of carried coefficients therefore shrinks along the path;
the final state exposes how many leading coefficients are trustworthy.

All arithmetic runs in base-10 floating point (decimal.Decimal) at a
configurable number of significant digits, 19 by default.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

from .transform import AssociatedSeries

DEFAULT_DIGITS = 19

CoeffLike = Union[int, str, Fraction, Decimal]


class EmptyStateError(ValueError):
    """No coefficients left to continue."""


class NonIntegralPathError(ValueError):
    """The step size does not divide the unit path into whole steps."""


class InsufficientConvergedError(ValueError):
    """Requested more expansion coefficients than converged ones exist."""


def to_decimal(value: CoeffLike, digits: int = DEFAULT_DIGITS) -> Decimal:
    """Convert an exact value to Decimal, rounded to `digits` significant digits.

    Floats are rejected: binary artifacts must not enter the decimal pipeline.
    """
    if isinstance(value, float):
        raise TypeError("pass exact values (int, str, Fraction, Decimal), not float")
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(value, Fraction):
            return Decimal(value.numerator) / Decimal(value.denominator)
        return +Decimal(value)


def _exact_decimal(value: CoeffLike, what: str, exc=ValueError) -> Decimal:
    """Convert a step/threshold parameter, requiring exact representability."""
    if isinstance(value, float):
        raise TypeError(f"{what} must be exact (str, Decimal, Fraction, int), not float")
    if isinstance(value, Fraction):
        num, den = value.numerator, value.denominator
        two = five = 0
        d = den
        while d % 2 == 0:
            d //= 2
            two += 1
        while d % 5 == 0:
            d //= 5
            five += 1
        if d != 1:
            raise exc(f"{what} {value} has no terminating decimal representation")
        # num/den == num * 5**two * 2**five / 10**(two+five), exactly
        return Decimal(num * 5**two * 2**five).scaleb(-(two + five))
    return Decimal(value)


@dataclass(frozen=True)
class SchemeConfig:
    """Parameters of one continuation run.

    m       -- how many leading companion coefficients to feed in
    step    -- center increment dx; 1/dx must be a whole number so the path
               lands exactly on 1 (0.125, 0.25 and 0.5 all qualify)
    alpha   -- convergence threshold for trailing terms
    digits  -- significant decimal digits of working arithmetic
    """

    m: int
    step: Decimal
    alpha: Decimal
    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        object.__setattr__(
            self, "step", _exact_decimal(self.step, "step", NonIntegralPathError)
        )
        object.__setattr__(self, "alpha", _exact_decimal(self.alpha, "alpha"))
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.step <= 0:
            raise NonIntegralPathError("step must be positive")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        inv = Fraction(1) / Fraction(self.step)
        if inv.denominator != 1:
            raise NonIntegralPathError(f"1/step = {inv} is not an integer")

    @property
    def steps(self) -> int:
        return int(Fraction(1) / Fraction(self.step))


@dataclass(frozen=True)
class ContinuationState:
    """Coefficient vector of u at some center, with convergence bookkeeping.

    converged_count is the length of the leading block whose recentering sums
    settled below alpha (rather than simply running out of coefficients).
    """

    center: Decimal
    coeffs: tuple
    converged_count: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not 0 <= self.converged_count <= len(self.coeffs):
            raise ValueError("converged_count out of range")


@dataclass(frozen=True)
class ShiftedExpansion:
    """Coefficients of the expansion of f in powers of 1/(x - center + 1)."""

    coeffs: tuple
    center: object = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))


@dataclass(frozen=True)
class StepRecord:
    """Per-step diagnostics: new center, carried length, converged count."""

    center: Decimal
    carried: int
    converged_count: int


def recenter_step(
    state: ContinuationState,
    step: CoeffLike,
    alpha: CoeffLike,
    digits: int = DEFAULT_DIGITS,
) -> ContinuationState:
    """Advance the expansion center by `step`, summing all available terms.

    For each output index k the full sum over available n is taken; k is
    flagged converged when the trailing terms satisfy |term| < alpha:

    * no terms beyond n = k: the single diagonal term itself must be < alpha;
    * an all-zero tail, or a run of >= 2 trailing zero terms, converges
      (a finished polynomial tail); a *single* trailing zero is treated as a
      sampled zero of an oscillating sequence and the test falls back to the
      last nonzero term.

    converged_count is the length of the leading all-converged block.  The
    output keeps the full input length; callers decide what to carry forward.
    """
    if not state.coeffs:
        raise EmptyStateError("state has no coefficients")
    dx = _exact_decimal(step, "step")
    if dx <= 0:
        raise ValueError("step must be positive")
    thr = _exact_decimal(alpha, "alpha")
    with localcontext() as ctx:
        ctx.prec = digits
        coeffs = state.coeffs
        m = len(coeffs)
        dxpow = [Decimal(1)]
        for _ in range(m):
            dxpow.append(dxpow[-1] * dx)
        sums = []
        conv = []
        for k in range(m):
            comb = 1
            acc = +coeffs[k]
            last_nz = None
            zero_run = 0
            tail_len = m - 1 - k
            for n in range(k + 1, m):
                comb = comb * n // (n - k)
                if coeffs[n]:
                    t = coeffs[n] * comb * dxpow[n - k]
                    acc += t
                    last_nz = t
                    zero_run = 0
                else:
                    zero_run += 1
            sums.append(acc)
            if tail_len == 0:
                ok = abs(coeffs[k]) < thr
            elif last_nz is None or zero_run >= 2:
                ok = True
            else:
                ok = abs(last_nz) < thr
            conv.append(ok)
        prefix = 0
        while prefix < m and conv[prefix]:
            prefix += 1
        new_center = state.center + dx
    return ContinuationState(
        center=new_center, coeffs=tuple(sums), converged_count=prefix
    )


def continue_to_one_with_steps(
    assoc: AssociatedSeries, config: SchemeConfig
) -> tuple[ContinuationState, list[StepRecord]]:
    """Run the full 0 -> 1 continuation, returning per-step diagnostics.

    Between steps the state is truncated to its converged block; when nothing
    converged the full vector is kept instead, so that exactly representable
    inputs (polynomials with alpha below every term) continue losslessly.
    """
    if len(assoc.coeffs) < config.m:
        raise ValueError(
            f"need at least m={config.m} coefficients, got {len(assoc.coeffs)}"
        )
    coeffs = tuple(to_decimal(c, config.digits) for c in assoc.coeffs[: config.m])
    state = ContinuationState(
        center=Decimal(0), coeffs=coeffs, converged_count=len(coeffs)
    )
    records: list[StepRecord] = []
    nsteps = config.steps
    for i in range(nsteps):
        state = recenter_step(state, config.step, config.alpha, config.digits)
        if i < nsteps - 1:
            keep = state.converged_count if state.converged_count >= 1 else len(state.coeffs)
            state = ContinuationState(
                center=state.center,
                coeffs=state.coeffs[:keep],
                converged_count=min(state.converged_count, keep),
            )
        records.append(
            StepRecord(
                center=state.center,
                carried=len(state.coeffs),
                converged_count=state.converged_count,
            )
        )
    return state, records


def continue_to_one(assoc: AssociatedSeries, config: SchemeConfig) -> ContinuationState:
    """Continue the companion series from center 0 to center exactly 1."""
    state, _ = continue_to_one_with_steps(assoc, config)
    return state


def extract_shifted(
    state: ContinuationState, count: int, center: object = 0
) -> ShiftedExpansion:
    """Read off the negative-power expansion coefficients at infinity.

    The n-th coefficient of the expansion in powers of 1/(x - center + 1)
    equals (-1)**n times the n-th Taylor coefficient of u at 1.  Only the
    converged leading block may be extracted.
    """
    if state.center != 1:
        raise ValueError("state must be centered at 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    if count > state.converged_count:
        raise InsufficientConvergedError(
            f"requested {count} coefficients, only {state.converged_count} converged"
        )
    coeffs = tuple(
        # copy_negate is exact; unary minus would round in the ambient context
        c if n % 2 == 0 else c.copy_negate()
        for n, c in enumerate(state.coeffs[:count])
    )
    return ShiftedExpansion(coeffs=coeffs, center=center)
