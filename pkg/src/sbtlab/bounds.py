"""Closed-form distance bounds and exact values."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .errors import DomainError, ParityError
from .perm_core import ExtendedPermutation, Permutation, cycle_decomposition, sigma_pi_inv


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def three_norm(alpha: Permutation) -> int:
    """Minimum number of 3-cycles whose product is ``alpha``."""
    dec = cycle_decomposition(alpha)
    if not dec.is_even():
        raise ParityError(f"{alpha} is odd; only even permutations are products of 3-cycles")
    return (dec.size - dec.odd_count) // 2


def bp_lower_bound(pi_hat: ExtendedPermutation) -> int:
    return three_norm(sigma_pi_inv(pi_hat))


def hurdle_lower_bound(phi: int) -> int:
    """Lower bound for a phi-palisade: 3-norm plus one 0-move per two hurdles."""
    if phi < 1:
        raise DomainError("phi must be at least 1")
    return 2 * phi + _ceil_div(phi, 2)


def palisade_distance(phi: int) -> int:
    if phi < 1:
        raise DomainError("phi must be at least 1")
    return _ceil_div(11 * phi, 4)


def palisade_distance_by_blocks(phi: int) -> int:
    # four pairs cost 11 moves, each leftover pair costs 3
    return 2 * phi + 3 * (phi // 4) + phi % 4


def upper_bound(norm3: int) -> int:
    if norm3 < 0:
        raise DomainError("3-norm cannot be negative")
    return 11 * (norm3 // 8) + (3 * (norm3 % 8)) // 2


def td3_upper(n: int) -> int:
    """Upper bound on the 3-permutation diameter, from the general upper bound."""
    return 11 * ((n + 1) // 24) + ((n + 1) % 24) // 2


def td3(n: int) -> int:
    """Exact diameter over 3-permutations on n+1 symbols.

    Cross-checked against ``td3_upper`` on every call; the two must agree.
    """
    n1 = n + 1
    if n < 2 or n1 % 3:
        raise DomainError(f"no 3-permutations on {n1} symbols: n+1 must be a positive multiple of 3")
    if n1 % 6 == 0:
        value = _ceil_div(11 * n1, 24)
    else:
        value = _ceil_div(11 * (n - 2), 24) + 1
    check = td3_upper(n)
    if value != check:
        raise AssertionError(f"td3({n}) = {value} disagrees with the upper-bound form {check}")
    return value


def min_ratio(phi: int) -> Fraction:
    """Exact distance over lower bound for a phi-palisade."""
    if phi < 1:
        raise DomainError("phi must be at least 1")
    return Fraction(palisade_distance(phi), 2 * phi)


@dataclass(frozen=True)
class BoundsReport:
    norm3: int
    bp_lower: int
    upper: int
    hurdle_lower: int | None = None
    palisade_distance: int | None = None
    td3: int | None = None
    min_ratio: Fraction | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        if self.min_ratio is not None:
            d["min_ratio"] = {
                "numerator": self.min_ratio.numerator,
                "denominator": self.min_ratio.denominator,
                "text": str(self.min_ratio),
                "value": float(self.min_ratio),
            }
        return d

    def rows(self) -> list[tuple[str, str]]:
        out = []
        for key, val in asdict(self).items():
            if val is None:
                continue
            if isinstance(val, Fraction):
                val = f"{val} = {float(val):.6g}"
            out.append((key, str(val)))
        return out


def bounds_report(pi_hat: ExtendedPermutation, structure=None) -> BoundsReport:
    from .structure import analyze

    rep = structure if structure is not None else analyze(pi_hat)
    norm = three_norm(sigma_pi_inv(pi_hat))
    kw = {}
    if rep.is_palisade:
        phi = rep.phi
        kw.update(
            hurdle_lower=hurdle_lower_bound(phi),
            palisade_distance=palisade_distance(phi),
            min_ratio=min_ratio(phi),
        )
    if pi_hat.n >= 2 and pi_hat.size % 3 == 0:
        kw["td3"] = td3(pi_hat.n)
    return BoundsReport(norm3=norm, bp_lower=norm, upper=upper_bound(norm), **kw)
