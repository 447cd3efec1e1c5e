"""Values of valuations: a group element, or the adjoined zero.

Zero is below every group element and absorbs multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchedGroups
from .ordgroup import (
    ConvexSubgroup,
    GroupElement,
    group_cmp,
    group_mul,
    is_cofinal,
    subgroup_contains,
)


@dataclass(frozen=True)
class Value:
    """Tagged union Zero | Nonzero(GroupElement); elt is None for Zero."""

    elt: GroupElement | None

    def is_zero(self) -> bool:
        return self.elt is None


ZERO = Value(None)


def nonzero(elt: GroupElement) -> Value:
    return Value(elt)


def value_cmp(a: Value, b: Value) -> int:
    if a.is_zero() and b.is_zero():
        return 0
    if a.is_zero():
        return -1
    if b.is_zero():
        return 1
    return group_cmp(a.elt, b.elt)


def value_le(a: Value, b: Value) -> bool:
    return value_cmp(a, b) <= 0


def value_mul(a: Value, b: Value) -> Value:
    if a.is_zero() or b.is_zero():
        return ZERO
    return Value(group_mul(a.elt, b.elt))


def value_max(a: Value, b: Value) -> Value:
    return a if value_cmp(a, b) >= 0 else b


def value_in_subgroup(a: Value, H: ConvexSubgroup) -> bool:
    if a.is_zero():
        return False
    return subgroup_contains(H, a.elt)


def value_cofinal(a: Value, H: ConvexSubgroup) -> bool:
    """Zero is cofinal for every subgroup; otherwise decide on the element."""
    if a.is_zero():
        return True
    if a.elt.group != H.group:
        raise MismatchedGroups(f"{a.elt.group} vs {H.group}")
    return is_cofinal(a.elt, H)
