"""Settings, constants, conventions, and global types for `tatesub`.

Every sign and orientation choice that the point, ring, and power operation
modules depend on is fixed here and imported from here.

Contents:
    TATE_RELATION_SIGN: second coordinate of the generator of the relation
        subgroup of K* x Q.
    QPRIME_EXPONENT_SIGN: sign of the q' exponent in the closed pullback
        formula.
    Q_EXPONENT_OFFSET: constant q power in the closed pullback formula.

To Do:


"""
from __future__ import annotations

import dataclasses
from collections.abc import Hashable, MutableMapping
from fractions import Fraction
from typing import TYPE_CHECKING, Any, TypeAlias

if TYPE_CHECKING:
    from collections.abc import Callable

""" Types """

GenericDict: TypeAlias = MutableMapping[Hashable, Any]
Exponents: TypeAlias = tuple[int, ...]
Rational: TypeAlias = Fraction

""" Conventions """

# A point [u, t] of T(K) is a class modulo the subgroup generated by
# (q_param, TATE_RELATION_SIGN). With +1:
#     [a, t] = [a * q_param, t + 1]   and   [a, t + 1] = [a / q_param, t],
# so N-torsion points are [zeta * q_param**t, t] with zeta**N == 1,
# x_k**N == q**k, and e * [q', 1/e] == [q'**e * q**-d, 0] forces q'**e == q**d.
TATE_RELATION_SIGN: int = 1
# psi*(x_k) on component m = k/e + alpha*d is x_m**d * q'**(sign * alpha).
QPRIME_EXPONENT_SIGN: int = -1
Q_EXPONENT_OFFSET: int = 0

""" Global Variables """

_FILE_EXTENSIONS: dict[str, str] = {
    'ini': 'ini',
    'json': 'json',
    'toml': 'toml',
    'py': 'module',
    'yaml': 'yaml',
    'yml': 'yaml'}
_INFER_TYPES: dict[str, bool] = {
    'ini': True,
    'json': False,
    'toml': False,
    'module': False,
    'yaml': False}
_LOAD_FUNCTION: Callable[[str], str] = lambda x: f'{x}_to_dict'
_MODULE_SETTINGS_ATTRIBUTE: str = 'settings'
_RECURSIVE_SETTINGS: bool = True

_DEFAULT_SERIES_ORDER: int = 20
_DEFAULT_SUBGROUP_BOUND: int = 24
_DEFAULT_VERIFY_MAX: int = 12
_LOG_FORMAT: str = '%(name)s [%(levelname)s] %(message)s'
_SERIES_KINDS: tuple[str, ...] = ('a4', 'a6', 'disc', 'eta24', 'j')

""" Missing Argument Sentinel Class and Instance """

@dataclasses.dataclass
class _MISSING_VALUE(object):  # noqa: N801
    """Marks an option absent from both the user settings and defaults."""

    pass  # noqa: PIE790


_MISSING = _MISSING_VALUE()

""" Shared Records """

@dataclasses.dataclass(frozen = True)
class CheckResult(object):
    """Outcome of one named verification check.

    Args:
        name: short identifier of the check (such as 'group_structure').
        passed: whether every tested case held.
        detail: first failing case, or a summary when `passed`.

    """

    name: str
    passed: bool
    detail: str = ''

    def to_json(self) -> dict[str, Any]:
        """Returns the check as a JSON-ready `dict`."""
        return {
            'name': self.name,
            'status': 'pass' if self.passed else 'fail',
            'detail': self.detail}
