"""Finitely presented commutative rings over Z[q+-] with monomial normal forms.

Every ring here is a quotient of a Laurent polynomial ring by relations of
the single shape `g^n = monomial`, where the monomial is a unit. Each rule
reduces the exponent of its generator into [0, n) (negative exponents
included, since `g` is then a unit too), so a monomial has one canonical
form and equality of elements is decidable.

Contents:
    RewriteRule: one relation `generator^threshold -> replacement`.
    RingPresentation: generators, invertible generators, and rules.
    RingElement: an integer combination of normal-form monomials.
    ProductRing, ProductElement: finite products of presentations.
    RingHom: a ring map given by generator images, checked on relations.
    ring_hom: builds a `RingHom`, raising `WellDefinednessError` if a
        relation does not map to zero.
    laurent_ring, component_ring, sub_factor_ring, sstar_factor_ring,
        tstar_factor_ring, coefficient_ring: the factor rings used by `tatesub`.
    build_O_TN, build_O_Sub, build_O_sStar, build_O_tStar: product rings.

To Do:


"""
from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from collections.abc import Hashable, Mapping, Sequence
from typing import Any

from . import setup, utilities

logger = logging.getLogger(__name__)

_DISPLAY_NAMES: dict[str, str] = {'qp': "q'"}
_JSON_ORDER: tuple[str, ...] = ('x', 'qp', 'q', 'Q', 'z', 's')


class WellDefinednessError(ValueError):
    """A proposed ring map sends a defining relation to a nonzero element.

    Args:
        relation: text of the violated relation.
        residue: the nonzero normal form of its image.

    """

    def __init__(self, relation: str, residue: RingElement | str) -> None:
        self.relation = relation
        self.residue = residue
        super().__init__(f'relation {relation} maps to {residue}, not 0')


@dataclasses.dataclass(frozen = True)
class RewriteRule:
    """The relation `generator^threshold = replacement`.

    Args:
        generator: name of the rewritten generator.
        threshold: the exponent at which rewriting applies.
        replacement: `(name, exponent)` pairs of a unit monomial.

    """

    generator: str
    threshold: int
    replacement: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.threshold < 1:
            message = f'rewrite threshold must be positive, got {self.threshold}'
            raise ValueError(message)

    def to_text(self) -> str:
        """Returns text such as "x^2 = q"."""
        lhs = _monomial_text({self.generator: self.threshold})
        return f'{lhs} = {_monomial_text(dict(self.replacement))}'


@dataclasses.dataclass(frozen = True)
class RingPresentation:
    """A commutative ring Z[invertible+-][others] / (rewrite rules).

    Args:
        generators: ordered generator names.
        invertible: generators with unrestricted integer exponents and no
            rule.
        rules: rewrite rules, applied in order on every pass.
        label: factor label inside a product ring (k, (d, e), ...).
        name: human-readable description.

    """

    generators: tuple[str, ...]
    invertible: frozenset[str]
    rules: tuple[RewriteRule, ...] = ()
    label: Hashable = None
    name: str = ''

    def __post_init__(self) -> None:
        """Validates generator names and computes the unit generators."""
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError('generator names must be distinct')
        if not self.invertible <= known:
            raise ValueError('invertible generators must be generators')
        seen = set()
        for rule in self.rules:
            if rule.generator not in known or rule.generator in self.invertible:
                message = f'rule for {rule.generator} has no rewritable generator'
                raise ValueError(message)
            if rule.generator in seen:
                message = f'generator {rule.generator} has two rules'
                raise ValueError(message)
            seen.add(rule.generator)
            for other, _ in rule.replacement:
                if other not in known:
                    message = f'replacement uses unknown generator {other}'
                    raise ValueError(message)

    """ Properties """

    @property
    def unit_generators(self) -> frozenset[str]:
        """Generators that are units: invertible ones and those rewritten to
        units."""
        units = set(self.invertible)
        changed = True
        while changed:
            changed = False
            for rule in self.rules:
                if (rule.generator not in units
                        and all(g in units for g, _ in rule.replacement)):
                    units.add(rule.generator)
                    changed = True
        return frozenset(units)

    """ Instance Methods """

    def index(self, name: str) -> int:
        """Returns the position of generator `name`."""
        try:
            return self.generators.index(name)
        except ValueError as error:
            message = f'{name} is not a generator of {self.name or self.label}'
            raise KeyError(message) from error

    def normal_form(self, exponents: Sequence[int]) -> setup.Exponents:
        """Returns the normal form of a monomial given by its exponents.

        Args:
            exponents: one integer per generator.

        Raises:
            RuntimeError: if rewriting does not stabilize (a rule cycle).

        Returns:
            Exponents with every ruled generator reduced into
                [0, threshold).

        """
        current = list(exponents)
        for _ in range(len(self.rules) + 2):
            changed = False
            for rule in self.rules:
                position = self.index(rule.generator)
                quotient, remainder = divmod(current[position], rule.threshold)
                if quotient:
                    changed = True
                    current[position] = remainder
                    for other, power in rule.replacement:
                        current[self.index(other)] += quotient * power
            if not changed:
                return tuple(current)
        message = f'rewriting does not terminate in {self.name or self.label}'
        raise RuntimeError(message)

    def element(self, terms: Mapping[Sequence[int], int]) -> RingElement:
        """Returns the normalized element with the given monomial terms."""
        collected: dict[setup.Exponents, int] = {}
        for exponents, coefficient in terms.items():
            if len(exponents) != len(self.generators):
                raise ValueError('exponent vector has the wrong length')
            key = self.normal_form(exponents)
            collected[key] = collected.get(key, 0) + int(coefficient)
        return RingElement(
            self,
            tuple(sorted((k, c) for k, c in collected.items() if c != 0)))

    def monomial(self, coefficient: int = 1, **exponents: int) -> RingElement:
        """Returns `coefficient * prod g**exponents[g]`."""
        vector = [0] * len(self.generators)
        for name, power in exponents.items():
            vector[self.index(name)] += power
        return self.element({tuple(vector): coefficient})

    def generator(self, name: str) -> RingElement:
        """Returns the generator `name` as an element."""
        return self.monomial(**{name: 1})

    def constant(self, value: int) -> RingElement:
        """Returns the integer `value` as an element."""
        return self.monomial(value)

    def zero(self) -> RingElement:
        """Returns 0."""
        return RingElement(self, ())

    def one(self) -> RingElement:
        """Returns 1."""
        return self.constant(1)

    def rank(self) -> int:
        """Returns the rank as a free module over the invertible generators."""
        return math.prod(rule.threshold for rule in self.rules)

    def basis(self) -> list[RingElement]:
        """Returns the monomial basis over the invertible generators."""
        ranges = [range(rule.threshold) for rule in self.rules]
        basis = []
        for powers in itertools.product(*ranges):
            exponents = {
                rule.generator: power
                for rule, power in zip(self.rules, powers, strict = True)}
            basis.append(self.monomial(**exponents))
        return basis

    def to_json(self) -> dict[str, Any]:
        """Returns a JSON description of the presentation."""
        return {
            'label': _label_json(self.label),
            'generators': list(self.generators),
            'invertible': sorted(self.invertible),
            'relations': [rule.to_text() for rule in self.rules],
            'rank': self.rank()}


@dataclasses.dataclass(frozen = True)
class RingElement:
    """An element of a `RingPresentation` in normal form.

    Args:
        presentation: the ring the element lives in.
        terms: sorted `(exponents, coefficient)` pairs with normal-form
            exponents and nonzero integer coefficients.

    """

    presentation: RingPresentation
    terms: tuple[tuple[setup.Exponents, int], ...] = ()

    """ Properties """

    @property
    def is_zero(self) -> bool:
        """Whether the element is 0."""
        return not self.terms

    @property
    def is_unit(self) -> bool:
        """Whether the element is +-(a monomial in unit generators)."""
        if len(self.terms) != 1:
            return False
        exponents, coefficient = self.terms[0]
        units = self.presentation.unit_generators
        return abs(coefficient) == 1 and all(
            power == 0 or name in units
            for name, power in zip(
                self.presentation.generators, exponents, strict = True))

    """ Instance Methods """

    def exponents(self) -> dict[str, int]:
        """Returns the exponents of a single-term element by generator name."""
        if len(self.terms) != 1:
            message = f'{self.to_text()} is not a single monomial'
            raise ValueError(message)
        return dict(zip(
            self.presentation.generators, self.terms[0][0], strict = True))

    def coefficient(self) -> int:
        """Returns the coefficient of a single-term element."""
        if len(self.terms) != 1:
            message = f'{self.to_text()} is not a single monomial'
            raise ValueError(message)
        return self.terms[0][1]

    def inverse(self) -> RingElement:
        """Returns the inverse of a unit.

        Raises:
            ValueError: if the element is not a unit.

        """
        if not self.is_unit:
            message = f'{self.to_text()} is not a unit'
            raise ValueError(message)
        exponents, coefficient = self.terms[0]
        return self.presentation.element(
            {tuple(-power for power in exponents): coefficient})

    def to_json(self) -> dict[str, Any]:
        """Returns the documented JSON form of the element."""
        names = _json_names(self.presentation.generators)
        rows = []
        for exponents, coefficient in self.terms:
            powers = dict(zip(
                self.presentation.generators, exponents, strict = True))
            rows.append((
                tuple(powers[name] for name in names),
                {name: powers[name] for name in names},
                str(coefficient)))
        rows.sort(key = lambda row: row[0])
        return {
            'factor': _label_json(self.presentation.label),
            'terms': [[monomial, value] for _, monomial, value in rows]}

    def to_text(self) -> str:
        """Returns ASCII text such as "x^2*q'*q^-1"."""
        if self.is_zero:
            return '0'
        pieces = []
        for exponents, coefficient in self.terms:
            powers = dict(zip(
                self.presentation.generators, exponents, strict = True))
            body = _monomial_text(powers)
            if body == '1':
                text = str(abs(coefficient))
            elif abs(coefficient) == 1:
                text = body
            else:
                text = f'{abs(coefficient)}*{body}'
            sign = '-' if coefficient < 0 else '+'
            pieces.append((sign, text))
        first_sign, first = pieces[0]
        text = f'-{first}' if first_sign == '-' else first
        for sign, piece in pieces[1:]:
            text += f' {sign} {piece}'
        return text

    def _check_same_ring(self, other: RingElement) -> None:
        if other.presentation != self.presentation:
            message = (
                f'cannot combine elements of {self.presentation.name} and '
                f'{other.presentation.name}')
            raise ValueError(message)

    """ Dunder Methods """

    def __add__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            other = self.presentation.constant(other)
        self._check_same_ring(other)
        terms = dict(self.terms)
        for exponents, coefficient in other.terms:
            terms[exponents] = terms.get(exponents, 0) + coefficient
        return self.presentation.element(terms)

    def __radd__(self, other: int) -> RingElement:
        return self + other

    def __neg__(self) -> RingElement:
        return RingElement(
            self.presentation,
            tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            other = self.presentation.constant(other)
        return self + (-other)

    def __mul__(self, other: RingElement | int) -> RingElement:
        if isinstance(other, int):
            other = self.presentation.constant(other)
        self._check_same_ring(other)
        product: dict[setup.Exponents, int] = {}
        for left, a in self.terms:
            for right, b in other.terms:
                key = tuple(i + j for i, j in zip(left, right, strict = True))
                product[key] = product.get(key, 0) + a * b
        return self.presentation.element(product)

    def __rmul__(self, other: int) -> RingElement:
        return self * other

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.presentation.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __str__(self) -> str:
        return self.to_text()


@dataclasses.dataclass(frozen = True)
class ProductRing:
    """A finite product of presentations, indexed by factor labels.

    Args:
        factors: the factor presentations, in order.
        name: human-readable name (such as 'O_T[N]').

    """

    factors: tuple[RingPresentation, ...]
    name: str = ''

    @property
    def labels(self) -> tuple[Hashable, ...]:
        """Factor labels in order."""
        return tuple(factor.label for factor in self.factors)

    def index(self, label: Hashable) -> int:
        """Returns the position of the factor with `label`."""
        try:
            return self.labels.index(label)
        except ValueError as error:
            message = f'{self.name} has no factor {label}'
            raise KeyError(message) from error

    def factor(self, label: Hashable) -> RingPresentation:
        """Returns the factor with `label`."""
        return self.factors[self.index(label)]

    def rank(self) -> int:
        """Returns the total rank over the structural Laurent ring."""
        return sum(factor.rank() for factor in self.factors)

    def element(self, parts: Sequence[RingElement]) -> ProductElement:
        """Returns the element with the given factor components."""
        if len(parts) != len(self.factors):
            raise ValueError('one component per factor is required')
        for factor, part in zip(self.factors, parts, strict = True):
            if part.presentation != factor:
                raise ValueError('component does not belong to its factor')
        return ProductElement(self, tuple(parts))

    def generator(self, name: str) -> ProductElement:
        """Returns `name` in every factor (such as the structural q)."""
        return self.element([f.generator(name) for f in self.factors])

    def coordinate(self, label: Hashable, name: str) -> ProductElement:
        """Returns `name` on the factor `label` and 0 on every other factor."""
        position = self.index(label)
        return self.element([
            f.generator(name) if i == position else f.zero()
            for i, f in enumerate(self.factors)])

    def zero(self) -> ProductElement:
        """Returns 0."""
        return self.element([f.zero() for f in self.factors])

    def one(self) -> ProductElement:
        """Returns 1."""
        return self.element([f.one() for f in self.factors])


@dataclasses.dataclass(frozen = True)
class ProductElement:
    """A tuple of factor components of a `ProductRing`."""

    ring: ProductRing
    parts: tuple[RingElement, ...]

    def component(self, label: Hashable) -> RingElement:
        """Returns the component on the factor `label`."""
        return self.parts[self.ring.index(label)]

    def to_json(self) -> list[dict[str, Any]]:
        """Returns one element JSON document per factor."""
        return [part.to_json() for part in self.parts]

    def __add__(self, other: ProductElement) -> ProductElement:
        return ProductElement(self.ring, tuple(
            a + b for a, b in zip(self.parts, other.parts, strict = True)))

    def __sub__(self, other: ProductElement) -> ProductElement:
        return ProductElement(self.ring, tuple(
            a - b for a, b in zip(self.parts, other.parts, strict = True)))

    def __mul__(self, other: ProductElement) -> ProductElement:
        return ProductElement(self.ring, tuple(
            a * b for a, b in zip(self.parts, other.parts, strict = True)))

    def __pow__(self, n: int) -> ProductElement:
        return ProductElement(self.ring, tuple(a ** n for a in self.parts))

    @property
    def is_zero(self) -> bool:
        """Whether every component is 0."""
        return all(part.is_zero for part in self.parts)


@dataclasses.dataclass(frozen = True)
class RingHom:
    """A ring map between presentations given by generator images.

    Build instances with `ring_hom`, which checks well-definedness.

    Args:
        source: the domain presentation.
        target: the codomain presentation.
        images: `(generator, image)` pairs, one per source generator.

    """

    source: RingPresentation
    target: RingPresentation
    images: tuple[tuple[str, RingElement], ...]

    def image(self, name: str) -> RingElement:
        """Returns the image of the source generator `name`."""
        return dict(self.images)[name]

    def evaluate_monomial(self, exponents: Sequence[int]) -> RingElement:
        """Returns the image of the source monomial with `exponents`."""
        result = self.target.one()
        for name, power in zip(self.source.generators, exponents, strict = True):
            if power:
                result = result * self.image(name) ** power
        return result

    def compose(self, inner: RingHom) -> RingHom:
        """Returns `self` after `inner` (first `inner`, then `self`)."""
        if inner.target != self.source:
            raise ValueError('composition requires matching rings')
        return ring_hom(
            inner.source,
            self.target,
            {name: self(image) for name, image in inner.images})

    def images_equal(self, other: RingHom) -> bool:
        """Whether both maps have the same rings and generator images."""
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.images) == dict(other.images))

    def __call__(self, element: RingElement) -> RingElement:
        if element.presentation != self.source:
            raise ValueError('element is not in the source ring')
        result = self.target.zero()
        for exponents, coefficient in element.terms:
            result = result + self.evaluate_monomial(exponents) * coefficient
        return result

    @classmethod
    def identity(cls, presentation: RingPresentation) -> RingHom:
        """Returns the identity map of `presentation`."""
        return ring_hom(
            presentation,
            presentation,
            {g: presentation.generator(g) for g in presentation.generators})


def ring_hom(
    source: RingPresentation,
    target: RingPresentation,
    images: Mapping[str, RingElement]) -> RingHom:
    """Returns the ring map `source -> target` sending generators to `images`.

    Args:
        source: the domain presentation.
        target: the codomain presentation.
        images: one target element per source generator.

    Raises:
        ValueError: if an image is missing, extra, or not in `target`.
        WellDefinednessError: if an invertible generator is not sent to a
            unit, or a rewrite rule does not map to a relation of `target`.

    Returns:
        The checked `RingHom`.

    """
    missing = [g for g in source.generators if g not in images]
    extra = [g for g in images if g not in source.generators]
    if missing or extra:
        message = f'images missing for {missing}, unexpected for {extra}'
        raise ValueError(message)
    for name, image in images.items():
        if image.presentation != target:
            message = f'image of {name} is not in the target ring'
            raise ValueError(message)
    hom = RingHom(
        source,
        target,
        tuple((g, images[g]) for g in source.generators))
    for name in sorted(source.invertible):
        if not images[name].is_unit:
            raise WellDefinednessError(
                f'{_display(name)} is a unit',
                f'non-unit {images[name].to_text()}')
    for rule in source.rules:
        lhs = images[rule.generator] ** rule.threshold
        vector = [0] * len(source.generators)
        for other, power in rule.replacement:
            vector[source.index(other)] += power
        residue = lhs - hom.evaluate_monomial(vector)
        if not residue.is_zero:
            raise WellDefinednessError(rule.to_text(), residue)
    logger.debug(
        'checked map %s -> %s',
        source.name or source.label,
        target.name or target.label)
    return hom

""" Factor Rings """

def laurent_ring() -> RingPresentation:
    """Returns Z[q+-], the base ring of every other presentation."""
    return RingPresentation(
        ('q',),
        frozenset({'q'}),
        label = 'base',
        name = 'Z[q+-]')

def _check_component(N: int, k: int) -> None:
    if N < 1 or not 0 <= k < N:
        message = f'component index must satisfy 0 <= k < N, got N={N}, k={k}'
        raise ValueError(message)

def _check_pair(N: int, d: int, e: int) -> None:
    if d < 1 or e < 1 or d * e != N:
        message = f'(d, e) = ({d}, {e}) is not a factorization of N = {N}'
        raise ValueError(message)

def component_ring(N: int, k: int) -> RingPresentation:
    """Returns Z[q+-][x]/(x^N - q^k), the coordinate ring of T_k[N]."""
    _check_component(N, k)
    return RingPresentation(
        ('q', 'x'),
        frozenset({'q'}),
        (RewriteRule('x', N, (('q', k),)),),
        label = k,
        name = f'Z[q+-][x]/(x^{N} - q^{k})')

def sub_factor_ring(d: int, e: int) -> RingPresentation:
    """Returns Z[q+-][q']/(q'^e - q^d), the factor O_Sub_{d,e}."""
    _check_pair(d * e, d, e)
    return RingPresentation(
        ('q', 'qp'),
        frozenset({'q'}),
        (RewriteRule('qp', e, (('q', d),)),),
        label = (d, e),
        name = f"Z[q+-][q']/(q'^{e} - q^{d})")

def sstar_factor_ring(N: int, d: int, e: int, k: int) -> RingPresentation:
    """Returns the factor of O_{s*Tate[N]} over ((d, e), k).

    Both tensor factors share the structural q.

    """
    _check_pair(N, d, e)
    _check_component(N, k)
    return RingPresentation(
        ('q', 'x', 'qp'),
        frozenset({'q'}),
        (RewriteRule('x', N, (('q', k),)),
         RewriteRule('qp', e, (('q', d),))),
        label = ((d, e), k),
        name = f"s*[{d},{e}] x^{N} = q^{k}")

def tstar_factor_ring(N: int, d: int, e: int, k: int) -> RingPresentation:
    """Returns the factor of O_{t*Tate[N]} over ((d, e), k).

    The structural q of the torsion factor is identified with q' by the rule
    q -> q'; Q is the structural q of the Sub factor.

    """
    _check_pair(N, d, e)
    _check_component(N, k)
    return RingPresentation(
        ('Q', 'q', 'x', 'qp'),
        frozenset({'Q'}),
        (RewriteRule('q', 1, (('qp', 1),)),
         RewriteRule('x', N, (('qp', k),)),
         RewriteRule('qp', e, (('Q', d),))),
        label = ((d, e), k),
        name = f"t*[{d},{e}] x^{N} = q'^{k}")

def coefficient_ring(denominator: int, order: int) -> RingPresentation:
    """Returns Z[s+-][z]/(z^order - 1) with s = q^(1/denominator).

    Values of the coefficient group mu_order x q^((1/denominator)Z) are
    monomials here, so ring maps into the coefficient object can be checked
    with `ring_hom`.

    """
    if denominator < 1 or order < 1:
        raise ValueError('denominator and order must be positive')
    return RingPresentation(
        ('s', 'z'),
        frozenset({'s'}),
        (RewriteRule('z', order, ()),),
        label = ('K', denominator, order),
        name = f'Z[q^(1/{denominator})+-][zeta_{order}]')

""" Product Rings """

def build_O_TN(N: int) -> ProductRing:
    """Returns O_{T[N]}, the product of the N component rings."""
    return ProductRing(
        tuple(component_ring(N, k) for k in range(N)),
        name = f'O_T[{N}]')

def build_O_Sub(N: int) -> ProductRing:
    """Returns O_Sub, one factor per (d, e) with de = N, by ascending d."""
    return ProductRing(
        tuple(sub_factor_ring(d, e) for d, e in utilities.divisor_pairs(N)),
        name = f'O_Sub[{N}]')

def build_O_sStar(N: int) -> ProductRing:
    """Returns O_{s*Tate[N]}, factors ordered by (d, e) then k."""
    return ProductRing(
        tuple(
            sstar_factor_ring(N, d, e, k)
            for d, e in utilities.divisor_pairs(N)
            for k in range(N)),
        name = f's*Tate[{N}]')

def build_O_tStar(N: int) -> ProductRing:
    """Returns O_{t*Tate[N]}, factors ordered by (d, e) then k."""
    return ProductRing(
        tuple(
            tstar_factor_ring(N, d, e, k)
            for d, e in utilities.divisor_pairs(N)
            for k in range(N)),
        name = f't*Tate[{N}]')

""" Formatting """

def _display(name: str) -> str:
    return _DISPLAY_NAMES.get(name, name)

def _monomial_text(powers: Mapping[str, int]) -> str:
    pieces = []
    for name in _json_names(tuple(powers)):
        power = powers[name]
        if power == 1:
            pieces.append(_display(name))
        elif power:
            pieces.append(f'{_display(name)}^{power}')
    return '*'.join(pieces) or '1'

def _json_names(generators: Sequence[str]) -> list[str]:
    ordered = [name for name in _JSON_ORDER if name in generators]
    return ordered + [name for name in generators if name not in ordered]

def _label_json(label: Hashable) -> Any:
    if isinstance(label, tuple):
        return [_label_json(item) for item in label]
    return label
