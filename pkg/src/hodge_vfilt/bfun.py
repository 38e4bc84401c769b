"""Bernstein-Sato machinery for a hypersurface f.

The graph ideal I_f annihilates delta = 1 (x) 1 in the graph pushforward.
A Gröbner basis of I_f (or of the annihilator of an element m) along the
V-weight of t yields the b-function through the initial ideal: with
theta = t*dt, the relation of least degree among the powers of theta modulo
the initial forms is b(-theta - 1), since s = -dt*t = -theta - 1.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement

from hodge_vfilt.config import Budget
from hodge_vfilt.errors import (
    BudgetExceeded,
    NonRationalRoots,
    UnsupportedParameterSplit,
    ZeroElement,
)
from hodge_vfilt.graphmod import GraphElem, Hypersurface, SFsElem, act
from hodge_vfilt.polyalg.ideal import generator, polynomial_ring
from hodge_vfilt.polyalg.rationals import RationalLike, to_rational
from hodge_vfilt.polyalg.univariate import (
    UnivariatePoly,
    format_factored,
    rational_roots,
    root_multiset,
)
from hodge_vfilt.render import format_poly
from hodge_vfilt.utils.linalg import solve
from hodge_vfilt.utils.logging import make_logger, timed
from hodge_vfilt.weyl import (
    GREVLEX_WEYL,
    VWeight,
    WeylAlgebra,
    WeylElem,
    elimination_order,
    initial_form,
    left_ideal_quotient,
    normal_form_with_cofactors,
    v_order,
    weyl_groebner,
    weyl_normal_form,
)

logger = make_logger(__name__)

MAX_THETA_DEGREE = 24


@dataclass(frozen=True)
class GraphIdeal:
    """Generators t - f and dx_i + f_i*dt of the annihilator of delta."""

    hypersurface: Hypersurface
    generators: tuple[WeylElem, ...]

    @property
    def algebra(self) -> WeylAlgebra:
        return self.hypersurface.graph_algebra

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def graph_ideal(f: PolyElement | Hypersurface) -> GraphIdeal:
    """The graph ideal of f.

    Raises:
        ConstantF: f is constant.
    """
    hs = f if isinstance(f, Hypersurface) else Hypersurface(f)
    algebra = hs.graph_algebra
    generators = [algebra.gen("t") - algebra.from_polynomial(hs.f)]
    dt = algebra.gen("dt")
    for name in hs.variables:
        partial = algebra.from_polynomial(hs.partials[name])
        generators.append(algebra.gen(f"d{name}") + partial * dt)
    return GraphIdeal(hs, tuple(generators))


@dataclass(frozen=True)
class BFunction:
    """A monic b-function with rational roots.

    ``certificate`` is either the operator P with P f^(s+1) = b(s) f^s (global
    b-functions) or an operator R of V-weight <= -1 with b(s) m = R m (element
    b-functions). ``minimality`` pairs every distinct root with the verdict of
    the infeasibility check for b with that root deleted.
    """

    b: UnivariatePoly
    roots: tuple[Any, ...]
    certificate: WeylElem | None = None
    certificate_bound: int | None = None
    minimality: tuple[tuple[Any, bool], ...] = ()

    @classmethod
    def from_poly(cls, b: UnivariatePoly, **extra: Any) -> BFunction:
        """Split a monic b over Q.

        Raises:
            NonRationalRoots: a non-linear factor survives.
        """
        decomposition = rational_roots(b.monic())
        if not decomposition.is_split:
            raise NonRationalRoots(
                f"b-function {b} keeps the non-linear factor {decomposition.cofactor}"
            )
        return cls(b.monic(), decomposition.roots, **extra)

    @property
    def degree(self) -> int:
        return self.b.degree

    @property
    def distinct_roots(self) -> list[tuple[Any, int]]:
        return root_multiset(self.roots)

    def __str__(self) -> str:
        return format_factored(self.roots)


def theta(algebra: WeylAlgebra) -> WeylElem:
    return algebra.gen("t") * algebra.gen("dt")


def s_operator(algebra: WeylAlgebra) -> WeylElem:
    """s = -dt*t as an element of D_{n+1}."""
    return -(algebra.gen("dt") * algebra.gen("t"))


def operator_of(b: UnivariatePoly, algebra: WeylAlgebra) -> WeylElem:
    """b(-dt*t) in D_{n+1}, by Horner's rule."""
    s = s_operator(algebra)
    result = algebra.zero
    for c in reversed(b.coeffs):
        result = result * s + algebra.scalar(c)
    return result


def parameter_field(names: Sequence[str]) -> Any:
    """Q(c_1, ..., c_r)."""
    return QQ.frac_field(*polynomial_ring(names).symbols)


def parameter_ring(names: Sequence[str]) -> Any:
    """Q[c_1, ..., c_r] as the numerator ring of ``parameter_field``."""
    return parameter_field(names).field.ring


class _Split(Exception):
    """A parameter polynomial must be decided zero or nonzero before continuing."""

    def __init__(self, factor: PolyElement) -> None:
        super().__init__(str(factor.as_expr()))
        self.factor = factor


class _ParameterGuard:
    """Refuses to divide by a coefficient whose numerator may vanish.

    Factors already known to be nonzero pass; any other nonconstant factor
    interrupts the computation with ``_Split``.
    """

    def __init__(self, domain: Any, nonzero: frozenset[PolyElement]) -> None:
        self.domain = domain
        self.nonzero = nonzero

    def __call__(self, coeff: Any) -> None:
        numerator = coeff.numer
        if numerator.is_ground:
            return
        _, factors = numerator.factor_list()
        for factor, _multiplicity in factors:
            if factor.is_ground:
                continue
            monic = factor.monic()
            if monic not in self.nonzero:
                raise _Split(monic)


class _GuardedSpan:
    """Incremental elimination that reports the first dependent vector."""

    def __init__(self, domain: Any, guard: _ParameterGuard) -> None:
        self.domain = domain
        self.guard = guard
        self.rows: list[tuple[Any, dict[Any, Any], dict[int, Any]]] = []
        self.count = 0

    def add(self, vector: Mapping[Any, Any]) -> list[Any] | None:
        """Coefficients writing ``vector`` through the earlier ones, else None."""
        K = self.domain
        index = self.count
        self.count += 1
        v = {key: value for key, value in vector.items() if value}
        combo: dict[int, Any] = {index: K.one}
        for pivot, row, row_combo in self.rows:
            c = v.get(pivot)
            if not c:
                continue
            for key, value in row.items():
                v[key] = v.get(key, K.zero) - c * value
                if not v[key]:
                    del v[key]
            for key, value in row_combo.items():
                combo[key] = combo.get(key, K.zero) - c * value
        if not v:
            return [-combo.get(i, K.zero) for i in range(index)]
        keys = sorted(v)
        ground = [key for key in keys if v[key].numer.is_ground and v[key].denom.is_ground]
        pivot = ground[0] if ground else keys[0]
        self.guard(v[pivot])
        inverse = K.one / v[pivot]
        self.rows.append(
            (
                pivot,
                {key: value * inverse for key, value in v.items()},
                {key: value * inverse for key, value in combo.items()},
            )
        )
        return None


def _theta_relation(
    initials: Sequence[WeylElem],
    algebra: WeylAlgebra,
    guard: _ParameterGuard | None = None,
) -> list[Any]:
    """Coefficients c_0..c_d (c_d = 1) of the least relation among theta powers.

    Raises:
        BudgetExceeded: no relation up to ``MAX_THETA_DEGREE``.
    """
    order = v_order(algebra)
    step = theta(algebra)
    domain = algebra.domain
    power = algebra.one
    columns: list[dict[Any, Any]] = []
    span = _GuardedSpan(domain, guard) if guard is not None else None
    for degree in range(MAX_THETA_DEGREE + 1):
        remainder = weyl_normal_form(power, list(initials), order)
        vector = dict(remainder.terms)
        if span is not None:
            relation = span.add(vector)
        elif not vector:
            relation = [domain.zero] * degree
        else:
            relation = solve(columns, vector, domain) if columns else None
        if relation is not None:
            logger.debug(f"theta relation found in degree {degree}")
            return [-c for c in relation] + [domain.one]
        columns.append(vector)
        power = power * step
    raise BudgetExceeded(f"no b-function of degree <= {MAX_THETA_DEGREE}")


def _to_rational_coefficients(coeffs: Sequence[Any], domain: Any) -> list[Any]:
    if domain == QQ:
        return list(coeffs)
    values = []
    for c in coeffs:
        expr = domain.to_sympy(c)
        if not expr.is_Rational:
            raise UnsupportedParameterSplit(
                f"b-function coefficient {expr} still depends on the parameters"
            )
        values.append(to_rational(expr))
    return values


def _b_from_relation(coeffs: Sequence[Any], domain: Any) -> UnivariatePoly:
    """b(s) from the theta relation c(theta) = b(-theta - 1) up to sign."""
    return UnivariatePoly(tuple(_to_rational_coefficients(coeffs, domain))).reflect().monic()


@dataclass(frozen=True)
class ElementHandle:
    """m = sum_l g_l(x) dt^l delta, possibly with linear parameters.

    With parameters the coefficients live in Q[params, x]; otherwise in Q[x].
    """

    hypersurface: Hypersurface
    coefficients: tuple[PolyElement, ...]
    parameters: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        ring = self.ring
        coefficients = [g.set_ring(ring) for g in self.coefficients]
        while coefficients and not coefficients[-1]:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def delta(cls, hypersurface: Hypersurface) -> ElementHandle:
        return cls(hypersurface, (hypersurface.ring.one,))

    @classmethod
    def from_graph(cls, element: GraphElem) -> ElementHandle:
        if not element.is_polynomial:
            raise ValueError(f"{element} has a pole along f")
        hs = element.hypersurface
        return cls(
            hs,
            tuple(element.coeffs.get(level, hs.ring.zero) for level in range(element.level + 1)),
        )

    @cached_property
    def ring(self) -> Any:
        if not self.parameters:
            return self.hypersurface.ring
        return polynomial_ring((*self.parameters, *self.hypersurface.variables))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def level(self) -> int:
        return len(self.coefficients) - 1

    def graph_element(self) -> GraphElem:
        if self.parameters:
            raise ValueError("a parametric handle has no single graph element")
        return GraphElem(self.hypersurface, dict(enumerate(self.coefficients)))

    def parameter_domain(self) -> Any:
        if not self.parameters:
            return QQ
        return parameter_field(self.parameters)

    def operator(self, domain: Any | None = None) -> WeylElem:
        """sum_l g_l dt^l in D_{n+1} over ``domain``."""
        domain = domain if domain is not None else self.parameter_domain()
        algebra = self.hypersurface.graph_algebra.with_domain(domain)
        nparams = len(self.parameters)
        dt = algebra.index("dt")
        positions = [algebra.index(name) for name in self.hypersurface.variables]
        grouped: dict[tuple[int, ...], dict[tuple[int, ...], Any]] = {}
        for level, g in enumerate(self.coefficients):
            for monom, coeff in g.iterterms():
                exps = [0] * algebra.width
                for position, power in zip(positions, monom[nparams:], strict=True):
                    exps[position] = power
                exps[dt] = level
                grouped.setdefault(tuple(exps), {})[monom[:nparams]] = coeff
        terms = {}
        for exps, parts in grouped.items():
            if nparams:
                expr = polynomial_ring(self.parameters).from_dict(parts).as_expr()
                terms[exps] = domain.from_sympy(expr)
            else:
                terms[exps] = parts[()]
        return WeylElem(algebra, terms)

    def scale(self, value: RationalLike) -> ElementHandle:
        factor = to_rational(value)
        return ElementHandle(
            self.hypersurface, tuple(g * factor for g in self.coefficients), self.parameters
        )

    def times_t(self) -> ElementHandle:
        return ElementHandle.from_graph(self.graph_element().apply("t"))

    def substitute(self, name: str, value: PolyElement) -> ElementHandle:
        """Replace one parameter by a polynomial in the remaining ones."""
        remaining = tuple(p for p in self.parameters if p != name)
        target = (
            polynomial_ring((*remaining, *self.hypersurface.variables))
            if remaining
            else self.hypersurface.ring
        )
        gen = generator(self.ring, name)
        replacement = value.set_ring(self.ring)
        coefficients = tuple(
            g.compose(gen, replacement).set_ring(target) for g in self.coefficients
        )
        return ElementHandle(self.hypersurface, coefficients, remaining)

    def __str__(self) -> str:
        pieces = []
        for level, g in enumerate(self.coefficients):
            if not g:
                continue
            text = f"({format_poly(g)})"
            if level == 1:
                text += "*dt"
            elif level > 1:
                text += f"*dt^{level}"
            pieces.append(text)
        return " + ".join(pieces) if pieces else "0"


class BfunEngine:
    """Caches the V-weight Gröbner basis of the graph ideal of one f."""

    def __init__(self, hypersurface: Hypersurface, budget: Budget | None = None) -> None:
        self.hypersurface = hypersurface
        self.budget = budget or Budget()
        self.graph = graph_ideal(hypersurface)

    @property
    def algebra(self) -> WeylAlgebra:
        return self.hypersurface.graph_algebra

    @property
    def weight(self) -> VWeight:
        return VWeight.along(self.algebra)

    @cached_property
    def v_basis(self) -> list[WeylElem]:
        with timed("graph ideal V-basis", logger=logger):
            basis = weyl_groebner(
                self.graph.generators, self.weight, max_pairs=self.budget.max_pairs
            )
        logger.debug(f"V-basis of the graph ideal of {self.hypersurface}: {len(basis)} elements")
        return basis

    def _initials(self, basis: Sequence[WeylElem]) -> list[WeylElem]:
        return [initial_form(g, self.weight) for g in basis]

    # global b-function

    @cached_property
    def bfunction(self) -> BFunction:
        """b_f without certificate."""
        coeffs = _theta_relation(self._initials(self.v_basis), self.algebra)
        result = BFunction.from_poly(_b_from_relation(coeffs, QQ))
        logger.info(f"b-function of {self.hypersurface}: {result}")
        return result

    def global_bfunction(self, *, certify: bool = True) -> BFunction:
        b = self.bfunction
        if not certify:
            return b
        for bound in range(1, b.degree + 2):
            operator = functional_equation_operator(self.hypersurface, b.b, bound)
            if operator is None:
                continue
            minimality = tuple(
                (root, functional_equation_operator(self.hypersurface, b.b.divide_root(root), bound) is None)
                for root, _ in b.distinct_roots
            )
            return BFunction(b.b, b.roots, operator, bound, minimality)
        logger.warning(f"no functional equation operator found for {b} within bound {b.degree + 1}")
        return b

    # element b-functions

    def annihilator_basis(
        self, handle: ElementHandle, guard: _ParameterGuard | None = None
    ) -> list[WeylElem]:
        """V-weight Gröbner basis of Ann(m) in D_{n+1}."""
        operator = handle.operator()
        domain = operator.algebra.domain
        constant = _constant_term(operator)
        if constant is not None and guard is not None:
            guard(constant)
        if constant is not None and domain == QQ:
            return self.v_basis
        generators = [g.to_domain(domain) for g in self.graph.generators]
        with timed("element annihilator", logger=logger):
            if constant is not None:
                ann = generators
            else:
                ann = left_ideal_quotient(
                    generators, operator, max_pairs=self.budget.max_pairs, guard=guard
                )
            return weyl_groebner(
                ann, self.weight, max_pairs=self.budget.max_pairs, guard=guard
            )

    def element_relation(self, handle: ElementHandle, guard: _ParameterGuard | None = None) -> UnivariatePoly:
        basis = self.annihilator_basis(handle, guard)
        algebra = basis[0].algebra
        coeffs = _theta_relation(self._initials(basis), algebra, guard)
        return _b_from_relation(coeffs, algebra.domain)

    def element_bfunction(self, handle: ElementHandle, *, certify: bool = True) -> BFunction:
        if handle.parameters:
            raise ValueError("use parametric_element_bfunction for parametric elements")
        if handle.is_zero:
            raise ZeroElement("the b-function of the zero element is undefined")
        basis = self.annihilator_basis(handle)
        initials = self._initials(basis)
        coeffs = _theta_relation(initials, self.algebra)
        b = BFunction.from_poly(_b_from_relation(coeffs, QQ))
        logger.debug(f"b-function of {handle}: {b}")
        if not certify:
            return b
        certificate = self._element_certificate(handle, basis, initials, coeffs, b)
        return BFunction(b.b, b.roots, certificate)

    def _element_certificate(
        self,
        handle: ElementHandle,
        basis: Sequence[WeylElem],
        initials: Sequence[WeylElem],
        coeffs: Sequence[Any],
        b: BFunction,
    ) -> WeylElem:
        """R of V-weight <= -1 with b(s) m = R m, checked by the module action."""
        algebra = self.algebra
        relation = algebra.zero
        power = algebra.one
        for c in coeffs:
            relation = relation + power.scale(c)
            power = power * theta(algebra)
        remainder, multipliers = normal_form_with_cofactors(relation, list(initials), v_order(algebra))
        if remainder:
            raise AssertionError(f"theta relation does not reduce to zero: {remainder}")
        residue = relation
        for q, g in zip(multipliers, basis, strict=True):
            residue = residue - q * g
        if b.degree % 2:
            residue = -residue
        vector = self.weight.vector(algebra)
        if any(sum(w * e for w, e in zip(vector, exps)) > -1 for exps in residue):
            raise AssertionError(f"certificate {residue} is not in V^1")
        m = handle.operator()
        delta = GraphElem.delta(self.hypersurface)
        if act(operator_of(b.b, algebra) * m, delta) != act(residue * m, delta):
            raise AssertionError(f"certificate for {handle} does not verify")
        return residue


def _constant_term(operator: WeylElem) -> Any | None:
    """The coefficient of a nonzero scalar operator, None otherwise."""
    if len(operator) != 1:
        return None
    ((exps, coeff),) = operator.items()
    return None if any(exps) else coeff


@lru_cache(maxsize=32)
def engine_for(hypersurface: Hypersurface, budget: Budget | None = None) -> BfunEngine:
    return BfunEngine(hypersurface, budget)


def _hypersurface(f: PolyElement | Hypersurface) -> Hypersurface:
    return f if isinstance(f, Hypersurface) else Hypersurface(f)


def global_bfunction(
    f: PolyElement | Hypersurface, *, budget: Budget | None = None, certify: bool = True
) -> BFunction:
    """b_f with a verified functional-equation certificate and minimality checks."""
    return engine_for(_hypersurface(f), budget).global_bfunction(certify=certify)


def element_bfunction(
    f: PolyElement | Hypersurface,
    handle: ElementHandle,
    *,
    budget: Budget | None = None,
    certify: bool = True,
) -> BFunction:
    """b_{f,m}: the least monic b with b(-dt*t) m in V^1 D_{n+1} m.

    Raises:
        ZeroElement: m = 0.
        NonRationalRoots: b keeps a non-linear factor.
    """
    return engine_for(_hypersurface(f), budget).element_bfunction(handle, certify=certify)


# functional equation


@lru_cache(maxsize=1024)
def _derivative_image(hs: Hypersurface, orders: tuple[int, ...]) -> SFsElem:
    """dx^orders applied to f^(s+1)."""
    if not any(orders):
        return SFsElem(hs, hs.f_s)
    position = max(i for i, e in enumerate(orders) if e)
    lower = list(orders)
    lower[position] -= 1
    return _derivative_image(hs, tuple(lower)).apply(f"d{hs.variables[position]}")


def _exponents_up_to(nvars: int, bound: int) -> list[tuple[int, ...]]:
    return [
        e for e in itertools.product(range(bound + 1), repeat=nvars) if sum(e) <= bound
    ]


def functional_equation_operator(
    f: PolyElement | Hypersurface, b: UnivariatePoly, bound: int
) -> WeylElem | None:
    """P in D_n[s] with P f^(s+1) = b(s) f^s, searched with order, x-degree
    <= ``bound`` and s-degree < ``bound``; None when no such P exists.

    A returned P has been re-applied to f^(s+1) and checked.
    """
    hs = _hypersurface(f)
    algebra = hs.s_algebra
    n = len(hs.variables)
    ring = hs.s_ring
    xs = [generator(ring, name) for name in hs.variables]
    unknowns = []
    images = []
    for orders in _exponents_up_to(n, bound):
        image = _derivative_image(hs, orders)
        for powers in _exponents_up_to(n, bound):
            monomial = ring.one
            for x, e in zip(xs, powers, strict=True):
                monomial *= x**e
            for c in range(bound):
                unknowns.append((powers, orders, c))
                images.append((image.numerator * monomial * hs.s**c, image.f_power))
    top = max(power for _, power in images)
    f = hs.f_s
    columns = [dict((numerator * f ** (top - power)).iterterms()) for numerator, power in images]
    b_s = _lift_b(b, hs)
    target = dict((b_s * f**top).iterterms())
    with timed(f"functional equation solve at bound {bound}", logger=logger):
        solution = solve(columns, target, QQ)
    if solution is None:
        return None
    terms = {}
    for (powers, orders, c), value in zip(unknowns, solution, strict=True):
        if value:
            terms[(*powers, *orders, c)] = value
    operator = WeylElem(algebra, terms)
    if act(operator, SFsElem(hs, hs.f_s)) != SFsElem(hs, b_s):
        raise AssertionError(f"functional equation operator {operator} does not verify")
    return operator


def _lift_b(b: UnivariatePoly, hs: Hypersurface) -> PolyElement:
    result = hs.s_ring.zero
    for i, c in enumerate(b.coeffs):
        result += hs.s**i * c
    return result


# Ann f^s


def ann_fs(f: PolyElement | Hypersurface, *, budget: Budget | None = None) -> list[WeylElem]:
    """Reduced Gröbner basis of Ann_{D_n[s]} f^s.

    Eliminates u, v from t - u*f, dx_i + u*f_i*dt, u*v - 1, brings each
    survivor to V-weight zero with a power of t or dt, and trades
    t^c dt^c = prod_{i<c} (-s - 1 - i).
    """
    hs = _hypersurface(f)
    budget = budget or Budget()
    big = WeylAlgebra((*hs.variables, "t"), ("u", "v"))
    u, v, t, dt = big.gen("u"), big.gen("v"), big.gen("t"), big.gen("dt")
    generators = [t - u * big.from_polynomial(hs.f), u * v - 1]
    for name in hs.variables:
        generators.append(big.gen(f"d{name}") + u * big.from_polynomial(hs.partials[name]) * dt)
    with timed("Ann f^s elimination", logger=logger):
        basis = weyl_groebner(
            generators, elimination_order(big, ["u", "v"]), max_pairs=budget.max_pairs
        )
    graph = hs.graph_algebra
    weight = VWeight.along(graph)
    width = graph.width
    survivors = [
        g.map_exponents(graph, lambda e: e[:width])
        for g in basis
        if all(e[width] == 0 and e[width + 1] == 0 for e in g)
    ]
    rewritten = []
    for g in survivors:
        degree = max(weight.of(e, graph) for e in g)
        if degree > 0:
            g = graph.gen("t") ** degree * g
        elif degree < 0:
            g = graph.gen("dt") ** (-degree) * g
        rewritten.append(_to_s_algebra(g, hs))
    result = weyl_groebner(rewritten, GREVLEX_WEYL, max_pairs=budget.max_pairs)
    logger.info(f"Ann f^s for {hs}: {len(result)} generators")
    return result


def _to_s_algebra(element: WeylElem, hs: Hypersurface) -> WeylElem:
    graph = hs.graph_algebra
    target = hs.s_algebra
    n = len(hs.variables)
    t_pos, dt_pos = graph.index("t"), graph.index("dt")
    result = target.zero
    for exps, coeff in element.items():
        c = exps[t_pos]
        if exps[dt_pos] != c:
            raise AssertionError(f"{element} is not of V-weight zero")
        factor = hs.s_ring.one
        for i in range(c):
            factor *= -hs.s - 1 - i
        base = exps[:n] + exps[n + 1 : 2 * n + 1]
        for monom, value in factor.iterterms():
            result = result + target.monomial((*base, monom[-1]), value * coeff)
    return result


# parametric element b-functions


@dataclass(frozen=True)
class Stratum:
    """A constructible set of parameter values with one b-function.

    ``bfunction`` is None when m vanishes identically on the stratum.
    """

    equations: tuple[str, ...]
    inequations: tuple[str, ...]
    bfunction: BFunction | None
    handle: ElementHandle = field(compare=False, repr=False)

    @property
    def condition(self) -> str:
        parts = [*self.equations, *self.inequations]
        return " and ".join(parts) if parts else "all"

    def __str__(self) -> str:
        value = "zero element" if self.bfunction is None else str(self.bfunction)
        return f"{self.condition}: {value}"


def parametric_element_bfunction(
    f: PolyElement | Hypersurface,
    handle: ElementHandle,
    *,
    budget: Budget | None = None,
) -> list[Stratum]:
    """Split parameter space into strata with a constant b_{f,m}.

    Every division by a coefficient that could vanish for some parameter
    values forks the computation into "factor != 0" and "factor = 0"; the
    second branch solves the (linear) factor for one parameter.

    Raises:
        UnsupportedParameterSplit: a branch condition is not linear.
    """
    engine = engine_for(_hypersurface(f), budget)
    strata = _explore(engine, handle, (), frozenset())
    return sorted(strata, key=lambda stratum: (stratum.equations, stratum.inequations))


def _explore(
    engine: BfunEngine,
    handle: ElementHandle,
    equations: tuple[str, ...],
    nonzero: frozenset[PolyElement],
) -> list[Stratum]:
    inequations = tuple(sorted(f"{format_poly(p)} != 0" for p in nonzero))
    if handle.is_zero:
        return [Stratum(equations, inequations, None, handle)]
    if not handle.parameters:
        return [Stratum(equations, inequations, engine.element_bfunction(handle), handle)]
    domain = handle.parameter_domain()
    guard = _ParameterGuard(domain, nonzero)
    try:
        b = engine.element_relation(handle, guard)
    except _Split as split:
        factor = split.factor
        logger.debug(f"splitting {handle} on {format_poly(factor)}")
        generic = _explore(engine, handle, equations, nonzero | {factor})
        name, value = _solve_linear(factor)
        special_nonzero = _substitute_conditions(nonzero, name, value)
        if special_nonzero is None:
            return generic
        special = _explore(
            engine,
            handle.substitute(name, value),
            (*equations, f"{name} = {format_poly(value)}"),
            special_nonzero,
        )
        return generic + special
    return [Stratum(equations, inequations, BFunction.from_poly(b), handle)]


def _solve_linear(factor: PolyElement) -> tuple[str, PolyElement]:
    if max(sum(monom) for monom in factor.itermonoms()) != 1:
        raise UnsupportedParameterSplit(f"cannot split on {format_poly(factor)} = 0")
    for index, symbol in enumerate(factor.ring.symbols):
        monom = tuple(1 if i == index else 0 for i in range(factor.ring.ngens))
        a = factor.get(monom)
        if a:
            rest = factor - factor.ring.gens[index] * a
            return str(symbol), rest.quo_ground(-a)
    raise UnsupportedParameterSplit(f"cannot split on {format_poly(factor)} = 0")


def _substitute_conditions(
    nonzero: frozenset[PolyElement], name: str, value: PolyElement
) -> frozenset[PolyElement] | None:
    """Nonzero conditions after eliminating ``name``; None if one becomes 0 = 0."""
    if not nonzero:
        return frozenset()
    ring = next(iter(nonzero)).ring
    remaining = [str(symbol) for symbol in ring.symbols if str(symbol) != name]
    gen = generator(ring, name)
    replacement = value.set_ring(ring)
    conditions = set()
    for p in nonzero:
        image = p.compose(gen, replacement)
        if not image:
            return None
        if image.is_ground:
            continue
        _, factors = image.set_ring(parameter_ring(remaining)).factor_list()
        conditions.update(factor.monic() for factor, _ in factors if not factor.is_ground)
    return frozenset(conditions)


# numerical invariants


def minimal_exponent(f: PolyElement | Hypersurface, *, budget: Budget | None = None) -> Any:
    """Least -root of b_f(s)/(s+1); None stands for infinity (b_f = s+1)."""
    b = global_bfunction(f, budget=budget, certify=False)
    reduced = b.b.divide_root(-1)
    if reduced.degree <= 0:
        return None
    return -max(rational_roots(reduced).roots)


def log_canonical_threshold(f: PolyElement | Hypersurface, *, budget: Budget | None = None) -> Any:
    exponent = minimal_exponent(f, budget=budget)
    if exponent is None:
        return QQ.one
    return min(QQ.one, exponent)
