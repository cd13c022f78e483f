"""Linear integer arithmetic formulas: terms, atoms, connectives, quantifiers.

The atom inventory is deliberately small.  A ``Leq`` atom stores a single
homogenized term ``t`` and asserts ``t <= 0``; a ``Cong`` atom stores a term
``t`` and a positive modulus ``p`` and asserts ``p | t`` (sign-agnostic
divisibility).  Every other relation (``<``, ``=``, ``>=``, ``>``, ``!=``)
exists only as parser sugar and is rewritten at parse time using integrality.

All arithmetic uses Python's arbitrary-precision integers; coefficient
normalization and quantifier elimination multiply coefficients by lcm's, so
fixed-width arithmetic would silently corrupt results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import CaptureError, EvaluationError

# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------


class Term:
    """An affine integer form ``sum(coeff * var) + constant``.

    Immutable; zero coefficients are never stored.  Variables are plain
    strings.
    """

    __slots__ = ("coeffs", "constant", "_hash")

    def __init__(self, coeffs: Mapping[str, int] | Iterable[tuple[str, int]] = (),
                 constant: int = 0) -> None:
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        cleaned = tuple(sorted((v, int(c)) for v, c in items if c != 0))
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "constant", int(constant))
        object.__setattr__(self, "_hash", hash((cleaned, self.constant)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Term is immutable")

    # -- algebra ------------------------------------------------------------

    def coeff(self, var: str) -> int:
        for v, c in self.coeffs:
            if v == var:
                return c
        return 0

    @property
    def vars(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def __add__(self, other: Term | int) -> Term:
        if isinstance(other, int):
            return Term(self.coeffs, self.constant + other)
        acc = dict(self.coeffs)
        for v, c in other.coeffs:
            acc[v] = acc.get(v, 0) + c
        return Term(acc, self.constant + other.constant)

    def __sub__(self, other: Term | int) -> Term:
        return self + (-other if isinstance(other, int) else other.scale(-1))

    def __neg__(self) -> Term:
        return self.scale(-1)

    def scale(self, factor: int) -> Term:
        if factor == 0:
            return Term((), 0)
        return Term(((v, c * factor) for v, c in self.coeffs), self.constant * factor)

    def drop(self, var: str) -> Term:
        """The term with ``var``'s summand removed."""
        return Term(((v, c) for v, c in self.coeffs if v != var), self.constant)

    def subst(self, var: str, replacement: Term) -> Term:
        """Replace ``var`` by ``replacement``, distributing its coefficient."""
        a = self.coeff(var)
        if a == 0:
            return self
        return self.drop(var) + replacement.scale(a)

    def evaluate(self, env: Mapping[str, int]) -> int:
        total = self.constant
        for v, c in self.coeffs:
            if v not in env:
                raise EvaluationError(f"variable {v!r} has no assigned value")
            total += c * env[v]
        return total

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Term) and self._hash == other._hash
                and self.coeffs == other.coeffs and self.constant == other.constant)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Term({dict(self.coeffs)!r}, {self.constant!r})"

    def __str__(self) -> str:
        parts: list[str] = []
        for v, c in self.coeffs:
            if c == 1:
                parts.append(f"+ {v}" if parts else v)
            elif c == -1:
                parts.append(f"- {v}" if parts else f"-{v}")
            elif c < 0:
                parts.append(f"- {-c}*{v}" if parts else f"{c}*{v}")
            else:
                parts.append(f"+ {c}*{v}" if parts else f"{c}*{v}")
        if self.constant or not parts:
            c = self.constant
            parts.append((f"+ {c}" if c >= 0 else f"- {-c}") if parts else str(c))
        return " ".join(parts)


def var(name: str) -> Term:
    return Term({name: 1})


def const(value: int) -> Term:
    return Term((), value)


# ---------------------------------------------------------------------------
# Formula nodes
# ---------------------------------------------------------------------------


class Formula:
    """Base class; concrete nodes are the subclasses below.

    Nodes are immutable and structurally hashable, which the simplifier and
    the quantifier-elimination code rely on for dedup and memoization.
    """

    __slots__ = ("_hash",)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("formulas are immutable")

    def _seal(self, key: tuple) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + key))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        from .textio import serialize
        return f"<{type(self).__name__} {serialize(self)}>"

    def __str__(self) -> str:
        from .textio import serialize
        return serialize(self)


class TrueF(Formula):
    __slots__ = ()

    def __init__(self) -> None:
        self._seal(())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TrueF)


class FalseF(Formula):
    __slots__ = ()

    def __init__(self) -> None:
        self._seal(())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FalseF)


TRUE = TrueF()
FALSE = FalseF()


class Leq(Formula):
    """``term <= 0`` in homogenized form."""

    __slots__ = ("term",)

    def __init__(self, term: Term) -> None:
        object.__setattr__(self, "term", term)
        self._seal((term,))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Leq) and self.term == other.term


class Cong(Formula):
    """``modulus | term`` (sign-agnostic divisibility); modulus >= 1."""

    __slots__ = ("term", "modulus")

    def __init__(self, term: Term, modulus: int) -> None:
        if modulus < 1:
            raise ValueError(f"congruence modulus must be positive, got {modulus}")
        object.__setattr__(self, "term", term)
        object.__setattr__(self, "modulus", int(modulus))
        self._seal((term, modulus))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Cong) and self.modulus == other.modulus
                and self.term == other.term)


class Not(Formula):
    __slots__ = ("arg",)

    def __init__(self, arg: Formula) -> None:
        object.__setattr__(self, "arg", arg)
        self._seal((arg,))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Not) and self.arg == other.arg


class _Nary(Formula):
    __slots__ = ("args",)

    def __init__(self, args: Iterable[Formula]) -> None:
        tup = tuple(args)
        if not tup:
            raise ValueError(f"{type(self).__name__} requires at least one operand")
        object.__setattr__(self, "args", tup)
        self._seal(tup)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.args == other.args


class And(_Nary):
    __slots__ = ()


class Or(_Nary):
    __slots__ = ()


class Implies(Formula):
    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Formula, rhs: Formula) -> None:
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)
        self._seal((lhs, rhs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Implies) and self.lhs == other.lhs and self.rhs == other.rhs


class _Quant(Formula):
    __slots__ = ("var", "body")

    def __init__(self, variable: str, body: Formula) -> None:
        object.__setattr__(self, "var", variable)
        object.__setattr__(self, "body", body)
        self._seal((variable, body))

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and self.var == other.var and self.body == other.body


class Exists(_Quant):
    __slots__ = ()


class Forall(_Quant):
    __slots__ = ()


# -- convenience constructors used by algorithmic code ----------------------


def and_(items: Iterable[Formula]) -> Formula:
    """Conjunction that flattens, drops TRUE, and collapses trivial cases."""
    flat: list[Formula] = []
    for f in items:
        if isinstance(f, FalseF):
            return FALSE
        if isinstance(f, TrueF):
            continue
        if isinstance(f, And):
            flat.extend(f.args)
        else:
            flat.append(f)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(flat)


def or_(items: Iterable[Formula]) -> Formula:
    flat: list[Formula] = []
    for f in items:
        if isinstance(f, TrueF):
            return TRUE
        if isinstance(f, FalseF):
            continue
        if isinstance(f, Or):
            flat.extend(f.args)
        else:
            flat.append(f)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(flat)


def leq(lhs: Term, rhs: Term | int = 0) -> Formula:
    """``lhs <= rhs`` homogenized into a Leq atom."""
    rhs_term = const(rhs) if isinstance(rhs, int) else rhs
    return Leq(lhs - rhs_term)


def eq(lhs: Term, rhs: Term | int = 0) -> Formula:
    """``lhs = rhs`` desugared into a pair of Leq atoms."""
    rhs_term = const(rhs) if isinstance(rhs, int) else rhs
    return And((Leq(lhs - rhs_term), Leq(rhs_term - lhs)))


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------


def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, Not):
        return (phi.arg,)
    if isinstance(phi, (And, Or)):
        return phi.args
    if isinstance(phi, Implies):
        return (phi.lhs, phi.rhs)
    if isinstance(phi, _Quant):
        return (phi.body,)
    return ()


def rebuild(phi: Formula, new_children: tuple[Formula, ...]) -> Formula:
    if isinstance(phi, Not):
        return Not(new_children[0])
    if isinstance(phi, And):
        return And(new_children)
    if isinstance(phi, Or):
        return Or(new_children)
    if isinstance(phi, Implies):
        return Implies(new_children[0], new_children[1])
    if isinstance(phi, Exists):
        return Exists(phi.var, new_children[0])
    if isinstance(phi, Forall):
        return Forall(phi.var, new_children[0])
    return phi


def atoms(phi: Formula) -> Iterator[Formula]:
    """All Leq/Cong atoms, left to right."""
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (Leq, Cong)):
            yield node
        else:
            stack.extend(reversed(children(node)))


def free_vars(phi: Formula) -> tuple[str, ...]:
    """Free variables in first-occurrence order (the canonical table order)."""
    seen: list[str] = []

    def walk(node: Formula, bound: frozenset[str]) -> None:
        if isinstance(node, (Leq, Cong)):
            for v in node.term.vars:
                if v not in bound and v not in seen:
                    seen.append(v)
        elif isinstance(node, _Quant):
            walk(node.body, bound | {node.var})
        else:
            for child in children(node):
                walk(child, bound)

    walk(phi, frozenset())
    return tuple(seen)


def bound_vars(phi: Formula) -> tuple[str, ...]:
    """Bound variables in quantifier (outside-in, left-to-right) order."""
    out: list[str] = []
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, _Quant):
            out.append(node.var)
        stack.extend(reversed(children(node)))
    return tuple(out)


def all_var_names(phi: Formula) -> set[str]:
    names: set[str] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (Leq, Cong)):
            names.update(node.term.vars)
        elif isinstance(node, _Quant):
            names.add(node.var)
        stack.extend(children(node))
    return names


def has_quantifier(phi: Formula) -> bool:
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, _Quant):
            return True
        stack.extend(children(node))
    return False


def fresh_name(base: str, used: set[str]) -> str:
    """A primed variant of ``base`` not in ``used`` (primes are grammar-legal)."""
    name = base + "'"
    while name in used:
        name += "'"
    return name


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(phi: Formula, env: Mapping[str, int]) -> bool:
    """Evaluate a quantifier-free formula under a total integer assignment.

    A congruence holds iff the modulus divides the evaluated term.  Raises
    EvaluationError on quantifiers or unassigned variables.
    """
    if isinstance(phi, TrueF):
        return True
    if isinstance(phi, FalseF):
        return False
    if isinstance(phi, Leq):
        return phi.term.evaluate(env) <= 0
    if isinstance(phi, Cong):
        return phi.term.evaluate(env) % phi.modulus == 0
    if isinstance(phi, Not):
        return not evaluate(phi.arg, env)
    if isinstance(phi, And):
        return all(evaluate(a, env) for a in phi.args)
    if isinstance(phi, Or):
        return any(evaluate(a, env) for a in phi.args)
    if isinstance(phi, Implies):
        return (not evaluate(phi.lhs, env)) or evaluate(phi.rhs, env)
    raise EvaluationError(f"cannot evaluate quantified formula {type(phi).__name__}")


def evaluate_bounded(phi: Formula, env: Mapping[str, int], radius: int) -> bool:
    """Evaluate with quantifiers expanded over witnesses in [-radius, radius].

    Only a sound decision procedure when ``radius`` dominates the witness
    bounds of the formula at hand; callers are responsible for choosing it.
    """
    if isinstance(phi, Exists):
        base = dict(env)
        for w in _centered(radius):
            base[phi.var] = w
            if evaluate_bounded(phi.body, base, radius):
                return True
        return False
    if isinstance(phi, Forall):
        base = dict(env)
        for w in _centered(radius):
            base[phi.var] = w
            if not evaluate_bounded(phi.body, base, radius):
                return False
        return True
    if isinstance(phi, Not):
        return not evaluate_bounded(phi.arg, env, radius)
    if isinstance(phi, And):
        return all(evaluate_bounded(a, env, radius) for a in phi.args)
    if isinstance(phi, Or):
        return any(evaluate_bounded(a, env, radius) for a in phi.args)
    if isinstance(phi, Implies):
        return ((not evaluate_bounded(phi.lhs, env, radius))
                or evaluate_bounded(phi.rhs, env, radius))
    return evaluate(phi, env)


def _centered(radius: int) -> Iterator[int]:
    yield 0
    for k in range(1, radius + 1):
        yield k
        yield -k


# ---------------------------------------------------------------------------
# Negation normal form
# ---------------------------------------------------------------------------


def to_nnf(phi: Formula) -> Formula:
    """Negation normal form.

    Implications are eliminated, negations are pushed through connectives and
    quantifiers, and a negated inequality is rewritten using integrality
    (``not (t <= 0)`` becomes ``-t + 1 <= 0``), so the only surviving
    negations sit directly on congruence atoms.
    """
    return _nnf(phi, positive=True)


def _nnf(phi: Formula, positive: bool) -> Formula:
    if isinstance(phi, TrueF):
        return TRUE if positive else FALSE
    if isinstance(phi, FalseF):
        return FALSE if positive else TRUE
    if isinstance(phi, Leq):
        # not (t <= 0)  <=>  t >= 1  <=>  -t + 1 <= 0
        return phi if positive else Leq(-phi.term + 1)
    if isinstance(phi, Cong):
        return phi if positive else Not(phi)
    if isinstance(phi, Not):
        return _nnf(phi.arg, not positive)
    if isinstance(phi, And):
        parts = tuple(_nnf(a, positive) for a in phi.args)
        return And(parts) if positive else Or(parts)
    if isinstance(phi, Or):
        parts = tuple(_nnf(a, positive) for a in phi.args)
        return Or(parts) if positive else And(parts)
    if isinstance(phi, Implies):
        if positive:
            return Or((_nnf(phi.lhs, False), _nnf(phi.rhs, True)))
        return And((_nnf(phi.lhs, True), _nnf(phi.rhs, False)))
    if isinstance(phi, Exists):
        body = _nnf(phi.body, positive)
        return Exists(phi.var, body) if positive else Forall(phi.var, body)
    if isinstance(phi, Forall):
        body = _nnf(phi.body, positive)
        return Forall(phi.var, body) if positive else Exists(phi.var, body)
    raise TypeError(f"unknown formula node {type(phi).__name__}")


def is_nnf(phi: Formula) -> bool:
    if isinstance(phi, Not):
        return isinstance(phi.arg, Cong)
    if isinstance(phi, Implies):
        return False
    return all(is_nnf(c) for c in children(phi))


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Metrics:
    """Size measures of a formula.

    ``length`` counts atoms, logical connectives, and quantifiers (an n-ary
    connective counts as n-1 binary ones).  ``max_coeff`` is the largest
    absolute coefficient or congruence modulus in any atom; ``max_const`` the
    largest absolute homogenized constant.
    """

    length: int
    max_coeff: int
    max_const: int


def metrics(phi: Formula) -> Metrics:
    length = 0
    max_coeff = 0
    max_const = 0
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, (TrueF, FalseF)):
            length += 1
        elif isinstance(node, (Leq, Cong)):
            length += 1
            for _, c in node.term.coeffs:
                max_coeff = max(max_coeff, abs(c))
            if isinstance(node, Cong):
                max_coeff = max(max_coeff, node.modulus)
            max_const = max(max_const, abs(node.term.constant))
        elif isinstance(node, (And, Or)):
            length += len(node.args) - 1
            stack.extend(node.args)
        elif isinstance(node, (Not, Implies, _Quant)):
            length += 1
            stack.extend(children(node))
        else:
            raise TypeError(f"unknown formula node {type(node).__name__}")
    return Metrics(length, max_coeff, max_const)


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------


def substitute(phi: Formula, variable: str, replacement: Term) -> Formula:
    """Replace every occurrence of ``variable`` in atoms by ``replacement``.

    Raises CaptureError if the variable is bound inside ``phi`` or the
    replacement mentions a variable that is bound in ``phi``.
    """
    bound = set(bound_vars(phi))
    if variable in bound:
        raise CaptureError(f"{variable!r} is bound inside the formula")
    clash = bound.intersection(replacement.vars)
    if clash:
        raise CaptureError(f"substitution would capture {sorted(clash)!r}")
    return _subst(phi, variable, replacement)


def _subst(phi: Formula, variable: str, replacement: Term) -> Formula:
    if isinstance(phi, Leq):
        return Leq(phi.term.subst(variable, replacement))
    if isinstance(phi, Cong):
        return Cong(phi.term.subst(variable, replacement), phi.modulus)
    kids = children(phi)
    if not kids:
        return phi
    new_kids = tuple(_subst(c, variable, replacement) for c in kids)
    if new_kids == kids:
        return phi
    return rebuild(phi, new_kids)


def map_atoms(phi: Formula, fn: Callable[[Formula], Formula]) -> Formula:
    if isinstance(phi, (Leq, Cong)):
        return fn(phi)
    kids = children(phi)
    if not kids:
        return phi
    return rebuild(phi, tuple(map_atoms(c, fn) for c in kids))


# ---------------------------------------------------------------------------
# Simplification
# ---------------------------------------------------------------------------


def _simplify_leq(term: Term) -> Formula:
    if term.is_constant():
        return TRUE if term.constant <= 0 else FALSE
    g = math.gcd(*(abs(c) for _, c in term.coeffs))
    if g > 1:
        # sum(a*x) <= -c  tightens to  sum(a/g*x) <= floor(-c/g)  over integers
        new_const = -((-term.constant) // g)
        term = Term(((v, c // g) for v, c in term.coeffs), new_const)
    return Leq(term)


def _simplify_cong(term: Term, modulus: int, negated: bool) -> Formula:
    if modulus == 1:
        return FALSE if negated else TRUE
    if term.is_constant():
        holds = term.constant % modulus == 0
        return TRUE if holds != negated else FALSE
    g = math.gcd(modulus, *(abs(c) for _, c in term.coeffs))
    if term.constant % g != 0:
        # divisibility forces the constant to share the common factor
        return TRUE if negated else FALSE
    if g > 1:
        term = Term(((v, c // g) for v, c in term.coeffs), term.constant // g)
        modulus //= g
    if modulus == 1:
        return FALSE if negated else TRUE
    reduced = term.constant % modulus
    if reduced != term.constant:
        term = Term(term.coeffs, reduced)
    atom = Cong(term, modulus)
    return Not(atom) if negated else atom


def _neg_literal_key(phi: Formula) -> Formula | None:
    """The formula whose presence alongside ``phi`` makes a conjunction false."""
    if isinstance(phi, Leq):
        return _simplify_leq(-phi.term + 1)
    if isinstance(phi, Cong):
        return Not(phi)
    if isinstance(phi, Not) and isinstance(phi.arg, Cong):
        return phi.arg
    return None


def simplify(phi: Formula, _memo: dict[Formula, Formula] | None = None) -> Formula:
    """Equivalence-preserving cleanup.

    Folds ground atoms, gcd-reduces inequality and congruence atoms, drops
    modulus-1 congruences, absorbs TRUE/FALSE, flattens and dedupes n-ary
    connectives, detects complementary literal pairs, and removes quantifiers
    whose variable does not occur.  Keeps NNF inputs in NNF.
    """
    if _memo is None:
        _memo = {}
    cached = _memo.get(phi)
    if cached is not None:
        return cached
    result = _simplify(phi, _memo)
    _memo[phi] = result
    return result


def _simplify(phi: Formula, memo: dict[Formula, Formula]) -> Formula:
    if isinstance(phi, (TrueF, FalseF)):
        return phi
    if isinstance(phi, Leq):
        return _simplify_leq(phi.term)
    if isinstance(phi, Cong):
        return _simplify_cong(phi.term, phi.modulus, negated=False)
    if isinstance(phi, Not):
        arg = simplify(phi.arg, memo)
        if isinstance(arg, TrueF):
            return FALSE
        if isinstance(arg, FalseF):
            return TRUE
        if isinstance(arg, Not):
            return arg.arg
        if isinstance(arg, Leq):
            return _simplify_leq(-arg.term + 1)
        if isinstance(arg, Cong):
            return _simplify_cong(arg.term, arg.modulus, negated=True)
        return Not(arg)
    if isinstance(phi, Implies):
        lhs = simplify(phi.lhs, memo)
        rhs = simplify(phi.rhs, memo)
        if isinstance(lhs, FalseF) or isinstance(rhs, TrueF):
            return TRUE
        if isinstance(lhs, TrueF):
            return rhs
        if isinstance(rhs, FalseF):
            return simplify(Not(lhs), memo)
        return Implies(lhs, rhs)
    if isinstance(phi, (And, Or)):
        return _simplify_nary(phi, memo)
    if isinstance(phi, _Quant):
        body = simplify(phi.body, memo)
        if isinstance(body, (TrueF, FalseF)):
            return body
        if phi.var not in free_vars(body):
            return body
        return rebuild(phi, (body,))
    raise TypeError(f"unknown formula node {type(phi).__name__}")


def _simplify_nary(phi: And | Or, memo: dict[Formula, Formula]) -> Formula:
    conj = isinstance(phi, And)
    absorbing: Formula = FALSE if conj else TRUE
    neutral: Formula = TRUE if conj else FALSE
    flat: list[Formula] = []
    seen: set[Formula] = set()
    work = list(phi.args)
    i = 0
    while i < len(work):
        item = simplify(work[i], memo)
        i += 1
        if item == absorbing:
            return absorbing
        if item == neutral:
            continue
        if type(item) is type(phi):
            work[i:i] = list(item.args)  # flatten same-kind children
            continue
        if item in seen:
            continue
        seen.add(item)
        flat.append(item)
    if conj:
        for item in flat:
            comp = _neg_literal_key(item)
            if comp is not None and comp in seen:
                return FALSE
        flat = _tighten_bounds(flat, keep_tightest=True)
    else:
        flat = _tighten_bounds(flat, keep_tightest=False)
    if not flat:
        return neutral
    if len(flat) == 1:
        return flat[0]
    return And(flat) if conj else Or(flat)


def _tighten_bounds(items: list[Formula], keep_tightest: bool) -> list[Formula]:
    """Collapse Leq atoms sharing a variable part.

    In a conjunction the largest homogenized constant wins (tightest bound);
    in a disjunction the smallest (weakest) wins.
    """
    best: dict[tuple, int] = {}
    for item in items:
        if isinstance(item, Leq) and not item.term.is_constant():
            key = item.term.coeffs
            c = item.term.constant
            if key not in best:
                best[key] = c
            else:
                best[key] = max(best[key], c) if keep_tightest else min(best[key], c)
    if not best:
        return items
    out: list[Formula] = []
    emitted: set[tuple] = set()
    for item in items:
        if isinstance(item, Leq) and not item.term.is_constant():
            key = item.term.coeffs
            if key in emitted:
                continue
            emitted.add(key)
            out.append(Leq(Term(key, best[key])))
        else:
            out.append(item)
    return out
