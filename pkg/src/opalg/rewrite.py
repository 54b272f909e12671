"""Rule schemas, commutative pattern matching, and normal forms.

A rule schema is a monic polynomial over pattern variables; its leading word
is the pattern rewritten, and the remainder (negated) is the template it
rewrites to, so every rewrite strictly lowers the replaced word in the term
order.  Variables are letters drawn from a reserved namespace and may stand
for any word, including the unit.

Matching is multiset matching against the factors of some level of the
target word: the pattern's operator factors pair injectively with factors of
that level (arguments matched recursively and exactly), the surrounding
factors become the context, and a variable standing alone inside an operator
argument absorbs whatever of that argument is left.  Patterns are required
to be linear (each variable read exactly once), which keeps the enumeration
of matches complete and finite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .poly import OpPolynomial
from .terms import Context, Word, positions, substitute_letters

__all__ = [
    "RuleSchema",
    "Match",
    "Step",
    "NFResult",
    "match_rule",
    "reduce_once",
    "normal_form",
    "is_irreducible",
    "ideal_member",
    "certificate_sum",
    "StepLimitExceeded",
    "UnverifiedTheory",
    "RuleValidationError",
]

DEFAULT_STEP_LIMIT = 1_000_000


class StepLimitExceeded(RuntimeError):
    """Reduction hit the configured step cap."""


class UnverifiedTheory(RuntimeError):
    """Ideal membership was asked of a rule set not known to be complete."""


class RuleValidationError(ValueError):
    """A rule schema violates the engine's pattern requirements."""


def _letter_count(word, name):
    n = word.letters.count(name)
    for f in word.ops:
        n += _letter_count(f.arg, name)
    return n


class RuleSchema:
    """A named monic rewrite rule with linear variable pattern."""

    __slots__ = ("name", "variables", "poly", "lhs", "rhs")

    def __init__(self, name, variables, poly):
        variables = tuple(variables)
        if poly.is_zero():
            raise RuleValidationError(f"rule {name}: zero polynomial")
        lhs, lead_coeff = poly.leading()
        if not lead_coeff.is_one():
            raise RuleValidationError(f"rule {name}: not monic")
        if lhs.is_unit():
            raise RuleValidationError(f"rule {name}: pattern is the unit word")
        varset = set(variables)
        for v in varset:
            if _letter_count(lhs, v) != 1:
                raise RuleValidationError(
                    f"rule {name}: variable {v} must occur exactly once in the pattern"
                )
        for v in lhs.letters:
            if v in varset:
                raise RuleValidationError(
                    f"rule {name}: variable {v} stands bare at the top of the pattern"
                )
        _check_arg_levels(name, lhs, varset)
        rhs = OpPolynomial.from_word(lhs) - poly
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    def __setattr__(self, *_):
        raise AttributeError("RuleSchema is immutable")

    def instantiate(self, binding):
        """The rule polynomial with variables replaced by bound words."""
        return self.poly.substitute_letters(binding)

    def lhs_instance(self, binding):
        return substitute_letters(self.lhs, binding)

    def rhs_instance(self, binding):
        return self.rhs.substitute_letters(binding)

    def check_order_compatible(self, letters, operators, samples=25, seed=7):
        """Sample instantiations and check every right monomial sits below the pattern."""
        from .sampling import random_word

        rng = random.Random(seed)
        for _ in range(samples):
            binding = {
                v: random_word(rng, rng.randint(0, 4), letters, operators)
                for v in self.variables
            }
            lhs = self.lhs_instance(binding)
            for w in self.rhs_instance(binding).monomials():
                if not w < lhs:
                    raise RuleValidationError(
                        f"rule {self.name}: instance monomial {w} not below pattern {lhs}"
                    )

    def __repr__(self):
        return f"RuleSchema({self.name})"


def _check_arg_levels(name, word, varset):
    for f in word.ops:
        bare = [v for v in f.arg.letters if v in varset]
        if len(bare) > 1:
            raise RuleValidationError(
                f"rule {name}: more than one bare variable inside one argument"
            )
        _check_arg_levels(name, f.arg, varset)


@dataclass(frozen=True)
class Match:
    rule: RuleSchema
    context: Context
    binding: dict

    @property
    def key(self):
        return (
            self.context.key,
            tuple(sorted((v, w.key) for v, w in self.binding.items())),
        )


@dataclass(frozen=True)
class Step:
    """One rewrite: coefficient * context[pattern instance] was replaced."""

    rule: RuleSchema
    context: Context
    binding: dict
    redex: Word
    coefficient: object
    before: OpPolynomial
    after: OpPolynomial


@dataclass(frozen=True)
class NFResult:
    poly: OpPolynomial
    steps: tuple


# ---------------------------------------------------------------------------
# matching
# ---------------------------------------------------------------------------

def _match_exact(pattern, target, varset, binding):
    """Bindings making pattern cover all of target, at one operator argument."""
    concrete = tuple(l for l in pattern.letters if l not in varset)
    bare_vars = [l for l in pattern.letters if l in varset]
    rest_letters = _subtract_sorted(target.letters, concrete)
    if rest_letters is None:
        return []
    out = []
    for bnd, used in _assign_ops(list(pattern.ops), target.ops, varset, binding):
        leftover_ops = tuple(
            f for i, f in enumerate(target.ops) if i not in used
        )
        if bare_vars:
            word = Word(rest_letters, leftover_ops)
            b2 = dict(bnd)
            b2[bare_vars[0]] = word
            out.append(b2)
        else:
            if rest_letters or leftover_ops:
                continue
            out.append(bnd)
    return _dedup_bindings(out)


def _assign_ops(pat_ops, target_ops, varset, binding, used=frozenset()):
    """Injective assignments of pattern operator factors to target factors.

    Identical target factors are interchangeable, so only the first free one
    is tried; this keeps the result list duplicate-free.
    """
    if not pat_ops:
        return [(binding, used)]
    first, rest = pat_ops[0], pat_ops[1:]
    out = []
    tried = set()
    for i, tf in enumerate(target_ops):
        if i in used or tf.op != first.op or tf in tried:
            continue
        tried.add(tf)
        for b1 in _match_exact(first.arg, tf.arg, varset, binding):
            out.extend(_assign_ops(rest, target_ops, varset, b1, used | {i}))
    return out


def _subtract_sorted(a, b):
    if not b:
        return a
    out = []
    ia, ib = 0, 0
    while ia < len(a) and ib < len(b):
        if a[ia] == b[ib]:
            ia += 1
            ib += 1
        else:
            out.append(a[ia])
            ia += 1
    if ib < len(b):
        return None
    out.extend(a[ia:])
    if len(out) != len(a) - len(b):
        return None
    return tuple(out)


def _dedup_bindings(bindings):
    seen = set()
    out = []
    for b in bindings:
        key = tuple(sorted((v, w.key) for v, w in b.items()))
        if key not in seen:
            seen.add(key)
            out.append(b)
    return out


def _match_at_level(rule, level):
    """(binding, leftover word) pairs matching the pattern into one level."""
    varset = set(rule.variables)
    lhs = rule.lhs
    rest_letters = _subtract_sorted(level.letters, lhs.letters)
    if rest_letters is None or len(lhs.ops) > len(level.ops):
        return []
    out = []
    seen = set()
    for bnd, used in _assign_ops(list(lhs.ops), level.ops, varset, {}):
        leftover = Word(
            rest_letters, tuple(f for i, f in enumerate(level.ops) if i not in used)
        )
        key = (
            tuple(sorted((v, w.key) for v, w in bnd.items())),
            leftover.key,
        )
        if key not in seen:
            seen.add(key)
            out.append((bnd, leftover))
    return out


def match_rule(m, rule):
    """Every (context, binding) at which the rule's pattern occurs in m.

    Words are immutable and recur across reduction steps, so results are
    memoised per (rule, word); the cache is cleared when it grows large.
    """
    key = (rule, m)
    cached = _MATCH_CACHE.get(key)
    if cached is not None:
        return cached
    out = []
    for spine, sub in positions(m):
        for binding, leftover in _match_at_level(rule, sub):
            cofactors = [s for s, _ in spine]
            cofactors.append(leftover)
            ctx = Context(cofactors, tuple(op for _, op in spine))
            out.append(Match(rule, ctx, binding))
    out.sort(key=lambda mt: mt.key)
    if len(_MATCH_CACHE) > _MATCH_CACHE_LIMIT:
        _MATCH_CACHE.clear()
    _MATCH_CACHE[key] = out
    return out


_MATCH_CACHE = {}
_MATCH_CACHE_LIMIT = 400_000


def _has_match(m, rules):
    return any(match_rule(m, rule) for rule in rules)


def is_irreducible(word, rules):
    return not _has_match(word, rules)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def _apply(f, word, match):
    c = f.coefficient(word)
    rhs_inst = match.rule.rhs_instance(match.binding)
    repl_poly = rhs_inst.in_context(match.context).scale(c)
    after = f - OpPolynomial.from_word(word, c) + repl_poly
    return after, c


def reduce_once(f, rules, strategy="leading", rng=None):
    """Apply one rewrite; returns (polynomial, step or None)."""
    if strategy == "leading":
        for word, _ in f.terms_desc():
            for rule in rules:
                matches = match_rule(word, rule)
                if matches:
                    match = matches[0]
                    after, c = _apply(f, word, match)
                    return after, Step(rule, match.context, match.binding, word, c, f, after)
        return f, None
    if strategy == "random":
        if rng is None:
            rng = random.Random(0)
        candidates = []
        for word, _ in f.terms_desc():
            for rule in rules:
                for match in match_rule(word, rule):
                    candidates.append((word, match))
        if not candidates:
            return f, None
        word, match = candidates[rng.randrange(len(candidates))]
        after, c = _apply(f, word, match)
        return after, Step(match.rule, match.context, match.binding, word, c, f, after)
    raise ValueError(f"unknown strategy {strategy!r}")


def normal_form(
    f,
    rules,
    strategy="leading",
    seed=0,
    step_limit=DEFAULT_STEP_LIMIT,
    collect_steps=False,
):
    """Reduce to a fixed point of reduce_once.

    Termination is guaranteed for order-compatible rules because each step
    strictly lowers the replaced word; the step cap is a defence against
    rule sets that are not.
    """
    rng = random.Random(seed) if strategy == "random" else None
    steps = []
    count = 0
    while True:
        f2, step = reduce_once(f, rules, strategy=strategy, rng=rng)
        if step is None:
            return NFResult(f, tuple(steps))
        if collect_steps:
            steps.append(step)
        f = f2
        count += 1
        if count > step_limit:
            raise StepLimitExceeded(f"no normal form within {step_limit} steps")


def certificate_sum(steps):
    """Replay a trace: the sum of c_i * q_i[rule instance_i].

    Equals (input - normal form) exactly; the acceptance suite checks this.
    """
    total = OpPolynomial.zero()
    for s in steps:
        inst = s.rule.instantiate(s.binding)
        total = total + inst.in_context(s.context).scale(s.coefficient)
    return total


def ideal_member(f, theory, assume_gs=False):
    """Whether f lies in the operated ideal generated by the theory's rules.

    Valid in both directions only when the rule set is a complete
    (confluent) basis; the theory must carry positive verification evidence
    or the caller must explicitly assume it.
    """
    if not (assume_gs or getattr(theory, "gs_verified", False)):
        raise UnverifiedTheory(
            f"theory {getattr(theory, 'name', '?')} has not passed verification; "
            "membership would be one-sided"
        )
    return normal_form(f, theory.rules).poly.is_zero()
