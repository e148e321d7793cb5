"""Recognizers for presentation shapes carried by knot-like groups.

The decidable checks here work entirely inside the free group: a relator
either has the required shape up to free equality or it does not, and the
evidence (indices, conjugators, permutations) makes every Yes auditable.
The one semi-decision, the free-group reduction inside ``two_knot_check``,
returns Unknown rather than guess when its budget runs out.
"""

from collections import deque

from .abelian import h1_is_infinite_cyclic
from .coset import DEFAULT_MAX_COSETS, weight_one_witness_check
from .outcomes import CheckOutcome
from .presentations import (
    IdentitySequence,
    Presentation,
    TietzeBudget,
    tietze_neighbors,
)
from .words import EMPTY, Word, cyclic_reduce

DEFAULT_ELIMINATION_LETTERS = 2048


def _conjugate_to_generator(u):
    """If ``u`` is conjugate in the free group to a generator, return the
    pair ``(j, w)`` with ``w^-1 x_j w == u``; otherwise None."""
    core, peel = cyclic_reduce(u)
    if len(core) == 1 and core.letters[0] > 0:
        return core.letters[0], ~peel
    return None


def is_wirtinger(p):
    """Decide whether every relator freely equals x_i^-1 w^-1 x_j w.

    Multiplying a relator of that shape on the left by x_i leaves a
    conjugate of x_j, so each relator is tested against every choice of i.
    The case i = j is allowed (the relator is then freely trivial).
    """
    patterns = []
    for idx, r in enumerate(p.relators):
        hit = None
        for i in range(1, len(p.generators) + 1):
            found = _conjugate_to_generator(Word([i]) * r)
            if found is not None:
                hit = (i, found[0], found[1])
                break
        if hit is None:
            return CheckOutcome.no(
                evidence={
                    "relator": idx,
                    "reason": "not a conjugation relator for any generator",
                }
            )
        patterns.append(hit)
    return CheckOutcome.yes(
        evidence={
            "patterns": [[i, j, p.spell(w)] for i, j, w in patterns],
        }
    )


def _companion(j, relator):
    """The word beta with relator == x_j^-1 beta in the free group."""
    return Word([j]) * relator


def artin_check(p):
    """Decide whether the presentation is a closed-braid form of a classical
    knot group: one relator x_j^-1 beta_j per generator, each beta_j
    conjugate to the cyclically next generator, and the beta product freely
    equal to the generator product.
    """
    n = len(p.generators)
    if n == 0:
        return CheckOutcome.no(evidence={"reason": "no generators"})
    if len(p.relators) != n:
        return CheckOutcome.no(
            evidence={
                "reason": "relator count differs from generator count",
                "generators": n,
                "relators": len(p.relators),
            }
        )
    mu = []
    conjugators = []
    betas = []
    for j in range(1, n + 1):
        beta = _companion(j, p.relators[j - 1])
        found = _conjugate_to_generator(beta)
        if found is None:
            return CheckOutcome.no(
                evidence={
                    "relator": j - 1,
                    "reason": "companion word is not conjugate to a generator",
                }
            )
        mu.append(found[0])
        conjugators.append(found[1])
        betas.append(beta)
    cycle = [j % n + 1 for j in range(1, n + 1)]
    if mu != cycle:
        return CheckOutcome.no(
            evidence={"mu": mu, "reason": "companion map is not the full cycle"}
        )
    lhs = EMPTY
    rhs = EMPTY
    for j, beta in enumerate(betas, start=1):
        lhs = lhs * beta
        rhs = rhs * Word([j])
    if lhs != rhs:
        return CheckOutcome.no(
            evidence={"reason": "companion product differs from generator product"}
        )
    return CheckOutcome.yes(
        evidence={
            "mu": mu,
            "conjugators": [p.spell(w) for w in conjugators],
        }
    )


def _orbits(n, maps):
    """Orbit partition of {1..n} under a list of permutations (as 1-based
    image lists), each orbit sorted, orbits sorted by their least element."""
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for images in maps:
        for j in range(1, n + 1):
            ra, rb = find(j), find(images[j - 1])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    buckets = {}
    for j in range(1, n + 1):
        buckets.setdefault(find(j), []).append(j)
    return [sorted(v) for _, v in sorted(buckets.items())]


def _solve_for(relator, g):
    """Rewrite a relator with a single occurrence of generator ``g`` as a
    defining word for ``g`` that avoids ``g``."""
    letters = relator.letters
    pos = next(k for k, l in enumerate(letters) if abs(l) == g)
    before = Word(letters[:pos])
    after = Word(letters[pos + 1 :])
    if letters[pos] > 0:
        return (~before) * (~after)
    return after * before


def _eliminate_to_free(ngens, relators, max_letters):
    """Bounded generator elimination aiming at a free presentation.

    Repeatedly picks the first relator holding a generator that occurs in
    it exactly once, solves for that generator, and substitutes everywhere,
    skipping candidates whose substitution would exceed ``max_letters`` in
    any relator.  Returns (True, trace) once no relators are left, else
    (False, trace); the trace lists [relator_pos, generator_pos, word] steps
    against the surviving presentation at each step.
    """
    count = ngens
    rels = [r for r in relators if r]
    trace = []
    while rels:
        step = None
        for ri, r in enumerate(rels):
            for g in range(1, count + 1):
                hits = 0
                for l in r.letters:
                    if abs(l) == g:
                        hits += 1
                        if hits > 1:
                            break
                if hits != 1:
                    continue
                rep = _solve_for(r, g)
                images = [Word([k + 1]) for k in range(count)]
                images[g - 1] = rep
                collapse = [
                    Word([k + 1 if k < g - 1 else k]) if k != g - 1 else EMPTY
                    for k in range(count)
                ]
                new_rels = []
                ok = True
                for rj, other in enumerate(rels):
                    if rj == ri:
                        continue
                    sub = other.substitute(images).substitute(collapse)
                    if len(sub) > max_letters:
                        ok = False
                        break
                    new_rels.append(sub)
                if ok:
                    step = (ri, g, rep, new_rels)
                    break
            if step is not None:
                break
        if step is None:
            return False, trace
        ri, g, rep, new_rels = step
        trace.append([ri, g, rep])
        count -= 1
        rels = [r for r in new_rels if r]
    return True, trace


def replay_elimination(ngens, relators, trace):
    """Re-run an elimination trace and confirm it ends with no relators.

    Each step must name a live relator position and a generator occurring
    exactly once in that relator; the defining word is recomputed, and when
    a step carries a recorded word it must match the recomputed one.
    """
    count = ngens
    rels = [r for r in relators if r]
    for entry in trace:
        ri, g = entry[0], entry[1]
        if not (0 <= ri < len(rels)) or not (1 <= g <= count):
            return False
        r = rels[ri]
        if sum(1 for l in r.letters if abs(l) == g) != 1:
            return False
        rep = _solve_for(r, g)
        if len(entry) > 2 and isinstance(entry[2], Word) and entry[2] != rep:
            return False
        images = [Word([k + 1]) for k in range(count)]
        images[g - 1] = rep
        collapse = [
            Word([k + 1 if k < g - 1 else k]) if k != g - 1 else EMPTY
            for k in range(count)
        ]
        rels = [
            other.substitute(images).substitute(collapse)
            for rj, other in enumerate(rels)
            if rj != ri
        ]
        rels = [r for r in rels if r]
        count -= 1
    return not rels


def two_knot_check(p, h, budget=DEFAULT_ELIMINATION_LETTERS):
    """Check the presentation shape carried by spun and twisted 2-knots.

    The first ``h`` relators must pair consecutive generators as
    x_{2i-1}^-1 x_{2i}; the remaining ones must be companion relators whose
    targets form a permutation that, together with the pairing involution,
    acts transitively.  On top of the decidable shape conditions, both the
    companion family and its derived rewrite must reduce to free
    presentations; that search is bounded, so the outcome may be Unknown,
    but a Yes always ships a replayable elimination trace.
    """
    n = len(p.generators)
    if h < 0 or 2 * h > n:
        raise ValueError("pair count out of range for %d generators" % n)
    if len(p.relators) != h + n:
        return CheckOutcome.no(
            evidence={
                "reason": "relator count differs from pairing plus companion rows",
                "expected": h + n,
                "relators": len(p.relators),
            }
        )
    for i in range(1, h + 1):
        want = Word([-(2 * i - 1), 2 * i])
        if p.relators[i - 1] != want:
            return CheckOutcome.no(
                evidence={
                    "relator": i - 1,
                    "reason": "missing pairing relator",
                    "expected": p.spell(want),
                }
            )
    mu = []
    conjugators = []
    betas = []
    for j in range(1, n + 1):
        beta = _companion(j, p.relators[h + j - 1])
        found = _conjugate_to_generator(beta)
        if found is None:
            return CheckOutcome.no(
                evidence={
                    "relator": h + j - 1,
                    "reason": "companion word is not conjugate to a generator",
                }
            )
        mu.append(found[0])
        conjugators.append(found[1])
        betas.append(beta)
    if sorted(mu) != list(range(1, n + 1)):
        return CheckOutcome.no(
            evidence={"mu": mu, "reason": "companion map is not a permutation"}
        )
    lhs = EMPTY
    rhs = EMPTY
    for j, beta in enumerate(betas, start=1):
        lhs = lhs * beta
        rhs = rhs * Word([j])
    if lhs != rhs:
        return CheckOutcome.no(
            evidence={"reason": "companion product differs from generator product"}
        )
    pairing = list(range(1, n + 1))
    for i in range(1, h + 1):
        pairing[2 * i - 2], pairing[2 * i - 1] = 2 * i, 2 * i - 1
    orbits = _orbits(n, [mu, pairing])
    if len(orbits) > 1:
        return CheckOutcome.no(
            evidence={"reason": "pairing and companion map act intransitively",
                      "orbits": orbits}
        )
    derived = []
    for j in range(1, n + 1):
        if j % 2 == 1 and j < 2 * h:
            x = Word([j + 1])
            derived.append(x * betas[j] * ~x)
        elif j % 2 == 0 and j <= 2 * h:
            derived.append(betas[j - 2])
        else:
            derived.append(betas[j - 1])
    plain_rels = [~Word([j + 1]) * beta for j, beta in enumerate(betas)]
    derived_rels = [~Word([j + 1]) * beta for j, beta in enumerate(derived)]
    ok_plain, trace_plain = _eliminate_to_free(n, plain_rels, budget)
    ok_derived, trace_derived = _eliminate_to_free(n, derived_rels, budget)
    if not (ok_plain and ok_derived):
        stuck = []
        if not ok_plain:
            stuck.append("companion family")
        if not ok_derived:
            stuck.append("derived family")
        return CheckOutcome.unknown(
            budget_used=budget,
            evidence={
                "reason": "free-group reduction did not finish",
                "stuck": stuck,
            },
        )
    return CheckOutcome.yes(
        evidence={
            "mu": mu,
            "conjugators": [p.spell(w) for w in conjugators],
            "elimination": [[ri, g, p.spell(w)] for ri, g, w in trace_plain],
            "elimination_derived": [
                [ri, g, p.spell(w)] for ri, g, w in trace_derived
            ],
        }
    )


def verify_identity(p, pi):
    """True iff the product of conjugated signed relators reduces to the
    empty word in the free group."""
    if not isinstance(pi, IdentitySequence):
        pi = IdentitySequence(tuple(pi))
    return pi.product(p) == EMPTY


def kervaire_report(p, candidates=(), max_cosets=DEFAULT_MAX_COSETS,
                    identity_sequences=None):
    """Report on the three conditions a higher-knot group must satisfy.

    First homology infinite cyclic is decided outright.  Each candidate word
    gets a bounded normal-closure check.  Second homology vanishing is only
    ever certified from caller-supplied identity sequences (verified here);
    without them it is reported as not determined, never guessed.
    """
    h1_ok = h1_is_infinite_cyclic(p)
    report = {"h1_infinite_cyclic": "yes" if h1_ok else "no"}
    weight = []
    any_weight_yes = False
    for t in candidates:
        out = weight_one_witness_check(p, t, max_cosets)
        entry = {"word": p.spell(t), "normal_closure_is_all": out.verdict}
        if out.budget_used is not None:
            entry["budget_used"] = out.budget_used
        weight.append(entry)
        any_weight_yes = any_weight_yes or out.is_yes
    report["candidates"] = weight
    certified = False
    if identity_sequences is not None:
        certified = all(verify_identity(p, seq) for seq in identity_sequences)
    report["h2_trivial"] = "certified" if certified else "not determined"
    if not h1_ok:
        report["verdict"] = "no"
    elif any_weight_yes and certified:
        report["verdict"] = "yes"
    else:
        report["verdict"] = "unknown"
    return report


def enumerate_weight_one(budget, moves=TietzeBudget()):
    """Stream pairs (presentation, witness) whose quotient by the witness is
    certifiably trivial.

    Walks move-certified rewrites of the one-relator collapse <x | x> in
    breadth-first order; every node presents the trivial group, so deleting
    its first relator leaves a presentation normally generated by that
    relator.  Stops after ``budget`` emissions.
    """
    if budget <= 0:
        return
    seed = Presentation(("x",), [Word([1])])
    seen = {seed}
    queue = deque([seed])
    emitted = 0
    while queue:
        current = queue.popleft()
        if current.relators:
            yield (
                Presentation(current.generators, current.relators[1:]),
                current.relators[0],
            )
            emitted += 1
            if emitted >= budget:
                return
        for nxt, _move in tietze_neighbors(current, moves):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
