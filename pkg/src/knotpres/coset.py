"""Coset enumeration over finite presentations.

The heavy loop lives in a compiled extension when one was built; otherwise a
pure-Python kernel with the same behaviour takes over.  Set KNOTPRES_PURE=1
to force the fallback.  Both kernels are deterministic and produce identical
tables, which the test suite checks directly.

Enumeration is budgeted by the number of simultaneously live cosets, so a
run that collapses heavily may define far more cosets than the budget while
still finishing inside it.
"""

import os

from .outcomes import CheckOutcome
from .presentations import Presentation, quotient
from .words import Word

if os.environ.get("KNOTPRES_PURE") == "1":
    from . import _coset_py as _kernel

    BACKEND = "pure"
else:
    try:
        from . import _coset_speedup as _kernel

        BACKEND = "compiled"
    except ImportError:
        from . import _coset_py as _kernel

        BACKEND = "pure"

DEFAULT_MAX_COSETS = 100_000


def _directions(word):
    """Encode a word as direction indices: 2g for generator g, 2g+1 for its
    inverse."""
    out = []
    for k in word.letters:
        if k > 0:
            out.append(2 * (k - 1))
        else:
            out.append(2 * (-k - 1) + 1)
    return tuple(out)


class CosetTable:
    """A complete table for a finite-index subgroup.  Row i gives the target
    coset of coset i under each generator and inverse, columns ordered
    g0, g0^-1, g1, g1^-1, ...  Coset 0 is the subgroup itself."""

    __slots__ = ("num_gens", "rows")

    def __init__(self, num_gens, rows):
        self.num_gens = num_gens
        self.rows = tuple(tuple(r) for r in rows)

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, CosetTable):
            return NotImplemented
        return self.num_gens == other.num_gens and self.rows == other.rows

    def __hash__(self):
        return hash((self.num_gens, self.rows))

    def __repr__(self):
        return "CosetTable(%d generators, %d cosets)" % (self.num_gens, len(self.rows))

    def trace(self, coset, word):
        """Follow a word from a coset; the table is complete, so this always
        lands somewhere."""
        c = coset
        for d in _directions(word):
            c = self.rows[c][d]
        return c

    def permutation(self, gen):
        """The right action of generator gen (0-based) as a tuple mapping
        coset i to coset sigma(i)."""
        col = 2 * gen
        return tuple(row[col] for row in self.rows)

    def to_json_dict(self, names=None):
        if names is None:
            names = ["g%d" % i for i in range(self.num_gens)]
        cols = []
        for n in names:
            cols.append(n)
            cols.append(n + "^-1")
        return {
            "cosets": len(self.rows),
            "columns": cols,
            "rows": [list(r) for r in self.rows],
        }


class EnumerationResult:
    """Outcome of an enumeration: either the subgroup has finite index and a
    complete table was produced, or the live-coset budget ran out."""

    __slots__ = ("status", "index", "cosets_used", "table")

    def __init__(self, status, index, cosets_used, table):
        self.status = status
        self.index = index
        self.cosets_used = cosets_used
        self.table = table

    @property
    def finite(self):
        return self.status == "finite"

    def __repr__(self):
        if self.finite:
            return "EnumerationResult(finite, index=%d)" % self.index
        return "EnumerationResult(exhausted, budget=%d)" % self.cosets_used

    def to_json_dict(self):
        out = {"status": self.status, "cosets_used": self.cosets_used}
        if self.finite:
            out["index"] = self.index
        return out


def enumerate_cosets(p, subgroup_words=(), max_cosets=DEFAULT_MAX_COSETS):
    """Enumerate the cosets of the subgroup generated by subgroup_words in
    the group presented by p.  With no subgroup words this computes the
    order of the group, when finite within budget."""
    if max_cosets < 1:
        raise ValueError("coset budget must be positive")
    for w in subgroup_words:
        if w.max_generator() > len(p.generators):
            raise ValueError("subgroup word uses a generator not in the presentation")
    rels = [_directions(r) for r in p.relators]
    subs = [_directions(w) for w in subgroup_words]
    closed, count, rows = _kernel.run(len(p.generators), rels, subs, max_cosets)
    if not closed:
        return EnumerationResult("exhausted", None, count, None)
    return EnumerationResult("finite", count, count, CosetTable(len(p.generators), rows))


def order(p, max_cosets=DEFAULT_MAX_COSETS):
    """Order of the presented group, as an EnumerationResult over the trivial
    subgroup."""
    return enumerate_cosets(p, (), max_cosets)


def is_trivial_bounded(p, max_cosets=DEFAULT_MAX_COSETS):
    """Yes if the presented group collapses to one element within budget, No
    if it finishes with more, Unknown if the budget runs out."""
    res = order(p, max_cosets)
    if not res.finite:
        return CheckOutcome.unknown(
            budget_used=res.cosets_used, evidence={"reason": "coset budget exhausted"}
        )
    if res.index == 1:
        return CheckOutcome.yes({"order": 1}, budget_used=res.cosets_used)
    return CheckOutcome.no({"order": res.index}, budget_used=res.cosets_used)


def word_is_trivial_in_finite(p, w, max_cosets=DEFAULT_MAX_COSETS):
    """Decide whether w represents the identity, by enumerating the whole
    group and tracing w in its regular representation.  Unknown when the
    group does not finish within budget."""
    if w.max_generator() > len(p.generators):
        raise ValueError("word uses a generator not in the presentation")
    res = order(p, max_cosets)
    if not res.finite:
        return CheckOutcome.unknown(
            budget_used=res.cosets_used, evidence={"reason": "coset budget exhausted"}
        )
    end = res.table.trace(0, w)
    if end == 0:
        return CheckOutcome.yes({"order": res.index}, budget_used=res.cosets_used)
    return CheckOutcome.no(
        {"order": res.index, "image_coset": end}, budget_used=res.cosets_used
    )


def weight_one_witness_check(p, t, max_cosets=DEFAULT_MAX_COSETS):
    """Does the normal closure of the word t exhaust the group presented by
    p?  Yes exactly when adding t as a relator kills the group; Unknown when
    the quotient does not finish within budget."""
    if not isinstance(t, Word):
        raise TypeError("witness must be a Word")
    q = quotient(p, [t])
    out = is_trivial_bounded(q, max_cosets)
    if out.is_yes:
        return CheckOutcome.yes({"witness": t.to_pairs()}, budget_used=out.budget_used)
    if out.is_no:
        return CheckOutcome.no(out.evidence, budget_used=out.budget_used)
    return out
