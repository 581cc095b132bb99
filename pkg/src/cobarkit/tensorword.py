"""Formal integer combinations of tuples of simplex maps.

A word of arity r is a Z-linear combination of r-tuples (f_0, ..., f_{r-1})
of monotone maps with a common domain [n]; slot j has a fixed codomain.
Words act contravariantly: a tuple sends (x_0, ..., x_{r-1}) with x_j at
the level cod(f_j) to the tuple of pullbacks, all at level n.
"""

from __future__ import annotations

from . import simplexcat as sc
from .simplexcat import SimplexMap, compose


class TensorWord:
    __slots__ = ("arity", "dom", "cods", "terms")

    def __init__(self, arity, dom, cods, terms=None):
        self.arity = arity
        self.dom = dom
        self.cods = tuple(cods)
        self.terms = {}
        if terms:
            for tup, coeff in (terms.items() if isinstance(terms, dict) else terms):
                self.add_term(tup, coeff)

    def add_term(self, tup, coeff):
        if coeff == 0:
            return
        if len(tup) != self.arity:
            raise ValueError("tuple arity mismatch")
        for f, cod in zip(tup, self.cods):
            if f.dom != self.dom or f.cod != cod:
                raise ValueError(f"slot map {f} does not match [{self.dom}]->[{cod}]")
        new = self.terms.get(tup, 0) + coeff
        if new:
            self.terms[tup] = new
        else:
            self.terms.pop(tup, None)

    def copy(self):
        w = TensorWord(self.arity, self.dom, self.cods)
        w.terms = dict(self.terms)
        return w

    def __add__(self, other):
        if (self.arity, self.dom, self.cods) != (other.arity, other.dom, other.cods):
            raise ValueError("shape mismatch")
        w = self.copy()
        for t, c in other.terms.items():
            w.add_term(t, c)
        return w

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        w = TensorWord(self.arity, self.dom, self.cods)
        for t, c in self.terms.items():
            w.add_term(t, k * c)
        return w

    def __eq__(self, other):
        return (
            isinstance(other, TensorWord)
            and (self.arity, self.dom, self.cods) == (other.arity, other.dom, other.cods)
            and self.terms == other.terms
        )

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda kv: tuple(f.values for f in kv[0]))
        body = " + ".join(f"{c}*{tuple(f.values for f in t)}" for t, c in items[:6])
        more = "" if len(items) <= 6 else f" ... ({len(items)} terms)"
        return f"<word arity {self.arity} dom [{self.dom}]: {body}{more}>"

    # -- structural operations ------------------------------------------

    def tensor(self, other):
        """Juxtapose slots (same domain on both sides)."""
        if self.dom != other.dom:
            raise ValueError("tensor needs a common domain")
        w = TensorWord(self.arity + other.arity, self.dom, self.cods + other.cods)
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                w.add_term(t1 + t2, c1 * c2)
        return w

    def precompose_all(self, h: SimplexMap):
        """Change the common domain: every slot map f becomes f o h."""
        w = TensorWord(self.arity, h.dom, self.cods)
        for t, c in self.terms.items():
            w.add_term(tuple(compose(f, h) for f in t), c)
        return w

    def precompose_slot(self, j, h: SimplexMap):
        """Slot j only: f_j becomes f_j o h (h must be an endo of the domain)."""
        if h.dom != self.dom or h.cod != self.dom:
            raise ValueError("per-slot precomposition must preserve the domain")
        w = TensorWord(self.arity, self.dom, self.cods)
        for t, c in self.terms.items():
            t2 = t[:j] + (compose(t[j], h),) + t[j + 1 :]
            w.add_term(t2, c)
        return w

    def postcompose_slot(self, j, g: SimplexMap):
        """Slot j only: f_j becomes g o f_j."""
        if g.dom != self.cods[j]:
            raise ValueError("postcomposition does not match the slot codomain")
        cods = self.cods[:j] + (g.cod,) + self.cods[j + 1 :]
        w = TensorWord(self.arity, self.dom, cods)
        for t, c in self.terms.items():
            t2 = t[:j] + (compose(g, t[j]),) + t[j + 1 :]
            w.add_term(t2, c)
        return w

    # -- projections ------------------------------------------------------

    def kill(self, predicate):
        w = TensorWord(self.arity, self.dom, self.cods)
        for t, c in self.terms.items():
            if not predicate(t):
                w.add_term(t, c)
        return w

    def kill_slot_degenerate(self):
        """Drop tuples with a degenerate (non-injective) entry in any slot."""
        return self.kill(lambda t: any(not f.is_injective for f in t))

    def kill_jointly_degenerate(self):
        """Drop tuples all of whose entries collapse a common step."""
        return self.kill(
            lambda t: any(all(f.degenerate_at(i) for f in t) for i in range(self.dom))
        )

    def kill_constants(self):
        """Drop tuples containing a constant entry (image a single point)."""
        return self.kill(
            lambda t: any(f.values[0] == f.values[-1] and f.dom >= 1 for f in t)
        )


def identity_word(n, arity=1):
    w = TensorWord(arity, n, (n,) * arity)
    w.add_term((sc.identity(n),) * arity, 1)
    return w
