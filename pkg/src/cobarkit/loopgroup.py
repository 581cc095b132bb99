"""Simplicial groups and monoids: loop groups, classifying spaces, and the
word-level translations between the loop models.

Free-group words are reduced eagerly; monoid equality is only ever decided
by fuel-bounded rewriting plus the group-completion homomorphism as a sound
negative test, and an inconclusive comparison raises WordProblemInconclusive.
"""

from __future__ import annotations

from itertools import product as iproduct

from . import simplexcat as sc
from . import sset as ss
from .sset import ExplicitSSet, SSetPresentation, Simplex, Monoid


class WordProblemInconclusive(Exception):
    pass


class FuelExhausted(Exception):
    pass


# -- free group words ---------------------------------------------------------


def reduce_word(word):
    """Cancel adjacent inverse pairs; letters are (generator, +-1)."""
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def word_mul(a, b):
    return reduce_word(tuple(a) + tuple(b))


def word_inv(a):
    return tuple((g, -e) for g, e in reversed(a))


class SimplicialGroup:
    """Levelwise free groups: generators per level, structure maps on them.

    gen_faces[(k, i)][g] and gen_degs[(k, i)][g] are reduced words; maps
    extend multiplicatively.
    """

    def __init__(self, kmax, gens, gen_faces, gen_degs, check=True):
        self.kmax = kmax
        self.gens = {k: list(v) for k, v in gens.items()}
        self.gen_faces = gen_faces
        self.gen_degs = gen_degs
        if check:
            self.check()

    def face_word(self, k, i, word):
        out = ()
        for g, e in word:
            img = self.gen_faces[(k, i)][g]
            out = word_mul(out, img if e == 1 else word_inv(img))
        return out

    def deg_word(self, k, i, word):
        out = ()
        for g, e in word:
            img = self.gen_degs[(k, i)][g]
            out = word_mul(out, img if e == 1 else word_inv(img))
        return out

    def check(self):
        for k in range(1, self.kmax + 1):
            for g in self.gens[k]:
                w = ((g, 1),)
                for j in range(1, k + 1):
                    for i in range(j):
                        lhs = self.face_word(k - 1, i, self.face_word(k, j, w))
                        rhs = self.face_word(k - 1, j - 1, self.face_word(k, i, w))
                        if lhs != rhs:
                            raise ValueError(f"face identity fails at level {k}")
        for k in range(self.kmax):
            for g in self.gens[k]:
                w = ((g, 1),)
                for i in range(k + 2):
                    for j in range(k + 1):
                        ds = self.face_word(k + 1, i, self.deg_word(k, j, w))
                        if i == j or i == j + 1:
                            expect = w
                        elif i < j:
                            expect = self.deg_word(k - 1, j - 1, self.face_word(k, i, w))
                        else:
                            expect = self.deg_word(k - 1, j, self.face_word(k, i - 1, w))
                        if ds != expect:
                            raise ValueError(f"mixed identity fails at level {k}: d{i} s{j}")
                if k + 2 <= self.kmax:
                    for i in range(k + 1):
                        for j in range(i, k + 1):
                            lhs = self.deg_word(k + 1, j + 1, self.deg_word(k, i, w))
                            rhs = self.deg_word(k + 1, i, self.deg_word(k, j, w))
                            if lhs != rhs:
                                raise ValueError(f"degeneracy identity fails at level {k}")


def kan_loop_group(X: SSetPresentation, kmax) -> SimplicialGroup:
    """Level k free on the (k+1)-simplices modulo the last-degeneracy image.

    The last face twists: the k-th face of a generator is the product of
    its k-th and inverted (k+1)-st faces.
    """
    if len(X.cells.get(0, [])) != 1:
        raise ValueError("loop-group input must have a single vertex")
    if kmax + 1 > X.truncation_dim:
        raise ss.TruncationError("loop group needs one level above kmax")

    def cls(s: Simplex):
        """The class of a (k+1)-simplex: unit if it is a last degeneracy."""
        k1 = s.level
        if s.deg.degenerate_at(k1 - 1):
            return ()
        return ((s, 1),)

    gens = {}
    for k in range(kmax + 1):
        gens[k] = [s for s in X.simplices(k + 1) if not s.deg.degenerate_at(k)]
    gen_faces, gen_degs = {}, {}
    for k in range(kmax + 1):
        for i in range(k + 1):
            table = {}
            for g in gens[k]:
                if i < k:
                    table[g] = cls(X.apply(g, sc.face(i, k + 1)))
                else:
                    a = cls(X.apply(g, sc.face(k, k + 1)))
                    b = cls(X.apply(g, sc.face(k + 1, k + 1)))
                    table[g] = word_mul(a, word_inv(b))
            gen_faces[(k, i)] = table
        if k + 1 <= kmax:
            for i in range(k + 1):
                table = {}
                for g in gens[k]:
                    table[g] = cls(X.apply(g, sc.degeneracy(i, k + 1)))
                gen_degs[(k, i)] = table
    return SimplicialGroup(kmax, gens, gen_faces, gen_degs)


# -- simplicial monoids and the classifying space -----------------------------


class SimplicialMonoid:
    """Levelwise finite monoids with homomorphic structure maps."""

    def __init__(self, monoids, face_fn, deg_fn):
        self.monoids = list(monoids)  # index = level
        self.face_fn = face_fn  # (n, i, x) -> element of level n-1
        self.deg_fn = deg_fn

    @property
    def top(self):
        return len(self.monoids) - 1

    @classmethod
    def constant(cls, M: Monoid, top):
        return cls([M] * (top + 1), lambda n, i, x: x, lambda n, i, x: x)


class _NerveBiSSet(ss.BiSSet):
    """(p, q) -> tuples of length q over the level-p monoid."""

    def __init__(self, G: SimplicialMonoid):
        self.G = G

    def level(self, p, q):
        return list(iproduct(*[self.G.monoids[p].elements] * q))

    def act(self, p, q, f, g, x):
        # horizontal: apply the simplicial monoid map entrywise
        def horiz(y):
            out = []
            for v in y:
                w = v
                # decompose f into elementary maps acting on monoid elements
                w = _apply_monotone_monoid(self.G, p, f, v)
                out.append(w)
            return tuple(out)

        y = horiz(x)
        # vertical: nerve structure along g: [q'] -> [q]
        M = self.G.monoids[f.dom]
        out = []
        for t in range(g.dom):
            a, b = g.values[t], g.values[t + 1]
            prod = M.unit
            for u in range(a, b):
                prod = M.mul(prod, y[u])
            out.append(prod)
        return tuple(out)


def _apply_monotone_monoid(G: SimplicialMonoid, p, f: sc.SimplexMap, v):
    """Apply the level map along f: [f.dom] -> [p] to a level-p element."""
    cur_level, cur = p, v
    g = f
    while not g.is_identity:
        if not g.is_surjective:
            miss = max(t for t in range(cur_level + 1) if t not in set(g.values))
            cur = G.face_fn(cur_level, miss, cur)
            cur_level -= 1
            g = sc.SimplexMap(g.dom, cur_level, tuple(t if t < miss else t - 1 for t in g.values))
        else:
            i = next(i for i in range(g.dom) if g.values[i] == g.values[i + 1])
            # g = g' o sigma_i; apply g' first, then the degeneracy operator
            g2 = sc.SimplexMap(g.dom - 1, g.cod, g.values[:i] + g.values[i + 1 :])
            cur = _apply_monotone_monoid(G, cur_level, g2, cur)
            return G.deg_fn(g.dom - 1, i, cur)
    return cur


def classifying_space(G: SimplicialMonoid, nmax) -> ExplicitSSet:
    """The total simplicial set of the levelwise nerve.

    Level n is in natural bijection with tuples (x_{n-1}, ..., x_0); the
    structure maps are computed through the zig-zag limit, so the classical
    tuple formulas (drop-first for the 0-th face, unit insertions for the
    degeneracies) hold by construction and are asserted in tests.
    """
    B = _NerveBiSSet(G)
    total = ss.artin_mazur_total(B, nmax)
    return total


def wbar_tuples(G: SimplicialMonoid, total: ExplicitSSet, n):
    """Extract the tuple (x_{n-1}, ..., x_0) from a zig-zag element."""
    out = []
    for y in total.levels[n]:
        tup = tuple(y[n - j][-1] for j in range(n - 1, -1, -1))
        out.append(tup)
    return out


# -- geometric cobar -----------------------------------------------------------


class MonoidPresentation:
    """Generators and relation pairs of words (tuples of generators)."""

    def __init__(self, generators, relations):
        self.generators = list(generators)
        self.relations = [(tuple(a), tuple(b)) for a, b in relations]

    def rewrite_once(self, word, direction=True):
        out = set()
        for (lhs, rhs) in self.relations:
            pats = [(lhs, rhs), (rhs, lhs)] if direction else [(lhs, rhs)]
            for pat, rep in pats:
                L = len(pat)
                for t in range(len(word) - L + 1):
                    if tuple(word[t : t + L]) == pat:
                        out.add(tuple(word[:t]) + rep + tuple(word[t + L :]))
        return out

    def _abelianized_distinct(self, w1, w2):
        """Sound negative test through the abelianized group completion."""
        from . import intlinalg as la

        index = {g: k for k, g in enumerate(self.generators)}

        def vec(w):
            v = [0] * len(self.generators)
            for g in w:
                v[index[g]] += 1
            return v

        diffs = []
        for lhs, rhs in self.relations:
            a, b = vec(lhs), vec(rhs)
            diffs.append([x - y for x, y in zip(a, b)])
        target = [x - y for x, y in zip(vec(w1), vec(w2))]
        if not any(target):
            return False
        if not diffs:
            return True
        M = [[diffs[j][i] for j in range(len(diffs))] for i in range(len(self.generators))]
        return la.solve(M, target) is None

    def equal(self, w1, w2, fuel=2000):
        """Abelianized negative test, then fuel-bounded search; raises when
        the fuel runs out without an answer."""
        w1, w2 = tuple(w1), tuple(w2)
        if w1 == w2:
            return True
        if self._abelianized_distinct(w1, w2):
            return False
        seen = {w1}
        frontier = [w1]
        budget = fuel
        while frontier and budget > 0:
            nxt = []
            for w in frontier:
                for w2_ in self.rewrite_once(w):
                    if w2_ == w2:
                        return True
                    if w2_ not in seen:
                        seen.add(w2_)
                        nxt.append(w2_)
                        budget -= 1
                        if budget <= 0:
                            break
                if budget <= 0:
                    break
            frontier = nxt
        if budget <= 0:
            raise WordProblemInconclusive(f"fuel exhausted comparing {w1} and {w2}")
        return False


def geometric_cobar_level(X: SSetPresentation, k) -> MonoidPresentation:
    """Level k: generated by the (k+2)-simplices with the two relation families."""
    if k + 3 > X.truncation_dim:
        raise ss.TruncationError("geometric cobar needs levels up to k+3")
    gens = X.simplices(k + 2)
    rels = []
    for a in X.simplices(k + 1):
        rels.append(((X.apply(a, sc.degeneracy(k + 1, k + 1)),), ()))
    for a in X.simplices(k + 3):
        d1 = X.apply(a, sc.face(k + 2, k + 3))
        d2 = X.apply(a, sc.face(k + 3, k + 3))
        d0 = X.apply(a, sc.face(k + 1, k + 3))
        rels.append(((d1,), (d2, d0)))
    return MonoidPresentation(gens, rels)


def geometric_cobar(X: SSetPresentation, kmax):
    if len(X.cells.get(0, [])) != 1:
        raise ValueError("geometric cobar input must have a single vertex")
    return [geometric_cobar_level(X, k) for k in range(kmax + 1)]


def fundamental_monoid(X: SSetPresentation) -> MonoidPresentation:
    """Generated by the 1-simplices; vertices die, 2-simplices relate."""
    comps = _path_components(X)
    if len(comps) != 1:
        raise ValueError("fundamental monoid needs a connected input")
    gens = X.simplices(1)
    rels = []
    for a in X.simplices(0):
        rels.append(((X.apply(a, sc.degeneracy(0, 0)),), ()))
    for a in X.simplices(2):
        d1 = X.apply(a, sc.face(1, 2))
        d2 = X.apply(a, sc.face(2, 2))
        d0 = X.apply(a, sc.face(0, 2))
        rels.append(((d1,), (d2, d0)))
    return MonoidPresentation(gens, rels)


def _path_components(X):
    verts = X.simplices(0)
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in X.simplices(1):
        a, b = X.apply(e, sc.face(1, 1)), X.apply(e, sc.face(0, 1))
        parent[find(a)] = find(b)
    return {find(v) for v in verts}


def group_completion_phi(X, k):
    """phi for the level-k slice: generator in X_{k+2} to a reduced word
    over X_{k+1} minus the splitting image."""

    def phi(g: Simplex):
        lv = g.level  # k + 2
        a = X.apply(g, sc.face(k + 1, lv))
        b = X.apply(g, sc.face(k + 2, lv))
        wa = () if a.deg.degenerate_at(k) else ((a, 1),)
        wb = () if b.deg.degenerate_at(k) else ((b, 1),)
        return word_mul(wa, word_inv(wb))

    return phi


def to_loop_group_word(X, k, word):
    """Translate a geometric-cobar level-k word to a loop-group word."""
    phi = group_completion_phi(X, k)
    out = ()
    for g in word:
        out = word_mul(out, phi(g))
    return out


def phi_inverse_splitting(X, k):
    """The splitting: a level-(k+1) simplex to its canonical degeneracy."""

    def section(y: Simplex):
        return X.apply(y, sc.degeneracy(k, y.level))

    return section


# -- chains on a simplicial group ---------------------------------------------


def loop_group_subcomplex(G: SimplicialGroup, nmax, maxlen):
    """Level sets of the subsimplicial set generated by short words.

    Starts from all reduced words of length <= maxlen in levels <= nmax+1
    and closes under faces and degeneracies; the result is finite because
    levels are bounded and each closure step is determined by finitely many
    face images.
    """
    levels = {k: set() for k in range(min(G.kmax, nmax + 1) + 1)}
    top = min(G.kmax, nmax + 1)

    def words_of_len(k, L):
        out = {()}
        for _ in range(L):
            new = set()
            for w in out:
                for g in G.gens[k]:
                    for e in (1, -1):
                        new.add(word_mul(w, ((g, e),)))
            out |= new
        return out

    frontier = []
    for k in range(top + 1):
        for w in words_of_len(k, maxlen):
            if w not in levels[k]:
                levels[k].add(w)
                frontier.append((k, w))
    while frontier:
        k, w = frontier.pop()
        if k >= 1:
            for i in range(k + 1):
                w2 = G.face_word(k, i, w)
                if w2 not in levels[k - 1]:
                    levels[k - 1].add(w2)
                    frontier.append((k - 1, w2))
        if k + 1 <= top:
            for i in range(k + 1):
                w2 = G.deg_word(k, i, w)
                if w2 not in levels[k + 1]:
                    levels[k + 1].add(w2)
                    frontier.append((k + 1, w2))
    return {k: sorted(v, key=repr) for k, v in levels.items()}


def loop_group_chains(G: SimplicialGroup, nmax, maxlen) -> "ChainComplex":
    """Normalized chains of the word subcomplex (exact on the subcomplex)."""
    from .chain import ChainComplex, zmat

    levels = loop_group_subcomplex(G, nmax, maxlen)
    exp = ExplicitSSet(
        min(G.kmax, nmax + 1),
        [levels.get(k, []) for k in range(min(G.kmax, nmax + 1) + 1)],
        lambda n, i, w: G.face_word(n, i, w),
        lambda n, i, w: G.deg_word(n, i, w),
    )
    pres = exp.to_presentation()
    from .doldkan import gamma

    return gamma(pres)


def loop_homology_stable(G: SimplicialGroup, nmax, fuel=4, start=1):
    """Homology of the word filtration, grown until two consecutive stages
    agree; raises FuelExhausted when the window is used up."""
    prev = None
    for L in range(start, fuel + 1):
        cx = loop_group_chains(G, nmax, L)
        cur = [repr(cx.homology(n)) for n in range(nmax + 1)]
        if cur == prev:
            return cur
        prev = cur
    raise FuelExhausted(f"homology did not stabilize within word length {fuel}")
