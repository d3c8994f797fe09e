"""The fusion-tree morphism engine.

Hom spaces between tensor words of simples are presented in the canonical
left-parenthesized fusion-tree basis.  A tree over a word ``(x1,...,xn)``
with total charge ``c`` is the tuple ``((m2,mu2),...,(mn,mun))`` of internal
charges after absorbing each successive letter (``mn = c``) together with the
vertex multiplicity indices; words of length 0 or 1 have the empty tree.

A :class:`Morphism` stores, per total charge, a sparse matrix between the
fusion-tree basis of its domain and the splitting-tree basis of its codomain.
The bases are normalized so that fusing after splitting is the identity
(``proj . inj = delta``), which makes composition plain matrix product;
F-data enters through re-association (the *bridge*), R-data through braids,
and pivots through cups and caps.

The second half of the file lifts everything to formal direct sums of
simples (:class:`SumObject`) and block matrices of word morphisms
(:class:`SumMorphism`), which is the level algebras live on.
"""

from __future__ import annotations

from itertools import product

from .category import CategoryData, CategoryError
from .scalars import Cyc

Word = tuple[int, ...]
Tree = tuple[tuple[int, int], ...]


class MorphismError(ValueError):
    """Shape mismatch or invalid engine operation."""


# ---------------------------------------------------------------------------
# trees


def trees(cat: CategoryData, word: Word, charge: int) -> tuple[Tree, ...]:
    """All admissible canonical trees for `word` with total `charge`."""
    key = ("trees", word, charge)
    hit = cat._tree_cache.get(key)
    if hit is not None:
        return hit
    if len(word) == 0:
        out = ((),) if charge == 0 else ()
    elif len(word) == 1:
        out = ((),) if word[0] == charge else ()
    else:
        partial: list[tuple[int, Tree]] = [(word[0], ())]
        for letter in word[1:]:
            nxt: list[tuple[int, Tree]] = []
            for cur, tr in partial:
                for m in cat.fusion_outcomes(cur, letter):
                    for mu in range(cat.N(cur, letter, m)):
                        nxt.append((m, tr + ((m, mu),)))
            partial = nxt
        out = tuple(tr for cur, tr in partial if cur == charge)
    cat._tree_cache[key] = out
    return out


def charges(cat: CategoryData, word: Word) -> list[int]:
    """Total charges with at least one admissible tree, ascending."""
    return [c for c in range(cat.rank()) if trees(cat, word, c)]


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """An element of Hom(dom, cod) in the fusion-tree basis.

    blocks maps (charge, dom_tree, cod_tree) to a nonzero scalar; absent
    entries are zero.  Instances are immutable by convention.
    """

    __slots__ = ("cat", "dom", "cod", "blocks")

    def __init__(self, cat, dom: Word, cod: Word, blocks: dict) -> None:
        self.cat = cat
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.blocks = {k: v for k, v in blocks.items() if not v.is_zero()}

    def __add__(self, other: "Morphism") -> "Morphism":
        if self.dom != other.dom or self.cod != other.cod:
            raise MorphismError("adding morphisms of different shapes")
        out = dict(self.blocks)
        for k, v in other.blocks.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return Morphism(self.cat, self.dom, self.cod, out)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(Cyc.rational(-1, self.cat.conductor))

    def scale(self, s: Cyc) -> "Morphism":
        return Morphism(self.cat, self.dom, self.cod,
                        {k: v * s for k, v in self.blocks.items()})

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.blocks == other.blocks)

    def __repr__(self):
        return f"Morphism({self.dom} -> {self.cod}, {len(self.blocks)} entries)"

    def pretty(self) -> str:
        """Diagnostic rendering of all blocks, sorted."""
        lines = [f"{self.dom} -> {self.cod}"]
        for (c, ts, tt) in sorted(self.blocks):
            lines.append(f"  charge {self.cat.labels[c]}: {ts} -> {tt}: {self.blocks[(c, ts, tt)]}")
        return "\n".join(lines)


def zero_morphism(cat, dom: Word, cod: Word) -> Morphism:
    return Morphism(cat, dom, cod, {})


def identity(cat, word: Word) -> Morphism:
    blocks = {}
    one = cat.one()
    for c in charges(cat, word):
        for t in trees(cat, word, c):
            blocks[(c, t, t)] = one
    return Morphism(cat, word, word, blocks)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.cod != g.dom:
        raise MorphismError(f"compose shape mismatch: {f.cod} vs {g.dom}")
    mid: dict[tuple[int, Tree], list] = {}
    for (c, tm, tc), v in g.blocks.items():
        mid.setdefault((c, tm), []).append((tc, v))
    out: dict = {}
    for (c, td, tm), u in f.blocks.items():
        for tc, v in mid.get((c, tm), ()):
            key = (c, td, tc)
            cur = out.get(key)
            prod_ = u * v
            out[key] = prod_ if cur is None else cur + prod_
    return Morphism(f.cat, f.dom, g.cod, out)


def tree_projector(cat, word: Word, charge: int, tree: Tree) -> Morphism:
    """Basis projection word -> (charge) selecting one fusion tree."""
    return Morphism(cat, word, (charge,), {(charge, tree, ()): cat.one()})


def tree_injector(cat, word: Word, charge: int, tree: Tree) -> Morphism:
    """Basis injection (charge) -> word for one splitting tree."""
    return Morphism(cat, (charge,), word, {(charge, (), tree): cat.one()})


def decompose(cat, word: Word):
    """List of (charge, injector, projector) basis pairs with
    proj . inj = delta and sum inj . proj = id."""
    out = []
    for c in charges(cat, word):
        for t in trees(cat, word, c):
            out.append((c, tree_injector(cat, word, c, t), tree_projector(cat, word, c, t)))
    return out


# ---------------------------------------------------------------------------
# tensoring


def tensor_id_right(f: Morphism, z: Word) -> Morphism:
    """f (x) id_z: appending letters extends canonical trees trivially."""
    cat = f.cat
    out = f
    for letter in z:
        blocks: dict = {}
        for (a, td, tc), v in out.blocks.items():
            for c in cat.fusion_outcomes(a, letter):
                for mu in range(cat.N(a, letter, c)):
                    step = ((c, mu),)
                    blocks[(c, _extend(td, out.dom, step), _extend(tc, out.cod, step))] = v
        out = Morphism(cat, out.dom + (letter,), out.cod + (letter,), blocks)
    return out


def _extend(tree: Tree, word: Word, step) -> Tree:
    # canonical trees of single-letter words are (); extending to length 2
    # introduces the first explicit internal entry
    if len(word) == 0:
        # absorbing a letter onto the empty word: resulting word has length 1,
        # whose tree is empty; the step charge must equal the letter
        return ()
    return tree + step


def bridge(cat, x: Word, z: Word):
    """Change of basis between canonical trees of x+z and split form.

    For each total charge c returns a pair of sparse maps
    ``fwd[c] : canonical tree -> {(a, tree_x, b, tree_z, mu): coeff}`` and
    ``bwd[c]`` in the opposite direction, where a, b are the charges of the
    two groups and mu indexes the joining vertex (a,b;c).
    """
    key = ("bridge", x, z)
    hit = cat._bridge_cache.get(key)
    if hit is not None:
        return hit
    word = x + z
    if len(x) == 0 or len(z) == 0:
        raise MorphismError("bridge needs two nonempty groups")
    # start: z = (z1): split form is literally the last tree entry
    fwd: dict[int, dict] = {}
    if len(z) == 1:
        for c in charges(cat, word):
            fwd[c] = {}
            for t in trees(cat, word, c):
                if len(x) == 1:
                    a, tx = x[0], ()
                    b, mu = z[0], t[-1][1] if t else 0
                    base = t[:-1] if t else ()
                    fwd[c][t] = {(a, tx, b, (), mu): cat.one()}
                else:
                    a = t[-2][0] if len(t) >= 2 else x[0]
                    tx = t[:-1]
                    mu = t[-1][1]
                    fwd[c][t] = {(a, tx, z[0], (), mu): cat.one()}
    else:
        z_head, z_last = z[:-1], z[-1]
        inner = bridge(cat, x, z_head)[0]
        for c in charges(cat, word):
            fwd[c] = {}
            for t in trees(cat, word, c):
                cprev, nu = t[-2][0] if len(t) >= 2 else word[0], t[-1][1]
                # t[:-1] is a tree of x+z_head with total charge cprev
                acc: dict = {}
                for (a, tx, b, tz, mu), coeff in inner[cprev][t[:-1]].items():
                    # re-associate (a, b, z_last; c): left tree has internal
                    # (cprev, mu, nu); expand on (f, rho, sigma)
                    rows, cols, mat, _ = cat.f_matrix(a, b, z_last, c)
                    ri = rows.index((cprev, mu, nu))
                    for ci, (fch, rho, sigma) in enumerate(cols):
                        val = mat[ri][ci]
                        if val.is_zero():
                            continue
                        tz_new = _extend(tz, z_head, ((fch, rho),))
                        k2 = (a, tx, fch, tz_new, sigma)
                        cur = acc.get(k2)
                        add = coeff * val
                        acc[k2] = add if cur is None else cur + add
                fwd[c][t] = {k: v for k, v in acc.items() if not v.is_zero()}
    # invert per charge (square change of basis)
    bwd: dict[int, dict] = {}
    for c, table in fwd.items():
        canon = sorted(table.keys())
        splits = sorted({k for row in table.values() for k in row.keys()})
        from . import _linalg as la
        mat = [[table[t].get(s, cat.zero()) for s in splits] for t in canon]
        inv = la.invert(mat)
        bwd[c] = {}
        for si, s in enumerate(splits):
            bwd[c][s] = {canon[ti]: inv[si][ti] for ti in range(len(canon))
                         if not inv[si][ti].is_zero()}
    cat._bridge_cache[key] = (fwd, bwd)
    return fwd, bwd


def tensor_id_left(cat, x: Word, g: Morphism) -> Morphism:
    """id_x (x) g via the bridge.

    In the split bases the morphism is block diagonal with g's coefficients;
    block coefficients pull back with `bwd` on the domain side and push
    forward with `fwd` on the codomain side.
    """
    if len(x) == 0:
        return g
    if len(g.dom) == 0 and len(g.cod) == 0:
        s = g.blocks.get((0, (), ()), cat.zero())
        return identity(cat, x).scale(s)
    # handle empty dom or cod by routing through explicit unit insertion
    if len(g.dom) == 0 or len(g.cod) == 0:
        return _tensor_id_left_unit(cat, x, g)
    _, bwd_d = bridge(cat, x, g.dom)
    fwd_c, _ = bridge(cat, x, g.cod)
    gtab: dict[tuple[int, Tree], list] = {}
    for (b, td, tc), v in g.blocks.items():
        gtab.setdefault((b, td), []).append((tc, v))
    out: dict = {}
    word_d = x + g.dom
    for c in charges(cat, word_d):
        rev_c: dict = {}
        for t_out, row in fwd_c.get(c, {}).items():
            for s2, w in row.items():
                rev_c.setdefault(s2, []).append((t_out, w))
        for s, back in bwd_d.get(c, {}).items():
            a, tx, b, tz, mu = s
            for tw, v in gtab.get((b, tz), ()):
                for t_out, w in rev_c.get((a, tx, b, tw, mu), ()):
                    vw = v * w
                    for t, coeff in back.items():
                        key = (c, t, t_out)
                        add = coeff * vw
                        cur = out.get(key)
                        out[key] = add if cur is None else cur + add
    return Morphism(cat, word_d, x + g.cod, out)


def _tensor_id_left_unit(cat, x: Word, g: Morphism) -> Morphism:
    # pad the empty side with an explicit unit letter, tensor, then strip
    pad_dom = g.dom if g.dom else (0,)
    pad_cod = g.cod if g.cod else (0,)
    blocks = {}
    for (c, td, tc), v in g.blocks.items():
        td2 = td if g.dom else (() if len(pad_dom) == 1 else td)
        tc2 = tc if g.cod else (() if len(pad_cod) == 1 else tc)
        blocks[(c, td2, tc2)] = v
    g2 = Morphism(cat, pad_dom, pad_cod, blocks)
    res = tensor_id_left(cat, x, g2)
    return _strip_unit(res, len(x), strip_dom=not g.dom, strip_cod=not g.cod)


def _strip_unit(f: Morphism, pos: int, strip_dom: bool, strip_cod: bool) -> Morphism:
    """Remove a unit letter at word position `pos` (0-based) from dom/cod."""
    cat = f.cat
    out: dict = {}
    dom = f.dom[:pos] + f.dom[pos + 1:] if strip_dom else f.dom
    cod = f.cod[:pos] + f.cod[pos + 1:] if strip_cod else f.cod
    for (c, td, tc), v in f.blocks.items():
        td2 = _strip_unit_tree(f.dom, td, pos) if strip_dom else td
        tc2 = _strip_unit_tree(f.cod, tc, pos) if strip_cod else tc
        if td2 is None or tc2 is None:
            raise MorphismError("unit strip hit a non-trivial block")
        key = (c, td2, tc2)
        cur = out.get(key)
        out[key] = v if cur is None else cur + v
    return Morphism(cat, dom, cod, out)


def _strip_unit_tree(word: Word, tree: Tree, pos: int):
    # removing a unit letter: its absorption step is a unit vertex whose
    # internal charge repeats, so the tree entry can be dropped
    n = len(word)
    if n <= 1:
        return ()
    entries = list(tree)
    entries.pop(max(pos - 1, 0))
    return tuple(entries) if n - 1 > 1 else ()


def tensor(f: Morphism, g: Morphism, order: str = "L") -> Morphism:
    """f (x) g.  `order` picks the internal canonicalization route:
    "L" computes (id (x) g) . (f (x) id), "R" computes (f (x) id) . (id (x) g);
    both agree by the interchange law (exercised in tests)."""
    cat = f.cat
    if order == "L":
        left = tensor_id_right(f, g.dom)
        right = tensor_id_left(cat, f.cod, g)
        return compose(right, left)
    right = tensor_id_left(cat, f.dom, g)
    left = tensor_id_right(f, g.cod)
    return compose(left, right)


# ---------------------------------------------------------------------------
# braiding, twist


def braid(cat, word: Word, k: int, inverse: bool = False) -> Morphism:
    """Adjacent braiding at positions (k, k+1), 1-based; returns the morphism
    word -> word with the two letters swapped.

    The strand at position k crosses over the strand at k+1 for the positive
    braiding; `inverse` gives the opposite crossing.
    """
    n = len(word)
    if not 1 <= k <= n - 1:
        raise MorphismError(f"braid position {k} out of range for word of length {n}")
    a, b = word[k - 1], word[k]
    swapped = word[:k - 1] + (b, a) + word[k + 1:]
    out: dict = {}
    if k == 1:
        for c in charges(cat, word):
            for t in trees(cat, word, c):
                m2, mu = t[0]
                rmat = cat.r_matrix(a, b, m2) if not inverse else cat.r_matrix(b, a, m2, inverse=True)
                for nu in range(cat.N(b, a, m2)):
                    val = rmat[mu][nu]
                    if val.is_zero():
                        continue
                    t2 = ((m2, nu),) + t[1:]
                    key = (c, t, t2)
                    cur = out.get(key)
                    out[key] = val if cur is None else cur + val
        return Morphism(cat, word, swapped, out)
    # k > 1: localize the pair with the bridge on (prefix, pair) then extend
    prefix, suffix = word[:k - 1], word[k + 1:]
    core = _braid_core(cat, prefix, a, b, inverse)
    return tensor_id_right(core, suffix)


def _braid_core(cat, prefix: Word, a: int, b: int, inverse: bool) -> Morphism:
    """Braid the last two letters of prefix+(a,b) past each other."""
    word = prefix + (a, b)
    swapped = prefix + (b, a)
    _, bwd_d = bridge(cat, prefix, (a, b))
    fwd_c, _ = bridge(cat, prefix, (b, a))
    out: dict = {}
    for c in charges(cat, word):
        rev_c: dict = {}
        for t_out, row in fwd_c.get(c, {}).items():
            for s2, w in row.items():
                rev_c.setdefault(s2, []).append((t_out, w))
        for s, back in bwd_d.get(c, {}).items():
            p, tp, g, tz, mu = s
            rho = tz[0][1]
            rmat = cat.r_matrix(a, b, g) if not inverse else cat.r_matrix(b, a, g, inverse=True)
            for nu in range(cat.N(b, a, g)):
                val = rmat[rho][nu]
                if val.is_zero():
                    continue
                for t_out, w in rev_c.get((p, tp, g, ((g, nu),), mu), ()):
                    vw = val * w
                    for t, coeff in back.items():
                        key = (c, t, t_out)
                        add = coeff * vw
                        cur = out.get(key)
                        out[key] = add if cur is None else cur + add
    return Morphism(cat, word, swapped, out)


def braid_words(cat, x: Word, z: Word, inverse: bool = False) -> Morphism:
    """c_{x,z} braiding the whole group x past the group z, as a composite of
    adjacent braids (x strands cross over z strands)."""
    word = x + z
    result = identity(cat, word)
    cur = list(word)
    # move each x-letter (right to left) past all of z
    for i in range(len(x) - 1, -1, -1):
        for j in range(len(z)):
            pos = i + j + 1
            step = braid(cat, tuple(cur), pos, inverse)
            cur[pos - 1], cur[pos] = cur[pos], cur[pos - 1]
            result = compose(step, result)
    return result


def twist(cat, word: Word) -> Morphism:
    """The ribbon twist: acts on each total-charge block by theta_c."""
    blocks = {}
    for c in charges(cat, word):
        th = cat.twists[c]
        for t in trees(cat, word, c):
            blocks[(c, t, t)] = th
    return Morphism(cat, word, word, blocks)


def twist_inverse(cat, word: Word) -> Morphism:
    blocks = {}
    for c in charges(cat, word):
        th = cat.twists[c].inv()
        for t in trees(cat, word, c):
            blocks[(c, t, t)] = th
    return Morphism(cat, word, word, blocks)


# ---------------------------------------------------------------------------
# duality: cups, caps, dual words, traces


def dual_word(cat, word: Word) -> Word:
    return tuple(cat.dual[x] for x in reversed(word))


def cup_b(cat, word: Word) -> Morphism:
    """b_X : 1 -> X (x) X*."""
    if len(word) == 0:
        return Morphism(cat, (), (), {(0, (), ()): cat.one()})
    if len(word) == 1:
        i = word[0]
        idual = cat.dual[i]
        return Morphism(cat, (), (i, idual), {(0, (), ((0, 0),)): cat.one()})
    head, tail = word[0], word[1:]
    inner = cup_b(cat, tail)  # 1 -> tail tail*
    mid = tensor_id_left(cat, (head,), tensor_id_right(inner, (cat.dual[head],)))
    outer = cup_b(cat, (head,))
    return compose(mid, outer)


def cup_bt(cat, word: Word) -> Morphism:
    """bt_X : 1 -> X* (x) X."""
    if len(word) == 0:
        return Morphism(cat, (), (), {(0, (), ()): cat.one()})
    if len(word) == 1:
        i = word[0]
        p = cat.dual_coefficients(i)[1]
        return Morphism(cat, (), (cat.dual[i], i), {(0, (), ((0, 0),)): p})
    head, tail = word[0], word[1:]
    inner = cup_bt(cat, (head,))  # 1 -> head* head
    mid = tensor_id_left(cat, dual_word(cat, tail),
                         tensor_id_right(inner, tail))
    outer = cup_bt(cat, tail)
    return compose(mid, outer)


def cap_d(cat, word: Word) -> Morphism:
    """d_X : X* (x) X -> 1."""
    if len(word) == 0:
        return Morphism(cat, (), (), {(0, (), ()): cat.one()})
    if len(word) == 1:
        i = word[0]
        coeff = cat.dual_coefficients(i)[0]
        return Morphism(cat, (cat.dual[i], i), (), {(0, ((0, 0),), ()): coeff})
    head, tail = word[0], word[1:]
    inner = cap_d(cat, (head,))
    mid = tensor_id_left(cat, dual_word(cat, tail),
                         tensor_id_right(inner, tail))
    outer = cap_d(cat, tail)
    return compose(outer, mid)


def cap_dt(cat, word: Word) -> Morphism:
    """dt_X : X (x) X* -> 1."""
    if len(word) == 0:
        return Morphism(cat, (), (), {(0, (), ()): cat.one()})
    if len(word) == 1:
        i = word[0]
        coeff = cat.dual_coefficients(i)[2]
        return Morphism(cat, (i, cat.dual[i]), (), {(0, ((0, 0),), ()): coeff})
    head, tail = word[0], word[1:]
    inner = cap_dt(cat, tail)
    mid = tensor_id_left(cat, (head,), tensor_id_right(inner, (cat.dual[head],)))
    outer = cap_dt(cat, (head,))
    return compose(outer, mid)


def snake_identities_hold(cat, i: int) -> bool:
    """All four zigzag identities for the simple i, checked exactly."""
    idual = cat.dual[i]
    wi, wd = (i,), (idual,)
    id_i, id_d = identity(cat, wi), identity(cat, wd)
    z1 = compose(tensor_id_left(cat, wi, cap_d(cat, wi)),
                 tensor_id_right(cup_b(cat, wi), wi))
    z2 = compose(tensor_id_right(cap_d(cat, wi), wd),
                 tensor_id_left(cat, wd, cup_b(cat, wi)))
    z3 = compose(tensor_id_left(cat, wd, cap_dt(cat, wi)),
                 tensor_id_right(cup_bt(cat, wi), wd))
    z4 = compose(tensor_id_right(cap_dt(cat, wi), wi),
                 tensor_id_left(cat, wi, cup_bt(cat, wi)))
    return z1 == id_i and z2 == id_d and z3 == id_d and z4 == id_i


def trace(cat, f: Morphism) -> Cyc:
    """Quantum trace of an endomorphism, by explicit closure with cups/caps."""
    if f.dom != f.cod:
        raise MorphismError("trace needs an endomorphism")
    word = f.dom
    if len(word) == 0:
        return f.blocks.get((0, (), ()), cat.zero())
    wd = dual_word(cat, word)
    closed = compose(cap_dt(cat, word),
                     compose(tensor_id_right(f, wd), cup_b(cat, word)))
    return closed.blocks.get((0, (), ()), cat.zero())


def dual_morphism(f: Morphism) -> Morphism:
    """The transpose f* : cod* -> dom* by bending with (b, dt)."""
    cat = f.cat
    x, y = f.dom, f.cod
    xd, yd = dual_word(cat, x), dual_word(cat, y)
    step1 = tensor_id_left(cat, yd, cup_b(cat, x))           # yd -> yd x xd
    step2 = tensor_id_left(cat, yd, tensor_id_right(f, xd))  # -> yd y xd
    step3 = tensor_id_right(cap_dt(cat, yd), xd)             # -> xd
    # note dt on yd: yd (x) yd* ; yd* = y with double-dual identified elementwise
    return compose(step3, compose(step2, step1))


# ---------------------------------------------------------------------------
# direct sums of simples and block morphisms between them

SumObject = tuple[int, ...]
SumWord = tuple[SumObject, ...]


def sectors(word: SumWord):
    """All summand choices of a sum word, as index tuples."""
    return product(*(range(len(s)) for s in word))


def sector_word(word: SumWord, sector: tuple[int, ...]) -> Word:
    return tuple(word[k][sector[k]] for k in range(len(word)))


def sum_dual(cat, obj: SumObject) -> SumObject:
    """Dual of a sum object, summand-wise (same order, so cups pair slot k
    of X with slot k of X*)."""
    return tuple(cat.dual[x] for x in obj)


def sum_dual_word(cat, word: SumWord) -> SumWord:
    return tuple(sum_dual(cat, s) for s in reversed(word))


def sum_dim(cat, obj: SumObject):
    total = cat.zero()
    for x in obj:
        total = total + cat.quantum_dim(x)
    return total


class SumMorphism:
    """A morphism between tensor words of sum objects: a block matrix of
    word-level morphisms indexed by summand sectors."""

    __slots__ = ("cat", "dom", "cod", "blocks")

    def __init__(self, cat, dom: SumWord, cod: SumWord, blocks: dict) -> None:
        self.cat = cat
        self.dom = tuple(tuple(s) for s in dom)
        self.cod = tuple(tuple(s) for s in cod)
        self.blocks = {k: v for k, v in blocks.items() if not v.is_zero()}

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(cat, dom: SumWord, cod: SumWord) -> "SumMorphism":
        return SumMorphism(cat, dom, cod, {})

    @staticmethod
    def identity(cat, word: SumWord) -> "SumMorphism":
        blocks = {}
        for s in sectors(word):
            blocks[(s, s)] = identity(cat, sector_word(word, s))
        return SumMorphism(cat, word, word, blocks)

    @staticmethod
    def wrap(m: Morphism) -> "SumMorphism":
        dom = tuple((x,) for x in m.dom)
        cod = tuple((x,) for x in m.cod)
        sd = (0,) * len(m.dom)
        sc = (0,) * len(m.cod)
        return SumMorphism(m.cat, dom, cod, {(sd, sc): m})

    def set_entry(self, sd, sc, key, value) -> "SumMorphism":
        blocks = dict(self.blocks)
        m = blocks.get((tuple(sd), tuple(sc)))
        word_d = sector_word(self.dom, tuple(sd))
        word_c = sector_word(self.cod, tuple(sc))
        entries = dict(m.blocks) if m is not None else {}
        entries[key] = value
        blocks[(tuple(sd), tuple(sc))] = Morphism(self.cat, word_d, word_c, entries)
        return SumMorphism(self.cat, self.dom, self.cod, blocks)

    # -- linear structure -------------------------------------------------
    def __add__(self, other: "SumMorphism") -> "SumMorphism":
        if self.dom != other.dom or self.cod != other.cod:
            raise MorphismError("adding sum morphisms of different shapes")
        out = dict(self.blocks)
        for k, v in other.blocks.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return SumMorphism(self.cat, self.dom, self.cod, out)

    def __sub__(self, other: "SumMorphism") -> "SumMorphism":
        return self + other.scale(Cyc.rational(-1, self.cat.conductor))

    def scale(self, s) -> "SumMorphism":
        return SumMorphism(self.cat, self.dom, self.cod,
                           {k: v.scale(s) for k, v in self.blocks.items()})

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, SumMorphism):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.blocks == other.blocks)

    def __repr__(self):
        return f"SumMorphism({self.dom} -> {self.cod}, {len(self.blocks)} blocks)"

    def scalar(self):
        """The value of a closed block morphism () -> ()."""
        if self.dom or self.cod:
            raise MorphismError("scalar() needs a closed morphism")
        m = self.blocks.get(((), ()))
        return self.cat.zero() if m is None else m.blocks.get((0, (), ()), self.cat.zero())


def sum_compose(g: SumMorphism, f: SumMorphism) -> SumMorphism:
    if f.cod != g.dom:
        raise MorphismError(f"sum compose mismatch: {f.cod} vs {g.dom}")
    mid: dict = {}
    for (sm, sc), v in g.blocks.items():
        mid.setdefault(sm, []).append((sc, v))
    out: dict = {}
    for (sd, sm), u in f.blocks.items():
        for sc, v in mid.get(sm, ()):
            w = compose(v, u)
            if w.is_zero():
                continue
            key = (sd, sc)
            cur = out.get(key)
            out[key] = w if cur is None else cur + w
    return SumMorphism(f.cat, f.dom, g.cod, out)


def sum_tensor(f: SumMorphism, g: SumMorphism, order: str = "L") -> SumMorphism:
    out: dict = {}
    for (fd, fc), u in f.blocks.items():
        for (gd, gc), v in g.blocks.items():
            w = tensor(u, v, order)
            if w.is_zero():
                continue
            key = (fd + gd, fc + gc)
            cur = out.get(key)
            out[key] = w if cur is None else cur + w
    return SumMorphism(f.cat, f.dom + g.dom, f.cod + g.cod, out)


def sum_identity(cat, word: SumWord) -> SumMorphism:
    return SumMorphism.identity(cat, word)


def sum_braid(cat, word: SumWord, k: int, inverse: bool = False) -> SumMorphism:
    """Adjacent braiding of factors (k, k+1), 1-based."""
    n = len(word)
    if not 1 <= k <= n - 1:
        raise MorphismError(f"braid position {k} out of range")
    swapped = word[:k - 1] + (word[k], word[k - 1]) + word[k + 1:]
    blocks = {}
    for s in sectors(word):
        s2 = s[:k - 1] + (s[k], s[k - 1]) + s[k + 1:]
        blocks[(s, s2)] = braid(cat, sector_word(word, s), k, inverse)
    return SumMorphism(cat, word, swapped, blocks)


def sum_braid_groups(cat, x: SumWord, z: SumWord, inverse: bool = False) -> SumMorphism:
    """c_{X,Z} braiding the factor group x past the group z."""
    word = x + z
    result = sum_identity(cat, word)
    cur = list(word)
    for i in range(len(x) - 1, -1, -1):
        for j in range(len(z)):
            pos = i + j + 1
            step = sum_braid(cat, tuple(cur), pos, inverse)
            cur[pos - 1], cur[pos] = cur[pos], cur[pos - 1]
            result = sum_compose(step, result)
    return result


def sum_twist(cat, word: SumWord, inverse: bool = False) -> SumMorphism:
    blocks = {}
    for s in sectors(word):
        w = sector_word(word, s)
        blocks[(s, s)] = twist_inverse(cat, w) if inverse else twist(cat, w)
    return SumMorphism(cat, word, word, blocks)


def sum_cup_b(cat, word: SumWord) -> SumMorphism:
    """b_X : 1 -> X (x) X* for a sum word X."""
    if len(word) == 0:
        return SumMorphism.wrap(Morphism(cat, (), (), {(0, (), ()): cat.one()}))
    if len(word) == 1:
        obj = word[0]
        cod = (obj, sum_dual(cat, obj))
        blocks = {}
        for a in range(len(obj)):
            blocks[((), (a, a))] = cup_b(cat, (obj[a],))
        return SumMorphism(cat, (), cod, blocks)
    head, tail = word[:1], word[1:]
    inner = sum_tensor(sum_cup_b(cat, tail),
                       sum_identity(cat, (sum_dual(cat, head[0]),)))
    mid = sum_tensor(sum_identity(cat, head), inner)
    return sum_compose(mid, sum_cup_b(cat, head))


def sum_cup_bt(cat, word: SumWord) -> SumMorphism:
    """bt_X : 1 -> X* (x) X."""
    if len(word) == 0:
        return SumMorphism.wrap(Morphism(cat, (), (), {(0, (), ()): cat.one()}))
    if len(word) == 1:
        obj = word[0]
        cod = (sum_dual(cat, obj), obj)
        blocks = {}
        for a in range(len(obj)):
            blocks[((), (a, a))] = cup_bt(cat, (obj[a],))
        return SumMorphism(cat, (), cod, blocks)
    head, tail = word[:1], word[1:]
    inner = sum_tensor(sum_cup_bt(cat, head), sum_identity(cat, tail))
    mid = sum_tensor(sum_identity(cat, sum_dual_word(cat, tail)), inner)
    return sum_compose(mid, sum_cup_bt(cat, tail))


def sum_cap_d(cat, word: SumWord) -> SumMorphism:
    """d_X : X* (x) X -> 1."""
    if len(word) == 0:
        return SumMorphism.wrap(Morphism(cat, (), (), {(0, (), ()): cat.one()}))
    if len(word) == 1:
        obj = word[0]
        dom = (sum_dual(cat, obj), obj)
        blocks = {}
        for a in range(len(obj)):
            blocks[((a, a), ())] = cap_d(cat, (obj[a],))
        return SumMorphism(cat, dom, (), blocks)
    head, tail = word[:1], word[1:]
    inner = sum_tensor(sum_cap_d(cat, head), sum_identity(cat, tail))
    mid = sum_tensor(sum_identity(cat, sum_dual_word(cat, tail)), inner)
    return sum_compose(sum_cap_d(cat, tail), mid)


def sum_cap_dt(cat, word: SumWord) -> SumMorphism:
    """dt_X : X (x) X* -> 1."""
    if len(word) == 0:
        return SumMorphism.wrap(Morphism(cat, (), (), {(0, (), ()): cat.one()}))
    if len(word) == 1:
        obj = word[0]
        dom = (obj, sum_dual(cat, obj))
        blocks = {}
        for a in range(len(obj)):
            blocks[((a, a), ())] = cap_dt(cat, (obj[a],))
        return SumMorphism(cat, dom, (), blocks)
    head, tail = word[:1], word[1:]
    inner = sum_tensor(sum_cap_dt(cat, tail),
                       sum_identity(cat, (sum_dual(cat, head[0]),)))
    mid = sum_tensor(sum_identity(cat, head), inner)
    return sum_compose(sum_cap_dt(cat, head), mid)


def sum_trace(cat, f: SumMorphism):
    """Quantum trace of a sum endomorphism."""
    if f.dom != f.cod:
        raise MorphismError("trace needs an endomorphism")
    total = cat.zero()
    for (sd, sc), m in f.blocks.items():
        if sd == sc:
            total = total + trace(cat, m)
    return total


def sum_decompose(cat, word: SumWord):
    """Basis pairs (charge, injector, projector) of a sum word, with
    proj . inj = delta and completeness; deterministic order."""
    out = []
    for s in sorted(sectors(word)):
        w = sector_word(word, s)
        for c in charges(cat, w):
            for t in trees(cat, w, c):
                inj = SumMorphism(cat, ((c,),), word,
                                  {((0,), s): tree_injector(cat, w, c, t)})
                proj = SumMorphism(cat, word, ((c,),),
                                   {(s, (0,)): tree_projector(cat, w, c, t)})
                out.append((c, inj, proj))
    return out


def sum_dual_morphism(f: SumMorphism) -> SumMorphism:
    """Transpose of a sum morphism by bending: cod* -> dom*."""
    cat = f.cat
    x, y = f.dom, f.cod
    xd, yd = sum_dual_word(cat, x), sum_dual_word(cat, y)
    step1 = sum_tensor(sum_identity(cat, yd), sum_cup_b(cat, x))
    step2 = sum_tensor(sum_identity(cat, yd), sum_tensor(f, sum_identity(cat, xd)))
    step3 = sum_tensor(sum_cap_dt(cat, yd), sum_identity(cat, xd))
    return sum_compose(step3, sum_compose(step2, step1))


def hom_basis(cat, dom: SumWord, cod: SumWord):
    """Basis of Hom(dom, cod): elementary sum morphisms, deterministic order."""
    out = []
    for sd in sorted(sectors(dom)):
        wd = sector_word(dom, sd)
        for sc in sorted(sectors(cod)):
            wc = sector_word(cod, sc)
            for c in charges(cat, wd):
                for td in trees(cat, wd, c):
                    for tc in trees(cat, wc, c):
                        m = Morphism(cat, wd, wc, {(c, td, tc): cat.one()})
                        out.append(SumMorphism(cat, dom, cod, {(sd, sc): m}))
    return out


def sum_coefficients(f: SumMorphism, basis) -> list:
    """Coordinates of f in an elementary hom basis."""
    coords = []
    for b in basis:
        ((sd, sc), m), = b.blocks.items()
        (key, _), = m.blocks.items()
        blk = f.blocks.get((sd, sc))
        coords.append(blk.blocks.get(key, f.cat.zero()) if blk is not None else f.cat.zero())
    return coords
