"""Truncated FI-modules as matrix data.

A truncated FI-module V assigns to each level n <= N a free module of
dimension dims[n], together with the standard inclusion iota[n] (the
action of n_ -> n+1_, identity on elements) and the adjacent
transpositions trans[n][i-1] (the action of s_i swapping elements i-1
and i).  Every other injection is recovered by factoring it as a
permutation composed with standard inclusions, so these generators plus
their relations determine the functor on the whole of FI up to level N.

Convention: the finite set n_ is {0, 1, ..., n-1}; subsets are ordered
lexicographically on their sorted tuples within a fixed size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .linalg import (
    Matrix, QQ, ZZ, QuotientCoords, block_matrix, homology_class, snf,
)


@dataclass(frozen=True)
class FBData:
    """A sequence of symmetric group representations (an FB-module).

    dims[k] is the dimension at cardinality k; trans, if given, holds
    for each level the matrices of the adjacent transpositions s_1 ..
    s_{k-1}.  A missing trans means trivial actions everywhere.
    """

    ring: str
    truncation: int
    dims: tuple
    trans: Optional[tuple] = None

    def __post_init__(self):
        if len(self.dims) != self.truncation + 1:
            raise ValueError("dims length != truncation + 1")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        if self.trans is not None and len(self.trans) != self.truncation + 1:
            raise ValueError("trans length != truncation + 1")

    def transposition(self, k, i):
        """Matrix of s_i at cardinality k (1 <= i <= k-1)."""
        if not (1 <= i <= k - 1):
            raise ValueError("s_%d undefined at cardinality %d" % (i, k))
        if self.trans is None:
            return Matrix.identity(self.ring, self.dims[k])
        return self.trans[k][i - 1]

    def degree(self):
        """Largest k with dims[k] != 0, or -1."""
        top = -1
        for k, d in enumerate(self.dims):
            if d:
                top = k
        return top


@dataclass(frozen=True)
class FIModule:
    ring: str
    truncation: int
    dims: tuple
    iota: tuple   # iota[n]: dims[n+1] x dims[n], 0 <= n < N
    trans: tuple  # trans[n][i-1]: s_i at level n, square of size dims[n]
    name: str = ""

    def __post_init__(self):
        N = self.truncation
        if len(self.dims) != N + 1 or len(self.iota) != N or len(self.trans) != N + 1:
            raise ValueError("field lengths inconsistent with truncation %d" % N)
        for n, m in enumerate(self.iota):
            if m.shape != (self.dims[n + 1], self.dims[n]) or m.ring != self.ring:
                raise ValueError("iota[%d] has shape %s, expected %s"
                                 % (n, m.shape, (self.dims[n + 1], self.dims[n])))
        for n, mats in enumerate(self.trans):
            if len(mats) != max(0, n - 1):
                raise ValueError("level %d needs %d transpositions, got %d"
                                 % (n, max(0, n - 1), len(mats)))
            for m in mats:
                if m.shape != (self.dims[n], self.dims[n]) or m.ring != self.ring:
                    raise ValueError("bad transposition shape at level %d" % n)

    def transposition(self, n, i):
        return self.trans[n][i - 1]

    def is_zero(self):
        return all(d == 0 for d in self.dims)

    def __repr__(self):
        return "FIModule(%s, N=%d, dims=%s%s)" % (
            self.ring, self.truncation, list(self.dims),
            ", name=%r" % self.name if self.name else "")


@dataclass(frozen=True)
class FIMorphism:
    """Levelwise linear maps commuting with iota and the transpositions."""

    source: FIModule
    target: FIModule
    levels: tuple  # levels[n]: target.dims[n] x source.dims[n]

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise ValueError("ring mismatch")
        if self.source.truncation != self.target.truncation:
            raise ValueError("truncation mismatch")
        if len(self.levels) != self.source.truncation + 1:
            raise ValueError("levels length != truncation + 1")
        for n, m in enumerate(self.levels):
            want = (self.target.dims[n], self.source.dims[n])
            if m.shape != want:
                raise ValueError("level %d map has shape %s, expected %s" % (n, m.shape, want))


def validate(V: FIModule):
    """List of violated FI-module relations (empty iff V is valid).

    Checked as exact matrix identities: involutivity, braid and
    commutation relations of the transpositions, the compatibility
    s_i iota = iota s_i for i <= n-1, and the new-points relation
    s_{n+1} iota iota = iota iota.
    """
    bad = []
    N = V.truncation
    for n in range(2, N + 1):
        eye = Matrix.identity(V.ring, V.dims[n])
        for i in range(1, n):
            s = V.transposition(n, i)
            if s @ s != eye:
                bad.append("level %d: s_%d^2 != id" % (n, i))
        for i in range(1, n - 1):
            a, b = V.transposition(n, i), V.transposition(n, i + 1)
            if a @ b @ a != b @ a @ b:
                bad.append("level %d: braid s_%d s_%d s_%d != s_%d s_%d s_%d"
                           % (n, i, i + 1, i, i + 1, i, i + 1))
        for i in range(1, n - 1):
            for j in range(i + 2, n):
                a, b = V.transposition(n, i), V.transposition(n, j)
                if a @ b != b @ a:
                    bad.append("level %d: s_%d s_%d != s_%d s_%d" % (n, i, j, j, i))
    for n in range(0, N):
        # permutations of n_ commute past the inclusion into n+1_
        for i in range(1, n):
            lhs = V.transposition(n + 1, i) @ V.iota[n]
            rhs = V.iota[n] @ V.transposition(n, i)
            if lhs != rhs:
                bad.append("levels %d->%d: s_%d iota != iota s_%d" % (n, n + 1, i, i))
    for n in range(1, N):
        # swapping the two freshly added points fixes iota iota
        ii = V.iota[n] @ V.iota[n - 1]
        if V.transposition(n + 1, n) @ ii != ii:
            bad.append("levels %d->%d: s_%d iota iota != iota iota" % (n - 1, n + 1, n))
    return bad


def validate_fbdata(X: FBData):
    bad = []
    if X.trans is None:
        return bad
    for k in range(2, X.truncation + 1):
        eye = Matrix.identity(X.ring, X.dims[k])
        for i in range(1, k):
            s = X.transposition(k, i)
            if s.shape != (X.dims[k], X.dims[k]):
                bad.append("cardinality %d: s_%d has wrong shape" % (k, i))
                continue
            if s @ s != eye:
                bad.append("cardinality %d: s_%d^2 != id" % (k, i))
        for i in range(1, k - 1):
            a, b = X.transposition(k, i), X.transposition(k, i + 1)
            if a @ b @ a != b @ a @ b:
                bad.append("cardinality %d: braid fails at s_%d" % (k, i))
            for j in range(i + 2, k):
                a, b = X.transposition(k, i), X.transposition(k, j)
                if a @ b != b @ a:
                    bad.append("cardinality %d: s_%d s_%d != s_%d s_%d" % (k, i, j, j, i))
    return bad


def validate_morphism(f: FIMorphism):
    bad = []
    V, W = f.source, f.target
    for n in range(V.truncation):
        if f.levels[n + 1] @ V.iota[n] != W.iota[n] @ f.levels[n]:
            bad.append("naturality square fails at levels %d->%d" % (n, n + 1))
    for n in range(2, V.truncation + 1):
        for i in range(1, n):
            if f.levels[n] @ V.transposition(n, i) != W.transposition(n, i) @ f.levels[n]:
                bad.append("level %d: map does not commute with s_%d" % (n, i))
    return bad


# ---------------------------------------------------------------------------
# induced injection matrices


def _perm_word(perm):
    """Write a permutation of n_ as a product of adjacent transpositions.

    Bubble sort the values: each swap right-multiplies by a position
    transposition, so perm = s_{w_m} o ... o s_{w_1} where w_1..w_m is
    the returned list in order (s_i swaps the elements i-1 and i).
    """
    p = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
    return word


def permutation_matrix(V, n, perm):
    """Matrix of a permutation of n_ on V(n_), via a transposition word."""
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of %d_" % n)
    out = Matrix.identity(V.ring, V.dims[n])
    for i in _perm_word(perm):
        out = V.transposition(n, i) @ out
    return out


def induced_injection_matrix(V, f, a=None, b=None):
    """Matrix of V(f) for an injection f: a_ -> b_ given by its tuple of values.

    Factors f = sigma o iota^{b-a} with sigma a permutation of b_ that is
    order preserving on the complement of the image (any completion gives
    the same matrix once the relations hold; this one is canonical).
    """
    f = tuple(f)
    if a is None:
        a = len(f)
    if b is None:
        b = (max(f) + 1) if f else 0
    if len(f) != a or len(set(f)) != a:
        raise ValueError("not injective: %r" % (f,))
    if any(not (0 <= v < b) for v in f):
        raise ValueError("values of %r outside %d_" % (f, b))
    if b > V.truncation:
        raise ValueError("target level %d exceeds truncation %d" % (b, V.truncation))
    rest = sorted(set(range(b)) - set(f))
    sigma = list(f) + rest
    out = Matrix.identity(V.ring, V.dims[a])
    for k in range(a, b):
        out = V.iota[k] @ out
    if sigma != list(range(b)):
        out = permutation_matrix(V, b, sigma) @ out
    return out


def face_matrices(V, k):
    """[V(delta_0), ..., V(delta_k)] where delta_pos: k_ -> k+1_ skips pos.

    delta_pos = s_{pos+1} ... s_k o iota, so the list is built in one
    sweep from the top face delta_k = iota.
    """
    if k + 1 > V.truncation:
        raise ValueError("faces at level %d exceed truncation" % (k + 1))
    faces = [None] * (k + 1)
    faces[k] = V.iota[k]
    for pos in range(k - 1, -1, -1):
        faces[pos] = V.transposition(k + 1, pos + 1) @ faces[pos + 1]
    return faces


# ---------------------------------------------------------------------------
# free modules


def _subset_blocks(X, n):
    """Basis layout of M(X)(n_): offsets of each subset block, total dim."""
    offsets = {}
    off = 0
    for k in range(0, min(n, X.truncation) + 1):
        d = X.dims[k]
        if d == 0:
            continue
        for S in itertools.combinations(range(n), k):
            offsets[S] = off
            off += d
    return offsets, off


def free_fi_module(X: FBData, name=""):
    """The free FI-module M(X)(T) = direct sum over S subset T of X(S).

    Basis pairs (S, e) ordered by (|S|, lex S, index of e).  iota keeps
    each summand where it is; a transposition permutes the summands by
    the set action and acts on X(|S|) through the induced permutation of
    S (which for adjacent swaps is either trivial or one adjacent
    transposition of the ordered elements).
    """
    N = X.truncation
    ring = X.ring
    layouts = [_subset_blocks(X, n) for n in range(N + 1)]
    dims = tuple(layouts[n][1] for n in range(N + 1))
    iotas = []
    for n in range(N):
        src, d_src = layouts[n]
        tgt, _ = layouts[n + 1]
        rows = [{} for _ in range(layouts[n + 1][1])]
        one = 1 if ring == ZZ else Fraction(1)
        for S, off in src.items():
            toff = tgt[S]
            for t in range(X.dims[len(S)]):
                rows[toff + t][off + t] = one
        iotas.append(Matrix(ring, layouts[n + 1][1], d_src, rows))
    trans = []
    for n in range(N + 1):
        layout, dim_n = layouts[n]
        mats = []
        for i in range(1, n):
            a, b = i - 1, i
            rows = [{} for _ in range(dim_n)]
            one = 1 if ring == ZZ else Fraction(1)
            for S, off in layout.items():
                k = len(S)
                in_a, in_b = a in S, b in S
                if in_a and in_b:
                    # internal adjacent swap at the rank of a within S
                    r = S.index(a)
                    blk = X.transposition(k, r + 1)
                    for rr_, row in enumerate(blk.rows):
                        for cc, v in row.items():
                            rows[off + rr_][off + cc] = v
                elif in_a != in_b:
                    T = tuple(sorted(set(S) ^ {a, b}))
                    toff = layout[T]
                    for t in range(X.dims[k]):
                        rows[toff + t][off + t] = one
                else:
                    for t in range(X.dims[k]):
                        rows[off + t][off + t] = one
            mats.append(Matrix(ring, dim_n, dim_n, rows))
        trans.append(tuple(mats))
    return FIModule(ring, N, dims, tuple(iotas), tuple(trans), name=name)


def free_basis_labels(X: FBData, n):
    """Basis labels (S, index) of M(X)(n_) in matrix order."""
    offsets, total = _subset_blocks(X, n)
    labels = [None] * total
    for S, off in offsets.items():
        for t in range(X.dims[len(S)]):
            labels[off + t] = (S, t)
    return labels


def regular_fbdata(m, N, ring):
    """FB-data concentrated at cardinality m with the regular representation.

    Basis: permutations of m_ in lexicographic order; s_i acts by left
    multiplication g -> s_i o g.
    """
    dims = [0] * (N + 1)
    if m <= N:
        dims[m] = factorial(m)
    trans = []
    perms = list(itertools.permutations(range(m)))
    index = {p: t for t, p in enumerate(perms)}
    for k in range(N + 1):
        if k != m or m > N:
            trans.append(tuple(Matrix.identity(ring, dims[k]) for _ in range(max(0, k - 1))))
            continue
        mats = []
        for i in range(1, m):
            rows = [{} for _ in range(dims[m])]
            one = 1 if ring == ZZ else Fraction(1)
            for g in perms:
                rows[index[tuple(_apply_swap(g, i))]][index[g]] = one
            mats.append(Matrix(ring, dims[m], dims[m], rows))
        trans.append(tuple(mats))
    return FBData(ring, N, tuple(dims), tuple(trans))


def _apply_swap(g, i):
    """s_i o g: postcompose with the swap of values i-1 and i."""
    a, b = i - 1, i
    return [b if x == a else a if x == b else x for x in g]


def representable(m, N, ring, name=None):
    """M(m): the FI-module freely generated by one element of m_.

    Its basis at level n is the set of injections m_ -> n_, so the
    dimension is C(n, m) * m!.
    """
    if name is None:
        name = "M(%d)" % m
    return free_fi_module(regular_fbdata(m, N, ring), name=name)


def representable_basis_injections(m, n):
    """The injection m_ -> n_ labelling each basis vector of M(m)(n_)."""
    out = []
    perms = list(itertools.permutations(range(m)))
    for S in itertools.combinations(range(n), m):
        for g in perms:
            out.append(tuple(S[g[x]] for x in range(m)))
    return out


def constant_module(N, ring, name="M(0)"):
    """M(0): rank one at every level, all structure maps identity."""
    return representable(0, N, ring, name=name)


def zero_module(N, ring):
    dims = tuple(0 for _ in range(N + 1))
    iotas = tuple(Matrix.zeros(ring, 0, 0) for _ in range(N))
    trans = tuple(tuple(Matrix.zeros(ring, 0, 0) for _ in range(max(0, n - 1)))
                  for n in range(N + 1))
    return FIModule(ring, N, dims, iotas, trans, name="0")


# ---------------------------------------------------------------------------
# elementary constructions


def truncate(V: FIModule, M):
    if M > V.truncation or M < 0:
        raise ValueError("cannot truncate to %d" % M)
    return FIModule(V.ring, M, V.dims[:M + 1], V.iota[:M], V.trans[:M + 1], name=V.name)


def direct_sum(*modules):
    if not modules:
        raise ValueError("empty direct sum")
    ring = modules[0].ring
    N = modules[0].truncation
    if any(m.ring != ring or m.truncation != N for m in modules):
        raise ValueError("summands must share ring and truncation")
    dims = tuple(sum(m.dims[n] for m in modules) for n in range(N + 1))
    iotas = []
    for n in range(N):
        blocks = {(i, i): m.iota[n] for i, m in enumerate(modules)}
        iotas.append(block_matrix(ring, [m.dims[n + 1] for m in modules],
                                  [m.dims[n] for m in modules], blocks))
    trans = []
    for n in range(N + 1):
        mats = []
        for i in range(1, n):
            blocks = {(t, t): m.transposition(n, i) for t, m in enumerate(modules)}
            mats.append(block_matrix(ring, [m.dims[n] for m in modules],
                                     [m.dims[n] for m in modules], blocks))
        trans.append(tuple(mats))
    return FIModule(ring, N, dims, tuple(iotas), tuple(trans))


@dataclass(frozen=True)
class ShiftData:
    """The shift SV plus the natural map V -> SV (source truncated to N-1)."""

    module: FIModule
    natural: FIMorphism


def shift_module(V: FIModule) -> ShiftData:
    """Shift by a disjoint point: (SV)(n_) = V(n+1_), truncation N-1.

    The added point is the element 0 and n_ embeds as {1..n}, so the
    transposition s_i of SV is s_{i+1} of V and the natural map V -> SV
    is V of the face injection x -> x+1.
    """
    N = V.truncation
    if N < 1:
        raise ValueError("shift needs truncation >= 1")
    dims = V.dims[1:]
    iotas = V.iota[1:]
    trans = tuple(tuple(V.trans[n + 1][1:]) for n in range(N))
    SV = FIModule(V.ring, N - 1, dims, iotas, trans,
                  name=("S " + V.name if V.name else ""))
    nat_levels = tuple(face_matrices(V, n)[0] for n in range(N))
    nat = FIMorphism(truncate(V, N - 1), SV, nat_levels)
    return ShiftData(SV, nat)


class CokernelTorsionError(ValueError):
    """Z-module cokernel has torsion at some level: not representable here."""


def fi_coker(f: FIMorphism) -> FIModule:
    """Levelwise cokernel of f with the induced structure maps.

    Over Q always defined.  Over Z only when every levelwise cokernel is
    torsion free (checked via the Smith form); otherwise
    CokernelTorsionError is raised.
    """
    V, W = f.source, f.target
    N = V.truncation
    ring = V.ring
    if ring == QQ:
        quots = [QuotientCoords(f.levels[n], Matrix.zeros(QQ, 0, W.dims[n]))
                 for n in range(N + 1)]
        dims = tuple(q.dim for q in quots)
        iotas = tuple(quots[n].induced(W.iota[n], quots[n + 1]) for n in range(N))
        trans = tuple(
            tuple(quots[n].induced(W.transposition(n, i), quots[n])
                  for i in range(1, n))
            for n in range(N + 1))
        return FIModule(QQ, N, dims, iotas, trans)
    # Z case: coker Z^d / im f = U^-1 (Z^d / im S); torsion free iff all d_i = 1
    datas = []
    for n in range(N + 1):
        res = snf(f.levels[n])
        ds = [d for d in res.divisors() if d]
        if any(d != 1 for d in ds):
            raise CokernelTorsionError(
                "level %d cokernel has torsion %s" % (n, [d for d in ds if d != 1]))
        r = len(ds)
        datas.append((res, r))

    def project(n, mat_cols):
        res, r = datas[n]
        d = W.dims[n]
        out_rows = [{} for _ in range(d - r)]
        for c in range(mat_cols.ncols):
            img = res.U.mul_vec(mat_cols.column(c))
            for t, v in enumerate(img[r:]):
                if v:
                    out_rows[t][c] = v
        return Matrix(ZZ, d - r, mat_cols.ncols, out_rows)

    def lift(n):
        res, r = datas[n]
        d = W.dims[n]
        rows = [{} for _ in range(d)]
        for t in range(d - r):
            for k, v in enumerate(res.U_inv.column(r + t)):
                if v:
                    rows[k][t] = v
        return Matrix(ZZ, d, d - r, rows)

    lifts = [lift(n) for n in range(N + 1)]
    dims = tuple(W.dims[n] - datas[n][1] for n in range(N + 1))
    iotas = tuple(project(n + 1, W.iota[n] @ lifts[n]) for n in range(N))
    trans = tuple(
        tuple(project(n, W.transposition(n, i) @ lifts[n]) for i in range(1, n))
        for n in range(N + 1))
    return FIModule(ZZ, N, dims, iotas, trans)


def free_morphism(sources, target: FIModule, images) -> FIMorphism:
    """The map (+) M(m_i) -> target sending each generator to images[i].

    sources is a list of cardinalities m_i; images[i] is a vector in
    target(m_i_).  This is the universal property of the representables:
    the basis vector (S, g) of M(m_i)(n_) goes to target(f)(images[i])
    for the injection f = ord_S o g.
    """
    ring = target.ring
    N = target.truncation
    src = direct_sum(*[representable(m, N, ring) for m in sources]) \
        if sources else zero_module(N, ring)
    levels = []
    for n in range(N + 1):
        cols = []
        for m, vec in zip(sources, images):
            if len(vec) != target.dims[m]:
                raise ValueError("generator image has wrong dimension")
            for f in representable_basis_injections(m, n):
                mat = induced_injection_matrix(target, f, a=m, b=n)
                cols.append(mat.mul_vec(vec))
        rows = [{} for _ in range(target.dims[n])]
        for c, col in enumerate(cols):
            for i, v in enumerate(col):
                if v:
                    rows[i][c] = v
        levels.append(Matrix(ring, target.dims[n], len(cols), rows))
    return FIMorphism(src, target, tuple(levels))


# ---------------------------------------------------------------------------
# colimit comparison


def _poset_presentation(V, n, K):
    """Presentation matrix P and comparison map c of colim_{|S|<=K} V(S).

    Relations: one block per covering pair S1 < S2 (|S2| = |S1|+1 <= K),
    mapping V(S1) by  incl_{S2} o V(S1 -> S2)  -  incl_{S1}.
    """
    ring = V.ring
    K = min(K, n)
    subsets = []
    for k in range(K + 1):
        subsets.extend(itertools.combinations(range(n), k))
    offset = {}
    off = 0
    for S in subsets:
        offset[S] = off
        off += V.dims[len(S)]
    total = off
    faces = {k: face_matrices(V, k) for k in range(K) if k + 1 <= V.truncation}
    pairs = []
    for S in subsets:
        k = len(S)
        if k == K:
            continue
        for i in range(n):
            if i in S:
                continue
            T = tuple(sorted(S + (i,)))
            pairs.append((S, T, T.index(i)))
    rows = [{} for _ in range(total)]
    coff = 0
    for S, T, pos in pairs:
        k = len(S)
        blk = faces[k][pos]
        toff = offset[T]
        for i, r in enumerate(blk.rows):
            for j, v in r.items():
                rows[toff + i][coff + j] = rows[toff + i].get(coff + j, 0) + v
        soff = offset[S]
        one = 1 if ring == ZZ else Fraction(1)
        for t in range(V.dims[k]):
            # S and T blocks are disjoint rows, so no cancellation here
            rows[soff + t][coff + t] = -one
        coff += V.dims[k]
    P = Matrix(ring, total, coff, rows)
    crows = [{} for _ in range(V.dims[n])]
    for S in subsets:
        mat = induced_injection_matrix(V, S, a=len(S), b=n)
        soff = offset[S]
        for i, r in enumerate(mat.rows):
            for j, v in r.items():
                crows[i][soff + j] = v
    c = Matrix(ring, V.dims[n], total, crows)
    return P, c


def colim_compare(V: FIModule, n, K):
    """(class of colim_{|S| <= K} V(S), is the map to V(n_) an iso?).

    The colimit is presented by the covering-pair relations; the
    comparison is an isomorphism iff it is onto with zero homology
    against the presentation (checked as exact AbelianClass vanishing).
    """
    if K < 0:
        raise ValueError("cutoff K must be >= 0")
    if n > V.truncation:
        raise ValueError("level exceeds truncation")
    P, c = _poset_presentation(V, n, K)
    colim = homology_class(P, Matrix.zeros(V.ring, 0, P.nrows))
    middle = homology_class(P, c)
    onto = homology_class(c, Matrix.zeros(V.ring, 0, c.nrows))
    return colim, middle.is_zero() and onto.is_zero()
