"""The representation ring of the Levi subgroup.

Supported parabolics are the two homogeneous descriptions of the spinor
tenfold: D5/P4 (Levi SL(5) x C*) and B4/Q4 (Levi SL(4) x C*).  Both Levis
are type A with a one-dimensional center, so a Levi-dominant weight maps
to a weakly decreasing GL vector (entries in (1/2)Z, all congruent mod 1)
and tensor products reduce to the Littlewood-Richardson rule on integer
partitions, with the central charge carried separately.
"""

from __future__ import annotations

from fractions import Fraction as Q
from functools import lru_cache

from . import roots
from .roots import B4_Q4, D5_P4, DomainError, InternalConsistencyError, Parabolic, Weight

Partition = tuple[int, ...]
GLVector = tuple[Q, ...]


class UnsupportedLevi(DomainError):
    """The operation is only implemented for the two spinor-tenfold parabolics."""


def _require_supported(pb: Parabolic) -> None:
    if pb not in (D5_P4, B4_Q4):
        raise UnsupportedLevi(f"Levi operations not implemented for {pb}")


def levi_rank(pb: Parabolic) -> int:
    """Size of the GL factor: 5 for D5/P4, 4 for B4/Q4."""
    _require_supported(pb)
    return 5 if pb == D5_P4 else 4


def to_gl(pb: Parabolic, w: Weight) -> GLVector:
    """GL-vector of a weight; weakly decreasing exactly when Levi-dominant."""
    _require_supported(pb)
    eps = roots.omega_to_eps(pb.datum, w)
    if pb == D5_P4:
        return (eps[0], eps[1], eps[2], eps[3], -eps[4])
    return eps


def from_gl(pb: Parabolic, v: GLVector) -> Weight:
    _require_supported(pb)
    if pb == D5_P4:
        eps = (v[0], v[1], v[2], v[3], -v[4])
    else:
        eps = v
    return roots.eps_to_omega(pb.datum, eps)


def gl_dim(v: GLVector) -> int:
    """Weyl dimension formula for GL(n); exact."""
    n = len(v)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= v[i] - v[j] + j - i
            den *= j - i
    val = Q(num, den)
    if val.denominator != 1 or val <= 0:
        raise InternalConsistencyError("GL dimension is not a positive integer")
    return int(val)


def levi_dim(pb: Parabolic, w: Weight) -> int:
    if not roots.is_levi_dominant(pb, w):
        raise DomainError(f"{w} is not Levi-dominant on {pb}")
    return gl_dim(to_gl(pb, w))


def _split_partition(v: GLVector) -> tuple[Partition, Q]:
    # v = p + s*(1,...,1) with p an integer partition ending in 0.
    s = v[-1]
    p = []
    for c in v:
        d = c - s
        if d.denominator != 1 or d < 0:
            raise DomainError(f"GL vector {v} is not weakly decreasing / congruent")
        p.append(int(d))
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise DomainError(f"GL vector {v} is not weakly decreasing")
    return tuple(p), s


@lru_cache(maxsize=None)
def lr_multiply(lam: Partition, mu: Partition, max_rows: int) -> tuple[tuple[Partition, int], ...]:
    """Littlewood-Richardson expansion of s_lam * s_mu, rows capped at max_rows.

    Enumerates chains of horizontal strips labelled by the rows of mu; a
    chain survives when the cumulative counts satisfy the lattice-word
    condition: for every label k >= 2 and row r,
    #(k in rows 1..r) <= #(k-1 in rows 1..r-1).
    """
    lam = tuple(c for c in lam if c)
    mu = tuple(c for c in mu if c)
    if len(lam) > max_rows or len(mu) > max_rows:
        raise DomainError("partition has more rows than max_rows")
    out: dict[Partition, int] = {}

    def place(label: int, shape: tuple[int, ...], prev_cum: tuple[int, ...]) -> None:
        if label > len(mu):
            key = tuple(c for c in shape if c)
            out[key] = out.get(key, 0) + 1
            return
        size = mu[label - 1]
        new_shape = list(shape)

        def rows(r: int, remaining: int) -> None:
            if r == max_rows:
                if remaining:
                    return
                cum = [0] * (max_rows + 1)
                for rr in range(max_rows):
                    cum[rr + 1] = cum[rr] + (new_shape[rr] - shape[rr])
                if label >= 2 and any(
                    cum[rr] > prev_cum[rr - 1] for rr in range(1, max_rows + 1)
                ):
                    return
                place(label + 1, tuple(new_shape), tuple(cum))
                return
            # horizontal strip: row r may grow up to the previous row's old length
            hi = shape[r] + remaining
            if r >= 1:
                hi = min(hi, shape[r - 1])
            for target in range(shape[r], hi + 1):
                new_shape[r] = target
                rows(r + 1, remaining - (target - shape[r]))
            new_shape[r] = shape[r]

        rows(0, size)

    start = tuple(list(lam) + [0] * (max_rows - len(lam)))
    place(1, start, (0,) * (max_rows + 1))
    return tuple(sorted(out.items()))


def tensor_decompose(pb: Parabolic, w1: Weight, w2: Weight) -> dict[Weight, int]:
    """Decompose the tensor product of two irreducible Levi representations."""
    _require_supported(pb)
    for w in (w1, w2):
        if not roots.is_levi_dominant(pb, w):
            raise DomainError(f"{w} is not Levi-dominant on {pb}")
    n = levi_rank(pb)
    p1, s1 = _split_partition(to_gl(pb, w1))
    p2, s2 = _split_partition(to_gl(pb, w2))
    shift = s1 + s2
    out: dict[Weight, int] = {}
    for nu, mult in lr_multiply(p1, p2, n):
        padded = list(nu) + [0] * (n - len(nu))
        glv = tuple(Q(c) + shift for c in padded)
        w = from_gl(pb, glv)
        out[w] = out.get(w, 0) + mult
    return out


def sym_power(pb: Parabolic, r: int) -> Weight:
    """Weight of Sym^r of the dual tautological bundle (U-dual / R-dual)."""
    _require_supported(pb)
    if r < 0:
        raise DomainError("negative symmetric power")
    n = levi_rank(pb)
    return from_gl(pb, tuple(Q(r if i == 0 else 0) for i in range(n)))


def wedge_power(pb: Parabolic, r: int) -> Weight:
    """Weight of the r-th wedge of the dual tautological bundle; r <= rank."""
    _require_supported(pb)
    n = levi_rank(pb)
    if not 0 <= r <= n:
        raise DomainError(f"wedge power {r} out of range 0..{n}")
    return from_gl(pb, tuple(Q(1 if i < r else 0) for i in range(n)))


def branch_d5_to_b4(mu: Weight) -> dict[Weight, int]:
    """so(10) -> so(9) restriction by the interlacing rule; multiplicity-free."""
    if not roots.is_dominant(mu):
        raise DomainError(f"{mu} is not dominant")
    lam = roots.omega_to_eps(roots.D5, mu)
    out: dict[Weight, int] = {}
    bounds = [(lam[1], lam[0]), (lam[2], lam[1]), (lam[3], lam[2]), (abs(lam[4]), lam[3])]

    def steps(lo: Q, hi: Q) -> list[Q]:
        # values in [lo, hi] congruent to hi mod 1
        first = lo + ((hi - lo) % 1)
        vals = []
        v = first
        while v <= hi:
            vals.append(v)
            v += 1
        return vals

    def rec(i: int, acc: list[Q]) -> None:
        if i == 4:
            w = roots.eps_to_omega(roots.B4, tuple(acc))
            out[w] = out.get(w, 0) + 1
            return
        lo, hi = bounds[i]
        for v in steps(lo, hi):
            acc.append(v)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


@lru_cache(maxsize=None)
def _branch_cached(mu: Weight) -> tuple[tuple[Weight, int], ...]:
    return tuple(sorted(branch_d5_to_b4(mu).items()))


def b4_content(group: roots.LieDatum, w: Weight) -> tuple[tuple[Weight, int], ...]:
    """View a D5 or B4 representation as a multiset of B4 irreducibles."""
    if group == roots.B4:
        return ((w, 1),)
    if group == roots.D5:
        return _branch_cached(w)
    raise DomainError(f"no branching to B4 from {group}")


def invariant_multiplicity_entry(factors: tuple[tuple[roots.LieDatum, Weight], ...]) -> int:
    """Multiplicity of the trivial B4 representation in a formal tensor product.

    Handles zero, one or two nontrivial factors; every B4 irreducible is
    self-dual, so a two-factor product has invariants equal to the overlap
    of the two branched multiplicity vectors.
    """
    nontrivial = [(g, w) for g, w in factors if any(w)]
    if len(nontrivial) == 0:
        return 1
    if len(nontrivial) == 1:
        g, w = nontrivial[0]
        return dict(b4_content(g, w)).get((0, 0, 0, 0), 0)
    if len(nontrivial) == 2:
        a = dict(b4_content(*nontrivial[0]))
        b = dict(b4_content(*nontrivial[1]))
        return sum(m * b.get(t, 0) for t, m in a.items())
    raise InternalConsistencyError("invariants of >2 formal tensor factors not supported")


def invariant_multiplicity(graded_reps: dict[int, dict]) -> dict[int, int]:
    """Per degree, the multiplicity of the trivial B4 representation.

    Input entries map formal tensors (tuples of (datum, weight) pairs) to
    multiplicities, the shape produced by the Ext engine; D5 factors are
    branched to B4 first.
    """
    out: dict[int, int] = {}
    for degree, entries in graded_reps.items():
        total = 0
        for factors, mult in entries.items():
            total += mult * invariant_multiplicity_entry(factors)
        if total:
            out[degree] = total
    return out
