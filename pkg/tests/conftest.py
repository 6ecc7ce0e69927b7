"""Shared builders and independent oracles for the test suite.

The pointed family is the workhorse consistent instance: labels form Z/n for
odd n, S'[i][j] = s1 * q^(2 pi(i) pi(j)) with q = zeta_n and a relabeling
permutation pi, twists t_i = c * q^(pi(i)^2), all modified dimensions 1.
Gauss-sum algebra makes every check provably pass on it: the minus/plus
closures are the classical Gauss sums (independent of the column), and
S_{g,h} S_{h,-g} = (n * s1 * s2) Id exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction

from relmod.datum import (
    Degree,
    GradingSpec,
    ModularDatum,
    SBlock,
    SmallSubset,
    TranslationSpec,
)
from relmod.matrices import ExactMatrix
from relmod.scalars import CycScalar


def random_unit(rng: random.Random, conductor: int) -> CycScalar:
    q = Fraction(rng.choice([1, 2, 3, -1, -2, 5]), rng.choice([1, 2, 3]))
    return CycScalar.rational(q, conductor) * CycScalar.zeta(conductor, rng.randrange(conductor))


def random_cyclotomic(rng: random.Random, conductor: int, height: int = 10) -> CycScalar:
    out = CycScalar.zero(conductor)
    for _ in range(rng.randint(1, 3)):
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        out = out + CycScalar.rational(Fraction(num, den), conductor) \
            * CycScalar.zeta(conductor, rng.randrange(conductor))
    return out


def random_matrix(rng: random.Random, rows: int, cols: int, conductor: int,
                  height: int = 10) -> ExactMatrix:
    return ExactMatrix(rows, cols, conductor,
                       [random_cyclotomic(rng, conductor, height)
                        for _ in range(rows * cols)])


def random_invertible(rng: random.Random, n: int, conductor: int) -> ExactMatrix:
    while True:
        m = random_matrix(rng, n, n, conductor, height=4)
        if m.rank() == n:
            return m


def field_gauss_rank(m: ExactMatrix) -> int:
    """Independent rank oracle: pivoted Gaussian elimination with exact
    division in the cyclotomic field (no fraction-free tricks)."""
    rows = [list(m.row(i)) for i in range(m.rows)]
    rank = 0
    for c in range(m.cols):
        piv = next((i for i in range(rank, m.rows) if not rows[i][c].is_zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [inv * e for e in rows[rank]]
        for i in range(m.rows):
            if i != rank and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# consistent pointed instances
# ---------------------------------------------------------------------------

def pointed_datum(n: int, rng: random.Random | None = None) -> ModularDatum:
    """A fully consistent datum on Z/n labels (n odd), randomized by a
    relabeling permutation and global unit scales."""
    assert n % 2 == 1
    rng = rng or random.Random(0)
    perm = list(range(n))
    rng.shuffle(perm)
    s1 = random_unit(rng, n)
    s2 = random_unit(rng, n)
    ct = random_unit(rng, n)

    q2 = lambda i, j: CycScalar.zeta(n, (2 * perm[i] * perm[j]) % n)
    q2inv = lambda i, j: CycScalar.zeta(n, (-2 * perm[i] * perm[j]) % n)

    one = CycScalar.one(n)
    g = Degree(alpha=1)
    ng = Degree(alpha=-1)
    labels = tuple(str(i) for i in range(n))
    dims = tuple([one] * n)
    twists = tuple(ct * CycScalar.zeta(n, (perm[i] * perm[i]) % n) for i in range(n))

    def block(rd, cd, fn, scale):
        rows = [[scale * fn(i, j) for j in range(n)] for i in range(n)]
        return SBlock(rd, cd, ExactMatrix.from_rows(rows, n), labels, labels)

    grading = GradingSpec(cyclic_factors=(), has_generic_torus=True,
                          small=SmallSubset("list", (Degree(),)))
    translation = TranslationSpec(cyclic_factors=(), qdim_table=(((), one),),
                                  psi=(), no_self_extension=True)
    return ModularDatum(
        conductor=n, grading=grading, translation=translation,
        degrees=(g, ng),
        index_sets={g: labels, ng: labels},
        dims={g: dims, ng: dims},
        twists={g: twists, ng: twists},
        sprime=(
            block(g, g, q2, s1),
            block(ng, ng, q2, s1),
            block(ng, g, q2inv, s2),
            block(g, ng, q2inv, s2),
        ),
        orbit_count=n,
        dual_involution={g: tuple(range(n)), ng: tuple(range(n))},
        extra={"planted": {"zeta": str(CycScalar.rational(n, n) * s1 * s2)}})


def pointed_zeta(datum: ModularDatum) -> CycScalar:
    from relmod.scalars import parse_scalar
    return parse_scalar(datum.extra["planted"]["zeta"], datum.conductor)


# ---------------------------------------------------------------------------
# planted P = zeta * Id instances
# ---------------------------------------------------------------------------

def planted_modularity_datum(rng: random.Random, size: int,
                             conductor: int = 5) -> tuple[ModularDatum, CycScalar]:
    """Random datum whose (g,h), (h,-g) blocks satisfy S_{g,h} S_{h,-g} = zeta Id
    by construction; returns (datum, planted zeta)."""
    g = Degree(alpha=1)
    h = Degree(alpha=1, shift=Fraction(1))
    ng = Degree(alpha=-1)
    a = random_invertible(rng, size, conductor)
    ainv = a.invert()
    zeta = random_unit(rng, conductor)
    d_h = [random_unit(rng, conductor) for _ in range(size)]
    d_ng = [random_unit(rng, conductor) for _ in range(size)]
    d_g = [random_unit(rng, conductor) for _ in range(size)]
    sp_gh = a.scale_columns([x.inverse() for x in d_h])
    sp_hng = ainv.scale(zeta).scale_columns([x.inverse() for x in d_ng])
    labels = tuple(str(i) for i in range(size))
    grading = GradingSpec(cyclic_factors=(), has_generic_torus=True,
                          small=SmallSubset("list", (Degree(),)))
    translation = TranslationSpec(cyclic_factors=(),
                                  qdim_table=(((), CycScalar.one(conductor)),), psi=())
    datum = ModularDatum(
        conductor=conductor, grading=grading, translation=translation,
        degrees=(g, h, ng),
        index_sets={g: labels, h: labels, ng: labels},
        dims={g: tuple(d_g), h: tuple(d_h), ng: tuple(d_ng)},
        twists={g: tuple(random_unit(rng, conductor) for _ in range(size)),
                h: tuple(random_unit(rng, conductor) for _ in range(size)),
                ng: tuple(random_unit(rng, conductor) for _ in range(size))},
        sprime=(SBlock(g, h, sp_gh, labels, labels),
                SBlock(h, ng, sp_hng, labels, labels)),
        orbit_count=size)
    return datum, zeta


def perturb_block(datum: ModularDatum, block_index: int, i: int, j: int,
                  delta: CycScalar) -> ModularDatum:
    """Copy of datum with one S' entry shifted by delta."""
    import dataclasses
    blocks = list(datum.sprime)
    b = blocks[block_index]
    entries = list(b.matrix.entries)
    entries[i * b.matrix.cols + j] = entries[i * b.matrix.cols + j] + delta
    blocks[block_index] = SBlock(b.row_degree, b.col_degree,
                                 ExactMatrix(b.matrix.rows, b.matrix.cols,
                                             b.matrix.conductor, entries),
                                 b.row_labels, b.col_labels)
    return dataclasses.replace(datum, sprime=tuple(blocks))
