"""Finitely presented modules over Z or Z/m and the constructions between them.

A module is the cokernel of its relation matrix: ``ring^g / span(columns)``.
Elements are coefficient columns over the generators; two columns are equal
iff their difference lies in the relation span, decided by exact linear
algebra.  Quotients and submodules always come with their structural
morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .errors import (
    LadderNotCommutingError,
    NonComposableError,
    NotExactError,
    WellDefinednessError,
)
from .linalg import (
    ExactMatrix,
    block_diag,
    kernel_columns,
    reduce_mod_lattice,
    shrink_generators,
    snf,
    solve_canonical,
    solve_linear,
)
from .rings import RingSpec


@dataclass(frozen=True)
class PresentedModule:
    """``ring^generators`` modulo the column span of ``relations``."""

    ring: RingSpec
    generators: int
    relations: ExactMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators or self.relations.ring != self.ring:
            raise ValueError("relation matrix must have one row per generator over the same ring")

    @staticmethod
    def make(ring: RingSpec, generators: int, relation_cols: list[list[int]]) -> "PresentedModule":
        return PresentedModule(ring, generators, ExactMatrix.from_cols(ring, relation_cols, generators))

    @staticmethod
    def zero(ring: RingSpec) -> "PresentedModule":
        return PresentedModule(ring, 0, ExactMatrix.zeros(ring, 0, 0))

    @staticmethod
    def free(ring: RingSpec, rank: int) -> "PresentedModule":
        return PresentedModule(ring, rank, ExactMatrix.zeros(ring, rank, 0))

    @staticmethod
    def cyclic(ring: RingSpec, order: int) -> "PresentedModule":
        """Z/order over Z, or the cyclic Z/m-module killed by ``order``."""
        return PresentedModule.make(ring, 1, [[order]])

    @staticmethod
    def from_invariant_factors(ring: RingSpec, factors: list[int], free_rank: int = 0) -> "PresentedModule":
        g = len(factors) + free_rank
        cols = [[factors[j] if i == j else 0 for i in range(g)] for j in range(len(factors))]
        return PresentedModule.make(ring, g, cols)

    # -- structure ----------------------------------------------------------

    def contains(self, vec) -> bool:
        """Is the coefficient column zero in the module?"""
        return all(x == 0 for x in reduce_mod_lattice(vec, self.relations))

    def canonical_rep(self, vec) -> tuple[int, ...]:
        return reduce_mod_lattice(vec, self.relations)

    def invariant_factors(self):
        return _structure(self)[1]

    def free_rank(self) -> int:
        return _structure(self)[0]

    def cardinality(self) -> int | None:
        fr, facs = _structure(self)
        if fr:
            return None
        out = 1
        for f in facs:
            out *= f
        return out

    def is_zero_module(self) -> bool:
        return self.cardinality() == 1

    def is_isomorphic_to(self, other: "PresentedModule") -> bool:
        return self.ring == other.ring and _structure(self) == _structure(other)

    def elements(self):
        """All canonical coefficient columns (finite modules only)."""
        from .linalg import lattice_pivot_profile

        pivots = lattice_pivot_profile(self.relations)
        if len(pivots) < self.generators:
            raise ValueError("module is infinite; cannot enumerate elements")
        ranges = [range(val) for _row, val in pivots]
        # pivot rows are 0..g-1 in order when the profile is full
        for combo in iproduct(*ranges):
            vec = [0] * self.generators
            for (row, _val), x in zip(pivots, combo):
                vec[row] = x
            yield tuple(vec)

    def __str__(self) -> str:
        fr, facs = _structure(self)
        parts = [f"Z/{f}" for f in facs]
        if fr:
            parts += ["Z" if self.ring.kind == "Z" else str(self.ring)] * fr
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _structure(m: PresentedModule):
    """(free_rank, invariant factors != 1) computed from the Smith form of the
    lifted relation lattice."""
    from .linalg import _lifted, _snf_int, _rank_of_diag

    data, nr, nc = _lifted(m.relations)
    _u, _ui, d, _v, _vi = _snf_int(data, nr, nc)
    rank = _rank_of_diag(d, nr, nc)
    facs = tuple(d[i][i] for i in range(rank) if d[i][i] != 1)
    return (m.generators - rank, facs)


@dataclass(frozen=True)
class ModuleElement:
    parent: PresentedModule
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.parent.generators:
            raise ValueError("coefficient length mismatch")

    def canonical(self) -> "ModuleElement":
        return ModuleElement(self.parent, self.parent.canonical_rep(self.coeffs))

    def is_zero(self) -> bool:
        return self.parent.contains(self.coeffs)

    def same_as(self, other: "ModuleElement") -> bool:
        if self.parent != other.parent:
            return False
        diff = [a - b for a, b in zip(self.coeffs, other.coeffs)]
        return self.parent.contains(diff)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        red = self.parent.ring.reduce
        return ModuleElement(self.parent, tuple(red(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "ModuleElement":
        red = self.parent.ring.reduce
        return ModuleElement(self.parent, tuple(red(c * a) for a in self.coeffs))


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WellDefinedReport:
    ok: bool
    first_violation: int | None = None


@dataclass(frozen=True)
class ModuleMorphism:
    """A matrix on generators (target generators x source generators) that
    maps every source relation into the target relation span.  Certified at
    construction via :func:`hom`."""

    source: PresentedModule
    target: PresentedModule
    matrix: ExactMatrix

    def apply(self, vec) -> tuple[int, ...]:
        return self.matrix.apply(vec)

    def apply_element(self, el: ModuleElement) -> ModuleElement:
        return ModuleElement(self.target, self.matrix.apply(el.coeffs))

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """Composition ``self after other``."""
        if other.target != self.source:
            raise NonComposableError("composition endpoint mismatch")
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise NonComposableError("sum endpoint mismatch")
        return ModuleMorphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return self + (-other)

    def __neg__(self) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, -self.matrix)

    def equals(self, other: "ModuleMorphism") -> bool:
        """Equality as morphisms: the difference sends every generator into
        the target relation span."""
        if (self.source, self.target) != (other.source, other.target):
            return False
        diff = self.matrix - other.matrix
        return all(self.target.contains(diff.col(j)) for j in range(diff.cols))

    def is_zero(self) -> bool:
        return all(self.target.contains(self.matrix.col(j)) for j in range(self.matrix.cols))

    def is_injective(self) -> bool:
        k = preimage_kernel_columns(self)
        return all(self.source.contains(k.col(j)) for j in range(k.cols))

    def is_surjective(self) -> bool:
        coker = PresentedModule(self.target.ring, self.target.generators,
                                self.target.relations.hstack(self.matrix))
        return coker.is_zero_module()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def check_well_defined(source: PresentedModule, target: PresentedModule, matrix: ExactMatrix) -> WellDefinedReport:
    """Accept iff every source relation column maps into the target relation
    span; on rejection report the first violating column."""
    if source.ring != target.ring:
        return WellDefinedReport(False, -1)
    if matrix.rows != target.generators or matrix.cols != source.generators:
        return WellDefinedReport(False, -1)
    rels = source.relations
    for j in range(rels.cols):
        img = matrix.apply(rels.col(j))
        if not target.contains(img):
            return WellDefinedReport(False, j)
    return WellDefinedReport(True)


def hom(source: PresentedModule, target: PresentedModule, matrix) -> ModuleMorphism:
    """Certified morphism constructor; raises :class:`WellDefinednessError`."""
    if not isinstance(matrix, ExactMatrix):
        matrix = ExactMatrix.from_rows(source.ring, matrix, source.generators)
    rep = check_well_defined(source, target, matrix)
    if not rep.ok:
        raise WellDefinednessError(rep.first_violation if rep.first_violation is not None else -1)
    return ModuleMorphism(source, target, matrix)


def identity_morphism(m: PresentedModule) -> ModuleMorphism:
    return ModuleMorphism(m, m, ExactMatrix.identity(m.ring, m.generators))


def zero_morphism(source: PresentedModule, target: PresentedModule) -> ModuleMorphism:
    return ModuleMorphism(source, target, ExactMatrix.zeros(source.ring, target.generators, source.generators))


def preimage_kernel_columns(f: ModuleMorphism) -> ExactMatrix:
    """Columns spanning ``{x in source coords : f(x) = 0 in target}``.

    Includes the source relation directions; this is the kernel of the map
    on coefficient columns, not yet a presented submodule.
    """
    stacked = f.matrix.hstack(f.target.relations)
    k = kernel_columns(stacked)
    cols = [list(k.col(j))[: f.source.generators] for j in range(k.cols)]
    mat = ExactMatrix.from_cols(f.source.ring, cols, f.source.generators)
    return shrink_generators(mat)


def submodule_generated(ambient: PresentedModule, gens: ExactMatrix):
    """The submodule generated by the given coefficient columns, presented on
    those columns, with its inclusion morphism."""
    k = gens.cols
    stacked = gens.hstack(ambient.relations)
    rel = kernel_columns(stacked)
    cols = [list(rel.col(j))[:k] for j in range(rel.cols)]
    rels = shrink_generators(ExactMatrix.from_cols(ambient.ring, cols, k))
    sub = PresentedModule(ambient.ring, k, rels)
    incl = hom(sub, ambient, gens)
    return sub, incl


@dataclass(frozen=True)
class KernelImageCokernel:
    kernel: PresentedModule
    kernel_inclusion: ModuleMorphism          # kernel -> source
    image: PresentedModule
    image_inclusion: ModuleMorphism           # image -> target
    image_corestriction: ModuleMorphism       # source -> image
    cokernel: PresentedModule
    cokernel_projection: ModuleMorphism       # target -> cokernel


def kernel_image_cokernel(f: ModuleMorphism) -> KernelImageCokernel:
    """Kernel, image and cokernel with their structural morphisms.

    The image is presented on the source generators (corestriction is the
    identity matrix), the cokernel on the target generators (projection is
    the identity matrix).
    """
    ring = f.source.ring
    pk = preimage_kernel_columns(f)
    ker, ker_incl = submodule_generated(f.source, pk)

    im_rels = shrink_generators(f.source.relations.hstack(pk))
    image = PresentedModule(ring, f.source.generators, im_rels)
    im_incl = hom(image, f.target, f.matrix)
    im_co = hom(f.source, image, ExactMatrix.identity(ring, f.source.generators))

    coker = PresentedModule(ring, f.target.generators,
                            shrink_generators(f.target.relations.hstack(f.matrix)))
    coker_proj = hom(f.target, coker, ExactMatrix.identity(ring, f.target.generators))
    return KernelImageCokernel(ker, ker_incl, image, im_incl, im_co, coker, coker_proj)


def morphism_kernel(f: ModuleMorphism):
    pk = preimage_kernel_columns(f)
    return submodule_generated(f.source, pk)


def morphism_cokernel(f: ModuleMorphism):
    coker = PresentedModule(f.target.ring, f.target.generators,
                            shrink_generators(f.target.relations.hstack(f.matrix)))
    return coker, hom(f.target, coker, ExactMatrix.identity(f.target.ring, f.target.generators))


# ---------------------------------------------------------------------------
# Sums, pullbacks, pushouts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    module: PresentedModule
    inject_left: ModuleMorphism
    inject_right: ModuleMorphism
    project_left: ModuleMorphism
    project_right: ModuleMorphism


def direct_sum(a: PresentedModule, b: PresentedModule) -> DirectSum:
    if a.ring != b.ring:
        raise NonComposableError("direct sum over different rings")
    ring = a.ring
    g = a.generators + b.generators
    rels = block_diag(ring, [a.relations, b.relations])
    m = PresentedModule(ring, g, rels)
    ia = ExactMatrix.identity(ring, a.generators).vstack(ExactMatrix.zeros(ring, b.generators, a.generators))
    ib = ExactMatrix.zeros(ring, a.generators, b.generators).vstack(ExactMatrix.identity(ring, b.generators))
    pa = ExactMatrix.identity(ring, a.generators).hstack(ExactMatrix.zeros(ring, a.generators, b.generators))
    pb = ExactMatrix.zeros(ring, b.generators, a.generators).hstack(ExactMatrix.identity(ring, b.generators))
    return DirectSum(m, hom(a, m, ia), hom(b, m, ib), hom(m, a, pa), hom(m, b, pb))


@dataclass(frozen=True)
class Pullback:
    module: PresentedModule
    to_left: ModuleMorphism    # pullback -> A
    to_right: ModuleMorphism   # pullback -> B


def pullback(f: ModuleMorphism, g: ModuleMorphism) -> Pullback:
    """``A x_C B`` for ``f : A -> C`` and ``g : B -> C`` with its projections."""
    if f.target != g.target:
        raise NonComposableError("pullback legs must share a target")
    ring = f.source.ring
    ga, gb = f.source.generators, g.source.generators
    c = f.target
    wide = f.matrix.hstack(-g.matrix).hstack(c.relations)
    k = kernel_columns(wide)
    cols = [list(k.col(j))[: ga + gb] for j in range(k.cols)]
    w = shrink_generators(ExactMatrix.from_cols(ring, cols, ga + gb))
    amb = direct_sum(f.source, g.source).module
    pb, incl = submodule_generated(amb, w)
    pa = hom(pb, f.source, w.take_rows(0, ga))
    pbm = hom(pb, g.source, w.take_rows(ga, ga + gb))
    return Pullback(pb, pa, pbm)


def pullback_factor(pb: Pullback, u: ModuleMorphism, v: ModuleMorphism) -> ModuleMorphism:
    """Factor a commuting cone ``(u : T -> A, v : T -> B)`` through the
    pullback; solves column by column."""
    t = u.source
    ring = t.ring
    w_full = pb.to_left.matrix.vstack(pb.to_right.matrix)
    amb_rels = block_diag(ring, [u.target.relations, v.target.relations])
    sysm = w_full.hstack(amb_rels)
    cols = []
    for j in range(t.generators):
        rhs = list(u.matrix.col(j)) + list(v.matrix.col(j))
        sol = solve_canonical(sysm, rhs)
        if sol is None:
            raise NonComposableError("cone does not factor through the pullback")
        cols.append(list(sol)[: pb.module.generators])
    return hom(t, pb.module, ExactMatrix.from_cols(ring, cols, pb.module.generators))


@dataclass(frozen=True)
class Pushout:
    module: PresentedModule
    from_left: ModuleMorphism   # A -> pushout
    from_right: ModuleMorphism  # B -> pushout


def pushout(f: ModuleMorphism, g: ModuleMorphism) -> Pushout:
    """``A (+) B`` modulo the skew columns ``(f(c), -g(c))`` for ``f : C -> A``
    and ``g : C -> B``."""
    if f.source != g.source:
        raise NonComposableError("pushout legs must share a source")
    ring = f.target.ring
    ga, gb = f.target.generators, g.target.generators
    skew_cols = [list(f.matrix.col(j)) + [-x for x in g.matrix.col(j)] for j in range(f.source.generators)]
    rels = block_diag(ring, [f.target.relations, g.target.relations])
    if skew_cols:
        rels = rels.hstack(ExactMatrix.from_cols(ring, skew_cols, ga + gb))
    po = PresentedModule(ring, ga + gb, rels)
    ia = ExactMatrix.identity(ring, ga).vstack(ExactMatrix.zeros(ring, gb, ga))
    ib = ExactMatrix.zeros(ring, ga, gb).vstack(ExactMatrix.identity(ring, gb))
    return Pushout(po, hom(f.target, po, ia), hom(g.target, po, ib))


# ---------------------------------------------------------------------------
# Exactness
# ---------------------------------------------------------------------------


EXACT = "exact"
COMPOSITE_NONZERO = "composite nonzero"
IMAGE_PROPER = "image strictly smaller than kernel"


def in_image(f: ModuleMorphism, vec) -> bool:
    """Does the target coefficient column lie in ``im(f)`` (as a submodule of
    the target)?"""
    lattice = f.matrix.hstack(f.target.relations)
    return all(x == 0 for x in reduce_mod_lattice(vec, lattice))


def exactness_report(maps: list[ModuleMorphism], left_zero: bool = True, right_zero: bool = True) -> list[tuple[str, str]]:
    """Position-by-position exactness of a chain of composable morphisms.

    Returns ``(position, verdict)`` pairs; interior verdicts are one of
    ``exact``, ``composite nonzero`` (image not inside kernel) and ``image
    strictly smaller than kernel``.
    """
    for i in range(len(maps) - 1):
        if maps[i].target != maps[i + 1].source:
            raise NonComposableError(f"maps {i} and {i + 1} do not compose")
    out = []
    if left_zero and maps:
        out.append(("left", EXACT if maps[0].is_injective() else IMAGE_PROPER))
    for i in range(len(maps) - 1):
        f, g = maps[i], maps[i + 1]
        comp = g @ f
        if not comp.is_zero():
            out.append((f"interior {i}", COMPOSITE_NONZERO))
            continue
        kg = preimage_kernel_columns(g)
        ok = all(in_image(f, kg.col(j)) for j in range(kg.cols))
        out.append((f"interior {i}", EXACT if ok else IMAGE_PROPER))
    if right_zero and maps:
        out.append(("right", EXACT if maps[-1].is_surjective() else IMAGE_PROPER))
    return out


def is_exact(maps: list[ModuleMorphism], left_zero: bool = True, right_zero: bool = True) -> bool:
    return all(v == EXACT for _p, v in exactness_report(maps, left_zero, right_zero))


@dataclass(frozen=True)
class ShortExactSequence:
    left: PresentedModule
    middle: PresentedModule
    right: PresentedModule
    inject: ModuleMorphism
    project: ModuleMorphism


def make_ses(inject: ModuleMorphism, project: ModuleMorphism) -> ShortExactSequence:
    """Validated constructor: inject injective, project surjective, image =
    kernel in the middle."""
    if inject.target != project.source:
        raise NonComposableError("injection and projection do not compose")
    report = exactness_report([inject, project])
    for pos, verdict in report:
        if verdict != EXACT:
            raise NotExactError(f"{pos}: {verdict}")
    return ShortExactSequence(inject.source, inject.target, project.target, inject, project)


def split_ses(a: PresentedModule, b: PresentedModule) -> ShortExactSequence:
    ds = direct_sum(a, b)
    return make_ses(ds.inject_left, ds.project_right)


# ---------------------------------------------------------------------------
# Lifting helpers and the constrained-morphism solver
# ---------------------------------------------------------------------------


def lift_through_inclusion(incl: ModuleMorphism, h: ModuleMorphism) -> ModuleMorphism:
    """The ``l : T -> S`` with ``incl @ l == h`` for injective ``incl`` and
    ``h`` landing inside the image of ``incl``."""
    ring = incl.source.ring
    sysm = incl.matrix.hstack(incl.target.relations)
    cols = []
    for j in range(h.source.generators):
        sol = solve_canonical(sysm, h.matrix.col(j))
        if sol is None:
            raise NonComposableError("morphism does not land in the submodule")
        cols.append(list(sol)[: incl.source.generators])
    return hom(h.source, incl.source, ExactMatrix.from_cols(ring, cols, incl.source.generators))


def solve_morphism(source: PresentedModule, target: PresentedModule,
                   pre: list[tuple[ModuleMorphism, ModuleMorphism]] = (),
                   post: list[tuple[ModuleMorphism, ModuleMorphism]] = ()) -> ModuleMorphism | None:
    """Find ``Z : source -> target`` with ``Z @ g == rhs`` for each ``(g, rhs)``
    in ``pre`` and ``p @ Z == rhs`` for each ``(p, rhs)`` in ``post``.

    Well-definedness of ``Z`` is part of the system.  Returns the canonical
    (deterministically reduced) solution or ``None``.
    """
    ring = source.ring
    gs, gt = source.generators, target.generators
    nz = gs * gt

    # each block of equations lives in some ambient module's generator
    # coordinates and holds modulo that module's relation span, absorbed by a
    # fresh group of slack unknowns
    blocks = []
    # well-definedness of Z as a pre-constraint with rhs zero
    wd_g = source.relations
    for j in range(wd_g.cols):
        blocks.append(("pre", wd_g.col(j), [0] * gt, target.relations))
    for g_, rhs_m in pre:
        if g_.target != source or rhs_m.target != target or rhs_m.source != g_.source:
            raise NonComposableError("pre-constraint endpoints mismatch")
        for j in range(g_.source.generators):
            blocks.append(("pre", g_.matrix.col(j), list(rhs_m.matrix.col(j)), target.relations))
    for p_, rhs_m in post:
        if p_.source != target or rhs_m.source != source or rhs_m.target != p_.target:
            raise NonComposableError("post-constraint endpoints mismatch")
        for j in range(gs):
            blocks.append(("post", (j, p_.matrix), list(rhs_m.matrix.col(j)), p_.target.relations))

    # row layout: for each block, rows over the block's ambient generators,
    # with a fresh slack column group spanning the ambient relation matrix
    n_slack = sum(b[3].cols for b in blocks)
    ncols = nz + n_slack
    sys_rows: list[list[int]] = []
    sys_rhs: list[int] = []
    slack_at = nz
    for kind, datum, rvec, rel in blocks:
        if kind == "pre":
            col = datum
            nrows_b = gt
            for a in range(nrows_b):
                row = [0] * ncols
                for j in range(gs):
                    if col[j]:
                        row[j * gt + a] = col[j]
                for sj in range(rel.cols):
                    row[slack_at + sj] = -rel.data[a][sj] if rel.rows else 0
                sys_rows.append(row)
                sys_rhs.append(rvec[a])
        else:
            j, pmat = datum
            nrows_b = pmat.rows
            for r_ in range(nrows_b):
                row = [0] * ncols
                for a in range(gt):
                    if pmat.data[r_][a]:
                        row[j * gt + a] = pmat.data[r_][a]
                for sj in range(rel.cols):
                    row[slack_at + sj] = -rel.data[r_][sj] if rel.rows else 0
                sys_rows.append(row)
                sys_rhs.append(rvec[r_])
        slack_at += rel.cols

    big = ExactMatrix.from_rows(ring, sys_rows, ncols) if sys_rows else ExactMatrix.zeros(ring, 0, ncols)
    sol = solve_linear(big, sys_rhs) if sys_rows else None
    if sys_rows:
        if sol is None:
            return None
        zk = sol.kernel.take_rows(0, nz)
        zvec = reduce_mod_lattice(sol.x[:nz], zk) if nz else ()
    else:
        zvec = (0,) * nz
    mat_rows = [[zvec[j * gt + a] for j in range(gs)] for a in range(gt)]
    mat = ExactMatrix.from_rows(ring, mat_rows, gs)
    return hom(source, target, mat)


# ---------------------------------------------------------------------------
# Snake lemma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SnakeResult:
    kernels: tuple[PresentedModule, PresentedModule, PresentedModule]
    kernel_inclusions: tuple[ModuleMorphism, ModuleMorphism, ModuleMorphism]
    cokernels: tuple[PresentedModule, PresentedModule, PresentedModule]
    cokernel_projections: tuple[ModuleMorphism, ModuleMorphism, ModuleMorphism]
    connecting: ModuleMorphism            # ker(right vertical) -> coker(left vertical)
    six_term: tuple[ModuleMorphism, ...]  # ka -> kb -> kc -> ca -> cb -> cc


def snake_connecting(top: ShortExactSequence, bottom: ShortExactSequence,
                     va: ModuleMorphism, vb: ModuleMorphism, vc: ModuleMorphism) -> SnakeResult:
    """Connecting morphism and six-term exact sequence of a commuting ladder
    of short exact sequences."""
    if va.source != top.left or vb.source != top.middle or vc.source != top.right:
        raise LadderNotCommutingError("vertical maps do not start on the top row")
    if va.target != bottom.left or vb.target != bottom.middle or vc.target != bottom.right:
        raise LadderNotCommutingError("vertical maps do not end on the bottom row")
    if not (vb @ top.inject).equals(bottom.inject @ va):
        raise LadderNotCommutingError("left square does not commute")
    if not (vc @ top.project).equals(bottom.project @ vb):
        raise LadderNotCommutingError("right square does not commute")

    ka, ka_in = morphism_kernel(va)
    kb, kb_in = morphism_kernel(vb)
    kc, kc_in = morphism_kernel(vc)
    ca, ca_pr = morphism_cokernel(va)
    cb, cb_pr = morphism_cokernel(vb)
    cc, cc_pr = morphism_cokernel(vc)

    ka_kb = lift_through_inclusion(kb_in, top.inject @ ka_in)
    kb_kc = lift_through_inclusion(kc_in, top.project @ kb_in)

    # staircase chase on the generators of ker(vc)
    ring = top.middle.ring
    proj_sys = top.project.matrix.hstack(top.right.relations)
    inj_sys = bottom.inject.matrix.hstack(bottom.middle.relations)
    cols = []
    for j in range(kc.generators):
        x = kc_in.matrix.col(j)
        bl = solve_canonical(proj_sys, x)
        if bl is None:
            raise NotExactError("top projection is not surjective")
        bvec = list(bl)[: top.middle.generators]
        y = vb.matrix.apply(bvec)
        al = solve_canonical(inj_sys, y)
        if al is None:
            raise NotExactError("chase left the image of the bottom injection")
        cols.append(list(al)[: bottom.left.generators])
    delta = hom(kc, ca, ExactMatrix.from_cols(ring, cols, bottom.left.generators))

    ca_cb = hom(ca, cb, bottom.inject.matrix)
    cb_cc = hom(cb, cc, bottom.project.matrix)

    return SnakeResult(
        (ka, kb, kc), (ka_in, kb_in, kc_in),
        (ca, cb, cc), (ca_pr, cb_pr, cc_pr),
        delta,
        (ka_kb, kb_kc, delta, ca_cb, cb_cc),
    )


# ---------------------------------------------------------------------------
# Presentation simplification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Simplified:
    module: PresentedModule
    to_min: ModuleMorphism     # original -> simplified
    from_min: ModuleMorphism   # simplified -> original


@lru_cache(maxsize=None)
def simplify(m: PresentedModule) -> Simplified:
    """An isomorphic module on invariant-factor generators, together with the
    isomorphisms both ways.  Keeps downstream resolutions small."""
    from .linalg import _lifted, _snf_int, _rank_of_diag

    ring = m.ring
    data, nr, nc = _lifted(m.relations)
    u, uinv, d, _v, _vi = _snf_int(data, nr, nc)
    rank = _rank_of_diag(d, nr, nc)
    keep = []
    rel_cols = []
    for i in range(m.generators):
        di = d[i][i] if i < rank else 0
        if di == 1:
            continue
        pos = len(keep)
        keep.append(i)
        if di != 0 and not (ring.is_modular and di == ring.modulus):
            rel_cols.append((pos, di))
    gN = len(keep)
    rels = ExactMatrix.from_cols(ring, [[di if r == pos else 0 for r in range(gN)] for pos, di in rel_cols], gN)
    mod = PresentedModule(ring, gN, rels)
    to_rows = [[u[i][j] for j in range(m.generators)] for i in keep]
    from_rows = [[uinv[i][j] for j in keep] for i in range(m.generators)]
    to_min = hom(m, mod, ExactMatrix.from_rows(ring, to_rows, m.generators))
    from_min = hom(mod, m, ExactMatrix.from_rows(ring, from_rows, gN) if gN else ExactMatrix.zeros(ring, m.generators, 0))
    return Simplified(mod, to_min, from_min)
