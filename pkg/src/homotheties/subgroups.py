"""Finitely generated subgroups of GL_2(F_p), the named subgroups, and classification."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._ambient import Ambient, ambient
from .errors import DomainError, InputError
from .fp import check_modulus, is_quadratic_residue, primitive_root
from .gl2 import Mat2, gl2_order, sl2_order

# element-order histograms (orders 1, 2, 3, 4, 5) of the exceptional PGL images
EXCEPTIONAL_HISTOGRAMS = {
    "A4": (12, {1: 1, 2: 3, 3: 8}),
    "S4": (24, {1: 1, 2: 9, 3: 8, 4: 6}),
    "A5": (60, {1: 1, 2: 15, 3: 20, 5: 24}),
}


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of GL_2(F_p) given by generators and materialised as a sorted index set.

    ``indices`` numbers elements as in the ambient model; use :attr:`elements`
    for the matrices themselves.
    """

    p: int
    generators: tuple[Mat2, ...]
    indices: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return int(self.indices.size)

    @cached_property
    def elements(self) -> frozenset[Mat2]:
        amb = self.ambient
        return frozenset(amb.mat(int(i)) for i in self.indices)

    @property
    def ambient(self) -> Ambient:
        return ambient(self.p)

    @cached_property
    def gen_indices(self) -> np.ndarray:
        amb = self.ambient
        return np.array([amb.index(g) for g in self.generators], dtype=np.int64)

    @cached_property
    def mask(self) -> np.ndarray:
        return self.ambient.mask_of(self.indices)

    @cached_property
    def key(self) -> bytes:
        """Exact fingerprint of the element set."""
        return self.indices.astype(np.int32).tobytes()

    def __contains__(self, m: Mat2) -> bool:
        return m.p == self.p and bool(self.mask[self.ambient.index(m)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.p == other.p and self.key == other.key

    def __hash__(self):
        return hash((self.p, self.key))

    def __len__(self) -> int:
        return self.order

    def issubset(self, other: Subgroup) -> bool:
        return self.p == other.p and bool(other.mask[self.indices].all())

    def is_abelian(self) -> bool:
        amb, g = self.ambient, self.gen_indices
        return bool((amb.mul(g[:, None], g[None, :]) == amb.mul(g[None, :], g[:, None])).all())


def _from_indices(p: int, gen_idx: Iterable[int], indices: np.ndarray) -> Subgroup:
    amb = ambient(p)
    gens = tuple(amb.mat(int(g)) for g in gen_idx)
    return Subgroup(int(p), gens, np.asarray(indices, dtype=np.int64))


def generate(p: int, gens: Sequence[Mat2], cap: int | None = None) -> Subgroup:
    """Smallest subgroup containing ``gens``.

    ``cap`` bounds the number of elements (default: the whole group) and a
    larger closure raises :class:`ResourceError`.
    """
    p = check_modulus(p)
    gens = tuple(gens)
    for g in gens:
        if not isinstance(g, Mat2):
            raise InputError(f"generator {g!r} is not a Mat2")
        if g.p != p:
            raise InputError(f"generator {g.literal()} is over F_{g.p}, not F_{p}")
    amb = ambient(p)
    idx = [amb.index(g) for g in gens]
    cap = gl2_order(p) if cap is None else cap
    return Subgroup(int(p), gens, amb.closure(idx, cap=cap))


def trivial_group(p: int) -> Subgroup:
    return generate(p, [])


def build_gl2(p: int) -> Subgroup:
    amb = ambient(p)
    return _from_indices(p, amb.generators, amb.all)


def build_sl2(p: int) -> Subgroup:
    return generate(p, [Mat2(1, 1, 0, 1, p), Mat2(1, 0, 1, 1, p)])


def build_split_cartan(p: int) -> Subgroup:
    """Diagonal matrices: the stabiliser of the two coordinate axes."""
    g = int(primitive_root(p))
    return generate(p, [Mat2.diag(g, 1, p), Mat2.diag(1, g, p)])


def build_borel(p: int) -> Subgroup:
    """Upper-triangular matrices: the stabiliser of the first axis."""
    g = int(primitive_root(p))
    return generate(p, [Mat2.diag(g, 1, p), Mat2.diag(1, g, p), Mat2(1, 1, 0, 1, p)])


def build_nonsplit_cartan(p: int, alpha: int | None = None) -> Subgroup:
    """The matrices [[a, b alpha], [b, a]], (a, b) != (0, 0), for a non-residue alpha."""
    p = check_modulus(p)
    if alpha is None:
        alpha = next(a for a in range(2, p) if not is_quadratic_residue(a, p))
    alpha = int(alpha) % p
    if alpha == 0 or is_quadratic_residue(alpha, p):
        raise InputError(f"{alpha} is a square mod {p}; a non-residue is required")
    amb = ambient(p)
    target = p * p - 1
    for a in range(p):
        for b in range(1, p):
            m = Mat2(a, b * alpha, b, a, p)
            cyc = amb.cyclic(amb.index(m))
            if cyc.size == target:
                return Subgroup(int(p), (m,), cyc)
    raise AssertionError("unreachable: F_{p^2}^x is cyclic")


def normalizer_of(group: Subgroup) -> Subgroup:
    """N(H) = {x : x H x^-1 = H} inside GL_2(F_p)."""
    amb = group.ambient
    norm = np.flatnonzero(amb.normalizer_mask(group.mask, group.gen_indices))
    gens = amb.generators_for(norm, group.indices, group.gen_indices)
    return _from_indices(group.p, gens, norm)


def build_split_normalizer(p: int) -> Subgroup:
    return normalizer_of(build_split_cartan(p))


def build_nonsplit_normalizer(p: int, alpha: int | None = None) -> Subgroup:
    return normalizer_of(build_nonsplit_cartan(p, alpha))


NAMED_BUILDERS = {
    "split-cartan": build_split_cartan,
    "split-normalizer": build_split_normalizer,
    "nonsplit-cartan": build_nonsplit_cartan,
    "nonsplit-normalizer": build_nonsplit_normalizer,
    "borel": build_borel,
    "sl2": build_sl2,
    "gl2": build_gl2,
}


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    p_divides_order: bool
    contains_sl2: bool
    in_borel: bool
    in_split_cartan: bool
    in_split_normalizer: bool
    in_nonsplit_cartan: bool
    in_nonsplit_normalizer: bool
    exceptional: str
    irreducible: bool
    scalar_order: int
    homothety_index: int
    det_image_order: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def scalar_subgroup(group: Subgroup) -> tuple[int, int]:
    """(m, (p-1)/m) with m the number of homotheties in the group."""
    m = int(group.ambient.is_scalar[group.indices].sum())
    return m, (group.p - 1) // m


def det_image_order(group: Subgroup) -> int:
    return int(np.unique(group.ambient.det[group.indices]).size)


def contains_sl2(group: Subgroup) -> bool:
    amb = group.ambient
    return int((amb.det[group.indices] == 1).sum()) == sl2_order(group.p)


def common_lines(group: Subgroup) -> int:
    """Bitmask of the lines fixed by every element."""
    bits = group.ambient.stab_bits[group.gen_indices]
    full = (1 << (group.p + 1)) - 1
    return int(np.bitwise_and.reduce(bits)) if bits.size else full


def _stable_pairs(group: Subgroup) -> tuple[np.ndarray, np.ndarray]:
    """For every unordered line pair: (setwise stable, pointwise fixed) by the group."""
    amb = group.ambient
    i, j = amb.line_pairs
    act = amb.line_perm[group.gen_indices]
    if act.shape[0] == 0:
        ones = np.ones(i.size, dtype=bool)
        return ones, ones
    ai, aj = act[:, i], act[:, j]
    fixed = (ai == i) & (aj == j)
    swapped = (ai == j) & (aj == i)
    return (fixed | swapped).all(axis=0), fixed.all(axis=0)


def split_normalizer_hypothesis(group: Subgroup) -> bool:
    """Some split Cartan fails to contain the group while its normaliser does."""
    setwise, pointwise = _stable_pairs(group)
    return bool((setwise & ~pointwise).any())


def _nonsplit_flags(group: Subgroup) -> tuple[bool, bool]:
    amb = group.ambient
    cartan_of, _, ptr, ids = amb.nonsplit
    gens = [int(g) for g in group.gen_indices if not amb.is_scalar[g]]
    if not gens:
        return True, True
    owners = cartan_of[gens]
    in_cartan = bool(owners[0] >= 0 and (owners == owners[0]).all())
    candidates = None
    for g in gens:
        ks = set(ids[ptr[g]:ptr[g + 1]].tolist())
        candidates = ks if candidates is None else candidates & ks
        if not candidates:
            break
    return in_cartan, bool(candidates)


def pgl_image_histogram(group: Subgroup) -> dict[int, int]:
    """Element orders of the image in PGL_2(F_p): {order: count}."""
    amb = group.ambient
    _, first = np.unique(amb.pgl_id[group.indices], return_index=True)
    orders, counts = np.unique(amb.pgl_ord[group.indices[first]], return_counts=True)
    return dict(zip(orders.tolist(), counts.tolist()))


def pgl_image_abelian(group: Subgroup) -> bool:
    amb, g = group.ambient, group.gen_indices
    comm = amb.mul(amb.mul(g[:, None], g[None, :]), amb.inv[amb.mul(g[None, :], g[:, None])])
    return bool(amb.is_scalar[comm].all())


def exceptional_type(group: Subgroup) -> str:
    """'A4', 'S4', 'A5' when the PGL image matches that group's order and order-histogram."""
    m, _ = scalar_subgroup(group)
    size = group.order // m
    for name, (order, hist) in EXCEPTIONAL_HISTOGRAMS.items():
        if size == order and not pgl_image_abelian(group) and pgl_image_histogram(group) == hist:
            return name
    return "none"


def classify(group: Subgroup) -> ClassificationReport:
    p = group.p
    lines = common_lines(group)
    setwise, _ = _stable_pairs(group)
    in_ns, in_nsn = _nonsplit_flags(group)
    scal, index = scalar_subgroup(group)
    return ClassificationReport(
        order=group.order,
        p_divides_order=group.order % p == 0,
        contains_sl2=contains_sl2(group),
        in_borel=lines != 0,
        in_split_cartan=lines.bit_count() >= 2,
        in_split_normalizer=bool(setwise.any()),
        in_nonsplit_cartan=in_ns,
        in_nonsplit_normalizer=in_nsn,
        exceptional=exceptional_type(group),
        irreducible=lines == 0,
        scalar_order=scal,
        homothety_index=index,
        det_image_order=det_image_order(group),
    )


def verify_sl2_det_pullback(group: Subgroup) -> bool:
    """Whether a group containing SL_2 is the full determinant preimage of its det image."""
    if not contains_sl2(group):
        raise DomainError("the group does not contain SL_2(F_p)")
    return group.order == sl2_order(group.p) * det_image_order(group)


def taxonomy_holds(report: ClassificationReport) -> bool:
    """The maximal-subgroup dichotomy, read off a report."""
    if report.p_divides_order:
        return report.contains_sl2 or report.in_borel
    return (
        report.exceptional != "none"
        or report.in_split_normalizer
        or report.in_nonsplit_normalizer
    )

