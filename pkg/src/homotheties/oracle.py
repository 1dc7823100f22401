"""Exhaustive subgroup enumeration for tiny p and brute-force checks of the group theory.

Subgroups are enumerated up to conjugacy.  Starting from the trivial group,
every class representative H is extended by one element g at a time; g only
needs to range over orbit representatives of G under left/right
multiplication by H and conjugation by N(H), because those moves send
<H, g> to <H, g'> or to a conjugate of it.  ``full_lattice`` iterates to a
fixpoint (every subgroup, since each is reached along a generator chain);
``gen_pairs`` stops after two generators (every 2-generated subgroup).
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._ambient import ambient
from .errors import ResourceError
from .fp import check_modulus, minus_gamma_order
from .irreducible import homothety_order_cartan_case, homothety_order_sl2_case
from .subgroups import (
    Subgroup,
    _from_indices,
    classify,
    pgl_image_histogram,
    split_normalizer_hypothesis,
    taxonomy_holds,
    verify_sl2_det_pullback,
)

FULL_LATTICE = "full_lattice"
GEN_PAIRS = "gen_pairs"
SUPPORTED = {FULL_LATTICE: (5, 7), GEN_PAIRS: (5, 7, 11, 13)}


@dataclass
class _Class:
    gens: list[int]
    elems: np.ndarray
    depth: int
    normalizer_order: int = 0


@dataclass
class Lattice:
    """Conjugacy-class representatives of the enumerated subgroups."""

    p: int
    mode: str
    classes: list[_Class]

    @property
    def conjugacy_class_count(self) -> int:
        return len(self.classes)

    @property
    def subgroup_count(self) -> int:
        n = ambient(self.p).n
        return sum(n // c.normalizer_order for c in self.classes)

    def representatives(self) -> list[Subgroup]:
        return [_from_indices(self.p, c.gens, c.elems) for c in self.classes]


def _check_supported(p: int, mode: str) -> None:
    if mode not in SUPPORTED:
        raise ValueError(f"unknown enumeration mode {mode!r}")
    if p not in SUPPORTED[mode]:
        raise ResourceError(f"{mode} enumeration supports p in {SUPPORTED[mode]}, got {p}")


class _Enumerator:
    def __init__(self, p: int, mode: str):
        self.amb = ambient(p)
        self.p, self.mode = p, mode
        self.classes: list[_Class] = []
        self.buckets: dict[tuple[int, bytes], list[int]] = defaultdict(list)
        self.class_bins = 2 * p * p

    def _invariant(self, elems: np.ndarray) -> tuple[int, bytes]:
        hist = np.bincount(self.amb.class_id[elems], minlength=self.class_bins)
        return elems.size, hist.astype(np.int32).tobytes()

    def _find(self, elems: np.ndarray) -> int | None:
        """Index of the class conjugate to ``elems``, if known."""
        amb = self.amb
        candidates = self.buckets.get(self._invariant(elems))
        if not candidates:
            return None
        if len(candidates) == 1 and elems.size == 1:
            return candidates[0]
        mask = amb.mask_of(elems)
        for k in candidates:
            ok = np.ones(amb.n, dtype=bool)
            for r in self.classes[k].gens:
                ok &= mask[amb.conj_all(r)]
            if ok.any():
                return k
        return None

    def _add(self, gens: list[int], elems: np.ndarray, depth: int) -> None:
        self.buckets[self._invariant(elems)].append(len(self.classes))
        self.classes.append(_Class(gens, elems, depth))

    def _extension_reps(self, cls: _Class, norm_gens: list[int]) -> np.ndarray:
        amb, n = self.amb, self.amb.n
        perms = [amb.left_perm(h) for h in cls.gens]
        perms += [amb.right_perm(h) for h in cls.gens]
        perms += [amb.conj_perm(x) for x in norm_gens]
        rows = np.tile(amb.all, len(perms))
        graph = coo_matrix(
            (np.ones(rows.size, dtype=np.int8), (rows, np.concatenate(perms))), shape=(n, n)
        )
        _, labels = connected_components(graph, directed=True, connection="weak")
        _, first = np.unique(labels, return_index=True)
        reps = np.sort(first)
        return reps[~amb.mask_of(cls.elems)[reps]]

    def run(self) -> Lattice:
        amb = self.amb
        self._add([], np.array([amb.identity], dtype=np.int64), 0)
        i = 0
        while i < len(self.classes):
            cls = self.classes[i]
            i += 1
            mask = amb.mask_of(cls.elems)
            norm = np.flatnonzero(amb.normalizer_mask(mask, cls.gens))
            cls.normalizer_order = norm.size
            if self.mode == GEN_PAIRS and cls.depth >= 2:
                continue
            norm_gens = amb.generators_for(norm, cls.elems, cls.gens)
            for g in self._extension_reps(cls, norm_gens):
                g = int(g)
                if cls.depth == 0:
                    elems = amb.cyclic(g)
                else:
                    elems = amb.closure(cls.gens + [g], base=cls.elems, new=[g])
                if self._find(elems) is None:
                    self._add(cls.gens + [g], elems, cls.depth + 1)
        return Lattice(self.p, self.mode, self.classes)


def build_lattice(p: int, mode: str = FULL_LATTICE) -> Lattice:
    """Enumerate afresh (no caching)."""
    p = int(check_modulus(p))
    _check_supported(p, mode)
    return _Enumerator(p, mode).run()


@lru_cache(maxsize=8)
def lattice(p: int, mode: str = FULL_LATTICE) -> Lattice:
    return build_lattice(p, mode)


def enumerate_subgroups(p: int, mode: str = FULL_LATTICE) -> list[Subgroup]:
    """One representative per conjugacy class of enumerated subgroups.

    ``full_lattice`` (p in {5, 7}) is complete; ``gen_pairs`` (p <= 13) covers
    exactly the subgroups generated by two elements.
    """
    return lattice(int(p), mode).representatives()


def conjugates(group: Subgroup) -> Iterator[Subgroup]:
    """Every conjugate x H x^-1 of the subgroup, each exactly once."""
    amb = group.ambient
    perms = [amb.conj_perm(g) for g in amb.generators]
    seen = {group.key}
    queue = [(group.gen_indices, group.indices)]
    yield group
    while queue:
        gens, elems = queue.pop()
        for perm in perms:
            image = np.sort(perm[elems])
            key = image.astype(np.int32).tobytes()
            if key not in seen:
                seen.add(key)
                queue.append((perm[gens], image))
                yield _from_indices(group.p, perm[gens], image)


@dataclass
class EnumerationResult:
    p: int
    mode: str
    subgroup_count: int
    conjugacy_class_count: int
    failures: list[tuple[list[str], str]] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "mode": self.mode,
            "subgroup_count": self.subgroup_count,
            "conjugacy_class_count": self.conjugacy_class_count,
            "failures": [{"generators": g, "property": name} for g, name in self.failures],
            "checked": dict(sorted(self.checked.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def merge(self, other: EnumerationResult) -> EnumerationResult:
        checked = dict(self.checked)
        for k, v in other.checked.items():
            checked[k] = checked.get(k, 0) + v
        return EnumerationResult(
            self.p, self.mode, self.subgroup_count, self.conjugacy_class_count,
            self.failures + other.failures, checked,
        )


def default_mode(p: int) -> str:
    return FULL_LATTICE if p in SUPPORTED[FULL_LATTICE] else GEN_PAIRS


def _run_checks(p: int, mode: str | None, checks) -> EnumerationResult:
    mode = mode or default_mode(p)
    lat = lattice(int(p), mode)
    result = EnumerationResult(int(p), mode, lat.subgroup_count, lat.conjugacy_class_count)
    for group in lat.representatives():
        report = classify(group)
        for name, applies, holds in checks(group, report):
            if not applies:
                continue
            result.checked[name] = result.checked.get(name, 0) + 1
            if not holds():
                result.failures.append(([g.literal() for g in group.generators], name))
    return result


def _classification_checks(group: Subgroup, r):
    yield "taxonomy", True, lambda: taxonomy_holds(r)
    yield "split_cartan_in_normalizer", r.in_split_cartan, lambda: r.in_split_normalizer
    yield "split_cartan_in_borel", r.in_split_cartan, lambda: r.in_borel
    yield "nonsplit_cartan_in_normalizer", r.in_nonsplit_cartan, lambda: r.in_nonsplit_normalizer
    yield (
        "exceptional_pgl_orders_at_most_5",
        r.exceptional != "none",
        lambda: max(pgl_image_histogram(group)) <= 5,
    )
    yield "homothety_index", True, lambda: r.homothety_index * r.scalar_order == group.p - 1
    yield "det_image_divides", True, lambda: (group.p - 1) % r.det_image_order == 0


def _homothety_checks(group: Subgroup, r):
    p, delta, m = group.p, r.det_image_order, r.scalar_order
    cartan = homothety_order_cartan_case(delta)

    def gamma_or_minus():
        # some homothety of ratio gamma or -gamma lies in the group, gamma of order delta
        return m % delta == 0 or m % minus_gamma_order(delta, p) == 0

    yield "sl2_homothety_order", r.contains_sl2, lambda: m % homothety_order_sl2_case(delta, p) == 0
    yield "sl2_det_pullback", r.contains_sl2, lambda: verify_sl2_det_pullback(group)
    split_hyp = split_normalizer_hypothesis(group)
    yield "split_normalizer_homotheties", split_hyp, lambda: m % cartan == 0
    yield (
        "split_normalizer_homotheties_strict",
        r.in_split_normalizer and not r.in_split_cartan,
        lambda: m % cartan == 0,
    )
    yield "split_normalizer_gamma", split_hyp, gamma_or_minus
    yield "nonsplit_normalizer_homotheties", r.in_nonsplit_normalizer, lambda: m % cartan == 0
    yield "nonsplit_normalizer_gamma", r.in_nonsplit_normalizer, gamma_or_minus


def verify_classification(p: int, mode: str | None = None) -> EnumerationResult:
    """Check the maximal-subgroup dichotomy and flag implications on every class."""
    return _run_checks(p, mode, _classification_checks)


def verify_homothety_props(p: int, mode: str | None = None) -> EnumerationResult:
    """Check the scalar-subgroup guarantees for SL_2-containing and Cartan-normaliser groups."""
    return _run_checks(p, mode, _homothety_checks)
