"""Indexed model of GL_2(F_p) for small p.

Every element is numbered 0..n-1 (ordered by the code a p^3 + b p^2 + c p + d)
and group operations act on numpy index arrays.  All set-level computations
(closures, normalisers, conjugacy, classification) run on this model.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

import numpy as np

from .errors import ResourceError
from .fp import check_modulus, primitive_root
from .gl2 import Mat2, gl2_order

# |GL_2(F_23)| = 267168; beyond that the tables stop being cheap.
MAX_AMBIENT_PRIME = 23
# a full multiplication table costs n^2 int32 entries (16 MB at p = 7)
_TABLE_MAX_ORDER = 2016


@lru_cache(maxsize=4)
def ambient(p: int) -> Ambient:
    p = check_modulus(p)
    if p > MAX_AMBIENT_PRIME:
        raise ResourceError(
            f"set-level computations support p <= {MAX_AMBIENT_PRIME}, got {p}"
        )
    return Ambient(int(p))


class Ambient:
    def __init__(self, p: int):
        self.p = p
        codes = np.arange(p**4, dtype=np.int64)
        a, b, c, d = codes // p**3, codes // p**2 % p, codes // p % p, codes % p
        invertible = (a * d - b * c) % p != 0
        self.codes = codes[invertible]
        self.A, self.B, self.C, self.D = a[invertible], b[invertible], c[invertible], d[invertible]
        self.n = n = self.codes.size
        assert n == gl2_order(p)
        self.index_of = np.full(p**4, -1, dtype=np.int64)
        self.index_of[self.codes] = np.arange(n)
        self.all = np.arange(n, dtype=np.int64)
        self.det = (self.A * self.D - self.B * self.C) % p
        self.trace = (self.A + self.D) % p
        self.is_scalar = (self.B == 0) & (self.C == 0) & (self.A == self.D)
        self.identity = self.index(Mat2.identity(p))
        self.inv_mod = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
        di = self.inv_mod[self.det]
        self.inv = self._encode(self.D * di, -self.B * di, -self.C * di, self.A * di)
        self.table = None
        if n <= _TABLE_MAX_ORDER:
            self.table = self.mul(self.all[:, None], self.all[None, :]).astype(np.int32)

    # element <-> index

    def index(self, m: Mat2) -> int:
        p = self.p
        return int(self.index_of[((m.a * p + m.b) * p + m.c) * p + m.d])

    def mat(self, i: int) -> Mat2:
        return Mat2(int(self.A[i]), int(self.B[i]), int(self.C[i]), int(self.D[i]), self.p)

    def _encode(self, a, b, c, d):
        p = self.p
        return self.index_of[(((a % p) * p + b % p) * p + c % p) * p + d % p]

    # products

    def mul(self, x, y):
        """Elementwise (broadcasting) product of index arrays."""
        if self.table is not None:
            return self.table[x, y].astype(np.int64)
        A, B, C, D = self.A, self.B, self.C, self.D
        ax, bx, cx, dx = A[x], B[x], C[x], D[x]
        ay, by, cy, dy = A[y], B[y], C[y], D[y]
        return self._encode(ax * ay + bx * cy, ax * by + bx * dy, cx * ay + dx * cy, cx * by + dx * dy)

    @lru_cache(maxsize=512)
    def right_perm(self, g: int) -> np.ndarray:
        """x -> x g for every x."""
        if self.table is not None:
            return self.table[:, g].astype(np.int64)
        return self.mul(self.all, g)

    def left_perm(self, g: int) -> np.ndarray:
        """x -> g x for every x."""
        if self.table is not None:
            return self.table[g, :].astype(np.int64)
        return self.mul(g, self.all)

    def conj_perm(self, g: int) -> np.ndarray:
        """x -> g x g^-1 for every x."""
        return self.mul(self.left_perm(g), self.inv[g])

    @lru_cache(maxsize=512)
    def conj_all(self, r: int) -> np.ndarray:
        """x -> x r x^-1 for every x (the conjugates of one fixed element)."""
        return self.mul(self.right_perm(r), self.inv)

    def power(self, g: int, k: int) -> int:
        result, base = self.identity, g
        while k:
            if k & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            k >>= 1
        return result

    def cyclic(self, g: int) -> np.ndarray:
        perm = self.right_perm(g)
        out, x = [self.identity], g
        while x != self.identity:
            out.append(x)
            x = int(perm[x])
        return np.sort(np.array(out, dtype=np.int64))

    # closures

    def closure(self, gens, base=None, new=None, cap=None) -> np.ndarray:
        """Sorted element indices of the subgroup generated by ``gens``.

        If ``base`` (a sorted index array of a subgroup) is given, the
        generators of ``base`` must be among ``gens`` and only ``new`` are
        multiplied into it on the first round.
        """
        n = self.n
        gens = [int(g) for g in gens]
        mask = np.zeros(n, dtype=bool)
        if base is None:
            mask[self.identity] = True
            frontier = np.array([self.identity], dtype=np.int64)
            first = gens
        else:
            mask[base] = True
            frontier = np.asarray(base, dtype=np.int64)
            first = [int(g) for g in (new if new is not None else gens)]
        every = sorted(set(gens) | {int(self.inv[g]) for g in gens})
        first = sorted(set(first) | {int(self.inv[g]) for g in first})
        count = int(mask.sum())
        perms = [self.right_perm(g) for g in first]
        while frontier.size and perms:
            step = np.concatenate([perm[frontier] for perm in perms])
            step = step[~mask[step]]
            if step.size == 0:
                break
            step = np.unique(step)
            mask[step] = True
            count += step.size
            if cap is not None and count > cap:
                raise ResourceError(f"closure exceeds the element cap {cap}")
            if 2 * count > n:
                # Lagrange: a subgroup larger than half the group is the group
                if cap is not None and n > cap:
                    raise ResourceError(f"closure exceeds the element cap {cap}")
                return self.all.copy()
            frontier = step
            perms = [self.right_perm(g) for g in every]
        return np.flatnonzero(mask)

    def mask_of(self, elems) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        mask[elems] = True
        return mask

    def normalizer_mask(self, elems_mask, gens) -> np.ndarray:
        """Elements x with x H x^-1 = H, where H = <gens> has membership mask."""
        out = np.ones(self.n, dtype=bool)
        for r in gens:
            out &= elems_mask[self.conj_all(int(r))]
        return out

    def generators_for(self, target, base, base_gens) -> list[int]:
        """Greedy generating set for ``target`` extending ``base_gens``."""
        gens = [int(g) for g in base_gens]
        current = np.asarray(base, dtype=np.int64)
        target_mask = self.mask_of(target)
        while current.size < int(target_mask.sum()):
            missing = target_mask.copy()
            missing[current] = False
            x = int(np.flatnonzero(missing)[0])
            current = self.closure(gens + [x], base=current, new=[x])
            gens.append(x)
        return gens

    @cached_property
    def generators(self) -> list[int]:
        """Two generators of GL_2(F_p): diag(g, 1) and [[-1, 1], [-1, 0]]."""
        p = self.p
        g = int(primitive_root(p))
        gens = [self.index(Mat2.diag(g, 1, p)), self.index(Mat2(-1, 1, -1, 0, p))]
        assert self.closure(gens).size == self.n
        return gens

    # lines of F_p^2: index t < p is the line through (1, t); index p is (0, 1)

    @cached_property
    def line_perm(self) -> np.ndarray:
        p = self.p
        out = np.empty((self.n, p + 1), dtype=np.int64)
        A, B, C, D = self.A, self.B, self.C, self.D
        for t in range(p):
            out[:, t] = self._line_index((A + B * t) % p, (C + D * t) % p)
        out[:, p] = self._line_index(B, D)
        return out

    def _line_index(self, u, v):
        return np.where(u != 0, v * self.inv_mod[u] % self.p, self.p)

    @cached_property
    def stab_bits(self) -> np.ndarray:
        """Bit L set iff the element fixes line L."""
        fixed = self.line_perm == np.arange(self.p + 1)
        return (fixed.astype(np.int64) << np.arange(self.p + 1)).sum(axis=1)

    @cached_property
    def line_pairs(self) -> tuple[np.ndarray, np.ndarray]:
        i, j = np.triu_indices(self.p + 1, k=1)
        return i, j

    # projective classes

    @cached_property
    def pgl_id(self) -> np.ndarray:
        lead = np.where(self.A != 0, self.A, self.B)
        s = self.inv_mod[lead]
        p = self.p
        norm = (((self.A * s % p) * p + self.B * s % p) * p + self.C * s % p) * p + self.D * s % p
        return np.unique(norm, return_inverse=True)[1].astype(np.int64)

    @cached_property
    def pgl_ord(self) -> np.ndarray:
        order = np.zeros(self.n, dtype=np.int64)
        power = self.all.copy()
        k = 1
        while (order == 0).any():
            hit = (order == 0) & self.is_scalar[power]
            order[hit] = k
            power = self.mul(power, self.all)
            k += 1
        return order

    # conjugacy-class labels of elements: (trace, det, scalar?) determines the class

    @cached_property
    def class_id(self) -> np.ndarray:
        p = self.p
        return self.trace * p + self.det + p * p * self.is_scalar

    # non-split Cartan subgroups and their normalisers

    @cached_property
    def nonsplit(self) -> tuple[np.ndarray, list[np.ndarray], np.ndarray, np.ndarray]:
        """(cartan_of, cartans, norm_ptr, norm_ids).

        cartan_of[x] is the id of the unique non-split Cartan containing the
        non-scalar element x (or -1); cartans[k] lists the elements of the
        k-th one; norm_ids[norm_ptr[x]:norm_ptr[x+1]] are the ids k whose
        normaliser contains the non-scalar element x.
        """
        p = self.p
        disc = (self.trace**2 - 4 * self.det) % p
        irreducible = np.array([pow(int(v), (p - 1) // 2, p) == p - 1 for v in range(p)])[disc]
        cartan_of = np.full(self.n, -1, dtype=np.int64)
        cartans = []
        aa, bb = np.meshgrid(np.arange(p), np.arange(1, p), indexing="ij")
        aa, bb = aa.ravel(), bb.ravel()
        scal = np.array([self.index(Mat2.scalar(x, p)) for x in range(1, p)])
        for x in np.flatnonzero(irreducible & ~self.is_scalar):
            if cartan_of[x] >= 0:
                continue
            # F_p[x]^x = {a + b x}; the b != 0 part is non-scalar
            members = self._encode(
                aa + bb * self.A[x], bb * self.B[x], bb * self.C[x], aa + bb * self.D[x]
            )
            k = len(cartans)
            cartan_of[members] = k
            cartans.append(np.sort(np.concatenate([members, scal])))
        elems, ids = [], []
        for k, members in enumerate(cartans):
            x = members[~self.is_scalar[members]][0]
            conj = self.conj_all(int(x))
            norm = np.flatnonzero((cartan_of[conj] == k) & ~self.is_scalar)
            elems.append(norm)
            ids.append(np.full(norm.size, k, dtype=np.int64))
        elems, ids = np.concatenate(elems), np.concatenate(ids)
        order = np.argsort(elems, kind="stable")
        elems, ids = elems[order], ids[order]
        ptr = np.searchsorted(elems, np.arange(self.n + 1))
        return cartan_of, cartans, ptr, ids
