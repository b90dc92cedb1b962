"""The kernel space of a monomial basis and its defect completion.

A symmetric matrix S with Psi(z) S Psi(z)^T identically zero redistributes
Gram weight among monomial pairs sharing a product. This module enumerates
a canonical basis of that space (one element per spanning-tree edge of the
per-product elementary-transformation graph, computed on the homogenized
basis so that the auxiliary variable provides the connecting moves) and
extends a single annihilating matrix to a full pencil (S_0, S_1, ..., S_d)
with (S_0 + z_1 S_1 + ... + z_d S_d) Psi(z)^T identically zero.

The completion construction is sound but not complete: it fails honestly
(with an internal-consistency error) when the defect assigns nonzero weight
to a kernel element whose transformation moves exponent into or out of the
completion axis itself, a configuration where no per-element block
completion exists. Spanning trees therefore prefer axis-avoiding edges;
whether nonzero weight lands on an axis-coupled bridge is independent of
the tree choice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CapacityError,
    InternalConsistencyError,
    PreconditionError,
    StructuralError,
)
from .exactlinalg import SymMatrix, solve_affine, sparse_rank
from .polarize import SymmetricPencil, pencil_row_action, quadratic_form_polynomial
from .polycore import MonomialBasis, basis_key, build_basis


@dataclass(frozen=True)
class PairClass:
    """All unordered basis-index pairs whose monomial product is z^beta."""

    beta: tuple
    pairs: tuple  # (i, j) with i <= j


@dataclass(frozen=True)
class KernelElement:
    """One spanning-tree edge of a product class, as an annihilating matrix.

    ``move`` is the elementary transformation (r, l) in 1-based homogenized
    variable positions (the auxiliary variable is position d+1): the member
    ``u_index`` of ``plus_pair`` maps to a member of ``minus_pair`` under
    exponent +1 at r, -1 at l. Triple kind means one pair is a squared
    monomial (it carries the +2 diagonal entry and is stored as plus_pair
    with a normalized move r < l); quad kind has four distinct monomials,
    +1 on the tree-parent pair and -1 on the child.
    """

    matrix: SymMatrix
    beta: tuple
    kind: str
    support: tuple
    move: tuple
    plus_pair: tuple
    minus_pair: tuple
    u_index: int


def pairs_for_beta(beta, basis):
    """Enumerate the unordered pairs of basis monomials multiplying to z^beta."""
    beta = tuple(beta)
    if len(beta) != basis.nvars or any(not isinstance(e, int) or e < 0 for e in beta):
        raise StructuralError(f"bad product exponents {beta}")
    pairs = []
    for i, mono in enumerate(basis.monomials):
        rest = tuple(b - m for b, m in zip(beta, mono))
        if any(e < 0 for e in rest) or rest not in basis:
            continue
        j = basis.index_of(rest)
        if j >= i:
            pairs.append((i, j))
    return PairClass(beta, tuple(pairs))


def elementary_transform(exps, r, l, caps):
    """Shift one exponent unit from variable l to variable r (1-based)."""
    exps = tuple(exps)
    caps = tuple(caps)
    if not (1 <= r <= len(exps) and 1 <= l <= len(exps)) or r == l:
        raise StructuralError(f"bad transformation variables ({r}, {l})")
    if exps[r - 1] >= caps[r - 1] or exps[l - 1] == 0:
        raise PreconditionError(
            f"transformation ({r} <- {l}) is inapplicable to {exps} under caps {caps}"
        )
    out = list(exps)
    out[r - 1] += 1
    out[l - 1] -= 1
    return tuple(out)


def _hom(exps, n):
    return tuple(exps) + (n - sum(exps),)


def _shift(exps, inc, dec):
    """exps + e_inc - e_dec with 1-based positions, or None off the lattice."""
    out = list(exps)
    out[inc - 1] += 1
    out[dec - 1] -= 1
    if out[dec - 1] < 0:
        return None
    return tuple(out)


def _spanning_elements(basis, avoid_axis=None):
    """Kernel basis via per-class spanning trees on the homogenized basis.

    With ``avoid_axis`` set (1-based variable position in the homogenized
    order), edges whose move touches that variable are used only as bridges
    between components of the axis-avoiding subgraph.
    """
    d = basis.nvars
    n = basis.total_cap
    hom = [_hom(m, n) for m in basis.monomials]
    hom_index = {h: i for i, h in enumerate(hom)}
    nhom = d + 1

    classes = {}
    for i in range(len(hom)):
        for j in range(i, len(hom)):
            prod = tuple(a + b for a, b in zip(hom[i], hom[j]))
            classes.setdefault(prod, []).append((i, j))

    def transforms(pair):
        i, j = pair
        members = ((i, j),) if i == j else ((i, j), (j, i))
        for u_idx, other_idx in members:
            u, other = hom[u_idx], hom[other_idx]
            for l in range(1, nhom + 1):
                if u[l - 1] == 0:
                    continue
                for r in range(1, nhom + 1):
                    if r == l:
                        continue
                    u2 = _shift(u, r, l)
                    other2 = _shift(other, l, r)
                    if (
                        u2 is None
                        or other2 is None
                        or u2 not in hom_index
                        or other2 not in hom_index
                    ):
                        continue
                    neighbor = tuple(sorted((hom_index[u2], hom_index[other2])))
                    if neighbor == pair:
                        continue
                    bad = avoid_axis is not None and avoid_axis in (r, l)
                    yield neighbor, u_idx, (r, l), bad

    elements = []
    for prod in sorted(classes, key=basis_key):
        pairs = sorted(classes[prod])
        if len(pairs) < 2:
            continue
        edges = []
        component = {}
        for root in pairs:  # axis-avoiding spanning forest, BFS per component
            if root in component:
                continue
            component[root] = root
            queue = deque([root])
            while queue:
                node = queue.popleft()
                for neighbor, u_idx, move, bad in transforms(node):
                    if bad or neighbor in component:
                        continue
                    component[neighbor] = root
                    edges.append((node, neighbor, u_idx, move))
                    queue.append(neighbor)
        roots = {component[p] for p in pairs}
        if len(roots) > 1:
            if avoid_axis is None:
                raise InternalConsistencyError(
                    f"product class {prod} is not transformation-connected"
                )
            leader = {r: r for r in roots}

            def find(r):
                while leader[r] != r:
                    leader[r] = leader[leader[r]]
                    r = leader[r]
                return r

            for node in pairs:  # bridge components with axis-coupled edges
                for neighbor, u_idx, move, bad in transforms(node):
                    if not bad:
                        continue
                    a, b = find(component[node]), find(component[neighbor])
                    if a != b:
                        leader[b] = a
                        edges.append((node, neighbor, u_idx, move))
            if len({find(r) for r in roots}) > 1:
                raise InternalConsistencyError(
                    f"product class {prod} is not transformation-connected"
                )

        beta = prod[:d]
        for parent, child, u_idx, move in edges:
            elements.append(
                _edge_element(parent, child, u_idx, move, beta, hom, basis)
            )
    return elements


def _edge_element(parent, child, u_idx, move, beta, hom, basis):
    N = len(basis)
    matrix = SymMatrix(N)
    squared = parent if parent[0] == parent[1] else (
        child if child[0] == child[1] else None
    )
    if squared is not None:
        mid = squared[0]
        outer = child if squared is parent else parent
        r, l = min(move), max(move)
        t1 = _shift(hom[mid], r, l)
        if t1 not in (hom[outer[0]], hom[outer[1]]):
            raise InternalConsistencyError("triple element move normalization failed")
        matrix.set(mid, mid, Fraction(2))
        matrix.set(outer[0], outer[1], Fraction(-1))
        return KernelElement(
            matrix=matrix,
            beta=beta,
            kind="triple",
            support=tuple(sorted({mid, outer[0], outer[1]})),
            move=(r, l),
            plus_pair=(mid, mid),
            minus_pair=outer,
            u_index=mid,
        )
    support = tuple(sorted({parent[0], parent[1], child[0], child[1]}))
    if len(support) != 4:
        raise InternalConsistencyError(
            "quad element with coincident monomials; distinct pairs must not share"
        )
    matrix.set(parent[0], parent[1], Fraction(1))
    matrix.set(child[0], child[1], Fraction(-1))
    return KernelElement(
        matrix=matrix,
        beta=beta,
        kind="quad",
        support=support,
        move=move,
        plus_pair=parent,
        minus_pair=child,
        u_index=u_idx,
    )


def kernel_basis(basis):
    """Canonical basis of {S symmetric : Psi S Psi^T = 0}, one element per
    spanning-tree edge; count per product class is (number of pairs) - 1."""
    return _spanning_elements(basis, avoid_axis=None)


def kernel_dimension_oracle(basis):
    """Nullity of the direct coefficient-matching system, via independent
    sparse Gaussian elimination on the inhomogeneous basis."""
    N = len(basis)
    if N > 60:
        raise CapacityError(f"oracle limited to 60 basis monomials, got {N}")
    column = {}
    for i in range(N):
        for j in range(i, N):
            column[(i, j)] = len(column)
    rows = {}
    for (i, j), col in column.items():
        prod = tuple(a + b for a, b in zip(basis.monomials[i], basis.monomials[j]))
        weight = Fraction(1) if i == j else Fraction(2)
        rows.setdefault(prod, {})[col] = weight
    return len(column) - sparse_rank(list(rows.values()))


class _SpanError(Exception):
    """The target matrix is not in the span of the supplied elements."""


def _decompose_over_elements(S, elements, basis):
    """Unique coefficients of S over per-class kernel elements."""
    by_beta = {}
    for idx, el in enumerate(elements):
        by_beta.setdefault(el.beta, []).append(idx)
    target_by_beta = {}
    for (i, j), value in S.entries():
        beta = tuple(a + b for a, b in zip(basis.monomials[i], basis.monomials[j]))
        target_by_beta.setdefault(beta, {})[(i, j)] = value

    lam = [Fraction(0)] * len(elements)
    for beta in sorted(set(by_beta) | set(target_by_beta), key=basis_key):
        indices = by_beta.get(beta, [])
        target = target_by_beta.get(beta, {})
        if not indices:
            if any(target.values()):
                raise _SpanError(
                    f"weight outside the kernel span at product {beta}"
                )
            continue
        pairs = sorted(
            {p for idx in indices for p, _ in elements[idx].matrix.entries()}
            | set(target)
        )
        rows = [
            [elements[idx].matrix.get(*pair) for idx in indices] for pair in pairs
        ]
        rhs = [target.get(pair, Fraction(0)) for pair in pairs]
        solution = solve_affine(rows, rhs)
        if solution is None:
            raise _SpanError(
                f"not decomposable over the kernel elements at product {beta}"
            )
        particular, homogeneous = solution
        if homogeneous:
            raise InternalConsistencyError(
                "kernel elements of a single product class are dependent"
            )
        for idx, value in zip(indices, particular):
            lam[idx] = value
    return lam


def defect_completion(S_last, basis, axis):
    """Extend one annihilating matrix to a pencil annihilating Psi.

    Returns (S_0, ..., S_d) with S_axis = S_last and
    (S_0 + z_1 S_1 + ... + z_d S_d) Psi(z)^T = 0 exactly. Preconditions: S_last
    annihilates Psi as a quadratic form, and every row whose monomial attains
    the maximal axis degree present in the basis is zero (equivalently,
    S_last kills the top axis-derivative of Psi^T).
    """
    d = basis.nvars
    N = len(basis)
    if not isinstance(S_last, SymMatrix) or S_last.size != N:
        raise StructuralError("defect matrix size does not match the basis")
    if not 1 <= axis <= d:
        raise StructuralError(f"axis {axis} out of range 1..{d}")

    residual = quadratic_form_polynomial(S_last, basis)
    if not residual.is_zero():
        raise PreconditionError(
            "gram annihilation hypothesis fails: Psi S Psi^T has leading term "
            f"{residual.leading_term()}"
        )
    attained = max(m[axis - 1] for m in basis.monomials)
    top = {i for i, m in enumerate(basis.monomials) if m[axis - 1] == attained}
    for (i, j), value in S_last.entries():
        if value and (i in top or j in top):
            raise PreconditionError(
                "derivative annihilation hypothesis fails: the defect touches "
                f"monomial pair ({basis.monomials[i]}, {basis.monomials[j]}) at the "
                f"top axis degree {attained}"
            )

    matrices = [SymMatrix(N) for _ in range(d + 1)]
    matrices[axis] = S_last.copy()
    pencil = SymmetricPencil(basis, tuple(matrices))
    if S_last.is_zero():
        return pencil

    sub_caps = list(basis.var_caps)
    sub_caps[axis - 1] = attained - 1
    sub_basis = build_basis(basis.total_cap, tuple(sub_caps))
    to_full = [basis.index_of(m) for m in sub_basis.monomials]

    # Only transformations that avoid the axis variable admit the block
    # completion; defects outside their span have no completion at all
    # (verified against the exact solution space of the pencil identity).
    sub_elements = [
        el for el in _spanning_elements(sub_basis, avoid_axis=axis) if axis not in el.move
    ]
    elements = []
    for el in sub_elements:
        matrix = SymMatrix(N)
        for (i, j), value in el.matrix.entries():
            matrix.set(to_full[i], to_full[j], value)
        elements.append(
            KernelElement(
                matrix=matrix,
                beta=el.beta,
                kind=el.kind,
                support=tuple(to_full[i] for i in el.support),
                move=el.move,
                plus_pair=tuple(to_full[i] for i in el.plus_pair),
                minus_pair=tuple(to_full[i] for i in el.minus_pair),
                u_index=to_full[el.u_index],
            )
        )

    try:
        lam = _decompose_over_elements(S_last, elements, basis)
    except _SpanError as exc:
        raise PreconditionError(
            "the defect admits no pencil completion over this basis: "
            f"{exc} (only kernel weight on transformations avoiding variable "
            f"z{axis} is completable)"
        ) from None
    check = SymMatrix(N)
    for value, el in zip(lam, elements):
        if value:
            check = check + el.matrix.scale(value)
    if check != S_last:
        raise InternalConsistencyError("kernel decomposition residual is nonzero")

    n = basis.total_cap
    hom = [_hom(m, n) for m in basis.monomials]
    hom_index = {h: i for i, h in enumerate(hom)}
    aux = d + 1

    def bucket(var):
        return matrices[0] if var == aux else matrices[var]

    for value, el in zip(lam, elements):
        if not value:
            continue
        r, l = el.move
        assert axis not in (r, l)  # elements were filtered above
        u = el.u_index
        p_other = el.plus_pair[0] if el.plus_pair[1] == u else el.plus_pair[1]
        v_h = _shift(hom[u], r, l)
        if v_h is None or v_h not in hom_index:
            raise InternalConsistencyError("kernel element move left the basis")
        v = hom_index[v_h]
        if v not in el.minus_pair:
            raise InternalConsistencyError("kernel element pairs are inconsistent")
        c_other = el.minus_pair[0] if el.minus_pair[1] == v else el.minus_pair[1]
        q2_h = _shift(hom[u], axis, l)
        q1_h = _shift(hom[p_other], axis, r)
        if q2_h not in hom_index or q1_h not in hom_index:
            raise InternalConsistencyError(
                "completion support monomial escaped the basis"
            )
        q2, q1 = hom_index[q2_h], hom_index[q1_h]

        def place(target, a, b, weight):
            # a symmetric pair entry folded onto the diagonal doubles up
            target.add(a, b, 2 * weight if a == b else weight)

        place(bucket(l), q2, p_other, -value)
        place(bucket(l), q1, v, value)
        place(bucket(r), q2, c_other, value)
        place(bucket(r), q1, u, -value)

    pencil = SymmetricPencil(basis, tuple(matrices))
    for i, row in enumerate(pencil_row_action(pencil.matrices, basis)):
        if not row.is_zero():
            raise InternalConsistencyError(
                f"annihilator completion identity fails at row {i}: {row}"
            )
    return pencil
