"""Abelian-group-valued Mackey functors on the truncated slice categories.

A Mackey functor assigns a free abelian group M(u) to every connected object
u and, to every morphism f: u → v, a restriction matrix R_f: M(v) → M(u) and
a transfer matrix T_f: M(u) → M(v).  Matrices act on column vectors, so a
map M(v) → M(u) has shape (rank u, rank v) and both functorialities read as
literal products: R_{g∘f} = R_f @ R_g and T_{g∘f} = T_g @ T_f.  The axioms
are completed by the double-coset identity: for every cospan f: a → e ← b: g
of connected objects, R_f @ T_g equals the sum over good subsets U of the
fiber product of T_{pU} @ R_{qU}, with pU, qU the two projections of U.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .burnside import BurnsideRing, RingConsistencyError, build_ring
from .epi_cat import SliceMorphism, SliceObject, enumerate_objects, hom_set
from .fin_coprod import good_subsets
from .finset import FinMap
from .finset import compose as compose_maps
from .linalg import Mat
from .span_cat import ConnectedSpan, canonicalize


@lru_cache(maxsize=None)
def _homs(u_tuple: tuple, v_tuple: tuple):
    """The skeleton hom set u → v plus a lookup from value tuples to index."""
    morphisms = tuple(hom_set(SliceObject(u_tuple), SliceObject(v_tuple)))
    return morphisms, {f.map.values: i for i, f in enumerate(morphisms)}


class MackeyData:
    """Ranks plus one restriction and one transfer matrix per skeleton
    morphism of Epi_{d,r}; immutable once built.

    ``restrictions[(u, v, i)]`` is R_f for the i-th morphism f: u → v in
    the deterministic hom-set order, an integer matrix M(v) → M(u) of shape
    (ranks[u], ranks[v]); ``transfers[(u, v, i)]`` is T_f: M(u) → M(v) of
    shape (ranks[v], ranks[u]).
    """

    __slots__ = ("d", "r", "basis", "ranks", "restrictions", "transfers")

    def __init__(self, d: int, r: int, ranks: dict, restrictions: dict, transfers: dict):
        basis = tuple(o.fiber_tuple for o in enumerate_objects(d, r))
        if set(ranks) != set(basis):
            raise ValueError("ranks must be keyed by exactly the basis tuples")
        if any(ranks[u] < 0 for u in basis):
            raise ValueError("ranks must be nonnegative")
        expected = set()
        for u in basis:
            for v in basis:
                morphisms, _ = _homs(u, v)
                for i in range(len(morphisms)):
                    expected.add((u, v, i))
        if set(restrictions) != expected or set(transfers) != expected:
            raise ValueError("need one restriction and one transfer per skeleton morphism")
        for (u, v, _), mat in restrictions.items():
            if (mat.m, mat.n) != (ranks[u], ranks[v]):
                raise ValueError(f"restriction at {(u, v)} has shape {mat.m}x{mat.n}")
        for (u, v, _), mat in transfers.items():
            if (mat.m, mat.n) != (ranks[v], ranks[u]):
                raise ValueError(f"transfer at {(u, v)} has shape {mat.m}x{mat.n}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "ranks", dict(ranks))
        object.__setattr__(self, "restrictions", dict(restrictions))
        object.__setattr__(self, "transfers", dict(transfers))

    def __setattr__(self, name, value):
        raise AttributeError("MackeyData is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MackeyData)
            and (self.d, self.r) == (other.d, other.r)
            and self.ranks == other.ranks
            and self.restrictions == other.restrictions
            and self.transfers == other.transfers
        )

    def __repr__(self):
        ranks = ", ".join(f"{u}:{self.ranks[u]}" for u in self.basis)
        return f"MackeyData(d={self.d}, r={self.r}, ranks {ranks})"

    def restriction(self, f: SliceMorphism) -> Mat:
        u, v = f.source.fiber_tuple, f.target.fiber_tuple
        return self.restrictions[(u, v, _homs(u, v)[1][f.map.values])]

    def transfer(self, f: SliceMorphism) -> Mat:
        u, v = f.source.fiber_tuple, f.target.fiber_tuple
        return self.transfers[(u, v, _homs(u, v)[1][f.map.values])]

    def to_dict(self) -> dict:
        ranks = {",".join(map(str, u)): self.ranks[u] for u in self.basis}
        restrictions: dict[str, list] = {}
        transfers: dict[str, list] = {}
        for u in self.basis:
            for v in self.basis:
                morphisms, _ = _homs(u, v)
                for i in range(len(morphisms)):
                    key = f"{','.join(map(str, u))}|{','.join(map(str, v))}|{i}"
                    restrictions[key] = self.restrictions[(u, v, i)].to_lists()
                    transfers[key] = self.transfers[(u, v, i)].to_lists()
        return {
            "d": self.d,
            "r": self.r,
            "ranks": ranks,
            "restrictions": restrictions,
            "transfers": transfers,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _parse_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def from_dict(data: dict) -> MackeyData:
    d, r = data["d"], data["r"]
    ranks = {_parse_tuple(k): v for k, v in data["ranks"].items()}
    restrictions = {}
    transfers = {}
    for key, rows in data["restrictions"].items():
        u_s, v_s, i_s = key.split("|")
        u, v, i = _parse_tuple(u_s), _parse_tuple(v_s), int(i_s)
        restrictions[(u, v, i)] = Mat(ranks[u], ranks[v], rows)
    for key, rows in data["transfers"].items():
        u_s, v_s, i_s = key.split("|")
        u, v, i = _parse_tuple(u_s), _parse_tuple(v_s), int(i_s)
        transfers[(u, v, i)] = Mat(ranks[v], ranks[u], rows)
    return MackeyData(d, r, ranks, restrictions, transfers)


def from_json(text: str) -> MackeyData:
    return from_dict(json.loads(text))


class MackeyReport:
    """Outcome of check_axioms: counters plus the failures found."""

    __slots__ = ("passed", "identities_checked", "compositions_checked",
                 "cospans_checked", "failures")

    def __init__(self, identities_checked, compositions_checked, cospans_checked, failures):
        object.__setattr__(self, "identities_checked", identities_checked)
        object.__setattr__(self, "compositions_checked", compositions_checked)
        object.__setattr__(self, "cospans_checked", cospans_checked)
        object.__setattr__(self, "failures", tuple(failures))
        object.__setattr__(self, "passed", not failures)

    def __setattr__(self, name, value):
        raise AttributeError("MackeyReport is immutable")

    def __repr__(self):
        verdict = "pass" if self.passed else f"FAIL ({len(self.failures)} violations)"
        return (
            f"MackeyReport({verdict}: {self.identities_checked} identities, "
            f"{self.compositions_checked} compositions, {self.cospans_checked} cospans)"
        )

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "identities_checked": self.identities_checked,
            "compositions_checked": self.compositions_checked,
            "cospans_checked": self.cospans_checked,
            "failures": [dict(f) for f in self.failures],
        }


def check_axioms(m: MackeyData) -> MackeyReport:
    """Functoriality of R and T plus the double-coset identity, exhaustively.

    Identities and all composable pairs of skeleton morphisms are checked as
    literal matrix equations, then every cospan of connected objects is
    tested: R_f @ T_g against the sum over good subsets (in canonical subset
    order) of T_{pU} @ R_{qU}.  On failure the report carries the offending
    cospan and both matrices.
    """
    failures: list[dict] = []
    objs = [SliceObject(u) for u in m.basis]

    identities = 0
    for u in objs:
        ut = u.fiber_tuple
        idx = _homs(ut, ut)[1][FinMap.identity(u.total_size).values]
        eye = Mat.identity(m.ranks[ut])
        if m.restrictions[(ut, ut, idx)] != eye or m.transfers[(ut, ut, idx)] != eye:
            failures.append({"kind": "identity", "object": ut})
        identities += 1

    compositions = 0
    for u in objs:
        for v in objs:
            homs_uv, _ = _homs(u.fiber_tuple, v.fiber_tuple)
            if not homs_uv:
                continue
            for w in objs:
                homs_vw, lookup_uw = _homs(v.fiber_tuple, w.fiber_tuple)[0], _homs(u.fiber_tuple, w.fiber_tuple)[1]
                for i, f in enumerate(homs_uv):
                    for j, g in enumerate(homs_vw):
                        k = lookup_uw[compose_maps(g.map, f.map).values]
                        key_f = (u.fiber_tuple, v.fiber_tuple, i)
                        key_g = (v.fiber_tuple, w.fiber_tuple, j)
                        key_gf = (u.fiber_tuple, w.fiber_tuple, k)
                        if m.restrictions[key_gf] != m.restrictions[key_f] @ m.restrictions[key_g]:
                            failures.append({"kind": "restriction-composition",
                                             "f": (key_f, f.map.values), "g": (key_g, g.map.values)})
                        if m.transfers[key_gf] != m.transfers[key_g] @ m.transfers[key_f]:
                            failures.append({"kind": "transfer-composition",
                                             "f": (key_f, f.map.values), "g": (key_g, g.map.values)})
                        compositions += 1

    cospans = 0
    for e in objs:
        et = e.fiber_tuple
        for a in objs:
            homs_ae = _homs(a.fiber_tuple, et)[0]
            if not homs_ae:
                continue
            for b in objs:
                homs_be = _homs(b.fiber_tuple, et)[0]
                for i, f in enumerate(homs_ae):
                    key_f = (a.fiber_tuple, et, i)
                    for j, g in enumerate(homs_be):
                        lhs = m.restrictions[key_f] @ m.transfers[(b.fiber_tuple, et, j)]
                        rhs = Mat.zero(m.ranks[a.fiber_tuple], m.ranks[b.fiber_tuple])
                        for u_sub in good_subsets(f, g, m.d):
                            wt = u_sub.as_object.fiber_tuple
                            p_idx = _homs(wt, a.fiber_tuple)[1][u_sub.proj_a.map.values]
                            q_idx = _homs(wt, b.fiber_tuple)[1][u_sub.proj_b.map.values]
                            rhs = rhs + (
                                m.transfers[(wt, a.fiber_tuple, p_idx)]
                                @ m.restrictions[(wt, b.fiber_tuple, q_idx)]
                            )
                        if lhs != rhs:
                            failures.append({
                                "kind": "double-coset",
                                "cospan": (a.fiber_tuple, et, b.fiber_tuple),
                                "f": f.map.values,
                                "g": g.map.values,
                                "lhs": lhs.to_lists(),
                                "rhs": rhs.to_lists(),
                            })
                        cospans += 1

    return MackeyReport(identities, compositions, cospans, failures)


def _span_rep_from_key(key, u: SliceObject, v: SliceObject) -> ConnectedSpan:
    apex_tuple, lv, rv = key
    apex = SliceObject(apex_tuple)
    return ConnectedSpan(
        SliceMorphism(apex, u, FinMap(apex.total_size, u.total_size, lv)),
        SliceMorphism(apex, v, FinMap(apex.total_size, v.total_size, rv)),
    )


def _span_basis(d: int, r: int, u: SliceObject, v: SliceObject):
    """Iso classes of connected spans u ← W → v, |W| ≤ d, in a fixed order.

    Returns (representatives, index) where representatives are canonical
    spans sorted by (apex size, apex tuple, leg values) and index maps each
    SpanIsoClass to its position.
    """
    keys = set()
    for w in enumerate_objects(d, r):
        lefts = hom_set(w, u)
        if not lefts:
            continue
        rights = hom_set(w, v)
        for left in lefts:
            for right in rights:
                keys.add(canonicalize(ConnectedSpan(left, right)))
    ordered = sorted(keys, key=lambda cls: (
        (sum(cls.components[0][0]),) + cls.components[0][0],
        cls.components[0][1],
        cls.components[0][2],
    ))
    reps = [_span_rep_from_key(cls.components[0], u, v) for cls in ordered]
    return reps, {cls: i for i, cls in enumerate(ordered)}


def representable(d: int, r: int, v: SliceObject) -> MackeyData:
    """The Mackey functor represented by spans into v.

    M(u) is free on iso classes of connected spans u ← W → v; restriction
    along f: u′ → u pulls the left leg back along f (one summand per good
    subset), transfer along f postcomposes the left leg with f.
    """
    if not isinstance(v, SliceObject):
        v = SliceObject(v)
    objs = enumerate_objects(d, r)
    if v.fiber_tuple not in {o.fiber_tuple for o in objs}:
        raise ValueError(f"{v.fiber_tuple} is not an object at truncation {d}")
    bases = {}
    indexes = {}
    for u in objs:
        reps, index = _span_basis(d, r, u, v)
        bases[u.fiber_tuple] = reps
        indexes[u.fiber_tuple] = index
    ranks = {u: len(reps) for u, reps in bases.items()}

    restrictions: dict[tuple, Mat] = {}
    transfers: dict[tuple, Mat] = {}
    for a in objs:
        at = a.fiber_tuple
        for b in objs:
            bt = b.fiber_tuple
            morphisms, _ = _homs(at, bt)
            for i, f in enumerate(morphisms):
                rows = [[0] * ranks[bt] for _ in range(ranks[at])]
                for j, span in enumerate(bases[bt]):
                    for u_sub in good_subsets(f, span.left, d):
                        comp = ConnectedSpan(
                            u_sub.proj_a,
                            SliceMorphism(
                                u_sub.as_object, v,
                                compose_maps(span.right.map, u_sub.proj_b.map),
                            ),
                        )
                        rows[indexes[at][canonicalize(comp)]][j] += 1
                restrictions[(at, bt, i)] = Mat(ranks[at], ranks[bt], rows)

                rows = [[0] * ranks[at] for _ in range(ranks[bt])]
                for j, span in enumerate(bases[at]):
                    comp = ConnectedSpan(
                        SliceMorphism(span.apex, b, compose_maps(f.map, span.left.map)),
                        span.right,
                    )
                    rows[indexes[bt][canonicalize(comp)]][j] += 1
                transfers[(at, bt, i)] = Mat(ranks[bt], ranks[at], rows)

    return MackeyData(d, r, ranks, restrictions, transfers)


def restrict_to_cosieve(m: MackeyData, b: int) -> MackeyData:
    """Index-restrict a Mackey functor to the objects of total size ≤ b.

    Values and matrices are inherited unchanged; only the index category
    shrinks.  Note that the double-coset identity at the smaller truncation
    uses fewer good subsets, so the output need not pass check_axioms when
    b < d — run the checker to find out.
    """
    if not (m.r <= b <= m.d):
        raise ValueError(f"bound must satisfy r <= b <= d, got {b}")
    keep = {u for u in m.basis if sum(u) <= b}
    ranks = {u: m.ranks[u] for u in keep}
    restrictions = {k: v for k, v in m.restrictions.items() if k[0] in keep and k[1] in keep}
    transfers = {k: v for k, v in m.transfers.items() if k[0] in keep and k[1] in keep}
    return MackeyData(b, m.r, ranks, restrictions, transfers)


def vanishing_locus(m: MackeyData) -> set[tuple[int, ...]]:
    """The basis objects on which the functor vanishes (rank 0)."""
    return {u for u in m.basis if m.ranks[u] == 0}


def endomorphism_ring_of_unit(d: int, r: int) -> BurnsideRing:
    """The natural endomorphisms of the representable at the final object.

    A basis span final ← w → final acts on M(final) by the matrix
    T_π @ R_π for the structure map π: w → final of the representable at
    the final object; the resulting structure constants are cross-checked
    against direct span composition and against build_ring, and any
    disagreement raises RingConsistencyError.
    """
    from .span_cat import Span, compose as span_compose

    reference = build_ring(d, r)
    final = SliceObject((1,) * r)
    objs = enumerate_objects(d, r)
    basis_tuples = [o.fiber_tuple for o in objs]
    pos = {u: i for i, u in enumerate(basis_tuples)}

    bases = {}
    indexes = {}
    for u in objs:
        reps, index = _span_basis(d, r, u, final)
        bases[u.fiber_tuple] = reps
        indexes[u.fiber_tuple] = index

    # M(final) is free on the spans final ← x → final, one per basis object;
    # map that basis onto the ring basis order.
    final_to_ring = {}
    for i, span in enumerate(bases[final.fiber_tuple]):
        final_to_ring[i] = pos[span.apex.fiber_tuple]
    if sorted(final_to_ring.values()) != list(range(len(basis_tuples))):
        raise RingConsistencyError("span basis at the final object does not match the ring basis")

    n = len(basis_tuples)
    sc = [[None] * n for _ in range(n)]
    for w in objs:
        wt = w.fiber_tuple
        pi = hom_set(w, final)[0]
        nk = len(bases[wt])
        # R_π: M(final) → M(w)
        rows = [[0] * n for _ in range(nk)]
        for j, span in enumerate(bases[final.fiber_tuple]):
            for u_sub in good_subsets(pi, span.left, d):
                comp = ConnectedSpan(
                    u_sub.proj_a,
                    SliceMorphism(u_sub.as_object, final,
                                  compose_maps(span.right.map, u_sub.proj_b.map)),
                )
                rows[indexes[wt][canonicalize(comp)]][final_to_ring[j]] += 1
        r_pi = Mat(nk, n, rows)
        # T_π: M(w) → M(final)
        rows = [[0] * nk for _ in range(n)]
        for j, span in enumerate(bases[wt]):
            comp = ConnectedSpan(
                SliceMorphism(span.apex, final, compose_maps(pi.map, span.left.map)),
                span.right,
            )
            rows[final_to_ring[indexes[final.fiber_tuple][canonicalize(comp)]]][j] += 1
        t_pi = Mat(n, nk, rows)

        eta = t_pi @ r_pi
        wi = pos[wt]
        for xj in range(n):
            sc[wi][xj] = {
                yi: eta.rows[yi][xj] for yi in range(n) if eta.rows[yi][xj]
            }

    # cross-check against direct span composition
    unique_span = {
        u.fiber_tuple: Span.connected(
            ConnectedSpan(hom_set(u, final)[0], hom_set(u, final)[0]))
        for u in objs
    }
    class_to_index = {}
    for u in objs:
        key = canonicalize(unique_span[u.fiber_tuple])
        class_to_index[key] = pos[u.fiber_tuple]
    for wi, wt in enumerate(basis_tuples):
        for xj, xt in enumerate(basis_tuples):
            composed = span_compose(unique_span[wt], unique_span[xt], d)
            table = {class_to_index[key]: mult for key, mult in composed.items()}
            if table != sc[wi][xj]:
                raise RingConsistencyError(
                    f"span composition disagrees with endomorphism matrices at "
                    f"{wt}·{xt}: {table} vs {sc[wi][xj]}"
                )

    if sc != reference.sc:
        raise RingConsistencyError(
            "endomorphism ring of the unit disagrees with the structure constants"
        )
    return BurnsideRing(d, r, [SliceObject(u) for u in basis_tuples], sc)
