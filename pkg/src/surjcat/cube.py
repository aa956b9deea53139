"""Subdivided-cube posets and exact limit checks for rational diagrams.

Two grid shapes are supported.  CubePoset(d, r) is the r-fold product of
the chain {1 < … < m}, m = d − r + 1, with arrows pointing from larger
tuples to smaller ones — the terminal corner is (1, …, 1) and each covering
arrow decrements one coordinate.  SimplexProduct(bounds) is the product of
chains {0 < … < kᵢ} with arrows pointing the other way, toward the top
corner.  In both cases we speak of steps "toward the terminal corner"; the
two threshold sub-posets of interest — TruncatedSub (coordinate sum ≤ d
inside a cube) and BnSub (coordinate sum ≥ n inside a bounded grid) — are
closed under such steps.

A VectDiagram assigns an exact rational vector space to every element and a
matrix to every covering arrow; all square faces must commute, which is
validated on construction.  A diagram is extended from a threshold
sub-poset S exactly when, at every element outside S, the unit cube spanned
by the steps toward the terminal corner is a limit diagram; pointwise_rke
is the independent oracle, computing the extension value at each outside
element as the kernel of the difference map over its comma poset into S.
"""

from __future__ import annotations

import itertools
import json
import random
from fractions import Fraction

from .epi_cat import SliceObject, enumerate_objects
from .finset import FinMap
from .linalg import Mat, block_matrix, is_invertible, nullspace, solve


class CubePoset:
    """The grid {1, …, m}^r, m = d − r + 1, arrows from larger to smaller."""

    __slots__ = ("d", "r", "m", "elements", "index", "terminal")

    def __init__(self, d: int, r: int):
        if not 1 <= r <= d:
            raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
        m = d - r + 1
        elements = tuple(itertools.product(range(1, m + 1), repeat=r))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(elements)})
        object.__setattr__(self, "terminal", (1,) * r)

    def __setattr__(self, name, value):
        raise AttributeError("CubePoset is immutable")

    def __eq__(self, other):
        return isinstance(other, CubePoset) and (self.d, self.r) == (other.d, other.r)

    def __hash__(self):
        return hash(("cube", self.d, self.r))

    def __repr__(self):
        return f"CubePoset(d={self.d}, r={self.r})"

    def available(self, a) -> tuple[int, ...]:
        """Directions (0-based) in which a can step toward the terminal corner."""
        return tuple(j for j in range(self.r) if a[j] > 1)

    def step(self, a, j):
        return a[:j] + (a[j] - 1,) + a[j + 1:]

    def reaches(self, a, b) -> bool:
        """True when b lies toward the terminal corner from a (arrow a → b)."""
        return all(x >= y for x, y in zip(a, b))


class SimplexProduct:
    """The grid Π {0, …, kᵢ}, arrows ascending toward the top corner."""

    __slots__ = ("bounds", "r", "elements", "index", "terminal")

    def __init__(self, bounds):
        bounds = tuple(bounds)
        if not bounds or any(k < 0 for k in bounds):
            raise ValueError(f"bounds must be nonnegative and nonempty, got {bounds}")
        elements = tuple(itertools.product(*(range(0, k + 1) for k in bounds)))
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "r", len(bounds))
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(elements)})
        object.__setattr__(self, "terminal", bounds)

    def __setattr__(self, name, value):
        raise AttributeError("SimplexProduct is immutable")

    def __eq__(self, other):
        return isinstance(other, SimplexProduct) and self.bounds == other.bounds

    def __hash__(self):
        return hash(("grid", self.bounds))

    def __repr__(self):
        return f"SimplexProduct(bounds={self.bounds})"

    def available(self, a) -> tuple[int, ...]:
        return tuple(j for j in range(self.r) if a[j] < self.bounds[j])

    def step(self, a, j):
        return a[:j] + (a[j] + 1,) + a[j + 1:]

    def reaches(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))


class TruncatedSub:
    """The sub-poset {a : Σaᵢ ≤ d} of a CubePoset (contains the terminal corner)."""

    __slots__ = ("ambient", "elements", "index", "terminal")

    def __init__(self, ambient: CubePoset):
        elements = tuple(a for a in ambient.elements if sum(a) <= ambient.d)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(elements)})
        object.__setattr__(self, "terminal", ambient.terminal)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSub is immutable")

    def __eq__(self, other):
        return isinstance(other, TruncatedSub) and self.ambient == other.ambient

    def __hash__(self):
        return hash(("truncated", self.ambient))

    def __repr__(self):
        return f"TruncatedSub({self.ambient!r})"

    @property
    def r(self):
        return self.ambient.r

    def contains(self, a) -> bool:
        return sum(a) <= self.ambient.d

    def available(self, a):
        return self.ambient.available(a)

    def step(self, a, j):
        return self.ambient.step(a, j)

    def reaches(self, a, b):
        return self.ambient.reaches(a, b)


class BnSub:
    """The sub-poset {a : Σaᵢ ≥ n} of a bounded grid; n = 0 is the whole grid."""

    __slots__ = ("ambient", "n", "elements", "index", "terminal")

    def __init__(self, bounds, n: int):
        ambient = SimplexProduct(bounds)
        if n < 0:
            raise ValueError("threshold must be nonnegative")
        elements = tuple(a for a in ambient.elements if sum(a) >= n)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(elements)})
        object.__setattr__(self, "terminal", ambient.terminal)

    def __setattr__(self, name, value):
        raise AttributeError("BnSub is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BnSub)
            and self.ambient == other.ambient
            and self.n == other.n
        )

    def __hash__(self):
        return hash(("bn", self.ambient, self.n))

    def __repr__(self):
        return f"BnSub(bounds={self.ambient.bounds}, n={self.n})"

    @property
    def r(self):
        return self.ambient.r

    def contains(self, a) -> bool:
        return sum(a) >= self.n

    def available(self, a):
        return self.ambient.available(a)

    def step(self, a, j):
        return self.ambient.step(a, j)

    def reaches(self, a, b):
        return self.ambient.reaches(a, b)


_SUB_SHAPES = (TruncatedSub, BnSub)
_FULL_SHAPES = (CubePoset, SimplexProduct)


class VectDiagram:
    """Exact rational vector spaces on a grid poset, matrices on its arrows.

    ``dims[a]`` is the dimension at a; ``arrows[(a, j)]`` is the matrix of
    the covering arrow from a one step toward the terminal corner in
    direction j, of shape (dim target, dim source).  All square faces are
    checked to commute on construction, so composites along any path agree.
    """

    __slots__ = ("poset", "dims", "arrows")

    def __init__(self, poset, dims: dict, arrows: dict):
        expected_arrows = {
            (a, j) for a in poset.elements for j in poset.available(a)
        }
        if set(dims) != set(poset.elements):
            raise ValueError("need exactly one dimension per element")
        if any(dims[a] < 0 for a in poset.elements):
            raise ValueError("dimensions must be nonnegative")
        if set(arrows) != expected_arrows:
            raise ValueError("need exactly one matrix per covering arrow")
        for (a, j), mat in arrows.items():
            tgt = poset.step(a, j)
            if (mat.m, mat.n) != (dims[tgt], dims[a]):
                raise ValueError(
                    f"arrow {a}->{tgt} has shape {mat.m}x{mat.n}, "
                    f"wanted {dims[tgt]}x{dims[a]}"
                )
        for a in poset.elements:
            av = poset.available(a)
            for x, j1 in enumerate(av):
                for j2 in av[x + 1:]:
                    b1, b2 = poset.step(a, j1), poset.step(a, j2)
                    one = arrows[(b1, j2)] @ arrows[(a, j1)]
                    two = arrows[(b2, j1)] @ arrows[(a, j2)]
                    if one != two:
                        raise ValueError(f"square at {a} (directions {j1},{j2}) does not commute")
        object.__setattr__(self, "poset", poset)
        object.__setattr__(self, "dims", dict(dims))
        object.__setattr__(self, "arrows", dict(arrows))

    def __setattr__(self, name, value):
        raise AttributeError("VectDiagram is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, VectDiagram)
            and self.poset == other.poset
            and self.dims == other.dims
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"VectDiagram({self.poset!r}, dims={self.dims})"

    def dim(self, a) -> int:
        return self.dims[a]

    def arrow(self, a, j) -> Mat:
        return self.arrows[(a, j)]

    def matrix(self, a, b) -> Mat:
        """The composite along any path from a toward the terminal corner to b."""
        if not self.poset.reaches(a, b):
            raise ValueError(f"no path from {a} to {b}")
        cur = Mat.identity(self.dims[a])
        x = a
        for j in range(len(a)):
            while x[j] != b[j]:
                cur = self.arrows[(x, j)] @ cur
                x = self.poset.step(x, j)
        return cur


def constant_diagram(poset, dim: int) -> VectDiagram:
    """All values of one dimension, all arrows the identity."""
    eye = Mat.identity(dim)
    dims = {a: dim for a in poset.elements}
    arrows = {(a, j): eye for a in poset.elements for j in poset.available(a)}
    return VectDiagram(poset, dims, arrows)


def _limit_kernel(diagram: VectDiagram, objects) -> tuple[Mat, dict]:
    """Kernel of the difference map over the covering arrows among objects.

    Returns (K, offsets): K's columns are a basis of the limit inside the
    direct sum of the object values, and offsets[b] is the starting row of
    b's block in that direct sum.
    """
    objects = list(objects)
    obj_set = set(objects)
    pos = {b: i for i, b in enumerate(objects)}
    col_dims = [diagram.dims[b] for b in objects]
    offsets = {}
    run = 0
    for b, w in zip(objects, col_dims):
        offsets[b] = run
        run += w
    arrows = []
    for b in objects:
        for j in diagram.poset.available(b):
            c = diagram.poset.step(b, j)
            if c in obj_set:
                arrows.append((b, j, c))
    blocks = {}
    row_dims = []
    for i, (b, j, c) in enumerate(arrows):
        row_dims.append(diagram.dims[c])
        blocks[(i, pos[c])] = Mat.identity(diagram.dims[c])
        blocks[(i, pos[b])] = diagram.arrows[(b, j)].scale(-1)
    if arrows:
        diff = block_matrix(blocks, row_dims, col_dims)
    else:
        diff = Mat(0, sum(col_dims), [])
    return nullspace(diff), offsets


def unit_cube_is_limit(diagram: VectDiagram, a) -> bool:
    """Whether the unit cube at a (steps toward the terminal corner along
    all available directions) is a limit diagram: the comparison from the
    value at a to the exact limit of the punctured cube is invertible."""
    poset = diagram.poset
    dirs = poset.available(a)
    if not dirs:
        return diagram.dims[a] == 0
    corners = []
    for mask in range(1, 1 << len(dirs)):
        v = a
        for x, j in enumerate(dirs):
            if mask >> x & 1:
                v = poset.step(v, j)
        corners.append(v)
    corners = sorted(set(corners))
    kernel, offsets = _limit_kernel(diagram, corners)
    cone_blocks = [diagram.matrix(a, v) for v in corners]
    cone = Mat(
        sum(m.m for m in cone_blocks),
        diagram.dims[a],
        [row for m in cone_blocks for row in m.rows],
    )
    comparison = solve(kernel, cone)
    return comparison is not None and is_invertible(comparison)


def _check_sub(diagram: VectDiagram, sub) -> None:
    if not isinstance(sub, _SUB_SHAPES):
        raise ValueError(f"unsupported sub-poset shape: {type(sub).__name__}")
    if diagram.poset != sub.ambient:
        raise ValueError("sub-poset does not sit inside the diagram's poset")


def failing_cubes(diagram: VectDiagram, sub) -> tuple:
    """Elements outside the sub-poset whose unit cube is not a limit."""
    _check_sub(diagram, sub)
    return tuple(
        a for a in diagram.poset.elements
        if not sub.contains(a) and not unit_cube_is_limit(diagram, a)
    )


def is_rke_from(diagram: VectDiagram, sub) -> bool:
    """Whether the diagram is extended from the sub-poset: every unit cube
    beyond the threshold is a limit diagram."""
    _check_sub(diagram, sub)
    return all(
        unit_cube_is_limit(diagram, a)
        for a in diagram.poset.elements
        if not sub.contains(a)
    )


def restrict_diagram(diagram: VectDiagram, sub) -> VectDiagram:
    """The diagram's values and arrows on the sub-poset only."""
    _check_sub(diagram, sub)
    dims = {a: diagram.dims[a] for a in sub.elements}
    arrows = {
        (a, j): diagram.arrows[(a, j)]
        for a in sub.elements
        for j in sub.available(a)
    }
    return VectDiagram(sub, dims, arrows)


def _extend(restricted: VectDiagram):
    """Extension data: (full diagram, kernel bases, comma objects)."""
    sub = restricted.poset
    amb = sub.ambient
    dims = {a: restricted.dims[a] for a in sub.elements}
    arrows = dict(restricted.arrows)
    kernels = {}
    commas = {}
    for a in amb.elements:
        if sub.contains(a):
            continue
        comma = [b for b in sub.elements if amb.reaches(a, b)]
        kernel, offsets = _limit_kernel(restricted, comma)
        kernels[a] = kernel
        commas[a] = (comma, offsets)
        dims[a] = kernel.n
    for a in amb.elements:
        if sub.contains(a):
            continue
        kernel = kernels[a]
        comma, offsets = commas[a]
        for j in amb.available(a):
            c = amb.step(a, j)
            if sub.contains(c):
                start = offsets[c]
                arrows[(a, j)] = kernel.row_slice(start, start + dims[c])
            else:
                c_comma = commas[c][0]
                rows = []
                for b in c_comma:
                    start = offsets[b]
                    rows.extend(kernel.rows[start:start + restricted.dims[b]])
                proj = Mat(len(rows), kernel.n, rows)
                induced = solve(kernels[c], proj)
                if induced is None:
                    raise RuntimeError("restricted kernel family is not compatible")
                arrows[(a, j)] = induced
    return VectDiagram(amb, dims, arrows), kernels, commas


def pointwise_rke(restricted: VectDiagram) -> VectDiagram:
    """Extend a diagram on a threshold sub-poset to the full grid by the
    pointwise formula: the value at an outside element is the exact limit
    over its comma poset into the sub-poset, computed as the kernel of the
    difference map, with the induced matrices solved for exactly."""
    if isinstance(restricted.poset, _FULL_SHAPES):
        return restricted
    if not isinstance(restricted.poset, _SUB_SHAPES):
        raise ValueError(f"unsupported poset shape: {type(restricted.poset).__name__}")
    return _extend(restricted)[0]


def agrees_with_extension(diagram: VectDiagram, sub) -> bool:
    """Whether the diagram equals the pointwise extension of its own
    restriction, up to the canonical comparison isomorphisms of kernels."""
    _check_sub(diagram, sub)
    restricted = restrict_diagram(diagram, sub)
    _, kernels, commas = _extend(restricted)
    for a in diagram.poset.elements:
        if sub.contains(a):
            continue
        kernel = kernels[a]
        if kernel.n != diagram.dims[a]:
            return False
        comma = commas[a][0]
        cone_blocks = [diagram.matrix(a, b) for b in comma]
        cone = Mat(
            sum(m.m for m in cone_blocks),
            diagram.dims[a],
            [row for m in cone_blocks for row in m.rows],
        )
        comparison = solve(kernel, cone)
        if comparison is None or not is_invertible(comparison):
            return False
    return True


class TruncatedLimit:
    """The exact limit over the truncated sub-poset, with its cone maps."""

    __slots__ = ("dimension", "objects", "basis", "cones")

    def __init__(self, dimension, objects, basis, cones):
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "objects", tuple(objects))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "cones", dict(cones))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedLimit is immutable")

    def __repr__(self):
        return f"TruncatedLimit(dimension={self.dimension})"


def truncated_limit(diagram: VectDiagram) -> TruncatedLimit:
    """The limit of the diagram restricted to the coordinate-sum-≤-d part."""
    if not isinstance(diagram.poset, CubePoset):
        raise ValueError("truncated_limit expects a diagram on a CubePoset")
    sub = TruncatedSub(diagram.poset)
    kernel, offsets = _limit_kernel(diagram, sub.elements)
    cones = {
        b: kernel.row_slice(offsets[b], offsets[b] + diagram.dims[b])
        for b in sub.elements
    }
    return TruncatedLimit(kernel.n, sub.elements, kernel, cones)


def free_diagram(poset, gens: dict) -> VectDiagram:
    """The diagram with value ⊕ gens(b) over all b reachable toward the
    terminal corner, arrows the evident projections.  Squares commute by
    construction, and the diagram is extended from a threshold sub-poset S
    exactly when gens vanishes outside S."""
    for b in gens:
        if b not in poset.index:
            raise ValueError(f"{b} is not an element of the poset")
    support = [b for b in poset.elements if gens.get(b, 0) > 0]
    members = {
        a: [b for b in support if poset.reaches(a, b)] for a in poset.elements
    }
    dims = {a: sum(gens[b] for b in members[a]) for a in poset.elements}
    arrows = {}
    for a in poset.elements:
        offs = {}
        run = 0
        for b in members[a]:
            offs[b] = run
            run += gens[b]
        for j in poset.available(a):
            c = poset.step(a, j)
            rows = []
            for b in members[c]:
                for t in range(gens[b]):
                    row = [0] * dims[a]
                    row[offs[b] + t] = 1
                    rows.append(row)
            arrows[(a, j)] = Mat(dims[c], dims[a], rows)
    return VectDiagram(poset, dims, arrows)


def _unimodular(n: int, rng: random.Random) -> Mat:
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        rows[j] = [u + c * v for u, v in zip(rows[j], rows[i])]
    return Mat(n, n, rows)


def _integer_inverse(p: Mat) -> Mat:
    inv = solve(p, Mat.identity(p.n))
    return Mat(p.n, p.n, [[int(x) for x in row] for row in inv.rows])


def shuffle_diagram(diagram: VectDiagram, rng: random.Random) -> VectDiagram:
    """Conjugate every value by a random unimodular change of basis; the
    result is isomorphic to the input (all limit verdicts unchanged)."""
    change = {a: _unimodular(diagram.dims[a], rng) for a in diagram.poset.elements}
    inverse = {a: _integer_inverse(p) for a, p in change.items()}
    arrows = {
        (a, j): change[diagram.poset.step(a, j)] @ mat @ inverse[a]
        for (a, j), mat in diagram.arrows.items()
    }
    return VectDiagram(diagram.poset, dict(diagram.dims), arrows)


def random_diagram(poset, rng, max_total_dim: int = 4) -> VectDiagram:
    """A seeded random commuting diagram with all values of dimension at
    most max_total_dim: a free diagram on randomly placed generators, in a
    random basis at every element."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    total = rng.randint(1, max_total_dim)
    gens: dict = {}
    for _ in range(total):
        e = poset.elements[rng.randrange(len(poset.elements))]
        gens[e] = gens.get(e, 0) + 1
    return shuffle_diagram(free_diagram(poset, gens), rng)


def _shape_dict(poset) -> dict:
    if isinstance(poset, CubePoset):
        return {"kind": "cube", "d": poset.d, "r": poset.r}
    if isinstance(poset, TruncatedSub):
        return {"kind": "truncated-cube", "d": poset.ambient.d, "r": poset.ambient.r}
    if isinstance(poset, SimplexProduct):
        return {"kind": "grid", "bounds": list(poset.bounds)}
    if isinstance(poset, BnSub):
        return {"kind": "threshold-grid", "bounds": list(poset.ambient.bounds), "n": poset.n}
    raise ValueError(f"unsupported poset: {type(poset).__name__}")


def shape_from_dict(data: dict):
    kind = data["kind"]
    if kind == "cube":
        return CubePoset(data["d"], data["r"])
    if kind == "truncated-cube":
        return TruncatedSub(CubePoset(data["d"], data["r"]))
    if kind == "grid":
        return SimplexProduct(data["bounds"])
    if kind == "threshold-grid":
        return BnSub(data["bounds"], data["n"])
    raise ValueError(f"unknown shape kind: {kind!r}")


def _entry_str(x) -> str:
    return str(Fraction(x))


def _entry_parse(text: str):
    f = Fraction(text)
    return int(f) if f.denominator == 1 else f


def diagram_to_dict(diagram: VectDiagram) -> dict:
    dims = {",".join(map(str, a)): diagram.dims[a] for a in diagram.poset.elements}
    maps = {}
    for a in diagram.poset.elements:
        for j in diagram.poset.available(a):
            c = diagram.poset.step(a, j)
            key = f"{','.join(map(str, a))}->{','.join(map(str, c))}"
            maps[key] = [[_entry_str(x) for x in row] for row in diagram.arrows[(a, j)].rows]
    return {"shape": _shape_dict(diagram.poset), "dims": dims, "maps": maps}


def diagram_from_dict(data: dict) -> VectDiagram:
    poset = shape_from_dict(data["shape"])
    dims = {
        tuple(int(p) for p in key.split(",")): value
        for key, value in data["dims"].items()
    }
    arrows = {}
    for key, rows in data["maps"].items():
        src_s, tgt_s = key.split("->")
        src = tuple(int(p) for p in src_s.split(","))
        tgt = tuple(int(p) for p in tgt_s.split(","))
        direction = next(
            (j for j in poset.available(src) if poset.step(src, j) == tgt),
            None,
        )
        if direction is None:
            raise ValueError(f"{key!r} is not a covering arrow of the shape")
        arrows[(src, direction)] = Mat(
            dims[tgt], dims[src],
            [[_entry_parse(x) for x in row] for row in rows],
        )
    return VectDiagram(poset, dims, arrows)


def diagram_to_json(diagram: VectDiagram) -> str:
    return json.dumps(diagram_to_dict(diagram), separators=(",", ":"))


def diagram_from_json(text: str) -> VectDiagram:
    return diagram_from_dict(json.loads(text))


def degenerate_direction(profile, excisiveness, d: int) -> int | None:
    """The smallest direction (1-based) in which the unit cube at profile is
    degenerate for the given excisiveness tuple: some j with k_j ≤ ℓ_j − 1.

    Defined when Σℓ > d, Σk ≤ d and every kᵢ ≤ m = d − r + 1; returns None
    when that hypothesis fails.  Under the hypothesis a direction always
    exists, since Σ(ℓ − k) > 0 forces some coordinate gap."""
    profile, exc = tuple(profile), tuple(excisiveness)
    if len(profile) != len(exc) or not profile:
        raise ValueError("profile and excisiveness must have the same positive length")
    m = d - len(profile) + 1
    if not (sum(profile) > d and sum(exc) <= d and all(k <= m for k in exc)):
        return None
    for j, (l, k) in enumerate(zip(profile, exc), start=1):
        if k <= l - 1:
            return j
    return None


def crosseffect_degrees(profile, f: FinMap) -> tuple[int, ...]:
    """Degrees of the f-indexed cross effect of a functor of multidegree
    ``profile``: position j ↦ d_{f(j)} − k_{f(j)} + 1 with k the fiber sizes
    of f.  A non-positive entry means the cross effect vanishes."""
    profile = tuple(profile)
    if not f.is_surjective():
        raise ValueError("index map must be surjective")
    if f.target_size != len(profile):
        raise ValueError("profile length must match the target of f")
    sizes = f.fiber_sizes()
    return tuple(
        profile[f(j) - 1] - sizes[f(j) - 1] + 1 for j in range(1, f.source_size + 1)
    )


def diagonal_degrees(profile, f: FinMap) -> tuple[int, ...]:
    """Degrees after restricting along the f-diagonal: position i sums the
    entries of ``profile`` over the fiber f⁻¹(i)."""
    profile = tuple(profile)
    if not f.is_surjective():
        raise ValueError("index map must be surjective")
    if f.source_size != len(profile):
        raise ValueError("profile length must match the source of f")
    return tuple(sum(profile[j - 1] for j in fiber) for fiber in f.fibers())


def _compositions(total: int, parts: int):
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _fiber_surjections(s: int, r: int):
    """One canonical (fiber-contiguous) surjection [s] ↠ [r] per fiber profile."""
    return [
        (k, SliceObject(k).structure_map) for k in _compositions(s, r)
    ]


class PigeonholeReport:
    """Outcome of the exhaustive degree bookkeeping at one (d, r, s)."""

    __slots__ = ("d", "r", "s", "passed", "crosseffect_cases", "crosseffect_zero",
                 "diagonal_cases", "homogeneous_cases", "witnesses", "failures")

    def __init__(self, d, r, s, crosseffect_cases, crosseffect_zero,
                 diagonal_cases, homogeneous_cases, witnesses, failures):
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "crosseffect_cases", crosseffect_cases)
        object.__setattr__(self, "crosseffect_zero", crosseffect_zero)
        object.__setattr__(self, "diagonal_cases", diagonal_cases)
        object.__setattr__(self, "homogeneous_cases", homogeneous_cases)
        object.__setattr__(self, "witnesses", tuple(witnesses))
        object.__setattr__(self, "failures", tuple(failures))
        object.__setattr__(self, "passed", not failures)

    def __setattr__(self, name, value):
        raise AttributeError("PigeonholeReport is immutable")

    def __repr__(self):
        verdict = "pass" if self.passed else f"FAIL ({len(self.failures)})"
        return (
            f"PigeonholeReport(d={self.d}, r={self.r}, s={self.s}: {verdict}, "
            f"{self.crosseffect_cases} cross-effect cases "
            f"({self.crosseffect_zero} zero), {self.diagonal_cases} diagonal, "
            f"{self.homogeneous_cases} homogeneous)"
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "s": self.s,
            "passed": self.passed,
            "crosseffect_cases": self.crosseffect_cases,
            "crosseffect_zero": self.crosseffect_zero,
            "diagonal_cases": self.diagonal_cases,
            "homogeneous_cases": self.homogeneous_cases,
            "witnesses": [dict(w) for w in self.witnesses[:50]],
            "witness_count": len(self.witnesses),
            "failures": [dict(f) for f in self.failures],
        }


def verify_pigeonhole(d: int, r: int, s: int) -> PigeonholeReport:
    """Exhaustive check of the degree bookkeeping for r ≤ s ≤ d.

    Over every generator profile and every fiber profile of surjections
    [s] ↠ [r], verify that (a) cross-effect degree profiles either contain
    a non-positive entry or stay within the per-variable bound d − s + 1,
    (b) diagonal degree profiles stay within d − r + 1 per entry and d in
    total, and (c) for every multidegree over [s] of total > d, some merged
    fiber degree drops below 1.  For (c) only the boundary total d + 1 is
    enumerated: merged degrees are monotone decreasing in the multidegree,
    so a violation at a larger total would already show at the boundary.
    Witnesses record the cross-effect profiles whose total exceeds d — the
    cases where only the per-variable bound, not subdiagonality, holds.
    """
    if not 1 <= r <= s <= d:
        raise ValueError(f"need 1 <= r <= s <= d, got r={r}, s={s}, d={d}")
    fibered = _fiber_surjections(s, r)
    gens_r = [o.fiber_tuple for o in enumerate_objects(d, r)]
    gens_s = [o.fiber_tuple for o in enumerate_objects(d, s)]
    witnesses = []
    failures = []

    crosseffect_cases = 0
    crosseffect_zero = 0
    per_variable = d - s + 1
    for profile in gens_r:
        for k, f in fibered:
            degrees = crosseffect_degrees(profile, f)
            crosseffect_cases += 1
            if min(degrees) <= 0:
                crosseffect_zero += 1
                continue
            if max(degrees) > per_variable:
                failures.append({
                    "claim": "crosseffect",
                    "profile": profile,
                    "fibers": k,
                    "degrees": degrees,
                })
            if sum(degrees) > d:
                witnesses.append({
                    "profile": profile,
                    "fibers": k,
                    "degrees": degrees,
                    "total": sum(degrees),
                })

    diagonal_cases = 0
    for profile in gens_s:
        for k, f in fibered:
            degrees = diagonal_degrees(profile, f)
            diagonal_cases += 1
            if max(degrees) > d - r + 1 or sum(degrees) > d:
                failures.append({
                    "claim": "diagonal",
                    "profile": profile,
                    "fibers": k,
                    "degrees": degrees,
                })

    homogeneous_cases = 0
    for multi in _compositions(d + 1, s):
        for k, f in fibered:
            merged = diagonal_degrees(multi, f)
            for profile in gens_r:
                homogeneous_cases += 1
                if all(l - m + 1 >= 1 for l, m in zip(profile, merged)):
                    failures.append({
                        "claim": "homogeneous",
                        "profile": profile,
                        "fibers": k,
                        "multidegree": multi,
                    })

    return PigeonholeReport(
        d, r, s, crosseffect_cases, crosseffect_zero, diagonal_cases,
        homogeneous_cases, witnesses, failures,
    )
