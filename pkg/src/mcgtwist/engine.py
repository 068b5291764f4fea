"""The end-to-end pipeline: cycle lattice, relation lattice, quotient.

The first homology group with twisted coefficients is the quotient of
the cycle lattice by the sublattice generated by the rewritten
relations.  Word and class relations contribute fixed vectors.  Partial
relations contribute a pinned part plus an unknown element of a known
ambiguity sublattice; the unknown is handled by sampling: sample 0 takes
it to be zero, later samples add a seeded random {0,1}-combination of
ambiguity basis vectors, and the quotient invariants must agree across
all samples.
"""

import random
import time
from dataclasses import dataclass, field

from .catalog import (
    build_catalog,
    k1_ambiguity_basis,
    partial_exact_part,
    partial_target_boundary,
    pmplus_boundary_solver,
)
from .chains import ChainSpace, ChainVector, cycle_lattice, rewrite_relation_all
from .errors import NotACycle, RelationOutsideKernel, UnstableSampling
from .intlin import AbelianInvariants, Echelon, snf_factors, vec_axpy


@dataclass
class PartialRow:
    """One coefficient instance of a partial relation: the pinned chain
    (exact part minus a particular solution of the unknown part) and the
    key of the ambiguity sublattice it is defined up to."""

    rid: str
    base: ChainVector
    coords: dict
    ambiguity: str


@dataclass
class RelationSystem:
    """Everything the quotient needs, precomputed once per spec."""

    spec: object
    space: ChainSpace
    catalog: list
    lattice: object
    col_of: dict
    exact: list  # (rid, ambient ChainVector)
    exact_coords: list
    partials: list
    ambiguity_chains: dict  # key -> list of ambient ChainVector
    ambiguity_coords: dict  # key -> list of coordinate dicts

    @property
    def rank(self):
        return self.lattice.rank


def to_coords(system, chain, error=NotACycle):
    """Coordinates of a chain in the cycle-lattice basis (dense index ->
    coefficient); raises if the chain is not a cycle in the lattice."""
    coeffs, rem = system.lattice.echelon.reduce(dict(chain))
    if rem:
        raise error(
            "not in the cycle lattice: %s" % system.space.format_chain(chain)
        )
    return {system.col_of[j]: v for j, v in coeffs.items() if v}


def _dropped(rid, drop_ids):
    return rid in drop_ids or rid.split(":", 1)[0] in drop_ids


def build_relation_system(spec, drop_ids=frozenset(), extra_relations=None):
    """Rewrite the whole catalog into cycle-lattice coordinates.

    Partial relations are resolved into a pinned coordinate row (their
    unknown part replaced by one particular solution) plus a reference
    to the ambiguity sublattice, whose basis is computed once per kind.
    """
    spec.require_free_module()
    space = ChainSpace(spec)
    lattice = cycle_lattice(space)
    col_of = {j: t for t, j in enumerate(lattice.echelon.pivot_cols())}
    catalog = build_catalog(spec, space)
    if extra_relations:
        catalog = catalog + list(extra_relations)

    system = RelationSystem(
        spec=spec, space=space, catalog=catalog, lattice=lattice,
        col_of=col_of, exact=[], exact_coords=[], partials=[],
        ambiguity_chains={}, ambiguity_coords={},
    )

    def coords(rid, chain):
        return to_coords(
            system, chain,
            error=lambda msg: RelationOutsideKernel("%s: %s" % (rid, msg)),
        )

    for entry in catalog:
        if _dropped(entry.rid, drop_ids) or entry.kind == "partial":
            continue
        if entry.kind == "word":
            for vec in rewrite_relation_all(space, entry.lhs, entry.rhs):
                if vec:
                    system.exact.append((entry.rid, vec))
                    system.exact_coords.append(coords(entry.rid, vec))
        else:
            system.exact.append((entry.rid, entry.vector))
            system.exact_coords.append(coords(entry.rid, entry.vector))

    # A partial relation pins its row down only modulo its ambiguity
    # sublattice, so an instance is informative exactly when its pinned
    # part escapes the span of the exact relations, the ambiguity
    # sublattice and the instances already kept.  Keeping only those
    # makes the quotient independent of the unknown parts; the sampling
    # in compute_h1 double-checks that independence.
    pm_solver = None
    filters = {}

    def ambiguity(key):
        if key not in system.ambiguity_chains:
            if key == "pm+":
                chains = [ChainVector(row) for row in pm_solver.kernel_basis()]
            else:
                chains = k1_ambiguity_basis(space)
            system.ambiguity_chains[key] = chains
            system.ambiguity_coords[key] = [
                to_coords(system, c, error=RelationOutsideKernel)
                for c in chains
            ]
            filt = Echelon(system.exact_coords)
            for c in system.ambiguity_coords[key]:
                filt.insert(dict(c))
            filters[key] = filt
        return filters[key]

    def add_partial(rid, base, key):
        c = coords(rid, base)
        filt = ambiguity(key)
        if not filt.contains(c):
            filt.insert(dict(c))
            system.partials.append(PartialRow(rid, base, c, key))

    for entry in catalog:
        if entry.kind != "partial" or _dropped(entry.rid, drop_ids):
            continue
        if entry.ambiguity == "k1":
            add_partial(entry.rid, entry.vector, "k1")
        else:
            if pm_solver is None:
                pm_solver = pmplus_boundary_solver(space)
            x, vj = entry.conjugation
            for xi in range(1, space.d + 1):
                base = partial_exact_part(space, x, vj, xi)
                particular = pm_solver.solve(
                    partial_target_boundary(space, x, vj, xi)
                )
                for flat, c in particular.items():
                    base.add_term(flat, -c)
                if base:
                    add_partial("%s:xi%d" % (entry.rid, xi), base, "pm+")
    return system


def named_candidates(space):
    """The ordered candidate list whose surviving members form the named
    basis of the quotient, as (name, chain) pairs."""
    spec = space.spec
    g, s, n, k = spec.g, spec.s, spec.n, spec.k

    def one(kind, j, i):
        return ("%s_{%d,%d}" % (kind, j, i), space.chain([(kind, j, i, 1)]))

    out = []
    if g == 3:
        # Extra boundary/puncture coefficients keep a- and u-classes
        # independent on genus 3; their count depends on the flavor.
        extra = s + (k if spec.flavor != "m" else 0)
        out.append(
            ("a_{1,1}+a_{1,2}", space.chain([("a", 1, 1, 1), ("a", 1, 2, 1)]))
        )
        out.append(one("a", 1, 3))
        out.extend(one("a", 1, i) for i in range(4, 3 + extra))
        out.append(one("u", 1, 3))
        out.extend(one("u", 1, i) for i in range(4, 3 + extra))
    else:
        if g <= 6:
            out.append(one("a", 1, 3))
        out.append(one("u", 1, 3))
        out.append((
            "b_{1,1}-a_{1,1}-a_{3,3}",
            space.chain([("b", 1, 1, 1), ("a", 1, 1, -1), ("a", 3, 3, -1)]),
        ))
    if g in (3, 4):
        out.extend(one("d", j, 1) for j in range(1, s))
    if spec.flavor == "m":
        out.append(one("v", n, 1))
        out.append(one("s", 1, 1))
    else:
        out.extend(one("v", j, 1) for j in range(k + 1, n + 1))
    return out


def _parity_mask(coords):
    m = 0
    for c, v in coords.items():
        if v & 1:
            m |= 1 << c
    return m


def _gf2_insert(rows, vec, full):
    """Insert a bit vector into a GF(2) echelon keyed by lowest set bit
    of the coordinate part; returns the residual after reduction."""
    while vec & full:
        low = vec & full
        p = low & -low
        r = rows.get(p)
        if r is None:
            rows[p] = vec
            return vec
        vec ^= r
    return vec


@dataclass
class SamplingReport:
    samples: int
    stable: bool


@dataclass
class H1Result:
    spec: object
    invariants: AbelianInvariants
    named_basis: list
    sampling_report: SamplingReport
    ms: int
    system: RelationSystem = field(repr=False)
    _gf2: tuple = field(repr=False, default=None)


def compute_h1(spec, samples=17, seed=0, drop_ids=frozenset(),
               extra_relations=None, system=None):
    """Invariants and a named basis of the twisted first homology group.

    With `samples` > 1 and partial relations present, the ambiguity of
    every partial row is re-sampled per run and the invariants must
    agree across all runs; otherwise UnstableSampling is raised.
    """
    t0 = time.perf_counter()
    if samples < 1:
        raise ValueError("need at least one sample")
    if system is None:
        system = build_relation_system(spec, drop_ids, extra_relations)
    rank = system.rank

    base = Echelon()
    for c in system.exact_coords:
        base.insert(dict(c))

    rng = random.Random(seed)
    nsamples = samples if system.partials else 1
    invariants = None
    kept = None
    for m in range(nsamples):
        ech = base.clone() if system.partials else base
        for p in system.partials:
            row = dict(p.coords)
            if m:
                basis = system.ambiguity_coords[p.ambiguity]
                bits = rng.getrandbits(len(basis)) if basis else 0
                while bits:
                    t = (bits & -bits).bit_length() - 1
                    vec_axpy(row, basis[t], 1)
                    bits &= bits - 1
            ech.insert(row)
        inv = AbelianInvariants.from_factors(snf_factors(ech.rows()), rank)
        if invariants is None:
            invariants, kept = inv, ech
        elif inv != invariants:
            raise UnstableSampling(
                "sample %d gave %s, sample 0 gave %s"
                % (m, inv.describe(), invariants.describe())
            )

    named, gf2 = _named_basis(system, invariants, kept)
    ms = int((time.perf_counter() - t0) * 1000)
    return H1Result(spec, invariants, named, SamplingReport(nsamples, True),
                    ms, system, gf2)


def _named_basis(system, invariants, relation_echelon):
    """Greedy GF(2) reduction of the candidate list over the relations.

    Valid once the quotient is known to be an elementary abelian
    2-group: class equality then reduces to equality modulo the
    relations and twice the cycle lattice.
    """
    width = system.rank
    full = (1 << width) - 1
    rows = {}
    for r in relation_echelon.rows():
        _gf2_insert(rows, _parity_mask(r), full)
    named = []
    tagmap = {}
    if invariants.is_elementary_two_group():
        for t, (name, chain) in enumerate(named_candidates(system.space)):
            vec = _parity_mask(to_coords(system, chain)) | (1 << (width + t))
            if _gf2_insert(rows, vec, full) & full:
                named.append((name, chain))
                tagmap[t] = name
    return named, (rows, width, tagmap)


def express_class(result, chain):
    """The image of a cycle in the quotient, written in the named basis.

    Returns a dict mapping basis class name -> 1 (empty dict for the
    zero class); raises NotACycle if the chain has nonzero boundary.
    """
    rows, width, tagmap = result._gf2
    full = (1 << width) - 1
    vec = _parity_mask(to_coords(result.system, chain))
    while vec & full:
        low = vec & full
        r = rows.get(low & -low)
        if r is None:
            raise ValueError("class is outside the span of the named basis")
        vec ^= r
    return {tagmap[t]: 1 for t in range((vec >> width).bit_length())
            if (vec >> width) >> t & 1}
