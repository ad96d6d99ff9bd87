"""
End-to-end verification suite: a registry of named checks, each comparing
observed values against expected ones, assembled into a
``VerificationReport`` sorted by check id.
"""
import json
import logging
import os
import time
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from complexes import (SimplicialComplex, barycentric_subdivision, has_nlcp, is_connected, is_flag,
                       is_full, random_complex, star, subdivide_polygonal)
from config import Settings
from constructions import (SignFunction, VoltageAssignment, build_cover, check_homotopy_invariants, nlcp_repair_M,
                           opposite_pairs, orientation_double_voltage, projection_map, pullback_square_check,
                           retraction_section, section_is_simplicial, sphere_link)
from corpus_library import CorpusLibrary
from cubical import ascending_link, descending_link, level_set_complex, salvetti, salvetti_homology, vertex_link
from enumeration import DERIVATION_BUDGET, WITNESS_BUDGET, CosetTable, r_set_report, todd_coxeter
from formats import CheckRecord, VerificationReport
from homology import reduced_homology
from presentations import Presentation, abelianization, bb_presentation, edge_path_presentation, simplify

logger = logging.getLogger(__name__)

FLAG_CORPUS = ["point", "edge", "path3", "square", "pentagon", "solid_triangle",
               "octahedron", "rp2_barycentric", "higman_flag"]
RANDOM_COMPLEXES = 200
SIGN_SAMPLES = 20
HOMOTOPY_ORDER = 6
HIGMAN_LIMIT = 10.0
RSET_LIMIT = 60.0


@dataclass
class Outcome:
    status: str
    observed: Any = None
    expected: Any = None
    detail: str = ""


def compare(observed: Any, expected: Any, detail: str = "") -> Outcome:
    return Outcome("pass" if observed == expected else "fail", observed, expected, detail)


@dataclass
class CheckContext:
    settings: Settings
    corpus: CorpusLibrary
    seed: int
    budget_scale: float = 1.0
    cache: Dict[str, SimplicialComplex] = field(default_factory=dict)

    def complex(self, name: str) -> SimplicialComplex:
        if name not in self.cache:
            self.cache[name] = self.corpus.get(name)
        return self.cache[name]

    def scaled(self, budget: int) -> int:
        return int(budget * self.budget_scale)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    group: str
    run: Callable[[CheckContext], Outcome]
    limit: Optional[float] = None


REGISTRY: Dict[str, Check] = {}


def check(check_id: str, anchor: str, group: str, limit: Optional[float] = None):
    """Register a check; a pass that takes longer than ``limit`` seconds is reported inconclusive."""
    def register(fn: Callable[[CheckContext], Outcome]) -> Callable[[CheckContext], Outcome]:
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = Check(check_id, anchor, group, fn, limit)
        return fn
    return register


def _out_of_budget(what: str) -> Outcome:
    return Outcome("inconclusive", detail=f"{what} budget scaled to zero")


# -- Higman pipeline --------------------------------------------------------------

@check("higman.subdivision", "Higman complex subdivides to 97 vertices, 336 edges, 240 triangles", "higman",
       limit=HIGMAN_LIMIT)
def _higman_subdivision(ctx: CheckContext) -> Outcome:
    delta = subdivide_polygonal(ctx.corpus.get("higman_polygonal"))
    L = barycentric_subdivision(delta)
    ctx.cache.setdefault("higman_flag", L)
    return compare({"first": list(delta.f_vector()), "barycentric": list(L.f_vector())},
                   {"first": [9, 48, 40], "barycentric": [97, 336, 240]})


@check("higman.flag_nlcp", "Higman flag complex is flag without local cut points", "higman", limit=HIGMAN_LIMIT)
def _higman_flag(ctx: CheckContext) -> Outcome:
    L = ctx.complex("higman_flag")
    return compare({"flag": is_flag(L), "nlcp": has_nlcp(L)}, {"flag": True, "nlcp": True})


@check("higman.acyclic", "Higman flag complex has zero reduced integral homology", "higman", limit=HIGMAN_LIMIT)
def _higman_acyclic(ctx: CheckContext) -> Outcome:
    profile = reduced_homology(ctx.complex("higman_flag"))
    return compare([str(g) for g in profile.groups], ["0"] * len(profile.groups), str(profile))


# -- the sphere-link complex --------------------------------------------------------

@check("flag.duality", "L is flag iff S(L) is; L full in M(L) iff S(L) full in S(M(L))", "sphere_link")
def _flag_duality(ctx: CheckContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    counterexamples, repaired = [], 0
    for k in range(RANDOM_COMPLEXES):
        L = random_complex(7, rng)
        SL = sphere_link(L)
        if is_flag(L) != is_flag(SL):
            counterexamples.append({"sample": k, "property": "flag", "maximal": [list(L.labels(s)) for s in L.maximal_simplices()]})
        if any(d == 0 for _, d in L.graph().degree()):
            continue
        M, _ = nlcp_repair_M(L)
        repaired += 1
        if is_full(M, L) != is_full(sphere_link(M), SL):
            counterexamples.append({"sample": k, "property": "full", "maximal": [list(L.labels(s)) for s in L.maximal_simplices()]})
    return compare(counterexamples, [], f"{RANDOM_COMPLEXES} complexes, {repaired} repaired")


@check("retract.section", "projection after section is the identity", "sphere_link")
def _retract_section(ctx: CheckContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    failures = []
    for name in FLAG_CORPUS + ["hollow_triangle", "rp2_6"]:
        L = ctx.complex(name)
        SL = sphere_link(L)
        projection = projection_map(SL)
        for _ in range(SIGN_SAMPLES):
            g = SignFunction.random(L, rng)
            section = retraction_section(L, g)
            if any(projection[section[v]] != v for v in L.vertices) or not section_is_simplicial(L, g, SL):
                failures.append(name)
                break
    return compare(failures, [])


@check("retract.connectivity", "S(L) is connected iff L is connected and not a point", "sphere_link")
def _retract_connectivity(ctx: CheckContext) -> Outcome:
    rng = np.random.default_rng(ctx.seed)
    samples = [(name, ctx.complex(name)) for name in FLAG_CORPUS + ["hollow_triangle", "rp2_6"]]
    samples += [(f"random{k}", random_complex(7, rng)) for k in range(RANDOM_COMPLEXES)]
    failures = [name for name, L in samples
                if is_connected(sphere_link(L)) != (is_connected(L) and len(L.vertices) > 1)]
    return compare(failures, [], f"{len(samples)} complexes")


@check("nlcp.star_links", "S(St(v)) is simply connected for every vertex of the octahedron", "sphere_link")
def _star_links(ctx: CheckContext) -> Outcome:
    max_cosets = ctx.scaled(ctx.settings.max_cosets)
    if max_cosets < 1:
        return _out_of_budget("coset")
    L = ctx.complex("octahedron")
    indices = {}
    for v in L.vertices:
        result = todd_coxeter(simplify(edge_path_presentation(sphere_link(star(L, v)))), max_cosets=max_cosets)
        if not isinstance(result, CosetTable):
            return Outcome("inconclusive", indices, {v: 1 for v in L.vertices},
                           f"enumeration for vertex {v} stopped at {result.limit} cosets")
        indices[v] = result.index
    return compare(indices, {v: 1 for v in L.vertices})


# -- M(L) ---------------------------------------------------------------------------

@check("repair.guarantees",
       "M(L) has no local cut points, contains L fully, keeps homology, hom counts and dimension", "repair")
def _repair(ctx: CheckContext) -> Outcome:
    observed, expected = {}, {}
    for name in ["octahedron", "rp2_barycentric", "higman_flag"]:
        L = ctx.complex(name)
        M, embedding = nlcp_repair_M(L)
        invariants = check_homotopy_invariants(L, M, HOMOTOPY_ORDER)
        counts = {group: list(pair) for group, pair in sorted(invariants.hom_counts.items())}
        observed[name] = {
            "nlcp": has_nlcp(M),
            "full": is_full(M, L, embedding),
            "homology": invariants.homology_equal,
            "hom_counts": counts,
            "dimension": [L.dimension, M.dimension],
        }
        expected[name] = {"nlcp": True, "full": True, "homology": True,
                          "hom_counts": {group: [a, a] for group, (a, _) in counts.items()}, "dimension": [2, 2]}
    return compare(observed, expected)


# -- covers -------------------------------------------------------------------------

def _double_covers(ctx: CheckContext) -> Dict[str, VoltageAssignment]:
    square = ctx.complex("square")
    rp2 = ctx.complex("rp2_barycentric")
    return {
        "square": VoltageAssignment(square, 2, {("1", "2"): (1, 0)}),
        "rp2_barycentric": orientation_double_voltage(rp2),
    }


@check("covers.pullback", "S(cover of L) is the pulled-back cover of S(L); opposite pairs match sheets", "covers")
def _pullback(ctx: CheckContext) -> Outcome:
    observed, expected = {}, {}
    for name, rho in _double_covers(ctx).items():
        L = rho.base
        cover = build_cover(L, rho)
        result = pullback_square_check(L, rho, budget=ctx.settings.iso_budget)
        pairs = opposite_pairs(result.cover_of_sphere) if result.isomorphic else {}
        observed[name] = {"connected_cover": is_connected(cover.complex), "isomorphic": result.isomorphic,
                          "pairs": len(pairs)}
        expected[name] = {"connected_cover": True, "isomorphic": True,
                          "pairs": len(result.cover_of_sphere.complex.vertices)}
    return compare(observed, expected)


# -- presentations ------------------------------------------------------------------

@check("presentations.family", "P_L(boundary, {0,1,3}) of the square is <a,b,c,d | abcd, a^3b^3c^3d^3>", "presentations")
def _family(ctx: CheckContext) -> Outcome:
    square = ctx.complex("square")
    p = simplify(bb_presentation(square, ctx.corpus.loops("square")["boundary"], {0, 1, 3}))
    target = Presentation(("a", "b", "c", "d"), ((1, 2, 3, 4), (1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4)))
    return compare(str(p), str(target))


@check("presentations.counts", "generator and relator counts of P_L(Gamma, S) across the corpus", "presentations")
def _counts(ctx: CheckContext) -> Outcome:
    heights = [0, 1, 3]
    observed, expected = {}, {}
    for name in FLAG_CORPUS:
        L = ctx.complex(name)
        if not is_connected(L):
            continue
        loops = next(iter(ctx.corpus.loops(name).values()), [])
        p = bb_presentation(L, loops, heights)
        observed[name] = [p.rank, len(p.relators)]
        expected[name] = [len(L.faces(1)), 2 * len(L.faces(2)) + len(loops) * (len(heights) - 1)]
    return compare(observed, expected)


# -- R-sets ---------------------------------------------------------------------------

def _family_presentation(ctx: CheckContext) -> Presentation:
    return bb_presentation(ctx.complex("square"), ctx.corpus.loops("square")["boundary"], {0, 1, 3})


@check("rset.family", "the R-set of the {0,1,3} family contains {0,1,3} and nothing else", "rset", limit=RSET_LIMIT)
def _rset_family(ctx: CheckContext) -> Outcome:
    N = ctx.scaled(ctx.settings.budget_n)
    if N < 1:
        return _out_of_budget("R-set")
    p = _family_presentation(ctx)
    report = r_set_report(p, [(k,) for k in range(1, p.rank + 1)], N, ctx.settings.degree_bound,
                          ctx.scaled(DERIVATION_BUDGET), ctx.scaled(WITNESS_BUDGET))
    positives = report.certified()
    observed = {"positives": positives, "contains": sorted({0, 1, 3} & set(positives)),
                "outside": sorted(set(positives) - {0, 1, 3})}
    detail = f"n = 2 {'witnessed negative' if 2 in report.negatives else 'unknown'}"
    if observed["outside"]:
        return Outcome("fail", observed, {"outside": []}, "certified member outside the height set")
    missing = sorted({n for n in (0, 1, 3) if n <= N} - set(positives))
    status = "pass" if not missing else "inconclusive"
    return Outcome(status, observed, {"contains": sorted(n for n in (0, 1, 3) if n <= N), "outside": []}, detail)


@check("rset.free", "in F2 only n = 0 lies in the R-set of (a, b)", "rset", limit=RSET_LIMIT)
def _rset_free(ctx: CheckContext) -> Outcome:
    N = ctx.scaled(ctx.settings.budget_n)
    if N < 1:
        return _out_of_budget("R-set")
    p = ctx.corpus.get("free2")
    report = r_set_report(p, [(1,), (2,)], N, 3, ctx.scaled(DERIVATION_BUDGET), ctx.scaled(WITNESS_BUDGET))
    witnesses = report.negatives.values()
    observed = {"positives": report.certified(), "negatives": sorted(report.negatives),
                "witnesses_valid": all(w.verify(p) and w.degree <= 3 for w in witnesses)}
    expected = {"positives": [0], "negatives": [n for n in range(-N, N + 1) if n != 0],
                "witnesses_valid": True}
    return compare(observed, expected)


@check("rset.z2", "in <a | a^2> the R-set of (a) is the even integers", "rset", limit=RSET_LIMIT)
def _rset_z2(ctx: CheckContext) -> Outcome:
    N = ctx.scaled(ctx.settings.budget_n)
    if N < 1:
        return _out_of_budget("R-set")
    p = ctx.corpus.get("z2")
    report = r_set_report(p, [(1,)], N, ctx.settings.degree_bound,
                          ctx.scaled(DERIVATION_BUDGET), ctx.scaled(WITNESS_BUDGET))
    evens = [n for n in range(-N, N + 1) if n % 2 == 0]
    return compare({"positives": report.certified(), "negatives": sorted(report.negatives)},
                   {"positives": evens, "negatives": [n for n in range(-N, N + 1) if n % 2]})


# -- abelianization -----------------------------------------------------------------

@check("abelianization.higman", "abelianization of P_L(Gamma, S) for the Higman flag complex is Z^96", "abelianization")
def _abelianization_higman(ctx: CheckContext) -> Outcome:
    L = ctx.complex("higman_flag")
    loops = ctx.corpus.loops("higman_flag")["one_cells"]
    observed = {str(sorted(S)): str(abelianization(bb_presentation(L, loops, S)))
                for S in ({0}, {0, 1}, {0, 1, 3})}
    return compare(observed, {key: "Z^96" for key in observed})


@check("abelianization.square", "abelianization of the square family is Z^4 for {0} and Z^3 for {0,1}", "abelianization")
def _abelianization_square(ctx: CheckContext) -> Outcome:
    square = ctx.complex("square")
    loop = ctx.corpus.loops("square")["boundary"]
    return compare({"{0}": str(abelianization(bb_presentation(square, loop, {0}))),
                    "{0,1}": str(abelianization(bb_presentation(square, loop, {0, 1})))},
                   {"{0}": "Z^4", "{0,1}": "Z^3"})


# -- cube complexes -----------------------------------------------------------------

@check("cubical.salvetti", "Salvetti boundaries vanish, H_k has rank #(k-1)-simplices, links are S(L) and L", "cubical")
def _salvetti(ctx: CheckContext) -> Outcome:
    observed, expected = {}, {}
    for name in FLAG_CORPUS:
        L = ctx.complex(name)
        t = salvetti(L)
        profile = salvetti_homology(t)
        vertex_link(t)
        ascending_link(t)
        descending_link(t)
        observed[name] = [g.rank for g in profile.groups]
        expected[name] = [1] + list(L.f_vector())
    return compare(observed, expected)


@check("cubical.level_set", "level-set complex: chi = 1 - E + 2T and H_1 is the abelianization", "cubical")
def _level_set(ctx: CheckContext) -> Outcome:
    observed, expected = {}, {}
    for name in FLAG_CORPUS:
        L = ctx.complex(name)
        if L.dimension != 2:
            continue
        level = level_set_complex(L)
        chi = level.complex.euler_characteristic()
        observed[name] = {"chi": chi, "profile_chi": level.homology.euler_characteristic(),
                          "H1": str(level.homology.degree(1))}
        expected[name] = {"chi": 1 - len(L.faces(1)) + 2 * len(L.faces(2)), "profile_chi": chi,
                          "H1": str(abelianization(level.presentation))}
    observed["solid_triangle_ranks"] = list(level_set_complex(ctx.complex("solid_triangle")).homology.ranks())
    expected["solid_triangle_ranks"] = [1, 2, 1]
    return compare(observed, expected)


# -- running --------------------------------------------------------------------------

class Verifier:
    """
    Runs registered checks and appends one JSON record per check to
    ``<log_dir>/verify.json``.
    """

    def __init__(self, settings: Settings = None, corpus: CorpusLibrary = None, log_dir: str = None):
        self.settings = settings or Settings.from_env()
        self.corpus = corpus or CorpusLibrary(self.settings.corpus_dir)
        self.log_dir = log_dir or self.settings.report_log_dir
        os.makedirs(self.log_dir, exist_ok=True)

    @staticmethod
    def select(only: Optional[str] = None) -> List[Check]:
        """All checks, or those whose group or id (or id prefix before a dot) is ``only``."""
        checks = sorted(REGISTRY.values(), key=lambda c: c.id)
        if only:
            checks = [c for c in checks if only in (c.group, c.id, c.id.split(".")[0])]
            if not checks:
                raise ValueError(f"no check matches {only!r}")
        return checks

    def run_check(self, item: Check, ctx: CheckContext) -> CheckRecord:
        start = time.perf_counter()
        try:
            outcome = item.run(ctx)
        except (RuntimeError, ValueError) as exc:
            logger.error(f"check {item.id} raised: {exc}")
            outcome = Outcome("fail", detail=f"{type(exc).__name__}: {exc}")
        runtime = time.perf_counter() - start
        if item.limit is not None and runtime > item.limit and outcome.status == "pass":
            outcome = Outcome("inconclusive", outcome.observed, outcome.expected,
                              f"passed in {runtime:.2f}s, over the {item.limit:g}s limit")
        if outcome.status == "fail":
            logger.warning(f"check {item.id} failed: observed {outcome.observed}, expected {outcome.expected}")
        elif outcome.status == "inconclusive":
            logger.warning(f"check {item.id} inconclusive: {outcome.detail}")
        else:
            logger.info(f"check {item.id} passed in {runtime:.2f}s")
        return CheckRecord(id=item.id, anchor=item.anchor, group=item.group, status=outcome.status,
                           observed=outcome.observed, expected=outcome.expected,
                           runtime=round(runtime, 4), detail=outcome.detail)

    def run(self, only: Optional[str] = None, budget_scale: float = 1.0, seed: int = None,
            progress: bool = True) -> VerificationReport:
        if budget_scale < 0:
            raise ValueError("budget scale must be non-negative")
        seed = self.settings.seed if seed is None else seed
        ctx = CheckContext(self.settings, self.corpus, seed, budget_scale)
        records = []
        for item in tqdm(self.select(only), desc="verify", disable=not progress):
            record = self.run_check(item, ctx)
            self.log_check(record, seed)
            records.append(record)
        records.sort(key=lambda r: r.id)
        return VerificationReport(seed=seed, budget_scale=budget_scale, checks=records)

    def log_check(self, record: CheckRecord, seed: int) -> None:
        log_file = os.path.join(self.log_dir, "verify.json")
        log_data = {
            "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            "id": record.id,
            "status": record.status,
            "runtime": record.runtime,
            "seed": seed,
        }
        if os.path.exists(log_file):
            with open(log_file, "r") as f:
                logs = json.load(f)
        else:
            logs = []
        logs.append(log_data)
        with open(log_file, "w") as f:
            json.dump(logs, f, indent=2)
