import functools
import json
import logging
import os
from typing import Any, Dict, List, Tuple, Union

import click
from pydantic import BaseModel

import formats
from complexes import (ComplexError, OutOfBudget, PolygonalComplex, SimplicialComplex, are_isomorphic,
                       barycentric_subdivision, has_nlcp, is_flag, subdivide_polygonal, validate)
from config import Settings
from constructions import build_cover, deck_transformations, nlcp_repair_M, sphere_link
from corpus_library import CorpusLibrary
from enumeration import Witness, r_set_report, todd_coxeter, witness_nontrivial
from homology import reduced_homology
from presentations import (HeightSet, Presentation, abelianization, bb_presentation, edge_path_presentation,
                           g_empty_presentation, presentation_2complex, simplify)
from verifier import Verifier

logger = logging.getLogger(__name__)

Loops = Dict[str, List[List[str]]]


def reports_errors(fn):
    """Bad input (parse errors, unmet preconditions, missing files) exits with code 2."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, FileNotFoundError) as exc:
            click.echo(f"error: {exc}", err=True)
            click.get_current_context().exit(2)
    return wrapper


def output_option(fn):
    return click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                        help="Write the result to this file instead of stdout.")(fn)


def emit(result: Union[BaseModel, Dict[str, Any]], output: str = None) -> None:
    text = formats.dumps(result) if isinstance(result, BaseModel) else json.dumps(result, indent=2)
    if output:
        with open(output, "w") as f:
            f.write(text + "\n")
        logger.info(f"wrote {output}")
    else:
        click.echo(text)


def finish(ok: bool) -> None:
    click.get_current_context().exit(0 if ok else 1)


def settings() -> Settings:
    return click.get_current_context().find_root().obj


def load_complex(source: str, close: bool = True) -> Tuple[Union[SimplicialComplex, PolygonalComplex], Loops]:
    """A complex from a JSON file, or from the corpus when ``source`` is not a path."""
    if os.path.exists(source):
        data = formats.read_json(source)
        if isinstance(data, dict) and "edges" in data:
            return formats.validate(formats.PolygonalFile, data, source).to_domain(), {}
        f = formats.validate(formats.ComplexFile, data, source)
        return f.to_domain(close=close), dict(f.loops)
    library = CorpusLibrary(settings().corpus_dir)
    return library.get(source), library.loops(source)


def load_simplicial(source: str) -> Tuple[SimplicialComplex, Loops]:
    c, loops = load_complex(source)
    if not isinstance(c, SimplicialComplex):
        raise ComplexError(f"{source} is a polygonal complex; this action needs a simplicial complex")
    return c, loops


def load_presentation(source: str) -> Presentation:
    if os.path.exists(source):
        return formats.load(formats.PresentationFile, source).to_domain()
    entry = CorpusLibrary(settings().corpus_dir).get(source)
    if not isinstance(entry, Presentation):
        raise ValueError(f"corpus entry {source} is not a presentation")
    return entry


@click.group()
@click.option("--log-level", default=None, help="Override FPFORGE_LOG_LEVEL.")
@click.pass_context
def cli(ctx, log_level):
    """fpforge: complexes, presentations and enumeration for Bestvina-Brady type groups."""
    config = Settings.from_env()
    logging.basicConfig(level=(log_level or config.log_level).upper(),
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    ctx.obj = config


# -- complexes ------------------------------------------------------------------

@cli.group("complex")
def complex_group():
    """Read a complex file (or corpus name) and compute with it."""


@complex_group.command("validate")
@click.argument("source")
@output_option
@reports_errors
def complex_validate(source, output):
    c, _ = load_complex(source, close=False)
    diagnostics = validate(c) if isinstance(c, SimplicialComplex) else []
    emit({"valid": not diagnostics, "diagnostics": [{"kind": d.kind, "detail": d.detail} for d in diagnostics]}, output)
    finish(not diagnostics)


@complex_group.command("flag")
@click.argument("source")
@output_option
@reports_errors
def complex_flag(source, output):
    c, _ = load_simplicial(source)
    result = is_flag(c)
    emit({"flag": result}, output)
    finish(result)


@complex_group.command("nlcp")
@click.argument("source")
@output_option
@reports_errors
def complex_nlcp(source, output):
    c, _ = load_simplicial(source)
    result = has_nlcp(c)
    emit({"nlcp": result}, output)
    finish(result)


@complex_group.command("homology")
@click.argument("source")
@click.option("--ring", default="Z", show_default=True, help="Z, Q, F2, F3, ... or Fp with --prime.")
@click.option("--prime", type=int, default=None)
@click.option("--unreduced", is_flag=True, help="Drop the augmentation (start in degree 0).")
@output_option
@reports_errors
def complex_homology(source, ring, prime, unreduced, output):
    c, _ = load_complex(source)
    profile = reduced_homology(c, ring, prime, reduced=not unreduced)
    emit(formats.HomologyFile.from_domain(profile), output)


@complex_group.command("subdivide")
@click.argument("source")
@click.option("--barycentric/--first", default=True, show_default=True,
              help="For polygonal input: also take the barycentric subdivision.")
@output_option
@reports_errors
def complex_subdivide(source, barycentric, output):
    c, _ = load_complex(source)
    if isinstance(c, PolygonalComplex):
        delta = subdivide_polygonal(c)
        result = barycentric_subdivision(delta) if barycentric else delta.to_simplicial()
    else:
        result = barycentric_subdivision(c)
    emit(formats.ComplexFile.from_domain(result), output)


@complex_group.command("sphere-link")
@click.argument("source")
@output_option
@reports_errors
def complex_sphere_link(source, output):
    c, _ = load_simplicial(source)
    emit(formats.ComplexFile.from_domain(sphere_link(c)), output)


@complex_group.command("repair-M")
@click.argument("source")
@output_option
@reports_errors
def complex_repair(source, output):
    c, loops = load_simplicial(source)
    m, _ = nlcp_repair_M(c)
    emit(formats.ComplexFile.from_domain(m, loops), output)


@complex_group.command("cover")
@click.argument("source")
@click.option("--voltage", "voltage_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--deck-output", type=click.Path(dir_okay=False), default=None,
              help="Also write the projection and deck transformations for 'present g-empty'.")
@output_option
@reports_errors
def complex_cover(source, voltage_path, deck_output, output):
    c, _ = load_simplicial(source)
    rho = formats.load(formats.VoltageFile, voltage_path).to_domain(c)
    cover = build_cover(c, rho)
    emit(formats.ComplexFile.from_domain(cover.complex), output)
    if deck_output:
        deck = formats.DeckFile(projection=cover.projection, maps=deck_transformations(cover))
        formats.write(deck, deck_output)


@complex_group.command("iso")
@click.argument("source")
@click.argument("other")
@output_option
@reports_errors
def complex_iso(source, other, output):
    c1, _ = load_simplicial(source)
    c2, _ = load_simplicial(other)
    found = are_isomorphic(c1, c2, budget=settings().iso_budget)
    if isinstance(found, OutOfBudget):
        emit({"status": "inconclusive", "reason": f"search stopped after {found.used} steps"}, output)
        return
    emit({"status": "isomorphic" if found else "not isomorphic", "isomorphism": found or None}, output)
    finish(bool(found))


# -- presentations --------------------------------------------------------------

@cli.group("present")
def present_group():
    """Build and inspect group presentations."""


def _parse_loops(family: str, named: Loops) -> List[List[str]]:
    if not family:
        return []
    if family in named:
        return named[family]
    if os.path.exists(family):
        data = formats.read_json(family)
        return data if isinstance(data, list) else data["loops"]
    raise ValueError(f"unknown loop family {family!r}; known: {sorted(named)}")


@present_group.command("bb")
@click.option("--complex", "source", required=True)
@click.option("--loops", "loops_spec", default="", help="Loop family stored with the complex, or a JSON file of loops.")
@click.option("--heights", default="0", show_default=True, help="Comma-separated height set containing 0.")
@click.option("--raw", is_flag=True, help="Skip the deterministic cleanup.")
@output_option
@reports_errors
def present_bb(source, loops_spec, heights, raw, output):
    c, named = load_simplicial(source)
    p = bb_presentation(c, _parse_loops(loops_spec, named), HeightSet.parse(heights))
    emit(formats.PresentationFile.from_domain(p if raw else simplify(p)), output)


@present_group.command("edge-path")
@click.option("--complex", "source", required=True)
@click.option("--raw", is_flag=True, help="Skip the deterministic cleanup.")
@output_option
@reports_errors
def present_edge_path(source, raw, output):
    c, _ = load_simplicial(source)
    p = edge_path_presentation(c)
    emit(formats.PresentationFile.from_domain(p if raw else simplify(p)), output)


@present_group.command("abelianize")
@click.option("--presentation", "source", required=True)
@output_option
@reports_errors
def present_abelianize(source, output):
    group = abelianization(load_presentation(source))
    emit({"abelianization": str(group), "rank": group.rank, "torsion": list(group.torsion)}, output)


@present_group.command("g-empty")
@click.option("--complex", "source", required=True)
@click.option("--cover", "cover_source", required=True)
@click.option("--deck", "deck_path", required=True, type=click.Path(exists=True, dir_okay=False))
@output_option
@reports_errors
def present_g_empty(source, cover_source, deck_path, output):
    L, _ = load_simplicial(source)
    cover, _ = load_simplicial(cover_source)
    deck = formats.load(formats.DeckFile, deck_path)
    result = g_empty_presentation(L, cover, deck.projection, deck.maps, settings().max_cosets)
    emit(formats.PresentationFile.from_domain(result.presentation), output)


@present_group.command("two-complex")
@click.option("--presentation", "source", required=True)
@output_option
@reports_errors
def present_two_complex(source, output):
    pc, profile = presentation_2complex(load_presentation(source))
    emit({"complex": formats.PolygonalFile.from_domain(pc).model_dump(),
          "homology": formats.HomologyFile.from_domain(profile).model_dump()}, output)


# -- enumeration ----------------------------------------------------------------

@cli.group("enumerate")
def enumerate_group():
    """Coset enumeration, finite-quotient witnesses and R-sets."""


@enumerate_group.command("tc")
@click.option("--presentation", "source", required=True)
@click.option("--subgroup", multiple=True, help="A subgroup generator word; repeat for several.")
@click.option("--max-cosets", type=int, default=None)
@output_option
@reports_errors
def enumerate_tc(source, subgroup, max_cosets, output):
    p = load_presentation(source)
    words = [p.parse_word(w) for w in subgroup]
    result = todd_coxeter(p, words, max_cosets or settings().max_cosets)
    emit(formats.CosetTableFile.from_domain(p, result), output)


@enumerate_group.command("witness")
@click.option("--presentation", "source", required=True)
@click.option("--word", required=True)
@click.option("--degree", type=int, default=None, help="Largest symmetric group degree tried.")
@click.option("--budget", type=int, default=None, help="Search step budget.")
@output_option
@reports_errors
def enumerate_witness(source, word, degree, budget, output):
    p = load_presentation(source)
    kwargs = {} if budget is None else {"budget": budget}
    result = witness_nontrivial(p, p.parse_word(word), degree or settings().degree_bound, **kwargs)
    if isinstance(result, Witness):
        emit({"status": "witness", **result.as_dict()}, output)
    else:
        emit({"status": "inconclusive", "reason": result.reason}, output)


@enumerate_group.command("rset")
@click.option("--presentation", "source", required=True)
@click.option("--tuple", "words", required=True, help="Comma-separated words g_1,...,g_l.")
@click.option("--budget", "budget_n", type=int, default=None, help="Budget N.")
@click.option("--degree", type=int, default=None, help="Witness degree bound.")
@output_option
@reports_errors
def enumerate_rset(source, words, budget_n, degree, output):
    p = load_presentation(source)
    g = [p.parse_word(w) for w in words.split(",")]
    config = settings()
    N = config.budget_n if budget_n is None else budget_n
    report = r_set_report(p, g, N, degree or config.degree_bound)
    emit(formats.RSetFile.from_domain(report), output)


# -- verification and corpus ----------------------------------------------------

@cli.command("verify")
@click.option("--only", default=None, help="Run one check, one id prefix or one group.")
@click.option("--budget-scale", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, default=None, help="Override FPFORGE_SEED.")
@click.option("--progress/--no-progress", default=True)
@output_option
@reports_errors
def verify(only, budget_scale, seed, progress, output):
    report = Verifier(settings()).run(only, budget_scale, seed, progress)
    emit(report, output)
    click.echo(report.summary(), err=True)
    finish(not report.failed)


@cli.group("corpus")
def corpus_group():
    """The bundled named complexes and presentations."""


@corpus_group.command("list")
@reports_errors
def corpus_list():
    for name in CorpusLibrary(settings().corpus_dir).list_entries():
        click.echo(name)


@corpus_group.command("show")
@click.argument("name")
@output_option
@reports_errors
def corpus_show(name, output):
    emit(CorpusLibrary(settings().corpus_dir).get_file(name), output)


@corpus_group.command("freeze")
@click.option("--check", is_flag=True, help="Only compare the files with MANIFEST.json.")
@reports_errors
def corpus_freeze(check):
    library = CorpusLibrary(settings().corpus_dir)
    if check:
        drifted = library.verify_manifest()
        for name in drifted:
            click.echo(f"changed: {name}")
        finish(not drifted)
        return
    for name, digest in library.freeze().items():
        click.echo(f"{digest}  {name}.json")


if __name__ == "__main__":
    cli()
