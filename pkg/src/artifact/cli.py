"""Command line front end.

Every JSON document carries a "schema": 1 field and is serialized with
sorted keys and fixed separators, so repeated runs produce byte-identical
output.  Module errors are reported as machine-readable JSON on stderr
with a nonzero exit code.
"""

import functools
import json
import os
import sys

import click

from . import fixtures as fixture_corpus
from . import laurent, mirror, sagbi, toricgit
from .ladder import build_ladder, build_ladder_quiver, render_ladder
from .quivers import (QuiverError, is_fano_certificate, validate_quiver,
                      vertex_stats, y_shape_decompose)

SCHEMA = 1

_ERRORS = (QuiverError, toricgit.GitError, laurent.LaurentError,
           mirror.MirrorError, sagbi.SagbiError)


def _dumps(data):
    data = dict(data)
    data["schema"] = SCHEMA
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _threads():
    try:
        return max(1, int(os.environ.get("ARTIFACT_THREADS", "1")))
    except ValueError:
        return 1


def _fail(exc):
    doc = _dumps({"error": {"type": type(exc).__name__, "message": str(exc)}})
    click.echo(doc, err=True)
    sys.exit(2)


def _wrap_errors(fn):
    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _ERRORS as exc:
            _fail(exc)
    return inner


def _load_quiver_spec(path):
    """Read a quiver from a JSON file or take a named corpus entry."""
    if os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        q = validate_quiver(data["adjacency"], data["dims"])
        return q, data.get("branch1_leaf")
    if path in fixture_corpus.FIXTURES:
        fx = fixture_corpus.get(path)
        return fx.quiver(), fx.branch1_leaf
    raise QuiverError("no such file or fixture: %s" % path)


def _load_bundle_spec(path):
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    if path in fixture_corpus.FIXTURES:
        spec = fixture_corpus.get(path).bundle
        if spec is None:
            raise mirror.MirrorError("fixture %s has no bundle" % path)
        return spec
    raise mirror.MirrorError("no such file or fixture: %s" % path)


def _build(path):
    q, hint = _load_quiver_spec(path)
    ld = build_ladder(q, branch1_leaf=hint)
    lq = build_ladder_quiver(ld)
    return q, ld, lq


def _load_poly(path):
    with open(path) as fh:
        text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        return laurent.from_json(stripped)
    return laurent.parse_polynomial(stripped)


def _mirror_setup(quiver, bundle):
    q, ld, lq = _build(quiver)
    spec = _load_bundle_spec(bundle)
    return mirror.mirror_problem(q, ld, lq, spec)


@click.group()
def main():
    """Toric degenerations and mirror candidates for quiver flag varieties."""


quiver_opt = click.option("--quiver", "quiver", required=True,
                          help="Quiver JSON file or fixture name.")
bundle_opt = click.option("--bundle", "bundle", required=True,
                          help="Bundle spec JSON file or fixture name.")
json_opt = click.option("--json", "as_json", is_flag=True,
                        help="Emit a single JSON document.")


def _stats_doc(q, hint):
    st = vertex_stats(q)
    dec = y_shape_decompose(q, branch1_leaf=hint)
    nv = q.vertex_count
    return {
        "vertices": nv,
        "dims": [q.r(i) for i in range(nv)],
        "s": {str(i): st.s[i] for i in range(1, nv)},
        "s_prime": {str(i): st.s_prime[i] for i in range(1, nv)},
        "tilde_s": {str(i): st.tilde_s[i] for i in range(1, nv)},
        "total_dim": sum(st.dim_contribution.values()),
        "fano_certificate": is_fano_certificate(q),
        "branch1": list(dec.branch1),
        "branch2": list(dec.branch2),
    }


@main.command()
@quiver_opt
@json_opt
@_wrap_errors
def validate(quiver, as_json):
    """Validate a quiver and print its basic invariants."""
    q, hint = _load_quiver_spec(quiver)
    doc = _stats_doc(q, hint)
    doc["valid"] = True
    if as_json:
        click.echo(_dumps(doc))
    else:
        click.echo("valid quiver: %d vertices, dims %s, total_dim %d, fano %s"
                   % (doc["vertices"], doc["dims"], doc["total_dim"],
                      doc["fano_certificate"]))


@main.command()
@quiver_opt
@json_opt
@_wrap_errors
def stats(quiver, as_json):
    """Step and section counts for each vertex."""
    q, hint = _load_quiver_spec(quiver)
    doc = _stats_doc(q, hint)
    if as_json:
        click.echo(_dumps(doc))
        return
    click.echo("vertex\ts\ts'\ts~\tdim")
    st = vertex_stats(q)
    for i in range(1, q.vertex_count):
        click.echo("%d\t%d\t%d\t%d\t%d"
                   % (i, st.s[i], st.s_prime[i], st.tilde_s[i],
                      st.dim_contribution[i]))
    click.echo("total\t\t\t\t%d" % doc["total_dim"])


@main.command()
@quiver_opt
@click.option("--render", "render", default=None, type=click.Path(),
              help="Write a figure of the diagram to this file.")
@json_opt
@_wrap_errors
def ladder(quiver, render, as_json):
    """Ladder diagram and its path quiver."""
    q, ld, lq = _build(quiver)
    doc = {
        "boxes": sorted(list(b) for b in ld.boxes),
        "marked": sorted([list(p), role] for p, role in ld.marked.items()),
        "externals": {str(i): list(p) for i, p in ld.externals.items()},
        "vertices": len(lq.vertices),
        "arrows": len(lq.arrows),
    }
    if render:
        render_ladder(ld, render, lq=lq)
        doc["figure"] = render
    if as_json:
        click.echo(_dumps(doc))
    else:
        click.echo("ladder: %d boxes, %d marked vertices, %d arrows"
                   % (len(ld.boxes), doc["vertices"], doc["arrows"]))
        if render:
            click.echo("figure written to %s" % render)


@main.command()
@quiver_opt
@json_opt
@_wrap_errors
def gitdata(quiver, as_json):
    """Weight matrix and stability vector of the degeneration."""
    q, ld, lq = _build(quiver)
    gd = toricgit.git_data(lq)
    rows = [[col[i] for col in gd.weights] for i in range(gd.rank)]
    doc = {"rank": gd.rank, "arrows": len(gd.weights),
           "weights": rows, "stability": list(gd.stability)}
    if as_json:
        click.echo(_dumps(doc))
    else:
        for row in rows:
            click.echo("\t".join(str(x) for x in row))
        click.echo("w\t" + "\t".join(str(x) for x in gd.stability))


@main.command()
@quiver_opt
@click.option("--check", "check", is_flag=True,
              help="Compare against brute-force minimal anticones.")
@json_opt
@_wrap_errors
def meanders(quiver, check, as_json):
    """Meander enumeration (maximal cones of the fan)."""
    q, ld, lq = _build(quiver)
    gd = toricgit.git_data(lq)
    ms = toricgit.meanders(lq, q)
    doc = {"meanders": len(ms)}
    if check:
        supports = {m.support for m in ms}
        cones = {frozenset(c) for c in
                 toricgit.minimal_anticones_bruteforce(gd)}
        doc["anticones"] = len(cones)
        doc["agree"] = supports == cones
    if as_json:
        click.echo(_dumps(doc))
    else:
        line = "meanders: %d" % doc["meanders"]
        if check:
            line += " | anticones: %d | agree: %s" % (doc["anticones"],
                                                      doc["agree"])
        click.echo(line)
    if check and not doc["agree"]:
        sys.exit(1)


@main.command()
@quiver_opt
@json_opt
@_wrap_errors
def gorenstein(quiver, as_json):
    """Cartier certificates and the anticanonical identity."""
    q, ld, lq = _build(quiver)
    gd = toricgit.git_data(lq)
    ok = toricgit.gorenstein_check(gd, q)
    if as_json:
        click.echo(_dumps({"gorenstein": ok}))
    else:
        click.echo("gorenstein: %s" % ok)


@main.command("mirror")
@quiver_opt
@bundle_opt
@click.option("--emit", "emit",
              type=click.Choice(["poly", "weights", "partition"]),
              default="poly", help="Which artifact to print.")
@json_opt
@_wrap_errors
def mirror_cmd(quiver, bundle, emit, as_json):
    """Laurent polynomial mirror candidate for a bundle on a quiver."""
    mp = _mirror_setup(quiver, bundle)
    if emit == "weights":
        doc = {"weights": [list(c) for c in mp.weights],
               "stability": list(mp.stability),
               "bundles": [list(c) for c in mp.bundles],
               "dimension": mp.dimension()}
        click.echo(_dumps(doc) if as_json else json.dumps(doc, indent=1))
        return
    cp = mirror.find_convex_partition(mp)
    if emit == "partition":
        doc = {"b0": list(cp.b0), "b1": list(cp.b1),
               "blocks": [list(s) for s in cp.blocks],
               "distinguished": {str(i): j
                                 for i, j in sorted(cp.distinguished.items())}}
        click.echo(_dumps(doc) if as_json else json.dumps(doc, indent=1))
        return
    f = mirror.przyjalkowski(mp, cp)
    if as_json:
        click.echo(_dumps({"poly": json.loads(f.to_json())}))
    else:
        click.echo(laurent.format_polynomial(f))


@main.command()
@click.option("--quiver", "quiver", default=None,
              help="Quiver JSON file or fixture name.")
@click.option("--bundle", "bundle", default=None,
              help="Bundle spec JSON file or fixture name.")
@click.option("--poly", "poly", default=None, type=click.Path(exists=True),
              help="Polynomial file (text or JSON) instead of a mirror problem.")
@click.option("--source", "source",
              type=click.Choice(["laurent", "toric"]), default="laurent",
              help="Constant-term period or the formal quantum period.")
@click.option("--n", "n", default=10, show_default=True,
              help="Number of period terms beyond the constant term.")
@json_opt
@_wrap_errors
def period(quiver, bundle, poly, source, n, as_json):
    """Classical period sequence."""
    if poly is not None:
        f = _load_poly(poly)
        coeffs = list(laurent.classical_period(f, n).coefficients)
    else:
        if quiver is None or bundle is None:
            raise laurent.LaurentError(
                "need either --poly or both --quiver and --bundle")
        mp = _mirror_setup(quiver, bundle)
        if source == "toric":
            coeffs = list(mirror.toric_ci_period(mp, n).coefficients)
        else:
            cp = mirror.find_convex_partition(mp)
            f = mirror.przyjalkowski(mp, cp)
            coeffs = list(laurent.classical_period(f, n).coefficients)
    if as_json:
        click.echo(_dumps({"source": source if poly is None else "poly",
                           "coefficients": [str(c) for c in coeffs]}))
    else:
        click.echo(" ".join(str(c) for c in coeffs))


@main.command()
@click.option("--poly", "poly", required=True, type=click.Path(exists=True),
              help="Polynomial file (text or JSON).")
@json_opt
@_wrap_errors
def polytope(poly, as_json):
    """Newton polytope statistics of a Laurent polynomial."""
    f = _load_poly(poly)
    np = laurent.newton_polytope(f)
    doc = {"dim": np.dim, "vertices": len(np.vertices),
           "lattice_points": len(np.lattice_points),
           "normalized_volume": np.normalized_volume}
    if as_json:
        click.echo(_dumps(doc))
    else:
        click.echo("dim %d, %d vertices, %d lattice points, volume %d"
                   % (np.dim, doc["vertices"], doc["lattice_points"],
                      doc["normalized_volume"]))


@main.command()
@click.option("--poly", "poly", required=True, type=click.Path(exists=True),
              help="Polynomial file (text or JSON).")
@click.option("--factor", "factor", required=True,
              help="Mutation factor in one fewer variable, as text.")
@click.option("--check", "check", is_flag=True,
              help="Verify the period is preserved to --n terms.")
@click.option("--n", "n", default=10, show_default=True)
@json_opt
@_wrap_errors
def mutate(poly, factor, check, n, as_json):
    """One-step mutation with the last variable as pivot."""
    f = _load_poly(poly)
    h = laurent.parse_polynomial(factor, n_vars=f.n_vars - 1)
    g = laurent.mutate(f, h)
    doc = {"poly": json.loads(g.to_json())}
    if check:
        same = (laurent.classical_period(f, n) ==
                laurent.classical_period(g, n))
        doc["period_preserved"] = same
    if as_json:
        click.echo(_dumps(doc))
    else:
        click.echo(laurent.format_polynomial(g))
        if check:
            click.echo("period preserved to %d terms: %s"
                       % (n, doc["period_preserved"]))
    if check and not doc["period_preserved"]:
        sys.exit(1)


@main.command("sagbi-verify")
@quiver_opt
@click.option("--degree", "degree", default=2, show_default=True,
              help="Degree bound for the binomial kernel check.")
@_wrap_errors
def sagbi_verify(quiver, degree):
    """Initial-term path bijection and binomial kernel report."""
    q, hint = _load_quiver_spec(quiver)
    rep = sagbi.verify_path_bijection(q, branch1_leaf=hint)
    kern = sagbi.verify_binomial_kernels(q, degree, branch1_leaf=hint)
    mismatches = []
    bijection = {}
    for i in sorted(rep["vertices"]):
        info = rep["vertices"][i]
        bijection[str(i)] = "pass" if info["match"] else "fail"
        mismatches.extend([str(m) for m in info["mismatches"]])
    mismatches.extend([str(m) for m in kern["mismatches"]])
    doc = {"bijection": bijection, "kernel_classes": kern["classes"],
           "mismatches": mismatches}
    click.echo(_dumps(doc))
    if mismatches or not rep["ok"] or not kern["ok"]:
        sys.exit(1)


@main.group()
def fixtures():
    """Bundled example corpus."""


@fixtures.command("list")
@json_opt
@_wrap_errors
def fixtures_list(as_json):
    """Names and shapes of the bundled fixtures."""
    if as_json:
        doc = {"fixtures": {
            name: {"dims": fx.dims, "bundle": fx.bundle is not None,
                   "composite": fx.product is not None}
            for name, fx in fixture_corpus.FIXTURES.items()}}
        click.echo(_dumps(doc))
        return
    for name in fixture_corpus.names():
        fx = fixture_corpus.get(name)
        kind = "composite" if fx.product else \
            ("zero locus" if fx.bundle else "ambient")
        click.echo("%s\t%s\t%s" % (name, fx.dims, kind))


@fixtures.command("run")
@click.option("--only", "only", multiple=True,
              help="Restrict to the named fixtures (repeatable).")
@click.option("--report", "report", default=None, type=click.Path(),
              help="Directory for the result table and diagram figures.")
@_wrap_errors
def fixtures_run(only, report):
    """Recompute every recorded artifact and print a pass/fail table."""
    workers = _threads()
    results = fixture_corpus.run_all(only=set(only) or None, workers=workers)
    lines = ["fixture\tcheck\tstatus\tdetail"]
    failed = 0
    for name in sorted(results):
        for (key, ok, detail) in results[name]:
            if not ok:
                failed += 1
            lines.append("%s\t%s\t%s\t%s"
                         % (name, key, "PASS" if ok else "FAIL", detail))
    table = "\n".join(lines)
    click.echo(table)
    total = sum(len(v) for v in results.values())
    click.echo("%d checks, %d failed" % (total, failed))
    if report:
        os.makedirs(report, exist_ok=True)
        with open(os.path.join(report, "fixtures.tsv"), "w") as fh:
            fh.write(table + "\n")
        for name in sorted(results):
            fx = fixture_corpus.get(name)
            try:
                q, ld, lq = fx.build()
            except _ERRORS:
                continue
            render_ladder(ld, os.path.join(report, "%s.png" % name), lq=lq)
        click.echo("report written to %s" % report)
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
