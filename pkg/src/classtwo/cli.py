"""Command-line front end.

Exit codes: 0 success / all comparisons match, 1 verification mismatch,
2 usage error, 3 budget exceeded.  Requested data goes to stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import sys

import click

from classtwo import autos, conjugacy, recipes, verify
from classtwo.catalog import Catalog, load_catalog
from classtwo.ffield import (
    curve_stats,
    elliptic_point_count,
    is_prime,
    quartic_curve_solutions,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _fail_usage(msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_USAGE)


def _parse_prime(_ctx, _param, value):
    if value is None:
        return None
    if not is_prime(value) or value == 2:
        raise click.BadParameter(f"{value} is not an odd prime")
    return value


def _parse_prime_list(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise click.BadParameter(f"bad prime list {text!r}")
    for q in primes:
        if not is_prime(q) or q == 2:
            raise click.BadParameter(f"{q} is not an odd prime")
    return primes


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--catalog", "catalog_path", type=click.Path(exists=True),
              default=None, help="Override the built-in catalog file.")
@click.pass_context
def main(ctx, catalog_path):
    """Class-two exponent-p groups: catalog, invariants, verification."""
    ctx.ensure_object(dict)
    ctx.obj["catalog"] = load_catalog(catalog_path)


def _catalog(ctx) -> Catalog:
    return ctx.obj["catalog"]


@main.command("list")
@click.pass_context
def list_cmd(ctx):
    """Print the census and all entry ids."""
    cat = _catalog(ctx)
    census = cat.census()
    for n in sorted(census):
        click.echo(f"order p^{n}: {census[n]} groups")
    click.echo(f"total: {len(cat.entries)} (plus the order-p^9 group Gp)")
    click.echo(" ".join(e.id for e in cat.entries))


@main.command()
@click.argument("entry_id")
@click.pass_context
def show(ctx, entry_id):
    """Show one entry: presentation, formulas, flags."""
    cat = _catalog(ctx)
    try:
        e = cat.entry(entry_id)
    except KeyError:
        _fail_usage(f"no catalog entry {entry_id!r}")
    gens = ", ".join(chr(ord("a") + i) for i in range(e.k))
    click.echo(f"id: {e.id}")
    click.echo(f"order: p^{e.n}  (k={e.k} generators, derived rank m={e.m})")
    click.echo(f"generators: {gens}")
    click.echo("relators: " + ("; ".join(e.relators) if e.relators else "(free)"))
    if e.class_poly is not None:
        click.echo(f"conjugacy classes: {e.class_poly.text}")
        click.echo(f"|Aut|: {e.aut_formula.text}")
    else:
        click.echo(f"conjugacy classes: {e.classes_curve.text}  (E = elliptic count)")
        click.echo("|Aut|: five congruence cases mod 12 (see `gp`)")
    if e.shape:
        click.echo(f"shape descriptor: {e.shape}")
    if recipes.has_recipe(e.id):
        click.echo("generator recipe: transcribed")


@main.command()
@click.argument("entry_id")
@click.option("-p", "prime", type=int, required=True, callback=_parse_prime)
@click.option("--method", type=click.Choice(["ranksum", "brute"]), default="ranksum")
@click.pass_context
def classes(ctx, entry_id, prime, method):
    """Conjugacy-class count of one group at one prime."""
    cat = _catalog(ctx)
    try:
        pres = cat.instantiate(entry_id, prime)
    except KeyError:
        _fail_usage(f"no catalog entry {entry_id!r}")
    try:
        if method == "ranksum":
            result = conjugacy.class_count_ranksum(pres)
        else:
            result = conjugacy.class_count_bruteforce(pres)
    except conjugacy.BudgetExceeded as ex:
        click.echo(f"budget exceeded: {ex}", err=True)
        sys.exit(EXIT_BUDGET)
    click.echo(result.count)


@main.command()
@click.argument("entry_id")
@click.option("-p", "prime", type=int, required=True, callback=_parse_prime)
@click.option("--method",
              type=click.Choice(["auto", "backtrack", "orbit", "recipe", "derived"]),
              default="auto")
@click.option("--b-order", is_flag=True, help="Print |B| instead of |Aut|.")
@click.pass_context
def aut(ctx, entry_id, prime, method, b_order):
    """Automorphism-group order of one group at one prime."""
    cat = _catalog(ctx)
    try:
        entry = cat.entry(entry_id)
        pres = cat.instantiate(entry_id, prime)
    except KeyError:
        _fail_usage(f"no catalog entry {entry_id!r}")
    try:
        if method == "auto":
            if entry_id == "Gp":
                stab = autos.stabilizer_order_derived(pres)
            else:
                expected = cat.expected_B_order(entry_id, prime)
                if autos.gl_order(entry.k, prime) // expected <= 2 * 10**6:
                    stab = autos.stabilizer_order_orbit(pres)
                else:
                    stab = autos.stabilizer_order_backtrack(pres)
        elif method == "backtrack":
            stab = autos.stabilizer_order_backtrack(pres)
        elif method == "orbit":
            stab = autos.stabilizer_order_orbit(pres)
        elif method == "derived":
            stab = autos.stabilizer_order_derived(pres)
        else:
            gens = recipes.recipe_generators(entry_id, prime)
            order = autos.schreier_sims_order(gens, prime, entry.k)
            stab = autos.StabilizerResult(order, "GENERATORS", len(gens), 0.0)
    except recipes.RecipeUnavailable:
        _fail_usage(f"{entry_id} has no transcribed generator recipe")
    except autos.BudgetExceeded as ex:
        click.echo(f"budget exceeded: {ex}", err=True)
        sys.exit(EXIT_BUDGET)
    click.echo(stab.order if b_order else autos.aut_order(pres, stab))
    click.echo(f"method: {stab.method}", err=True)


@main.command()
@click.option("-p", "prime", type=int, required=True, callback=_parse_prime)
def curve(prime):
    """E (elliptic count) and V_p (quartic system count) at one prime."""
    stats = curve_stats(prime)
    click.echo(f"E={stats.E} V={stats.V}")


@main.command()
@click.option("-p", "prime", type=int, required=True, callback=_parse_prime)
@click.option("--aut/--no-aut", "with_aut", default=False,
              help="Also verify the automorphism case (minutes).")
@click.pass_context
def gp(ctx, prime, with_aut):
    """Verify the order-p^9 group at one prime."""
    cat = _catalog(ctx)
    if prime < 5:
        _fail_usage("the order-p^9 group is verified for p >= 5")
    cfg = verify.RunConfig(gp_aut_primes=(prime,) if with_aut else ())
    record = verify.verify_gp(cat, prime, cfg)
    click.echo(verify.emit_report({"entries": [], "gp": [record]}, "json", None))
    sys.exit(EXIT_OK if record["ok"] else EXIT_MISMATCH)


@main.command()
@click.option("-p", "prime", type=int, required=True, callback=_parse_prime)
@click.pass_context
def dp(ctx, prime):
    """Descendant count D_p of the order-p^9 group (formula evaluation)."""
    cat = _catalog(ctx)
    if prime % 3 == 0:
        _fail_usage("D_p cases cover primes coprime to 12 only")
    click.echo(verify.evaluate_dp(cat, prime))


@main.command("verify")
@click.option("--ids", default=None, help="Comma-separated entry ids (default: all).")
@click.option("--primes", default="3,5,7", help="Primes for class counts.")
@click.option("--aut-primes", default="3", help="Primes for automorphism orders.")
@click.option("--small-k-primes", default="5,7",
              help="Extra automorphism primes for entries with at most 4 generators.")
@click.option("--gp-primes", default="5,7,11,13", help="Primes for order-p^9 class checks.")
@click.option("--gp-aut-primes", default="", help="Primes for order-p^9 automorphism checks.")
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--jobs", type=int, default=1, help="Worker processes.")
@click.option("--backtrack-budget", type=int, default=autos.BACKTRACK_BUDGET)
@click.option("--orbit-budget", type=int, default=autos.ORBIT_BUDGET)
@click.option("--no-recipes", is_flag=True, help="Skip generator-recipe checks.")
@click.option("--no-shapes", is_flag=True, help="Skip shape-descriptor checks.")
@click.pass_context
def verify_cmd(ctx, ids, primes, aut_primes, small_k_primes, gp_primes,
               gp_aut_primes, out_path, fmt, jobs, backtrack_budget,
               orbit_budget, no_recipes, no_shapes):
    """Run the comparison suite and emit a report."""
    cat = _catalog(ctx)
    id_tuple = None
    if ids:
        id_tuple = tuple(tok.strip() for tok in ids.split(",") if tok.strip())
        for entry_id in id_tuple:
            if entry_id != "Gp" and entry_id not in cat.by_id:
                _fail_usage(f"no catalog entry {entry_id!r}")
    try:
        cfg = verify.RunConfig(
            ids=id_tuple,
            class_primes=_parse_prime_list(primes),
            aut_primes=_parse_prime_list(aut_primes),
            aut_small_k_primes=_parse_prime_list(small_k_primes) if small_k_primes else (),
            gp_class_primes=_parse_prime_list(gp_primes) if gp_primes else (),
            gp_aut_primes=_parse_prime_list(gp_aut_primes) if gp_aut_primes else (),
            jobs=jobs,
            backtrack_budget=backtrack_budget,
            orbit_budget=orbit_budget,
            check_recipes=not no_recipes,
            check_shapes=not no_shapes,
        )
    except ValueError as ex:
        _fail_usage(str(ex))
    try:
        report = verify.run_verification(cat, cfg)
    except (autos.BudgetExceeded, conjugacy.BudgetExceeded) as ex:
        click.echo(f"budget exceeded: {ex}", err=True)
        sys.exit(EXIT_BUDGET)
    text = verify.emit_report(report, fmt, out_path)
    if out_path:
        click.echo(f"report written to {out_path}", err=True)
    else:
        click.echo(text, nl=False)
    n_bad = report["mismatch_count"]
    if n_bad:
        click.echo(f"{n_bad} record(s) with mismatches", err=True)
        sys.exit(EXIT_MISMATCH)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--quick", is_flag=True, help="Smaller random samples.")
@click.pass_context
def selftest(ctx, quick):
    """Run the property suites (group laws, functoriality, chain checks)."""
    from classtwo import selftest as st

    failures = st.run(_catalog(ctx), quick=quick, echo=lambda s: click.echo(s))
    sys.exit(EXIT_OK if failures == 0 else EXIT_MISMATCH)


if __name__ == "__main__":
    main()
