"""Command-line entry point: ``vtsep <subcommand> ...``.

Exit codes: 0 checked and passed, 1 checked and failed (violation or
nothing found), 2 usage or input error, 3 budget exhausted or inconclusive.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bounds, covers, generators, graph, ringstruct, symmetry, treewidth, tubes, uncrossing, verify
from .errors import BudgetExhausted, CertificateError, VtsepError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


# -- input helpers ----------------------------------------------------------------

def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse_steps(text: str) -> list:
    return [int(x) for x in text.split(",") if x]


def _family_graph(spec: str):
    """``name:param:...`` built in memory; circulants take a comma list of steps."""
    name, *params = spec.split(":")
    if name in ("circulant", "dcirculant"):
        if len(params) != 2:
            raise UsageError(f"{name} needs n and a step list, e.g. {name}:12:1,2")
        n, steps = int(params[0]), _parse_steps(params[1])
        if name == "circulant":
            return generators.make_circulant(n, generators.symmetric_connection(steps))
        return generators.make_circulant(n, steps, directed=True)
    obj = generators.make_family(name, *(int(p) for p in params))
    return obj


def load_graph(arg: str):
    """A graph file, or a family spec such as ``prism:8`` or ``dcirculant:7:1,2``.

    Family graphs carry their generating automorphisms; window families
    return a :class:`WindowGraph`.
    """
    if os.path.exists(arg):
        return graph.parse_graph(_read(arg))
    if ":" in arg or arg in generators.FAMILIES:
        return _family_graph(arg)
    raise UsageError(f"no such file: {arg}")


def load_plain_graph(arg: str) -> graph.Graph:
    obj = load_graph(arg)
    return obj.graph if isinstance(obj, generators.WindowGraph) else obj


def load_periodic(arg: str) -> generators.PeriodicPresentation:
    if os.path.exists(arg):
        return generators.parse_periodic(_read(arg))
    if arg in generators.PERIODIC_FAMILIES:
        return generators.PERIODIC_FAMILIES[arg]()
    raise UsageError(f"no such periodic presentation: {arg}")


def load_set(arg: str, g=None) -> frozenset:
    """A vertex-set file, or an inline list like ``0,1,2`` or a range ``0-99``."""
    if os.path.exists(arg):
        return graph.parse_vertex_set(_read(arg), g)
    out = set()
    for part in arg.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part[0] + part[1:].split("-", 1)[0], part[1:].split("-", 1)[1]
            out.update(range(int(lo), int(hi) + 1))
        else:
            out.add(int(part))
    if not out:
        raise UsageError(f"could not read a vertex set from {arg!r}")
    return graph.vertex_set(g, out) if g is not None else frozenset(out)


def load_gens(args, g):
    if getattr(args, "gens", None):
        return symmetry.parse_permutations(_read(args.gens))
    return None


def _is_periodic_arg(arg: str) -> bool:
    if arg in generators.PERIODIC_FAMILIES and not os.path.exists(arg):
        return True
    if os.path.exists(arg):
        head = _read(arg).lstrip().split(None, 1)
        return bool(head) and head[0] == "periodic"
    return False


def _fmt_set(A) -> str:
    return " ".join(str(v) for v in sorted(A))


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _write(text: str, path=None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------

def cmd_gen(args) -> int:
    name, params = args.name, args.params
    if name in generators.PERIODIC_FAMILIES:
        if params:
            raise UsageError(f"{name} takes no parameters")
        p = generators.PERIODIC_FAMILIES[name]()
        _write(generators.format_periodic(p), args.output)
        return EXIT_PASS
    if name in ("circulant", "dcirculant"):
        if len(params) < 2:
            raise UsageError(f"{name} needs n followed by at least one step")
        spec = f"{name}:{params[0]}:{','.join(params[1:])}"
    else:
        spec = ":".join([name] + list(params))
    obj = _family_graph(spec)
    g = obj.graph if isinstance(obj, generators.WindowGraph) else obj
    _write(graph.format_graph(g), args.output)
    if args.gens_out:
        if not g.gens:
            raise UsageError(f"family {name} has no attached automorphisms")
        _write(symmetry.format_permutations(g.gens), args.gens_out)
    return EXIT_PASS


def cmd_boundary(args) -> int:
    g = load_plain_graph(args.graph)
    A = load_set(args.set, g)
    prof = graph.boundary_profile(g, A)
    print(f"boundary\t{_fmt_set(prof.vertex_boundary)}")
    print(f"|boundary|\t{len(prof.vertex_boundary)}")
    print(f"|edge_cut|\t{prof.edge_cut_size}")
    if g.directed:
        print(f"out_boundary\t{_fmt_set(prof.out_boundary)}")
        print(f"in_boundary\t{_fmt_set(prof.in_boundary)}")
        print(f"|out_cut|\t{prof.out_cut_size}\n|in_cut|\t{prof.in_cut_size}")
    return EXIT_PASS


def cmd_depth(args) -> int:
    g = load_plain_graph(args.graph)
    A = load_set(args.set, g)
    print(f"depth\t{graph.depth(g, A)}")
    print(f"diameter\t{graph.diameter_of_set(g, A)}")
    return EXIT_PASS


def cmd_growth(args) -> int:
    obj = load_graph(args.graph)
    g = obj.graph if isinstance(obj, generators.WindowGraph) else obj
    kmax = 10 if args.kmax is None else args.kmax
    b = graph.ball_growth(g, args.center, kmax)
    if args.tsv:
        print("n\tb(n)")
    for n, x in enumerate(b):
        print(f"{n}\t{x}")
    if args.plot:
        from .plotting import plot_growth
        plot_growth(b, args.plot, title=f"growth of {args.graph}")
    return EXIT_PASS


def cmd_aut(args) -> int:
    g = load_plain_graph(args.graph)
    res = symmetry.find_automorphisms(g, node_limit=args.budget or 200_000)
    transitive, orb = symmetry.orbit_transitivity(g.n, res.generators) if res.generators else (g.n <= 1, [])
    print(f"# order {res.order}; {len(res.generators)} generators; "
          f"{'transitive' if transitive else 'not transitive'}")
    _write(symmetry.format_permutations(res.generators), args.output)
    return EXIT_PASS if transitive else EXIT_FAIL


def cmd_blocks(args) -> int:
    g = load_plain_graph(args.graph)
    gens = symmetry.require_transitive(g, load_gens(args, g))
    systems = symmetry.enumerate_block_systems(g.n, gens, complete=args.complete)
    for i, sys_ in enumerate(systems):
        kind = "trivial" if sys_.trivial else "proper"
        print(f"# system {i}: {len(sys_.blocks)} blocks of size {sys_.block_size} ({kind})")
        sys.stdout.write(symmetry.format_blocks(sys_))
    return EXIT_PASS


def cmd_quotient(args) -> int:
    g = load_plain_graph(args.graph)
    sys_ = symmetry.parse_blocks(_read(args.blocks), g.n)
    gens = load_gens(args, g)
    if gens is not None and not symmetry.is_block_system(sys_, gens):
        print("# partition is not invariant under the generators", file=sys.stderr)
        return EXIT_FAIL
    _write(graph.format_graph(symmetry.quotient_graph(g, sys_)), args.output)
    return EXIT_PASS


def cmd_uncross(args) -> int:
    g = load_plain_graph(args.graph)
    rep = uncrossing.uncrossing_report(g, load_set(args.set1, g), load_set(args.set2, g))
    print(f"k1\t{rep.k1}\nk2\t{rep.k2}")
    for label, lhs, rhs, ok in zip(("i", "ii"), rep.lhs, rep.rhs, rep.holds):
        print(f"({label})\t{lhs} <= {rhs}\t{'ok' if ok else 'FAIL'}")
    if rep.iii_applicable:
        print(f"(iii)\t|Q∪U| = {rep.iii_value}, k = {rep.iii_k}\t{'ok' if rep.holds[2] else 'FAIL'}")
    else:
        print("(iii)\tnot applicable")
    return EXIT_PASS if rep.ok else EXIT_FAIL


def _tube_from_args(g, A, s, t, L=None, R=None):
    if L is not None and R is not None:
        return tubes.verify_tube(g, A, L, R, s, t)
    part = tubes.find_boundary_partition(g, A, s, t)
    if part is None:
        return None
    return tubes.verify_tube(g, A, part[0], part[1], s, t)


def cmd_tube(args) -> int:
    g = load_plain_graph(args.graph)
    A = load_set(args.set, g)
    L = load_set(args.left, g) if args.left else None
    R = load_set(args.right, g) if args.right else None
    try:
        cert = _tube_from_args(g, A, args.s, args.t, L, R)
    except CertificateError as e:
        print(f"rejected: {e}")
        return EXIT_FAIL
    if cert is None:
        print(f"no ({args.s},{args.t})-tube partition of the boundary")
        return EXIT_FAIL
    s, t = tubes.side_parameters(g, cert.L, cert.R)
    print(f"L\t{_fmt_set(cert.L)}\nR\t{_fmt_set(cert.R)}")
    print(f"tight s\t{s}\ntight t\t{t}")
    return EXIT_PASS


def cmd_merge(args) -> int:
    g = load_plain_graph(args.graph)
    c1 = _tube_from_args(g, load_set(args.set1, g), args.s, args.t)
    c2 = _tube_from_args(g, load_set(args.set2, g), args.s, args.t)
    if c1 is None or c2 is None:
        print("an input set is not an (s,t)-tube")
        return EXIT_FAIL
    st = tubes.merge_status(g, c1, c2)
    print("nonempty\t" + " ".join(f"{k}={int(v)}" for k, v in sorted(st.nonempty.items())))
    print(f"sides1\t{int(st.sides1)}\nsides2\t{int(st.sides2)}\nU_empty\t{int(st.U_empty)}")
    if not st.merge:
        print("merge\tno")
        return EXIT_FAIL
    m = tubes.merge_tubes(g, c1, c2)
    print(f"merge\tyes\nA\t{_fmt_set(m.A)}\nL\t{_fmt_set(m.L)}\nR\t{_fmt_set(m.R)}\ns\t{m.s}\nt\t{m.t}")
    return EXIT_PASS


def _print_ring(cert) -> None:
    print(f"s\t{cert.s}\nt\t{cert.t}\nst\t{cert.st}\ntight\t{int(cert.tight)}")
    if cert.cohesive_q is not None:
        print(f"cohesive_q\t{cert.cohesive_q}")


def cmd_ring(args) -> int:
    if _is_periodic_arg(args.graph):
        p = load_periodic(args.graph)
        cert = ringstruct.detect_periodic_ring(p)
        if cert is None:
            print("no ring-like structure found")
            return EXIT_FAIL
        print(f"period\t{cert.period}\noffset\t{' '.join(map(str, cert.offset))}")
        _print_ring(cert)
        return EXIT_PASS
    g = load_plain_graph(args.graph)
    cert = ringstruct.detect_ring(g, load_gens(args, g), max_t=args.tmax, complete=args.complete)
    if cert is None:
        print("no ring-like structure found")
        return EXIT_FAIL
    print(f"blocks\t{cert.cyclic.m}")
    print("order\t" + " ".join(map(str, cert.cyclic.order)))
    _print_ring(cert)
    return EXIT_PASS


def cmd_kappa(args) -> int:
    p = load_periodic(args.presentation)
    res = ringstruct.kappa_infinity(p, start=args.window)
    print(res.value)
    if args.verbose:
        print("cut\t" + " ".join(f"{v}@{i}" for v, i in res.cut))
    return EXIT_PASS


def cmd_interval(args) -> int:
    g = load_plain_graph(args.graph)
    A = load_set(args.set, g)
    cert = ringstruct.detect_ring(g, load_gens(args, g), max_t=args.tmax, complete=True)
    if cert is None:
        print("no ring-like structure found")
        return EXIT_FAIL
    cover = ringstruct.interval_cover(g, cert, A)
    if cover is None:
        print("A meets every block; no proper interval covers it")
        return EXIT_FAIL
    print(f"s\t{cert.s}\nt\t{cert.t}\nblocks\t{' '.join(map(str, cover.J))}")
    print(f"k\t{cover.k}\nexcess\t{cover.excess}\nbound\t{cover.bound}")
    return EXIT_PASS if cover.holds else EXIT_FAIL


def cmd_cover(args) -> int:
    base = load_plain_graph(args.graph)
    mu = covers.parse_voltage(_read(args.voltage), base) if args.voltage else covers.VoltageMap.zero(base)
    if args.transform:
        S = load_set(args.delta_set, base) if args.delta_set else frozenset()
        mu = covers.transform_voltage(mu, args.transform, S, args.m)
        sys.stdout.write("# transformed voltage\n" + covers.format_voltage(mu))
    L = args.window or 4
    cw = covers.build_cover_window(mu, L)
    comps = graph.components(cw.window.graph)
    inner = cw.window.interior
    print(f"window\t{L}\nvertices\t{cw.window.graph.n}\ncomponents\t{len(comps)}")
    print(f"interior_components\t{sum(1 for c in comps if c & inner)}")
    print("cycle_sums\t" + " ".join(map(str, covers.cycle_sums(mu))))
    if args.output:
        _write(graph.format_graph(cw.window.graph), args.output)
    return EXIT_PASS


def cmd_bounds(args) -> int:
    g = load_plain_graph(args.graph)
    gens = load_gens(args, g)
    prof = bounds.min_boundary_profile(g, connected=True, exclude_full=args.exclude_full,
                                       budget=args.budget, jobs=args.jobs)
    if args.tsv:
        sys.stdout.write(bounds.format_profile_tsv(prof))
    else:
        for e in prof:
            print(f"|A|={e.size}\tmin|∂A|={e.min_vertex_boundary}\tmin|δA|={e.min_edge_cut}")
    if args.plot:
        from .plotting import plot_profile
        plot_profile(prof, args.plot, title=f"boundary profile of {args.graph}")
    rep = bounds.bound_report(g, gens, budget=args.budget)
    for c in rep.checks:
        tag = "ok" if c.holds else "VIOLATION"
        if c.name == "babai_szegedy":
            print(f"# {c.name}: {c.observed} sets checked\t{tag}")
        else:
            print(f"# {c.name}: observed {c.observed} >= {_fmt_frac(c.bound)}"
                  f"{' (tight)' if c.tight else ''}\t{tag}")
    return EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_sumset(args) -> int:
    p = args.p
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise UsageError("give both --A and --B")
        tbl = generators.cyclic_group(p)
        A, B = load_set(args.A), load_set(args.B)
        C = bounds.sumset(tbl, A, B)
        bound = min(p, len(A) + len(B) - 1)
        print(f"A+B\t{_fmt_set(C)}\n|A+B|\t{len(C)}\nbound\t{bound}")
        return EXIT_PASS if len(C) >= bound or not bounds.is_prime(p) else EXIT_FAIL
    rep = bounds.cauchy_davenport_check(p)
    print(f"pairs\t{rep.pairs}\nviolations\t{len(rep.violations)}\ntight\t{rep.tight}")
    return EXIT_PASS if not rep.violations else EXIT_FAIL


def cmd_conjecture(args) -> int:
    g = load_plain_graph(args.graph)
    rep = bounds.depth_ratio_explorer(g, budget=args.budget or 200_000, seed=args.seed)
    print(f"ratio\t{_fmt_frac(rep.ratio)}\nwitness\t{_fmt_set(rep.witness)}")
    print(f"boundary\t{rep.boundary}\ndepth\t{rep.depth}\nsets\t{rep.sets}")
    print(f"mode\t{'sampled' if rep.sampled else 'exhaustive'}\nseed\t{args.seed}")
    if args.plot:
        from .plotting import plot_ratios
        plot_ratios(rep.by_size, rep.ratio, args.plot, title=f"depth ratio on {args.graph}")
    return EXIT_PASS


def cmd_td(args) -> int:
    g = load_plain_graph(args.graph)
    if args.search is not None:
        td = treewidth.greedy_td_search(g, args.search, budget=args.budget or 100_000)
        if td is None:
            print(f"no decomposition of width below {args.search}")
            return EXIT_FAIL
        _write(treewidth.format_td(td, g.n), args.output)
        return EXIT_PASS
    if not args.td:
        raise UsageError("give a decomposition file or --search K")
    td = treewidth.parse_td(_read(args.td), g)
    print(f"width\t{treewidth.verify_td(g, td)}")
    return EXIT_PASS


def cmd_balsep(args) -> int:
    g = load_plain_graph(args.graph)
    td = treewidth.parse_td(_read(args.td), g)
    W = load_set(args.weights, g)
    S = treewidth.balanced_separator(g, td, W, args.k)
    print(f"separator\t{_fmt_set(S)}\nsize\t{len(S)}")
    return EXIT_PASS


def cmd_verify_main(args) -> int:
    g = load_plain_graph(args.graph)
    rest = args.inputs
    if len(rest) > 2:
        raise UsageError("expected [GENS] [A]")
    gens = symmetry.parse_permutations(_read(rest[0])) if len(rest) == 2 else load_gens(args, g)
    if rest:
        A = load_set(rest[-1], g)
        o = verify.main_dichotomy(g, gens, A, relax_diameter=args.relax_diameter)
        if args.tsv:
            print(verify.TSV_HEADER)
            print(verify.outcome_tsv(0, o))
        else:
            print(f"case\t{o.case}\nk\t{o.k}\n|A|\t{o.size}")
            for name in ("depth", "degree", "diameter", "s", "t", "excess"):
                val = getattr(o, name)
                if val is not None:
                    print(f"{name}\t{val}")
            if o.reason:
                print(f"reason\t{o.reason}")
        return _case_exit(o.case)
    kmax = args.kmax if args.kmax is not None else 3
    summary = verify.scan_main(g, gens, kmax, budget=args.budget, jobs=args.jobs,
                               seed=args.seed, relax_diameter=args.relax_diameter)
    if args.tsv:
        sys.stdout.write(summary.tsv())
    print(f"# seed {summary.seed}; {len(summary.rows)} candidates; "
          + ", ".join(f"{k}={v}" for k, v in sorted(summary.counts.items())),
          file=sys.stderr if args.tsv else sys.stdout)
    if summary.violation is not None:
        cid, A, o = summary.violation
        print(f"VIOLATION candidate {cid}: A = {_fmt_set(A)}; {o}")
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE if summary.exhausted else EXIT_PASS


def _case_exit(case: str) -> int:
    if case == "VIOLATION":
        return EXIT_FAIL
    if case in ("inconclusive", "unsupported"):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def cmd_verify_cor110(args) -> int:
    dg = load_plain_graph(args.graph)
    A = load_set(args.set, dg)
    o = verify.eulerian_cor110(dg, load_gens(args, dg), A)
    print(f"case\t{o.case}\nk\t{o.k}\nundirected_k\t{o.undirected_k}\n|A|\t{o.size}")
    for name in ("route", "chain_ok", "s", "t", "excess"):
        val = getattr(o, name)
        if val is not None:
            print(f"{name}\t{val}")
    if o.reason:
        print(f"reason\t{o.reason}")
    return _case_exit(o.case)


def cmd_verify_cor17(args) -> int:
    n_max = 10 if args.kmax is None else args.kmax
    if _is_periodic_arg(args.graph):
        obj = load_periodic(args.graph)
    else:
        obj = load_graph(args.graph)
    rep = verify.growth_cor17(obj, n_max, center=args.center, gens=load_gens(args, obj)
                              if isinstance(obj, graph.Graph) else None)
    if args.tsv:
        print("n\tb(n)\tn(n+1)/2\tok")
        for n, b in enumerate(rep.growth):
            print(f"{n}\t{b}\t{n * (n + 1) // 2}\t{int(2 * b > n * (n + 1))}")
    else:
        print("growth\t" + " ".join(map(str, rep.growth)))
        print(f"growth_ok\t{int(rep.growth_ok)}")
        if rep.ring is not None:
            print(f"ring\ts={rep.ring.s} t={rep.ring.t}")
        for n, dep, k, ok in rep.clause:
            print(f"clause\tn={n} depth={dep} |∂|={k}\t{'ok' if ok else 'FAIL'}")
    if args.plot:
        from .plotting import plot_growth
        plot_growth(rep.growth, args.plot, title=f"growth of {args.graph}")
    return EXIT_PASS if rep.holds else EXIT_FAIL


def cmd_verify_cor19(args) -> int:
    g = load_plain_graph(args.graph)
    td = treewidth.parse_td(_read(args.td), g) if args.td else None
    o = verify.cor19_check(g, load_gens(args, g), args.k, td_hint=td, budget=args.budget or 100_000)
    print(f"status\t{o.status}\noutcomes\t{' '.join(o.outcomes) or '-'}")
    print(f"degree\t{o.degree}\ndiameter\t{o.diameter}")
    if o.ring is not None:
        print(f"ring\ts={o.ring.s} t={o.ring.t}")
    if o.td_width is not None:
        print(f"td_width\t{o.td_width}")
    if o.reason:
        print(f"reason\t{o.reason}")
    return {"ok": EXIT_PASS, "VIOLATION": EXIT_FAIL}.get(o.status, EXIT_INCONCLUSIVE)


def _thm3_group(spec: str):
    name, *params = spec.split(":")
    if name == "integer":
        return verify.IntegerGroup()
    if name == "free":
        return verify.FreeGroup(int(params[0]) if params else 2)
    if name == "cyclic":
        return generators.cyclic_group(int(params[0]))
    if name == "dihedral":
        return generators.dihedral_group(int(params[0]))
    if name == "symmetric":
        return generators.symmetric_group(int(params[0]))
    raise UsageError(f"unknown group {spec!r}")


def cmd_verify_thm3(args) -> int:
    group = _thm3_group(args.group)
    if isinstance(group, verify.FreeGroup):
        if args.ball is None:
            raise UsageError("free groups take --ball R")
        B = group.ball(1)
        A = group.ball(args.ball)
    else:
        if args.B is None or args.A is None:
            raise UsageError("give B and A")
        B, A = load_set(args.B), load_set(args.A)
    rep = verify.thm3_check(group, B, A)
    print(f"|A|\t{rep.size_A}\n|BA|\t{rep.size_BA}\nhypothesis\t{int(rep.hypothesis)}")
    print(f"margin\t{rep.margin:.6f}")
    if rep.N_size is not None:
        print(f"|N|\t{rep.N_size}\nquotient\t{rep.quotient}\nN_bound_ok\t{int(rep.N_bound_ok)}")
    if rep.finite_group:
        print("note\tfinite group: the statement targets infinite groups")
    print(f"status\t{rep.status}")
    if rep.status == "VIOLATION":
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE if rep.status == "no ring found" else EXIT_PASS


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled searches")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--budget", type=int, default=None, help="search budget")
    common.add_argument("--tsv", action="store_true", help="tab-separated output")
    common.add_argument("--window", type=int, default=None, metavar="L", help="window half-width")
    common.add_argument("--kmax", type=int, default=None, help="largest k (or n) to examine")
    common.add_argument("--tmax", type=int, default=None, help="largest ring parameter t")
    common.add_argument("--plot", default=None, metavar="PATH", help="write a PNG figure")
    common.add_argument("--gens", default=None, metavar="PERM_FILE", help="generating automorphisms")

    ap = argparse.ArgumentParser(prog="vtsep", description="Separation structure of vertex-transitive graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "write a generated graph or periodic presentation")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.add_argument("--gens-out")

    p = add("boundary", cmd_boundary, "vertex boundary and edge cut of a set")
    p.add_argument("graph")
    p.add_argument("set")
    p = add("depth", cmd_depth, "depth and diameter of a set")
    p.add_argument("graph")
    p.add_argument("set")
    p = add("growth", cmd_growth, "ball sizes b(0..kmax)")
    p.add_argument("graph")
    p.add_argument("--center", type=int, default=0)

    p = add("aut", cmd_aut, "automorphism group generators")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p = add("blocks", cmd_blocks, "block systems of the generated group")
    p.add_argument("graph")
    p.add_argument("--complete", action="store_true", help="all systems, not just minimal ones")
    p = add("quotient", cmd_quotient, "quotient graph by a block system")
    p.add_argument("graph")
    p.add_argument("blocks")
    p.add_argument("-o", "--output")

    p = add("uncross", cmd_uncross, "uncrossing inequalities for two sets")
    p.add_argument("graph")
    p.add_argument("set1")
    p.add_argument("set2")
    p = add("tube", cmd_tube, "check or find an (s,t)-tube partition")
    p.add_argument("graph")
    p.add_argument("set")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--left")
    p.add_argument("--right")
    p = add("merge", cmd_merge, "merge two (s,t)-tubes")
    p.add_argument("graph")
    p.add_argument("set1")
    p.add_argument("set2")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)

    p = add("ring", cmd_ring, "detect a ring-like structure")
    p.add_argument("graph", help="graph file, family spec, or periodic presentation")
    p.add_argument("--complete", action="store_true")
    p = add("kappa", cmd_kappa, "vertex connectivity between the two ends")
    p.add_argument("presentation")
    p.add_argument("-v", "--verbose", action="store_true")
    p = add("interval", cmd_interval, "smallest block interval covering a set")
    p.add_argument("graph")
    p.add_argument("set")
    p = add("cover", cmd_cover, "window of a voltage cover")
    p.add_argument("graph")
    p.add_argument("voltage", nargs="?")
    p.add_argument("--transform", choices=["negate", "add_delta"])
    p.add_argument("--delta-set")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("-o", "--output")

    p = add("bounds", cmd_bounds, "boundary profile and classical bounds")
    p.add_argument("graph")
    p.add_argument("--exclude-full", action="store_true", help="require A plus its boundary to miss a vertex")
    p = add("sumset", cmd_sumset, "Cauchy-Davenport check in Z_p")
    p.add_argument("p", type=int)
    p.add_argument("--A")
    p.add_argument("--B")
    p = add("conjecture", cmd_conjecture, "least depth ratio over connected sets")
    p.add_argument("graph")

    p = add("td", cmd_td, "validate or search a tree decomposition")
    p.add_argument("graph")
    p.add_argument("td", nargs="?")
    p.add_argument("--search", type=int, metavar="K", help="find width below K")
    p.add_argument("-o", "--output")
    p = add("balsep", cmd_balsep, "balanced separator from a decomposition")
    p.add_argument("graph")
    p.add_argument("td")
    p.add_argument("weights")
    p.add_argument("--k", type=int, required=True)

    p = add("verify-main", cmd_verify_main, "main dichotomy for one set, or a scan")
    p.add_argument("graph")
    p.add_argument("inputs", nargs="*", metavar="[GENS] [A]")
    p.add_argument("--relax-diameter", action="store_true")
    p = add("verify-cor110", cmd_verify_cor110, "dichotomy for Eulerian digraphs")
    p.add_argument("graph")
    p.add_argument("set")
    p = add("verify-cor17", cmd_verify_cor17, "growth bound or ring certificate")
    p.add_argument("graph", help="graph, family spec, or periodic presentation")
    p.add_argument("--center", type=int, default=None)
    p = add("verify-cor19", cmd_verify_cor19, "ring, tree-width or small-degree trichotomy")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--td")
    p = add("verify-thm3", cmd_verify_thm3, "small product sets")
    p.add_argument("group", help="integer, free[:rank], cyclic:n, dihedral:n or symmetric:m")
    p.add_argument("B", nargs="?")
    p.add_argument("A", nargs="?")
    p.add_argument("--ball", type=int)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (UsageError, VtsepError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
