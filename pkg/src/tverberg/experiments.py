"""Registered experiments; each returns a verdict and a deterministic JSON-ready report."""

from dataclasses import dataclass

from . import __version__
from ._rng import substream
from .engine import Outcome, find_tverberg_partition, refute_occurrence
from .engine.orbits import collapse_orbit, random_affine_join_map
from .engine.plmap import affine_pl_map, build_counterexample_map, search_map_violation
from .generators import moment_curve_points, random_rational_config
from .geometry import Status, in_general_position, strong_general_position_check
from .partitions import (
    DimensionTuple,
    admissible_tuples,
    build_colorful_partition,
    is_colorful,
)
from .topology import circle_join_power, homology, multiple_chessboard, simplex_boundary, verify_constraint_zero_set

PASS, VIOLATED, INCONCLUSIVE = "pass", "violated", "inconclusive"


class ExperimentError(ValueError):
    pass


def trial_seed(seed, index):
    return substream(seed, index).next_u64()


def balanced_dims(r, d):
    q, rem = divmod((r - 1) * d, r)
    return (q,) * (r - rem) + (q + 1,) * rem


def _worst(verdicts):
    for v in (VIOLATED, INCONCLUSIVE):
        if v in verdicts:
            return v
    return PASS


def tverberg_existence(r, d, trials, seed, budget=None, workers=1):
    n = (r - 1) * (d + 1) + 1
    rows = []
    for t in range(trials):
        cfg = random_rational_config(n, d, trial_seed(seed, t))
        res = find_tverberg_partition(cfg, r, budget=budget, workers=workers)
        ok = res.status is Outcome.FOUND and res.witness.residual_free(cfg)
        verdict = PASS if ok else INCONCLUSIVE if res.status is Outcome.BUDGET else VIOLATED
        rows.append({"trial": t, "verdict": verdict, "status": res.status.value, **_found(res)})
    return rows


def _found(res):
    if res.status is not Outcome.FOUND:
        return {"partition": None, "point": None}
    return {"partition": [list(p) for p in res.partition.parts], "point": res.witness.to_dict()["point"]}


def balanced_search(r, d, trials, seed, dims=None, budget=None, workers=1):
    dims = tuple(dims) if dims else balanced_dims(r, d)
    sizes = tuple(x + 1 for x in dims)
    n = (r - 1) * (d + 2) + 1
    rows = []
    for t in range(trials):
        cfg = random_rational_config(n, d, trial_seed(seed, t))
        res = find_tverberg_partition(cfg, r, sizes=sizes, budget=budget, workers=workers)
        ok = res.status is Outcome.FOUND and res.witness.residual_free(cfg)
        verdict = PASS if ok else INCONCLUSIVE if res.status is Outcome.BUDGET else VIOLATED
        rows.append({"trial": t, "sizes": list(sizes), "verdict": verdict, "status": res.status.value, **_found(res)})
    return rows


def colorful_builder_sweep(rmax, dmax):
    rows = []
    for r in range(2, rmax + 1):
        for d in range(1, dmax + 1):
            for t in admissible_tuples(r, d):
                p = build_colorful_partition(t)
                ok = is_colorful(p, r, d) and p.sizes == tuple(x + 1 for x in t.dims)
                rows.append({"r": r, "d": d, "dims": list(t.dims), "verdict": PASS if ok else VIOLATED})
    return rows


def phi_verify(r, d, dims=None, n=None):
    dims = tuple(dims) if dims else balanced_dims(r, d)
    n = (r - 1) * (d + 2) if n is None else n
    rep = verify_constraint_zero_set(n, r, DimensionTuple(r, d, dims))
    return [{"r": r, "d": d, "n": n, "dims": list(dims), "verdict": PASS if rep.passed else VIOLATED, **rep.to_dict()}]


def moment_refute(dmin, dmax, nmin, nmax, budget=None, workers=1):
    """Two-part refutation covers every r: a small part meeting the others meets their union."""
    rows = []
    for d in range(dmin, dmax + 1):
        for n in range(nmin, nmax + 1):
            cfg = moment_curve_points(d, list(range(1, n + 1)))
            for s in range(1, d // 2 + 1):
                res = refute_occurrence(cfg, 2, (s, n - s), budget=budget, workers=workers)
                verdict = {Outcome.EXHAUSTED: PASS, Outcome.FOUND: VIOLATED}.get(res.status, INCONCLUSIVE)
                rows.append({"d": d, "n": n, "sizes": [s, n - s], "verdict": verdict, **res.to_dict()})
    return rows


def cexmap_probe(r, d, n, d1, samples, seed, dims, gseed=6, workers=1):
    if len(dims) != r:
        raise ExperimentError(f"need {r} face dimensions, got {list(dims)}")
    g = random_rational_config(n + 1, d - 1, gseed)
    gp = in_general_position(g)
    sgp = [strong_general_position_check(g, k, 10 ** 6, max_part_size=d - 1) for k in range(2, r + 1)]
    rows = [{"check": "general-position", "verdict": PASS if gp.status is Status.HOLDS else VIOLATED}]
    for k, v in enumerate(sgp, start=2):
        verdict = {Status.HOLDS: PASS, Status.VIOLATED: VIOLATED}.get(v.status, INCONCLUSIVE)
        rows.append({"check": f"strong-general-position r={k}", "verdict": verdict, "tuples": v.checked})
    f = build_counterexample_map(n, d, d1, g)
    res = search_map_violation(f, r, dims, samples, seed=seed, workers=workers)
    verdict = VIOLATED if res.status is Outcome.FOUND else PASS
    rows.append({"check": f"probe dims={list(dims)}", "verdict": verdict, **res.to_dict()})
    control_dims = balanced_dims(r, d)
    generic = random_rational_config(n + 1, d, gseed)
    affine = affine_pl_map(generic)
    ctl = search_map_violation(affine, r, control_dims, samples, seed=seed, workers=workers)
    found = ctl.status is Outcome.FOUND and ctl.witness.verify(affine, ctl.partition.parts)
    rows.append(
        {
            "check": f"affine control dims={list(control_dims)}",
            "verdict": PASS if found else VIOLATED,
            **ctl.to_dict(),
        }
    )
    return rows


def orbit_collapse(r, d, trials, seed, n=None):
    n = (r - 1) * d if n is None else n
    rows = []
    for t in range(trials):
        f = random_affine_join_map(r, n, d, trial_seed(seed, t))
        res = collapse_orbit(f)
        images = {f(res.point.shifted(k)) for k in range(r)}
        rows.append({"trial": t, "verdict": PASS if len(images) == 1 else VIOLATED, **res.to_dict()})
    return rows


def sphere_homology(r, k, nmax):
    cases = [("circle_join_power", circle_join_power(r, k).complex, 2 * k - 1)]
    cases += [(f"boundary_delta_{n}", simplex_boundary(n), n - 1) for n in range(1, nmax + 1)]
    cases.append(("chessboard_3_2", multiple_chessboard(3, 2, (1, 1)), 1))
    rows = []
    for name, cx, sphere in cases:
        h = homology(cx)
        expected = tuple(int(i == sphere) for i in range(cx.dim + 1))
        ok = h.betti == expected and not any(h.torsion) and h.betti_minus_one == 0
        rows.append({"complex": name, "sphere_dim": sphere, "verdict": PASS if ok else VIOLATED, **h.to_dict()})
    return rows


@dataclass(frozen=True)
class Experiment:
    func: object
    defaults: dict
    seeded: bool = False


REGISTRY = {
    "tverberg-existence": Experiment(tverberg_existence, {"r": 3, "d": 2, "trials": 50}, True),
    "balanced-search": Experiment(balanced_search, {"r": 3, "d": 2, "trials": 50, "dims": None}, True),
    "colorful-builder-sweep": Experiment(colorful_builder_sweep, {"rmax": 6, "dmax": 6}),
    "phi-verify": Experiment(phi_verify, {"r": 2, "d": 1, "dims": None, "n": None}),
    "moment-refute": Experiment(moment_refute, {"dmin": 2, "dmax": 4, "nmin": 9, "nmax": 11}),
    "cexmap-probe": Experiment(
        cexmap_probe, {"r": 3, "d": 3, "n": 13, "d1": 1, "samples": 100_000, "gseed": 6, "dims": (1, 2, 3)}, True
    ),
    "orbit-collapse": Experiment(orbit_collapse, {"r": 3, "d": 2, "trials": 100, "n": None}, True),
    "sphere-homology": Experiment(sphere_homology, {"r": 3, "k": 2, "nmax": 5}),
}

LIST_PARAMS = {"dims"}


def parse_params(pairs, defaults):
    params = dict(defaults)
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or key not in defaults:
            raise ExperimentError(f"unknown parameter {pair!r}; expected one of {sorted(defaults)}")
        try:
            params[key] = tuple(int(x) for x in value.split(",")) if key in LIST_PARAMS else int(value)
        except ValueError:
            raise ExperimentError(f"parameter {key} needs an integer value, got {value!r}") from None
    return params


def run_experiment(name, pairs=(), seed=0, budget=None, workers=1):
    """Run a registered experiment; returns ``(verdict, report)``.

    The report holds no timings, so equal inputs give byte-identical JSON.
    """
    if name not in REGISTRY:
        raise ExperimentError(f"unknown experiment {name!r}; choose from {sorted(REGISTRY)}")
    exp = REGISTRY[name]
    params = parse_params(pairs, exp.defaults)
    kwargs = dict(params)
    if exp.seeded:
        kwargs["seed"] = seed
    code = exp.func.__code__
    accepted = code.co_varnames[: code.co_argcount]
    if "budget" in accepted:
        kwargs["budget"] = budget
    elif "samples" in accepted and budget is not None:
        kwargs["samples"] = budget
    if "workers" in accepted:
        kwargs["workers"] = workers
    rows = exp.func(**kwargs)
    verdict = _worst([row["verdict"] for row in rows])
    report = {
        "experiment": name,
        "version": __version__,
        "seed": seed,
        "params": {k: list(v) if isinstance(v, tuple) else v for k, v in sorted(params.items())},
        "budget": budget,
        "verdict": verdict,
        "summary": {v: sum(row["verdict"] == v for row in rows) for v in (PASS, VIOLATED, INCONCLUSIVE)},
        "rows": rows,
    }
    return verdict, report
