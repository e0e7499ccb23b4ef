"""Run orchestration: each ``run_*`` returns a JSON-ready document with a manifest.

Rationals are written as "p/q" strings and weights as coordinate arrays.
The result payload is serialized with sorted keys, so identical parameters
give byte-identical payloads; the manifest records its SHA-256 digest.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .affine import level_for
from .poly import ParamPoly, fraction_str

SCHEMA_VERSION = 1
DEFAULT_MAX_COLUMNS = 12000


class RefusedError(RuntimeError):
    """The requested computation exceeds the configured size budget."""


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, ParamPoly):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def payload_bytes(result: dict) -> bytes:
    return json.dumps(jsonable(result), sort_keys=True, indent=2, ensure_ascii=False).encode()


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str = __version__
    wall_time: float = 0.0
    digest: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": jsonable(self.parameters),
            "version": self.version,
            "wall_time_seconds": round(self.wall_time, 3),
            "result_digest": self.digest,
            "schema": SCHEMA_VERSION,
        }


def finish(command: str, params: dict, result: dict, ok: bool, started: float) -> dict:
    result = jsonable({**result, "certified": ok})
    man = RunManifest(command, params, wall_time=time.perf_counter() - started)
    man.digest = hashlib.sha256(payload_bytes(result)).hexdigest()
    return {"manifest": man.to_dict(), "result": result}


def resolve_level(n: int, m: int | None = None, q: int | None = None) -> tuple[Fraction, int]:
    """k = -n + (n-1)/q; for n = 3, m gives q = 2m + 1."""
    if (m is None) == (q is None):
        raise ValueError("give exactly one of m or q")
    if m is not None:
        if n != 3:
            raise ValueError("m parametrizes levels for n = 3 only; use q")
        if m < 0:
            raise ValueError("m must be non-negative")
        q = 2 * m + 1
    if q < 1:
        raise ValueError("q must be positive")
    return level_for(n, q), q


def default_targets(n: int, q: int) -> list[tuple[int, tuple[int, ...]]]:
    if n == 3:
        return [(3 * q, (2, 1)), (3 * q, (1, 2))]
    return [(2 * q, (1,) + (2,) * (n - 3) + (1,))]


# -- singular ---------------------------------------------------------------------


def run_singular(n: int, m: int | None = None, q: int | None = None, depth: int | None = None,
                 weight: Sequence[int] | None = None, max_columns: int = DEFAULT_MAX_COLUMNS) -> dict:
    from .pbw import (VacuumModule, apply_mode, cartan_part, cartan_power_product, coefficient_report,
                      estimate_size, format_vector, normalize, singular_vectors)
    from .lie import sl

    started = time.perf_counter()
    k, q = resolve_level(n, m, q)
    if (depth is None) != (weight is None):
        raise ValueError("give both depth and weight, or neither")
    targets = default_targets(n, q) if depth is None else [(depth, tuple(weight))]
    for d, mu in targets:
        if len(mu) != n - 1:
            raise ValueError(f"weight {mu} needs {n - 1} coordinates")
        cols = estimate_size(n, d, mu)
        if cols > max_columns:
            raise RefusedError(
                f"weight space (depth {d}, weight {list(mu)}) has {cols} columns and about "
                f"{cols * (n * n - 1 + n - 1)} operator rows; the limit is {max_columns} columns"
            )
    module = VacuumModule(n, k)
    alg = sl(n)
    solves = []
    ok = True
    for d, mu in targets:
        vecs = singular_vectors(k, n, d, mu, module=module)
        entry: dict = {"depth": d, "weight": list(mu), "columns": estimate_size(n, d, mu), "dimension": len(vecs)}
        ok = ok and len(vecs) == 1
        if len(vecs) == 1:
            v = vecs[0]
            if n == 3 and mu == (2, 1) and d == 3 * q:
                mm = (q - 1) // 2
                v = normalize(v, mm)
                rep = coefficient_report(v, mm)
                rels = rep.relations()
                entry["coefficients"] = rep.to_dict()
                entry["relations"] = {name: all(x == 0 for x in vals) for name, vals in rels.items()}
                entry["leading_a_index"] = rep.first_nonzero_a()
                h1, h2 = alg.h(1), alg.h(2)
                lowered = apply_mode(alg.f(1, 2), 0, apply_mode(alg.f(1, 3), 0, v))
                e = 2 * mm + 1
                target = cartan_power_product(module, [(h1, e), (h2, e), (h1 + h2, e)])
                entry["cartan_part_matches"] = cartan_part(lowered) == target.terms
                ok = ok and all(entry["relations"].values()) and entry["leading_a_index"] == 2 * mm
                ok = ok and entry["cartan_part_matches"]
            entry["vector"] = format_vector(alg, v.terms)
            entry["terms"] = len(v.terms)
        solves.append(entry)
    params = {"n": n, "k": k, "m": m, "q": q, "targets": [[d, list(mu)] for d, mu in targets]}
    claim = "singular vectors generating the maximal ideal of V^k(sl_n) at k = -n + (n-1)/q"
    return finish("singular", params, {"claim": claim, "solves": solves}, ok, started)


# -- variety ----------------------------------------------------------------------


def expected_verdicts(m: int) -> dict[str, bool]:
    """Whether the generator symbols vanish on each class (True = vanishes)."""
    if m == 0:
        return {"zero": True, "min_nilpotent": True, "regular_nilpotent": False,
                "semisimple_sheet": True, "mixed_sheet": False, "generic_cartan": False}
    return {"zero": True, "min_nilpotent": True, "regular_nilpotent": True,
            "semisimple_sheet": True, "mixed_sheet": True, "generic_cartan": False}


def run_variety(m: int, seed: int, samples: int = 20) -> dict:
    from .c2 import class_dimension, class_rep, variety_certificate
    from .pbw import VacuumModule, singular_vectors

    started = time.perf_counter()
    k, q = resolve_level(3, m=m)
    module = VacuumModule(3, k)
    gens = []
    for d, mu in default_targets(3, q):
        vecs = singular_vectors(k, 3, d, mu, module=module)
        if len(vecs) != 1:
            raise RuntimeError(f"expected one singular vector at depth {d}, weight {mu}, got {len(vecs)}")
        gens.append(vecs[0])
    cert = variety_certificate(gens, k, seed=seed, samples=samples)
    want = expected_verdicts(m)
    ok = True
    for row in cert["classes"]:
        vanish = row["verdict"] == "vanishes"
        row["expected"] = "vanishes" if want[row["class"]] else "nonvanishing"
        ok = ok and vanish == want[row["class"]] and row["samples_vanish"] in (None, True)
    top = "semisimple_sheet" if m == 0 else "mixed_sheet"
    cert["variety_dimension"] = class_dimension(class_rep(top), seed=seed)
    cert["variety_class"] = top
    params = {"n": 3, "k": k, "m": m, "q": q, "seed": seed, "samples": samples}
    claim = "associated variety of L_k(sl_3) at k = -3 + 2/(2m+1), class by class"
    return finish("variety", params, {"claim": claim, **cert}, ok, started)


# -- slice ------------------------------------------------------------------------


def run_slice(kind: str, seed: int, samples: int = 25) -> dict:
    import random

    from .c2 import membership
    from .slodowy import (intersect_with_class, minimal_slice, regular_slice, same_variety, sample_solution,
                          slice_point, variety_dimension)

    started = time.perf_counter()
    if kind not in ("minimal", "regular"):
        raise ValueError("slice kind must be 'minimal' or 'regular'")
    S = minimal_slice() if kind == "minimal" else regular_slice()
    cons = intersect_with_class(S)
    other = intersect_with_class(S, order=tuple(S.params))
    flipped = intersect_with_class(S, orientation=-1)
    dim = variety_dimension(S, cons)
    rng = random.Random(seed)
    passed = 0
    for _ in range(samples):
        pt = sample_solution(cons, rng)
        if pt is not None and membership(slice_point(S, pt), "mixed_sheet_closure", seed=seed)[0]:
            passed += 1
    expected_dim = 3 if kind == "minimal" else 1
    order_free = same_variety(cons, other, seed=seed)
    ok = dim == expected_dim and passed == samples and order_free
    result = {
        "claim": f"associated variety of the W-algebra for the {kind} nilpotent, as a slice intersection",
        "slice_matrix": [[str(x) for x in row] for row in S.matrix.rows],
        "parameters": list(S.params) + ["mu"],
        "constraints": [str(c) for c in cons],
        "constraints_opposite_orientation": [str(c) for c in flipped],
        "dimension": dim,
        "membership_passed": f"{passed}/{samples}",
        "elimination_order_independent": order_free,
    }
    return finish("slice", {"slice": kind, "seed": seed, "samples": samples}, result, ok, started)


# -- character --------------------------------------------------------------------


def run_character(n: int, depth: int, m: int | None = None, q: int | None = None, brute_depth: int = 5) -> dict:
    from .characters import brute_force_character, character_table, compare, decompose, vacuum_table
    from .pbw import VacuumModule, singular_vectors

    started = time.perf_counter()
    k, q = resolve_level(n, m, q)
    table = character_table(k, n, depth)
    vac = compare(table, vacuum_table(k, n, depth))
    first = vac.first_depth()
    result: dict = {
        "claim": "closed character formula for L_k(sl_n) against explicit quotients",
        "formula_table": [[d, list(mu), v] for d, mu, v in table.rows()],
        "vs_universal": vac.to_dict(),
        "first_difference_depth": first,
    }
    if first is not None:
        diff = {mu: -x for mu, x in vac.at_depth(first).items()}
        result["first_difference_highest_weights"] = [[list(hw), mult] for hw, mult in decompose(n, diff)]
    ok = True
    bd = min(depth, brute_depth)
    if q == 1 or bd < min(d for d, _ in default_targets(n, q)):
        module = VacuumModule(n, k)
        gens = []
        for d, mu in default_targets(n, q):
            if d <= bd:
                gens.extend(singular_vectors(k, n, d, mu, module=module))
        brute = brute_force_character(module, gens, bd)
        cmp = compare(table, brute)
        result["vs_brute_force"] = cmp.to_dict()
        ok = cmp.empty
    else:
        result["vs_brute_force"] = None
    params = {"n": n, "k": k, "m": m, "q": q, "depth": depth, "brute_force_depth": bd}
    return finish("character", params, result, ok, started)


# -- zhu --------------------------------------------------------------------------


def run_zhu(m: int, seed: int, cap: int = 6, samples: int = 50) -> dict:
    from .pbw import VacuumModule, singular_vectors
    from .zhu import ZhuMap, canonical_polys, characteristic_variety_test, hc_projection, weight_zero_elements

    started = time.perf_counter()
    k, q = resolve_level(3, m=m)
    module = VacuumModule(3, k)
    zmap = ZhuMap(module)
    seeds = []
    for d, mu in default_targets(3, q):
        vecs = singular_vectors(k, 3, d, mu, module=module)
        if len(vecs) != 1:
            raise RuntimeError(f"expected one singular vector at depth {d}, weight {mu}, got {len(vecs)}")
        seeds.append(zmap(vecs[0]))
    if max(s.degree() for s in seeds) > cap:
        raise ValueError(f"degree cap {cap} is below the degree of the seeds")
    elems = weight_zero_elements(seeds, cap)
    polys = canonical_polys(hc_projection(u) for u in elems)
    report = characteristic_variety_test(polys, m, seed=seed, samples=samples, cap=cap)
    ok = bool(polys) and report.families_vanish and report.all_witnessed
    result = {
        "claim": "characteristic variety of the maximal ideal contains the conjectured weight families",
        "weight_zero_elements": len(elems),
        **report.to_dict(),
    }
    return finish("zhu", {"n": 3, "k": k, "m": m, "q": q, "seed": seed, "degree_cap": cap, "samples": samples}, result, ok, started)


# -- selftest ---------------------------------------------------------------------


def run_selftest(seed: int) -> dict:
    """Fast structural checks across the modules."""
    from .affine import AffineWeylElement, beta0, root, theta
    from .c2 import standard_polynomials, symbol
    from .lie import bracket, normalized_form, sl
    from .pbw import VacuumModule, central_charge, singular_vectors

    started = time.perf_counter()
    checks: dict[str, bool] = {}
    for n in (3, 4):
        alg = sl(n)
        basis = [alg.basis_element(i) for i in range(alg.dim)]
        jac = True
        inv = True
        for x in basis:
            for y in basis:
                for z in basis:
                    s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
                    jac = jac and not s
                    inv = inv and normalized_form(bracket(x, y), z) == normalized_form(x, bracket(y, z))
        checks[f"jacobi_sl{n}"] = jac
        checks[f"form_invariance_sl{n}"] = inv
    for qq in (2, 3, 5):
        n = 4
        b = AffineWeylElement.s(beta0(n, qq))
        st = AffineWeylElement.s(root(n, theta(n)))
        checks[f"s_beta0_s_theta_q{qq}"] = b * st == AffineWeylElement.t(n, [qq * x for x in theta(n)])
    checks["central_charge_k-1"] = central_charge(-1, 3) == -4
    module = VacuumModule(3, -1)
    u1 = singular_vectors(-1, 3, 3, (2, 1), module=module)
    checks["u1_one_dimensional"] = len(u1) == 1
    if u1:
        p1 = standard_polynomials()["p1"]
        s = symbol(u1[0])
        checks["symbol_u1_proportional_p1"] = bool(s) and s * p1.leading_coefficient() == p1 * s.leading_coefficient()
    ok = all(checks.values())
    return finish("selftest", {"seed": seed}, {"claim": "structural self-checks", "checks": checks}, ok, started)

