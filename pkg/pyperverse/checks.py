"""Verification suites behind the commands: each returns ``(results, verdicts)``."""
import logging
from math import factorial
from typing import Dict, Optional, Tuple

import numpy as np
from sympy.functions.combinatorial.numbers import stirling

from .algebra import (QuadraticQuiverAlgebra, algebra_A, algebra_B, build_algebra, canonical_form, graded_dimensions,
                      opposite, quadratic_dual)
from .complex import SimplicialComplex, barycentric_subdivision
from .koszul import ext_vs_dual, koszulity_check
from .models import Verdict
from .perversity import Perversity
from .quiver import build_quiver
from .sheaf import (SIGN_LEDGER, CellularData, anchor_order_check, composite_map, incidence_order_check, phi,
                    projective_object, projective_support, psi, random_object, tea_agreement, validate_sobject,
                    validate_tea)
from .triangulation import PerverseTriangulation, verify_partition

Outcome = Tuple[dict, Dict[str, Verdict]]


def _passed(flag: bool, witness: Optional[dict] = None) -> Verdict:
    return Verdict(True, None) if flag else Verdict(False, witness or {})


def _first_block_difference(left, right) -> Optional[dict]:
    a, b = canonical_form(left), canonical_form(right)
    if a[:2] != b[:2]:
        return {"reason": "quivers differ"}
    q = left.quiver
    blocks_a = {(s, e): (paths, rows) for s, e, paths, rows in a[2]}
    blocks_b = {(s, e): (paths, rows) for s, e, paths, rows in b[2]}
    for key in sorted(set(blocks_a) | set(blocks_b)):
        if blocks_a.get(key) != blocks_b.get(key):
            return {"block": [q.node_key(key[0]), q.node_key(key[1])],
                    "ranks": [len(blocks_a.get(key, ((), ()))[1]), len(blocks_b.get(key, ((), ()))[1])]}
    return None


def census_checks(complex_: SimplicialComplex) -> Outcome:
    results = {
        "vertices": list(complex_.labels),
        "dimension": complex_.dimension,
        "f_vector": list(complex_.f_vector),
        "euler_characteristic": complex_.euler_characteristic,
        "maximal_simplices": [complex_.key(s) for s in complex_.maximal_simplices],
        "components": len(complex_.components),
    }
    return results, {"valid": Verdict(True, None)}


def expected_flag_census(complex_: SimplicialComplex) -> Tuple[int, ...]:
    """Chains ending at a d-simplex with L members are ordered partitions of its d + 1 vertices into L blocks."""
    return tuple(sum(factorial(length) * int(stirling(s.dim + 1, length)) for s in complex_.simplices)
                 for length in range(1, complex_.dimension + 2))


def subdivision_checks(complex_: SimplicialComplex) -> Outcome:
    sub = barycentric_subdivision(complex_)
    census, expected = sub.census(), expected_flag_census(complex_)
    results = {
        "flags": len(sub.flags),
        "by_length": {str(d + 1): n for d, n in enumerate(census)},
        "members": [sub.flag_key(g) for g in sub.flags],
    }
    return results, {"census": _passed(census == expected, {"found": list(census), "expected": list(expected)})}


def triangulation_checks(complex_: SimplicialComplex, delta: Perversity, clamp: bool = False) -> Outcome:
    tri = PerverseTriangulation(complex_, delta)
    results = tri.census()
    if clamp:
        results["skeleta"] = {str(k): len(tri.skeleton(k, clamp=True)) for k in range(delta.min - 1, delta.max + 2)}
    ok, witness = verify_partition(tri)
    verdicts = {
        "partition": _passed(ok, witness),
        "anchors": anchor_order_check(complex_, -delta),
        "order": incidence_order_check(complex_, delta),
    }
    if delta.is_top:
        # each top-perversity simplex is the open simplex: flags ending at it
        stray = [tri.subdivision.flag_key(g) for g, s in tri.anchors.items() if g.chain[-1] != s]
        verdicts["open_simplices"] = _passed(not stray, {"flags": stray[:5]})
    return results, verdicts


def quiver_checks(complex_: SimplicialComplex, delta: Perversity) -> Outcome:
    q = build_quiver(complex_, delta)
    results = {"perversity": list(delta.values), **q.to_json()}
    wrong = [q.arrow_key(a) for a in q.arrows if delta.level(a[0]) != delta.level(a[1]) + 1]
    verdicts = {
        "levels": _passed(not wrong, {"arrows": wrong}),
        "opposite": _passed(build_quiver(complex_, -delta) == q.opposite()),
    }
    return results, verdicts


def algebra_checks(complex_: SimplicialComplex, delta: Perversity, which: str,
                   max_degree: Optional[int] = None) -> Outcome:
    alg = build_algebra(which, complex_, delta)
    other = build_algebra("B" if which.upper() == "A" else "A", complex_, delta)
    q = alg.quiver
    dims = graded_dimensions(alg, max_degree)
    blocks = []
    ranks_ok = True
    for (s, e), paths in q.length2_blocks.items():
        found = alg.relations.block(s, e)
        rank = found.rank if found is not None else 0
        expected = 1 if alg.label == "A" else len(paths) - 1
        ranks_ok &= rank == expected
        blocks.append({"block": [q.node_key(s), q.node_key(e)], "paths": len(paths), "rank": rank})
    results = {
        "algebra": alg.label,
        "perversity": list(delta.values),
        "arrows": [q.arrow_key(a) for a in q.arrows],
        "blocks": blocks,
        "graded_dimensions": dims,
        "total_dimension": sum(dims),
        "definitive": bool(dims) and dims[-1] == 0,
    }
    verdicts = {"block_ranks": _passed(ranks_ok, {"blocks": blocks})}
    if dims:
        verdicts["degree_zero"] = _passed(dims[0] == len(q.nodes), {"found": dims[0], "nodes": len(q.nodes)})
    if len(dims) > 1:
        verdicts["degree_one"] = _passed(dims[1] == len(q.arrows), {"found": dims[1], "arrows": len(q.arrows)})
    if len(dims) > 2:
        second = len(alg.basis(2)) + len(other.basis(2))
        verdicts["degree_two"] = _passed(second == len(q.paths(2)), {"sum": second, "paths": len(q.paths(2))})
    return results, verdicts


def dual_checks(complex_: SimplicialComplex, delta: Perversity,
                alg: Optional[QuadraticQuiverAlgebra] = None) -> Outcome:
    alg = alg if alg is not None else algebra_A(complex_, delta)
    dual = quadratic_dual(alg)
    expected = algebra_B(complex_, -delta)
    q = alg.quiver
    results = {
        "algebra": alg.label,
        "perversity": list(delta.values),
        "blocks": [{"block": [q.node_key(b.source), q.node_key(b.target)], "paths": len(b.paths),
                    "rank": b.rank, "dual_rank": len(b.paths) - b.rank} for b in alg.relations.blocks],
    }
    verdicts = {
        "quadratic_dual": _passed(dual == expected, _first_block_difference(dual, expected)),
        "double_dual": _passed(quadratic_dual(dual) == alg, _first_block_difference(quadratic_dual(dual), alg)),
    }
    return results, verdicts


def opposite_checks(complex_: SimplicialComplex, delta: Perversity,
                    alg: Optional[QuadraticQuiverAlgebra] = None) -> Outcome:
    alg = alg if alg is not None else algebra_B(complex_, delta)
    flipped = opposite(algebra_B(complex_, -delta))
    results = {"algebra": alg.label, "perversity": list(delta.values), "relations": alg.relations.rank}
    verdicts = {
        "opposite": _passed(alg == flipped, _first_block_difference(alg, flipped)),
        "involution": _passed(opposite(opposite(alg)) == alg),
        "quiver": _passed(build_quiver(complex_, -delta) == alg.quiver.opposite()),
    }
    return results, verdicts


def sample_seeds(seed: int, samples: int) -> list:
    return [int(s) for s in np.random.default_rng(seed).integers(0, 2 ** 31, size=samples)]


def roundtrip_checks(complex_: SimplicialComplex, delta: Perversity, samples: int, seed: int,
                     budget: int = 2) -> Outcome:
    """Psi undoes Phi on random objects and Phi undoes Psi on their images; chains agree throughout."""
    q = build_quiver(complex_, delta)
    pairs = [(a, b) for a in q.nodes for b in q.nodes if q.leq(a, b)]
    failures = {"psi_phi": None, "phi_psi": None, "membership": None, "tea": None}
    dimensions = []
    for sample_seed in sample_seeds(seed, samples):
        obj = random_object(complex_, delta, sample_seed, budget)
        dimensions.append(sum(obj.stalks.values()))
        for a, b in pairs:
            composite_map(obj, a, b)
        image = phi(obj)
        if failures["membership"] is None and not (membership := validate_sobject(image)):
            failures["membership"] = {"seed": sample_seed, **membership.witness}
        back = psi(image)
        if failures["tea"] is None and not validate_tea(back):
            failures["tea"] = {"seed": sample_seed}
        if failures["psi_phi"] is None and not back.same_as(obj):
            failures["psi_phi"] = {"seed": sample_seed}
        if failures["phi_psi"] is None and not phi(back).same_as(image):
            failures["phi_psi"] = {"seed": sample_seed}
    logging.info(f"Round trips on {samples} objects over {complex_.dimension}-dimensional complex done")
    results = {"perversity": list(delta.values), "samples": samples, "comparable_pairs": len(pairs),
               "total_dimensions": dimensions}
    return results, {name: _passed(witness is None, witness) for name, witness in failures.items()}


def object_roundtrip_checks(obj: CellularData) -> Outcome:
    """The round trip of one given R-object; an object outside the equivalence axiom stops at that verdict."""
    results = {"perversity": list(obj.perversity.values), "total_dimension": sum(obj.stalks.values())}
    tea = validate_tea(obj)
    if not tea:
        return results, {"input_tea": tea}
    image = phi(obj)
    back = psi(image)
    return results, {
        "input_tea": tea,
        "membership": validate_sobject(image),
        "psi_phi": _passed(back.same_as(obj)),
        "phi_psi": _passed(phi(back).same_as(image)),
    }


def koszul_checks(complex_: SimplicialComplex, delta: Perversity, which: str, max_steps: int = 16,
                  alg: Optional[QuadraticQuiverAlgebra] = None) -> Outcome:
    alg = alg if alg is not None else build_algebra(which, complex_, delta)
    verdict, tables = koszulity_check(alg, max_steps)
    dimension = max((t["length"] for t in tables.values()), default=0)
    width = delta.max - delta.min
    results = {"algebra": alg.label, "perversity": list(delta.values), "simples": tables,
               "global_dimension": dimension}
    verdicts = {
        "linear": verdict,
        "bounded": _passed(dimension <= width, {"global_dimension": dimension, "width": width}),
    }
    return results, verdicts


def extdual_checks(complex_: SimplicialComplex, delta: Perversity, max_steps: int = 16,
                   alg: Optional[QuadraticQuiverAlgebra] = None) -> Outcome:
    """Ext of A against B and of B against A; a given algebra is held against the other base."""
    a, b = algebra_A(complex_, delta), algebra_B(complex_, delta)
    if alg is not None:
        partner = b if alg.label.startswith("A") else a
        verdict, report = ext_vs_dual(alg, partner, max_steps)
        return {"perversity": list(delta.values), "algebra": alg.label, "against": partner.label,
                "report": report}, {"ext": verdict}
    ext_a, report_a = ext_vs_dual(a, b, max_steps)
    ext_b, report_b = ext_vs_dual(b, a, max_steps)
    results = {"perversity": list(delta.values), "A": report_a, "B": report_b}
    return results, {"ext_A": ext_a, "ext_B": ext_b}


def tea_checks(complex_: SimplicialComplex, delta: Perversity, samples: int, seed: int, budget: int = 2) -> Outcome:
    verdict = tea_agreement(complex_, delta, samples, seed, budget)
    return {"perversity": list(delta.values), "samples": samples}, {"agreement": verdict}


def projective_checks(complex_: SimplicialComplex, delta: Perversity) -> Outcome:
    """Indecomposable projectives of B are R-objects with one-dimensional stalks on their support."""
    alg = algebra_B(complex_, delta)
    q = alg.quiver
    supports, witness = {}, None
    for v in q.nodes:
        support = projective_support(alg, v)
        supports[q.node_key(v)] = [q.node_key(w) for w in support]
        obj = projective_object(alg, complex_, delta, v)
        thin = all(obj.stalks[w] == 1 for w in support)
        if witness is None and not (thin and validate_tea(obj) and set(support) == {w for w in q.nodes if q.leq(v, w)}):
            witness = {"projective": q.node_key(v)}
    return {"supports": supports}, {"projectives": _passed(witness is None, witness)}


def sign_ledger() -> list:
    return [dict(entry) for entry in SIGN_LEDGER]
