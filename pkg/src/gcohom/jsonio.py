"""Canonical JSON for every artifact that crosses a file boundary.

Serialization is deterministic: keys sorted, value tables sparse and emitted
in index order, integers only.  A certificate's "verified" flag is recomputed
on load, so a stored true is never trusted.
"""

from __future__ import annotations

import json

from .bicomplex import (BiCochain, TotalCochain, total_from_components,
                        zero_bicochain)
from .cochains import Cochain, tuple_index, tuples_of
from .cohomology import CoboundaryWitness, CohomologyGroup
from .continuity import ContinuityClass, all_class, quotient_class
from .errors import ValidationError
from .groups import FiniteGroup, group_from_mult
from .ladder import CoefficientSES, LadderReport, LESReport, make_ses
from .linalg import FPAbelianGroup
from .modules import GModule, module_with_action, trivial_module
from .transfer import ExactnessReport, TransferCertificate, TransferStep


def _reject_floats(obj) -> None:
    if isinstance(obj, float):
        raise ValidationError("canonical JSON is integer-only, got a float")
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise ValidationError(f"JSON keys must be strings, got {k!r}")
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)


def canonical_dumps(obj) -> str:
    _reject_floats(obj)
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_dumps(obj))


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _require(obj, keys, what: str) -> None:
    if not isinstance(obj, dict):
        raise ValidationError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ValidationError(f"{what} is missing keys: {', '.join(missing)}")


# ---------------------------------------------------------------------------
# groups


def group_to_json(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "mult": [list(row) for row in group.mult],
        "label": group.label,
    }


def group_from_json(obj) -> FiniteGroup:
    _require(obj, ("order", "mult"), "group")
    group = group_from_mult(obj["mult"], label=obj.get("label", ""))
    if group.order != obj["order"]:
        raise ValidationError(
            f"declared order {obj['order']} but table has {group.order} rows")
    return group


# ---------------------------------------------------------------------------
# modules


def module_to_json(module: GModule) -> dict:
    if module.is_trivial_action():
        action = "trivial"
    else:
        n = module.dim
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        action = {
            str(g): [list(row) for row in module.action[g]]
            for g in module.group.elements()
            if module.action[g] != ident
        }
    return {"rank": module.rank, "torsion": list(module.torsion), "action": action}


def module_from_json(group: FiniteGroup, obj) -> GModule:
    _require(obj, ("rank", "torsion"), "module")
    action = obj.get("action", "trivial")
    if action == "trivial":
        return trivial_module(group, obj["rank"], obj["torsion"])
    if not isinstance(action, dict):
        raise ValidationError('module action must be "trivial" or an object')
    matrices = {}
    for key, mat in action.items():
        g = int(key)
        if not 0 <= g < group.order:
            raise ValidationError(f"action key {key} is not a group element")
        matrices[g] = mat
    return module_with_action(group, obj["rank"], obj["torsion"], matrices)


# ---------------------------------------------------------------------------
# continuity classes


def class_to_json(cls: ContinuityClass) -> dict:
    if cls.kind == "all":
        return {"class": "all"}
    return {"class": "quotient", "normal_subgroup": sorted(cls.normal_subgroup)}


def class_from_json(group: FiniteGroup, obj) -> ContinuityClass:
    _require(obj, ("class",), "continuity class")
    kind = obj["class"]
    if kind == "all":
        return all_class(group)
    if kind == "quotient":
        _require(obj, ("normal_subgroup",), "quotient class")
        return quotient_class(group, obj["normal_subgroup"])
    raise ValidationError(f"unknown continuity class kind {kind!r}")


# ---------------------------------------------------------------------------
# cochains, sparse over the dense table


def _cochain_entries(f: Cochain) -> list:
    zero = f.module.zero()
    out = []
    for t in tuples_of(f.group.order, f.degree + 1):
        v = f.value(t)
        if v != zero:
            out.append({"tuple": list(t), "coeff": list(v)})
    return out


def _cochain_from_entries(group: FiniteGroup, module: GModule, degree: int,
                          entries) -> Cochain:
    if degree < 0:
        raise ValidationError("cochain degree must be >= 0")
    table = [module.zero()] * group.order ** (degree + 1)
    seen = set()
    for entry in entries:
        _require(entry, ("tuple", "coeff"), "cochain value")
        tup = tuple(entry["tuple"])
        if len(tup) != degree + 1:
            raise ValidationError(
                f"value tuple {tup} has length {len(tup)}, expected {degree + 1}")
        if any(not 0 <= g < group.order for g in tup):
            raise ValidationError(f"value tuple {tup} leaves the group")
        if tup in seen:
            raise ValidationError(f"duplicate value tuple {tup}")
        seen.add(tup)
        coeff = entry["coeff"]
        if len(coeff) != module.dim:
            raise ValidationError(
                f"coefficient {coeff} has length {len(coeff)}, expected {module.dim}")
        table[tuple_index(group.order, tup)] = module.reduce(coeff)
    return Cochain(group, module, degree, tuple(table))


def cochain_to_json(f: Cochain) -> dict:
    return {
        "degree": f.degree,
        "group": group_to_json(f.group),
        "module": module_to_json(f.module),
        "values": _cochain_entries(f),
    }


def cochain_from_json(obj, group: FiniteGroup | None = None,
                      module: GModule | None = None) -> Cochain:
    _require(obj, ("degree",), "cochain")
    if group is None:
        _require(obj, ("group",), "cochain")
        group = group_from_json(obj["group"])
    if module is None:
        _require(obj, ("module",), "cochain")
        module = module_from_json(group, obj["module"])
    return _cochain_from_entries(group, module, obj["degree"],
                                 obj.get("values", ()))


# ---------------------------------------------------------------------------
# bicochains and total cochains (always embedded, never standalone files)


def _bicochain_entries(f: BiCochain) -> list:
    order = f.group.order
    zero = f.module.zero()
    out = []
    for x in tuples_of(order, f.p + 1):
        for y in tuples_of(order, f.q + 1):
            v = f.value(x, y)
            if v != zero:
                out.append({"x": list(x), "y": list(y), "coeff": list(v)})
    return out


def bicochain_to_json(f: BiCochain) -> dict:
    return {"p": f.p, "q": f.q, "values": _bicochain_entries(f)}


def bicochain_from_json(group: FiniteGroup, module: GModule, obj) -> BiCochain:
    _require(obj, ("p", "q"), "bicochain")
    p, q = obj["p"], obj["q"]
    order = group.order
    base = zero_bicochain(group, module, p, q)
    table = list(base.values)
    seen = set()
    for entry in obj.get("values", ()):
        _require(entry, ("x", "y", "coeff"), "bicochain value")
        x, y = tuple(entry["x"]), tuple(entry["y"])
        if len(x) != p + 1 or len(y) != q + 1:
            raise ValidationError(f"block lengths {len(x)},{len(y)} do not "
                                  f"match bidegree ({p}, {q})")
        if any(not 0 <= g < order for g in x + y):
            raise ValidationError(f"blocks {x},{y} leave the group")
        if (x, y) in seen:
            raise ValidationError(f"duplicate bicochain entry at {x},{y}")
        seen.add((x, y))
        idx = tuple_index(order, x) * order ** (q + 1) + tuple_index(order, y)
        table[idx] = module.reduce(entry["coeff"])
    return BiCochain(group, module, p, q, tuple(table))


def _total_to_json(t: TotalCochain) -> dict:
    return {"degree": t.degree,
            "components": [bicochain_to_json(c) for c in t.components]}


def _total_from_json(group: FiniteGroup, module: GModule, obj) -> TotalCochain:
    _require(obj, ("degree", "components"), "total cochain")
    comps = [bicochain_from_json(group, module, c) for c in obj["components"]]
    return total_from_components(group, module, obj["degree"], comps)


# ---------------------------------------------------------------------------
# transfer certificates


def certificate_to_json(cert: TransferCertificate) -> dict:
    if cert.coboundary_to_input is None:
        cb = None
    else:
        w = cert.coboundary_to_input
        cb = {"degree": w.degree,
              "b": None if w.b is None else _cochain_entries(w.b)}
    return {
        "group": group_to_json(cert.input.group),
        "module": module_to_json(cert.input.module),
        "class": class_to_json(cert.cls),
        "degree": cert.input.degree,
        "input": _cochain_entries(cert.input),
        "output": _cochain_entries(cert.output),
        "witness": _total_to_json(cert.witness),
        "steps": [{"bidegree": list(s.bidegree), "method": s.method}
                  for s in cert.steps],
        "coboundary_to_input": cb,
        "verified": bool(cert.verified),
    }


def certificate_from_json(obj) -> TransferCertificate:
    _require(obj, ("group", "module", "class", "degree", "input", "output",
                   "witness", "steps"), "certificate")
    group = group_from_json(obj["group"])
    module = module_from_json(group, obj["module"])
    cls = class_from_json(group, obj["class"])
    degree = obj["degree"]
    cb_obj = obj.get("coboundary_to_input")
    if cb_obj is None:
        cb = None
    else:
        b = (None if cb_obj["b"] is None else
             _cochain_from_entries(group, module, cb_obj["degree"], cb_obj["b"]))
        cb = CoboundaryWitness(b=b, degree=cb_obj["degree"])
    cert = TransferCertificate(
        cls=cls,
        input=_cochain_from_entries(group, module, degree, obj["input"]),
        output=_cochain_from_entries(group, module, degree, obj["output"]),
        witness=_total_from_json(group, module, obj["witness"]),
        steps=tuple(TransferStep(bidegree=tuple(s["bidegree"]), method=s["method"])
                    for s in obj["steps"]),
        coboundary_to_input=cb,
    )
    # never believe the file: recompute
    cert.verified = cert.verify()
    return cert


# ---------------------------------------------------------------------------
# coefficient short exact sequences


def ses_to_json(ses: CoefficientSES) -> dict:
    return {
        "group": group_to_json(ses.group),
        "gamma": module_to_json(ses.gamma),
        "b": module_to_json(ses.b),
        "a": module_to_json(ses.a),
        "incl": [list(row) for row in ses.incl],
        "proj": [list(row) for row in ses.proj],
        "section": [list(row) for row in ses.section],
    }


def ses_from_json(obj) -> CoefficientSES:
    _require(obj, ("group", "gamma", "b", "a", "incl", "proj", "section"),
             "coefficient sequence")
    group = group_from_json(obj["group"])
    return make_ses(
        gamma=module_from_json(group, obj["gamma"]),
        b=module_from_json(group, obj["b"]),
        a=module_from_json(group, obj["a"]),
        incl=obj["incl"],
        proj=obj["proj"],
        section=obj["section"],
    )


# ---------------------------------------------------------------------------
# one-way report payloads (written by the CLI, never read back)


def fp_group_to_json(fp: FPAbelianGroup) -> dict:
    return {"factors": list(fp.factors), "pretty": str(fp)}


def cohomology_to_json(cohom: CohomologyGroup) -> dict:
    return {
        "degree": cohom.degree,
        "class": class_to_json(cohom.cls),
        "variant": cohom.variant,
        "structure": fp_group_to_json(cohom.structure),
    }


def exactness_report_to_json(report: ExactnessReport) -> dict:
    return {
        "class": class_to_json(report.cls),
        "p": report.p,
        "entries": [
            {"q": e.q, "exact": e.exact,
             "obstruction": None if e.obstruction is None
             else bicochain_to_json(e.obstruction)}
            for e in report.entries
        ],
        "all_exact": report.all_exact(),
    }


def les_report_to_json(report: LESReport) -> dict:
    return {
        "class": class_to_json(report.cls),
        "nodes": [
            {"degree": n.degree, "slot": n.slot,
             "structure": fp_group_to_json(n.cohomology.structure)}
            for n in report.nodes
        ],
        "maps": [
            {"label": m.label, "source": m.source, "target": m.target,
             "matrix": [list(row) for row in m.matrix]}
            for m in report.maps
        ],
        "tail": fp_group_to_json(report.tail.structure),
        "tail_matrix": [list(row) for row in report.tail_matrix],
        "exact_at": list(report.exact_at),
        "compositions_zero": report.compositions_zero,
        "all_exact": report.all_exact(),
    }


def ladder_report_to_json(report: LadderReport) -> dict:
    return {
        "fine": les_report_to_json(report.fine),
        "coarse": les_report_to_json(report.coarse),
        "vertical": [[list(row) for row in mat] for mat in report.vertical],
        "squares_commute": list(report.squares_commute),
        "vertical_iso": list(report.vertical_iso),
        "five_lemma_checks": [[mid, ok] for mid, ok in report.five_lemma_checks],
        "all_squares_commute": report.all_squares_commute(),
    }
