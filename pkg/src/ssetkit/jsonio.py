"""Canonical JSON serialization and DOT export.

All emitted JSON is canonical: sorted keys, compact separators, integers
only.  Simplices are addressed as "dim.index" keys; operators embed as
bare image lists (the ambient dimensions are implied by the face slot).
Round-trips are bit-exact on the canonical form.
"""

from __future__ import annotations

import json
from typing import Optional

from .operators import SimplicialOperator
from .core import (
    EZForm, SetBuilder, SimplexId, SimplicialError, SimplicialMap,
    SimplicialSet, validate, validate_map,
)
from .cats import FiniteCategory
from .anodyne import CellPresentation
from .homs import FibrationClass


def canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _ez_payload(ez: EZForm) -> dict:
    return {"epi": list(ez.epi.images), "tgt": [ez.target.dim, ez.target.index]}


def _ez_from(payload: dict, dim: int, ids) -> EZForm:
    images = tuple(payload["epi"])
    tdim, tidx = payload["tgt"]
    epi = SimplicialOperator(dim, tdim, images)
    return EZForm(epi, ids[tdim][tidx])


def set_to_payload(X: SimplicialSet) -> dict:
    faces = {}
    labels = {}
    for x in X.all_nondeg():
        if x.dim:
            faces[x.key()] = [_ez_payload(ez) for ez in X.faces(x)]
        if x.label is not None:
            labels[x.key()] = x.label
    out = {"top_dim": X.top_dim,
           "nondeg": [len(row) for row in X.nondeg],
           "faces": faces,
           "labels": labels}
    if X.truncation_dim is not None:
        out["truncation_dim"] = X.truncation_dim
    return out


def set_from_payload(payload: dict, check: bool = True) -> SimplicialSet:
    counts = payload.get("nondeg", [])
    labels = payload.get("labels", {})
    builder = SetBuilder()
    ids: list[list[SimplexId]] = []
    for d, count in enumerate(counts):
        ids.append([])
        for i in range(count):
            ids[d].append(builder.add(d, labels.get(f"{d}.{i}")))
    faces = payload.get("faces", {})
    for d, row in enumerate(ids):
        for i, x in enumerate(row):
            if d == 0:
                continue
            body = faces.get(f"{d}.{i}")
            if body is None or len(body) != d + 1:
                raise SimplicialError(f"missing faces for simplex {d}.{i}")
            builder.set_faces(x, (_ez_from(b, d - 1, ids) for b in body))
    X = builder.build(truncation_dim=payload.get("truncation_dim"))
    if payload.get("top_dim", X.top_dim) != X.top_dim:
        raise SimplicialError("top_dim disagrees with the nondeg table")
    if check:
        result = validate(X)
        if not result:
            raise SimplicialError(f"invalid simplicial set: "
                                  f"{result.problems[0]}")
    return X


def set_to_json(X: SimplicialSet) -> str:
    return canonical(set_to_payload(X))


def set_from_json(text: str, check: bool = True) -> SimplicialSet:
    return set_from_payload(json.loads(text), check)


def map_to_payload(f: SimplicialMap) -> dict:
    return {"source": set_to_payload(f.source),
            "target": set_to_payload(f.target),
            "assign": {x.key(): _ez_payload(ez)
                       for x, ez in f.assign.items()}}


def map_from_payload(payload: dict, check: bool = True,
                     source: Optional[SimplicialSet] = None,
                     target: Optional[SimplicialSet] = None) -> SimplicialMap:
    src = source if source is not None else \
        set_from_payload(payload["source"], check)
    tgt = target if target is not None else \
        set_from_payload(payload["target"], check)
    tgt_ids = [list(row) for row in tgt.nondeg]
    assign = {}
    for x in src.all_nondeg():
        body = payload["assign"].get(x.key())
        if body is None:
            raise SimplicialError(f"map misses simplex {x.key()}")
        assign[x] = _ez_from(body, x.dim, tgt_ids)
    f = SimplicialMap(src, tgt, assign)
    if check:
        result = validate_map(f)
        if not result:
            raise SimplicialError(f"not a simplicial map: "
                                  f"{result.problems[0]}")
    return f


def map_to_json(f: SimplicialMap) -> str:
    return canonical(map_to_payload(f))


def map_from_json(text: str, check: bool = True) -> SimplicialMap:
    return map_from_payload(json.loads(text), check)


def cert_to_payload(cert: CellPresentation) -> dict:
    out = {"base": sorted([x.dim, x.index] for x in cert.base),
           "class": cert.kind.value,
           "steps": [[n, k, [x.dim, x.index]] for n, k, x in cert.steps]}
    if len(cert.target) != cert.parent.size():
        out["target"] = sorted([x.dim, x.index] for x in cert.target)
    return out


def cert_from_payload(payload: dict, parent: SimplicialSet) -> CellPresentation:
    base = frozenset(parent.simplex(d, i) for d, i in payload["base"])
    if "target" in payload:
        target = frozenset(parent.simplex(d, i) for d, i in payload["target"])
    else:
        target = frozenset(parent.all_nondeg())
    steps = tuple((n, k, parent.simplex(d, i))
                  for n, k, (d, i) in payload["steps"])
    return CellPresentation(parent, base, target,
                            FibrationClass(payload["class"]), steps)


def report_to_payload(report) -> dict:
    return {"claim": report.claim,
            "params": report.params,
            "passed": report.passed,
            "checks": [{"name": name, "ok": ok, "detail": detail}
                       for name, ok, detail in report.checks],
            "details": report.details,
            "elapsed_ms": int(report.elapsed * 1000)}


# -- category files ------------------------------------------------------------


def category_from_payload(payload: dict) -> FiniteCategory:
    """Build a finite category from JSON: either a poset shortcut
    {"poset": {"objects": [...], "pairs": [[a,b], ...]}} or explicit
    {"objects", "arrows": [{"name", "src", "tgt"}], "compose":
    [[g, f, h], ...]} with identities implicit (named "id:<object>")."""
    from .cats import poset_category
    if "poset" in payload:
        body = payload["poset"]
        return poset_category(body["objects"],
                              [tuple(p) for p in body.get("pairs", [])])
    objects = tuple(payload["objects"])
    obj_idx = {o: i for i, o in enumerate(objects)}
    names = [f"id:{o}" for o in objects]
    source = list(range(len(objects)))
    target = list(range(len(objects)))
    mor_idx = {name: i for i, name in enumerate(names)}
    for arrow in payload.get("arrows", []):
        mor_idx[arrow["name"]] = len(names)
        names.append(arrow["name"])
        source.append(obj_idx[arrow["src"]])
        target.append(obj_idx[arrow["tgt"]])
    compose = {}
    for m in range(len(names)):
        s, t = source[m], target[m]
        compose[(m, s)] = m
        compose[(t, m)] = m
    for g, f, h in payload.get("compose", []):
        compose[(mor_idx[g], mor_idx[f])] = mor_idx[h]
    return FiniteCategory(objects, tuple(names), tuple(source),
                          tuple(target), compose, tuple(range(len(objects))))


def category_from_json(text: str) -> FiniteCategory:
    return category_from_payload(json.loads(text))


# -- DOT export ------------------------------------------------------------------


def to_dot(X: SimplicialSet) -> str:
    """Graphviz rendering of the 2-skeleton: vertices and directed edges
    drawn, 2-simplices as shaded triangle nodes tied to their corners;
    higher-dimensional data is listed in trailing comments."""
    lines = ["digraph simplicial_set {", "  rankdir=LR;"]

    def node(x: SimplexId) -> str:
        return f"v{x.dim}_{x.index}"

    def label(x: SimplexId) -> str:
        return (x.label if x.label is not None else x.key()).replace('"', "'")

    for v in (X.nondeg[0] if X.top_dim >= 0 else ()):
        lines.append(f'  {node(v)} [label="{label(v)}"];')
    if X.top_dim >= 1:
        for e in X.nondeg[1]:
            tail = X.faces(e)[1].target
            head = X.faces(e)[0].target
            lines.append(f'  {node(tail)} -> {node(head)} '
                         f'[label="{label(e)}"];')
    if X.top_dim >= 2:
        from .core import nondeg_form, vertices_of
        for t in X.nondeg[2]:
            tname = f"t2_{t.index}"
            lines.append(f'  {tname} [shape=triangle, style=filled, '
                         f'fillcolor=lightgray, label="{label(t)}"];')
            corners = {ez.target for ez in vertices_of(X, nondeg_form(t))}
            for v in sorted(corners, key=lambda s: s.index):
                lines.append(f"  {tname} -> {node(v)} [style=dashed, "
                             f"arrowhead=none];")
    for d in range(3, X.top_dim + 1):
        names = ", ".join(label(x) for x in X.nondeg[d])
        lines.append(f"  // {d}-simplices: {names}")
    lines.append("}")
    return "\n".join(lines) + "\n"
