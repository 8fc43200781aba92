"""Serialize a pipeline run: a byte-stable JSON report plus a short text summary."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .maps import SevenTermContext, SevenTermReport, seven_term
from .problem import ProblemSpec, to_dict
from .verdicts import FAIL, PASS, SKIPPED

SECTIONS = ("junctions", "transgression", "coincidence", "wellposed", "oracle")
SECTION_TITLES = {
    "junctions": "exactness",
    "transgression": "transgression constructions",
    "coincidence": "spectral coincidence",
    "wellposed": "well-definedness",
    "oracle": "oracle self-checks",
}


@dataclass
class Report:
    spec: ProblemSpec
    result: SevenTermReport
    seconds: float = 0.0
    spectral: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return PASS if self.result.ok else FAIL

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for v in self.result.verdicts():
            out[v.status] += 1
        return out

    def to_dict(self, timing: bool = False) -> dict:
        r = self.result
        out = {
            "input": to_dict(self.spec),
            "status": self.status,
            "counts": self.counts(),
            "groups": {name: {"order": g.order(), "invariants": list(g.torsion)}
                       for name, g in r.groups.items()},
            "maps": {name: {"source": list(f.source.torsion), "target": list(f.target.torsion),
                            "matrix": [list(row) for row in f.matrix]}
                     for name, f in r.maps.items()},
            "verdicts": {SECTION_TITLES[s]: [v.to_dict() for v in getattr(r, s)]
                         for s in SECTIONS},
        }
        if r.sign:
            out["sign"] = dict(r.sign)
        if self.spectral:
            out["spectral"] = self.spectral
        if timing:
            out["timing_seconds"] = round(self.seconds, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    def summary(self) -> str:
        o = self.spec.options
        lines = [f"{o.name or 'problem'}: {self.status.upper()}"
                 + (f"  ({o.description})" if o.description else "")]
        for name, g in self.result.groups.items():
            lines.append(f"  {name:<18} {g}")
        for s in SECTIONS:
            vs = getattr(self.result, s)
            if not vs:
                continue
            lines.append(f"  [{SECTION_TITLES[s]}]")
            for v in vs:
                mark = {PASS: "ok  ", FAIL: "FAIL", SKIPPED: "skip"}[v.status]
                tail = f"  witness={v.witness}" if v.status == FAIL else ""
                if v.status == SKIPPED:
                    tail = f"  ({v.detail})"
                lines.append(f"    {mark} {v.name}{tail}")
        c = self.counts()
        lines.append(f"  {c[PASS]} pass, {c[FAIL]} fail, {c[SKIPPED]} skipped "
                     f"in {self.seconds:.2f}s")
        return "\n".join(lines)


def spectral_orders(ctx: SevenTermContext) -> dict:
    orc = ctx.oracle
    out = {}
    pqs = [(0, 1), (2, 0), (1, 1)] + ([(3, 0)] if ctx.degree_max >= 3 else [])
    for p, q in pqs:
        out[f"E2^{{{p},{q}}}"] = list(orc.page(2, p, q).group.torsion)
    if ctx.degree_max >= 3:
        out["E_inf^{1,1}"] = list(orc.einfty_11().group.torsion)
    return out


def run(spec: ProblemSpec, checks: str | None = None, degree_max: int | None = None,
        seed: int | None = None) -> Report:
    o = spec.options
    checks = checks or o.checks
    degree_max = degree_max or o.degree_max
    seed = o.seed if seed is None else seed
    t0 = time.perf_counter()
    ext, module = spec.build()
    ctx = SevenTermContext(ext, module, degree_max)
    result = seven_term(ext, module, checks, degree_max, seed, ctx=ctx)
    spectral = spectral_orders(ctx) if checks in ("all", "coincidence") else {}
    return Report(spec, result, time.perf_counter() - t0, spectral)
