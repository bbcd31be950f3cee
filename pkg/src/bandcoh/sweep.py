"""Sweeps over small kernels ``(Gamma, A, kappa)`` and small Gamma-groups."""
from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .band import Band, band_from_outer, is_representable
from .catalog import by_name, small_groups
from .cohomology import GammaGroup, make_gamma_group
from .groups import (
    FiniteGroup,
    all_subgroups,
    aut_group,
    automorphisms,
    center,
    homomorphisms,
)
from .h2 import h2_set, obstruction

CSV_COLUMNS = (
    "gamma_id",
    "kernel_id",
    "kappa_index",
    "h2_count",
    "neutral_count",
    "obstruction_zero",
    "representable",
    "runtime_ms",
)


@dataclass(frozen=True)
class KernelCase:
    gamma_id: str
    kernel_id: str
    kappa_index: int
    kappa: tuple
    orbit_size: int

    @property
    def band(self) -> Band:
        return band_from_outer(by_name(self.gamma_id), by_name(self.kernel_id), self.kappa)


def _orbit_reps(maps, transforms) -> list:
    """Least member and size of each orbit of the tuples in ``maps``."""
    seen = set()
    reps = []
    for m in sorted(maps):
        if m in seen:
            continue
        orbit = {t(m) for t in transforms}
        seen |= orbit
        reps.append((min(orbit), len(orbit)))
    return reps


def kappa_classes(gamma: FiniteGroup, kernel: FiniteGroup) -> list:
    """Homomorphisms ``Gamma -> Out(A)`` up to ``Aut(Gamma) x Aut(A)``, as (least rep, orbit size)."""
    AG = aut_group(kernel)
    out = AG.out
    homs = [tuple(h) for h in homomorphisms(gamma, out)]
    auts_gamma = automorphisms(gamma)
    # Aut(A) acts on Out(A) by conjugation, through Out(A) itself
    out_conj = [tuple(out.mult[out.mult[b][k]][out.inv[b]] for k in range(out.order)) for b in range(out.order)]
    transforms = [
        (lambda k, a=a, c=c: tuple(c[k[a[s]]] for s in range(gamma.order))) for a in auts_gamma for c in out_conj
    ]
    return _orbit_reps(homs, transforms)


def kernel_cases(gamma_max: int, kernel_max: int) -> list:
    cases = []
    for gid, G in small_groups(gamma_max):
        for aid, A in small_groups(kernel_max):
            for i, (kappa, size) in enumerate(kappa_classes(G, A)):
                cases.append(KernelCase(gid, aid, i, kappa, size))
    return cases


@dataclass(frozen=True)
class KernelRow:
    gamma_id: str
    kernel_id: str
    kappa_index: int
    h2_count: int
    neutral_count: int
    obstruction_zero: bool
    representable: bool
    runtime_ms: float

    def as_dict(self, timing: bool) -> dict:
        return {
            "gamma_id": self.gamma_id,
            "kernel_id": self.kernel_id,
            "kappa_index": self.kappa_index,
            "h2_count": self.h2_count,
            "neutral_count": self.neutral_count,
            "obstruction_zero": self.obstruction_zero,
            "representable": self.representable,
            "runtime_ms": round(self.runtime_ms, 1) if timing else None,
        }


def kernel_row(case: KernelCase) -> KernelRow:
    start = time.perf_counter()
    B = case.band
    H = h2_set(B)
    row = KernelRow(
        case.gamma_id,
        case.kernel_id,
        case.kappa_index,
        H.order,
        len(H.neutral_indices),
        obstruction(B).is_zero,
        is_representable(B) is not None,
        (time.perf_counter() - start) * 1000,
    )
    return row


def run_sweep(gamma_max: int, kernel_max: int, jobs: int = 1) -> list:
    cases = kernel_cases(gamma_max, kernel_max)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(kernel_row, cases, chunksize=4))
    return [kernel_row(c) for c in cases]


def render_csv(rows, timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        d = r.as_dict(timing)
        w.writerow(["" if d[c] is None else (str(d[c]).lower() if isinstance(d[c], bool) else d[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def render_json(rows, gamma_max: int, kernel_max: int, timing: bool = False) -> str:
    doc = {
        "command": "sweep",
        "gamma_max": gamma_max,
        "kernel_max": kernel_max,
        "kappa_reduction": "Hom(Gamma, Out(A)) up to Aut(Gamma) x Aut(A)",
        "rows": [r.as_dict(timing) for r in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------- Gamma-groups


@dataclass(frozen=True)
class GammaGroupCase:
    gamma_id: str
    carrier_id: str
    action_index: int
    action: tuple  # indices into aut_group(carrier).elements

    @property
    def gamma_group(self) -> GammaGroup:
        A = by_name(self.carrier_id)
        AG = aut_group(A)
        return make_gamma_group(by_name(self.gamma_id), A, [AG.elements[i] for i in self.action])


def action_classes(gamma: FiniteGroup, carrier: FiniteGroup) -> list:
    """Homomorphisms ``Gamma -> Aut(M)`` up to ``Aut(Gamma) x Aut(M)``."""
    AG = aut_group(carrier)
    grp = AG.group
    homs = [tuple(h) for h in homomorphisms(gamma, grp)]
    auts_gamma = automorphisms(gamma)
    conj = [tuple(grp.mult[grp.mult[b][k]][grp.inv[b]] for k in range(grp.order)) for b in range(grp.order)]
    transforms = [(lambda k, a=a, c=c: tuple(c[k[a[s]]] for s in range(gamma.order))) for a in auts_gamma for c in conj]
    return [rep for rep, _ in _orbit_reps(homs, transforms)]


def gamma_group_cases(gamma_max: int, carrier_max: int) -> list:
    cases = []
    for gid, G in small_groups(gamma_max):
        for mid, M in small_groups(carrier_max):
            for i, act in enumerate(action_classes(G, M)):
                cases.append(GammaGroupCase(gid, mid, i, act))
    return cases


def central_stable_subgroups(M: GammaGroup) -> list:
    """Gamma-stable subgroups of the center of the carrier."""
    Z = center(M.carrier)
    out = []
    for S in all_subgroups(M.carrier):
        if not set(S.members) <= set(Z.members):
            continue
        if all(a[x] in S for a in M.action for x in S.members):
            out.append(S)
    return out
