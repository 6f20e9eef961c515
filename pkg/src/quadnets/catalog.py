"""Named nets and pencils with expected verdicts, used as a regression suite."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import MultiPoly
from .discriminant import (
    IDENTICALLY_ZERO,
    WhollySingularPencilError,
    classify_discriminant,
    discriminant_net,
    discriminant_pencil,
    segre_symbol,
)
from .net import VARIABLES, Net, Pencil, QuadraticForm
from .parser import format_span
from .stability import (
    one_param_limit,
    stabilizing_subgroup_check,
    state_polytope_check,
    twelve_type_check,
)

SEMISTABLE = "semistable"  # expectation: anything but unstable

_GENS = MultiPoly.gens(VARIABLES)
a, b, c, d, e = _GENS
x, y, z = MultiPoly.gens(("x", "y", "z"))
_COEFFS = (1, 2, 3, -1, -2, -3)


class UnknownEntryError(KeyError):
    def __init__(self, name: str, available: Iterable[str]):
        self.available = sorted(available)
        super().__init__(f"unknown catalog entry {name!r}; available: {', '.join(self.available)}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    span: Net | Pencil
    description: str
    status: str | None = None
    stabilizer: tuple[int, ...] | None = None
    certificate_type: int | None = None
    discriminant_class: str | None = None
    discriminant_shape: MultiPoly | None = None
    segre: str | None = None
    limit: tuple[tuple[int, ...], str, str] | None = None  # (weights, direction, target entry)
    annotations: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "net" if isinstance(self.span, Net) else "pencil"

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "expression": format_span(self.span),
            "quadrics": self.span.to_json()["quadrics"],
            "description": self.description,
        }
        expected = {
            "status": self.status,
            "stabilizer": list(self.stabilizer) if self.stabilizer else None,
            "certificate_type": self.certificate_type,
            "discriminant_class": self.discriminant_class,
            "discriminant_shape": str(self.discriminant_shape) if self.discriminant_shape else None,
            "segre": self.segre,
        }
        out["expected"] = {k: v for k, v in expected.items() if v is not None}
        out.update(self.annotations)
        return out


def _net(*polys: MultiPoly) -> Net:
    return Net([QuadraticForm.from_poly(p) for p in polys])


def _pencil(*polys: MultiPoly) -> Pencil:
    return Pencil([QuadraticForm.from_poly(p) for p in polys])


class _Generic:
    """Seeded small-integer linear and quadratic forms in chosen variables."""

    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def coeff(self) -> int:
        return self.rng.choice(_COEFFS)

    def linear(self, names: str) -> MultiPoly:
        return sum((self.coeff() * _GENS[VARIABLES.index(v)] for v in names), MultiPoly(VARIABLES))

    def quadratic(self, names: str) -> MultiPoly:
        g = [_GENS[VARIABLES.index(v)] for v in names]
        return sum((self.coeff() * g[i] * g[j] for i in range(len(g)) for j in range(i, len(g))),
                   MultiPoly(VARIABLES))


def _stratum_representatives(seed: int = 0) -> dict[int, Net]:
    """Generic members of the unstable strata, one per numerical type."""
    r = _Generic(seed)
    return {
        1: _net(r.quadratic("abcde"), r.quadratic("abcde"), e * e),
        2: _net(r.quadratic("abcde"), d * r.linear("abcde") + e * r.linear("abcde"), d * e),
        3: _net(a * d - b * c, a * e - b * d, c * e - d * d),
        4: _net(a * r.linear("bcde") + r.quadratic("bcde"), r.quadratic("bcde"), r.quadratic("bcde")),
        5: _net(r.quadratic("abcde"), d * d + e * r.linear("abcde"), e * r.linear("abcde")),
        6: _net(r.quadratic("abcde"), r.quadratic("cd") + e * r.linear("abcde"), e * r.linear("cde")),
        7: _net(a * c + b * b + c * c + d * r.linear("abcde") + e * r.linear("abcde"),
                a * d + b * c + r.quadratic("cde"), d * e),
        8: _net(a * d + r.quadratic("bcde"), a * e + b * d, c * e + d * d),
        9: _net(a * d + c * c + r.quadratic("cde"), a * e + b * d, b * e + c * d),
        10: _net(a * c + b * b + r.quadratic("bcde"), a * e + r.quadratic("cde"), b * e),
        11: _net(a * d - b * b - r.quadratic("cde"), a * e - b * c - r.quadratic("cde"), c * e - d * d),
        12: _net(a * c + b * b + a * r.linear("de") + r.quadratic("cde"), a * e + c * d, c * e + d * d),
    }


STRATUM_SHAPES = {
    1: "contains a double hyperplane e^2",
    2: "pencil through the plane d=e=0 with a member singular along it",
    3: "smooth cubic scroll net",
    4: "base point at a=1 with a pencil singular there",
    5: "(Q1, d^2 + eL, eM)",
    6: "(Q1, Q(c,d) + eL, eM(c,d,e))",
    7: "(ac + b^2 + c^2 mod (d,e), ad + bc mod (c,d,e)^2, de)",
    8: "(ad + Q(b,c,d,e), ae + bd, ce + d^2)",
    9: "(ad + c^2 mod (c,d,e)^2, ae + bd, be + cd)",
    10: "(ac + b^2 + Q(b,c,d,e), ae + Q(c,d,e), be)",
    11: "(ad - b^2 - R1(c,d,e), ae - bc - R2(c,d,e), ce - d^2)",
    12: "(ac + b^2 + a R1(d,e) + R2(c,d,e), ae + cd, ce + d^2)",
}


def _build() -> dict[str, CatalogEntry]:
    kempf = (2, 1, 0, -1, -2)
    g = _Generic(1)
    L = g.linear("abcde")
    L1, L2 = g.linear("abcde"), g.linear("abcde")
    eta = 3
    entries = [
        CatalogEntry("balanced-ribbon", _net(a * c - b * b, a * e - 2 * b * d + c * c, c * e - d * d),
                     "balanced ribbon I_R", status="strictly-semistable", stabilizer=kempf,
                     discriminant_class="non-reduced", discriminant_shape=y * (x * z - y * y) ** 2),
        CatalogEntry("double-twisted-cubic", _net(a * d - b * b, a * e - b * d + c * c, b * e - d * d),
                     "double twisted cubic I_DT", status="strictly-semistable", stabilizer=(3, 1, 0, -1, -3),
                     discriminant_class="non-reduced"),
        CatalogEntry("triple-conic", _net(a * d - b * c, a * e + b * d - c * c, b * e - c * d),
                     "triple conic with two lines I_T", status="strictly-semistable", stabilizer=kempf,
                     discriminant_class="non-reduced", discriminant_shape=y ** 3 * (x * z - y * y)),
        CatalogEntry("double-line", _net(a * d, a * e + b * d - c * c, b * e),
                     "two double lines joined by two conics I_DL", status="strictly-semistable",
                     stabilizer=kempf, discriminant_class="non-reduced"),
        CatalogEntry("dtc-family", _net(a * d - b * c, a * e - c * c + L * L, b * e - c * d),
                     "double twisted cubic meeting a conic twice, seeded general L",
                     status=SEMISTABLE, annotations={"L": str(L)}),
        CatalogEntry("double-conic-family", _net(a * d - b * c, a * e - c * c + b * L1 + d * L2, b * e - c * d),
                     "double conic meeting a rational normal quartic, seeded general L1, L2",
                     status=SEMISTABLE, annotations={"L1": str(L1), "L2": str(L2)}),
        CatalogEntry("smooth-scroll", _net(a * d - b * c, a * e - b * d, c * e - d * d),
                     "net of the smooth cubic scroll", status="unstable", certificate_type=3,
                     discriminant_class=IDENTICALLY_ZERO),
        CatalogEntry("trigonal-scroll", _net(a * d - b * c, a * e - c * c, b * e - c * d),
                     "central fibre of the trigonal deformation, a cubic scroll", status="unstable",
                     discriminant_class=IDENTICALLY_ZERO),
        CatalogEntry("trigonal-limit", _net(a * d - b * c, a * e - c * c + b * d + d * d, b * e - c * d),
                     "rescaled trigonal limit with eta = 1", status=SEMISTABLE,
                     limit=(kempf, "to-infinity", "triple-conic")),
        CatalogEntry("trigonal-limit-eta", _net(a * d - b * c, a * e - c * c + b * d + eta * d * d, b * e - c * d),
                     f"rescaled trigonal limit with eta = {eta}", status=SEMISTABLE,
                     limit=(kempf, "to-infinity", "triple-conic")),
        CatalogEntry("plane-plus-scroll", _pencil(a * d - b * c, b * e - c * d),
                     "pencil cutting a plane and a cubic scroll", discriminant_class=IDENTICALLY_ZERO),
        CatalogEntry("rank-degenerate-pencil", _pencil(a * d - 2 * b * b, b * e - c * d),
                     "pencil through a plane with rank-4 members, mu = 2", discriminant_class=IDENTICALLY_ZERO),
        CatalogEntry("veronese-pencil", _pencil(a * c - b * b, c * e - d * d),
                     "projected Veronese quartic surface", discriminant_class=IDENTICALLY_ZERO),
        CatalogEntry("diagonal-pencil",
                     _pencil(a * a + b * b + c * c + d * d + e * e, a * a + 2 * b * b + 3 * c * c + 4 * d * d + 5 * e * e),
                     "generic diagonal pencil", discriminant_class="reduced", segre="[1,1,1,1,1]"),
    ]
    for k, net in _stratum_representatives().items():
        entries.append(CatalogEntry(f"unstable-stratum-{k}", net, f"generic member of stratum {k}: {STRATUM_SHAPES[k]}",
                                    status="unstable", certificate_type=k))
    return {entry.name: entry for entry in entries}


CATALOG: dict[str, CatalogEntry] = _build()


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEntryError(name, CATALOG) from None


def _status_matches(expected: str, actual: str) -> bool:
    return actual != "unstable" if expected == SEMISTABLE else actual == expected


def _check_net(entry: CatalogEntry) -> dict[str, bool]:
    net = entry.span
    checks: dict[str, bool] = {}
    if entry.status is not None or entry.certificate_type is not None:
        verdict = twelve_type_check(net)
        poly = state_polytope_check(net)
        if entry.status is not None:
            checks["twelve_type_status"] = _status_matches(entry.status, verdict.status)
            checks["polytope_semistability"] = poly.semistable == (entry.status != "unstable")
        if entry.certificate_type is not None:
            checks["certificate_type"] = verdict.certificate_type == entry.certificate_type
    if entry.stabilizer is not None:
        checks["stabilizer"] = stabilizing_subgroup_check(net, entry.stabilizer)
    if entry.discriminant_class is not None:
        checks["discriminant_class"] = classify_discriminant(net) == entry.discriminant_class
    if entry.discriminant_shape is not None:
        checks["discriminant_shape"] = discriminant_net(net).is_proportional(entry.discriminant_shape)
    if entry.limit is not None:
        weights, direction, target = entry.limit
        checks["limit"] = one_param_limit(net, weights, direction) == CATALOG[target].span
    return checks


def _check_pencil(entry: CatalogEntry) -> dict[str, bool]:
    pencil = entry.span
    checks: dict[str, bool] = {}
    if entry.discriminant_class is not None:
        disc = discriminant_pencil(pencil)
        if entry.discriminant_class == IDENTICALLY_ZERO:
            checks["discriminant_class"] = disc.is_zero()
            try:
                segre_symbol(pencil)
                checks["wholly_singular"] = False
            except WhollySingularPencilError:
                checks["wholly_singular"] = True
        else:
            from .algebra import squarefree_part

            reduced = not disc.is_zero() and squarefree_part(disc)[1]
            checks["discriminant_class"] = (entry.discriminant_class == "reduced") == reduced
    if entry.segre is not None:
        checks["segre"] = str(segre_symbol(pencil)) == entry.segre
    return checks


def verify_entry(entry: CatalogEntry) -> dict:
    checks = _check_net(entry) if entry.kind == "net" else _check_pencil(entry)
    return {"name": entry.name, "passed": all(checks.values()), "checks": checks}


def catalog_verify_all(entries: Iterable[CatalogEntry] | None = None,
                       verifier: Callable[[CatalogEntry], dict] = verify_entry) -> dict:
    entries = list(CATALOG.values()) if entries is None else list(entries)
    results = [verifier(entry) for entry in entries]
    return {"entries": results, "passed": all(r["passed"] for r in results), "count": len(results)}


def catalog_export() -> dict:
    return {"entries": [entry.to_dict() for entry in CATALOG.values()]}
