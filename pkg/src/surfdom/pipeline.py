"""Surface-to-sphere reduction driver and the constant arithmetic behind its size bound."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from fractions import Fraction
from math import isqrt

from .domination import is_dominating
from .sphere_dominator.dominate import DominationReport, dominate_sphere
from .surface_map import Triangulation, TriangulationError, classify_surface, components, euler_genus
from .surgery import ONE_SIDED, SurgeryRecord, USets, cut_along_cycle, pullback_dominating_set, update_usets
from .topology import short_cycle_nonorientable, shortest_noncontractible_cycle

EXACT_CYCLE_LIMIT = 50_000  # above this many vertices the double-cover route picks the cycle

getcontext().prec = 50


# ------------------------------------------------------------ iterates
def f_step(m: int) -> int:
    """``floor(m + sqrt(2m) + 2)``."""
    return m + 2 + isqrt(2 * m)


def F_step(m: int) -> int:
    """``floor((sqrt(m) + 1)^2) = m + 1 + floor(2 sqrt(m))``."""
    return m + 1 + isqrt(4 * m)


def f_iter(n: int, i: int) -> int:
    for _ in range(i):
        n = f_step(n)
    return n


def F_iter(n: int, i: int) -> int:
    for _ in range(i):
        n = F_step(n)
    return n


def _le_plus_root(lhs: int, coef: int, radicand: int) -> bool:
    """``lhs <= coef * sqrt(radicand)`` for ``coef, radicand >= 0``."""
    return lhs <= 0 or lhs * lhs <= coef * coef * radicand


@dataclass(frozen=True)
class IterateBounds:
    f_exact: int
    F_exact: int
    f_bound: Decimal
    F_bound: Decimal
    f_ok: bool
    F_ok: bool
    ordered: bool  # f <= F


def iterate_bounds(n: int, i: int) -> IterateBounds:
    """Exact iterates of f and F next to ``n + i sqrt(2n) + i^2 + 3i - 2`` and ``(sqrt(n) + i)^2``."""
    if n < 3:
        raise ValueError("iterates are defined for n >= 3")
    if i < 1:
        raise ValueError("i >= 1")
    fe, Fe = f_iter(n, i), F_iter(n, i)
    rn = Decimal(n).sqrt()
    fb = n + i * (2 * Decimal(n)).sqrt() + i * i + 3 * i - 2
    Fb = (rn + i) ** 2
    f_ok = _le_plus_root(fe - n - i * i - 3 * i + 2, i, 2 * n)
    F_ok = _le_plus_root(Fe - n - i * i, 2 * i, n)
    return IterateBounds(fe, Fe, fb, Fb, f_ok, F_ok, fe <= Fe)


# ------------------------------------------------------------ constants
@dataclass(frozen=True)
class BoundConstants:
    orientable: bool
    g: int
    t: int
    epsilon: Fraction
    a: Decimal
    b: Decimal
    c: Decimal

    @property
    def surface(self) -> str:
        return ("S" if self.orientable else "N") + str(self.g)

    def threshold_n(self, target: Fraction = Fraction(1, 4)) -> Decimal | None:
        """Least real n with ``n(1/6 + eps) + c <= target * n``; None if the slope never allows it."""
        slope = target - Fraction(1, 6) - self.epsilon
        if slope <= 0:
            return None
        return self.c / (Decimal(slope.numerator) / Decimal(slope.denominator))

    def to_json(self) -> dict:
        return {"surface": self.surface, "t": self.t, "epsilon": str(self.epsilon),
                "a": str(self.a), "b": str(self.b), "c": str(self.c)}


def _dec(x: Fraction | int) -> Decimal:
    x = Fraction(x)
    return Decimal(x.numerator) / Decimal(x.denominator)


def bound_constants(orientable: bool, g: int, t: int, epsilon) -> BoundConstants:
    """``a``, ``b`` and ``c = a^2/(4 eps) + b`` for ``|D| <= n/6 + a sqrt(n) + b``."""
    eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if g < 0 or t < 0:
        raise ValueError("g and t must be non-negative")
    if not orientable and g == 0:
        raise ValueError("non-orientable genus starts at 1")
    s2, s3, s3g = Decimal(2).sqrt(), Decimal(3).sqrt(), Decimal(3 * g).sqrt()
    if g == 0:
        a = 6 * s3 * (t - 1)
        b = 27 * Decimal(t - 1) + _dec(Fraction(1, 3))
    elif orientable:
        a = s2 / 6 * (2 * g - 1) + 6 * s3g * (t + 3 * g - 2) + 2 * s2 * (2 * g - 1)
        b = (3 * (t + 3 * g - 2) * (2 * s3g * (2 * g - 1) + 4 * g + 7)
             + 2 * s2 * (2 * g - 1) * (g - 1) + _dec(Fraction(2 * g * g + 7 * g - 1, 3)))
    else:
        a = _dec(Fraction(2 * g - 1, 3)) + 6 * s3g * (t + 2 * g - 2) + 2 * (2 * g - 1)
        b = (3 * (t + 2 * g - 2) * (2 * s3g * (2 * g - 1) + 4 * g + 7)
             + 4 * (2 * g - 1) * (g - 1) + _dec(Fraction(4 * g * g - 4 * g + 3, 6)))
    c = a * a / (4 * _dec(eps)) + b
    return BoundConstants(orientable, g, t, eps, a, b, c)


def growth_ratios(orientable: bool, gs, ts, epsilon) -> tuple[Decimal, Decimal]:
    """Largest ``a / (sqrt(g)(g+t))`` and ``c eps / (g^3 + g t^2)`` over the grid."""
    ra = rc = Decimal(0)
    eps = _dec(Fraction(epsilon))
    for g in gs:
        for t in ts:
            k = bound_constants(orientable, g, t, epsilon)
            ra = max(ra, k.a / (Decimal(g).sqrt() * (g + t)))
            rc = max(rc, k.c * eps / (g ** 3 + g * t * t))
    return ra, rc


CONSTANT_C = 10_500_000


def constant_discriminant(c: int | Fraction = CONSTANT_C) -> tuple[Fraction, Fraction]:
    """``((1008 * 24 sqrt 3)^2, 4 (42c - 36 - 1008 * 608))`` as exact numbers."""
    c = Fraction(c)
    return Fraction(1008 ** 2 * 576 * 3), 4 * (42 * c - 36 - 1008 * 608)


def theorem2_constant_check(c: int | Fraction = CONSTANT_C) -> bool:
    """The quadratic in ``|P0|`` has no admissible root, and ``|P0|`` is forced above 42e4."""
    left, right = constant_discriminant(c)
    return left < right and (42 * Fraction(c) - 36) / 1008 > 420_000


# ------------------------------------------------------------ reduction
@dataclass
class CutEvent:
    record: SurgeryRecord
    parent: int
    children: tuple[int, ...]
    usets_valid: bool


@dataclass
class ReductionTrace:
    n: int
    orientable: bool
    genus: int
    t: int
    events: list = field(default_factory=list)
    g0: int = 0
    g1: int = 0
    g2: int = 0
    sum_C: int = 0
    final: dict = field(default_factory=dict)  # component id -> (graph, usets)
    stage_usets_valid: list = field(default_factory=list)

    @property
    def sphere_vertices(self) -> int:
        return sum(G.n for G, _ in self.final.values())

    def cycle_sum_bound(self) -> Decimal | None:
        g = self.genus
        if g == 0:
            return None
        if self.orientable:
            return (2 * g - 1) * (2 * Decimal(f_iter(self.n, g - 1))).sqrt()
        return (2 * g - 1) * 2 * Decimal(F_iter(self.n, g - 1)).sqrt()

    def invariants(self) -> dict[str, bool]:
        g = self.genus
        out = {
            "genus_sum_zero": all(euler_genus(G) == 0 for G, _ in self.final.values()),
            "vertex_count": self.sphere_vertices == self.n + self.sum_C + 2 * self.g0 + self.g1 + 2 * self.g2,
            "usets_valid": all(self.stage_usets_valid),
            "U0_growth": sum(len(us.U0) for _, us in self.final.values())
            <= self.t + 2 * self.g0 + self.g1 + 2 * self.g2,
        }
        if self.orientable:
            out["tallies"] = self.g1 == 0 and self.g2 == g
        else:
            out["tallies"] = self.g1 + 2 * self.g2 == g
        if g >= 1:
            out["g0_at_most_g_minus_1"] = self.g0 <= g - 1
            out["dU_at_most_2g_minus_1"] = all(us.d_U <= 2 * g - 1 for _, us in self.final.values())
        return out

    def cycle_sum_within_bound(self) -> bool | None:
        """Measured, not enforced: the ordering argument behind the bound is not imposed."""
        b = self.cycle_sum_bound()
        return None if b is None else Decimal(self.sum_C) <= b

    def to_json(self) -> dict:
        return {
            "n": self.n, "surface": ("S" if self.orientable else "N") + str(self.genus), "t": self.t,
            "g0": self.g0, "g1": self.g1, "g2": self.g2, "sum_C": self.sum_C,
            "sphere_vertices": self.sphere_vertices,
            "cycle_sum_bound": None if self.cycle_sum_bound() is None else str(self.cycle_sum_bound()),
            "cycle_sum_within_bound": self.cycle_sum_within_bound(),
            "invariants": self.invariants(),
            "cuts": [{"parent": e.parent, "children": list(e.children), **e.record.to_json()}
                     for e in self.events],
        }


@dataclass
class SurfaceResult:
    D: frozenset
    trace: ReductionTrace
    reports: dict  # sphere component id -> DominationReport
    sphere_union_size: int
    epsilon: Fraction

    @property
    def size(self) -> int:
        return len(self.D)

    def pullback_identity(self) -> bool:
        t = self.trace
        return self.sphere_union_size - self.size == t.sum_C + 2 * t.g0 + t.g1 + 2 * t.g2

    def theorem_bound(self) -> Decimal:
        t = self.trace
        k = bound_constants(t.orientable, t.genus, max(t.t, 1), self.epsilon)
        return t.n * (Decimal(1) / 6 + _dec(self.epsilon)) + k.c


def _pick_cycle(H: Triangulation):
    orientable, _ = classify_surface(H)
    if H.n <= EXACT_CYCLE_LIMIT or orientable:
        return shortest_noncontractible_cycle(H)
    return short_cycle_nonorientable(H)


def reduce_to_spheres(G: Triangulation, us: USets | None = None) -> ReductionTrace:
    """Cut along minimum non-contractible cycles until every component is a sphere."""
    if len(components(G)) != 1:
        raise TriangulationError("input must be connected")
    orientable, genus = classify_surface(G)
    us = USets.initial(G) if us is None else us
    trace = ReductionTrace(G.n, orientable, genus, len(us.U0))
    trace.stage_usets_valid.append(not us.check(G))
    live = {0: (G, us)}
    next_id = 1
    while True:
        todo = [(euler_genus(H), -cid) for cid, (H, _) in live.items() if euler_genus(H) > 0]
        if not todo:
            break
        cid = -max(todo)[1]
        H, hus = live.pop(cid)
        C = _pick_cycle(H)
        if C is None:
            raise TriangulationError("no non-contractible cycle on a non-sphere component")
        rec = cut_along_cycle(H, C)
        new_us = update_usets(hus, rec)
        kids = []
        ok = True
        for part, pus in zip(rec.components, new_us):
            ok &= not pus.check(part)
            live[next_id] = (part, pus)
            kids.append(next_id)
            next_id += 1
        trace.stage_usets_valid.append(ok)
        trace.events.append(CutEvent(rec, cid, tuple(kids), ok))
        trace.sum_C += len(rec.cycle)
        if rec.sided == ONE_SIDED:
            trace.g1 += 1
        elif rec.separating:
            trace.g0 += 1
        else:
            trace.g2 += 1
    trace.final = live
    return trace


def dominate_surface(G: Triangulation, epsilon=Fraction(2, 25), us: USets | None = None) -> SurfaceResult:
    """Dominating set of ``G`` containing ``U``: reduce to spheres, dominate each, pull back."""
    trace = reduce_to_spheres(G, us)
    reports: dict[int, DominationReport] = {}
    sets: dict[int, set[int]] = {}
    for cid, (H, hus) in sorted(trace.final.items()):
        rep = dominate_sphere(H, hus)
        reports[cid] = rep
        sets[cid] = set(rep.D)
    union = sum(len(s) for s in sets.values())
    for ev in reversed(trace.events):
        sets[ev.parent] = pullback_dominating_set(ev.record, [sets.pop(c) for c in ev.children])
    D = frozenset(sets[0])
    us0 = USets.initial(G) if us is None else us
    if not us0.U <= D or not is_dominating(G, D):
        raise TriangulationError("pulled-back set failed verification")
    return SurfaceResult(D, trace, reports, union, Fraction(epsilon))
