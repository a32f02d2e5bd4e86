"""Executable checks of the vanishing, duality and linkage statements.

Every check computes Tate tables on a finite window and reports one of four
verdicts:

- ``verified``: the statement holds on the window, with a non-vacuous hypothesis;
- ``consistent-on-window``: nothing contradicts the statement, but the window
  alone cannot decide it (vacuous or uncertified hypotheses);
- ``certified-all-degrees``: it holds on the window and periodicity of one of
  the arguments extends it to every degree;
- ``REFUTED``: a concrete counterexample degree (only possible for equalities,
  or for implications whose hypothesis is periodicity-certified).

"Vanishing for i >> 0" is read on the upper half [ceil(hi/2), hi] of the
window and "for i << 0" on the lower half [lo, floor(lo/2)].
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from .algebra import Algebra, Ideal, annihilator_ideal, canonical_module, is_gorenstein, quotient_algebra
from .config import current_settings
from .errors import InputError, NotGorensteinError, TatekitError, UnstableModuleError, WindowError
from .homalg import (
    Periodicity,
    TateTable,
    combine_cocycles,
    complete_resolution,
    cosyzygy,
    detect_periodicity,
    ext_basis,
    free_rank,
    ordinary_ext,
    ordinary_tor,
    pushout_extension,
    remember,
    strip_free,
    tate_ext,
    tate_tor,
)
from .invariants import complexity_estimate, gdim_is_zero, profile
from .linkage import dagger, ideal_linkage_check, link_operator
from .modrep import Module, a_dual, annihilator, cyclic_module, free_module, is_iso, matlis_dual, residue_field, tensor

logger = logging.getLogger(__name__)

Verdict = Literal["verified", "consistent-on-window", "certified-all-degrees", "REFUTED"]
Window = tuple[int, int]

VERIFIED: Verdict = "verified"
CONSISTENT: Verdict = "consistent-on-window"
CERTIFIED: Verdict = "certified-all-degrees"
REFUTED: Verdict = "REFUTED"

DEGENERATE = "satisfied-degenerately"
VACUOUS = "vacuous"
UNCERTIFIED = "hypothesis-not-certified"
BUDGET = "search-budget-exhausted"
EXPLORATION = "hypotheses-unverified-exploration"


@dataclass(frozen=True)
class CheckReport:
    check: str
    algebra: str
    inputs: dict[str, str]
    window: Window | None
    verdict: Verdict
    notes: tuple[str, ...] = ()
    evidence: dict[str, Any] = field(default_factory=dict)
    witness: int | None = None

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    @property
    def check_id(self) -> str:
        return f"{self.check}/{self.algebra}/{','.join(self.inputs.values())}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.check_id,
            "check": self.check,
            "algebra": self.algebra,
            "inputs": dict(self.inputs),
            "window": None if self.window is None else list(self.window),
            "verdict": self.verdict,
            "notes": list(self.notes),
            "witness": self.witness,
            "evidence": self.evidence,
        }

    def line(self) -> str:
        window = "-" if self.window is None else f"{self.window[0]}:{self.window[1]}"
        notes = f" [{', '.join(self.notes)}]" if self.notes else ""
        witness = f" witness={self.witness}" if self.witness is not None else ""
        return f"{self.verdict:<22} {self.check_id} window={window}{witness}{notes}"


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _window(window: Window | None) -> Window:
    cfg = current_settings()
    lo, hi = (cfg.window_lo, cfg.window_hi) if window is None else window
    if not lo <= 0 < hi:
        raise WindowError(f"window must satisfy lo <= 0 < hi, got {lo}:{hi}")
    return lo, hi


def _gorenstein(a: Algebra, check: str) -> None:
    if not is_gorenstein(a):
        raise NotGorensteinError(f"{check} needs a Gorenstein algebra; socle dimension is {a.socle_dim}")


def _upper(lo: int, hi: int) -> tuple[int, int]:
    return (hi + 1) // 2, hi


def _lower(lo: int, hi: int) -> tuple[int, int]:
    return lo, lo // 2


def _first_nonzero(table: TateTable, lo: int, hi: int) -> int | None:
    for i in range(max(lo, table.lo), min(hi, table.hi) + 1):
        if table.dim(i):
            return i
    return None


def certificate(lo: int, hi: int, *modules: Module, hypotheses: Sequence[Window] = ()) -> Periodicity | None:
    """Periodicity of one argument that makes every table over it periodic on [lo, hi].

    Every range in `hypotheses`, where a vanishing hypothesis is read, must
    span at least one full period.
    """

    span = hi - lo + 1
    shortest = min((b - a + 1 for a, b in hypotheses), default=span)
    for m in modules:
        found = detect_periodicity(m)
        if found is None:
            continue
        if found.zero or (found.period + found.shift <= span and found.period <= shortest):
            return found
    return None


def _cert_evidence(cert: Periodicity | None) -> dict[str, Any]:
    return {"certificate": None if cert is None else cert.to_dict()}


def _derived(m: Module, key: str, build: Callable[[Module], Module]) -> Module:
    cached = m._cache.get(("derived", key))
    if cached is None:
        cached = remember(m, ("derived", key), build(m))
    return cached


def _dual(m: Module) -> Module:
    return _derived(m, "dual", a_dual)


def _matlis(m: Module) -> Module:
    return _derived(m, "matlis", matlis_dual)


def _linked(m: Module) -> Module:
    return _derived(m, "link", lambda x: link_operator(strip_free(x)))


def _twisted(m: Module) -> Module:
    return _derived(m, "omega", lambda x: tensor(x, canonical_module(x.algebra)))


@dataclass(frozen=True)
class _Comparison:
    label: str
    left: TateTable
    right: TateTable
    index: Callable[[int], int]
    mapping: str

    def mismatch(self) -> int | None:
        for i in self.left.degrees():
            if self.left.dim(i) != self.right.dim(self.index(i)):
                return i
        return None

    def evidence(self) -> dict[str, Any]:
        return {"left": self.left.to_dict(), "right": self.right.to_dict(), "degrees": self.mapping}


def _same(i: int) -> int:
    return i


def _mirror(i: int) -> int:
    return -i - 1


def _equality_report(
    check: str,
    a: Algebra,
    inputs: dict[str, str],
    window: Window,
    comparisons: list[_Comparison],
    cert: Periodicity | None,
    notes: tuple[str, ...] = (),
) -> CheckReport:
    evidence: dict[str, Any] = {c.label: c.evidence() for c in comparisons}
    evidence.update(_cert_evidence(cert))
    for c in comparisons:
        bad = c.mismatch()
        if bad is not None:
            evidence["failed"] = c.label
            return CheckReport(check, a.name, inputs, window, REFUTED, notes, evidence, bad)
    verdict = CERTIFIED if cert is not None else VERIFIED
    return CheckReport(check, a.name, inputs, window, verdict, notes, evidence)


def _agreement_report(
    check: str,
    a: Algebra,
    inputs: dict[str, str],
    window: Window | None,
    conditions: dict[str, bool],
    witnesses: dict[str, int | None],
    cert: Periodicity | None,
    evidence: dict[str, Any],
) -> CheckReport:
    """Equivalence of several vanishing conditions read on the window."""

    evidence = {**evidence, "conditions": conditions, **_cert_evidence(cert)}
    values = set(conditions.values())
    if values == {True}:
        return CheckReport(check, a.name, inputs, window, CERTIFIED if cert else VERIFIED, (), evidence)
    if values == {False}:
        return CheckReport(check, a.name, inputs, window, CONSISTENT, (DEGENERATE,), evidence)
    witness = next((w for name, w in witnesses.items() if not conditions[name] and w is not None), None)
    if cert is not None:
        return CheckReport(check, a.name, inputs, window, REFUTED, (), evidence, witness)
    return CheckReport(check, a.name, inputs, window, CONSISTENT, (UNCERTIFIED,), evidence, witness)


def _pair(m: Module, n: Module) -> dict[str, str]:
    return {"M": m.label(), "N": n.label()}


# ---------------------------------------------------------------------------
# Symmetry in the vanishing of Tate cohomology
# ---------------------------------------------------------------------------


def check_symmetry(m: Module, n: Module, window: Window | None = None, threshold: int = 0) -> CheckReport:
    """Ext(M,N) = 0 for i >= t gives Ext(N,M) = 0 for i < -t; vanishing for i < t gives it for i >= -t."""

    a = m.algebra
    _gorenstein(a, "check_symmetry")
    lo, hi = _window(window)
    t = threshold
    if not max(lo + 1, -hi) <= t <= min(hi, -lo - 1):
        raise WindowError(f"threshold {t} does not fit the window {lo}:{hi}")
    forward = tate_ext(m, n, lo, hi)
    backward = tate_ext(n, m, lo, hi)
    cert = certificate(lo, hi, m, n)

    parts = {
        "ge": ((t, hi), (lo, -t - 1)),
        "lt": ((lo, t - 1), (-t, hi)),
    }
    outcome: dict[str, str] = {}
    witness = None
    for name, (hyp, concl) in parts.items():
        if not forward.vanishes_on(*hyp):
            outcome[name] = "vacuous"
        elif backward.vanishes_on(*concl):
            outcome[name] = "holds"
        else:
            certified = certificate(lo, hi, m, n, hypotheses=[hyp]) is not None
            outcome[name] = "fails-certified" if certified else "fails-uncertified"
            witness = witness if witness is not None else _first_nonzero(backward, *concl)

    evidence = {"ext(M,N)": forward.to_dict(), "ext(N,M)": backward.to_dict(), "parts": outcome, "threshold": t}
    evidence.update(_cert_evidence(cert))
    inputs = _pair(m, n)
    states = set(outcome.values())
    if "fails-certified" in states:
        return CheckReport("symmetry", a.name, inputs, (lo, hi), REFUTED, (), evidence, witness)
    if "fails-uncertified" in states:
        return CheckReport("symmetry", a.name, inputs, (lo, hi), CONSISTENT, (UNCERTIFIED,), evidence, witness)
    if states == {"vacuous"}:
        return CheckReport("symmetry", a.name, inputs, (lo, hi), CONSISTENT, (VACUOUS,), evidence)
    return CheckReport("symmetry", a.name, inputs, (lo, hi), CERTIFIED if cert else VERIFIED, (), evidence)


def check_full_symmetry(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """Ext(M,N) = 0 in all degrees iff Ext(N,M) = 0 in all degrees."""

    a = m.algebra
    _gorenstein(a, "check_full_symmetry")
    lo, hi = _window(window)
    forward = tate_ext(m, n, lo, hi)
    backward = tate_ext(n, m, lo, hi)
    cert = certificate(lo, hi, m, n)
    return _agreement_report(
        "full-symmetry",
        a,
        _pair(m, n),
        (lo, hi),
        {"ext(M,N)=0": forward.vanishes_on(lo, hi), "ext(N,M)=0": backward.vanishes_on(lo, hi)},
        {"ext(M,N)=0": _first_nonzero(forward, lo, hi), "ext(N,M)=0": _first_nonzero(backward, lo, hi)},
        cert,
        {"ext(M,N)": forward.to_dict(), "ext(N,M)": backward.to_dict()},
    )


# ---------------------------------------------------------------------------
# Dualities
# ---------------------------------------------------------------------------


def check_duality_l2(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """dim Ext^i(M, N^v) = dim Tor_i(M, N)."""

    a = m.algebra
    _gorenstein(a, "check_duality_l2")
    lo, hi = _window(window)
    comparison = _Comparison(
        "ext(M,N^v)=tor(M,N)", tate_ext(m, _matlis(n), lo, hi), tate_tor(m, n, lo, hi), _same, "i -> i"
    )
    return _equality_report("matlis-duality", a, _pair(m, n), (lo, hi), [comparison], certificate(lo, hi, m, n))


def check_balanced_l5(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """dim Tor_i(M, N) = dim Tor_i(N, M)."""

    a = m.algebra
    _gorenstein(a, "check_balanced_l5")
    lo, hi = _window(window)
    comparison = _Comparison("tor(M,N)=tor(N,M)", tate_tor(m, n, lo, hi), tate_tor(n, m, lo, hi), _same, "i -> i")
    return _equality_report("tor-balance", a, _pair(m, n), (lo, hi), [comparison], certificate(lo, hi, m, n))


def check_ar_duality(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """dim Ext^i(M, N) = dim Ext^{-i-1}(N, M (x) omega)."""

    a = m.algebra
    _gorenstein(a, "check_ar_duality")
    lo, hi = _window(window)
    comparison = _Comparison(
        "ext(M,N)=ext(N,M(x)w)",
        tate_ext(m, n, lo, hi),
        tate_ext(n, _twisted(m), -hi - 1, -lo - 1),
        _mirror,
        "i -> -i-1",
    )
    return _equality_report("ar-duality", a, _pair(m, n), (lo, hi), [comparison], certificate(lo, hi, m, n))


def check_betti_bass_c1(m: Module, window: Window | None = None) -> CheckReport:
    """Stable Betti number i equals stable Bass number -i-1."""

    a = m.algebra
    _gorenstein(a, "check_betti_bass_c1")
    lo, hi = _window(window)
    k = residue_field(a)
    comparison = _Comparison(
        "betti_i=bass^(-i-1)", tate_ext(m, k, lo, hi), tate_ext(k, m, -hi - 1, -lo - 1), _mirror, "i -> -i-1"
    )
    return _equality_report("betti-bass", a, {"M": m.label()}, (lo, hi), [comparison], certificate(lo, hi, m, k))


def _gorenstein_quotient(a: Algebra, i: Ideal, check: str) -> Module:
    b, _ = quotient_algebra(a, i)
    if not is_gorenstein(b):
        raise NotGorensteinError(f"{check}: A/({', '.join(i.describe())}) is not Gorenstein")
    return cyclic_module(a, i)


def check_gorenstein_ideal_c6(i: Ideal, window: Window | None = None) -> CheckReport:
    """For a Gorenstein quotient A/a, stable Betti number i equals stable Bass number i."""

    a = i.algebra
    _gorenstein(a, "check_gorenstein_ideal_c6")
    lo, hi = _window(window)
    q = _gorenstein_quotient(a, i, "check_gorenstein_ideal_c6")
    k = residue_field(a)
    comparison = _Comparison("betti_i=bass^i", tate_ext(q, k, lo, hi), tate_ext(k, q, lo, hi), _same, "i -> i")
    return _equality_report(
        "gorenstein-quotient-betti-bass", a, {"A/a": q.label()}, (lo, hi), [comparison], certificate(lo, hi, q, k)
    )


def check_pr1(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """dim Ext^i(M^dagger, N) = dim Tor_{-i-1}(M, N) and dim Ext^i(M, N) = dim Tor_{-i-1}(M^dagger, N)."""

    a = m.algebra
    _gorenstein(a, "check_pr1")
    lo, hi = _window(window)
    md = _dual(m)
    comparisons = [
        _Comparison(
            "ext(M+,N)=tor(M,N)", tate_ext(md, n, lo, hi), tate_tor(m, n, -hi - 1, -lo - 1), _mirror, "i -> -i-1"
        ),
        _Comparison(
            "ext(M,N)=tor(M+,N)", tate_ext(m, n, lo, hi), tate_tor(md, n, -hi - 1, -lo - 1), _mirror, "i -> -i-1"
        ),
    ]
    return _equality_report("dagger-ext-tor", a, _pair(m, n), (lo, hi), comparisons, certificate(lo, hi, m, n))


def check_free_vanishing(m: Module, window: Window | None = None) -> CheckReport:
    """Tate (co)homology against or from a free module vanishes."""

    a = m.algebra
    _gorenstein(a, "check_free_vanishing")
    lo, hi = _window(window)
    one = free_module(a, 1)
    tables = {
        "ext(M,A)": tate_ext(m, one, lo, hi),
        "ext(A,M)": tate_ext(one, m, lo, hi),
        "tor(M,A)": tate_tor(m, one, lo, hi),
        "tor(A,M)": tate_tor(one, m, lo, hi),
    }
    evidence: dict[str, Any] = {name: t.to_dict() for name, t in tables.items()}
    for name, t in tables.items():
        bad = _first_nonzero(t, lo, hi)
        if bad is not None:
            evidence["failed"] = name
            return CheckReport("free-vanishing", a.name, {"M": m.label()}, (lo, hi), REFUTED, (), evidence, bad)
    cert = certificate(lo, hi, one)
    evidence.update(_cert_evidence(cert))
    return CheckReport("free-vanishing", a.name, {"M": m.label()}, (lo, hi), CERTIFIED if cert else VERIFIED, (), evidence)


# ---------------------------------------------------------------------------
# Reducible complexity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EtaSearch:
    """Outcome of the search for a cocycle eta whose pushout K_eta has smaller complexity."""

    found: bool
    module_complexity: str
    degree: int | None = None
    coefficients: tuple[int, ...] = ()
    k_betti: tuple[int, ...] = ()
    k_complexity: str = ""
    candidates_tried: int = 0
    trivial: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "found": self.found,
            "trivial": self.trivial,
            "module_complexity": self.module_complexity,
            "degree": self.degree,
            "coefficients": list(self.coefficients),
            "k_betti": list(self.k_betti),
            "k_complexity": self.k_complexity,
            "candidates_tried": self.candidates_tried,
        }


def _candidates(p: int, dim: int, samples: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for j in range(dim):
        out.append(tuple(1 if t == j else 0 for t in range(dim)))
    if p**dim - 1 <= dim + samples:
        combos = (c for c in itertools.product(range(p), repeat=dim) if any(c))
    else:
        combos = (tuple(int(x) for x in rng.integers(0, p, size=dim)) for _ in range(samples))
    seen = set(out)
    for c in combos:
        if any(c) and c not in seen:
            seen.add(c)
            out.append(c)
    return out


def find_reducing_eta(
    n: Module,
    *,
    degrees: tuple[int, ...] | None = None,
    samples: int | None = None,
    seed: int | None = None,
    horizon: int | None = None,
) -> EtaSearch:
    """Search Ext^q(N, N) for eta with cx K_eta < cx N.

    Basis cocycles come first, then every nonzero combination when there are
    few of them, otherwise seeded random combinations.
    """

    cfg = current_settings()
    degrees = cfg.eta_degrees if degrees is None else degrees
    samples = cfg.eta_samples if samples is None else samples
    seed = cfg.seed if seed is None else seed
    horizon = cfg.eta_horizon if horizon is None else horizon
    key = ("eta_search", degrees, samples, seed, horizon)
    cached = n._cache.get(key)
    if cached is not None:
        return cached

    base = complexity_estimate(n, horizon)
    if base.value == 0:
        return remember(n, key, EtaSearch(True, base.label(), trivial=True))

    rng = np.random.default_rng(seed)
    tried = 0
    result = EtaSearch(False, base.label())
    for q in degrees:
        basis = ext_basis(n, q)
        if not basis:
            continue
        for coeffs in _candidates(n.algebra.p, len(basis), samples, rng):
            tried += 1
            k_eta = pushout_extension(n, combine_cocycles(basis, np.asarray(coeffs, dtype=np.int64)), q)
            est = complexity_estimate(k_eta, horizon)
            if est.value is not None and (base.value is None or est.value < base.value):
                result = EtaSearch(True, base.label(), q, coeffs, est.betti, est.label(), tried)
                break
        if result.found:
            break
    if not result.found:
        result = EtaSearch(False, base.label(), candidates_tried=tried)
    logger.debug("theorems.eta_search module=%s found=%s tried=%d", n.label(), result.found, tried)
    return remember(n, key, result)


def check_reducible_complexity_l4(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """When N has reducible complexity, Ext(M,N) vanishing for i >> 0, for i << 0 and for all i agree."""

    a = m.algebra
    _gorenstein(a, "check_reducible_complexity_l4")
    lo, hi = _window(window)
    table = tate_ext(m, n, lo, hi)
    search = find_reducing_eta(n)
    up, down = _upper(lo, hi), _lower(lo, hi)
    cert = certificate(lo, hi, m, n, hypotheses=[up, down])
    conditions = {
        "i>>0": table.vanishes_on(*up),
        "i<<0": table.vanishes_on(*down),
        "all i": table.vanishes_on(lo, hi),
    }
    witnesses = {
        "i>>0": _first_nonzero(table, *up),
        "i<<0": _first_nonzero(table, *down),
        "all i": _first_nonzero(table, lo, hi),
    }
    evidence = {"ext(M,N)": table.to_dict(), "eta": search.to_dict()}
    report = _agreement_report(
        "reducible-complexity", a, _pair(m, n), (lo, hi), conditions, witnesses, cert if search.found else None, evidence
    )
    if search.found:
        return report
    # without a reducing eta the hypothesis is open, so a disagreement refutes nothing
    verdict = CONSISTENT
    return CheckReport(
        report.check, report.algebra, report.inputs, report.window, verdict, (*report.notes, BUDGET), report.evidence, report.witness
    )


# ---------------------------------------------------------------------------
# Depth formulas
# ---------------------------------------------------------------------------


def check_sup_inf_t3(m: Module, n: Module, horizon: int | None = None) -> CheckReport:
    """With Tor_i(M,N) = 0 for i >= 0: sup{Tor_i != 0} + inf{Ext^i != 0} = 0."""

    a = m.algebra
    _gorenstein(a, "check_sup_inf_t3")
    horizon = current_settings().horizon if horizon is None else horizon
    if horizon < 1:
        raise WindowError(f"horizon must be >= 1, got {horizon}")
    tor_hat = tate_tor(m, n, 0, horizon)
    cert = certificate(0, horizon, m, n)
    inputs = _pair(m, n)
    evidence: dict[str, Any] = {"tor_hat(M,N)": tor_hat.to_dict(), **_cert_evidence(cert)}
    if not tor_hat.vanishes_on(0, horizon):
        return CheckReport("sup-inf", a.name, inputs, (0, horizon), CONSISTENT, (VACUOUS,), evidence)
    if m.kdim == 0 or n.kdim == 0:
        return CheckReport("sup-inf", a.name, inputs, (0, horizon), CONSISTENT, (DEGENERATE,), evidence)

    tor = [ordinary_tor(m, n, i) for i in range(horizon + 1)]
    ext = [ordinary_ext(m, n, i) for i in range(horizon + 1)]
    sup_tor = max((i for i, d in enumerate(tor) if d), default=None)
    inf_ext = next((i for i, d in enumerate(ext) if d), None)
    evidence.update({"tor": tor, "ext": ext, "sup_tor": sup_tor, "inf_ext": inf_ext})
    holds = sup_tor is not None and inf_ext is not None and sup_tor + inf_ext == 0
    if holds:
        return CheckReport("sup-inf", a.name, inputs, (0, horizon), CERTIFIED if cert else VERIFIED, (), evidence)
    witness = sup_tor if sup_tor else inf_ext
    if cert is not None:
        return CheckReport("sup-inf", a.name, inputs, (0, horizon), REFUTED, (), evidence, witness)
    return CheckReport("sup-inf", a.name, inputs, (0, horizon), CONSISTENT, (UNCERTIFIED,), evidence, witness)


def check_depth_formula(m: Module, n: Module, window: Window | None = None) -> CheckReport:
    """Ext(M,N) = 0 for i >= -1 forces sup{i : Ext^i(M,N) != 0} = 0."""

    a = m.algebra
    _gorenstein(a, "check_depth_formula")
    lo, hi = _window(window)
    table = tate_ext(m, n, lo, hi)
    cert = certificate(lo, hi, m, n, hypotheses=[(max(lo, -1), hi)])
    inputs = _pair(m, n)
    evidence: dict[str, Any] = {"ext(M,N)": table.to_dict(), **_cert_evidence(cert)}
    if not table.vanishes_on(max(lo, -1), hi):
        return CheckReport("depth-formula", a.name, inputs, (lo, hi), CONSISTENT, (VACUOUS,), evidence)
    if m.kdim == 0 or n.kdim == 0:
        return CheckReport("depth-formula", a.name, inputs, (lo, hi), CONSISTENT, (DEGENERATE,), evidence)
    ext = [ordinary_ext(m, n, i) for i in range(hi + 1)]
    evidence["ext"] = ext
    bad = next((i for i in range(1, hi + 1) if ext[i]), None)
    if ext[0] > 0 and bad is None:
        return CheckReport("depth-formula", a.name, inputs, (lo, hi), CERTIFIED if cert else VERIFIED, (), evidence)
    witness = bad if bad is not None else 0
    verdict = REFUTED if cert is not None else CONSISTENT
    return CheckReport("depth-formula", a.name, inputs, (lo, hi), verdict, () if cert else (UNCERTIFIED,), evidence, witness)


# ---------------------------------------------------------------------------
# Gorenstein ideals
# ---------------------------------------------------------------------------


def check_gorenstein_pair_c2(ia: Ideal, ib: Ideal, window: Window | None = None) -> CheckReport:
    """Ext^i(A/a, A/b), Ext^i(A/b, A/a) and Tor_i(A/a, A/b) vanish for i >> 0 together."""

    a = ia.algebra
    _gorenstein(a, "check_gorenstein_pair_c2")
    lo, hi = _window(window)
    qa = _gorenstein_quotient(a, ia, "check_gorenstein_pair_c2")
    qb = _gorenstein_quotient(a, ib, "check_gorenstein_pair_c2")
    up = _upper(lo, hi)
    tables = {
        "ext(A/a,A/b)": tate_ext(qa, qb, 0, hi),
        "ext(A/b,A/a)": tate_ext(qb, qa, 0, hi),
        "tor(A/a,A/b)": tate_tor(qa, qb, 0, hi),
    }
    return _agreement_report(
        "gorenstein-pair",
        a,
        {"A/a": qa.label(), "A/b": qb.label()},
        (lo, hi),
        {name: t.vanishes_on(*up) for name, t in tables.items()},
        {name: _first_nonzero(t, *up) for name, t in tables.items()},
        certificate(lo, hi, qa, qb, hypotheses=[up]),
        {name: t.to_dict() for name, t in tables.items()},
    )


def check_quotient_ext_tor(m: Module, ia: Ideal, window: Window | None = None) -> CheckReport:
    """For A/a Gorenstein: Ext^i(M, A/a) = 0 for i >> 0 iff Tor_i(M, A/a) = 0 for i >> 0."""

    a = m.algebra
    _gorenstein(a, "check_quotient_ext_tor")
    lo, hi = _window(window)
    q = _gorenstein_quotient(a, ia, "check_quotient_ext_tor")
    up = _upper(lo, hi)
    tables = {"ext(M,A/a)": tate_ext(m, q, 0, hi), "tor(M,A/a)": tate_tor(m, q, 0, hi)}
    return _agreement_report(
        "quotient-ext-tor",
        a,
        {"M": m.label(), "A/a": q.label()},
        (lo, hi),
        {name: t.vanishes_on(*up) for name, t in tables.items()},
        {name: _first_nonzero(t, *up) for name, t in tables.items()},
        certificate(lo, hi, m, q, hypotheses=[up]),
        {name: t.to_dict() for name, t in tables.items()},
    )


def check_ideal_linkage(ia: Ideal) -> CheckReport:
    """A/a ~= lambda(A/(0:a)) and (0:(0:a)) = a."""

    a = ia.algebra
    _gorenstein(a, "check_ideal_linkage")
    partner = annihilator_ideal(ia)
    iso = ideal_linkage_check(a, ia)
    double = annihilator_ideal(partner) == ia
    inputs = {"a": ", ".join(ia.describe())}
    evidence = {"partner": partner.describe(), "iso": iso.to_dict(), "double_annihilator": double}
    if iso.status == "undetermined":
        return CheckReport("ideal-linkage", a.name, inputs, None, CONSISTENT, (BUDGET,), evidence)
    verdict = VERIFIED if bool(iso) and double else REFUTED
    return CheckReport("ideal-linkage", a.name, inputs, None, verdict, (), evidence)


# ---------------------------------------------------------------------------
# Duals and linkage
# ---------------------------------------------------------------------------


def check_dagger_duality(m: Module) -> CheckReport:
    """M ~= M^dagger dagger, ann M = ann M^dagger and M^dagger has G-dimension zero."""

    a = m.algebra
    _gorenstein(a, "check_dagger_duality")
    md = dagger(m)
    mdd = dagger(md)
    iso = is_iso(m, mdd)
    same_ann = annihilator(m) == annihilator(md)
    gdim = gdim_is_zero(md)
    evidence = {"iso": iso.to_dict(), "same_annihilator": same_ann, "gdim_zero": gdim}
    inputs = {"M": m.label()}
    if iso.status == "undetermined":
        return CheckReport("dagger-duality", a.name, inputs, None, CONSISTENT, (BUDGET,), evidence)
    verdict = VERIFIED if bool(iso) and same_ann and gdim else REFUTED
    return CheckReport("dagger-duality", a.name, inputs, None, verdict, (), evidence)


def _require_stable(*mods: Module) -> None:
    for m in mods:
        if free_rank(m) > 0:
            raise UnstableModuleError(f"{m.label()} has a free summand; the linkage operator needs a stable module")


def check_linked_vanishing(l: Module, m: Module, window: Window | None = None) -> CheckReport:  # noqa: E741
    """For N = lambda M: dim Ext^i(L, M) = dim Tor_{i+1}(L, N)."""

    a = m.algebra
    _gorenstein(a, "check_linked_vanishing")
    lo, hi = _window(window)
    n = _linked(m)
    comparison = _Comparison(
        "ext(L,M)=tor(L,lambda M)", tate_ext(l, m, lo, hi), tate_tor(l, n, lo + 1, hi + 1), lambda i: i + 1, "i -> i+1"
    )
    return _equality_report(
        "linked-vanishing", a, {"L": l.label(), "M": m.label()}, (lo, hi), [comparison], certificate(lo, hi, l, m)
    )


def check_dagger_linkage(m: Module, x: Module, window: Window | None = None) -> CheckReport:
    """For N = lambda M: dim Ext^i(M, X) = dim Ext^{i-1}(X^dagger, N)."""

    a = m.algebra
    _gorenstein(a, "check_dagger_linkage")
    lo, hi = _window(window)
    n = _linked(m)
    comparison = _Comparison(
        "ext(M,X)=ext(X+,lambda M)",
        tate_ext(m, x, lo, hi),
        tate_ext(_dual(x), n, lo - 1, hi - 1),
        lambda i: i - 1,
        "i -> i-1",
    )
    return _equality_report(
        "dagger-linkage", a, {"M": m.label(), "X": x.label()}, (lo, hi), [comparison], certificate(lo, hi, m, x)
    )


def check_linked_ext_t6(m: Module, x: Module, window: Window | None = None) -> CheckReport:
    """Linkage by the zero ideal preserves Tate cohomology: Ext(M,X) = Ext(lambda X, lambda M)."""

    a = m.algebra
    _gorenstein(a, "check_linked_ext_t6")
    lo, hi = _window(window)
    _require_stable(m, x)
    n, y = _linked(m), _linked(x)
    comparisons = [
        _Comparison("ext(M,X)=ext(Y,N)", tate_ext(m, x, lo, hi), tate_ext(y, n, lo, hi), _same, "i -> i"),
        _Comparison("ext(M,M)=ext(N,N)", tate_ext(m, m, lo, hi), tate_ext(n, n, lo, hi), _same, "i -> i"),
    ]
    self_m, self_x = is_iso(m, n), is_iso(x, y)
    notes: tuple[str, ...] = ()
    if self_m and self_x:
        comparisons.append(
            _Comparison("ext(M,X)=ext(X,M)", tate_ext(m, x, lo, hi), tate_ext(x, m, lo, hi), _same, "i -> i")
        )
        notes = ("self-linked",)
    return _equality_report(
        "linked-ext", a, {"M": m.label(), "X": x.label()}, (lo, hi), comparisons, certificate(lo, hi, m, x), notes
    )


def check_even_linkage_t2(m: Module, window: Window | None = None) -> CheckReport:
    """M and L = lambda lambda M have equal stable Betti and Bass numbers; betti_i(M) = bass^{i-1}(lambda M)."""

    a = m.algebra
    _gorenstein(a, "check_even_linkage_t2")
    lo, hi = _window(window)
    _require_stable(m)
    n = _linked(m)
    l = _linked(n)  # noqa: E741
    pm, pl = profile(m, lo, hi), profile(l, lo, hi)
    k = residue_field(a)
    comparisons = [
        _Comparison("betti(M)=betti(L)", pm.stable_betti, pl.stable_betti, _same, "i -> i"),
        _Comparison("bass(M)=bass(L)", pm.stable_bass, pl.stable_bass, _same, "i -> i"),
        _Comparison("betti_i(M)=bass^(i-1)(N)", pm.stable_betti, tate_ext(k, n, lo - 1, hi - 1), lambda i: i - 1, "i -> i-1"),
    ]
    report = _equality_report("even-linkage", a, {"M": m.label()}, (lo, hi), comparisons, certificate(lo, hi, m))
    report.evidence["L~=M"] = is_iso(m, l).to_dict()
    return report


# ---------------------------------------------------------------------------
# Negative control
# ---------------------------------------------------------------------------


def check_negative_control(a: Algebra, window: Window | None = None) -> CheckReport:
    """Every Gorenstein-only operation must reject a non-Gorenstein algebra."""

    if is_gorenstein(a):
        raise InputError("the negative control needs a non-Gorenstein algebra")
    lo, hi = _window(window)
    k = residue_field(a)
    ideal_m = a.maximal_ideal()
    attempts: dict[str, Callable[[], object]] = {
        "complete_resolution": lambda: complete_resolution(k, lo, hi),
        "cosyzygy": lambda: cosyzygy(k, 1),
        "dagger": lambda: dagger(k),
        "tate_ext": lambda: tate_ext(k, k, lo, hi),
        "tate_tor": lambda: tate_tor(k, k, lo, hi),
        "profile": lambda: profile(k, lo, hi),
        "check_symmetry": lambda: check_symmetry(k, k, (lo, hi)),
        "check_full_symmetry": lambda: check_full_symmetry(k, k, (lo, hi)),
        "check_duality_l2": lambda: check_duality_l2(k, k, (lo, hi)),
        "check_balanced_l5": lambda: check_balanced_l5(k, k, (lo, hi)),
        "check_ar_duality": lambda: check_ar_duality(k, k, (lo, hi)),
        "check_betti_bass_c1": lambda: check_betti_bass_c1(k, (lo, hi)),
        "check_gorenstein_ideal_c6": lambda: check_gorenstein_ideal_c6(ideal_m, (lo, hi)),
        "check_reducible_complexity_l4": lambda: check_reducible_complexity_l4(k, k, (lo, hi)),
        "check_sup_inf_t3": lambda: check_sup_inf_t3(k, k),
        "check_pr1": lambda: check_pr1(k, k, (lo, hi)),
        "check_gorenstein_pair_c2": lambda: check_gorenstein_pair_c2(ideal_m, ideal_m, (lo, hi)),
        "check_linked_ext_t6": lambda: check_linked_ext_t6(k, k, (lo, hi)),
        "check_even_linkage_t2": lambda: check_even_linkage_t2(k, (lo, hi)),
    }
    outcomes: dict[str, str] = {}
    for name, attempt in attempts.items():
        try:
            attempt()
        except NotGorensteinError:
            outcomes[name] = "rejected"
        except TatekitError as exc:
            outcomes[name] = f"wrong-error:{exc.code}"
        else:
            outcomes[name] = "computed"
    evidence = {"gorenstein": False, "socle_dim": a.socle_dim, "attempts": outcomes}
    ok = all(v == "rejected" for v in outcomes.values())
    return CheckReport("negative-control", a.name, {"A": a.name}, (lo, hi), VERIFIED if ok else REFUTED, (), evidence)
