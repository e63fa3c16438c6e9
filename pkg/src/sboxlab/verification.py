"""Machine checks of the known facts and of the theorem-shaped implications.

`verify_facts` re-measures the pinned fixture tables (the four counterexample
permutations and the eight SERPENT S-boxes) and asserts every claimed value.
`check_implications` samples seeded random normalized permutations and tests
each implication sample by sample; any violation is reported with the witness
table and an independent recomputation of its measures (direct-summation
Walsh coefficients, brute-force difference counts) so a fast-path bug cannot
masquerade as a counterexample.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from numba import njit

from .core import SBox, format_sbox, normalize, parse_sbox
from .enumeration import HYPER_FLAT, IS_SUBSPACE_MASK, PLANES_FLAT
from .predicates import AnalysisReport, analyze

SUPPORTED_DIMS = (3, 4, 5, 6)

#: the cube map x -> x^3 over the 8-element field: an APN permutation, kept
#: as a forced sample so the dimension-3 run always hits a weakly APN table
CUBE_OVER_GF8 = (0, 1, 3, 4, 5, 6, 7, 2)


# ---------------------------------------------------------------------------
# fixtures

def _default_fixtures_dir() -> Path:
    return Path(str(resources.files("sboxlab") / "data"))


def load_sbox_file(path) -> dict[str, SBox]:
    """Parse a fixture file: one "<name> <decimal csv>" entry per line."""
    out: dict[str, SBox] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected '<name> <csv>'")
        name, csv = parts
        try:
            out[name] = parse_sbox(csv)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out


# ---------------------------------------------------------------------------
# fact checking

@dataclass(frozen=True)
class Claim:
    """One asserted relation on one measured table."""

    sbox: str
    measure: str
    relation: str
    actual: object
    ok: bool

    def describe(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return f"{self.sbox}.{self.measure} {self.relation} (actual {self.actual}): {status}"


@dataclass(frozen=True)
class FactCase:
    """A named fact with its per-measure claims, or a fixture-loading error."""

    id: str
    sboxes: tuple[str, ...]
    claims: tuple[Claim, ...] = ()
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.ok for c in self.claims)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.passed else "fail"


def _measure(report: AnalysisReport, name: str):
    if name.startswith("n_") and name[2:].isdigit():
        return report.n_i.get(int(name[2:]), 0)
    return getattr(report, name)


_RELATIONS = {
    "==": lambda a, b: a == b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def _claim(reports: dict[str, AnalysisReport], sbox: str, measure: str,
           op: str, expected) -> Claim:
    actual = _measure(reports[sbox], measure)
    ok = _RELATIONS[op](actual, expected)
    return Claim(sbox, measure, f"{op} {expected}", actual, ok)


#: fact id -> (fixture kind, fixture names, list of (sbox, measure, op, expected))
_FACTS = [
    ("weakly-apn-without-4-uniformity", "counterexamples", ("c1",), [
        ("c1", "bijective", "==", True),
        ("c1", "weakly_apn", "==", True),
        ("c1", "delta_star", ">", 4),
    ]),
    ("weakly-apn-with-one-constant-component", "counterexamples", ("c1",), [
        ("c1", "weakly_apn", "==", True),
        ("c1", "n_hat", "==", 1),
    ]),
    ("one-constant-component-not-sufficient", "counterexamples", ("c2",), [
        ("c2", "bijective", "==", True),
        ("c2", "n_hat", "==", 1),
        ("c2", "weakly_apn", "==", False),
    ]),
    ("cubic-degree-profile-not-sufficient", "counterexamples", ("c2",), [
        ("c2", "degree", "==", 3),
        ("c2", "n_3", "==", 14),
        ("c2", "weakly_apn", "==", False),
    ]),
    ("uniformity-hypothesis-required", "counterexamples", ("c3",), [
        ("c3", "bijective", "==", True),
        ("c3", "lin", "==", 8),
        ("c3", "n_3", "==", 14),
        ("c3", "weakly_apn", "==", False),
    ]),
    ("linearity-hypothesis-required", "counterexamples", ("c4",), [
        ("c4", "bijective", "==", True),
        ("c4", "delta_star", "==", 4),
        ("c4", "n_3", "==", 14),
        ("c4", "weakly_apn", "==", False),
    ]),
    ("serpent-strong-classification", "serpent",
     ("S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7"),
     [(f"S{i}", "bijective", "==", True) for i in range(8)]
     + [(f"S{i}", "strong", "==", i in (3, 4, 5, 7)) for i in range(8)]),
    ("serpent-none-very-strong", "serpent",
     ("S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7"),
     [(f"S{i}", "very_strong", "==", False) for i in range(8)]),
]


def verify_facts(fixtures_dir=None) -> list[FactCase]:
    """Run every fact check; a missing fixture file fails only its own facts."""
    base = Path(fixtures_dir) if fixtures_dir is not None else _default_fixtures_dir()
    files = {"counterexamples": base / "counterexamples.txt",
             "serpent": base / "serpent.txt"}

    tables: dict[str, dict[str, SBox]] = {}
    errors: dict[str, str] = {}
    for kind, path in files.items():
        if not path.is_file():
            errors[kind] = f"missing fixture file: {path}"
            continue
        try:
            loaded = load_sbox_file(path)
        except ValueError as exc:
            errors[kind] = str(exc)
            continue
        if kind == "serpent":
            loaded = {name: normalize(box) for name, box in loaded.items()}
        tables[kind] = loaded

    results = []
    report_cache: dict[tuple[str, str], AnalysisReport] = {}
    for fact_id, kind, names, claim_specs in _FACTS:
        if kind in errors:
            results.append(FactCase(fact_id, names, error=errors[kind]))
            continue
        missing = [n for n in names if n not in tables[kind]]
        if missing:
            results.append(FactCase(
                fact_id, names,
                error=f"fixture(s) {', '.join(missing)} not found in {files[kind]}"))
            continue
        reports = {}
        for n in names:
            key = (kind, n)
            if key not in report_cache:
                report_cache[key] = analyze(tables[kind][n])
            reports[n] = report_cache[key]
        claims = tuple(_claim(reports, *spec) for spec in claim_specs)
        results.append(FactCase(fact_id, names, claims))
    return results


# ---------------------------------------------------------------------------
# implication checking over sampled permutations

@njit(cache=True, nogil=True)
def _bulk_measures(tables, m, with_m4, planes_flat, hyper_flat, is_sub,
                   out_wapn, out_nhat, out_delta, out_anti2, out_deg3, out_n3):
    """Per-table measures for bijective normalized tables.

    Always fills wapn / nhat / delta; the m=4 extras (anti2, deg3, n3, with
    n3 via the cubic-coefficient rank, valid for bijections) only when asked.
    """
    n = 1 << m
    cnt = np.zeros(64, np.int64)
    basis = np.zeros(8, np.int64)
    anf = np.zeros(16, np.int64)
    t = np.zeros(64, np.int64)
    for idx in range(tables.shape[0]):
        for x in range(n):
            t[x] = tables[idx, x]
        wapn = 1
        delta = 0
        for u in range(1, n):
            for i in range(n):
                cnt[i] = 0
            nz = 0
            for x in range(n):
                v = t[x ^ u] ^ t[x]
                c = cnt[v] + 1
                cnt[v] = c
                if c == 1:
                    nz += 1
                if c > delta:
                    delta = c
            if nz * 4 <= n:
                wapn = 0
        out_wapn[idx] = wapn
        out_delta[idx] = delta

        best = 0
        for u in range(1, n):
            for i in range(m):
                basis[i] = 0
            rank = 0
            base = t[u] ^ t[0]
            for x in range(n):
                val = (t[x ^ u] ^ t[x]) ^ base
                while val != 0:
                    top = 0
                    vv = val
                    while vv > 1:
                        vv >>= 1
                        top += 1
                    if basis[top] == 0:
                        basis[top] = val
                        rank += 1
                        val = 0
                    else:
                        val ^= basis[top]
            constant = (1 << (m - rank)) - 1
            if constant > best:
                best = constant
        out_nhat[idx] = best

        if with_m4:
            for x in range(16):
                anf[x] = t[x]
            step = 1
            while step < 16:
                for x in range(16):
                    if x & step:
                        anf[x] ^= anf[x ^ step]
                step *= 2
            rank = 0
            for i in range(4):
                basis[i] = 0
            for s in (7, 11, 13, 14, 15):
                v = anf[s]
                for bit in (3, 2, 1, 0):
                    if (v >> bit) & 1:
                        if basis[bit] == 0:
                            basis[bit] = v
                            rank += 1
                            break
                        v ^= basis[bit]
            out_n3[idx] = 15 - ((1 << (4 - rank)) - 1)
            out_deg3[idx] = 1 if rank >= 1 else 0

            anti = 1
            for i in range(35):
                mask = 0
                for j in range(4):
                    mask |= 1 << t[planes_flat[4 * i + j]]
                if is_sub[mask]:
                    anti = 0
                    break
            if anti:
                for i in range(15):
                    mask = 0
                    for j in range(8):
                        mask |= 1 << t[hyper_flat[8 * i + j]]
                    if is_sub[mask]:
                        anti = 0
                        break
            out_anti2[idx] = anti


def _bulk(tables: np.ndarray, m: int, threads: int):
    """Run the measure kernel, split into per-thread batches, merged in order."""
    count = tables.shape[0]
    with_m4 = m == 4
    outs = [np.zeros(count, np.int64) for _ in range(6)]

    def run(lo, hi):
        _bulk_measures(tables[lo:hi], m, with_m4,
                       PLANES_FLAT, HYPER_FLAT, IS_SUBSPACE_MASK,
                       outs[0][lo:hi], outs[1][lo:hi], outs[2][lo:hi],
                       outs[3][lo:hi], outs[4][lo:hi], outs[5][lo:hi])

    threads = max(1, min(threads, count))
    if threads == 1:
        run(0, count)
    else:
        bounds = np.linspace(0, count, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda i: run(bounds[i], bounds[i + 1]), range(threads)))
    wapn, nhat, delta, anti2, deg3, n3 = outs
    return wapn.astype(bool), nhat, delta, anti2.astype(bool), deg3.astype(bool), n3


# definitional recomputation used in violation reports ----------------------

def _oracle_report(table: tuple[int, ...], m: int) -> dict:
    """Measures by the slow definitional route: brute-force difference counts,
    direct-summation Walsh coefficients, literal constant-component scan."""
    n = 1 << m
    par = lambda x: x.bit_count() & 1
    delta = 0
    min_image = n
    for u in range(1, n):
        row = [0] * n
        for x in range(n):
            row[table[x ^ u] ^ table[x]] += 1
        delta = max(delta, max(row))
        min_image = min(min_image, sum(1 for c in row if c))
    lin = max(abs(sum((-1) ** (par(b & table[x]) ^ par(a & x)) for x in range(n)))
              for a in range(n) for b in range(1, n))
    nhat = 0
    for u in range(1, n):
        deriv = [table[x ^ u] ^ table[x] for x in range(n)]
        count = sum(1 for v in range(1, n)
                    if len({par(d & v) for d in deriv}) == 1)
        nhat = max(nhat, count)
    spectrum: dict[int, int] = {}
    for v in range(1, n):
        truth = [par(table[x] & v) for x in range(n)]
        degs = [s.bit_count() for s in range(n)
                if sum(truth[x] for x in range(n) if x & s == x) & 1]
        d = max(degs) if degs else -1
        spectrum[d] = spectrum.get(d, 0) + 1
    return {
        "delta_star": delta,
        "weakly_apn": 2 * min_image > n // 2,
        "lin": lin,
        "n_hat": nhat,
        "degree_spectrum": {str(k): v for k, v in sorted(spectrum.items())},
    }


@dataclass(frozen=True)
class ImplicationOutcome:
    """Tally of one implication over one dimension's sample set."""

    name: str
    dim: int
    checked: int
    holds: int
    vacuous: int
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class ImplicationReport:
    samples: int
    seed: int
    dims: tuple[int, ...]
    outcomes: list[ImplicationOutcome]

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    @property
    def violation_count(self) -> int:
        return sum(len(o.violations) for o in self.outcomes)

    def to_json_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "dims": list(self.dims),
            "ok": self.ok,
            "outcomes": [
                {"name": o.name, "dim": o.dim, "checked": o.checked,
                 "holds": o.holds, "vacuous": o.vacuous,
                 "violations": o.violations}
                for o in self.outcomes
            ],
        }


def _forced_tables(m: int) -> list[tuple[int, ...]]:
    forced = [tuple(range(1 << m))]
    if m == 3:
        forced.append(CUBE_OVER_GF8)
    if m == 4:
        base = _default_fixtures_dir()
        for box in load_sbox_file(base / "counterexamples.txt").values():
            forced.append(box.table)
        for box in load_sbox_file(base / "serpent.txt").values():
            forced.append(normalize(box).table)
    return forced


def sample_tables(m: int, samples: int, seed: int) -> np.ndarray:
    """Forced tables plus seeded uniform random normalized permutations."""
    rng = random.Random(f"{seed}:{m}")
    rows = _forced_tables(m)
    tail = list(range(1, 1 << m))
    for _ in range(samples):
        rng.shuffle(tail)
        rows.append((0, *tail))
    return np.array(rows, dtype=np.uint8)


def _outcome(name, dim, hyp, concl, tables, measures) -> ImplicationOutcome:
    viol_idx = np.nonzero(hyp & ~concl)[0]
    violations = []
    for i in viol_idx:
        table = tuple(int(v) for v in tables[i])
        violations.append({
            "implication": name,
            "dim": dim,
            "table": ",".join(str(v) for v in table),
            "measures": {k: int(v[i]) for k, v in measures.items()},
            "oracle": _oracle_report(table, dim),
        })
    return ImplicationOutcome(
        name=name, dim=dim, checked=len(hyp),
        holds=int((hyp & concl).sum()), vacuous=int((~hyp).sum()),
        violations=violations)


def check_implications(samples: int, seed: int, dims,
                       threads: int = 1) -> ImplicationReport:
    """Test every implication on seeded random normalized permutations.

    The general bound (weakly APN limits the constant derivative components
    to at most one) runs at every requested dimension; the 4-bit statements
    run at dimension 4 only.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    dims = tuple(sorted(set(dims)))
    bad = [d for d in dims if d not in SUPPORTED_DIMS]
    if bad or not dims:
        raise ValueError(f"dims must be a nonempty subset of {SUPPORTED_DIMS}, "
                         f"got {sorted(bad) or '()'}")

    outcomes = []
    for m in dims:
        tables = sample_tables(m, samples, seed)
        wapn, nhat, delta, anti2, deg3, n3 = _bulk(tables, m, threads)
        measures = {"weakly_apn": wapn, "n_hat": nhat, "delta_star": delta}
        outcomes.append(_outcome(
            "weakly-apn-implies-at-most-one-constant-component", m,
            wapn, nhat <= 1, tables, measures))
        if m == 4:
            measures = {"weakly_apn": wapn, "n_hat": nhat, "delta_star": delta,
                        "anti_invariant_2": anti2, "degree_is_3": deg3, "n_3": n3}
            outcomes.append(_outcome(
                "uniformity-plus-anti-invariance-implies-weakly-apn", m,
                (delta <= 4) & anti2, wapn, tables, measures))
            outcomes.append(_outcome(
                "no-constant-components-implies-weakly-apn", m,
                nhat == 0, wapn, tables, measures))
            outcomes.append(_outcome(
                "weakly-apn-degree-profile", m,
                wapn, deg3 & np.isin(n3, (12, 14, 15)), tables, measures))
            outcomes.append(_outcome(
                "weakly-apn-refined-degree-profile", m,
                wapn, deg3 & np.isin(n3, (14, 15)), tables, measures))
    return ImplicationReport(samples=samples, seed=seed, dims=dims,
                             outcomes=outcomes)
