"""Loading and validating the tabulated data (one JSON file per table)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .arith import is_exact_divisor
from .ecurve import FixtureInconsistency, HRecipe, WeierstrassCurve, bad_primes
from .etalib import EtaQuotient, InvalidEtaQuotient, is_modular_function
from .relation import ModelPolynomial, TSpec

DEFAULT_DIR = Path(__file__).with_name("fixtures")

# (curve/involution/h table, t table, P table)
_GROUPS = {"new": (1, 3, 5), "old": (2, 4, 6)}


@dataclass(frozen=True)
class BiellipticDatum:
    level: int
    involution: int | str
    curve: WeierstrassCurve
    h_recipe: HRecipe
    t_spec: TSpec
    expected_P: ModelPolynomial
    case: str
    errata_notes: tuple[str, ...] = ()
    records: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def is_atkin_lehner(self) -> bool:
        return isinstance(self.involution, int)

    @property
    def involution_label(self) -> str:
        if self.is_atkin_lehner:
            return f"w_{self.involution}"
        return {"S2": "S_2", "S2W64": "(S_2 w_64)^2"}.get(self.involution, str(self.involution))


def _read(directory: Path, name: str) -> dict:
    path = directory / name
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError:
        raise FixtureInconsistency(f"missing fixture file {path}") from None
    except json.JSONDecodeError as exc:
        raise FixtureInconsistency(f"{path}: {exc}") from None


def _by_level(doc: dict, name: str) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for rec in doc.get("records", []):
        N = int(rec["level"])
        if N in out:
            raise FixtureInconsistency(f"{name}: duplicate record for level {N}")
        out[N] = rec
    return out


def _involution(rec: dict, N: int) -> int | str:
    kind = rec.get("kind")
    if kind == "AL":
        Q = int(rec["Q"])
        if not is_exact_divisor(Q, N):
            raise FixtureInconsistency(f"level {N}: w_{Q} is not an Atkin-Lehner involution")
        return Q
    if kind in ("S2", "S2W64"):
        return kind
    raise FixtureInconsistency(f"level {N}: unknown involution kind {kind!r}")


def _datum(N: int, case: str, cur: dict, trec: dict, prec: dict, notes: tuple[str, ...]) -> BiellipticDatum:
    c = cur["curve"]
    try:
        curve = WeierstrassCurve.from_ainvs(c["ainvs"], label=c["label"])
    except ValueError as exc:
        raise FixtureInconsistency(f"level {N}: {exc}") from None
    stray = [p for p in bad_primes(curve) if curve.conductor % p]
    if stray:
        raise FixtureInconsistency(
            f"level {N}: {curve.name} has bad reduction at {stray} outside its conductor")
    h = cur["h"]
    try:
        recipe = HRecipe(curve, tuple(tuple(t) for t in h["terms"]), N)
    except ValueError as exc:
        raise FixtureInconsistency(f"level {N}: {exc}") from None
    terms = []
    for term in trec["terms"]:
        try:
            e = EtaQuotient.parse(N, term["eta"])
        except ValueError as exc:
            raise FixtureInconsistency(f"level {N}: {exc}") from None
        if not is_modular_function(e):
            raise FixtureInconsistency(
                f"level {N}: {e.pretty()} is not a modular function on X0({N})")
        terms.append((int(term["coefficient"]), e))
    P = ModelPolynomial(tuple(prec["P1"]), tuple(prec["P2"]))
    return BiellipticDatum(N, _involution(cur["involution"], N), curve, recipe,
                           TSpec(N, tuple(terms)), P, case, notes,
                           {"curve": cur, "t": trec, "P": prec})


def _squash(text, width: int = 72) -> str:
    text = " ".join(str(text).split())
    return text if len(text) <= width else text[:width - 3] + "..."


@lru_cache(maxsize=8)
def _load(directory: str, stamp: tuple) -> dict[int, BiellipticDatum]:
    d = Path(directory)
    errata = _read(d, "errata.json").get("errata", [])
    notes: dict[int, list[str]] = {}
    for e in errata:
        notes.setdefault(int(e["level"]), []).append(
            f"table {e['table']} {e['field']}: {_squash(e['as_printed'])!r} -> "
            f"{_squash(e['corrected'])!r} ({e['evidence']})")
    out: dict[int, BiellipticDatum] = {}
    for case, (tc, tt, tp) in _GROUPS.items():
        names = [f"table{k}.json" for k in (tc, tt, tp)]
        cur, tr, pr = (_by_level(_read(d, n), n) for n in names)
        if not (set(cur) == set(tr) == set(pr)):
            raise FixtureInconsistency(
                f"levels differ between {', '.join(names)}: "
                f"{sorted(set(cur) ^ set(tr) | set(cur) ^ set(pr))}")
        for N in sorted(cur):
            if N in out:
                raise FixtureInconsistency(f"level {N} appears in both cases")
            out[N] = _datum(N, case, cur[N], tr[N], pr[N], tuple(notes.get(N, ())))
    levels = _read(d, "levels.json")
    if sorted(levels.get("corrected", [])) != sorted(out):
        raise FixtureInconsistency("levels.json does not list the tabulated levels")
    return out


def load_fixtures(directory: str | Path | None = None) -> dict[int, BiellipticDatum]:
    """All tabulated data keyed by level; raises ``FixtureInconsistency`` on bad data."""
    d = Path(directory or DEFAULT_DIR).resolve()
    # edited files must not be served from the cache
    stamp = tuple((p.name, p.stat().st_mtime_ns, p.stat().st_size) for p in sorted(d.glob("*.json")))
    try:
        return _load(str(d), stamp)
    except (KeyError, TypeError, InvalidEtaQuotient) as exc:
        raise FixtureInconsistency(f"malformed fixture: {exc!r}") from None


def load_errata(directory: str | Path | None = None) -> list[dict]:
    return _read(Path(directory or DEFAULT_DIR), "errata.json").get("errata", [])


def get_datum(N: int, directory: str | Path | None = None) -> BiellipticDatum:
    data = load_fixtures(directory)
    if N not in data:
        raise KeyError(f"level {N} not in bielliptic fixture set")
    return data[N]
