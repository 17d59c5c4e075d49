"""Command-line interface: ``lhsp6 verify | casimir | simulate | invariants | superpose``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical
failure.

Scenario files are JSON objects with the keys ``algebra``, ``preset``,
``coefficients``, ``initial``, ``window``, ``rtol``, ``atol``, ``grid``
and ``seed``. ``coefficients`` maps names such as ``"b16"`` or ``"a2"`` to
numbers or coefficient-function objects, or is the string ``"random"``
(seeded by ``seed``). ``preset`` is either ``null`` or an object with a
``name`` (``em``, ``cho``, ``cck``, ``su3``) and its parameter block.
``initial`` is one phase point, a list of them, or ``{"random": k}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

STATE_COLUMNS = ("q1", "q2", "q3", "p1", "p2", "p3")


class InputError(ValueError):
    """Malformed scenario or trajectory input; ``where`` names the location."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def fmt(x: float) -> str:
    """Shortest round-trip decimal form of a double."""
    return repr(float(x))


# -- scenario -----------------------------------------------------------------

SCENARIO_KEYS = ("algebra", "preset", "coefficients", "initial", "window", "rtol", "atol", "grid", "seed")
PRESET_PARAMETERS = {
    "em": {"m": 3, "e": 3, "gamma": 1},
    "cho": {"m": 3, "k": 3, "gamma": 3, "b2": 1, "b3": 1, "b6": 1},
    "cck": {"m": 3, "k": 3, "gamma": 3, "b2": 1, "b3": 1, "b6": 1},
    "su3": {"a": 4},
}
PRESET_ALGEBRA = {"em": "sp6", "cho": "sp6", "cck": "sp6", "su3": "su3"}


@dataclass
class Scenario:
    """Validated scenario; :meth:`to_json` re-parses to an equal scenario."""

    algebra: str
    preset: dict | None = None
    coefficients: dict | str = field(default_factory=dict)
    initial: list | dict = field(default_factory=lambda: [[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]])
    window: tuple[float, float] = (0.0, 10.0)
    rtol: float = 1e-10
    atol: float = 1e-12
    grid: int | list = 101
    seed: int | None = None

    @classmethod
    def from_json(cls, obj) -> "Scenario":
        from .dynamics import ALGEBRAS, as_coefficient
        from .dynamics.system import _normalize_key

        if not isinstance(obj, dict):
            raise InputError("scenario must be a JSON object")
        unknown = sorted(set(obj) - set(SCENARIO_KEYS))
        if unknown:
            raise InputError(f"unknown keys {unknown}; allowed: {list(SCENARIO_KEYS)}")

        preset = obj.get("preset")
        if preset is not None:
            preset = _check_preset(preset)
        algebra = obj.get("algebra")
        if algebra is None:
            if preset is None:
                raise InputError("either 'algebra' or 'preset' is required", "algebra")
            algebra = PRESET_ALGEBRA[preset["name"]]
        if algebra not in ALGEBRAS:
            raise InputError(f"unknown algebra {algebra!r}; expected one of {sorted(ALGEBRAS)}", "algebra")
        if preset is not None and PRESET_ALGEBRA[preset["name"]] != algebra:
            raise InputError(f"preset {preset['name']!r} belongs to {PRESET_ALGEBRA[preset['name']]}", "algebra")

        coeffs = obj.get("coefficients", {})
        if coeffs is None:
            coeffs = {}
        if preset is not None and coeffs not in ({},):
            raise InputError("give either a preset or coefficients, not both", "coefficients")
        if isinstance(coeffs, str):
            if coeffs != "random":
                raise InputError("the only string value allowed is 'random'", "coefficients")
        elif isinstance(coeffs, dict):
            for key, val in coeffs.items():
                where = f"coefficients.{key}"
                try:
                    _normalize_key(algebra, key)
                    as_coefficient(val)
                except (ValueError, TypeError) as exc:
                    raise InputError(str(exc), where) from None
        else:
            raise InputError("must be an object or 'random'", "coefficients")

        window = obj.get("window", [0.0, 10.0])
        if not (isinstance(window, list) and len(window) == 2 and all(_is_number(w) for w in window)):
            raise InputError("must be [t0, t1]", "window")
        if window[1] < window[0]:
            raise InputError("t1 must be >= t0", "window")

        initial = obj.get("initial", [[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]])
        initial = _check_initial(initial)

        rtol = obj.get("rtol", 1e-10)
        atol = obj.get("atol", 1e-12)
        for name, v in (("rtol", rtol), ("atol", atol)):
            if not _is_number(v) or v <= 0:
                raise InputError("must be a positive number", name)
        grid = obj.get("grid", 101)
        if isinstance(grid, bool) or not (isinstance(grid, int) and grid >= 1
                                           or isinstance(grid, list) and grid and all(_is_number(g) for g in grid)):
            raise InputError("must be a positive integer or a list of times", "grid")
        if isinstance(grid, list):
            g = np.asarray(grid, dtype=float)
            if np.any(np.diff(g) <= 0) or g[0] < window[0] or g[-1] > window[1]:
                raise InputError("times must be increasing and inside the window", "grid")
        seed = obj.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            raise InputError("must be an integer or null", "seed")
        needs_seed = coeffs == "random" or isinstance(initial, dict)
        if needs_seed and seed is None:
            raise InputError("random coefficients or initial points need a seed", "seed")
        return cls(algebra, preset, coeffs, initial, (float(window[0]), float(window[1])),
                   float(rtol), float(atol), grid, seed)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "preset": self.preset,
            "coefficients": self.coefficients,
            "initial": self.initial,
            "window": list(self.window),
            "rtol": self.rtol,
            "atol": self.atol,
            "grid": self.grid,
            "seed": self.seed,
        }

    def initial_points(self) -> np.ndarray:
        if isinstance(self.initial, dict):
            rng = np.random.default_rng([self.seed, 1])
            return rng.standard_normal((int(self.initial["random"]), 6))
        return np.asarray(self.initial, dtype=float)

    def resolve(self):
        """The :class:`~lhsp6.dynamics.LHSystemSpec` plus preset warnings."""
        from .dynamics import LHSystemSpec, random_spec

        if self.preset is not None:
            return _build_preset(self.preset, self.window)
        if self.coefficients == "random":
            return random_spec(self.algebra, self.seed), []
        return LHSystemSpec(self.algebra, self.coefficients), []


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and np.isfinite(x)


def _check_initial(initial):
    if isinstance(initial, dict):
        if set(initial) != {"random"} or isinstance(initial["random"], bool) \
                or not isinstance(initial["random"], int) or initial["random"] < 1:
            raise InputError("expected {\"random\": k} with k >= 1", "initial")
        return initial
    if isinstance(initial, list) and len(initial) == 6 and all(_is_number(x) for x in initial):
        return [initial]
    if not isinstance(initial, list) or not initial:
        raise InputError("expected a phase point or a list of phase points", "initial")
    for n, pt in enumerate(initial):
        if not (isinstance(pt, list) and len(pt) == 6 and all(_is_number(x) for x in pt)):
            raise InputError("a phase point has six numbers", f"initial[{n}]")
    return initial


def _check_preset(preset):
    from .dynamics import as_coefficient

    if not isinstance(preset, dict) or "name" not in preset:
        raise InputError("expected an object with a 'name'", "preset")
    name = preset["name"]
    if name not in PRESET_PARAMETERS:
        raise InputError(f"unknown preset {name!r}; expected one of {sorted(PRESET_PARAMETERS)}", "preset.name")
    spec = PRESET_PARAMETERS[name]
    unknown = sorted(set(preset) - set(spec) - {"name"})
    if unknown:
        raise InputError(f"unknown parameters {unknown}; allowed: {sorted(spec)}", "preset")
    for key, count in spec.items():
        where = f"preset.{key}"
        if key not in preset:
            if key in ("b2", "b3", "b6"):
                continue
            raise InputError("missing parameter", where)
        val = preset[key]
        items = [val] if count == 1 else val
        if count > 1 and not (isinstance(val, list) and len(val) == count):
            raise InputError(f"expected a list of {count} coefficient functions", where)
        for n, item in enumerate(items):
            try:
                as_coefficient(item)
            except (ValueError, TypeError) as exc:
                raise InputError(str(exc), where if count == 1 else f"{where}[{n}]") from None
    return preset


def _build_preset(preset: dict, window):
    from . import presets as ps
    from .dynamics import as_coefficient

    name = preset["name"]
    get = lambda k, default=0.0: preset.get(k, default)  # noqa: E731
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            if name == "em":
                spec = ps.em_preset(ps.EMFieldData(get("m"), get("e"), get("gamma"), window))
            elif name in ("cho", "cck"):
                data = ps.OscillatorData(get("m"), get("k"), get("gamma"), as_coefficient(get("b2")),
                                         as_coefficient(get("b3")), as_coefficient(get("b6")), window)
                spec = ps.cho_preset(data) if name == "cho" else ps.cck_preset(data)
            else:
                spec = ps.su3_preset(*get("a"))
        except ps.PresetError as exc:
            raise InputError(str(exc), "preset") from None
    return spec, [str(w.message) for w in caught]


def load_scenario(path: str | Path) -> Scenario:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None
    try:
        return Scenario.from_json(obj)
    except InputError as exc:
        raise InputError(str(exc), str(path)) from None


# -- trajectory files ---------------------------------------------------------


def coefficient_header(spec) -> list[str]:
    return [f"# coefficient {spec.prefix}{i} = {json.dumps(f.to_json(), sort_keys=True)}"
            for i, f in spec.coefficients.items()]


def trajectory_csv(traj, spec, scenario: Scenario | None, warnings_: Sequence[str] = ()) -> str:
    lines = [f"# lhsp6 {__version__} trajectory"]
    if scenario is not None:
        lines.append(f"# scenario {json.dumps(scenario.to_json(), sort_keys=True)}")
    lines.append(f"# algebra {spec.algebra}")
    lines += coefficient_header(spec)
    lines += [f"# warning {w}" for w in warnings_]
    st = traj.stats
    lines.append(f"# solver dopri5 accepted={st.accepted} rejected={st.rejected} rtol={fmt(st.rtol)} atol={fmt(st.atol)}")
    lines.append("t," + ",".join(STATE_COLUMNS) + ",copy")
    for l in range(traj.k):
        for t, z in zip(traj.times, traj.states[:, l, :]):
            lines.append(",".join([fmt(t)] + [fmt(v) for v in z] + [str(l + 1)]))
    return "\n".join(lines) + "\n"


def trajectory_json(traj, spec, scenario: Scenario | None, warnings_: Sequence[str] = ()) -> str:
    obj = {
        "scenario": scenario.to_json() if scenario is not None else None,
        "algebra": spec.algebra,
        "coefficients": spec.to_json()["coefficients"],
        "warnings": list(warnings_),
        "stats": traj.stats.to_json(),
        "times": [float(t) for t in traj.times],
        "copies": [[[float(v) for v in z] for z in traj.states[:, l, :]] for l in range(traj.k)],
    }
    return json.dumps(obj, sort_keys=True) + "\n"


@dataclass
class LoadedTrajectories:
    """Aligned copies read from one or more files: ``states`` is ``(n, k, 6)``."""

    times: np.ndarray
    states: np.ndarray
    headers: list[str]


def _read_csv(path: Path):
    headers, body = [], []
    for line in path.read_text().splitlines():
        (headers if line.startswith("#") else body).append(line)
    if not body:
        raise InputError("no data rows", str(path))
    reader = csv.DictReader(io.StringIO("\n".join(body)))
    missing = [c for c in ("t",) + STATE_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise InputError(f"missing columns {missing}", str(path))
    copies: dict[int, list] = {}
    for n, row in enumerate(reader, start=2 + len(headers)):
        try:
            c = int(row.get("copy") or 1)
            vals = [float(row["t"])] + [float(row[k]) for k in STATE_COLUMNS]
        except (TypeError, ValueError):
            raise InputError("non-numeric entry", f"{path}:{n}") from None
        copies.setdefault(c, []).append(vals)
    out = []
    for c in sorted(copies):
        arr = np.array(copies[c])
        out.append((arr[:, 0], arr[:, 1:]))
    return out, headers


def _read_json(path: Path):
    try:
        obj = json.loads(path.read_text())
        times = np.asarray(obj["times"], dtype=float)
        copies = [(times, np.asarray(c, dtype=float)) for c in obj["copies"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a trajectory JSON file ({exc})", str(path)) from None
    return copies, []


def load_trajectories(paths: Iterable[str | Path]) -> LoadedTrajectories:
    """Read copies from every file (in order) and check their grids agree."""
    copies, headers = [], []
    for p in paths:
        p = Path(p)
        if not p.exists():
            raise InputError("file not found", str(p))
        got, h = (_read_json if p.suffix == ".json" else _read_csv)(p)
        copies += got
        headers += h
    times = copies[0][0]
    for n, (t, z) in enumerate(copies, start=1):
        if z.shape != (len(t), 6):
            raise InputError("state rows must have six coordinates", f"copy {n}")
        if t.shape != times.shape or not np.array_equal(t, times):
            raise InputError("time grids of the copies do not match", f"copy {n}")
    if np.any(np.diff(times) <= 0):
        raise InputError("times must be strictly increasing")
    return LoadedTrajectories(times, np.stack([z for _, z in copies], axis=1), headers)


# -- verify -------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


FAULTS = ("sp6-constant", "su3-constant", "casimir")


def _sp6_checks(fault: str | None) -> list[Check]:
    from .liealg import boson_constants, build_sp6, table_mismatches, verify_jacobi
    from .realization import field_closure_report, homomorphism_report, realize_sp6

    labels, sc = build_sp6()
    if fault == "sp6-constant":
        entry = {c: -v for c, v in sc.entry(0, 1).items()}
        sc = sc.corrupted(0, 1, entry).corrupted(1, 0, {c: -v for c, v in entry.items()})
    fields = [f for _, f in realize_sp6()]
    closure, fsc = field_closure_report(fields, "sp6 field closure")
    hom = homomorphism_report(fields, sc, "sp6 realization homomorphism")
    diff = table_mismatches(fsc, sc)
    jac = verify_jacobi(sc)
    literal = verify_jacobi(boson_constants())
    return [
        Check(closure.name, closure.ok, f"{closure.checked} pairs decompose in the 21-field span, {len(closure.failures)} failures"),
        Check("sp6 structure constants", not diff,
              f"field brackets vs boson table, {len(diff)} mismatched pairs"
              + (f" (first {labels[diff[0][0]]}, {labels[diff[0][1]]})" if diff else "")),
        Check(hom.name, hom.ok, f"{hom.checked} pairs, {len(hom.failures)} failures"),
        Check("sp6 Jacobi identity", jac.ok, str(jac)),
        Check("sp6 Jacobi identity (literal commutator formula)", literal.ok, str(literal)),
    ]


def _su3_checks(fault: str | None) -> list[Check]:
    from .liealg import build_su3, printed_su3_constants, table_mismatches, verify_jacobi, SU3_NAMES
    from .realization import TranscriptionMismatch, field_closure_report, realize_su3

    _, sc = build_su3()
    if fault == "su3-constant":
        sc = sc.corrupted(0, 1, {6: 1}).corrupted(1, 0, {6: -1})
    printed = printed_su3_constants()
    diff = table_mismatches(sc, printed)
    out = [Check("su3 structure constants", not diff,
                 f"28 pairs vs the printed relations, {len(diff)} mismatched"
                 + (f" (first [{SU3_NAMES[diff[0][0]]}, {SU3_NAMES[diff[0][1]]}])" if diff else ""))]
    try:
        fields = [f for _, f in realize_su3()]
        out.append(Check("su3 fields match the printed Y1..Y8", True, "8 fields"))
    except TranscriptionMismatch as exc:
        return out + [Check("su3 fields match the printed Y1..Y8", False, str(exc))]
    closure, fsc = field_closure_report(fields, "su3 field closure")
    fdiff = table_mismatches(fsc, sc)
    jac = verify_jacobi(sc)
    out += [
        Check(closure.name, closure.ok and not fdiff,
              f"{closure.checked} pairs, {len(closure.failures)} outside the span, {len(fdiff)} with other constants"),
        Check("su3 Jacobi identity", jac.ok, str(jac)),
    ]
    return out


def _realization_checks(fault: str | None) -> list[Check]:
    from .realization import (hamiltonian_lift, hamiltonian_of, kappa_report, lift_report,
                              realize_sp6, realize_su3, sp6_hamiltonians, su3_hamiltonians)

    out = []
    for alg, fields, hams in (("sp6", [f for _, f in realize_sp6()], sp6_hamiltonians()),
                              ("su3", [f for _, f in realize_su3()], su3_hamiltonians())):
        lift = lift_report(fields, hams, f"{alg} inner product condition")
        out.append(Check(lift.name, lift.ok, f"{lift.checked} pairs (i_X omega = dh), {len(lift.failures)} failures"))
        rt = [k for k, h in enumerate(hams) if hamiltonian_of(hamiltonian_lift(h)) != h]
        out.append(Check(f"{alg} lift round trip", not rt, f"{len(hams)} Hamiltonians, {len(rt)} failures"))
        symp = [k for k, f in enumerate(fields) if not f.is_hamiltonian()]
        out.append(Check(f"{alg} symplectic matrices", not symp, f"M^T J + J M = 0 for {len(fields)} fields"))
        rep, kappa = kappa_report(fields, hams, f"{alg} field/Poisson sign")
        out.append(Check(rep.name, rep.ok and kappa is not None,
                         f"kappa = {kappa} on {rep.checked} pairs, {len(rep.failures)} deviations"))
    return out


def _casimir_checks(fault: str | None) -> list[Check]:
    from .invariants import (F_sym, c2_in_h, c2_x_form, casimir_charpoly, minimal_prolongation,
                             permute, prolong_field, to_h_symbols)
    from .polyring import prolonged_space
    from .realization import realize_sp6

    cs = casimir_charpoly()
    c2_h = c2_in_h()
    if fault == "casimir":
        c2_h = c2_h + c2_h.space.var("h1") * c2_h.space.var("h2")
    odd = [k for k, c in zip((1, 3, 5), cs.odd) if not c.is_zero()]
    out = [
        Check("Casimir odd coefficients vanish", not odd, "lambda^1, lambda^3, lambda^5"),
        Check("C2 from the characteristic polynomial vs generator form", cs.C2 == c2_x_form(),
              f"{len(cs.C2.terms)} terms"),
        Check("C2 vs its Hamiltonian form", to_h_symbols(cs.C2) == c2_h, "12 products of h_i"),
    ]
    f1 = F_sym(1)
    out.append(Check("F(1) = 0", f1.is_zero(), "symbolic"))
    f2, f3 = F_sym(2), F_sym(3)
    space3 = prolonged_space(3)
    f2_3 = f2.embed(space3)
    rhs = f2_3 + permute(f2_3, 2, 3) + permute(f2_3, 1, 3)
    out.append(Check("F(3) = F(2) + F13(2) + F23(2)", f3 == rhs, f"{len(f3.terms)} terms"))
    fields = [f for _, f in realize_sp6()]
    for k, fk in ((1, f1), (2, f2), (3, f3)):
        bad = [n for n, f in enumerate(fields) if not prolong_field(f, k).apply(fk).is_zero()]
        out.append(Check(f"prolonged fields annihilate F({k})", not bad, f"21 fields, {len(bad)} failures"))
    s = minimal_prolongation()
    out.append(Check("minimal prolongation", s is not None, f"s = {s} (computed by a rank test)"))
    return out


SCOPES: dict[str, Callable[[str | None], list[Check]]] = {
    "sp6": _sp6_checks,
    "su3": _su3_checks,
    "realization": _realization_checks,
    "casimir": _casimir_checks,
}


def run_verify(scope: str = "all", fault: str | None = None) -> list[Check]:
    names = list(SCOPES) if scope == "all" else [scope]
    checks = []
    for n in names:
        checks += SCOPES[n](fault)
    return checks


def cmd_verify(args, out) -> int:
    checks = run_verify(args.scope, args.inject_fault)
    for c in checks:
        print(c.line(), file=out)
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)
    return EXIT_OK if not failed else EXIT_FAIL


# -- casimir ------------------------------------------------------------------


def cmd_casimir(args, out) -> int:
    from .invariants import casimir_charpoly, to_h_symbols

    poly = casimir_charpoly().order(args.order)
    if args.symbols == "h":
        poly = to_h_symbols(poly)
    text = f"C{args.order} = {poly.to_text()}\n"
    _emit(text, args.out, out)
    return EXIT_OK


# -- simulate -----------------------------------------------------------------


def cmd_simulate(args, out) -> int:
    from .dynamics import integrate_prolonged

    scenario = load_scenario(args.scenario)
    spec, notes = scenario.resolve()
    for w in notes:
        print(f"warning: {w}", file=sys.stderr)
    traj = integrate_prolonged(spec, scenario.initial_points(), scenario.window, scenario.rtol,
                               scenario.atol, grid=scenario.grid)
    write = trajectory_json if args.out and str(args.out).endswith(".json") else trajectory_csv
    _emit(write(traj, spec, scenario, notes), args.out, out)
    if args.out:
        print(f"wrote {traj.k} copies x {len(traj.times)} times to {args.out}", file=out)
    return EXIT_OK


# -- invariants ---------------------------------------------------------------


def invariant_series(times, states) -> list[tuple[str, np.ndarray]]:
    """Pairwise ``Omega`` for every copy pair and ``F(k)`` on the first ``k`` copies."""
    from .invariants import F_from_pairings, omega_matrix

    om = omega_matrix(states)
    series = []
    k = states.shape[1]
    for a, b in itertools.combinations(range(k), 2):
        series.append((f"omega_{a + 1}_{b + 1}", om[:, a, b]))
    for j in range(1, k + 1):
        series.append((f"F{j}", F_from_pairings(states[:, :j, :])))
    return series


def drift(values: np.ndarray) -> np.ndarray:
    """``|v(t) - v(t0)| / max(1, |v(t0)|)``."""
    return np.abs(values - values[0]) / max(1.0, abs(float(values[0])))


def cmd_invariants(args, out) -> int:
    data = load_trajectories(args.inputs)
    rows = ["quantity,t,value,drift"]
    worst = {}
    for name, vals in invariant_series(data.times, data.states):
        d = drift(vals)
        worst[name] = float(d.max())
        rows += [f"{name},{fmt(t)},{fmt(v)},{fmt(e)}" for t, v, e in zip(data.times, vals, d)]
    _emit("\n".join(rows) + "\n", args.out, out)
    overall = max(worst.values()) if worst else 0.0
    print(f"copies={data.states.shape[1]} times={len(data.times)} max drift={fmt(overall)} "
          f"({max(worst, key=worst.get) if worst else '-'})", file=out)
    if args.tolerance is not None and overall > args.tolerance:
        print(f"FAIL drift exceeds {fmt(args.tolerance)}", file=out)
        return EXIT_FAIL
    return EXIT_OK


# -- superpose ----------------------------------------------------------------


def relative_errors(rec: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Per-row ``max|rec - ref| / max|ref|`` (absolute where the reference is 0)."""
    scale = np.abs(ref).max(axis=1)
    scale[scale == 0] = 1.0
    return np.abs(rec - ref).max(axis=1) / scale


def cmd_superpose(args, out) -> int:
    from .superposition import constants_from, reconstruct_trajectory, require_determinate

    data = load_trajectories(args.inputs)
    if data.states.shape[1] != 7:
        raise InputError(f"expected 7 copies (six particular and one reference), got {data.states.shape[1]}")
    if args.reading == "displayed":
        require_determinate(7)
    sols = data.states[:, :6, :]
    ref = data.states[:, 6, :]
    consts = constants_from(ref[0], sols[0])
    rec, counts = reconstruct_trajectory(data.times, sols, consts, args.mode, x0=ref[0])
    err = relative_errors(rec, ref)
    head = [f"# lhsp6 {__version__} superposition mode={args.mode}",
            "# constants " + " ".join(fmt(c) for c in consts.signed)]
    cols = "t," + ",".join(STATE_COLUMNS) + ",rel_error" + (",candidates" if counts else "")
    rows = head + [cols]
    for n, t in enumerate(data.times):
        row = [fmt(t)] + [fmt(v) for v in rec[n]] + [fmt(err[n])]
        if counts:
            row.append(str(counts[n]))
        rows.append(",".join(row))
    _emit("\n".join(rows) + "\n", args.out, out)
    summary = f"mode={args.mode} times={len(data.times)} max relative error={fmt(err.max())}"
    if counts:
        summary += f" candidates min={min(counts)} max={max(counts)}"
    print(summary, file=out)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------


def _emit(text: str, path, out) -> None:
    if path:
        Path(path).write_text(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lhsp6", description="sp(6,R) and su(3) Lie-Hamilton systems on T*R^3.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the exact symbolic checks")
    v.add_argument("--scope", choices=["all", *SCOPES], default="all")
    v.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("casimir", help="print a Casimir invariant")
    c.add_argument("--order", type=int, choices=[2, 4, 6], default=2)
    c.add_argument("--symbols", choices=["x", "h"], default="x",
                   help="generator symbols X_a or Hamiltonian symbols h_a")
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_casimir)

    s = sub.add_parser("simulate", help="integrate a scenario")
    s.add_argument("--scenario", required=True)
    s.add_argument("--out", default=None, help="CSV, or JSON when the name ends in .json")
    s.set_defaults(func=cmd_simulate)

    i = sub.add_parser("invariants", help="drift report for Omega and F(k) along trajectories")
    i.add_argument("--in", dest="inputs", nargs="+", required=True)
    i.add_argument("--out", default=None)
    i.add_argument("--tolerance", type=float, default=None, help="exit 1 when the drift exceeds this")
    i.set_defaults(func=cmd_invariants)

    r = sub.add_parser("superpose", help="rebuild copy 7 from copies 1-6")
    r.add_argument("--in", dest="inputs", nargs="+", required=True)
    r.add_argument("--mode", choices=["signed", "squared"], default="signed")
    r.add_argument("--reading", choices=["paired", "displayed"], default="paired",
                   help="pair the unknown with every particular solution, or use the displayed equation set")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_superpose)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    from .dynamics import IntegrationError
    from .superposition import IllConditionedError, UnderdeterminedError

    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IntegrationError, IllConditionedError, UnderdeterminedError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
