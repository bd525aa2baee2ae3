"""Command-line driver: integrability checks, zero roots, energy sweeps, validation.

Every command reads one TOML configuration file and writes CSV files into
``--out``.  Each file starts with a commented provenance block holding the
package version, the SHA-256 of the canonical configuration and the
configuration itself, which parses back to the same :class:`RunConfig`.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__, lattice, spectrum, thermo, xxz_limit
from .errors import DomainError, ExtractionError
from .lattice import ModelParams
from .series import term_limit

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
COMMANDS = ("check", "roots", "energy", "validate")
SWEEP_TARGETS = ("eta", "tau", "beta_minus", "beta_plus")

CHECK_THRESHOLDS = {"qybe": 1e-10, "reflection": 1e-10, "dual_reflection": 1e-10,
                    "unitarity": 1e-10, "crossing": 1e-10, "symmetry": 1e-10,
                    "initial_condition": 1e-10, "commutator": 1e-9, "hamiltonian_identity": 1e-8}
MATRIX_CHECK_MAX_SITES = 6
CONVERGENCE_BOUND = 0.1
XXZ_BOUND = 1e-6


class ConfigError(ValueError):
    """Malformed or inconsistent configuration (exit code 2)."""


# ---------------------------------------------------------------- complex text


def parse_complex(value) -> complex:
    """Parse ``"a+bi"``, ``"bi"``, ``"a"`` or a bare TOML number."""
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if not isinstance(value, str):
        raise ConfigError(f"expected a number or 'a+bi' string, got {value!r}")
    text = value.strip().replace(" ", "")
    if "j" in text.lower() or not text:
        raise ConfigError(f"cannot parse complex number {value!r}; write it as 'a+bi'")
    if text.endswith("i") and not text.lower().endswith("inf"):
        text = text[:-1] + "j"
    try:
        return complex(text)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {value!r}") from exc


def format_complex(z: complex) -> str:
    """Shortest round-tripping ``"a+bi"`` text."""
    z = complex(z)
    sign = "-" if np.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def format_float(x) -> str:
    """17 significant digits, the convention for every numeric CSV column."""
    return format(float(x), ".17g")


# ---------------------------------------------------------------- configuration


@dataclass(frozen=True)
class SweepAxis:
    """Linear sweep of one parameter; ``target`` is e.g. ``beta_plus`` with a 1-based ``index``."""

    target: str
    index: int
    start: complex
    stop: complex
    count: int

    @property
    def label(self) -> str:
        return self.target if self.index == 0 else f"{self.target}[{self.index}]"

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class RunConfig:
    command: str
    eta: complex
    beta_minus: tuple
    beta_plus: tuple
    tau: complex | None = None
    n_sites: int = 8
    inhomogeneities: tuple | None = None
    branch: str = "thermo"
    sweep: SweepAxis | None = None
    parities: tuple = ("Even", "Odd")
    sizes: tuple = (8, 10, 12)
    states: tuple = (0, 1)
    solver: str = "auto"
    compare_xxz: bool = False
    literal_two: bool = False
    n_points: int = 20
    seed: int = 0
    eps: float = 1e-15
    kmax: int = 1_000_000
    threads: int = 1

    def model_params(self, **changes) -> ModelParams:
        kwargs = dict(tau=self.tau, eta=self.eta, n_sites=self.n_sites, beta_minus=self.beta_minus,
                      beta_plus=self.beta_plus, inhomogeneities=self.inhomogeneities)
        kwargs.update(changes)
        return ModelParams(**kwargs)

    def xxz_params(self, parity) -> xxz_limit.XXZParams:
        return xxz_limit.XXZParams(self.eta, self.beta_minus, self.beta_plus, parity)


_SECTIONS = {
    "run": {"command", "branch"},
    "model": {"tau", "eta", "n_sites", "beta_minus", "beta_plus", "inhomogeneities"},
    "sweep": {"parameter", "start", "stop", "count"},
    "numerics": {"eps", "kmax", "threads", "seed", "n_points"},
    "check": {"literal_two"},
    "roots": {"states"},
    "energy": {"parities"},
    "validate": {"sizes", "solver", "compare_xxz"},
}


def _parse_sweep(table) -> SweepAxis:
    missing = {"parameter", "start", "stop", "count"} - set(table)
    if missing:
        raise ConfigError(f"[sweep] is missing {sorted(missing)}")
    match = re.fullmatch(r"(\w+)(?:\[(\d)\])?", str(table["parameter"]))
    if not match or match.group(1) not in SWEEP_TARGETS:
        raise ConfigError(f"cannot sweep {table['parameter']!r}; use eta, tau, beta_minus[k] or beta_plus[k]")
    target, index = match.group(1), int(match.group(2) or 0)
    if target.startswith("beta") != (1 <= index <= 3):
        raise ConfigError("boundary sweeps need an index 1..3; eta and tau take none")
    count = table["count"]
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ConfigError("[sweep] count must be a positive integer")
    return SweepAxis(target, index, parse_complex(table["start"]), parse_complex(table["stop"]), count)


def _int_tuple(values, name) -> tuple:
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ConfigError(f"{name} must be a list of integers")
    return tuple(values)


def config_from_mapping(data: dict, default_command: str | None = None) -> RunConfig:
    """Validate a parsed TOML document and build the run configuration."""
    for section, table in data.items():
        if section not in _SECTIONS or not isinstance(table, dict):
            raise ConfigError(f"unknown section [{section}]")
        unknown = set(table) - _SECTIONS[section]
        if unknown:
            raise ConfigError(f"unknown keys in [{section}]: {sorted(unknown)}")
    run, model = data.get("run", {}), data.get("model", {})
    numerics = data.get("numerics", {})
    command = run.get("command", default_command)
    if command not in COMMANDS:
        raise ConfigError(f"[run] command must be one of {COMMANDS}")
    branch = run.get("branch", "thermo")
    if branch not in ("thermo", "xxz"):
        raise ConfigError("[run] branch must be 'thermo' or 'xxz'")
    for key in ("eta", "beta_minus", "beta_plus"):
        if key not in model:
            raise ConfigError(f"[model] is missing {key}")
    betas = {}
    for key in ("beta_minus", "beta_plus"):
        if not isinstance(model[key], list) or len(model[key]) != 3:
            raise ConfigError(f"[model] {key} must list three values")
        betas[key] = tuple(parse_complex(v) for v in model[key])
    tau = parse_complex(model["tau"]) if "tau" in model else None
    if tau is None and not (branch == "xxz" and command == "energy"):
        raise ConfigError("[model] tau is required except for xxz energy runs")
    inhom = model.get("inhomogeneities")
    if inhom is not None:
        if not isinstance(inhom, list):
            raise ConfigError("[model] inhomogeneities must be a list")
        inhom = tuple(parse_complex(v) for v in inhom)
    n_sites = model.get("n_sites", 8)
    if not isinstance(n_sites, int) or isinstance(n_sites, bool) or n_sites < 1:
        raise ConfigError("[model] n_sites must be a positive integer")
    parities = tuple(data.get("energy", {}).get("parities", ["Even", "Odd"]))
    if not parities or any(p not in ("Even", "Odd") for p in parities):
        raise ConfigError("[energy] parities must be a non-empty list of 'Even'/'Odd'")
    validate = data.get("validate", {})
    solver = validate.get("solver", "auto")
    if solver not in ("auto", "dense", "iterative"):
        raise ConfigError("[validate] solver must be auto, dense or iterative")
    try:
        cfg = RunConfig(
            command=command, branch=branch, eta=parse_complex(model["eta"]), tau=tau, n_sites=n_sites,
            inhomogeneities=inhom, sweep=_parse_sweep(data["sweep"]) if "sweep" in data else None,
            parities=parities, sizes=_int_tuple(validate.get("sizes", [8, 10, 12]), "[validate] sizes"),
            states=_int_tuple(data.get("roots", {}).get("states", [0, 1]), "[roots] states"),
            solver=solver, compare_xxz=bool(validate.get("compare_xxz", False)),
            literal_two=bool(data.get("check", {}).get("literal_two", False)),
            n_points=int(numerics.get("n_points", 20)), seed=int(numerics.get("seed", 0)),
            eps=float(numerics.get("eps", 1e-15)), kmax=int(numerics.get("kmax", 1_000_000)),
            threads=int(numerics.get("threads", 1)), **betas)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    _check_consistency(cfg)
    return cfg


def _check_consistency(cfg: RunConfig) -> None:
    if cfg.eps <= 0 or cfg.kmax < 1 or cfg.threads < 1 or cfg.n_points < 1:
        raise ConfigError("eps, kmax, threads and n_points must be positive")
    if cfg.command == "energy" and cfg.sweep is None:
        raise ConfigError("the energy command needs a [sweep] section")
    if cfg.command == "validate" and any(n < 2 or n > lattice.MAX_SITES for n in cfg.sizes):
        raise ConfigError(f"[validate] sizes must lie in 2..{lattice.MAX_SITES}")
    if cfg.command == "roots" and cfg.n_sites > lattice.MAX_DENSE_SITES:
        raise ConfigError(f"roots needs n_sites <= {lattice.MAX_DENSE_SITES}")
    try:
        if cfg.branch == "xxz" and cfg.command == "energy":
            cfg.xxz_params(thermo.Parity.EVEN)
        else:
            cfg.model_params()
    except DomainError as exc:
        raise ConfigError(f"invalid model parameters: {exc}") from exc


def load_config(path, default_command: str | None = None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    return parse_config_text(text, default_command)


def parse_config_text(text: str, default_command: str | None = None) -> RunConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    return config_from_mapping(data, default_command)


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f'"{format_complex(v)}"'
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return "[" + ", ".join(_toml_value(x) for x in v) + "]"


def config_to_toml(cfg: RunConfig) -> str:
    """Canonical TOML text of a configuration; parses back to an equal RunConfig."""
    sections = {
        "run": {"command": cfg.command, "branch": cfg.branch},
        "model": {"eta": cfg.eta, "n_sites": cfg.n_sites, "beta_minus": cfg.beta_minus,
                  "beta_plus": cfg.beta_plus},
        "numerics": {"eps": cfg.eps, "kmax": cfg.kmax, "threads": cfg.threads, "seed": cfg.seed,
                     "n_points": cfg.n_points},
        "check": {"literal_two": cfg.literal_two},
        "roots": {"states": list(cfg.states)},
        "energy": {"parities": list(cfg.parities)},
        "validate": {"sizes": list(cfg.sizes), "solver": cfg.solver, "compare_xxz": cfg.compare_xxz},
    }
    if cfg.tau is not None:
        sections["model"]["tau"] = cfg.tau
    if cfg.inhomogeneities is not None:
        sections["model"]["inhomogeneities"] = cfg.inhomogeneities
    if cfg.sweep is not None:
        s = cfg.sweep
        sections["sweep"] = {"parameter": s.label, "start": s.start, "stop": s.stop, "count": s.count}
    lines = []
    for name, table in sections.items():
        lines.append(f"[{name}]")
        lines += [f"{k} = {_toml_value(v)}" for k, v in table.items()]
        lines.append("")
    return "\n".join(lines)


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(config_to_toml(cfg).encode("utf-8")).hexdigest()


def provenance_block(cfg: RunConfig) -> str:
    head = [f"openxyz {__version__}", f"command: {cfg.command}", f"config-sha256: {config_hash(cfg)}",
            "config:"]
    body = config_to_toml(cfg).rstrip("\n").split("\n")
    return "".join(f"# {line}\n" for line in head) + "".join(f"#   {line}\n" for line in body)


def read_provenance(path) -> RunConfig:
    """Recover the configuration recorded at the top of an output file."""
    lines = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            if line.startswith("#   "):
                lines.append(line[4:])
    return parse_config_text("".join(lines))


def write_csv(path: Path, cfg: RunConfig, header, rows) -> None:
    buf = io.StringIO()
    buf.write(provenance_block(cfg))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    path.write_text(buf.getvalue(), encoding="utf-8")


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return format_complex(v)
    return v


def parallel_map(fn, items, cfg: RunConfig) -> list:
    """Apply ``fn`` over ``items`` on a thread pool; results keep the input order."""
    def task(item):
        with term_limit(cfg.kmax):
            return fn(item)
    if cfg.threads == 1:
        return [task(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(task, items))


# ---------------------------------------------------------------- commands


def cmd_check(cfg: RunConfig, out: Path) -> int:
    """Integrability residuals, the Hamiltonian identity and the Hermiticity region."""
    p = cfg.model_params()
    with term_limit(cfg.kmax):
        report = lattice.integrability_report(p, cfg.n_points, cfg.seed, cfg.literal_two)
        if p.n_sites <= MATRIX_CHECK_MAX_SITES and p.homogeneous:
            direct = lattice.hamiltonian(p)
            via_transfer = lattice.hamiltonian_from_transfer(p)
            report["hamiltonian_identity"] = float(np.max(np.abs(direct - via_transfer)))
    rows, ok = [], True
    for name, value in report.items():
        passed = value < CHECK_THRESHOLDS[name]
        ok &= passed
        rows.append([name, float(value), CHECK_THRESHOLDS[name], passed])
    region = lattice.hermitian_region_check(p)
    rows.append(["hermitian_region", float(region.in_region), "", "info"])
    write_csv(out / "check_report.csv", cfg, ["quantity", "value", "threshold", "pass"], rows)
    print(f"check: {'PASS' if ok else 'FAIL'} ({sum(r[3] is True for r in rows)}/{len(report)} below threshold)")
    if region.violated_constraints:
        print("hermitian region violated: " + "; ".join(region.violated_constraints))
    return EXIT_OK if ok else EXIT_NUMERIC


def _solve(p: ModelParams, how: str, n_states: int):
    if how == "dense" or (how == "auto" and (p.n_sites <= 10 or not lattice.hermitian_region_check(p).in_region)):
        return spectrum.diagonalize(p, spectrum.Solver.DENSE)
    return spectrum.diagonalize(p, spectrum.Solver.ITERATIVE, n_states=n_states)


def cmd_roots(cfg: RunConfig, out: Path) -> int:
    """Zero roots of Lambda(u) with pattern tags, one row per root per state."""
    p = cfg.model_params()
    sl = _solve(p, cfg.solver, max(cfg.states) + 1)

    def extract(k):
        try:
            rs = spectrum.find_zero_roots(sl.state(k), p)
        except ExtractionError as exc:
            return k, None, exc
        return k, spectrum.classify_roots(rs, p), None

    results = parallel_map(extract, list(cfg.states), cfg)
    root_rows, summary_rows, status = [], [], EXIT_OK
    for k, rs, exc in results:
        energy = float(sl.energies[k])
        if rs is None:
            path = out / f"residual_map_state{k}.npy"
            if exc.residual_map is not None:
                np.save(path, exc.residual_map)
            print(f"state {k}: extraction failed ({exc}); residual map at {path}", file=sys.stderr)
            summary_rows.append([k, energy, float("nan"), float("nan"), float("nan"), str(exc)])
            status = EXIT_NUMERIC
            continue
        for j, rec in enumerate(rs.records()):
            root_rows.append([k, energy, j, rec["re"], rec["im"], rec["tag"]])
        e_roots = spectrum.energy_from_roots(rs, p)
        summary_rows.append([k, energy, float(np.real(e_roots)), rs.reconstruction_error, rs.lambda0_check, ""])
    write_csv(out / "roots.csv", cfg, ["state", "energy", "root", "re", "im", "tag"], root_rows)
    write_csv(out / "roots_summary.csv", cfg,
              ["state", "energy", "energy_from_roots", "reconstruction_error", "lambda0_check", "error"],
              summary_rows)
    print(f"roots: {len(root_rows)} rows for {len(cfg.states)} states")
    return status


def _swept(cfg: RunConfig, value: complex) -> dict:
    s = cfg.sweep
    if s.target in ("eta", "tau"):
        return {s.target: value}
    betas = list(getattr(cfg, s.target))
    betas[s.index - 1] = value
    return {s.target: tuple(betas)}


ENERGY_COLUMNS = ["e_bulk", "E_free", "E_minus", "E_plus", "E_strings", "parity_term", "E_surface", "Delta_E"]


def _energy_point(cfg: RunConfig, value: complex, parity: str) -> list:
    try:
        changes = _swept(cfg, value)
        if cfg.branch == "xxz":
            kw = {k: changes.get(k, getattr(cfg, k)) for k in ("eta", "beta_minus", "beta_plus")}
            rec = xxz_limit.xxz_energies(xxz_limit.XXZParams(parity=parity, **kw), min(cfg.eps * 1e3, 1e-10))
        else:
            n = cfg.n_sites if thermo.Parity.of(cfg.n_sites).value == parity else cfg.n_sites + 1
            rec = thermo.energy_breakdown(cfg.model_params(n_sites=n, **changes), eps=cfg.eps)
        record = rec.as_record()
        return [record[c] for c in ENERGY_COLUMNS] + [""]
    except (ArithmeticError, ValueError) as exc:
        return [float("nan")] * len(ENERGY_COLUMNS) + [f"{type(exc).__name__}: {exc}"]


def cmd_energy(cfg: RunConfig, out: Path) -> int:
    """Sweep of the surface and excitation energies; failing points carry an error marker."""
    points = [(v, parity) for v in cfg.sweep.values() for parity in cfg.parities]
    results = parallel_map(lambda item: _energy_point(cfg, *item), points, cfg)
    rows = [[v.real, v.imag, parity] + res for (v, parity), res in zip(points, results)]
    header = ["sweep_re", "sweep_im", "parity"] + ENERGY_COLUMNS + ["error"]
    write_csv(out / "energy.csv", cfg, header, rows)
    failures = sum(1 for r in rows if r[-1])
    print(f"energy: {len(rows)} rows over {cfg.sweep.label}, {failures} with errors")
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


def _monotone_verdict(sizes, values, bound) -> tuple:
    """Decreasing within each parity class and final value below ``bound``."""
    ok = True
    for parity in (0, 1):
        seq = [v for n, v in zip(sizes, values) if n % 2 == parity]
        if not seq:
            continue
        ok &= all(b < a for a, b in zip(seq, seq[1:])) and seq[-1] < bound
    return ok


def validate_rows(cfg: RunConfig) -> list:
    """Finite-size energies against the thermodynamic-limit formulas, one row per size."""
    def one(n):
        p = cfg.model_params(n_sites=n, inhomogeneities=None)
        sl = _solve(p, cfg.solver, 2)
        e0, e1 = float(sl.energies[0]), float(sl.energies[1])
        b = thermo.energy_breakdown(p, eps=cfg.eps)
        dev = abs(e0 - n * b.e_bulk - b.parity_term - b.surface)
        gap = e1 - e0
        return [n, thermo.Parity.of(n).value, e0, e1, gap, b.e_bulk, b.parity_term, b.surface, dev,
                b.excitation, abs(gap - b.excitation)]
    return parallel_map(one, list(cfg.sizes), cfg)


VALIDATE_COLUMNS = ["N", "parity", "E_ground", "E_first", "gap", "e_bulk", "parity_term", "E_surface",
                    "surface_deviation", "Delta_E", "gap_deviation"]


def xxz_deltas(cfg: RunConfig, parity) -> dict:
    """Component-wise differences between the elliptic formulas and the XXZ limit."""
    n = cfg.n_sites if thermo.Parity.of(cfg.n_sites) is thermo.Parity(parity) else cfg.n_sites + 1
    ell = thermo.energy_breakdown(cfg.model_params(n_sites=n, inhomogeneities=None), eps=cfg.eps)
    trig = xxz_limit.xxz_energies(cfg.xxz_params(parity))
    a, b = ell.as_record(), trig.as_record()
    return {k: abs(a[k] - b[k]) for k in ENERGY_COLUMNS}


def cmd_validate(cfg: RunConfig, out: Path) -> int:
    """Convergence of the finite-size surface energy and gap towards the formulas."""
    rows = validate_rows(cfg)
    sizes = [r[0] for r in rows]
    surface_ok = _monotone_verdict(sizes, [r[8] for r in rows], CONVERGENCE_BOUND)
    gapped = any(abs(r[9]) > 1e-12 for r in rows)
    gap_ok = _monotone_verdict(sizes, [r[10] for r in rows], CONVERGENCE_BOUND) if gapped else True
    write_csv(out / "validate.csv", cfg, VALIDATE_COLUMNS, rows)
    verdict = [["surface_convergence", surface_ok], ["gap_convergence", gap_ok if gapped else "n/a"]]
    ok = surface_ok and gap_ok
    if cfg.compare_xxz:
        for parity in ("Even", "Odd"):
            deltas = xxz_deltas(cfg, parity)
            worst = max(deltas.values())
            verdict.append([f"xxz_agreement_{parity}", worst < XXZ_BOUND])
            ok &= worst < XXZ_BOUND
    write_csv(out / "validate_verdict.csv", cfg, ["criterion", "pass"], verdict)
    for name, passed in verdict:
        print(f"{name}: {passed}")
    return EXIT_OK if ok else EXIT_NUMERIC


HANDLERS = {"check": cmd_check, "roots": cmd_roots, "energy": cmd_energy, "validate": cmd_validate}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="openxyz", description="Open XYZ chain with non-diagonal boundaries")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=HANDLERS[name].__doc__.splitlines()[0])
        cmd.add_argument("--config", required=True, help="TOML run configuration")
        cmd.add_argument("--out", default=".", help="output directory")
        cmd.add_argument("--kmax", type=int, help="cap on directly summed series terms")
        cmd.add_argument("--eps", type=float, help="series truncation tolerance")
        cmd.add_argument("--threads", type=int, help="worker threads for sweeps")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.command)
        overrides = {k: getattr(args, k) for k in ("kmax", "eps", "threads") if getattr(args, k) is not None}
        cfg = dataclasses.replace(cfg, command=args.command, **overrides)
        _check_consistency(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"cannot create output directory: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return HANDLERS[args.command](cfg, out)
    except (ArithmeticError, DomainError) as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
