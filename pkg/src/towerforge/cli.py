"""Command-line entry point: verification suites, supersingular scans, p_i and tower reports."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass

from . import deuring, drinfeld, modular, towers
from .checks import Check
from .fields import FieldError, base_field, prime_power
from .grammar import ParseError, format_poly, parse_element
from .polys import distinct_roots
from .primes import as_prime, residue_field2

SCOPES = ("all", "deuring", "modular", "towers", "drinfeld")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    q: int = 2
    L: str | None = None
    gamma: str | None = None
    levels: int = 5
    kind: str = "F"
    variant: str = "F"
    scope: str = "all"
    i: int | None = None
    level: str | None = None
    fmt: str = "text"
    out: str | None = None
    seed: int = 0
    max_work: int | None = None
    timings: bool = False

    def validate(self) -> None:
        try:
            prime_power(self.q)
        except FieldError as exc:
            raise ConfigError(str(exc)) from exc
        if self.command == "tower":
            needs_L = self.kind in ("E", "F")
            if needs_L and (self.L is None or self.gamma is not None):
                raise ConfigError(f"tower kind {self.kind} needs --L and no --gamma")
            if self.kind == "gamma" and (self.gamma is None or self.L is not None):
                raise ConfigError("tower kind gamma needs --gamma and no --L")
            if self.levels < 0:
                raise ConfigError("--levels must be >= 0")
        if self.command == "supersingular" and self.L is None:
            raise ConfigError("supersingular needs --L")
        if self.command == "modular" or (self.command == "verify" and self.scope == "modular"):
            if self.q != 2:
                raise ConfigError("modular data exists only for q = 2")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="towerforge", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",)):
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")
        p.add_argument("--json", dest="fmt", action="store_const", const="json", default="text")
        if "csv" in fmt:
            p.add_argument("--csv", dest="fmt", action="store_const", const="csv")
        p.add_argument("--timings", action="store_true", help="append run times to text lines")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("scope", nargs="?", choices=SCOPES, default="all")
    common(v)

    s = sub.add_parser("supersingular", help="supersingular u for phi_T = u tau^2 + (u+T) tau + T mod L")
    s.add_argument("--L")
    common(s)

    d = sub.add_parser("deuring", help="print p_i, or p_i mod L with its roots in F_L^(2)")
    d.add_argument("--i", type=int, default=2)
    d.add_argument("--L")
    common(d)

    t = sub.add_parser("tower", help="splitting and genus reports per level")
    t.add_argument("--kind", choices=towers.KINDS, default="F")
    t.add_argument("--variant", choices=("F", "E"), default="F", help="gamma family variant")
    t.add_argument("--L")
    t.add_argument("--gamma")
    t.add_argument("--levels", type=int, default=5)
    t.add_argument("--level", choices=modular.LEVELS, help="modular level for example_fP")
    t.add_argument("--max-work", type=int, dest="max_work")
    common(t, fmt=("json", "csv"))

    m = sub.add_parser("modular", help="print and check the q = 2 modular data")
    m.add_argument("--level", choices=modular.LEVELS)
    common(m)
    return ap


def config_from_args(argv=None) -> RunConfig:
    ns = vars(_parser().parse_args(argv))
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in ns.items() if k in fields and v is not None or k == "command"})


# commands -------------------------------------------------------------


def _check_output(cfg: RunConfig, checks: list[Check], extra: dict | None = None) -> tuple[str, int]:
    ok = all(c.ok for c in checks)
    if cfg.fmt == "json":
        doc = {"command": cfg.command, "q": cfg.q, "seed": cfg.seed, **(extra or {})}
        doc["checks"] = [c.to_json() for c in checks]
        doc["ok"] = ok
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        lines = [f"seed: {cfg.seed}"]
        lines += [c.line(timed=cfg.timings) for c in checks]
        lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    checks: list[Check] = []
    scopes = ("deuring", "drinfeld", "modular", "towers") if cfg.scope == "all" else (cfg.scope,)
    skipped = []
    for scope in scopes:
        if scope == "deuring":
            checks += deuring.run_all(cfg.q, cfg.seed)
        elif scope == "drinfeld":
            checks += drinfeld.run_all(cfg.q)
        elif scope == "modular":
            if cfg.q == 2:
                checks += modular.run_all()
            else:
                skipped.append("modular")
        elif scope == "towers":
            checks += towers.run_all(cfg.q)
    text, code = _check_output(cfg, checks, {"scope": cfg.scope, "skipped": skipped})
    if skipped and cfg.fmt == "text":
        text = "".join(f"SKIP  {s}: data exists only for q = 2\n" for s in skipped) + text
    return text, code


def cmd_supersingular(cfg: RunConfig) -> tuple[str, int]:
    rep = drinfeld.supersingular_u_set(as_prime(cfg.L, base_field(cfg.q)))
    if cfg.fmt == "json":
        return json.dumps(rep.to_json(), indent=2) + "\n", 0 if rep.ok else 1
    lines = [
        f"L = {format_poly(rep.L)}, q = {rep.q}, field {rep.u_values[0].ctx.name if rep.u_values else ''}",
        f"m_d = {rep.m_d}",
        "oracle:  {" + ", ".join(map(repr, rep.u_values)) + "}",
        "via p_d: {" + ", ".join(map(repr, rep.via_p_d)) + "}",
        f"agree: {str(rep.agree).lower()}",
    ]
    return "\n".join(lines) + "\n", 0 if rep.ok else 1


def cmd_deuring(cfg: RunConfig) -> tuple[str, int]:
    fam = deuring.family(cfg.q)
    i = cfg.i if cfg.i is not None else 2
    if i < 0:
        raise ConfigError("--i must be >= 0")
    if cfg.L is None:
        r = fam.p_exact(i)
        doc = {"q": cfg.q, "i": i, "p_i": format_poly(r.num), "denominator": format_poly(r.den), "degree": fam.degree(i)}
    else:
        L = as_prime(cfg.L, fam.Fq)
        pm = fam.p_mod(L, i)
        K = residue_field2(L)
        roots = distinct_roots(pm, K) if not pm.is_zero() else []
        doc = {
            "q": cfg.q,
            "i": i,
            "L": format_poly(L),
            "p_i mod L": format_poly(pm),
            "field": K.to_json(),
            "roots": [repr(r.value) for r in roots],
            "all_simple": all(r.simple for r in roots),
        }
    if cfg.fmt == "json":
        return json.dumps(doc, indent=2) + "\n", 0
    return "".join(f"{k}: {v}\n" for k, v in doc.items()), 0


def build_tower(cfg: RunConfig) -> towers.TowerSpec:
    Fq = base_field(cfg.q)
    if cfg.kind == "gamma":
        return towers.make_tower("gamma", Fq, gamma=parse_element(cfg.gamma, Fq), variant=cfg.variant)
    if cfg.kind == "example_fP":
        return towers.make_tower("example_fP", Fq, L=cfg.L, level=cfg.level)
    return towers.make_tower(cfg.kind, Fq, L=cfg.L)


def cmd_tower(cfg: RunConfig) -> tuple[str, int]:
    tower = build_tower(cfg)
    if tower.genus_type is None:
        raise ConfigError(f"{tower.kind} has no genus formula; use the towers API for fibers")
    reports = towers.dv_series(tower, range(1, cfg.levels + 1), cfg.max_work)
    ok = all(r.complete for r in reports)
    if cfg.fmt == "json":
        doc = {"config": {k: v for k, v in asdict(cfg).items() if k not in ("out", "fmt", "timings")}}
        doc["reports"] = [r.to_json() for r in reports]
        return json.dumps(doc, indent=2) + "\n", 0 if ok else 1
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(towers.REPORT_COLUMNS)
        for r in reports:
            w.writerow(r.csv_row())
        return buf.getvalue(), 0 if ok else 1
    head = f"{tower.name} over {tower.K.name}, q = {tower.q}, DV bound {tower.dv_bound}"
    lines = [head, f"{'n':>3} {'|S|':>5} {'N_lb':>10} {'genus':>10} {'ratio':>9}  complete  flags"]
    for r in reports:
        ratio = f"{r.ratio:9.4f}" if r.ratio is not None else f"{'-':>9}"
        flags = ",".join(r.genus_flags)
        lines.append(f"{r.level:>3} {r.split_size:>5} {r.N_lb:>10} {str(r.genus):>10} {ratio}  {str(r.complete).lower():8}  {flags}")
    return "\n".join(lines) + "\n", 0 if ok else 1


def cmd_modular(cfg: RunConfig) -> tuple[str, int]:
    levels = (cfg.level,) if cfg.level else modular.LEVELS
    checks = modular.run_all()
    data = {lvl: format_poly(modular.parsed(lvl)["phi"]) for lvl in levels}
    if cfg.fmt == "json":
        return _check_output(cfg, checks, {"phi": data})
    text, code = _check_output(cfg, checks)
    head = "".join(f"Phi_{lvl} = {phi}\n" for lvl, phi in data.items())
    return head + text, code


COMMANDS = {
    "verify": cmd_verify,
    "supersingular": cmd_supersingular,
    "deuring": cmd_deuring,
    "tower": cmd_tower,
    "modular": cmd_modular,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute a config; returns (output, exit code). Configuration problems give exit code 2."""
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, FieldError, ParseError, towers.GuardError) as exc:
        return f"error: {exc}\n", 2


def main(argv=None) -> int:
    cfg = config_from_args(argv)
    text, code = run(cfg)
    if code == 2:
        sys.stderr.write(text)
        return code
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
