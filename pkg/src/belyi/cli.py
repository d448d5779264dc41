"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import BelyiError, InvalidInput, ResourceLimit
from .fields import QQ, PrimeField
from .orbits import format_orbit_set, parse_orbit_set
from .pipeline import construct_tame, construct_wild, cover_family, family_checks, verify_artifact
from .serialize import make_extension
from .stages import DEFAULT_EXPAND_THRESHOLD

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    command: str
    field: object
    S: str
    T: str
    n: int | None
    threshold: int
    out: str | None
    verbose: int
    wild: bool = False
    path: str | None = None
    op: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _modulus(text: str) -> list:
    try:
        mod = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"modulus must be a JSON list, got {text!r}") from exc
    if not isinstance(mod, list):
        raise InvalidInput("modulus must be a JSON list")
    return mod


def resolve_field(char: int | None, degree: int | None, modulus: str | None):
    if char is None or char == 0:
        if degree not in (None, 1) or modulus is not None:
            raise InvalidInput("--field-degree and --modulus need --char")
        return QQ
    base = PrimeField(char)
    if degree is None or degree == 1:
        if modulus is not None and degree is None:
            raise InvalidInput("--modulus needs --field-degree")
        return base
    if modulus is None:
        raise InvalidInput("prime-power fields need an explicit --modulus")
    return make_extension(base, degree, _modulus(modulus))


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--char", type=int, default=None, help="field characteristic (omit for the rationals)")
    p.add_argument("--field-degree", type=int, default=None)
    p.add_argument("--modulus", default=None, help="irreducible modulus, lowest coefficient first")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--expand-threshold", type=int, default=DEFAULT_EXPAND_THRESHOLD)
    p.add_argument("--out", default=None, help="write the JSON artifact here instead of stdout")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="belyi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", help="tame Belyi map over the rationals")
    p.add_argument("--S", default="", help="points to ramify")
    p.add_argument("--T", default="", help="points to keep off {0, 1, inf}")
    _add_common(p)

    p = sub.add_parser("construct-wild", help="map branched only over inf, over a finite field")
    p.add_argument("--S", default="")
    p.add_argument("--T", default="")
    _add_field_args(p)
    _add_common(p)

    p = sub.add_parser("cover", help="n + 1 maps with disjoint exceptional fibres")
    p.add_argument("--S", default="")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--wild", action="store_true")
    _add_field_args(p)
    _add_common(p)

    p = sub.add_parser("verify", help="recompute every check of an artifact")
    p.add_argument("path")
    p.add_argument("--expand-threshold", type=int, default=DEFAULT_EXPAND_THRESHOLD)
    p.add_argument("-v", "--verbose", action="count", default=0)

    p = sub.add_parser("orbitset", help="set utilities on orbit-set expressions")
    p.add_argument("op", choices=["union", "diff", "disjoint", "show"])
    p.add_argument("--S", default="")
    p.add_argument("--T", default="")
    _add_field_args(p)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    threshold = getattr(args, "expand_threshold", DEFAULT_EXPAND_THRESHOLD)
    if threshold <= 0:
        raise InvalidInput("--expand-threshold must be positive")
    if args.command == "construct":
        field = QQ
    elif args.command == "verify":
        field = None
    else:
        field = resolve_field(args.char, args.field_degree, args.modulus)
    if args.command == "construct-wild" and field.characteristic == 0:
        raise InvalidInput("construct-wild needs --char p")
    if args.command == "cover":
        if args.n < 1:
            raise InvalidInput("-n must be at least 1")
        if args.wild and field.characteristic == 0:
            raise InvalidInput("--wild needs --char p")
        if not args.wild and field.characteristic != 0:
            raise InvalidInput("tame covers are built over the rationals; pass --wild for --char")
    return RunConfig(
        command=args.command,
        field=field,
        S=getattr(args, "S", ""),
        T=getattr(args, "T", ""),
        n=getattr(args, "n", None),
        threshold=threshold,
        out=getattr(args, "out", None),
        verbose=getattr(args, "verbose", 0),
        wild=getattr(args, "wild", False),
        path=getattr(args, "path", None),
        op=getattr(args, "op", None),
    )


def _emit(cfg: RunConfig, obj: dict) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(cfg: RunConfig, checks) -> None:
    for name, ok in checks:
        if cfg.verbose or not ok:
            print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)


def cmd_construct(cfg: RunConfig) -> int:
    S = parse_orbit_set(cfg.S, cfg.field)
    T = parse_orbit_set(cfg.T, cfg.field)
    cons = construct_tame(S, T, threshold=cfg.threshold)
    _emit(cfg, cons.to_json())
    _report(cfg, cons.certificate.checks)
    return EXIT_OK if cons.certificate.passed else EXIT_FAILED


def cmd_construct_wild(cfg: RunConfig) -> int:
    S = parse_orbit_set(cfg.S, cfg.field)
    T = parse_orbit_set(cfg.T, cfg.field)
    cons = construct_wild(S, T, threshold=cfg.threshold)
    _emit(cfg, cons.to_json())
    _report(cfg, cons.certificate.checks)
    return EXIT_OK if cons.certificate.passed else EXIT_FAILED


def cmd_cover(cfg: RunConfig) -> int:
    S = parse_orbit_set(cfg.S, cfg.field)
    family = cover_family(S, cfg.n, wild=cfg.wild, threshold=cfg.threshold)
    checks = family_checks(S, family)
    members = []
    for m in family:
        obj = m.construction.to_json()
        obj["fibre"] = m.fibre.to_json()
        obj["newPoints"] = m.new_points.to_json()
        members.append(obj)
    _emit(cfg, {"family": members, "familyChecks": [{"name": n, "pass": ok} for n, ok in checks]})
    _report(cfg, checks)
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_FAILED


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def cmd_verify(cfg: RunConfig) -> int:
    obj = _load(cfg.path)
    try:
        checks = _verify_object(obj, cfg.threshold)
    except (KeyError, TypeError, IndexError, AttributeError) as exc:
        raise InvalidInput(f"malformed artifact: {exc!r}") from exc
    _report(cfg, checks)
    ok = all(ok for _, ok in checks)
    print("verified" if ok else "verification failed")
    return EXIT_OK if ok else EXIT_FAILED


def _verify_object(obj, threshold: int) -> list:
    if isinstance(obj, dict) and "family" in obj:
        if not isinstance(obj["family"], list) or not obj["family"]:
            raise InvalidInput("family must be a nonempty list")
        checks = []
        for i, member in enumerate(obj["family"]):
            _, member_checks = verify_artifact(member, threshold)
            checks += [(f"member{i}.{n}", ok) for n, ok in member_checks]
        return checks
    return verify_artifact(obj, threshold)[1]


def cmd_orbitset(cfg: RunConfig) -> int:
    S = parse_orbit_set(cfg.S, cfg.field)
    T = parse_orbit_set(cfg.T, cfg.field)
    if cfg.op == "union":
        print(format_orbit_set(S.union(T)))
    elif cfg.op == "diff":
        print(format_orbit_set(S.difference(T)))
    elif cfg.op == "disjoint":
        print("true" if S.disjoint(T) else "false")
    else:
        print(json.dumps(S.to_json(), sort_keys=True))
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "construct-wild": cmd_construct_wild,
    "cover": cmd_cover,
    "verify": cmd_verify,
    "orbitset": cmd_orbitset,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except BelyiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
