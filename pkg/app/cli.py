"""
fcrystal 명령행 도구

실행 방법:
    python -m app.cli [전역 플래그] <하위 명령> [옵션]

예시:
    python -m app.cli newton --example b --a 1
    python -m app.cli construct --nu 1/2,1/2 --mu 1,0
    python -m app.cli adm --mu 1,0 --type 0
    python -m app.cli incidence --input @diagram.json

입력 문서는 인라인 JSON 또는 '@경로'. 결과는 키 정렬 JSON 으로 stdout (또는 --output) 에 쓴다.

종료 코드:
    0 성공
    1 부정 결과 (Mazur 위반, 빈 집합, 거짓 판정)
    2 잘못된 입력 (JSON 위치 정보 포함)
    3 예산 소진 (창, 체 차수 상한, 마감 시간, Newton 점 미인증)

@since 2026-10-16
"""
import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from app.config.settings import DEFAULT_BASE_DEGREE, DEFAULT_PRIME
from app.models.reports import ErrorReport
from app.models.search import SearchConfig
from app.services.codec import dump_json
from app.services.command_service import CommandResult, CommandService
from app.utils.errors import BudgetExhaustedError, FCrystalError, InvalidInputError, MazurViolationError
from app.utils.logger import log

EXIT_CODES = {
    MazurViolationError: 1,
    InvalidInputError: 2,
    BudgetExhaustedError: 3,
}


def exit_code_for(error: FCrystalError) -> int:
    for kind, code in EXIT_CODES.items():
        if isinstance(error, kind):
            return code
    return 2


def _add_source(p: argparse.ArgumentParser) -> None:
    """--b (아이소크리스탈 문서) 또는 --nu (표준형)"""
    src = p.add_mutually_exclusive_group()
    src.add_argument("--b", help="isocrystal document (inline JSON or @path)")
    src.add_argument("--nu", help="Newton point of the standard form, e.g. 1/2,1/2")


def _add_group(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", choices=("gl", "gsp"), default="gl")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fcrystal", description="Frobenius-twisted lattices and isocrystals")
    parser.add_argument("--window", type=int, help="lattice search window a")
    parser.add_argument("--field-cap", type=int, help="largest residue field extension degree")
    parser.add_argument("--deadline", type=float, help="search deadline in seconds")
    parser.add_argument("--seed", type=int, help="seed for sampled cyclic vectors")
    parser.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    parser.add_argument("--base-degree", type=int, default=DEFAULT_BASE_DEGREE, help="e with q = p^e")
    parser.add_argument("--transcript", action="store_true", help="include search transcripts")
    parser.add_argument("--output", help="write the JSON result to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("newton", help="Newton point of an isocrystal")
    _add_source(p)
    p.add_argument("--example", choices=("b", "b_prime"), help="built-in GL_3 example")
    p.add_argument("--a", type=int, default=1)

    p = sub.add_parser("hodge", help="Hodge point inv(M, FM) of a witness")
    p.add_argument("--input", required=True)

    p = sub.add_parser("mazur", help="Mazur inequality for a witness, or [b] in B(G, mu)")
    p.add_argument("--input")
    _add_source(p)
    p.add_argument("--mu")
    _add_group(p)

    for name, group in (("construct", "gl"), ("construct-gsp", "gsp")):
        p = sub.add_parser(name, help=f"lattice M with inv(M, FM) = mu ({group})")
        p.add_argument("--nu", required=True)
        p.add_argument("--mu", required=True)
        p.set_defaults(group=group)

    p = sub.add_parser("chain-build", help="witness chain in X(omega_r, F) of the given type")
    _add_source(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--type", dest="types", required=True, help="chain type, e.g. 0,1")
    _add_group(p)

    p = sub.add_parser("chain-extend", help="complete a partial chain to a larger type")
    p.add_argument("--input", required=True)
    p.add_argument("--type", dest="types", required=True)
    _add_group(p)

    p = sub.add_parser("chain-check", help="membership of a chain in X(omega_r, F)")
    p.add_argument("--input", required=True)
    _add_group(p)

    p = sub.add_parser("incidence", help="solve or check a circular semilinear diagram")
    p.add_argument("--input", required=True)
    p.add_argument("--check", action="store_true", help="verify the 'lines' of the document")

    p = sub.add_parser("adm", help="admissible set Adm(mu)")
    p.add_argument("--mu", required=True)
    p.add_argument("--type", dest="types")
    p.add_argument("--compare", action="store_true", help="compare with permissible and realised sets")
    _add_group(p)

    p = sub.add_parser("enumerate", help="observed versus predicted Hodge points in the window")
    _add_source(p)

    p = sub.add_parser("graded-witness", help="witness for the restriction of scalars")
    _add_source(p)
    p.add_argument("--f", type=int)
    p.add_argument("--mu", required=True, help="parts separated by ';', e.g. 1,0;1,0")
    _add_group(p)

    p = sub.add_parser("graded-chain", help="graded witness chain for mu_j = omega_(r_j)")
    _add_source(p)
    p.add_argument("--f", type=int)
    p.add_argument("--r", required=True, help="ranks r_j, e.g. 1,1")
    p.add_argument("--type", dest="types", required=True)
    _add_group(p)

    p = sub.add_parser("graded-chain-check", help="membership of a graded chain")
    p.add_argument("--input", required=True)
    _add_group(p)
    return parser


def dispatch(service: CommandService, args: argparse.Namespace) -> CommandResult:
    command = args.command
    if command == "newton":
        return service.newton(b=args.b, nu=args.nu, example=args.example, a=args.a)
    if command == "hodge":
        return service.hodge(args.input)
    if command == "mazur":
        return service.mazur(witness=args.input, b=args.b, nu=args.nu, mu=args.mu, group=args.group)
    if command in ("construct", "construct-gsp"):
        return service.construct(args.nu, args.mu, args.group)
    if command == "chain-build":
        return service.chain_build(args.r, args.types, b=args.b, nu=args.nu, group=args.group)
    if command == "chain-extend":
        return service.chain_extend(args.input, args.types, args.group)
    if command == "chain-check":
        return service.chain_check(args.input, args.group)
    if command == "incidence":
        return service.incidence(args.input, check=args.check)
    if command == "adm":
        return service.adm(args.mu, args.group, args.types, args.compare)
    if command == "enumerate":
        return service.enumerate(b=args.b, nu=args.nu)
    if command == "graded-witness":
        return service.graded_witness(args.mu, f=args.f, b=args.b, nu=args.nu, group=args.group)
    if command == "graded-chain":
        return service.graded_chain(args.r, args.types, f=args.f, b=args.b, nu=args.nu, group=args.group)
    if command == "graded-chain-check":
        return service.graded_chain_check(args.input, args.group)
    raise InvalidInputError(f"unknown command {command!r}")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = SearchConfig.from_env(
            window=args.window, field_cap=args.field_cap, deadline=args.deadline, seed=args.seed
        )
        service = CommandService(cfg, args.prime, args.base_degree, args.transcript)
        result = dispatch(service, args)
    except FCrystalError as e:
        code = exit_code_for(e)
        log.error(f"{args.command} failed ({e.reason}): {e.message}")
        _emit(dump_json(ErrorReport(**e.to_payload())), args.output)
        return code
    except ValueError as e:
        # SearchConfig 검증 실패 (음수 창 등)
        log.error(f"{args.command} failed: {e}")
        _emit(dump_json(ErrorReport(error="invalid-input", message=str(e))), args.output)
        return 2

    payload = result.report.model_dump(mode="json", by_alias=True)
    if not args.transcript:
        payload.pop("transcript", None)
        payload.pop("steps", None)
    _emit(dump_json(payload), args.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
