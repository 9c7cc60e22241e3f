# krein_weyl/main.py
import argparse
import json
import logging
import re
import sys
from typing import List, Optional, Sequence

from .controllers.duality_controller import check_duality_identity
from .controllers.system_controller import classify, validate
from .errors import IndefiniteSystemError, IntegralSystemError, SpecFormatError, error_label
from .io_handler import CSV_HEADER, IOHandler
from .models.integral_system import IntegralSystem
from .services.suite_service import SuiteService
from .services.sweep_service import SweepService, linear_grid, log_negative_grid
from .settings import SolverSettings

logger = logging.getLogger(__name__)

# Códigos de saída
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

DUAL_HEADER = [
    "lambda_re",
    "lambda_im",
    "q_re",
    "q_im",
    "q_dual_re",
    "q_dual_im",
    "identity_residual",
    "conjugation_residual",
    "regular_residual",
    "tolerance",
    "status",
]


class CommandError(Exception):
    """Interrompe um subcomando com um código de saída."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_lambda(text: str) -> complex:
    """Converte '1+1j', '2i', '-0.5' em complex."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    cleaned = re.sub(r"(^|[+-])j", r"\g<1>1j", cleaned)
    try:
        return complex(cleaned)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"valor de lambda inválido: {text!r}") from e


def parse_numbers(text: str, count: int) -> List[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise argparse.ArgumentTypeError(f"esperados {count} valores separados por vírgula: {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"número inválido em {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """Monta o parser com os subcomandos e as opções comuns."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=SolverSettings.DEFAULT_TOL,
                        help=f"Tolerância do regime aninhado (padrão: {SolverSettings.DEFAULT_TOL:g}).")
    common.add_argument("--budget", type=int, default=SolverSettings.DEFAULT_BUDGET,
                        help=f"Orçamento de duplicações (padrão: {SolverSettings.DEFAULT_BUDGET}).")
    common.add_argument("--out", type=str, default=None, help="Arquivo de saída.")
    common.add_argument("--allow-indefinite", action="store_true", dest="allow_indefinite",
                        help="Aceita sistemas que falham no teste de definitude.")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="Mais mensagens no stderr (-v: INFO, -vv: DEBUG).")

    parser = argparse.ArgumentParser(
        prog="krein-weyl",
        description="Coeficiente de Titchmarsh-Weyl de sistemas integrais S[R1, R2].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("validate", "Valida a especificação e o teste de definitude."),
        ("classify", "Regular/Singular e LimitPoint/LimitCircle."),
        ("suite", "Executa a bateria de identidades."),
        ("canonicalize", "Reescreve a especificação na forma canônica."),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("path", help="Arquivo JSON do sistema.")

    for name, help_text in (
        ("q", "Calcula q(lambda) nos pontos dados."),
        ("dual-check", "Verifica q_dual = -1/(lambda q) nos pontos dados."),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("path", help="Arquivo JSON do sistema.")
        p.add_argument("--lambda", "-l", dest="lambdas", type=parse_lambda, action="append",
                       required=True, help="Valor de lambda (repetível), ex.: -1, 1+1j, 2i.")

    p = sub.add_parser("sweep", parents=[common], help="Varredura de q em uma grade, saída CSV.")
    p.add_argument("path", help="Arquivo JSON do sistema.")
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--grid", type=lambda s: parse_numbers(s, 4),
                      help="re_min,re_max,n_re,im (grade linear).")
    grid.add_argument("--log-grid", type=lambda s: parse_numbers(s, 3), dest="log_grid",
                      help="t_min,t_max,n (lambda = -t, t log-espaçado).")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def load_system(
    io_handler: IOHandler, path: str, allow_indefinite: bool, settings: SolverSettings
) -> IntegralSystem:
    """
    Lê e valida um sistema.

    Raises:
        CommandError: Código 2 para falhas de leitura/formato, 3 para falhas de validação.
    """
    try:
        data = io_handler.read_spec(path)
        r1, r2, metadata = io_handler.parse_system(data, path)
    except SpecFormatError as e:
        raise CommandError(EXIT_PARSE, str(e)) from e
    except OSError as e:
        raise CommandError(EXIT_PARSE, f"Não foi possível ler '{path}': {e}") from e

    try:
        return validate(
            r1,
            r2,
            endpoint=metadata["endpoint"],
            name=metadata["name"],
            allow_indefinite=allow_indefinite or metadata["allow_indefinite"],
            settings=settings,
        )
    except (IntegralSystemError, ValueError) as e:
        raise CommandError(EXIT_VALIDATION, f"{type(e).__name__}: {e}") from e


def _write_rows(io_handler: IOHandler, out: Optional[str], header: Sequence[str], rows) -> None:
    if out is None:
        io_handler.write_table(sys.stdout, header, rows)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as f:
            io_handler.write_table(f, header, rows)
    except OSError as e:
        raise CommandError(EXIT_IO, f"Não foi possível escrever '{out}': {e}") from e


# --- Subcomandos ---


def cmd_validate(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    print(f"OK: {system.name or args.path}")
    if system.definite:
        print(f"definite_from: {system.definite_from:.17g}")
    else:
        print("definite: false (modo permissivo)")
    for warning in io_handler.warnings:
        print(f"aviso: {warning}")
    return EXIT_OK


def cmd_classify(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    classification = classify(system)
    print(classification.summary())
    print(f"1 in L2(R2): {classification.witnesses[0]}")
    print(f"R1 in L2(R2): {classification.witnesses[1]}")
    return EXIT_OK


def cmd_q(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    rows = SweepService(settings).evaluate(system, args.lambdas, args.tol, args.budget)
    _write_rows(io_handler, args.out, CSV_HEADER, (io_handler.q_row_fields(row) for row in rows))
    if rows and all(row[1] is None for row in rows):
        return EXIT_FAILURE
    return EXIT_OK


def cmd_dual_check(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    table = []
    failed = False
    for lam in args.lambdas:
        fields = [f"{lam.real:.17g}", f"{lam.imag:.17g}"]
        try:
            report = check_duality_identity(system, lam, tol=args.tol, settings=settings)
        except IndefiniteSystemError:
            table.append(fields + ["nan"] * 8 + ["skipped: indefinite dual"])
            continue
        except IntegralSystemError as e:
            failed = True
            table.append(fields + ["nan"] * 8 + [f"FAIL: {error_label(e)}"])
            continue
        regular = "" if report.regular_residual is None else f"{report.regular_residual:.17g}"
        status = "PASS" if report.passed else "FAIL"
        failed = failed or not report.passed
        table.append(
            fields
            + [
                f"{report.q.value.real:.17g}",
                f"{report.q.value.imag:.17g}",
                f"{report.q_dual.value.real:.17g}",
                f"{report.q_dual.value.imag:.17g}",
                f"{report.identity_residual:.17g}",
                f"{report.conjugation_residual:.17g}",
                regular,
                f"{report.tolerance:.17g}",
                status,
            ]
        )
    _write_rows(io_handler, args.out, DUAL_HEADER, table)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_suite(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    result = SuiteService(settings).run(system)
    rows = [
        [
            check.name,
            f"{check.residual:.3e}",
            f"{check.tolerance:.3e}",
            "PASS" if check.passed else "FAIL",
            check.detail,
        ]
        for check in result.checks
    ]
    _write_rows(io_handler, args.out, ["check", "residual", "tolerance", "status", "detail"], rows)
    print("PASS" if result.passed else "FAIL")
    return EXIT_OK if result.passed else EXIT_FAILURE


def cmd_sweep(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    if args.out is None:
        raise CommandError(EXIT_PARSE, "sweep exige --out.")
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    try:
        if args.grid is not None:
            re_min, re_max, n_re, im = args.grid
            grid = linear_grid(re_min, re_max, int(n_re), im)
        else:
            t_min, t_max, n = args.log_grid
            grid = log_negative_grid(t_min, t_max, int(n))
    except ValueError as e:
        raise CommandError(EXIT_PARSE, str(e)) from e
    rows = SweepService(settings).evaluate(system, grid, args.tol, args.budget)
    if not io_handler.write_q_csv(args.out, rows):
        raise CommandError(EXIT_IO, f"Falha ao escrever '{args.out}'.")
    return EXIT_OK


def cmd_canonicalize(args, io_handler: IOHandler, settings: SolverSettings) -> int:
    system = load_system(io_handler, args.path, args.allow_indefinite, settings)
    notes = io_handler.read_spec(args.path).get("notes")
    if args.out is None:
        print(json.dumps(io_handler.system_to_dict(system, notes), indent=2, sort_keys=True))
        return EXIT_OK
    if not io_handler.write_spec(args.out, system, notes):
        raise CommandError(EXIT_IO, f"Falha ao escrever '{args.out}'.")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "q": cmd_q,
    "dual-check": cmd_dual_check,
    "suite": cmd_suite,
    "sweep": cmd_sweep,
    "canonicalize": cmd_canonicalize,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ponto de entrada da linha de comando.

    Códigos de saída: 0 ok, 1 falha da bateria, 2 leitura/formato,
    3 validação, 4 escrita.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    configure_logging(args.verbose)

    settings = SolverSettings.from_environment()
    settings.set_tol(args.tol)
    settings.set_budget(args.budget)
    io_handler = IOHandler()
    try:
        return COMMANDS[args.command](args, io_handler, settings)
    except CommandError as e:
        print(f"Erro: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
