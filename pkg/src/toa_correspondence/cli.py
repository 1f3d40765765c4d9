"""Command-line front end: ``toa <subcommand>`` for every pipeline."""

import csv
import io
import logging
import os
import sys
import tempfile
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import AliasChoices, BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    CliApp,
    CliImplicitFlag,
    CliSubCommand,
    SettingsConfigDict,
    SettingsError,
)

from toa_correspondence.algebra import Series
from toa_correspondence.algebra.codec import dumps, format_rational, series_to_csv
from toa_correspondence.config import configure_logging, get_settings
from toa_correspondence.errors import ConsistencyError, InputError, ToaError
from toa_correspondence.models.pipeline import (
    ComparisonResponse,
    KernelResponse,
    LocalToaResponse,
)
from toa_correspondence.physics.kernel import kernel_to_qq
from toa_correspondence.physics.numeric import NumericConfig, NumericRow, PhasePoint
from toa_correspondence.services.pipeline_service import get_pipeline_service
from toa_correspondence.services.table_service import get_table_service

logger = logging.getLogger(__name__)

# Single-letter fields become ``-q``; ``--q`` is accepted as a synonym.
_LONG_SINGLE_LETTER = {"--q": "-q", "--p": "-p", "--x": "-x"}


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    MD = "md"


def _potential_field() -> Any:
    return Field(
        validation_alias=AliasChoices("V", "potential"),
        description="Polynomial potential, e.g. 'lambda*q^4'",
    )


class OutputOptions(BaseModel):
    format: OutputFormat = Field(default=OutputFormat.JSON, description="json, csv or md")
    output: Path | None = Field(default=None, description="Write here instead of stdout")

    def emit(self, text: str) -> None:
        """Write the fully rendered ``text`` in one step."""
        if self.output is None:
            sys.stdout.write(text)
            return
        target = self.output
        output_dir = get_settings().output_dir
        if not target.is_absolute() and output_dir is not None:
            target = output_dir / target
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, target)
        logger.info("Wrote %s", target)


def _terms_markdown(series: Series, heading: str) -> list[str]:
    lines = [f"### {heading}", "", "| coefficient | monomial |", "| --- | --- |"]
    lines += [f"| {format_rational(c)} | {m.render()} |" for m, c in series.items()]
    return lines + [""]


class LocalCmd(OutputOptions):
    """Classical local time of arrival t_x to recurrence depth K."""

    potential: str = _potential_field()
    order: int = Field(default=4, ge=0, validation_alias=AliasChoices("K", "order"))
    x: str = Field(default="0", description="Rational arrival point, or 'x' for symbolic")
    negate: CliImplicitFlag[bool] = Field(default=False, description="Print −t_x")

    def cli_cmd(self) -> None:
        result = get_pipeline_service().local(self.potential, self.order, self.x)
        sign = -1 if self.negate else 1
        if self.format is OutputFormat.JSON:
            response = LocalToaResponse.from_result(self.potential, result, self.negate)
            self.emit(dumps(response.model_dump(mode="json")))
        elif self.format is OutputFormat.CSV:
            self.emit(series_to_csv(result.series.scale(sign)))
        else:
            title = "−t" if self.negate else "t"
            lines = [f"## {title}_x for V = {self.potential}, K = {self.order}", ""]
            lines += ["| k | coefficient | monomial |", "| --- | --- | --- |"]
            for k, term in enumerate(result.per_order):
                signed = term.scale(sign if k % 2 == 0 else -sign)
                lines += [f"| {k} | {format_rational(c)} | {m.render()} |" for m, c in signed]
            self.emit("\n".join(lines) + "\n")


class KernelCmd(OutputOptions):
    """Time kernel T(u, v) to even v-order N, with boundary and residual checks."""

    potential: str = _potential_field()
    order: int = Field(default=4, ge=0, validation_alias=AliasChoices("N", "order"))
    qq: CliImplicitFlag[bool] = Field(default=False, description="Also give the (q, q′) form")

    def cli_cmd(self) -> None:
        kernel = get_pipeline_service().kernel(self.potential, self.order)
        qq = kernel_to_qq(kernel) if self.qq else None
        if self.format is OutputFormat.JSON:
            self.emit(dumps(KernelResponse.from_kernel(kernel, qq).model_dump(mode="json")))
        elif self.format is OutputFormat.CSV:
            self.emit(series_to_csv(kernel.series))
        else:
            lines = [f"## T(u, v) for V = {self.potential}, N = {self.order}", ""]
            lines += ["| m | n | coefficient | monomial |", "| --- | --- | --- | --- |"]
            lines += [
                f"| {m.u} | {m.v} | {format_rational(c)} | {m.render()} |"
                for m, c in kernel.series.items()
            ]
            if qq is not None:
                lines += ["", "### (q, q′) form", "", "| q | q′ | coefficient | factor |"]
                lines += ["| --- | --- | --- | --- |"]
                lines += [
                    f"| {t.q_exp} | {t.qp_exp} | {format_rational(t.coefficient)} "
                    f"| {t.monomial.render()} |"
                    for t in qq
                ]
            self.emit("\n".join(lines) + "\n")


class TransformCmd(OutputOptions):
    """T_ħ transform of the kernel and its classical limit."""

    potential: str = _potential_field()
    order: int = Field(default=4, ge=0, validation_alias=AliasChoices("N", "order"))

    def cli_cmd(self) -> None:
        service = get_pipeline_service()
        if self.format is OutputFormat.JSON:
            response = service.transform_response(self.potential, self.order)
            self.emit(dumps(response.model_dump(mode="json")))
            return
        t_hbar, limit = service.transform(self.potential, self.order)
        if self.format is OutputFormat.CSV:
            self.emit(series_to_csv(t_hbar))
        else:
            lines = _terms_markdown(t_hbar, "T_ħ(q, p)") + _terms_markdown(limit, "ħ → 0")
            self.emit("\n".join(lines))


class WeylCmd(OutputOptions):
    """Weyl kernel of the local time of arrival t₀ at depth K."""

    potential: str = _potential_field()
    order: int = Field(default=2, ge=0, validation_alias=AliasChoices("K", "order"))

    def cli_cmd(self) -> None:
        service = get_pipeline_service()
        if self.format is OutputFormat.JSON:
            response = service.weyl_response(self.potential, self.order)
            self.emit(dumps(response.model_dump(mode="json")))
            return
        kernel, _ = service.weyl(self.potential, self.order)
        if self.format is OutputFormat.CSV:
            self.emit(series_to_csv(kernel))
        else:
            self.emit("\n".join(_terms_markdown(kernel, "Weyl kernel")))


class CompareCmd(OutputOptions):
    """Compare the kernel with t₀ and with Weyl quantization; exit 3 if inconsistent."""

    potential: str = _potential_field()
    order: int = Field(default=8, ge=0, validation_alias=AliasChoices("N", "order"))
    ambiguity: str = Field(default="0", description="Multiple c of μħ⁻¹|q − q′|")

    def cli_cmd(self) -> None:
        report = get_pipeline_service().compare(self.potential, self.order, self.ambiguity)
        if self.format is OutputFormat.JSON:
            self.emit(dumps(ComparisonResponse.from_report(report).model_dump(mode="json")))
        elif self.format is OutputFormat.CSV:
            self.emit(series_to_csv(report.delta_series))
        else:
            lines = [
                f"## V = {report.potential}, N = {report.order}",
                "",
                f"- system class: {report.system_class.value}",
                f"- classical limit matches t₀: {report.classical_match}",
                f"- ħ orders of corrections: {list(report.correction_orders)}",
                f"- Weyl kernel equals solution: {report.weyl_equals_kernel}",
                f"- leading family matches Weyl: {report.leading_family_match}",
                "",
            ]
            lines += _terms_markdown(report.delta_series, "Solution minus Weyl kernel")
            if report.ambiguity:
                lines += _terms_markdown(report.ambiguity, "Ambiguity term")
            self.emit("\n".join(lines))
        if not report.consistent:
            raise ConsistencyError(
                details={"potential": str(report.potential), "order": report.order}
            )


class NumericCmd(OutputOptions):
    """Series against quadrature at one point, or over a seeded random sweep."""

    potential: str = _potential_field()
    order: int = Field(default=10, ge=0, validation_alias=AliasChoices("K", "order"))
    q: float | None = None
    p: float | None = None
    x: float = 0.0
    mu: float = Field(default=1.0, gt=0)
    param: dict[str, float] = Field(default_factory=dict, description="name=value")
    tol: float | None = Field(default=None, gt=0, description="Quadrature absolute tolerance")
    sweep: int | None = Field(default=None, ge=1, description="Number of random points")
    seed: int = 0

    def cli_cmd(self) -> None:
        service = get_pipeline_service()
        cfg = NumericConfig.from_settings()
        if self.tol is not None:
            cfg = cfg.model_copy(update={"abs_tol": self.tol})
        template = PhasePoint(
            q=0.0 if self.q is None else self.q,
            p=1.0 if self.p is None else self.p,
            x=self.x,
            params=self.param,
            mu=self.mu,
        )
        if self.sweep is not None:
            rows = service.sweep(self.potential, template, self.order, self.sweep, self.seed, cfg)
        elif self.q is None or self.p is None:
            raise InputError(message="numeric needs --q and --p, or --sweep")
        else:
            rows = [service.numeric(self.potential, template, self.order, cfg)]
        self.emit(self._render(rows))

    def _render(self, rows: list[NumericRow]) -> str:
        if self.format is OutputFormat.JSON:
            return dumps([row.model_dump(mode="json") for row in rows])
        records = [row.model_dump() for row in rows]
        if self.format is OutputFormat.CSV:
            buffer = io.StringIO()
            writer = csv.DictWriter(
                buffer, fieldnames=list(NumericRow.CSV_COLUMNS), lineterminator="\n"
            )
            writer.writeheader()
            for record in records:
                writer.writerow({k: _cell(record[k]) for k in NumericRow.CSV_COLUMNS})
            return buffer.getvalue()
        header = "| " + " | ".join(NumericRow.CSV_COLUMNS) + " |"
        lines = [header, "|" + " --- |" * len(NumericRow.CSV_COLUMNS)]
        lines += [
            "| " + " | ".join(_cell(r[k]) for k in NumericRow.CSV_COLUMNS) + " |"
            for r in records
        ]
        return "\n".join(lines) + "\n"


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


class TablesCmd(BaseModel):
    """Regenerate table 1 (local series) or table 2 (kernel) from the engines."""

    which: int = Field(description="1 or 2")
    order: int = Field(default=4, ge=0, validation_alias=AliasChoices("K", "N", "order"))
    output: Path | None = None

    def cli_cmd(self) -> None:
        text = get_table_service().render(self.which, self.order)
        OutputOptions(format=OutputFormat.MD, output=self.output).emit(text)


class ToaCLI(BaseSettings):
    """Exact time-of-arrival series, kernels and their quantum-classical comparison."""

    model_config = SettingsConfigDict(
        cli_prog_name="toa",
        case_sensitive=True,
        env_prefix="TOA_CLI_",
    )

    local: CliSubCommand[LocalCmd]
    kernel: CliSubCommand[KernelCmd]
    transform: CliSubCommand[TransformCmd]
    weyl: CliSubCommand[WeylCmd]
    compare: CliSubCommand[CompareCmd]
    numeric: CliSubCommand[NumericCmd]
    tables: CliSubCommand[TablesCmd]

    def cli_cmd(self) -> None:
        """Run one of the subcommands."""
        CliApp.run_subcommand(self)


def _normalize(argv: list[str]) -> list[str]:
    out = []
    for arg in argv:
        flag, sep, value = arg.partition("=")
        out.append(_LONG_SINGLE_LETTER.get(flag, flag) + sep + value)
    return out


def main(argv: list[str] | None = None) -> int:
    """Entry point of the ``toa`` script; returns the process exit code."""
    configure_logging()
    args = _normalize(sys.argv[1:] if argv is None else argv)
    try:
        CliApp.run(ToaCLI, cli_args=args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ToaError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except (ValidationError, SettingsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        logger.exception("Unexpected failure")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
