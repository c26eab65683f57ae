"""Staged runner: field -> character -> L-values -> symbol -> lift -> Mellin -> verification."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from functools import reduce
from typing import Any, Callable, Optional, TypeVar

from .arith import CycNum, PadicEmbedding
from .cache import LValueCache
from .config import PipelineConfig
from .exceptions import DOMAIN_ERRORS, CharacterError, FieldError, StageError
from .heckechar import (
    AvatarCharacter,
    CharacterTableEntry,
    HeckeCharacter,
    InfinityType,
    canonical_cm_character,
    characters_by_conductor,
    p_adic_avatar,
)
from .lfun import Periods, StabilizationData, cm_periods, coeffs_of_bianchi, curve_trace, stabilization
from .lift import LiftResult, eigen_check as lift_eigen_check, eigen_lift, measure_check, uniqueness_check
from .mellin import (
    PadicLValue,
    interpolation_check,
    katz_check,
    mellin_eval,
    refinement_check,
    unit_invariance_check,
)
from .quadfield import (
    Cusp,
    ElemK,
    FieldK,
    IdealK,
    PrimeSplitting,
    c_stability_check,
    factor_prime,
    gamma1_samples,
    sample_cusps,
    stabilization_matrices,
)
from .reporting import RunReport
from .symbols import GoodPrimeValues, LValueSums, PartialSymbol, eigen_check as hecke_eigen_check, good_prime, hecke_T_check

logger = logging.getLogger(__name__)

T = TypeVar("T")

COMMANDS = (
    "field-info",
    "char-table",
    "lvalue",
    "symbol",
    "lift",
    "padic-l",
    "verify-interp",
    "verify-katz",
    "verify-all",
)

# Stages each command needs, in execution order.
_PLAN = {
    "field-info": ("field",),
    "char-table": ("field", "table"),
    "lvalue": ("field", "character", "table", "lvalue"),
    "symbol": ("field", "character", "table", "lvalue", "symbol"),
    "lift": ("field", "character", "table", "lvalue", "symbol", "lift"),
    "padic-l": ("field", "character", "table", "lvalue", "symbol", "lift", "mellin"),
    "verify-interp": ("field", "character", "table", "lvalue", "symbol", "lift", "mellin", "interpolation"),
    "verify-katz": ("field", "character", "table", "lvalue", "symbol", "lift", "mellin", "katz"),
    "verify-all": (
        "field",
        "character",
        "table",
        "lvalue",
        "symbol",
        "lift",
        "mellin",
        "interpolation",
        "katz",
        "robustness",
    ),
}

COEFFICIENT_CUTOFF = 100


def _parallel(fn: Callable[[Any], T], items: list, workers: int) -> list[T]:
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class FieldStageResult:
    """K, the splitting of p and the fixed embedding iota_p."""
    field: FieldK
    splitting: PrimeSplitting
    prime: IdealK
    prime_bar: IdealK
    embedding: PadicEmbedding
    unit: ElemK

    def as_dict(self) -> dict:
        return {
            "D": self.field.D,
            "w": self.field.w,
            "class_number": self.field.class_number,
            "splitting": self.splitting.as_dict(),
            "prime": repr(self.prime),
            "prime_bar": repr(self.prime_bar),
            "uniformizers": [repr(self.unit * self.prime.require_generator()), repr(self.unit.conj() * self.prime_bar.require_generator())],
            "embedding": self.embedding.describe(),
        }


class FieldStep:
    """Build K, split p and fix iota_p from the configured seed."""

    def run(self, config: PipelineConfig) -> FieldStageResult:
        settings = config.field
        field = FieldK(settings.D)
        field.require_class_number_one()
        embedding = PadicEmbedding.build(settings.D, settings.p, config.precision.padic_precision(), settings.iota_seed)
        splitting = factor_prime(field, settings.p, embedding.seed)
        if not splitting.is_split:
            raise FieldError(f"p={settings.p} is {splitting.kind} in K")
        prime, prime_bar = splitting.primes
        units = field.units
        if not 0 <= settings.uniformizer_unit < len(units):
            raise FieldError(f"uniformizer_unit={settings.uniformizer_unit} is not an index into the {len(units)} units")
        return FieldStageResult(field, splitting, prime, prime_bar, embedding, units[settings.uniformizer_unit])


@dataclass(frozen=True)
class CharacterStageResult:
    phi: HeckeCharacter
    stabilization: StabilizationData
    periods: Periods
    curve_trace: Optional[int]

    def as_dict(self) -> dict:
        record = {
            "phi": self.phi.describe(),
            "stabilization": self.stabilization.as_dict(),
            "periods": self.periods.as_dict(),
        }
        if self.curve_trace is not None:
            record["curve_trace"] = self.curve_trace
        return record


class CharacterStep:
    """phi as a power of the canonical CM character, its stabilization and the periods."""

    def __init__(self, field_stage: FieldStageResult) -> None:
        self._field = field_stage

    def run(self, config: PipelineConfig) -> tuple[CharacterStageResult, list[dict]]:
        stage = self._field
        base = canonical_cm_character(stage.field)
        phi = reduce(lambda left, right: left * right, [base] * config.character.phi_power)
        data = stabilization(phi, stage.embedding, stage.prime, stage.prime_bar)
        checks = [
            {
                "kind": "ordinarity",
                "label": phi.label,
                "ok": data.ordinary and data.alpha_slope == data.k + 1,
                "valuation": data.beta_slope,
                "required": 0,
            }
        ]
        if not data.ordinary:
            raise CharacterError(f"phi(pbar) has slope {data.beta_slope}; only the ordinary stabilization is supported")
        periods = cm_periods(stage.field, data.k, config.character.curve_coefficients(), config.precision.digits)
        trace = None
        if data.k == 0:
            trace = curve_trace(periods.curve[0], periods.curve[1], config.field.p)
            checks.append(
                {
                    "kind": "eigenvalue_oracle",
                    "label": f"a_{config.field.p}",
                    "ok": data.a_p == CycNum.rational(trace),
                    "details": {"a_p": data.a_p.canonical(), "point_count": trace},
                }
            )
        return CharacterStageResult(phi, data, periods, trace), checks


@dataclass(frozen=True)
class TableStageResult:
    entries: tuple[CharacterTableEntry, ...]

    def primitive(self) -> list[HeckeCharacter]:
        return [entry.character for entry in self.entries if entry.primitive]

    def as_dict(self) -> dict:
        return {"characters": [entry.as_dict() for entry in self.entries]}


class CharacterTableStep:
    """Unit-compatible characters of p-power conductor, with Gauss sums and |W|^2 = N(f)."""

    def __init__(self, field_stage: FieldStageResult) -> None:
        self._field = field_stage

    def run(self, config: PipelineConfig) -> tuple[TableStageResult, list[dict]]:
        stage = self._field
        selection = config.selection
        entries: list[CharacterTableEntry] = []
        for q, r in selection.infinity_types:
            entries.extend(
                characters_by_conductor(
                    stage.field, stage.prime, stage.prime_bar, selection.max_t, selection.max_s, InfinityType(q, r)
                )
            )
        checks = []
        for entry in entries:
            if entry.gauss_sum is None:
                continue
            record = entry.as_dict()
            norm = entry.character.conductor().norm
            checks.append(
                {
                    "kind": "gauss_norm",
                    "label": entry.character.label,
                    "fingerprint": entry.character.fingerprint(),
                    "ok": record["gauss_sum_norm_squared"] == str(norm),
                    "details": {"norm_squared": record["gauss_sum_norm_squared"], "conductor_norm": norm},
                }
            )
        logger.info("stage=table characters=%s primitive=%s", len(entries), len(checks))
        return TableStageResult(tuple(entries)), checks


class LValueStep:
    """Recognized Lambda(F^p, psi)/Omega_norm for every primitive character of the table."""

    def __init__(self, field_stage: FieldStageResult, character: CharacterStageResult, cache: Optional[LValueCache]) -> None:
        self._field = field_stage
        self._character = character
        self._cache = cache

    def run(self, config: PipelineConfig, table: TableStageResult) -> tuple[LValueSums, list[dict]]:
        stage, character = self._field, self._character
        sums = LValueSums(
            character.phi,
            character.stabilization.beta,
            stage.prime,
            stage.prime_bar,
            character.periods,
            config.precision.digits,
            config.precision.height,
            self._cache,
        )
        characters = table.primitive()
        _parallel(sums.primitive_sum, characters, config.runtime.workers)
        checks = []
        for psi in characters:
            check = {"kind": "factorization", "label": psi.label, "fingerprint": psi.fingerprint(), "ok": True}
            try:
                coeffs_of_bianchi(character.phi, psi, COEFFICIENT_CUTOFF)
            except DOMAIN_ERRORS as exc:
                check["ok"] = False
                check["details"] = str(exc)
            checks.append(check)
        return sums, checks


class SymbolStep:
    """The partial symbol with the inversion round trip and its Hecke eigen relations."""

    def __init__(self, field_stage: FieldStageResult, character: CharacterStageResult) -> None:
        self._field = field_stage
        self._character = character

    def run(self, config: PipelineConfig, sums: LValueSums) -> tuple[PartialSymbol, list[dict]]:
        stage = self._field
        symbol = PartialSymbol(sums, config.k, self._character.phi.modulus)
        checks = []
        for q, r in config.selection.infinity_types:
            for t in range(config.selection.max_t + 1):
                for s in range(config.selection.max_s + 1):
                    report = symbol.forward_check(t, s, q, r)
                    record = report.as_dict()
                    record.update({"kind": "forward", "label": f"level {t},{s} type {q},{r}"})
                    checks.append(record)
        if config.selection.max_t >= 1 and config.selection.max_s >= 1:
            zero = Cusp.normalized(stage.field, stage.field.elem(0), stage.field.elem(1))
            beta = self._character.stabilization.beta
            for name, prime in (("U_p", stage.prime), ("U_pbar", stage.prime_bar)):
                left, right = hecke_eigen_check(symbol, prime, beta, zero)
                checks.append({"kind": "hecke", "label": name, "ok": left == right})
            if config.k == 0:
                checks.append(self._hecke_T(symbol, zero))
        checks.append(self._c_stability())
        return symbol, checks

    def _hecke_T(self, symbol: PartialSymbol, zero: Cusp) -> dict:
        """T_q at {0} - {inf} for the smallest good split prime q, a_q = phi(q) + phi(qbar)."""
        phi = self._character.phi
        splitting = good_prime(self._field.field, exclude=(self._field.splitting.q, phi.modulus.norm))
        a_q = reduce(lambda x, y: x + y, (phi.eval_ideal(q) for q in splitting.primes))
        record = {"kind": "hecke", "label": f"T_q N(q)={splitting.q}", "ok": False, "details": {"a_q": a_q.canonical()}}
        try:
            left, right = hecke_T_check(GoodPrimeValues(symbol, splitting.primes[0], a_q), zero)
            record["ok"] = left == right
        except DOMAIN_ERRORS as exc:
            record["details"]["error"] = str(exc)
        return record

    def _c_stability(self) -> dict:
        """Gamma_1(m) words, stabilization matrices and U cosets at both primes applied to sample cusps of C."""
        stage = self._field
        field, m = stage.field, self._character.phi.modulus
        matrices = gamma1_samples(field, m, 1)
        generators = [prime.require_generator() for prime in (stage.prime, stage.prime_bar)]
        for prime, pi in zip((stage.prime, stage.prime_bar), generators):
            matrices.extend(stabilization_matrices(field, pi, prime.residues()))
        denominators = [field.elem(1), *generators, generators[0] * generators[1]]
        cusps = sample_cusps(field, denominators, [field.elem(0), field.elem(1), field.omega])
        record = c_stability_check(field, m, matrices, cusps).as_dict()
        record.update({"kind": "c_stability", "label": "symbol"})
        return record


class LiftStep:
    """Ordinary eigenlift of the symbol over the divisor tree of depth (T, T)."""

    def __init__(self, field_stage: FieldStageResult, character: CharacterStageResult) -> None:
        self._field = field_stage
        self._character = character

    def run(self, config: PipelineConfig, symbol: PartialSymbol) -> tuple[LiftResult, list[dict]]:
        stage = self._field
        result = eigen_lift(
            symbol,
            stage.embedding,
            self._character.stabilization.beta,
            config.precision.T,
            config.precision.N,
            config.M,
            workers=config.runtime.workers,
            unit=stage.unit,
        )
        checks = []
        for check in (measure_check(result), lift_eigen_check(result)):
            record = check.as_dict()
            record["kind"] = "lift"
            checks.append(record)
        stability = result.tree.c_stability(self._character.phi.modulus).as_dict()
        stability.update({"kind": "c_stability", "label": "tree"})
        checks.append(stability)
        return result, checks


class MellinStep:
    """p-adic L-values of every avatar the tree can reach."""

    def __init__(self, field_stage: FieldStageResult) -> None:
        self._field = field_stage

    def avatars(self, table: TableStageResult) -> tuple[list[AvatarCharacter], list[dict]]:
        stage = self._field
        avatars, skipped = [], []
        for psi in table.primitive():
            try:
                avatars.append(p_adic_avatar(psi, stage.embedding, stage.prime, stage.prime_bar))
            except CharacterError as exc:
                skipped.append({"kind": "avatar", "label": psi.label, "fingerprint": psi.fingerprint(), "ok": False, "skipped": exc.message})
        return avatars, skipped

    def run(self, config: PipelineConfig, result: LiftResult, avatars: list[AvatarCharacter]) -> list[PadicLValue]:
        return _parallel(lambda avatar: mellin_eval(result, avatar), avatars, config.runtime.workers)


class VerificationStep:
    """Interpolation and Katz factorization records, plus refinement and unit invariance."""

    def __init__(self, field_stage: FieldStageResult, character: CharacterStageResult, sums: LValueSums) -> None:
        self._field = field_stage
        self._character = character
        self._sums = sums

    def interpolation(self, config: PipelineConfig, result: LiftResult, avatars: list[AvatarCharacter]) -> list[dict]:
        checks = []
        for avatar in avatars:
            checks.append(interpolation_check(result, avatar, self._sums).as_dict())
            for refinement in refinement_check(result, avatar):
                record = refinement.as_dict()
                record["kind"] = "refinement"
                checks.append(record)
        return checks

    def katz(self, config: PipelineConfig, result: LiftResult, avatars: list[AvatarCharacter]) -> list[dict]:
        character = self._character
        return [
            katz_check(
                result,
                avatar,
                character.phi,
                character.stabilization.beta,
                character.periods.omega_inf,
                config.precision.digits,
                config.precision.height,
            ).as_dict()
            for avatar in avatars
        ]

    def robustness(self, config: PipelineConfig, result: LiftResult, symbol: PartialSymbol, avatars: list[AvatarCharacter]) -> list[dict]:
        checks = []
        for avatar in avatars:
            if (avatar.q, avatar.r) == (0, 0):
                record = unit_invariance_check(result, avatar).as_dict()
                record["kind"] = "unit_invariance"
                checks.append(record)
        record = uniqueness_check(
            symbol,
            self._field.embedding,
            self._character.stabilization.beta,
            config.precision.T,
            config.precision.N,
            config.M,
            workers=config.runtime.workers,
        ).as_dict()
        record["kind"] = "lift"
        checks.append(record)
        return checks


@dataclass
class PipelineState:
    """Results of the stages executed so far."""
    field: Optional[FieldStageResult] = None
    character: Optional[CharacterStageResult] = None
    table: Optional[TableStageResult] = None
    sums: Optional[LValueSums] = None
    symbol: Optional[PartialSymbol] = None
    lift: Optional[LiftResult] = None
    avatars: list[AvatarCharacter] = dataclass_field(default_factory=list)
    lvalues: list[PadicLValue] = dataclass_field(default_factory=list)


class Pipeline:
    """Run a command and every stage it depends on, collecting a RunReport."""

    def __init__(self, config: PipelineConfig, cache: Optional[LValueCache] = None) -> None:
        self.config = config
        path = config.runtime.cache_path()
        self.cache = cache if cache is not None else (LValueCache(path) if path is not None else None)
        self.state = PipelineState()

    def run(self, command: str) -> RunReport:
        if command not in _PLAN:
            raise StageError("config", ValueError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}"))
        report = RunReport(command=command, config=self.config.as_dict())
        try:
            self._stage(report, "config", lambda: self.config.validate())
            for stage in _PLAN[command]:
                self._stage(report, stage, getattr(self, f"_run_{stage}"), report)
        except StageError as exc:
            logger.error("stage=%s error=%s", exc.stage, exc.cause)
            report.error = {"stage": exc.stage, "message": str(exc.cause)}
        if self.cache is not None and self.cache.corrupt_lines:
            report.sections["cache"] = {"corrupt_lines": self.cache.corrupt_lines}
        logger.info("command=%s ok=%s checks=%s", command, report.ok, len(report.checks))
        return report

    def _stage(self, report: RunReport, name: str, fn: Callable[..., Any], *args: Any) -> Any:
        started = time.perf_counter()
        logger.info("stage=%s status=start", name)
        try:
            return fn(*args)
        except DOMAIN_ERRORS as exc:
            raise StageError(name, exc) from exc
        finally:
            report.timings[name] = report.timings.get(name, 0.0) + time.perf_counter() - started

    def _run_field(self, report: RunReport) -> None:
        self.state.field = FieldStep().run(self.config)
        report.sections["field"] = self.state.field.as_dict()

    def _run_character(self, report: RunReport) -> None:
        self.state.character, checks = CharacterStep(self.state.field).run(self.config)
        report.sections["character"] = self.state.character.as_dict()
        report.checks.extend(checks)

    def _run_table(self, report: RunReport) -> None:
        self.state.table, checks = CharacterTableStep(self.state.field).run(self.config)
        report.sections["char_table"] = self.state.table.as_dict()
        report.checks.extend(checks)

    def _run_lvalue(self, report: RunReport) -> None:
        step = LValueStep(self.state.field, self.state.character, self.cache)
        self.state.sums, checks = step.run(self.config, self.state.table)
        records = sorted(self.state.sums.records.values(), key=lambda record: record.fingerprint)
        report.sections["lvalues"] = [record.as_dict() for record in records]
        for record in records:
            report.add_hash(f"lambda/{record.fingerprint}", record.normalized.canonical())
        report.checks.extend(checks)

    def _run_symbol(self, report: RunReport) -> None:
        self.state.symbol, checks = SymbolStep(self.state.field, self.state.character).run(self.config, self.state.sums)
        zero = Cusp.normalized(self.state.field.field, self.state.field.field.elem(0), self.state.field.field.elem(1))
        coefficient = self.state.symbol.coefficient(zero, 0, 0)
        report.sections["symbol"] = {"k": self.config.k, "c_00(0)": coefficient.canonical()}
        report.add_hash("symbol/c_00(0)", coefficient.canonical())
        report.checks.extend(checks)

    def _run_lift(self, report: RunReport) -> None:
        self.state.lift, checks = LiftStep(self.state.field, self.state.character).run(self.config, self.state.symbol)
        section = self.state.lift.as_dict()
        section["admissibility"] = self.state.lift.admissibility()
        report.sections["lift"] = section
        report.checks.extend(checks)

    def _run_mellin(self, report: RunReport) -> None:
        step = MellinStep(self.state.field)
        self.state.avatars, skipped = step.avatars(self.state.table)
        self.state.lvalues = step.run(self.config, self.state.lift, self.state.avatars)
        report.sections["padic_l"] = [value.as_dict() for value in self.state.lvalues]
        report.checks.extend(skipped)

    def _verification(self) -> VerificationStep:
        return VerificationStep(self.state.field, self.state.character, self.state.sums)

    def _run_interpolation(self, report: RunReport) -> None:
        report.checks.extend(self._verification().interpolation(self.config, self.state.lift, self.state.avatars))

    def _run_katz(self, report: RunReport) -> None:
        records = self._verification().katz(self.config, self.state.lift, self.state.avatars)
        for record in records:
            for index, value in enumerate(record["extra"].get("katz", [])):
                report.add_hash(f"katz/{record['fingerprint']}/{index}", value["value"])
        report.checks.extend(records)

    def _run_robustness(self, report: RunReport) -> None:
        report.checks.extend(
            self._verification().robustness(self.config, self.state.lift, self.state.symbol, self.state.avatars)
        )


def run(command: str, config: PipelineConfig, cache: Optional[LValueCache] = None) -> RunReport:
    """Execute `command` with its prerequisite stages."""
    return Pipeline(config, cache).run(command)
