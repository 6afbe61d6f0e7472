"""
CLI 하위 명령 처리 서비스

역할:
  - 입력 문서를 도메인 객체로 바꿔 라이브러리 연산을 호출
  - 결과를 보고서 모델과 종료 코드로 돌려준다 (예외는 호출자에게 그대로 전파)

종료 코드:
  0 성공, 1 부정 결과 (빈 집합, 거짓 판정), 3 Newton 점 미인증으로 판정 불가

@since 2026-10-16
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from pydantic import BaseModel

from app.algebra.arith import FieldTower, common_tower, field_tower
from app.algebra.coweight import Coweight, format_rational, polygon_vertices
from app.config.settings import DEFAULT_BASE_DEGREE, DEFAULT_PRIME
from app.crystal.chains import EmptyChain, build_chain, chain_membership, extend_chain
from app.crystal.isocrystal import (
    Isocrystal,
    hodge_point,
    standard_isocrystal,
    standard_symplectic_isocrystal,
    twisted_example,
)
from app.crystal.mazur import (
    compare_hodge_sets,
    construct_lattice,
    construct_lattice_gsp,
    in_b_g_mu,
    mazur_check,
)
from app.crystal.newton import NewtonPoint, newton_point
from app.incidence.diagram import validate
from app.incidence.solver import solve_lines, verify_lines
from app.lattice.lattice import SymplecticForm
from app.models.reports import (
    AdmReport,
    BGMuReport,
    ChainReport,
    EmptyResult,
    GradedChainReport,
    GradedWitnessReport,
    HodgeReport,
    HodgeSetReport,
    IncidenceCheckReport,
    MazurReportModel,
    MembershipReport,
    NewtonReport,
    SolutionReport,
    WitnessReport,
)
from app.models.schemas import (
    ChainInputDoc,
    DiagramDoc,
    GradedChainInputDoc,
    GradedIsocrystalDoc,
    IsocrystalDoc,
    WeylElementDoc,
    WitnessDoc,
)
from app.models.search import SearchConfig
from app.resscalars.chains import build_graded_chain, graded_chain_membership
from app.resscalars.graded import (
    EmptyGraded,
    GradedCoweight,
    GradedIsocrystal,
    standard_graded_isocrystal,
    witness_graded,
)
from app.services import codec
from app.utils.errors import InvalidInputError
from app.utils.logger import log
from app.weyl.admissible import adm_set, perm_set, realised_double_cosets


@dataclass
class CommandResult:
    report: BaseModel
    exit_code: int = 0


def _polygon(x: Coweight) -> list[tuple[int, str]]:
    return [(i, format_rational(y)) for i, y in polygon_vertices(x)]


def _group(group: str) -> str:
    if group not in ("gl", "gsp"):
        raise InvalidInputError(f"unknown group {group!r} (expected gl or gsp)")
    return group


class CommandService:
    """
    하위 명령 하나당 메서드 하나

    사용 예시:
        service = CommandService(SearchConfig.from_env(), prime=2)
        result = service.newton(nu="1/2,1/2")
        result.report.nu        # ["1/2", "1/2"]
    """

    def __init__(
        self,
        cfg: Optional[SearchConfig] = None,
        prime: int = DEFAULT_PRIME,
        base_degree: int = DEFAULT_BASE_DEGREE,
        transcript: bool = False,
    ):
        if prime < 2:
            raise InvalidInputError(f"--prime must be a prime, got {prime}")
        self.cfg = cfg or SearchConfig.from_env()
        self.prime = prime
        self.base_degree = base_degree
        self.transcript = transcript

    def tower(self, m: int = 1) -> FieldTower:
        return field_tower(self.prime, self.base_degree, m)

    def _notes(self, lines: Iterable[str]) -> list[str]:
        return list(lines) if self.transcript else []

    # ── 입력 해석 ──

    def _isocrystal(
        self, b: Optional[str], nu: Optional[str], group: str = "gl"
    ) -> tuple[Isocrystal, Optional[SymplecticForm]]:
        """--b 문서 또는 --nu 표준형. GSp 인데 form 이 없으면 표준 심플렉틱 형식"""
        if b is not None:
            X, form = codec.isocrystal_from_doc(codec.parse_doc(IsocrystalDoc, b))
        elif nu is not None:
            slopes = codec.parse_coweight(nu)
            if group == "gsp":
                X, form = standard_symplectic_isocrystal(self.tower(), slopes)
            else:
                X, form = standard_isocrystal(self.tower(), slopes), None
        else:
            raise InvalidInputError("either --b or --nu is required")
        if group == "gsp" and form is None:
            if X.n % 2:
                raise InvalidInputError(f"GSp needs even rank, got {X.n}")
            form = SymplecticForm.standard(X.tower, X.n // 2)
        return X, (form if group == "gsp" else None)

    def _graded_isocrystal(
        self, b: Optional[str], nu: Optional[str], f: Optional[int], group: str
    ) -> tuple[GradedIsocrystal, Optional[SymplecticForm]]:
        if b is not None:
            X, form = codec.graded_isocrystal_from_doc(codec.parse_doc(GradedIsocrystalDoc, b))
            if f is not None and f != X.f:
                raise InvalidInputError(f"--f {f} disagrees with the document (f = {X.f})")
        elif nu is not None:
            if f is None:
                raise InvalidInputError("--f is required with --nu")
            X, form = standard_graded_isocrystal(self.tower(f), codec.parse_coweight(nu), f, group)
        else:
            raise InvalidInputError("either --b or --nu is required")
        if group == "gsp" and form is None:
            form = SymplecticForm.standard(X.tower, X.n // 2)
        return X, (form if group == "gsp" else None)

    def _newton_report(self, newton: NewtonPoint) -> NewtonReport:
        return NewtonReport(
            nu=newton.nu.to_strings(),
            certified=newton.certified,
            method=newton.method,
            bounds=[(s, list(d)) for s, d in newton.bounds],
            polygon=_polygon(newton.nu),
        )

    # ── newton / hodge / mazur ──

    def newton(
        self,
        b: Optional[str] = None,
        nu: Optional[str] = None,
        example: Optional[str] = None,
        a: int = 1,
    ) -> CommandResult:
        if example is not None:
            X = twisted_example(self.tower(), a, example)
        else:
            X, _ = self._isocrystal(b, nu)
        result = newton_point(X, self.cfg)
        log.info(f"[newton] nu = {result.nu} ({result.method}, certified={result.certified})")
        return CommandResult(self._newton_report(result), 0 if result.certified else 3)

    def _witness(self, arg: str):
        doc = codec.parse_doc(WitnessDoc, arg)
        X, form = codec.isocrystal_from_doc(doc.isocrystal)
        M = codec.lattice_from_doc(doc.lattice)
        tower = common_tower(X.tower, M.tower)
        return M.embed(tower), X.embed(tower), form

    def hodge(self, witness: str) -> CommandResult:
        M, X, _ = self._witness(witness)
        mu = hodge_point(M, X)
        notes = [f"basis exponents {list(M.exponents)}", f"inv(M, FM) = {mu}"]
        return CommandResult(HodgeReport(mu=mu.to_strings(), polygon=_polygon(mu), transcript=self._notes(notes)))

    def mazur(
        self,
        witness: Optional[str] = None,
        b: Optional[str] = None,
        nu: Optional[str] = None,
        mu: Optional[str] = None,
        group: str = "gl",
    ) -> CommandResult:
        """witness 가 있으면 ν̄ ≤ μ(M) 확인, 아니면 [b] ∈ B(G, μ) 판정"""
        group = _group(group)
        if witness is not None:
            M, X, _ = self._witness(witness)
            report = mazur_check(M, X, self.cfg)
            model = MazurReportModel(
                newton=self._newton_report(report.newton),
                hodge=report.hodge.to_strings(),
                verdict=report.verdict,
                kappa_ok=report.kappa_ok,
                newton_polygon=_polygon(report.newton.nu),
                hodge_polygon=_polygon(report.hodge),
            )
            return CommandResult(model, 0 if report.verdict and report.kappa_ok else 1)

        if mu is None:
            raise InvalidInputError("mazur needs --input or --mu")
        X, _ = self._isocrystal(b, nu, group)
        target = codec.parse_coweight(mu)
        verdict = in_b_g_mu(X, target, group, self.cfg)
        newton = newton_point(X, self.cfg)
        model = BGMuReport(
            mu=target.to_strings(), nu=newton.nu.to_strings(), group=group,
            verdict=verdict, certified=newton.certified,
        )
        if verdict is None:
            return CommandResult(model, 3)
        return CommandResult(model, 0 if verdict else 1)

    # ── construct ──

    def construct(self, nu: str, mu: str, group: str = "gl") -> CommandResult:
        group = _group(group)
        build = construct_lattice_gsp if group == "gsp" else construct_lattice
        w = build(self.tower(), codec.parse_coweight(nu), codec.parse_coweight(mu), self.cfg)
        report = WitnessReport(
            isocrystal=codec.isocrystal_to_doc(w.isocrystal, w.form),
            lattice=codec.lattice_to_doc(w.lattice),
            mu=w.mu.to_strings(),
            method=w.method,
            field_degree=w.field_degree,
            transcript=self._notes(w.transcript),
        )
        log.info(f"[construct] witness for mu={w.mu} by {w.method} over F_q^{w.field_degree}")
        return CommandResult(report)

    # ── 사슬 ──

    def _chain_report(self, chain, X, form, r: int, steps) -> ChainReport:
        return ChainReport(
            isocrystal=codec.isocrystal_to_doc(X, form),
            chain=codec.chain_to_doc(chain),
            r=r,
            steps=[s.as_dict() for s in steps] if self.transcript else [],
        )

    def chain_build(
        self,
        r: int,
        types: str,
        b: Optional[str] = None,
        nu: Optional[str] = None,
        group: str = "gl",
    ) -> CommandResult:
        group = _group(group)
        X, form = self._isocrystal(b, nu, group)
        result = build_chain(X, r, codec.parse_ints(types), form, self.cfg)
        if isinstance(result, EmptyChain):
            log.info(f"[chains] empty: {result.reason}")
            return CommandResult(EmptyResult(reason=result.reason, detail={"nu": result.nu.to_strings(), "r": r}), 1)
        return CommandResult(self._chain_report(result.chain, result.isocrystal, result.form, r, result.steps))

    def _chain_input(self, arg: str, group: str):
        doc = codec.parse_doc(ChainInputDoc, arg)
        X, form = codec.isocrystal_from_doc(doc.isocrystal)
        tower = common_tower(X.tower, codec.tower_from_doc(doc.chain.base))
        X = X.embed(tower)
        chain = codec.chain_from_doc(doc.chain, tower)
        if group == "gsp":
            form = form or SymplecticForm.standard(tower, X.n // 2)
            form = form.embed(tower) if form.tower is not tower else form
        else:
            form = None
        return X, form, chain, doc.r

    def chain_extend(self, arg: str, types: str, group: str = "gl") -> CommandResult:
        X, form, chain, r = self._chain_input(arg, _group(group))
        ext = extend_chain(chain, X, r, codec.parse_ints(types), form, self.cfg)
        return CommandResult(self._chain_report(ext.chain, ext.isocrystal, ext.form, r, ext.steps))

    def chain_check(self, arg: str, group: str = "gl") -> CommandResult:
        X, form, chain, r = self._chain_input(arg, _group(group))
        member = chain_membership(chain, X, r, form)
        report = MembershipReport(member=member, type=list(chain.type), r=r, defect=chain.defect)
        return CommandResult(report, 0 if member else 1)

    # ── 원형 도표 ──

    def incidence(self, arg: str, check: bool = False) -> CommandResult:
        doc = codec.parse_doc(DiagramDoc, arg)
        diagram = codec.diagram_from_doc(doc)
        ranks = validate(diagram)
        log.debug(f"[incidence] rank profile {list(ranks)}")
        if check:
            if doc.lines is None:
                raise InvalidInputError("--check needs a 'lines' array in the diagram document")
            failing = verify_lines(diagram, codec.lines_from_doc(diagram.tower, doc.lines))
            return CommandResult(IncidenceCheckReport(valid=failing is None, failing_index=failing), 0 if failing is None else 1)

        solution = solve_lines(diagram, self.cfg)
        report = SolutionReport(
            lines=codec.lines_to_doc(solution.tower, solution.lines),
            field_degree=solution.field_degree,
            base=codec.tower_to_doc(solution.tower).model_dump(),
            transcript=self._notes(solution.transcript),
        )
        return CommandResult(report)

    # ── 아핀 Weyl ──

    def adm(
        self, mu: str, group: str = "gl", types: Optional[str] = None, compare: bool = False
    ) -> CommandResult:
        group = _group(group)
        target = codec.parse_coweight(mu)
        parahoric = codec.parse_ints(types)
        result = adm_set(target, group, parahoric)
        ordered = sorted(result.elements, key=lambda x: (x.translation, x.permutation))
        report = AdmReport(
            mu=target.to_strings(),
            group=group,
            types=list(result.types) if result.types is not None else None,
            count=len(result),
            elements=[WeylElementDoc.model_validate(x.as_dict()) for x in ordered],
            flagged=result.flagged,
            notes=list(result.notes),
        )
        if compare:
            if parahoric is None:
                raise InvalidInputError("--compare needs --type")
            perm = perm_set(target, group, parahoric, self.tower())
            realised = realised_double_cosets(target, group, parahoric, self.tower())
            report.permissible_count = len(perm)
            report.realised_count = len(realised)
            report.adm_equals_perm = perm == result.elements
            report.adm_equals_realised = realised == result.elements
        log.info(f"[weyl] |Adm({target})| = {len(result)} for {group}")
        return CommandResult(report)

    # ── Hodge 집합 열거 ──

    def enumerate(self, b: Optional[str] = None, nu: Optional[str] = None) -> CommandResult:
        X, _ = self._isocrystal(b, nu)
        slopes = codec.parse_coweight(nu) if nu is not None else newton_point(X, self.cfg).nu
        cmp = compare_hodge_sets(X, slopes, self.cfg.window)

        def rows(items) -> list[list[str]]:
            return sorted((c.to_strings() for c in items), key=lambda v: [Fraction(x) for x in v])

        report = HodgeSetReport(
            nu=slopes.to_strings(),
            window=self.cfg.window,
            observed=rows(cmp.observed),
            predicted=rows(cmp.predicted),
            missing=rows(cmp.missing),
            unexpected=rows(cmp.unexpected),
            agrees=cmp.agrees,
        )
        return CommandResult(report, 0 if cmp.agrees else 1)

    # ── 스칼라 제한 ──

    def graded_witness(
        self,
        mu: str,
        f: Optional[int] = None,
        b: Optional[str] = None,
        nu: Optional[str] = None,
        group: str = "gl",
    ) -> CommandResult:
        group = _group(group)
        X, form = self._graded_isocrystal(b, nu, f, group)
        target = GradedCoweight.of(codec.parse_graded_coweight(mu))
        w = witness_graded(target, X, group, form, self.cfg)
        if isinstance(w, EmptyGraded):
            detail = {"nu": w.nu.to_strings(), "mu_total": w.mu_total.to_strings()}
            return CommandResult(EmptyResult(reason=w.reason, detail=detail), 1)
        report = GradedWitnessReport(
            isocrystal=codec.graded_isocrystal_to_doc(w.isocrystal, w.form),
            lattice=codec.graded_lattice_to_doc(w.lattice),
            mu=[p.to_strings() for p in w.mu.parts],
            chain=[codec.matrix_to_doc(M.basis) for M in w.chain],
            method=w.method,
            field_degree=w.field_degree,
            transcript=self._notes(w.transcript),
        )
        return CommandResult(report)

    def graded_chain(
        self,
        r: str,
        types: str,
        f: Optional[int] = None,
        b: Optional[str] = None,
        nu: Optional[str] = None,
        group: str = "gl",
    ) -> CommandResult:
        group = _group(group)
        X, form = self._graded_isocrystal(b, nu, f, group)
        ranks = codec.parse_ints(r)
        result = build_graded_chain(X, ranks, codec.parse_ints(types), form, self.cfg)
        if isinstance(result, EmptyGraded):
            detail = {"nu": result.nu.to_strings(), "mu_total": result.mu_total.to_strings()}
            return CommandResult(EmptyResult(reason=result.reason, detail=detail), 1)
        report = GradedChainReport(
            isocrystal=codec.graded_isocrystal_to_doc(result.isocrystal, result.form),
            chain=codec.graded_chain_to_doc(result.chain),
            r=ranks,
            steps=[s.as_dict() for s in result.steps] if self.transcript else [],
        )
        return CommandResult(report)

    def graded_chain_check(self, arg: str, group: str = "gl") -> CommandResult:
        group = _group(group)
        doc = codec.parse_doc(GradedChainInputDoc, arg)
        X, form = codec.graded_isocrystal_from_doc(doc.isocrystal)
        tower = common_tower(X.tower, codec.tower_from_doc(doc.chain.base))
        X = X.embed(tower)
        GC = codec.graded_chain_from_doc(doc.chain, tower)
        if group == "gsp":
            form = form or SymplecticForm.standard(tower, X.n // 2)
            form = form.embed(tower) if form.tower is not tower else form
        else:
            form = None
        member = graded_chain_membership(GC, X, doc.r, form)
        report = MembershipReport(member=member, type=list(GC.type), r=doc.r)
        return CommandResult(report, 0 if member else 1)


