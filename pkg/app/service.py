"""
Stability service
Resolves types, caches per-type data and turns domain results into response models
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Union

from app.charge import is_nondegenerate
from app.config import settings
from app.derive import (
    FROZEN_READING,
    derive_region,
    polytope_equivalent,
    readings_report,
    redundancy_report,
)
from app.exceptions import InvalidDatum
from app.forms import Inequality, variable_name
from app.models import (
    DeriveReportModel,
    FlowResponse,
    FlowStepModel,
    HeartClassModel,
    InequalityModel,
    MembershipReportModel,
    SampleResponse,
    TsdDocument,
    TypeInfo,
    TypeListResponse,
    ViolationModel,
)
from app.oracle import condition_star
from app.quiver_core import (
    CoxeterData,
    StarQuiver,
    WeightData,
    classify_weights,
    coxeter_for,
    parse_type_tag,
    section_quiver,
    shipped_types,
)
from app.rationals import format_rational
from app.region import MembershipReport, check_membership, classify_heart, contraction_flow, listed_system
from app.sampling import sample_documents

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TypeContext:
    """Everything computed once per Euclidean type"""

    weights: WeightData
    section: StarQuiver
    cox: CoxeterData


class StabilityService:
    """Orchestrates the stability computations for the CLI and the HTTP API"""

    def __init__(self):
        """Initialize the service with an empty type cache"""
        self.contexts: Dict[WeightData, TypeContext] = {}
        self.derive_cache: Dict[tuple, DeriveReportModel] = {}

    def resolve(self, spec: Union[str, Sequence[int], WeightData]) -> WeightData:
        """Type tag, weight tuple or WeightData -> WeightData"""
        if isinstance(spec, WeightData):
            return spec
        if isinstance(spec, str):
            return parse_type_tag(spec)
        return classify_weights(list(spec))

    def context(self, spec) -> TypeContext:
        """
        Cached section and Coxeter data of a type

        Args:
            spec: type tag, weight tuple or WeightData

        Returns:
            TypeContext, built and logged on first use
        """
        w = self.resolve(spec)
        ctx = self.contexts.get(w)
        if ctx is None:
            section = section_quiver(w)
            ctx = TypeContext(weights=w, section=section, cox=coxeter_for(w))
            self.contexts[w] = ctx
            logger.info(f"✓ Type {w.tag} ready: rank {ctx.cox.rank}, period {ctx.cox.period}, kappa {ctx.cox.kappa}")
        return ctx

    def is_type_cached(self, tag: str) -> bool:
        """Check whether a type's Coxeter data is in memory"""
        try:
            return self.resolve(tag) in self.contexts
        except ValueError:
            return False

    # ------------------------------------------------------------------
    # Membership
    # ------------------------------------------------------------------

    def _report_model(self, report: MembershipReport, w: WeightData) -> MembershipReportModel:
        return MembershipReportModel(
            type=w.euclidean_type,
            member=report.member,
            nondegenerate=report.nondegenerate,
            violations=[
                ViolationModel(
                    id=v.id,
                    indices={k: val for k, val in v.indices},
                    lhs=format_rational(v.lhs),
                    rhs=format_rational(v.rhs),
                )
                for v in report.violations
            ],
            checked=report.checked,
            source=report.source,
        )

    def check(self, document: TsdDocument) -> MembershipReportModel:
        """
        Closed-form membership of a datum.

        Args:
            document: validated datum

        Returns:
            MembershipReportModel with every failed inequality
        """
        tsd = document.to_tsd()
        ctx = self.context(tsd.weights)
        report = check_membership(tsd, ctx.cox, ctx.section)
        logger.info(f"check {tsd.weights.tag}: member={report.member}, {len(report.violations)} violations")
        return self._report_model(report, tsd.weights)

    def oracle(self, document: TsdDocument, periods: Optional[int] = None) -> MembershipReportModel:
        """Phase monotonicity along the mesh window"""
        tsd = document.to_tsd()
        ctx = self.context(tsd.weights)
        periods = periods if periods is not None else settings.oracle_periods
        report = condition_star(tsd, ctx.cox, ctx.section, periods)
        logger.info(f"oracle {tsd.weights.tag} ({periods} periods): pass={report.member}")
        return self._report_model(report, tsd.weights)

    def heart(self, document: TsdDocument) -> HeartClassModel:
        """
        Classify the heart of a member datum

        Args:
            document: validated datum

        Returns:
            HeartClassModel, with the cut and its quiver when concentrated
        """
        tsd = document.to_tsd()
        ctx = self.context(tsd.weights)
        result = classify_heart(tsd, ctx.cox, ctx.section)
        quiver = result.quiver
        return HeartClassModel(
            type=tsd.weights.euclidean_type,
            kind=result.kind.value,
            cut=result.cut,
            quiver_vertices=list(quiver.vertices) if quiver else None,
            quiver_arrows=[list(a) for a in quiver.arrows] if quiver else None,
        )

    # ------------------------------------------------------------------
    # Derivation
    # ------------------------------------------------------------------

    def _inequality_model(self, ineq: Inequality, w: WeightData) -> InequalityModel:
        form = ineq.form.normalized()
        return InequalityModel(
            id=ineq.provenance,
            coefficients=[int(c) for c in form.vector(w.variables())],
            constant=int(form.constant),
            strict=ineq.strict,
            text=ineq.pretty(w),
        )

    def derive(self, spec, redundancy: bool = False) -> DeriveReportModel:
        """
        Derived and listed systems of a type and whether they agree.

        Args:
            spec: type tag or weights
            redundancy: also report listed inequalities implied by the rest
        """
        ctx = self.context(spec)
        w = ctx.weights
        key = (w, redundancy)
        if key in self.derive_cache:
            return self.derive_cache[key]

        derived = derive_region(w)
        listed = list(listed_system(w))
        verdict = polytope_equivalent(derived, listed, w)
        readings = {FROZEN_READING: verdict.equivalent}
        readings.update(readings_report(w, derived, skip=(FROZEN_READING,)))
        witness = verdict.witness
        report = DeriveReportModel(
            type=w.euclidean_type,
            variables=[variable_name(v, w) for v in w.variables()],
            derived=[self._inequality_model(i, w) for i in derived],
            listed=[self._inequality_model(i, w) for i in listed],
            equivalent=verdict.equivalent,
            reading=FROZEN_READING,
            readings=readings,
            not_implied=verdict.a_in_b.not_implied + verdict.b_in_a.not_implied,
            witness={variable_name(v, w): format_rational(x) for v, x in witness.items()} if witness else None,
            redundant_listed=redundancy_report(listed, w) if redundancy else None,
        )
        logger.info(f"derive {w.tag}: {len(derived)} derived, {len(listed)} listed, equivalent={verdict.equivalent}")
        self.derive_cache[key] = report
        return report

    # ------------------------------------------------------------------
    # Flow and sampling
    # ------------------------------------------------------------------

    def flow(self, start: TsdDocument, end: TsdDocument, steps: Optional[int] = None) -> FlowResponse:
        """Sample the contraction flow at t = 0, 1/steps, ..., 1"""
        steps = steps or settings.flow_steps
        if steps < 1 or steps > settings.max_flow_steps:
            raise InvalidDatum(f"steps must lie in 1..{settings.max_flow_steps}, got {steps}")
        tsd0, tsd1 = start.to_tsd(), end.to_tsd()
        ctx = self.context(tsd0.weights)
        points: List[FlowStepModel] = []
        for n in range(steps + 1):
            t = Fraction(n, steps)
            tsd = contraction_flow(tsd0, tsd1, t)
            report = check_membership(tsd, ctx.cox, ctx.section)
            points.append(FlowStepModel(
                t=format_rational(t),
                datum=TsdDocument.from_tsd(tsd),
                member=report.member,
                nondegenerate=is_nondegenerate(tsd, ctx.cox, ctx.section),
            ))
        return FlowResponse(type=tsd0.weights.euclidean_type, steps=points)

    def sample(
        self,
        spec,
        count: Optional[int] = None,
        seed: Optional[int] = None,
        on_boundary: bool = False,
        real: bool = False,
        members: bool = False,
    ) -> SampleResponse:
        """
        Seeded random documents of one type

        Args:
            spec: type tag or weights
            count: number of documents, settings default when None
            seed: generator seed, settings default when None
            on_boundary: each datum tight on exactly one listed inequality
            real: Im z = 0 with a non-degenerate Re z
            members: only members of the region
        """
        ctx = self.context(spec)
        count = count if count is not None else settings.sample_count
        seed = seed if seed is not None else settings.sample_seed
        if count < 0 or count > settings.max_sample_count:
            raise InvalidDatum(f"count must lie in 0..{settings.max_sample_count}, got {count}")
        data = sample_documents(ctx.weights, count, seed, on_boundary=on_boundary, real=real, members=members)
        return SampleResponse(
            type=ctx.weights.euclidean_type,
            seed=seed,
            count=len(data),
            documents=[TsdDocument.from_tsd(t) for t in data],
        )

    # ------------------------------------------------------------------
    # Types
    # ------------------------------------------------------------------

    def type_info(self, spec) -> TypeInfo:
        """Rank, period, kappa, delta and rank functional of a type"""
        ctx = self.context(spec)
        w, cox = ctx.weights, ctx.cox
        return TypeInfo(
            tag=w.tag,
            euclidean_type=w.euclidean_type,
            weights=list(w.weights),
            rank=cox.rank,
            period=cox.period,
            kappa=cox.kappa,
            delta=list(cox.delta.coords),
            rank_functional=[format_rational(x) for x in cox.rank_functional],
            section=list(ctx.section.vertices),
        )

    def list_types(self) -> TypeListResponse:
        types = [self.type_info(w) for w in shipped_types()]
        return TypeListResponse(types=types, count=len(types))


# Global service instance
service = StabilityService()
