"""
Braid Service Layer.

Ties the library modules to the management commands: reads configuration,
owns the seed, and runs the verification suites.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from src.braids.algebra.braid_core import (
    compose,
    compose_all,
    half_twist,
    invert,
    permutation_of,
    power,
    random_pure_word,
    random_word,
    twist,
)
from src.braids.algebra.ds3 import (
    Ds3Form,
    PRIMARY_FORMS,
    commutator_rule_holds,
    ds3_words,
    matches_form,
    reassemble,
    rewrite_mod_ds,
)
from src.braids.algebra.group_ring import (
    IdealExpansion,
    RingElement,
    augmentation_product,
    expand_commutator,
    expand_ideal_form,
    resolve,
    resolve_combination,
    to_double_points,
    to_ideal_form,
)
from src.braids.algebra.relators import ReductionTrace, reduce_relator, replay_trace
from src.braids.algebra.subgroup_series import (
    certified_level,
    certify,
    ds_sample,
    evaluate,
    lcs_sample,
    seeded_rng,
)
from src.braids.algebra.word_problem import equal, normal_form
from src.braids.exceptions import BraidError
from src.braids.identities.registry import run_identity_suite, verify_identity
from src.braids.knots.alternating import FamilyMember, family_members, is_alternating
from src.braids.knots.closure_link import (
    close,
    connected_sum,
    link_profile,
    markov,
    phi_word,
)
from src.braids.knots.equivalence import join_moves, lcs_inverse, markov_join, slide, stabilized
from src.braids.knots.invariants import (
    Battery,
    FiniteTypeProbe,
    alexander_conway,
    battery,
    determinant,
    finite_type_probe,
    jones_of_word,
)
from src.braids.knots.oracles import crossing_matrix_alexander, state_sum_jones
from src.braids.models.codecs import parse_expr
from src.braids.models.schemas import (
    BraidWord,
    BraidsBaseModel,
    CertifiedElement,
    Diagram,
    DsRewrite,
    EquivalenceWitness,
    IdealFactorization,
    IdentityReport,
    MarkovStep,
    NormalForm,
    Permutation,
    Relator,
    Series,
    SignedSingularWord,
    SingularBraidWord,
    StabilizationData,
)
from src.braids.services.config import BraidsConfig


logger = logging.getLogger("braids.services")


TREFOIL = BraidWord.of(2, (1, 1, 1))
FIGURE_EIGHT = BraidWord.of(3, (1, -2, 1, -2))

SUITES = ("identities", "pinning", "acceptance-lite")


class CheckResult(BraidsBaseModel):
    """One named check of a suite."""

    name: str
    verdict: bool
    detail: str = ""


class SuiteReport(BraidsBaseModel):
    suite: str
    seed: int
    checks: Tuple[CheckResult, ...] = ()

    @property
    def passed(self) -> bool:
        return all(check.verdict for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.verdict]


class BraidService:
    """
    Main service for braid and knot operations.

    Usage:
        service = BraidService(seed=3)
        witnesses = service.slide(service.certified("(c (w 3 1 1) (w 3 2 2))"), y)
        report = service.run_suite("pinning")
    """

    def __init__(self, config: Optional[BraidsConfig] = None, seed: Optional[int] = None):
        self.config = config or BraidsConfig.from_settings()
        self.seed = self.config.default_seed if seed is None else seed

    # ================================================================
    # WORDS
    # ================================================================

    def normalize(self, w: BraidWord) -> NormalForm:
        return normal_form(w)

    def equal(self, u: BraidWord, v: BraidWord) -> bool:
        return equal(u, v)

    def permutation(self, w: BraidWord) -> Permutation:
        return permutation_of(w)

    def certified(self, text: str, series: Series = Series.LCS) -> CertifiedElement:
        """A certificate s-expression checked at the highest level it proves."""
        expr = parse_expr(text)
        return certify(evaluate(expr), series, certified_level(expr, series), expr)

    # ================================================================
    # CLOSURES
    # ================================================================

    def close(self, b: BraidWord) -> Diagram:
        return close(b)

    def invariants(self, b: BraidWord) -> Tuple[Battery, Optional[FiniteTypeProbe]]:
        result = battery(b)
        probe = finite_type_probe(b) if result.components == 1 else None
        return result, probe

    def connect_sum(self, x: BraidWord, y: BraidWord) -> BraidWord:
        return connected_sum(x, y)

    def phi(self, p: BraidWord) -> Tuple[BraidWord, Diagram]:
        word = phi_word(p)
        return word, close(word)

    def markov(self, b: BraidWord, moves: Sequence[MarkovStep]) -> BraidWord:
        for move in moves:
            b = markov(b, move)
        return b

    def join(
        self, b: BraidWord, c1: StabilizationData, c2: StabilizationData
    ) -> Tuple[BraidWord, List[MarkovStep], List[MarkovStep]]:
        first, second = join_moves(b, c1, c2)
        return markov_join(b, c1, c2), first, second

    def slide(self, x: CertifiedElement, y: BraidWord) -> List[EquivalenceWitness]:
        return slide(x, y)

    def inverse(self, b: BraidWord, n: int) -> BraidWord:
        return lcs_inverse(b, n)

    # ================================================================
    # SERIES
    # ================================================================

    def sample(self, k: int, n: int, series: Series = Series.LCS) -> CertifiedElement:
        if Series(series) == Series.DS:
            return ds_sample(k, n, self.seed)
        return lcs_sample(k, n, self.seed)

    def ds3_words(self, n: int) -> Dict[Ds3Form, CertifiedElement]:
        return ds3_words(n, self.config.base_bound)

    def rewrite_ds(self, x: BraidWord, n: int) -> DsRewrite:
        return rewrite_mod_ds(x, n, self.config.base_bound)

    def alternate(self, b: BraidWord, n: int, count: int) -> List[FamilyMember]:
        return family_members(
            b, n, count,
            base_bound=self.config.base_bound,
            rounds=self.config.family_primality_rounds,
        )

    # ================================================================
    # GROUP RING
    # ================================================================

    def resolve(self, s: SingularBraidWord) -> RingElement:
        return resolve(s)

    def ideal_form(self, s: SingularBraidWord) -> IdealFactorization:
        return to_ideal_form(s)

    def double_points(self, xs: Sequence[Union[BraidWord, CertifiedElement]], tail: Optional[BraidWord] = None) -> List[SignedSingularWord]:
        return to_double_points(xs, tail, self.config.descent_step_factor)

    def expand(self, x: CertifiedElement) -> IdealExpansion:
        return expand_commutator(x)

    def reduce_relator(self, r: Relator, n: int) -> ReductionTrace:
        return reduce_relator(r, n, self.config.max_reduction_steps)

    def replay(self, trace: ReductionTrace) -> bool:
        return replay_trace(trace)

    # ================================================================
    # VERIFICATION
    # ================================================================

    def verify_identity(self, identity_id: str) -> IdentityReport:
        return verify_identity(identity_id, seed=self.seed)

    def run_suite(self, suite: str, count: int = 3) -> SuiteReport:
        runners: Dict[str, Callable[[int], List[CheckResult]]] = {
            "identities": self._identity_checks,
            "pinning": self._pinning_checks,
            "acceptance-lite": self._acceptance_checks,
        }
        runner = runners.get(suite)
        if runner is None:
            raise BraidError(
                "PRECONDITION_FAILED",
                f"Unknown suite: {suite}. Supported: {', '.join(SUITES)}",
                {"suite": suite},
            )
        checks = runner(count)
        report = SuiteReport(suite=suite, seed=self.seed, checks=tuple(checks))
        if report.passed:
            logger.info(f"Suite {suite}: {len(checks)} checks passed")
        else:
            logger.warning(f"Suite {suite}: {len(report.failures)} of {len(checks)} checks failed")
        return report

    def _identity_checks(self, count: int) -> List[CheckResult]:
        return [
            CheckResult(
                name=report.identity_id,
                verdict=report.verdict,
                detail=" ".join(f"{key}={value}" for key, value in sorted(report.parameters.items())),
            )
            for report in run_identity_suite(self.seed, count)
        ]

    def _pinning_checks(self, count: int) -> List[CheckResult]:
        checks = []
        for name, word, conway in (("trefoil", TREFOIL, (1, 0, 1)), ("figure-eight", FIGURE_EIGHT, (1, 0, -1))):
            diagram = close(word)
            jones = jones_of_word(word)
            alexander, found = alexander_conway(word)
            checks.append(CheckResult(
                name=f"{name}-jones-state-sum",
                verdict=jones == state_sum_jones(diagram, self.config.state_sum_max_crossings),
                detail=jones.text,
            ))
            checks.append(CheckResult(
                name=f"{name}-alexander-crossing-matrix",
                verdict=alexander == crossing_matrix_alexander(diagram),
                detail=alexander.text,
            ))
            checks.append(CheckResult(
                name=f"{name}-conway",
                verdict=tuple(found) == conway,
                detail=" ".join(str(c) for c in found),
            ))
        value = determinant(TREFOIL)
        checks.append(CheckResult(name="trefoil-determinant", verdict=value == 3, detail=str(value)))
        return checks

    # ================================================================
    # ACCEPTANCE (desk-scale counts)
    # ================================================================

    def _acceptance_checks(self, count: int) -> List[CheckResult]:
        checks = self._pinning_checks(count)
        for section in (
            self._word_problem_checks,
            self._ds3_checks,
            self._rewrite_checks,
            self._lcs_equivalence_checks,
            self._connected_sum_checks,
            self._join_checks,
            self._phi_additivity_checks,
            self._linking_checks,
            self._ring_checks,
            self._relator_checks,
        ):
            checks.extend(section(count))
        return checks

    def _word_problem_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 10)
        checks = []
        for trial in range(count):
            k = int(rng.integers(3, 6))
            w = random_word(rng, k, int(rng.integers(4, 17)))
            i = int(rng.integers(1, k - 1))
            position = int(rng.integers(0, w.length + 1))
            # σ_i σ_{i+1} σ_i (σ_{i+1} σ_i σ_{i+1})^{-1} and a cancelling pair
            relation = (i, i + 1, i, -(i + 1), -i, -(i + 1), k - 1, -(k - 1))
            mutated = BraidWord.of(k, w.letters[:position] + relation + w.letters[position:])
            checks.append(CheckResult(name=f"word-problem-equal-{trial}", verdict=equal(w, mutated), detail=mutated.text))
            shifted = compose(w, BraidWord.of(k, (1,)))
            checks.append(CheckResult(name=f"word-problem-unequal-{trial}", verdict=not equal(w, shifted), detail=shifted.text))
        return checks

    def _ds3_checks(self, count: int) -> List[CheckResult]:
        checks = []
        for n in (1, 2):
            words = self.ds3_words(n)
            produced = all(form in words and matches_form(words[form].word, form) for form in PRIMARY_FORMS)
            checks.append(CheckResult(name=f"ds3-forms-{n}", verdict=produced, detail=f"{len(words)} forms"))
        for d_form in (Ds3Form.AWAD, Ds3Form.AWBD, Ds3Form.BWAD, Ds3Form.BWBD):
            checks.append(CheckResult(
                name=f"ds3-commutator-{Ds3Form(d_form).value}",
                verdict=commutator_rule_holds(1, d_form, self.config.base_bound),
            ))
        delta = half_twist(3)
        square = power(delta, 2)
        d = BraidWord.of(3, (2, 1, 2))
        for letter, partner in ((1, 2), (2, 1)):
            x = BraidWord.of(3, (letter,))
            checks.append(CheckResult(
                name=f"half-twist-center-{letter}",
                verdict=equal(compose_all(invert(d), x, d), BraidWord.of(3, (partner,)))
                and equal(compose(square, x), compose(x, square)),
            ))
        return checks

    def _rewrite_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 11)
        checks = []
        for trial in range(count):
            x = random_word(rng, 3, int(rng.integers(1, 13)))
            rewrite = self.rewrite_ds(x, 2)
            alphabet = set(rewrite.word.letters) <= {1, -2}
            reassembled = equal(reassemble(x, rewrite.insertions), rewrite.word)
            checks.append(CheckResult(name=f"rewrite-ds-{trial}", verdict=alphabet and reassembled, detail=x.text))
        return checks

    def _lcs_equivalence_checks(self, count: int) -> List[CheckResult]:
        checks = []
        for n in (3, 4):
            rng = seeded_rng(self.seed, 12, n)
            for trial in range(count):
                b = compose(random_pure_word(rng, 4, 2), twist(4))
                p = lcs_sample(4, n, self.seed + trial)
                before, after = finite_type_probe(b), finite_type_probe(compose(p.word, b))
                if n == 3:
                    verdict = (before.w2, before.a2) == (after.w2, after.a2)
                else:
                    verdict = (before.w2, before.w3, before.a2, before.a3) == (after.w2, after.w3, after.a2, after.a3)
                checks.append(CheckResult(name=f"lcs{n}-equivalence-{trial}", verdict=verdict, detail=b.text))
        return checks

    def _connected_sum_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 13)
        checks = []
        for trial in range(count):
            x, y = random_pure_word(rng, 3, 1), random_pure_word(rng, 3, 1)
            total = connected_sum(x, y)
            left, right = phi_word(x), phi_word(y)
            jones = jones_of_word(total) == jones_of_word(left) * jones_of_word(right)
            probes = finite_type_probe(total), finite_type_probe(left), finite_type_probe(right)
            additive = probes[0].w2 == probes[1].w2 + probes[2].w2 and probes[0].w3 == probes[1].w3 + probes[2].w3
            checks.append(CheckResult(name=f"connected-sum-{trial}", verdict=jones and additive, detail=total.text))
        return checks

    def _join_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 14)
        checks = []
        for trial in range(count):
            b = compose(random_pure_word(rng, 3, 1), twist(3))
            c1 = StabilizationData(alpha=random_word(rng, 3, 3), sign=int(rng.choice([-1, 1])))
            c2 = StabilizationData(alpha=random_word(rng, 3, 3), sign=int(rng.choice([-1, 1])))
            batteries = [battery(w) for w in (markov_join(b, c1, c2), stabilized(b, c1), stabilized(b, c2))]
            checks.append(CheckResult(
                name=f"markov-join-{trial}",
                verdict=batteries[0] == batteries[1] == batteries[2],
                detail=b.text,
            ))
        return checks

    def _phi_additivity_checks(self, count: int) -> List[CheckResult]:
        checks = []
        for trial in range(count):
            x = lcs_sample(3, 2, self.seed + 2 * trial)
            y = lcs_sample(3, 2, self.seed + 2 * trial + 1)
            w2 = [finite_type_probe(phi_word(p)).w2 for p in (compose(x.word, y.word), x.word, y.word)]
            checks.append(CheckResult(name=f"phi-additive-{trial}", verdict=w2[0] == w2[1] + w2[2], detail=str(w2[0])))
        return checks

    def _linking_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 15)
        checks = []
        for trial in range(count):
            # odd trials merge strands 1 and 2 into one component
            b = random_pure_word(rng, 3, 2)
            if trial % 2:
                b = compose(b, BraidWord.of(3, (1,)))
            h = ds_sample(3, 2, self.seed + trial)
            before, after = link_profile(b), link_profile(compose(h.word, b))
            checks.append(CheckResult(name=f"linking-{trial}", verdict=before == after, detail=b.text))
        return checks

    def _ring_checks(self, count: int) -> List[CheckResult]:
        rng = seeded_rng(self.seed, 16)
        checks = []
        for trial in range(count):
            letters = tuple(
                (int(rng.integers(1, 3)), int(rng.choice([-1, 0, 1])))
                for _ in range(int(rng.integers(1, 5)))
            )
            s = SingularBraidWord(strands=3, letters=letters)
            checks.append(CheckResult(
                name=f"ideal-form-{trial}",
                verdict=resolve(s) == expand_ideal_form(to_ideal_form(s)),
                detail=s.text,
            ))
            xs = [random_pure_word(rng, 3, 1)]
            checks.append(CheckResult(
                name=f"double-points-{trial}",
                verdict=resolve_combination(self.double_points(xs)) == augmentation_product(xs),
                detail=xs[0].text,
            ))
        x = lcs_sample(3, 3, self.seed)
        checks.append(CheckResult(
            name="double-points-certified",
            verdict=resolve_combination(self.double_points([x])) == augmentation_product([x.word]),
            detail=x.word.text,
        ))
        expansion = expand_commutator(x)
        checks.append(CheckResult(
            name="commutator-expansion",
            verdict=expansion.ring_sum() == augmentation_product([x.word]) and expansion.min_factors >= 3,
            detail=f"{len(expansion.terms)} terms",
        ))
        return checks

    def _relator_checks(self, count: int) -> List[CheckResult]:
        checks = []
        for trial in range(count):
            xs = (lcs_sample(2, 1, self.seed + trial), lcs_sample(2, 1, self.seed + trial + 7))
            r = Relator(strands=2, xs=xs, y=BraidWord.empty(2))
            trace = self.reduce_relator(r, 2)
            checks.append(CheckResult(
                name=f"relator-reduction-{trial}",
                verdict=trace.complete and replay_trace(trace),
                detail=f"{len(trace.steps)} steps",
            ))
        return checks


def alternating_checks(members: Sequence[FamilyMember]) -> List[CheckResult]:
    """Alternation and strictly growing crossing counts along a family."""
    checks = [
        CheckResult(name=f"alternating-{i}", verdict=is_alternating(m.word), detail=m.word.text)
        for i, m in enumerate(members)
    ]
    lengths = [m.word.length for m in members]
    checks.append(CheckResult(
        name="crossings-increase",
        verdict=all(a < b for a, b in zip(lengths, lengths[1:])),
        detail=" ".join(map(str, lengths)),
    ))
    return checks
