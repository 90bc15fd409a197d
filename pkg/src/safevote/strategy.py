"""Strategic-voting machinery: incentives, safety, witnesses, certificates.

Every search here is deterministic: coalitions are enumerated by size and
then lexicographically, profile scans walk the canonical mixed-radix
order, and all emitted witnesses are minimal under that ordering.  For
anonymous rules the subset searches collapse to coalition-size searches;
the two paths are contract-equal and both are kept (`force_subsets=True`
runs the general path on any rule, which the test suite uses as an
oracle).
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from safevote.core import (
    Alternative,
    LinearOrder,
    Profile,
    SafevoteError,
    VoterSet,
    all_orders,
    format_profile,
    switch_votes,
    voters_of_type,
)
from safevote.rules import Rule, profile_space_size, all_profiles


class NoIncentiveError(SafevoteError):
    """Safety classification was asked about a vote with no incentive."""


class InconclusiveError(SafevoteError):
    """A scan hit its profile budget without settling the question."""

    def __init__(self, scanned: int):
        super().__init__(f"scan budget exhausted after {scanned} profiles; result inconclusive")
        self.scanned = scanned


@dataclass(frozen=True)
class IncentiveWitness:
    """Evidence that a voter has an incentive to cast a strategic vote.

    The coalition contains the voter, is of the voter's type, and switching
    all of it to the strategic order improves the outcome in that type's
    shared ranking.
    """

    voter: int
    strategic_order: LinearOrder
    coalition: VoterSet
    outcome_before: Alternative
    outcome_after: Alternative


class SafetyStatus(enum.Enum):
    SAFE = "Safe"
    UNSAFE = "Unsafe"


class UnsafeKind(enum.Enum):
    OVERSHOOT = "Overshoot"
    UNDERSHOOT = "Undershoot"
    OTHER = "Other"


@dataclass(frozen=True)
class SafetyVerdict:
    """Safe, or Unsafe with a witness coalition and a mis-coordination kind.

    For an Unsafe verdict `witness_bad` is a minimal coalition containing
    the voter whose members all individually have the incentive yet whose
    collective switch strictly worsens the outcome.  When a nested
    improving/worsening pair exists the kind is Overshoot (improving set
    strictly inside the worsening one: too many acted) or Undershoot (the
    reverse); Other covers unsafe votes with no nested pair, which only
    non-anonymous rules can produce.
    """

    status: SafetyStatus
    witness_bad: VoterSet | None = None
    kind: UnsafeKind | None = None
    good: VoterSet | None = None
    bad: VoterSet | None = None


CLAIMS = ("GS-manipulable", "SafelyManipulable", "SafePivotal", "Escape", "LInferior")


@dataclass(frozen=True, eq=False)
class Certificate:
    """A replayable record backing one manipulability claim.

    Re-checking a certificate means replaying its sets through rule
    evaluation and the type order's comparisons; `verify_certificate` does
    exactly that and nothing else.
    """

    claim: str
    profile: Profile
    voter: int
    strategic_order: LinearOrder
    sets: Mapping[str, VoterSet] = field(default_factory=dict)
    outcomes: Mapping[str, Alternative] = field(default_factory=dict)
    verified: bool = False
    rule_fingerprint: str = ""

    def __post_init__(self) -> None:
        if self.claim not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim!r}; expected one of {CLAIMS}")

    def to_json_dict(self) -> dict:
        """JSON payload with 1-based voter indices and stable key order."""
        return {
            "claim": self.claim,
            "profile": format_profile(self.profile),
            "voter": self.voter + 1,
            "strategic_order": str(self.strategic_order),
            "sets": {name: [v + 1 for v in sorted(members)] for name, members in sorted(self.sets.items())},
            "outcomes": {name: alt.label for name, alt in sorted(self.outcomes.items())},
            "verified": self.verified,
            "rule_fingerprint": self.rule_fingerprint,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Coalition enumeration
# ---------------------------------------------------------------------------


def _others(members: VoterSet, voter: int) -> list[int]:
    return sorted(members - {voter})


def _prefix_coalition(voter: int, others: Sequence[int], size: int) -> VoterSet:
    """The canonical coalition of the given size containing the voter."""
    return frozenset((voter, *others[: size - 1]))


def _coalitions_with(voter: int, members: VoterSet) -> Iterator[VoterSet]:
    """All coalitions containing the voter, by size then lexicographically."""
    others = _others(members, voter)
    for size in range(1, len(members) + 1):
        for combo in itertools.combinations(others, size - 1):
            yield frozenset((voter, *combo))


def _use_sizes(rule: Rule, force_subsets: bool) -> bool:
    return rule.anonymous and not force_subsets


# ---------------------------------------------------------------------------
# Incentives (Definition: some same-type coalition containing the voter
# improves the outcome in the shared order when all of it votes L)
# ---------------------------------------------------------------------------


def has_incentive(
    rule: Rule,
    profile: Profile,
    voter: int,
    strategic_order: LinearOrder,
    force_subsets: bool = False,
) -> IncentiveWitness | None:
    """A minimal-coalition incentive witness, or None if there is none."""
    type_order = profile.orders[voter]
    if strategic_order == type_order:
        raise ValueError("strategic order must differ from the voter's sincere order")
    members = voters_of_type(profile, type_order)
    sincere = rule.evaluate(profile)
    if _use_sizes(rule, force_subsets):
        others = _others(members, voter)
        for size in range(1, len(members) + 1):
            coalition = _prefix_coalition(voter, others, size)
            outcome = rule.evaluate(switch_votes(profile, coalition, strategic_order))
            if type_order.prefers(outcome, sincere):
                return IncentiveWitness(voter, strategic_order, coalition, sincere, outcome)
        return None
    for coalition in _coalitions_with(voter, members):
        outcome = rule.evaluate(switch_votes(profile, coalition, strategic_order))
        if type_order.prefers(outcome, sincere):
            return IncentiveWitness(voter, strategic_order, coalition, sincere, outcome)
    return None


# ---------------------------------------------------------------------------
# Safety classification
# ---------------------------------------------------------------------------


def _classify_by_sizes(
    rule: Rule,
    profile: Profile,
    voter: int,
    strategic_order: LinearOrder,
    type_order: LinearOrder,
    members: VoterSet,
    sincere: Alternative,
) -> SafetyVerdict:
    others = _others(members, voter)
    outcome_by_size = {}
    for size in range(1, len(members) + 1):
        coalition = _prefix_coalition(voter, others, size)
        outcome_by_size[size] = rule.evaluate(switch_votes(profile, coalition, strategic_order))
    improving = [k for k, out in outcome_by_size.items() if type_order.prefers(out, sincere)]
    worsening = [k for k, out in outcome_by_size.items() if type_order.prefers(sincere, out)]
    if not worsening:
        return SafetyVerdict(SafetyStatus.SAFE)
    witness_bad = _prefix_coalition(voter, others, min(worsening))
    # Prefer Overshoot when both nested-pair kinds exist.
    over = [(kg, kb) for kg in improving for kb in worsening if kg < kb]
    if over:
        kg, kb = min(over)
        return SafetyVerdict(
            SafetyStatus.UNSAFE,
            witness_bad=witness_bad,
            kind=UnsafeKind.OVERSHOOT,
            good=_prefix_coalition(voter, others, kg),
            bad=_prefix_coalition(voter, others, kb),
        )
    under = [(kb, kg) for kb in worsening for kg in improving if kb < kg]
    if under:
        kb, kg = min(under)
        return SafetyVerdict(
            SafetyStatus.UNSAFE,
            witness_bad=witness_bad,
            kind=UnsafeKind.UNDERSHOOT,
            good=_prefix_coalition(voter, others, kg),
            bad=_prefix_coalition(voter, others, kb),
        )
    return SafetyVerdict(SafetyStatus.UNSAFE, witness_bad=witness_bad, kind=UnsafeKind.OTHER)


def _classify_by_subsets(
    rule: Rule,
    profile: Profile,
    voter: int,
    strategic_order: LinearOrder,
    type_order: LinearOrder,
    members: VoterSet,
    sincere: Alternative,
) -> SafetyVerdict:
    # The incentive clause of the unsafe definition is per member, so for
    # non-anonymous rules each coalition member is checked individually.
    incentivized = frozenset(
        v
        for v in members
        if has_incentive(rule, profile, v, strategic_order, force_subsets=True) is not None
    )
    improving: list[VoterSet] = []
    worsening: list[VoterSet] = []
    for coalition in _coalitions_with(voter, members):
        outcome = rule.evaluate(switch_votes(profile, coalition, strategic_order))
        if type_order.prefers(outcome, sincere):
            improving.append(coalition)
        elif type_order.prefers(sincere, outcome) and coalition <= incentivized:
            worsening.append(coalition)
    if not worsening:
        return SafetyVerdict(SafetyStatus.SAFE)
    witness_bad = worsening[0]
    for bad in worsening:
        for good in improving:
            if good < bad:
                return SafetyVerdict(
                    SafetyStatus.UNSAFE,
                    witness_bad=witness_bad,
                    kind=UnsafeKind.OVERSHOOT,
                    good=good,
                    bad=bad,
                )
    for bad in worsening:
        for good in improving:
            if bad < good:
                return SafetyVerdict(
                    SafetyStatus.UNSAFE,
                    witness_bad=witness_bad,
                    kind=UnsafeKind.UNDERSHOOT,
                    good=good,
                    bad=bad,
                )
    return SafetyVerdict(SafetyStatus.UNSAFE, witness_bad=witness_bad, kind=UnsafeKind.OTHER)


def classify_safety(
    rule: Rule,
    profile: Profile,
    voter: int,
    strategic_order: LinearOrder,
    force_subsets: bool = False,
) -> SafetyVerdict:
    """Classify a strategic vote the voter has an incentive to cast.

    Raises NoIncentiveError when the precondition (an incentive exists)
    fails: safety is only defined for actual strategic opportunities.
    """
    if has_incentive(rule, profile, voter, strategic_order, force_subsets) is None:
        raise NoIncentiveError(
            f"voter {voter + 1} has no incentive to vote {strategic_order.compact}"
        )
    type_order = profile.orders[voter]
    members = voters_of_type(profile, type_order)
    sincere = rule.evaluate(profile)
    if _use_sizes(rule, force_subsets):
        return _classify_by_sizes(rule, profile, voter, strategic_order, type_order, members, sincere)
    return _classify_by_subsets(rule, profile, voter, strategic_order, type_order, members, sincere)


def threshold_scan(
    rule: Rule,
    profile: Profile,
    type_order: LinearOrder,
    strategic_order: LinearOrder,
) -> dict[int, Alternative]:
    """Winner as a function of how many voters of one type switch.

    Only meaningful for anonymous rules, where the outcome depends on the
    number of switchers rather than their identities.
    """
    if not rule.anonymous:
        raise SafevoteError("threshold_scan requires an anonymous rule")
    members = sorted(voters_of_type(profile, type_order))
    if not members:
        raise SafevoteError(f"type {type_order.compact} not present in the profile")
    result: dict[int, Alternative] = {}
    for k in range(len(members) + 1):
        switched = switch_votes(profile, frozenset(members[:k]), strategic_order)
        result[k] = rule.evaluate(switched)
    return result


# ---------------------------------------------------------------------------
# Escapes and L-inferior subsets
# ---------------------------------------------------------------------------


def find_escapes(rule: Rule, profile: Profile) -> list[Certificate]:
    """Escape certificates: one per type that ranks the winner last and
    has a member with some strategic incentive."""
    winner = rule.evaluate(profile)
    certificates: list[Certificate] = []
    orders = all_orders(profile.domain)
    for type_order in profile.types_present():
        if type_order.bottom != winner:
            continue
        members = sorted(voters_of_type(profile, type_order))
        voters_to_try = members[:1] if rule.anonymous else members
        witness = None
        for voter in voters_to_try:
            for strategic_order in orders:
                if strategic_order == type_order:
                    continue
                witness = has_incentive(rule, profile, voter, strategic_order)
                if witness is not None:
                    break
            if witness is not None:
                break
        if witness is not None:
            certificates.append(
                Certificate(
                    claim="Escape",
                    profile=profile,
                    voter=witness.voter,
                    strategic_order=witness.strategic_order,
                    sets={"coalition": witness.coalition},
                    outcomes={"before": witness.outcome_before, "after": witness.outcome_after},
                    verified=True,
                    rule_fingerprint=rule.fingerprint(),
                )
            )
    return certificates


def find_L_inferior(
    rule: Rule,
    profile: Profile,
    type_order: LinearOrder,
    strategic_order: LinearOrder,
    force_subsets: bool = False,
) -> list[VoterSet]:
    """Proper subsets of the type class whose partial switch leaves the
    type strictly worse off than the full switch.

    For anonymous rules one canonical subset per qualifying size is
    returned; the general path returns every qualifying subset.
    """
    if strategic_order == type_order:
        raise ValueError("strategic order must differ from the type order")
    members = voters_of_type(profile, type_order)
    if not members:
        raise SafevoteError(f"type {type_order.compact} not present in the profile")
    full_outcome = rule.evaluate(switch_votes(profile, members, strategic_order))
    ordered = sorted(members)
    inferior: list[VoterSet] = []
    if _use_sizes(rule, force_subsets):
        candidates: Iterator[VoterSet] = (frozenset(ordered[:k]) for k in range(len(members)))
    else:
        candidates = (
            frozenset(combo)
            for k in range(len(members))
            for combo in itertools.combinations(ordered, k)
        )
    for subset in candidates:
        partial = rule.evaluate(switch_votes(profile, subset, strategic_order)) if subset else rule.evaluate(profile)
        if type_order.prefers(full_outcome, partial):
            inferior.append(subset)
    return inferior


def construct_safe_from_inferior(
    rule: Rule,
    profile: Profile,
    type_order: LinearOrder,
    strategic_order: LinearOrder,
) -> Certificate | None:
    """Safe-manipulation certificate built from a maximal inferior subset.

    Shifting a maximal inferior subset onto the strategic order leaves the
    remaining type members with a safe incentive to follow; the emitted
    certificate lives at that shifted profile and is re-verified here.
    """
    inferior = find_L_inferior(rule, profile, type_order, strategic_order)
    if not inferior:
        return None
    maximal = [s for s in inferior if not any(s < t for t in inferior)]
    chosen = min(maximal, key=lambda s: (-len(s), sorted(s)))
    members = voters_of_type(profile, type_order)
    shifted = switch_votes(profile, chosen, strategic_order)
    remaining = members - chosen
    voter = min(remaining)
    witness = has_incentive(rule, shifted, voter, strategic_order)
    verified = (
        witness is not None
        and classify_safety(rule, shifted, voter, strategic_order).status == SafetyStatus.SAFE
    )
    return Certificate(
        claim="SafelyManipulable",
        profile=shifted,
        voter=voter,
        strategic_order=strategic_order,
        sets={"coalition": remaining, "inferior": chosen},
        outcomes={
            "before": rule.evaluate(shifted),
            "after": rule.evaluate(switch_votes(shifted, remaining, strategic_order)),
        },
        verified=verified,
        rule_fingerprint=rule.fingerprint(),
    )


def construct_safe_from_endup(
    rule: Rule,
    profile: Profile,
    voter: int,
    strategic_order: LinearOrder,
) -> Certificate | None:
    """Safe-manipulation certificate when the full type switch does not hurt.

    Requires an incentive; returns None when the full switch strictly
    worsens the outcome (the construction does not apply).  Otherwise the
    certificate is at the profile itself when the vote is already safe,
    or at a shifted profile via the maximal-inferior-subset construction.
    """
    witness = has_incentive(rule, profile, voter, strategic_order)
    if witness is None:
        raise NoIncentiveError(
            f"voter {voter + 1} has no incentive to vote {strategic_order.compact}"
        )
    type_order = profile.orders[voter]
    members = voters_of_type(profile, type_order)
    sincere = rule.evaluate(profile)
    full_outcome = rule.evaluate(switch_votes(profile, members, strategic_order))
    if type_order.prefers(sincere, full_outcome):
        return None
    verdict = classify_safety(rule, profile, voter, strategic_order)
    if verdict.status == SafetyStatus.SAFE:
        return Certificate(
            claim="SafelyManipulable",
            profile=profile,
            voter=voter,
            strategic_order=strategic_order,
            sets={"coalition": witness.coalition},
            outcomes={"before": sincere, "after": witness.outcome_after},
            verified=True,
            rule_fingerprint=rule.fingerprint(),
        )
    # The bad coalition strictly worsens the outcome, so it is inferior to
    # the full switch and the maximal-inferior construction must succeed.
    certificate = construct_safe_from_inferior(rule, profile, type_order, strategic_order)
    assert certificate is not None
    return certificate


# ---------------------------------------------------------------------------
# Exhaustive theorem verifiers
# ---------------------------------------------------------------------------


def _scan_profiles(rule: Rule, n: int, budget: int | None) -> Iterator[Profile]:
    total = profile_space_size(len(rule.domain), n)
    limit = total if budget is None else min(budget, total)
    for i, profile in enumerate(all_profiles(rule.domain, n)):
        if i >= limit:
            raise InconclusiveError(limit)
        yield profile


def _resolve_n(rule: Rule, n: int | None) -> int:
    if n is None:
        n = rule.n
    if n is None:
        raise ValueError("pass n explicitly for rules without a fixed voter count")
    return n


def verify_gs(rule: Rule, n: int | None = None, budget: int | None = None) -> Certificate | None:
    """First single-voter (pivotal) manipulation in canonical scan order.

    None means the exhaustive scan found nothing, which for a total rule
    implies it is dictatorial or not onto.  A truncated scan raises
    InconclusiveError instead of silently returning None.
    """
    n = _resolve_n(rule, n)
    orders = all_orders(rule.domain)
    for profile in _scan_profiles(rule, n, budget):
        sincere = rule.evaluate(profile)
        for voter in range(n):
            voter_order = profile.orders[voter]
            for strategic_order in orders:
                if strategic_order == voter_order:
                    continue
                outcome = rule.evaluate(switch_votes(profile, frozenset({voter}), strategic_order))
                if voter_order.prefers(outcome, sincere):
                    return Certificate(
                        claim="GS-manipulable",
                        profile=profile,
                        voter=voter,
                        strategic_order=strategic_order,
                        sets={"coalition": frozenset({voter})},
                        outcomes={"before": sincere, "after": outcome},
                        verified=True,
                        rule_fingerprint=rule.fingerprint(),
                    )
    return None


def verify_safely_manipulable(
    rule: Rule, n: int | None = None, budget: int | None = None
) -> Certificate | None:
    """First profile/voter/order whose strategic vote is incentivized and safe."""
    n = _resolve_n(rule, n)
    orders = all_orders(rule.domain)
    for profile in _scan_profiles(rule, n, budget):
        for type_order in profile.types_present():
            members = sorted(voters_of_type(profile, type_order))
            voters_to_try = members[:1] if rule.anonymous else members
            for voter in voters_to_try:
                for strategic_order in orders:
                    if strategic_order == type_order:
                        continue
                    witness = has_incentive(rule, profile, voter, strategic_order)
                    if witness is None:
                        continue
                    verdict = classify_safety(rule, profile, voter, strategic_order)
                    if verdict.status == SafetyStatus.SAFE:
                        return Certificate(
                            claim="SafelyManipulable",
                            profile=profile,
                            voter=voter,
                            strategic_order=strategic_order,
                            sets={"coalition": witness.coalition},
                            outcomes={"before": witness.outcome_before, "after": witness.outcome_after},
                            verified=True,
                            rule_fingerprint=rule.fingerprint(),
                        )
    return None


def verify_safe_pivotal(
    rule: Rule, n: int | None = None, budget: int | None = None
) -> Certificate | None:
    """First voter who is singly pivotal via a strategic vote that is safe."""
    n = _resolve_n(rule, n)
    orders = all_orders(rule.domain)
    for profile in _scan_profiles(rule, n, budget):
        sincere = rule.evaluate(profile)
        for voter in range(n):
            voter_order = profile.orders[voter]
            for strategic_order in orders:
                if strategic_order == voter_order:
                    continue
                outcome = rule.evaluate(switch_votes(profile, frozenset({voter}), strategic_order))
                if not voter_order.prefers(outcome, sincere):
                    continue
                verdict = classify_safety(rule, profile, voter, strategic_order)
                if verdict.status == SafetyStatus.SAFE:
                    return Certificate(
                        claim="SafePivotal",
                        profile=profile,
                        voter=voter,
                        strategic_order=strategic_order,
                        sets={"coalition": frozenset({voter})},
                        outcomes={"before": sincere, "after": outcome},
                        verified=True,
                        rule_fingerprint=rule.fingerprint(),
                    )
    return None


def lift_safe_pivotal(rule: Rule, safe_certificate: Certificate) -> Certificate:
    """Turn a safe-manipulation certificate into a safe-pivotal one.

    Construction: if the certified voter is already pivotal, done.
    Otherwise take an inclusion-minimal coalition of incentivized type
    members containing the voter whose switch moves the outcome; peeling
    one member off it yields a shifted profile at which that member is
    singly pivotal, and the vote stays safe there.  The result is
    re-verified by direct replay.
    """
    if safe_certificate.claim != "SafelyManipulable":
        raise ValueError("expected a SafelyManipulable certificate")
    profile = safe_certificate.profile
    j = safe_certificate.voter
    strategic_order = safe_certificate.strategic_order
    type_order = profile.orders[j]
    sincere = rule.evaluate(profile)

    def pivotal_certificate(at_profile: Profile, voter: int) -> Certificate:
        before = rule.evaluate(at_profile)
        after = rule.evaluate(switch_votes(at_profile, frozenset({voter}), strategic_order))
        verified = at_profile.orders[voter].prefers(after, before) and (
            classify_safety(rule, at_profile, voter, strategic_order).status == SafetyStatus.SAFE
        )
        return Certificate(
            claim="SafePivotal",
            profile=at_profile,
            voter=voter,
            strategic_order=strategic_order,
            sets={"coalition": frozenset({voter})},
            outcomes={"before": before, "after": after},
            verified=verified,
            rule_fingerprint=rule.fingerprint(),
        )

    solo = rule.evaluate(switch_votes(profile, frozenset({j}), strategic_order))
    if type_order.prefers(solo, sincere):
        return pivotal_certificate(profile, j)

    members = voters_of_type(profile, type_order)
    incentivized = frozenset(
        v for v in members if has_incentive(rule, profile, v, strategic_order) is not None
    )
    # Size-minimal moving coalition within the incentivized voters; size
    # minimality implies inclusion minimality, so every proper subset
    # containing j leaves the outcome at the sincere winner.
    moving: VoterSet | None = None
    for coalition in _coalitions_with(j, incentivized):
        if rule.evaluate(switch_votes(profile, coalition, strategic_order)) != sincere:
            moving = coalition
            break
    if moving is None or len(moving) < 2:
        raise SafevoteError("certificate does not lift: no moving coalition found")
    peeled = max(moving - {j})
    shifted = switch_votes(profile, moving - {peeled}, strategic_order)
    return pivotal_certificate(shifted, peeled)


def verify_certificate(rule: Rule, certificate: Certificate) -> bool:
    """Independently replay a certificate's defining inequalities."""
    profile = certificate.profile
    voter = certificate.voter
    strategic_order = certificate.strategic_order
    if not 0 <= voter < profile.n:
        return False
    type_order = profile.orders[voter]
    if strategic_order == type_order:
        return False
    try:
        if certificate.claim == "GS-manipulable":
            outcome = rule.evaluate(switch_votes(profile, frozenset({voter}), strategic_order))
            return type_order.prefers(outcome, rule.evaluate(profile))
        if certificate.claim == "SafelyManipulable":
            if has_incentive(rule, profile, voter, strategic_order) is None:
                return False
            return classify_safety(rule, profile, voter, strategic_order).status == SafetyStatus.SAFE
        if certificate.claim == "SafePivotal":
            outcome = rule.evaluate(switch_votes(profile, frozenset({voter}), strategic_order))
            if not type_order.prefers(outcome, rule.evaluate(profile)):
                return False
            return classify_safety(rule, profile, voter, strategic_order).status == SafetyStatus.SAFE
        if certificate.claim == "Escape":
            if type_order.bottom != rule.evaluate(profile):
                return False
            return has_incentive(rule, profile, voter, strategic_order) is not None
        if certificate.claim == "LInferior":
            inferior = certificate.sets.get("inferior")
            if inferior is None:
                return False
            members = voters_of_type(profile, type_order)
            full = rule.evaluate(switch_votes(profile, members, strategic_order))
            partial = (
                rule.evaluate(switch_votes(profile, inferior, strategic_order))
                if inferior
                else rule.evaluate(profile)
            )
            return type_order.prefers(full, partial)
    except SafevoteError:
        return False
    return False
