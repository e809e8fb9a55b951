import itertools
import os
import random
import sys
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.core.annotations import AnnotationSet, parse_annotations
from src.core.catalog import Category
from src.core.errors import UnknownCategoryError
from src.core.meta_properties import (
    Concreteness,
    Extensionality,
    Identity,
    MetaProfile,
    NotionalDependence,
    Rigidity,
    Unity,
)
from src.core.taxonomy import EdgeKind, Taxonomy
from src.modules.constraint_checker import (
    Repair,
    ViolationKind,
    check_assignments,
    check_category_assignment,
    check_instances,
    check_meta_levels,
    check_pair,
    check_taxonomy,
    evaluate_pair,
    run_checks,
)
from graph_oracles import (
    SLOT_ENUMS,
    build,
    dfs_ancestors,
    fill_unknowns,
    oracle_pair,
    oracle_violations,
    random_annotations,
    random_dag,
    random_profile,
    replay_path,
)

PERSON = MetaProfile(Rigidity.RIGID, Identity.SUPPLIES_IC, notional_dependence=NotionalDependence.NOT_ND)
CAUSAL_AGENT = MetaProfile(Rigidity.ANTI_RIGID, Identity.NO_IC, notional_dependence=NotionalDependence.ND)
ORGANISM = PERSON


def _taxonomy(edges, extra=()):
    taxonomy = Taxonomy()
    names = sorted({n for edge in edges for n in edge} | set(extra))
    for name in names:
        taxonomy.add_concept(name, [name.lower()])
    for child, parent in edges:
        taxonomy.add_edge(taxonomy.id_of(child), taxonomy.id_of(parent))
    return taxonomy


def _kinds(profile_lower, profile_upper):
    return sorted(k.value for k in check_pair(profile_lower, profile_upper))


def test_person_under_causal_agent():
    assert check_pair(PERSON, CAUSAL_AGENT) == [ViolationKind.RIGIDITY, ViolationKind.ROLE_OVER_TYPE]


def test_person_under_organism():
    assert check_pair(PERSON, ORGANISM) == []


def test_all_unknown_pair_is_skipped():
    outcome = evaluate_pair(MetaProfile(), MetaProfile())
    assert outcome.kinds == ()
    assert outcome.suppressed == 5
    assert outcome.skipped


def test_rigid_under_non_rigid_is_fine():
    assert check_pair(MetaProfile(rigidity=Rigidity.RIGID), MetaProfile(rigidity=Rigidity.NON_RIGID)) == []


@pytest.mark.parametrize("slot", ["rigidity", "unity", "extensionality", "concreteness"])
def test_polar_rule_tables_exhaustive(slot):
    enum = SLOT_ENUMS[slot]
    for lower_value, upper_value in itertools.product(enum, repeat=2):
        lower = MetaProfile(**{slot: lower_value})
        upper = MetaProfile(**{slot: upper_value})
        assert _kinds(lower, upper) == sorted(oracle_pair(lower, upper))


def test_role_rule_exhaustive():
    deciding = list(itertools.product(Rigidity, Identity, NotionalDependence))
    for (lr, li, lnd), (ur, ui, und) in itertools.product(deciding, repeat=2):
        lower = MetaProfile(rigidity=lr, identity=li, notional_dependence=lnd)
        upper = MetaProfile(rigidity=ur, identity=ui, notional_dependence=und)
        assert _kinds(lower, upper) == sorted(oracle_pair(lower, upper))


def test_random_full_profiles_against_oracle():
    rng = random.Random(1729)
    for _ in range(5000):
        lower, upper = random_profile(rng), random_profile(rng)
        assert _kinds(lower, upper) == sorted(oracle_pair(lower, upper))


def test_unity_both_positive_values_conflict_with_anti_unity():
    upper = MetaProfile(unity=Unity.ANTI_UNITY)
    assert check_pair(MetaProfile(unity=Unity.UNITY), upper) == [ViolationKind.UNITY]
    assert check_pair(MetaProfile(unity=Unity.WHOLE_NO_COMMON_RELATION), upper) == [ViolationKind.UNITY]
    assert check_pair(MetaProfile(extensionality=Extensionality.EXTENSIONAL),
                      MetaProfile(extensionality=Extensionality.ANTI_EXTENSIONAL)) == [ViolationKind.EXTENSIONALITY]
    assert check_pair(MetaProfile(concreteness=Concreteness.CONCRETE),
                      MetaProfile(concreteness=Concreteness.NON_CONCRETE)) == [ViolationKind.CONCRETENESS]


def test_transitive_violation_through_unannotated_middle():
    taxonomy = _taxonomy([("p", "m"), ("m", "q")])
    annotations = parse_annotations(["P p +R", "P q ~R"])
    report = check_taxonomy(taxonomy, annotations)
    assert len(report.violations) == 1
    violation = report.violations[0]
    assert (violation.kind, violation.subject, violation.object) == (ViolationKind.RIGIDITY, "p", "q")
    assert violation.path == ("p", "m", "q")
    assert violation.suggested_repair is Repair.MOVE_CONCEPT
    assert violation.explanation == "q is anti-rigid (~R) and cannot subsume the rigid p (+R)"
    # (p, m) and (m, q) have nothing decidable
    assert report.skipped == 2


def test_unannotated_taxonomy_skips_every_pair():
    taxonomy = _taxonomy([("a", "b"), ("b", "c"), ("a", "d"), ("d", "c")])
    report = check_taxonomy(taxonomy, AnnotationSet())
    assert report.violations == []
    pairs = sum(len(taxonomy.ancestors(c.id)) for c in taxonomy.concepts())
    assert report.skipped == pairs == 5


def test_direct_violation_suggests_dropping_the_edge():
    taxonomy = _taxonomy([("Person", "Causal_Agent"), ("Person", "Organism")])
    annotations = parse_annotations(
        ["P Person +R +I:supplies -ND", "P Causal_Agent ~R -I +ND", "P Organism +R +I:supplies -ND"]
    )
    report = check_taxonomy(taxonomy, annotations)
    assert [(v.kind, v.object, v.suggested_repair) for v in report.violations] == [
        (ViolationKind.RIGIDITY, "Causal_Agent", Repair.DROP_EDGE),
        (ViolationKind.ROLE_OVER_TYPE, "Causal_Agent", Repair.DROP_EDGE),
    ]
    assert report.violations[1].explanation == "Causal_Agent is a formal role and cannot subsume the type Person"
    assert report.stats["RIGIDITY"] == 1
    assert report.stats["CATEGORY_INCOMPATIBLE"] == 0


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_check_taxonomy_matches_closure_oracle(rng):
    names, edges = random_dag(rng)
    taxonomy = build(names, edges)
    annotations = random_annotations(rng, names)
    report = check_taxonomy(taxonomy, annotations)

    got = sorted((v.kind.value, v.subject, v.object) for v in report.violations)
    assert got == oracle_violations(names, edges, annotations)

    direct = set(edges)
    ancestors = dfs_ancestors(edges)
    for violation in report.violations:
        assert violation.path[0] == violation.subject
        assert violation.path[-1] == violation.object
        assert replay_path(taxonomy, violation.path)
        hops = len(violation.path) - 1
        assert hops >= 1
        assert violation.object in ancestors[violation.subject]
        expected = Repair.DROP_EDGE if (violation.subject, violation.object) in direct else Repair.MOVE_CONCEPT
        assert violation.suggested_repair is expected


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_check_is_deterministic(rng):
    names, edges = random_dag(rng, max_nodes=60, max_edges=120)
    annotations = random_annotations(rng, names)
    shuffled = list(edges)
    rng.shuffle(shuffled)
    first = check_taxonomy(build(names, edges), annotations)
    second = check_taxonomy(build(names, shuffled), annotations)
    assert first.violations == second.violations
    assert first.skipped == second.skipped


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_filling_unknown_slots_never_removes_violations(rng):
    names, edges = random_dag(rng, max_nodes=60, max_edges=120)
    taxonomy = build(names, edges)
    before = random_annotations(rng, names, density=0.5)
    after = fill_unknowns(rng, names, before)

    def found(annotations):
        report = run_checks(taxonomy, annotations, resolve=False)
        return Counter((v.kind, v.subject, v.object) for v in report.violations)

    first, second = found(before), found(after)
    assert not first - second


def test_instance_mixing():
    taxonomy = _taxonomy(
        [("Palestine", "Territorial_Dominion"), ("Trust_Territory", "Territorial_Dominion"), ("Fall_3", "Event")]
    )
    annotations = parse_annotations(["I Palestine", "I Fall_3", "I Elsewhere"])
    violations = check_instances(taxonomy, annotations)
    assert [(v.subject, v.object, v.suggested_repair, v.path) for v in violations] == [
        ("Fall_3", "Event", Repair.CONVERT_TO_INSTANCE_OF, ("Fall_3", "Event")),
        ("Palestine", "Territorial_Dominion", Repair.CONVERT_TO_INSTANCE_OF, ("Palestine", "Territorial_Dominion")),
    ]
    assert all(v.kind is ViolationKind.INSTANCE_MIXING for v in violations)


def test_individual_with_children_must_be_reannotated():
    taxonomy = _taxonomy([("Macao_District", "Macao")])
    violations = check_instances(taxonomy, parse_annotations(["I Macao"]))
    assert len(violations) == 1
    assert violations[0].object is None
    assert violations[0].suggested_repair is Repair.REANNOTATE
    assert "subsumes Macao_District" in violations[0].explanation


def test_individual_attached_by_instance_of_is_fine():
    taxonomy = _taxonomy([], extra=("Palestine", "Territorial_Dominion"))
    taxonomy.add_edge(taxonomy.id_of("Palestine"), taxonomy.id_of("Territorial_Dominion"), EdgeKind.INSTANCE_OF)
    assert check_instances(taxonomy, parse_annotations(["I Palestine"])) == []


def test_meta_level_mixing():
    taxonomy = _taxonomy([("Attribute", "Abstraction_1"), ("Set_5", "Abstraction_1"), ("Color", "Attribute")])
    violations = check_meta_levels(taxonomy, parse_annotations(["P Attribute META"]))
    assert sorted((v.subject, v.object) for v in violations) == [
        ("Attribute", "Abstraction_1"),
        ("Color", "Attribute"),
    ]
    assert all(v.suggested_repair is Repair.MOVE_CONCEPT for v in violations)


def test_meta_levels_homogeneous():
    taxonomy = _taxonomy([("a", "b"), ("b", "c")])
    assert check_meta_levels(taxonomy, AnnotationSet()) == []
    everything_meta = parse_annotations(["P a META", "P b META", "P c META"])
    assert check_meta_levels(taxonomy, everything_meta) == []


def test_category_assignment():
    taxonomy = _taxonomy([], extra=("Cognition", "Walk", "Blob", "Mystery"))
    annotations = parse_annotations(["P Cognition ~C", "P Walk -D", "P Blob ~U"])
    assert check_category_assignment(taxonomy.id_of("Cognition"), Category.ABSTRACTION, taxonomy, annotations) == []

    event = check_category_assignment(taxonomy.id_of("Walk"), "EVENT", taxonomy, annotations)
    assert len(event) == 1
    assert event[0].kind is ViolationKind.CATEGORY_INCOMPATIBLE
    assert event[0].explanation == "Walk is -D but Event requires +D (dependence)"

    quality = check_category_assignment(taxonomy.id_of("Blob"), Category.QUALITY, taxonomy, annotations)
    assert [v.explanation for v in quality] == ["Blob is ~U but Quality requires +U (unity)"]

    assert check_category_assignment(taxonomy.id_of("Mystery"), Category.QUALITY, taxonomy, annotations) == []
    with pytest.raises(UnknownCategoryError):
        check_category_assignment(taxonomy.id_of("Mystery"), "NOWHERE", taxonomy, annotations)


def test_assignment_with_nothing_known_is_skipped():
    taxonomy = _taxonomy([], extra=("Cognition", "Mystery"))
    annotations = parse_annotations(["P Cognition ~C", "A Cognition ABSTRACTION", "A Mystery QUALITY"])
    violations, skipped = check_assignments(taxonomy, annotations)
    assert violations == []
    assert skipped == 1


def test_run_checks_merges_and_sorts():
    taxonomy = _taxonomy([("Person", "Causal_Agent"), ("Palestine", "Territory"), ("Walk", "Thing")])
    annotations = parse_annotations(
        [
            "P Person +R +I:supplies -ND",
            "P Causal_Agent ~R -I +ND",
            "I Palestine",
            "P Walk -D",
            "A Walk EVENT",
            "P Ghost +R",
        ]
    )
    report = run_checks(taxonomy, annotations)
    assert [v.kind for v in report.violations] == [
        ViolationKind.RIGIDITY,
        ViolationKind.ROLE_OVER_TYPE,
        ViolationKind.INSTANCE_MIXING,
        ViolationKind.CATEGORY_INCOMPATIBLE,
    ]
    assert report.warnings == ["annotation names unknown concept Ghost"]
    assert run_checks(taxonomy, annotations, resolve=False).warnings == []
