import itertools
import os
import sys

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.core.annotations import (
    AnnotationSet,
    Directive,
    effective_profile,
    effective_profiles,
    parse_annotations,
    parse_profile_tokens,
    resolve_annotations,
    suggest_from_children,
)
from src.core.catalog import Category, Niche
from src.core.errors import AnnotationConflictError, ParseError
from src.core.meta_properties import (
    Identity,
    MetaProfile,
    NotionalDependence,
    Rigidity,
    UNKNOWN_PROFILE,
    Unity,
)
from src.core.taxonomy import Taxonomy
from graph_oracles import build, dfs_ancestors, random_annotations, random_dag


def _taxonomy(edges, extra=()):
    taxonomy = Taxonomy()
    names = sorted({n for edge in edges for n in edge} | set(extra))
    for name in names:
        taxonomy.add_concept(name, [name.lower()])
    for child, parent in edges:
        taxonomy.add_edge(taxonomy.id_of(child), taxonomy.id_of(parent))
    return taxonomy


def test_profile_line():
    annotations = parse_annotations(["P Person +R +I:supplies -ND\n"])
    profile = annotations.profile("Person")
    assert profile.rigidity is Rigidity.RIGID
    assert profile.identity is Identity.SUPPLIES_IC
    assert profile.notional_dependence is NotionalDependence.NOT_ND
    assert profile.unity is Unity.UNKNOWN
    assert profile.tokens() == "+R +I:supplies -ND"


def test_all_record_types():
    annotations = parse_annotations(
        [
            "# comment",
            "",
            "P Prey$Quarry ~R +ND:Predator",
            "P Attribute META",
            "I Palestine",
            "A Cognition$Knowledge abstraction",
            "M Edge_3 import Relevant_Part",
            "M Subspace REJECT QUALITY_SPACE",
        ]
    )
    assert annotations.profile("Prey$Quarry").nd_target == "Predator"
    assert annotations.profile("Attribute").meta_level is True
    assert "Palestine" in annotations.individuals
    assert annotations.category_assignments == {"Cognition$Knowledge": Category.ABSTRACTION}
    assert [(d.name, d.directive, d.target) for d in annotations.mapping_directives] == [
        ("Edge_3", Directive.IMPORT, Niche.RELEVANT_PART),
        ("Subspace", Directive.REJECT, Niche.QUALITY_SPACE),
    ]
    assert annotations.referenced_names() == [
        "Attribute", "Cognition$Knowledge", "Edge_3", "Palestine", "Prey$Quarry", "Subspace",
    ]


def test_empty_stream():
    annotations = parse_annotations([])
    assert annotations == AnnotationSet()
    assert annotations.profile("Anything") is UNKNOWN_PROFILE


def test_duplicate_profile_last_wins_with_warning():
    annotations = parse_annotations(["P Germicide +R", "P Germicide ~R +ND"])
    assert annotations.profile("Germicide").rigidity is Rigidity.ANTI_RIGID
    assert len(annotations.warnings) == 1
    assert "line 2" in annotations.warnings[0]


def test_individual_with_rigidity_conflicts():
    with pytest.raises(AnnotationConflictError) as info:
        parse_annotations(["I Macao", "P Macao +R"], source="ann.txt")
    assert info.value.line_no == 2
    # other slots on an individual are fine
    annotations = parse_annotations(["I Macao", "P Macao +C"])
    assert "Macao" in annotations.individuals


@pytest.mark.parametrize(
    "line",
    [
        "P",
        "P Person +R +R",
        "P Person +X",
        "I",
        "I Macao Palestine",
        "A Cognition",
        "A Cognition SOMETHING",
        "M Edge_3 MOVE RELEVANT_PART",
        "M Edge_3 IMPORT NOWHERE",
        "Q Person",
    ],
)
def test_malformed_lines(line):
    with pytest.raises(ParseError) as info:
        parse_annotations(["# first", line], source="ann.txt")
    assert info.value.line_no == 2
    assert "ann.txt:2" in str(info.value)


def test_parse_profile_tokens_rejects_unknown():
    with pytest.raises(ValueError):
        parse_profile_tokens(["+Q"])


def test_resolve_reports_unknown_names():
    taxonomy = _taxonomy([("Person", "Organism")])
    annotations = parse_annotations(["P Person +R", "I Nowhere"])
    assert resolve_annotations(taxonomy, annotations) == ["annotation names unknown concept Nowhere"]


def test_student_inherits_identity_from_person():
    taxonomy = _taxonomy([("Student", "Person")])
    annotations = parse_annotations(["P Person +R +I:supplies -ND", "P Student ~R +ND"])
    profile = effective_profile(taxonomy.id_of("Student"), taxonomy, annotations)
    assert profile.identity is Identity.CARRIES_IC
    assert profile.rigidity is Rigidity.ANTI_RIGID
    # only identity is inherited
    assert profile.notional_dependence is NotionalDependence.ND


def test_unannotated_concept_is_all_unknown():
    taxonomy = _taxonomy([("A", "B")])
    assert effective_profile(taxonomy.id_of("A"), taxonomy, AnnotationSet()) == UNKNOWN_PROFILE


def test_diamond_identity_truth_table():
    taxonomy = _taxonomy([("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")])
    values = list(Identity)
    for own, b, c, d in itertools.product(values, repeat=4):
        profiles = {
            name: MetaProfile(identity=value)
            for name, value in zip("ABCD", (own, b, c, d))
        }
        annotations = AnnotationSet(profiles=profiles)
        supplied = Identity.SUPPLIES_IC in (b, c, d)
        if supplied and own in (Identity.NO_IC, Identity.UNKNOWN):
            expected = Identity.CARRIES_IC
        else:
            expected = own
        assert effective_profile(taxonomy.id_of("A"), taxonomy, annotations).identity is expected
        assert effective_profiles(taxonomy, annotations)[taxonomy.id_of("A")].identity is expected


def test_causal_agent_suggestions():
    taxonomy = _taxonomy([("Person", "Causal_Agent"), ("Germicide", "Causal_Agent")])
    annotations = parse_annotations(
        ["P Causal_Agent ~R -I +ND", "P Person +R +I:supplies -ND", "P Germicide ~R +ND"]
    )
    suggestions = suggest_from_children(taxonomy.id_of("Causal_Agent"), taxonomy, annotations)
    assert [(s.slot, s.forbidden, s.witnesses, s.conflicts_with_annotation) for s in suggestions] == [
        ("rigidity", "~R", ("Person",), True),
        ("rigidity", "+R", ("Germicide",), False),
    ]
    assert suggestions[0].message == "cannot be ~R (witness: Person)"
    assert suggestions[1].message == "cannot be +R (witness: Germicide)"


def test_leaf_has_no_suggestions():
    taxonomy = _taxonomy([("Person", "Causal_Agent")])
    annotations = parse_annotations(["P Person +R"])
    assert suggest_from_children(taxonomy.id_of("Person"), taxonomy, annotations) == []


_POSITIVE = {"rigidity": {"+R"}, "unity": {"+U", "*U"}, "extensionality": {"+E"}, "concreteness": {"+C"}}
_ANTI = {"rigidity": "~R", "unity": "~U", "extensionality": "~E", "concreteness": "~C"}
_PLUS = {"rigidity": "+R", "unity": "+U", "extensionality": "+E", "concreteness": "+C"}


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_suggestions_match_descendant_scan(rng):
    names, edges = random_dag(rng, max_nodes=40, max_edges=80)
    taxonomy = build(names, edges)
    annotations = random_annotations(rng, names)
    profiles = effective_profiles(taxonomy, annotations)
    ancestors = dfs_ancestors(edges)

    for name in names:
        below = sorted(n for n in names if name in ancestors.get(n, set()))
        expected = []
        for slot in ("rigidity", "unity", "extensionality", "concreteness"):
            glyph = {n: getattr(profiles[taxonomy.id_of(n)], slot).value for n in below}
            pos = tuple(n for n in below if glyph[n] in _POSITIVE[slot])
            anti = tuple(n for n in below if glyph[n] == _ANTI[slot])
            if pos:
                expected.append((slot, _ANTI[slot], pos))
            if anti:
                expected.append((slot, _PLUS[slot], anti))
        got = suggest_from_children(taxonomy.id_of(name), taxonomy, annotations)
        assert [(s.slot, s.forbidden, s.witnesses) for s in got] == expected
        assert suggest_from_children(taxonomy.id_of(name), taxonomy, annotations, profiles) == got
