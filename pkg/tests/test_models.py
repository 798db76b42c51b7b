"""
洋葱模型与结果类型测试
"""

from onion_framework.core.digraph import Path
from onion_framework.core.oracle import verify_model
from onion_framework.workflows.models import OnionModel, OnionStarModel
from onion_framework.workflows.outcomes import DichotomyOutcome, Inconclusive, OutcomeTag


def star_slices(star2):
    """onion_star(2) 自身的两个出洋葱与两个入洋葱"""
    out = [OnionModel(0, y, (Path.of(6 * i), Path.of(6 * i + 1)), Path.of(6 * i + 2))
           for i, y in enumerate(star2.marks["y"])]
    incoming = [OnionModel(z, 0, (Path.of(6 * i + 3), Path.of(6 * i + 4)), Path.of(6 * i + 5))
                for i, z in enumerate(star2.marks["z"])]
    return out, incoming


def test_onion_model_identity(onion_instance):
    model = OnionModel(0, 1, (Path.of(0), Path.of(1)), Path.of(2))
    assert model.arc_set() == frozenset({0, 1, 2})
    assert verify_model(model.to_immersion_model(onion_instance.digraph))
    assert model.to_dict() == {"source": 0, "sink": 1, "out_paths": [[0], [1]], "back_path": [2]}


def test_onion_model_reversed():
    model = OnionModel(0, 1, (Path.of(0, 3), Path.of(1)), Path.of(2))
    flipped = model.reversed()
    assert (flipped.source, flipped.sink) == (1, 0)
    assert flipped.out_paths[0].arcs == (3, 0)
    assert flipped.reversed() == model


def test_assemble_star(star2):
    out, incoming = star_slices(star2)
    star = OnionStarModel.assemble(0, out, incoming)
    assert star.t == 2
    assert star.vertex_map() == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4}
    assert verify_model(star.to_immersion_model(star2.digraph))
    document = star.to_dict()
    assert document["y_leaves"] == [1, 2] and document["z_leaves"] == [3, 4]
    assert document["arc_paths"]["11"] == [11]


def test_dichotomy_outcome_encoding(star2):
    out, incoming = star_slices(star2)
    star = OnionStarModel.assemble(0, out, incoming)
    assert DichotomyOutcome.from_star(star).to_dict()["tag"] == "onion-star"

    uncrossed = DichotomyOutcome.uncrossed([Path.of(0)], [Path.of(2)])
    assert uncrossed.tag is OutcomeTag.UNCROSSED
    assert uncrossed.to_dict() == {"tag": "uncrossed", "P": [[0]], "Q": [[2]]}

    gap = DichotomyOutcome.from_inconclusive(Inconclusive("thomason", "too small", {"n": 3}))
    assert gap.to_dict() == {"tag": "inconclusive", "result": "inconclusive", "stage": "thomason",
                             "reason": "too small", "details": {"n": 3}}
