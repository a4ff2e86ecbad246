import dataclasses
import json
import math
from pathlib import Path

import pytest

from uqpkit.errors import ConfigError, NoMatchingRecords
from uqpkit.models import BoundReport, ExperimentRecord, GeneratorKind, Method
from uqpkit.services.bounds import GREEDY_RATIO
from uqpkit.services.experiments import (
    emit_cdf,
    generate_matrix,
    load_config,
    parse_config,
    run_experiment,
    summarize,
)
from uqpkit.services.hermitian import eigen_decompose, m_dominance


def build_record(**kwargs) -> ExperimentRecord:
    base = {
        "n": 4,
        "matrix_seed": 1,
        "method": Method.GREEDY,
        "value": 9.0,
        "normalized_value": 0.9,
        "bounds": BoundReport(
            n=4,
            spectral_lo=0.0,
            spectral_hi=10.0,
            prop1_ratio=0.25,
            thm1_applicable=False,
            thm1_ratio=0.0,
            prop2_applicable=False,
            prop2_ratio=0.0,
            universal_ratio=0.0,
        ),
        "runtime_micros": 12,
        "oracle_value": None,
    }
    base.update(kwargs)
    return ExperimentRecord(**base)


def test_parse_config_defaults_and_aliases():
    cfg = parse_config({"sizes": [2, 3], "matrices_per_size": 2, "seed": 7, "methods": ["greedy", "D", "Greedy"]})
    assert cfg.sizes == (2, 3)
    assert cfg.methods == (Method.GREEDY, Method.D)
    assert cfg.generator is GeneratorKind.PSD
    assert cfg.oracle_enabled is False


def test_parse_config_dominant_generator():
    cfg = parse_config({"sizes": [4], "matrices_per_size": 1, "seed": 0, "methods": ["Greedy"], "generator": "dominant(8)"})
    assert cfg.generator is GeneratorKind.DOMINANT
    assert cfg.dominance_factor == 8
    cfg = parse_config({"sizes": [4], "matrices_per_size": 1, "seed": 0, "methods": ["Greedy"], "generator": "dominant(2n)"})
    assert cfg.dominance_factor is None
    assert m_dominance(generate_matrix(cfg, 4, 3), 8)


@pytest.mark.parametrize(
    "patch",
    [
        {"sizes": []},
        {"sizes": [0]},
        {"matrices_per_size": 0},
        {"methods": ["sdr"]},
        {"generator": "rherm"},
        {"bogus": 1},
        {"oracle_enabled": True, "sizes": [9]},
        {"oracle_enabled": "yes"},
        {"eig_hi": -1},
    ],
)
def test_parse_config_rejects(patch):
    data = {"sizes": [2], "matrices_per_size": 1, "seed": 1, "methods": ["Greedy"]}
    data.update(patch)
    with pytest.raises(ConfigError):
        parse_config(data)


def test_parse_config_requires_keys():
    with pytest.raises(ConfigError):
        parse_config({"sizes": [2], "seed": 1, "methods": ["Greedy"]})


def test_load_config_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(broken)
    with pytest.raises(OSError):
        load_config(tmp_path / "missing.json")


def test_single_record_is_reproducible():
    cfg = parse_config({"sizes": [2], "matrices_per_size": 1, "seed": 7, "methods": ["Greedy"]})
    first = run_experiment(cfg, workers=1)
    second = run_experiment(cfg, workers=1)
    assert len(first) == 1
    assert first[0].value == second[0].value
    assert first[0].matrix_seed == second[0].matrix_seed
    assert first[0].runtime_micros >= 1


def test_record_count_and_order_do_not_depend_on_workers():
    cfg = parse_config(
        {"sizes": [3, 2], "matrices_per_size": 3, "seed": 5, "methods": ["Random", "D", "PowerMethod"]}
    )
    serial = run_experiment(cfg, workers=1)
    parallel = run_experiment(cfg, workers=2)
    assert len(serial) == 2 * 3 * 3
    assert [r.sort_key for r in serial] == sorted(r.sort_key for r in serial)
    assert [(r.sort_key, r.value) for r in serial] == [(r.sort_key, r.value) for r in parallel]


def test_normalized_value_uses_top_eigenvalue():
    cfg = parse_config({"sizes": [5], "matrices_per_size": 2, "seed": 3, "methods": ["D", "Random"]})
    for record in run_experiment(cfg, workers=1):
        R = generate_matrix(cfg, record.n, record.matrix_seed)
        top = eigen_decompose(R).largest * R.n
        assert record.normalized_value == pytest.approx(record.value / top)
        assert record.bounds.spectral_hi == pytest.approx(top)


def test_prop1_and_random_dominance_at_reduced_scale():
    cfg = parse_config({"sizes": [20], "matrices_per_size": 25, "seed": 2014, "methods": ["D", "Random"]})
    records = run_experiment(cfg, workers=1)
    for record in records:
        if record.method is Method.D:
            assert record.normalized_value >= record.bounds.prop1_ratio - 1e-9
    summary = {row["method"]: row for row in summarize(records)}
    assert summary[Method.D]["mean"] >= 0.85
    assert summary[Method.D]["mean"] - summary[Method.RANDOM]["mean"] >= 0.05


def test_greedy_guarantee_with_oracle():
    cfg = parse_config(
        {
            "sizes": [4],
            "matrices_per_size": 10,
            "seed": 11,
            "methods": ["Greedy"],
            "generator": "dominant(8)",
            "oracle_enabled": True,
            "oracle_M": 16,
        }
    )
    records = run_experiment(cfg, workers=1)
    assert len(records) == 10
    for record in records:
        assert record.bounds.thm1_applicable
        assert record.value >= GREEDY_RATIO * record.oracle_value - 1e-9


def test_emit_cdf_examples():
    single = build_record(normalized_value=0.7)
    assert emit_cdf([single], Method.GREEDY, 4) == [(0.7, 1.0)]

    pair = [build_record(normalized_value=0.5), build_record(normalized_value=0.5, matrix_seed=2)]
    assert emit_cdf(pair, Method.GREEDY, 4) == [(0.5, 0.5), (0.5, 1.0)]

    batch = [build_record(matrix_seed=k, normalized_value=k / 500) for k in range(500)]
    points = emit_cdf(batch, Method.GREEDY, 4)
    assert points[-1][1] == 1.0
    assert [value for value, _ in points] == sorted(value for value, _ in points)


def test_emit_cdf_without_matches():
    with pytest.raises(NoMatchingRecords):
        emit_cdf([build_record()], Method.D, 4)
    with pytest.raises(NoMatchingRecords):
        emit_cdf([build_record()], Method.GREEDY, 5)


def test_summarize_groups_by_size_and_method():
    records = [
        build_record(method=Method.D, normalized_value=0.8),
        build_record(method=Method.D, normalized_value=1.0, matrix_seed=2),
        build_record(method=Method.GREEDY, normalized_value=0.9),
        build_record(n=2, normalized_value=0.6),
    ]
    rows = summarize(records)
    assert [(row["n"], row["method"]) for row in rows] == [(2, Method.GREEDY), (4, Method.D), (4, Method.GREEDY)]
    assert rows[1]["mean"] == pytest.approx(0.9)
    assert rows[1]["min"] == pytest.approx(0.8)


def test_presets_parse():
    presets = sorted((Path(__file__).resolve().parents[1] / "configs").glob("*.json"))
    assert len(presets) == 5
    for path in presets:
        cfg = load_config(path)
        assert cfg.matrices_per_size >= 100
        assert json.loads(path.read_text(encoding="utf-8"))["seed"] == cfg.seed


def test_config_seed_override_changes_matrices():
    cfg = parse_config({"sizes": [3], "matrices_per_size": 1, "seed": 1, "methods": ["Greedy"]})
    other = dataclasses.replace(cfg, seed=2)
    assert run_experiment(cfg, workers=1)[0].matrix_seed != run_experiment(other, workers=1)[0].matrix_seed
    assert not math.isnan(run_experiment(other, workers=1)[0].normalized_value)
