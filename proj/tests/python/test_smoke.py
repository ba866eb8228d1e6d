"""Smoke tests for the ocen python bindings.

Each test exercises one slice of the bound API against small hand-checked
values; the harness test runs a complete synthetic experiment end to end.
"""

import math
import os
import random
import subprocess

import pytest

import ocen


def make_cloud(n, seed, dim=2):
    rng = random.Random(seed)
    rows = [[rng.gauss(0.0, 1.0) for _ in range(dim)] for _ in range(n)]
    names = [f"x{i}" for i in range(dim)]
    return ocen.Dataset("cloud", names, rows, ["positive"] * n)


def test_version_and_rosters():
    assert ocen.__version__ == "0.1.0"
    members = ocen.default_members()
    assert len(members) == 6
    ensembles = ocen.all_ensemble_names()
    assert len(ensembles) == 12
    for name in ("majority", "esbe", "tupso", "random_baseline", "actual_best"):
        assert name in ensembles
    assert len(ocen.all_fixed_rules()) == 8


def test_votes_and_fixed_rules():
    assert ocen.score_to_vote(0.5, 0.5) == 1  # inclusive boundary
    assert ocen.score_to_vote(0.49, 0.5) == 0

    scores = [0.8, 0.3, 0.9]
    thetas = [0.5, 0.5, 0.5]
    f_t = [0.9, 0.6, 0.8]
    expected = {
        "majority": 1.0,
        "mean_vote": 2.0 / 3.0,
        "weighted_mean_vote": 0.7,
        "average": 2.0 / 3.0,
        "max": 0.9,
        "product": 0.216,
        "exclusive": 0.0,
        "weighted_vote_product": 0.0,
    }
    for rule, value in expected.items():
        assert ocen.combine_fixed(rule, scores, thetas, f_t) == pytest.approx(value)

    outputs = ocen.MemberOutputs(scores, thetas, f_t)
    assert ocen.combine_fixed(ocen.FixedRule.product, outputs) == pytest.approx(0.216)
    with pytest.raises(ValueError):
        ocen.combine_fixed("weighted_mean_vote", scores, thetas)  # f_t required


def test_meta_features():
    f = ocen.extract_meta_features([0.6, 0.8], [0.5, 0.5])
    expected = [2.0, 1.4, 0.7, 0.5, -0.3669845875401002, 0.0, 0.01, 0.0025]
    assert f == pytest.approx(expected, abs=1e-12)


def test_estimation_and_weights():
    est = ocen.estimate_from_rates(ocen.Metric.ocf, 0.5, 0.1)
    assert est.tpr == pytest.approx(0.9)
    assert est.value == est.tpr  # positives-only fallback is exact
    est = ocen.estimate_from_rates(ocen.Metric.ocf, 0.5, 0.2, 1.0)
    assert est.value == pytest.approx(0.64)
    est = ocen.estimate_from_rates(ocen.Metric.oca, 1.0, 0.0, 1.0)
    assert est.value == pytest.approx(1.0)

    assert ocen.compute_weights([2.0, 1.0, 1.0]) == pytest.approx([0.5, 0.25, 0.25])
    assert ocen.compute_weights([0.0, 0.0]) == pytest.approx([0.5, 0.5])
    with pytest.raises(ValueError):
        ocen.compute_weights([-1.0, 2.0])


def test_evaluation_statistics():
    assert ocen.auc([0.9, 0.4, 0.6], [1, 1, 0]) == pytest.approx(0.5)
    assert ocen.auc([0.9, 0.8, 0.1], [1, 1, 0]) == pytest.approx(1.0)

    assert ocen.entropy_bits([1.0] * 6) == pytest.approx(2.584962500721156)

    table = [[3.0, 2.0, 1.0], [3.0, 2.0, 1.0], [2.0, 1.0, 3.0], [2.0, 3.0, 1.0]]
    ranks = ocen.rank_rows(table)
    assert ranks.ranks[0] == pytest.approx([1.0, 2.0, 3.0])
    fr = ocen.friedman_test(ranks)
    assert fr.chi2 == pytest.approx(2.0)
    assert fr.statistic == pytest.approx(1.0)
    assert fr.p_value == pytest.approx(27.0 / 64.0)
    assert not fr.reject_at_05

    bd = ocen.bonferroni_dunn(ocen.rank_rows([[3.0, 2.0, 1.0]] * 10), 0)
    assert bd.z[0] == 0.0 and bd.p_value[0] == 1.0 and not bd.significant[0]
    assert bd.z[1] == pytest.approx(-1.0 / math.sqrt(0.2), rel=1e-12)
    assert bd.adjusted_alpha == pytest.approx(0.025)

    assert ocen.pearson([1.0, 2.0, 3.0], [1.0, 2.0, 4.0]) == pytest.approx(
        0.9819805060619659
    )
    assert ocen.display_ranks([0.9, 0.7, 0.9]) == [1, 3, 1]


def test_classifier_roundtrip():
    positives = make_cloud(30, seed=3)
    spec = ocen.ClassifierSpec()
    spec.algo = ocen.Algo.pga
    spec.p_alpha = 0.1
    clf = ocen.train(spec, positives)
    assert clf.theta == pytest.approx(0.1)
    probe = [0.2, -0.1]
    assert 0.0 <= clf.score(probe) <= 1.0
    assert clf.predict([25.0, 25.0]) == 0  # far outlier is rejected

    clone = ocen.TrainedClassifier.from_text(clf.to_text())
    for row in positives.rows():
        assert clone.score(row) == clf.score(row)  # bit-exact round-trip


def test_tupso_and_esbe():
    positives = make_cloud(24, seed=5)
    pga = ocen.ClassifierSpec()
    pga.algo = ocen.Algo.pga
    pga.p_alpha = 0.05
    dens = ocen.ClassifierSpec()
    dens.algo = ocen.Algo.density_agg

    model = ocen.train_tupso([pga, dens], positives, k_inner=4, seed=9)
    assert sum(model.alpha) == pytest.approx(1.0)
    assert len(model.members) == 2 and len(model.f_t) == 2
    probe = [0.1, 0.4]
    assert 0.0 <= model.score(probe) <= 1.0
    clone = ocen.TupsoModel.from_text(model.to_text())
    assert clone.score(probe) == model.score(probe)

    esbe = ocen.train_esbe([pga, dens], positives, seed=9)
    assert esbe.dominant in (0, 1)
    assert esbe.score(probe) == esbe.members[esbe.dominant].score(probe)


def test_harness_end_to_end(tmp_path):
    csv = tmp_path / "synth.csv"
    ocen.gen_synthetic("two-gaussian", 36, 24, 3, 4.0, 11, str(csv))
    assert csv.exists()

    loaded = ocen.load_dataset(str(csv), "class")
    assert loaded.size() == 60 and loaded.labels().count("positive") == 36

    out_dir = tmp_path / "out"
    config = ocen.parse_config_text(
        f"""
[run]
seed = 5
inner_k = 5
ensembles = majority, average, esbe, tupso
output_dir = {out_dir}

[dataset]
path = {csv}
class_column = class

[member]
algo = pga
p_alpha = 0.05

[member]
algo = density_agg
"""
    )
    assert config.inner_k == 5 and len(config.members) == 2

    report = ocen.run_experiment(config)
    assert report.complete()
    assert report.metric == "OCF"
    assert len(report.cells) == 6 * 10  # (2 members + 4 ensembles) x 5x2 folds
    methods = report.all_methods()
    means = report.mean_table(methods)[0]
    assert all(0.0 <= v <= 1.0 for v in means)
    # The strong members separate this generator cleanly; ensemble-level
    # floors live in the C++ acceptance suite.
    assert means[methods.index("pga")] > 0.8
    assert means[methods.index("esbe")] > 0.8

    ocen.emit_reports(report, str(out_dir))
    for artifact in (
        "raw_results.csv",
        "members_table.txt",
        "ensembles_table.txt",
        "stats_summary.txt",
        "run_log.txt",
    ):
        assert (out_dir / artifact).exists()

    reloaded = ocen.load_raw_results(str(out_dir / "raw_results.csv"))
    assert reloaded.complete() and len(reloaded.cells) == len(report.cells)
    assert [c.auc_value for c in reloaded.cells] == [c.auc_value for c in report.cells]

    with pytest.raises(ocen.ConfigError):
        ocen.parse_config_text("[run]\nbogus_key = 1\n")
    with pytest.raises(ocen.DataError):
        ocen.load_raw_results(str(tmp_path / "missing.csv"))


def test_cli_binary():
    cli = os.environ.get("OCEN_CLI")
    if not cli:
        pytest.skip("OCEN_CLI not set")
    result = subprocess.run([cli, "list-methods"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "tupso" in result.stdout
    result = subprocess.run([cli, "--version"], capture_output=True, text=True)
    assert result.returncode == 0
