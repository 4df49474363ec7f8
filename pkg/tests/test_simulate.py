import numpy as np
import pytest

import hyperwalk as hw


class TestWalkConfig:
    def test_validation(self):
        with pytest.raises(hw.InvalidParams):
            hw.WalkConfig(runs=0)
        with pytest.raises(hw.InvalidParams):
            hw.WalkConfig(runs=1, max_steps=0)

    def test_scenario_mismatch(self, worked_example):
        kernel = hw.simple_kernel(worked_example)
        config = hw.WalkConfig(runs=10, scenario="frustrated")
        with pytest.raises(hw.InvalidParams):
            hw.simulate_hitting_time(kernel, 0, 3, config)


class TestSimulateHittingTime:
    def test_two_node_walk_is_always_one_step(self, each_backend):
        h = hw.build_hypergraph([[0, 1]])
        kernel = hw.simple_kernel(h)
        result = hw.simulate_hitting_time(kernel, 0, 1, hw.WalkConfig(runs=500, seed=1))
        assert result.mean == 1.0
        assert result.stderr == 0.0
        assert result.censored == 0

    def test_adherent_geometric_mean(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        result = hw.simulate_hitting_time(kernel, 4, 3,
                                          hw.WalkConfig(runs=40_000, seed=2))
        # geometric with p = 1/2: mean 2, sd sqrt(2)
        assert result.mean == pytest.approx(2.0, abs=3 * result.stderr)

    def test_frustrated_means_match_analytic(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        exact = hw.expected_hitting_times(kernel, 3).times
        for source in (0, 2):
            result = hw.simulate_hitting_time(
                kernel, source, 3, hw.WalkConfig(runs=20_000, seed=3))
            assert result.censored == 0
            assert abs(result.mean - exact[source]) <= 4 * result.stderr

    def test_simple_means_match_analytic(self, worked_example, each_backend):
        kernel = hw.simple_kernel(worked_example)
        exact = hw.expected_hitting_times(kernel, 3).times
        result = hw.simulate_hitting_time(kernel, 0, 3,
                                          hw.WalkConfig(runs=20_000, seed=4))
        assert abs(result.mean - exact[0]) <= 4 * result.stderr

    def test_censoring(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        with pytest.raises(hw.AllCensored):
            hw.simulate_hitting_time(kernel, 0, 3,
                                     hw.WalkConfig(runs=50, seed=5, max_steps=1))

    def test_partial_censoring_reported(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        result = hw.simulate_hitting_time(kernel, 2, 3,
                                          hw.WalkConfig(runs=2000, seed=6, max_steps=8))
        assert 0 < result.censored < 2000

    def test_deterministic_per_seed(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        config = hw.WalkConfig(runs=5000, seed=7)
        a = hw.simulate_hitting_time(kernel, 0, 3, config)
        b = hw.simulate_hitting_time(kernel, 0, 3, config)
        assert a == b

    def test_workers_deterministic_and_consistent(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        config = hw.WalkConfig(runs=20_000, seed=8)
        solo = hw.simulate_hitting_time(kernel, 0, 3, config, workers=1)
        quad_a = hw.simulate_hitting_time(kernel, 0, 3, config, workers=4)
        quad_b = hw.simulate_hitting_time(kernel, 0, 3, config, workers=4)
        assert quad_a == quad_b
        assert abs(solo.mean - quad_a.mean) <= 4 * (solo.stderr + quad_a.stderr)

    def test_single_run_has_no_stderr(self, worked_example, each_backend):
        kernel = hw.frustrated_kernel(worked_example)
        result = hw.simulate_hitting_time(kernel, 4, 3, hw.WalkConfig(runs=1, seed=9))
        assert result.stderr is None

    def test_validates_nodes(self, worked_example):
        kernel = hw.simple_kernel(worked_example)
        with pytest.raises(hw.InvalidParams):
            hw.simulate_hitting_time(kernel, 3, 3, hw.WalkConfig(runs=10))
        with pytest.raises(hw.NodeOutOfRange):
            hw.simulate_hitting_time(kernel, 0, 9, hw.WalkConfig(runs=10))


class TestSamplePaths:
    def test_shape_and_determinism(self, worked_example, each_backend):
        kernel = hw.simple_kernel(worked_example)
        paths = hw.sample_paths(kernel, 100, seed=11)
        assert paths.shape == (5, 101)
        assert np.array_equal(paths[:, 0], np.arange(5))
        assert np.array_equal(paths, hw.sample_paths(kernel, 100, seed=11))

    def test_forced_first_transition(self, worked_example, each_backend):
        # node 4's only neighbor is 3 in the simple walk
        kernel = hw.simple_kernel(worked_example)
        paths = hw.sample_paths(kernel, 1, seed=12)
        assert paths[4].tolist() == [4, 3]

    def test_transitions_follow_kernel_rows(self, worked_example, each_backend):
        # one long path gives many one-step samples out of every node
        kernel = hw.frustrated_kernel(worked_example)
        paths = hw.sample_paths(kernel, 400_000, seed=13)
        walk = paths[0]
        dense = kernel.matrix.to_dense()
        for s in range(5):
            here = walk[:-1] == s
            visits = int(here.sum())
            assert visits > 20_000
            following = walk[1:][here]
            for j in range(5):
                freq = float((following == j).mean())
                assert abs(freq - dense[s, j]) <= 0.005

    def test_rejects_bad_steps(self, worked_example):
        kernel = hw.simple_kernel(worked_example)
        with pytest.raises(hw.InvalidParams):
            hw.sample_paths(kernel, 0, seed=1)
