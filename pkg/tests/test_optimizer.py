import numpy as np
import pytest

from hamsi import (Cover, DivergenceError, FactorModel, LbfgsMemory,
                   RunConfig, Schedule, SparseObservations, beta, full_gradient,
                   hamsi_epoch, hogwild_cover, mbgd_epoch, block_gradient,
                   greedy_color, pack_colors, rmse, run, set_schedule,
                   stratify)
from hamsi._parallel import GradientEngine
from _datagen import ground_truth_problem, random_obs


class TestBeta:
    def test_formula(self):
        assert beta(1, 2.0, 1.0) == pytest.approx(2.0)
        assert beta(4, 2.0, 0.5) == pytest.approx(np.sqrt(8.0))
        assert beta(3, 0.5, 0.51) == pytest.approx(1.5 ** 0.51)

    def test_validation(self):
        with pytest.raises(ValueError):
            beta(0, 1.0, 0.51)
        with pytest.raises(ValueError):
            beta(1, 0.0, 0.51)


class TestSchedule:
    def test_initial_wrapped(self):
        s = Schedule.initial(4)
        assert s.order.tolist() == [4, 1, 2, 3, 4]
        assert s.wrap

    def test_initial_unwrapped(self):
        s = Schedule.initial(4, wrap=False)
        assert s.order.tolist() == [4, 1, 2, 3]

    def test_det_chain_k4(self):
        # cyclic left shifts, each epoch ending on its own first subset
        s = Schedule.initial(4)
        seen = []
        for _ in range(5):
            s = set_schedule(s, "det")
            seen.append(s.order.tolist())
        assert seen == [
            [1, 2, 3, 4, 1],
            [2, 3, 4, 1, 2],
            [3, 4, 1, 2, 3],
            [4, 1, 2, 3, 4],
            [1, 2, 3, 4, 1],
        ]

    def test_det_chain_unwrapped(self):
        s = Schedule.initial(3, wrap=False)
        s = set_schedule(s, "det")
        assert s.order.tolist() == [1, 2, 3]

    def test_stoc_is_seeded_permutation(self):
        s0 = Schedule.initial(6)
        a = set_schedule(s0, "stoc", np.random.default_rng(42))
        b = set_schedule(s0, "stoc", np.random.default_rng(42))
        assert a.order.tolist() == b.order.tolist()
        core = a.order[:-1]
        assert sorted(core.tolist()) == [1, 2, 3, 4, 5, 6]
        assert a.order[-1] == a.order[0]

    def test_stoc_requires_rng(self):
        with pytest.raises(ValueError, match="rng"):
            set_schedule(Schedule.initial(3), "stoc")

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="mode"):
            set_schedule(Schedule.initial(3), "cyclic")


def single_entry_setup(value, eta=1.0, gamma=1.0, **kw):
    """1x1 rank-1 problem with x1 = 2, x2 = 3 and one observed value."""
    obs = SparseObservations([0], [0], [value], 1, 1)
    cover = stratify(obs, 1, "balanced")
    model = FactorModel(1, 1, 1, x=np.array([2.0, 3.0]))
    engine = GradientEngine(obs, cover, 1, 1)
    config = RunConfig(algorithm="hamsi", rank=1, eta=eta, gamma=gamma,
                       max_epochs=1, **kw)
    return obs, cover, model, engine, config


class TestMbgdEpoch:
    def test_hand_trace(self):
        # residual 1 - 2*3 = -5, gradient (-2r*x2, -2r*x1) = (30, 20),
        # beta(1) = 1: x goes from (2, 3) to (-28, -17)
        obs, cover, model, engine, config = single_entry_setup(1.0)
        config.algorithm = "mbgd"
        schedule = Schedule.initial(1, wrap=False)
        try:
            schedule = mbgd_epoch(model, cover, schedule, 1, engine, config,
                                  None)
        finally:
            engine.close()
        assert schedule.order.tolist() == [1]
        assert model.x.tolist() == [-28.0, -17.0]

    def test_zero_residual_fixed_point(self):
        obs, cover, model, engine, config = single_entry_setup(6.0)
        config.algorithm = "mbgd"
        schedule = Schedule.initial(1, wrap=False)
        try:
            mbgd_epoch(model, cover, schedule, 1, engine, config, None)
        finally:
            engine.close()
        assert model.x.tolist() == [2.0, 3.0]


class TestHamsiEpoch:
    def test_hand_trace_empty_memory(self):
        # sweep 1: residual -5, g = (30, 20), fallback step g/1
        #   -> x = (-28, -17), snapshot xbar = (2, 3), gbar = (30, 20)
        # sweep 2 (same subset): residual 1 - 476 = -475,
        #   g = (-16150, -26600) -> x = (16122, 26583)
        # pair s = x - xbar, y = g - gbar has s.y < 0: rejected
        obs, cover, model, engine, config = single_entry_setup(1.0)
        mem = LbfgsMemory(2, 4)
        schedule = Schedule.initial(1)
        snapshots = (model.x.copy(), np.zeros(2))
        try:
            schedule = hamsi_epoch(model, cover, mem, schedule, 1, engine,
                                   config, None, snapshots)
        finally:
            engine.close()
        assert schedule.order.tolist() == [1, 1]
        assert model.x.tolist() == [16122.0, 26583.0]
        assert mem.filled == 0

    def test_accepts_pair_with_positive_curvature(self):
        # near a minimum with a small step the objective is locally convex
        # enough for s.y > 0
        rng = np.random.default_rng(0)
        obs = ground_truth_problem(8, 6, 2)
        cover = stratify(obs, 2, "balanced")
        config = RunConfig(algorithm="hamsi", rank=2, eta=200.0, gamma=0.51,
                           max_epochs=1, seed=3)
        model = FactorModel(8, 6, 2)
        model.x[:] = rng.uniform(0.0, 0.3, model.num_params)
        engine = GradientEngine(obs, cover, 2, 1)
        mem = LbfgsMemory(model.num_params, 2)
        schedule = Schedule.initial(2)
        snapshots = (model.x.copy(), np.zeros(model.num_params))
        try:
            hamsi_epoch(model, cover, mem, schedule, 1, engine, config,
                        np.random.default_rng(0), snapshots)
        finally:
            engine.close()
        assert mem.filled == 1

    def test_strict_blocks_confines_full_memory_steps(self):
        # one observed entry in a 2x2 space: row 1 and column 1 have no
        # observations. A full memory extrapolates its dense correction
        # everywhere unless steps are confined to the subset's support.
        for strict in (False, True):
            obs = SparseObservations([0], [0], [5.0], 2, 2)
            cover = stratify(obs, 1, "balanced")
            model = FactorModel(2, 2, 1, x=np.array([2.0, 1.0, 3.0, 1.0]))
            engine = GradientEngine(obs, cover, 1, 1)
            config = RunConfig(algorithm="hamsi", rank=1, eta=1.0, gamma=1.0,
                               max_epochs=1, strict_blocks=strict)
            mem = LbfgsMemory(4, 1)
            assert mem.update(np.array([1.0, 2.0, 3.0, 4.0]), np.ones(4))
            schedule = Schedule.initial(1)
            snapshots = (model.x.copy(), np.zeros(4))
            try:
                hamsi_epoch(model, cover, mem, schedule, 1, engine, config,
                            None, snapshots)
            finally:
                engine.close()
            # x1 row 1 is index 1, x2 column 1 is index 3
            untouched = model.x[[1, 3]].tolist() == [1.0, 1.0]
            assert untouched == strict

    def test_divergence_raises_with_location(self):
        obs, cover, model, engine, config = single_entry_setup(
            1.0, eta=1e-8, gamma=0.51)
        mem = LbfgsMemory(2, 4)
        schedule = Schedule.initial(1)
        snapshots = (model.x.copy(), np.zeros(2))
        try:
            with pytest.raises(DivergenceError) as info:
                for t in range(1, 50):
                    schedule = hamsi_epoch(model, cover, mem, schedule, t,
                                           engine, config, None, snapshots)
        finally:
            engine.close()
        assert info.value.epoch >= 1
        assert info.value.subset == 1


class TestRunConfig:
    def test_validation_errors(self):
        good = dict(algorithm="hamsi", rank=2, eta=1.0, gamma=0.51,
                    max_epochs=1)
        RunConfig(**good).validate()
        bad = [
            dict(algorithm="sgd"),
            dict(schedule="sometimes"),
            dict(gamma=0.5),
            dict(gamma=1.01),
            dict(eta=0.0),
            dict(rank=0),
            dict(memory=0),
            dict(threads=0),
            dict(max_epochs=None, max_seconds=None),
        ]
        for change in bad:
            cfg = RunConfig(**{**good, **change})
            with pytest.raises(ValueError):
                cfg.validate()


class TestRun:
    def test_max_epochs_and_trace_columns(self):
        obs = ground_truth_problem(10, 8, 2)
        cover = stratify(obs, 2, "balanced")
        cfg = RunConfig(algorithm="hamsi", rank=2, eta=200.0, gamma=0.51,
                        max_epochs=7, seed=11)
        res = run(cfg, obs, cover)
        assert [r.epoch for r in res.trace] == list(range(1, 8))
        for r in res.trace:
            assert r.beta == beta(r.epoch, 200.0, 0.51)
            assert np.isfinite(r.rmse)
        assert res.gradient_seconds > 0.0
        # seconds column is cumulative
        secs = [r.seconds for r in res.trace]
        assert all(b >= a for a, b in zip(secs, secs[1:]))

    def test_final_rmse_matches_model(self):
        obs = ground_truth_problem(10, 8, 2)
        cover = stratify(obs, 2, "balanced")
        cfg = RunConfig(algorithm="mbgd", rank=2, eta=500.0, gamma=0.51,
                        max_epochs=5, seed=2)
        res = run(cfg, obs, cover)
        assert res.trace[-1].rmse == rmse(res.model, obs)

    def test_trajectory_deterministic_given_seed(self):
        obs = ground_truth_problem(12, 9, 2)
        cover = stratify(obs, 3, "balanced")
        for algo in ("hamsi", "mbgd"):
            cfg = RunConfig(algorithm=algo, rank=2, eta=300.0, gamma=0.51,
                            schedule="stoc", max_epochs=6, seed=7)
            a = run(cfg, obs, cover)
            b = run(cfg, obs, cover)
            assert [(r.epoch, r.rmse, r.beta) for r in a.trace] == \
                   [(r.epoch, r.rmse, r.beta) for r in b.trace]
            assert np.array_equal(a.model.x, b.model.x)

    def test_seed_changes_trajectory(self):
        obs = ground_truth_problem(12, 9, 2)
        cover = stratify(obs, 3, "balanced")
        cfg1 = RunConfig(algorithm="mbgd", rank=2, eta=300.0, gamma=0.51,
                         max_epochs=3, seed=1)
        cfg2 = RunConfig(algorithm="mbgd", rank=2, eta=300.0, gamma=0.51,
                         max_epochs=3, seed=2)
        a = run(cfg1, obs, cover)
        b = run(cfg2, obs, cover)
        assert a.trace[-1].rmse != b.trace[-1].rmse

    def test_max_seconds_is_a_cap(self):
        obs = ground_truth_problem(10, 8, 2)
        cover = stratify(obs, 2, "balanced")
        cfg = RunConfig(algorithm="mbgd", rank=2, eta=500.0, gamma=0.51,
                        max_seconds=0.4, count_rmse_time=True, seed=1)
        res = run(cfg, obs, cover)
        assert len(res.trace) >= 2
        # overrun, if any, is strictly smaller than the final epoch itself
        final_epoch = res.trace[-1].seconds - res.trace[-2].seconds
        assert res.trace[-1].seconds < 0.4 + final_epoch

    def test_divergence_carries_partial_results(self):
        obs = ground_truth_problem(10, 8, 2)
        cover = stratify(obs, 2, "balanced")
        cfg = RunConfig(algorithm="mbgd", rank=2, eta=1e-9, gamma=0.51,
                        max_epochs=50, seed=1)
        with pytest.raises(DivergenceError) as info:
            run(cfg, obs, cover)
        assert isinstance(info.value.trace, list)
        assert info.value.model is not None

    def test_validates_config(self):
        obs = ground_truth_problem(6, 5, 2)
        cover = stratify(obs, 2, "balanced")
        cfg = RunConfig(algorithm="nope", max_epochs=1)
        with pytest.raises(ValueError):
            run(cfg, obs, cover)


class TestGradientEngine:
    def reference_subset_gradient(self, model, obs, cover, k):
        idx = cover.subset_entries(k)
        out = np.zeros(model.num_params)
        return block_gradient(
            model, (obs.rows[idx], obs.cols[idx], obs.vals[idx]), out)

    def covers_for(self, obs, rng):
        yield stratify(obs, 3, "balanced")
        yield stratify(obs, 2, "equilength")
        yield pack_colors(greedy_color(obs, "first-fit"), 3, len(obs))
        yield hogwild_cover(len(obs), 3, rng)

    def test_subset_gradient_matches_reference(self):
        rng = np.random.default_rng(20)
        obs = random_obs(rng, 15, 12, 0.4)
        for cover in self.covers_for(obs, rng):
            # races make hogwild single-threaded only; disjoint schemes are
            # exercised threaded as well
            threads = (1,) if cover.scheme == "hogwild" else (1, 4)
            for nt in threads:
                engine = GradientEngine(obs, cover, 2, nt)
                model = FactorModel(15, 12, 2)
                model.x[:] = rng.uniform(0.2, 1.0, model.num_params)
                try:
                    for k in range(cover.K):
                        got = engine.subset_gradient(k, model)
                        want = self.reference_subset_gradient(
                            model, obs, cover, k)
                        assert np.allclose(got, want, rtol=1e-12, atol=1e-12), \
                            (cover.scheme, nt, k)
                finally:
                    engine.close()

    def test_subset_gradients_sum_to_full_gradient(self):
        rng = np.random.default_rng(21)
        obs = random_obs(rng, 10, 10, 0.5)
        cover = stratify(obs, 2, "balanced")
        model = FactorModel(10, 10, 2)
        model.x[:] = rng.uniform(0.2, 1.0, model.num_params)
        engine = GradientEngine(obs, cover, 2, 2)
        try:
            total = np.zeros(model.num_params)
            for k in range(cover.K):
                total += engine.subset_gradient(k, model)
        finally:
            engine.close()
        assert np.allclose(total, full_gradient(model, obs),
                           rtol=1e-12, atol=1e-12)

    def test_rmse_bitwise_identical_across_thread_counts(self):
        rng = np.random.default_rng(22)
        obs = random_obs(rng, 20, 20, 0.5)
        cover = stratify(obs, 2, "balanced")
        model = FactorModel(20, 20, 3)
        model.x[:] = rng.uniform(0.0, 0.5, model.num_params)
        values = []
        for nt in (1, 2, 4):
            engine = GradientEngine(obs, cover, 3, nt)
            try:
                values.append(engine.rmse(model))
            finally:
                engine.close()
        assert values[0] == values[1] == values[2]
        assert values[0] == rmse(model, obs)
