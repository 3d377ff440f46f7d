"""Smoke tests for the python module: one pass over the main operations."""

import math

import msyds


def all_vertices(n):
    return list(range(n))


def test_dynamics_roundtrip():
    net = msyds.MultilayerNetwork(3, 1, [(0, 0, 1), (0, 1, 2)])
    assert net.n == 3 and net.k == 1
    assert net.closed_neighborhood(1, 0) == [0, 1, 2]

    sys = msyds.ThresholdSystem(net, msyds.MasterKind.OR, [1, 2, 1])
    c = msyds.Configuration.parse("101")
    assert msyds.score(net, c, 1, 0) == 2
    succ = sys.successor(c)
    assert str(succ) == "111"
    traj = msyds.trajectory(sys, c, 2)
    assert len(traj) == 3 and traj[2] == sys.successor(sys.successor(c))


def test_edge_list_parsing():
    net = msyds.load_edge_list("3 1\n0 0 1\n0 1 2\n")
    assert net.edge_count() == 2
    text = net.serialize()
    assert msyds.load_edge_list(text) == net


def test_learning_pipeline():
    rng = msyds.Rng(11)
    net = msyds.generate_multi_gnp(20, 2, 0.3, rng)
    tau = msyds.random_threshold_table(net, rng)
    target = msyds.ThresholdSystem(net, msyds.MasterKind.OR, tau)
    problem = msyds.LearningProblem.all_unknown(net, msyds.MasterKind.OR)
    sampler = msyds.BernoulliSampler(msyds.BernoulliDistribution(0.5), 20)

    training = msyds.make_training_set(target, sampler, 300, rng)
    h = msyds.pac_learn(problem, training)
    assert msyds.empirical_risk(h, training) == 0
    for v in range(20):
        for i in range(2):
            assert h.threshold(v, i) <= target.threshold(v, i)
    loss = msyds.estimate_true_error(h, target, sampler, 2000, rng)
    assert 0.0 <= loss <= 0.5


def test_bounds():
    assert msyds.sample_size_pac(0.1, 0.1, 10, 2) == 1060
    assert msyds.sample_size_pmac(0.1, 0.1, 0.5, 10, 2) == 212
    generic = msyds.sample_size_generic(0.1, 0.1, 10, 2, math.e)
    assert abs(generic - 223.0258509) < 1e-6


def test_ndim_toolkit():
    rng = msyds.Rng(5)
    net = msyds.generate_multi_gnp(10, 1, 0.4, rng)
    r = msyds.dfs_canonical_set(net, all_vertices(10))
    assert len(r) == 10
    assert msyds.is_canonical(net, r, all_vertices(10)) is not None

    two = msyds.generate_multi_gnp(6, 2, 0.5, rng)
    assert msyds.pnn_lower_bound(two, all_vertices(6)) <= 12
    assert msyds.qset_proportion_bound(1000, 2, 10) > 0.999

    q = msyds.QSet([(0, 0), (1, 1)])
    if msyds.q_set_check(two, all_vertices(6), q.pairs):
        cand = msyds.shatterable_from_qset(two, q)
        problem = msyds.LearningProblem.all_unknown(two, msyds.MasterKind.OR)
        assert msyds.shatter_oracle(problem, cand.entries)


def test_guard_raises():
    rng = msyds.Rng(1)
    net = msyds.generate_multi_gnp(4, 1, 0.5, rng)
    problem = msyds.LearningProblem.all_unknown(net, msyds.MasterKind.OR)
    entries = [msyds.Configuration.parse(format(i, "04b")) for i in range(13)]
    try:
        msyds.shatter_oracle(problem, entries)
        assert False, "guard should have raised"
    except RuntimeError:
        pass
