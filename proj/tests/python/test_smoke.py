import math

import pytest

import rbcsp


def benchmark_params(n=59):
    return rbcsp.CspParams("rb", k=2, n=n, alpha=0.8, r=0.8 / math.log(4 / 3), p=0.25)


def test_sizes_and_thresholds():
    sizes = rbcsp.derive_sizes(benchmark_params())
    assert (sizes.d, sizes.m, sizes.q) == (26, 669, 169)
    assert rbcsp.p_threshold(0.8, 0.8 / math.log(4 / 3)) == pytest.approx(0.25, abs=1e-12)
    assert rbcsp.r_threshold(0.8, rbcsp.p_threshold(0.8, 1.5)) == pytest.approx(1.5, rel=1e-12)
    assert all(ok for ok, _ in rbcsp.check_conditions(benchmark_params()).values())


def test_generate_is_deterministic_and_forced_is_sat():
    params = rbcsp.CspParams("rb", n=14, alpha=0.6, r=1.2, p=0.3)
    a = rbcsp.generate(params, 5, forced=True)
    b = rbcsp.generate(params, 5, forced=True)
    assert a.to_native() == b.to_native()
    assert a.check(a.forced)
    result = rbcsp.solve(a, heuristic="mrv")
    assert result["status"] == "SAT"
    assert a.check(result["witness"])
    assert rbcsp.read_native(a.to_native()).to_native() == a.to_native()


def test_cnf_and_solvers_agree():
    params = rbcsp.CspParams("rd", n=5, alpha=math.log(3) / math.log(5), r=6 / (5 * math.log(5)), p=0.3)
    for seed in range(20):
        inst = rbcsp.generate(params, seed)
        num_vars, clauses = rbcsp.encode_cnf(inst)
        count = rbcsp.enumerate_solutions(inst)
        assert rbcsp.dpll(num_vars, clauses, count_all=True)["solutions"] == count
        assert rbcsp.solve(inst, count_all=True)["solutions"] == count
    assert inst.to_dimacs().count("\np cnf ") == 1


def test_analysis_functions():
    params = rbcsp.CspParams("rd", n=4, alpha=math.log(3) / math.log(4), r=6 / (4 * math.log(4)), p=0.3)
    assert math.exp(rbcsp.first_moment_log(params)) == pytest.approx(9.52956, abs=1e-4)
    profile = [row[2] for row in rbcsp.distance_profile(params, forced=True)]
    assert rbcsp.log_sum_exp(profile) == pytest.approx(rbcsp.forced_expected_count_log(params), rel=1e-9)
    argmax, _ = rbcsp.maximize_exponent(lambda x: rbcsp.threesat_profile_exponent(x, 4.25, True))
    assert 0.23 <= argmax <= 0.25
    assert rbcsp.flawed_prob_rb(2, 2, 2, 1) == pytest.approx(1 / 6, abs=1e-15)
    assert rbcsp.flawed_prob_rd(2, 0.5, 1) == pytest.approx(0.25)


def test_experiments():
    base = rbcsp.CspParams("rb", n=12, alpha=0.8, r=1.5, p=0.4)
    rows = rbcsp.sweep(base, "p", [0.0, 1.0], samples=10, threads=1)
    assert [row["sat_fraction"] for row in rows] == [1.0, 0.0]
    scale = rbcsp.scaling_study(base, [8, 10], samples=5, threads=1)
    assert [row["n"] for row in scale] == [8, 10]
    summary = rbcsp.forced_vs_random(base, samples=10, seed=1, threads=1)
    assert summary["forced_samples"] == 10


def test_errors_are_raised():
    with pytest.raises(rbcsp.RbcspError):
        rbcsp.derive_sizes(rbcsp.CspParams("rb", n=4, alpha=0.1))
    with pytest.raises(rbcsp.ParseError):
        rbcsp.read_native("RBCSP 1\nbogus\n")
    with pytest.raises(rbcsp.RbcspError):
        rbcsp.CspParams("xx")
