from fractions import Fraction
from itertools import combinations

import pytest

from corpoly.lp_exact import (LinearProgram, LpError, SimplexSolver,
                              parse_lp_file, solve, solve_many, to_lp_file)
from corpoly.rng import SplitMix64

F = Fraction


def _lp(rows, rhs, obj, nvars):
    names = ["x%d" % i for i in range(nvars)]
    constraints = [({names[j]: F(row[j]) for j in range(nvars) if row[j]},
                    F(b)) for row, b in zip(rows, rhs)]
    objective = {names[j]: F(c) for j, c in enumerate(obj) if c}
    return LinearProgram(names, constraints, objective)


def brute_force_optimum(lp: LinearProgram):
    """All-bases oracle: best objective over every basic feasible solution,
    by exact Gaussian elimination on each column subset."""
    names = lp.variables
    m = len(lp.constraints)
    best = None
    for cols in combinations(range(len(names)), m):
        A = [[F(lin.get(names[j], 0)) for j in cols]
             for lin, _ in lp.constraints]
        b = [F(rhs) for _, rhs in lp.constraints]
        # forward elimination with partial pivot by nonzero
        sol = _solve_square(A, b)
        if sol is None or any(x < 0 for x in sol):
            continue
        val = sum(F(lp.objective.get(names[j], 0)) * x
                  for j, x in zip(cols, sol))
        if best is None or val > best:
            best = val
    return best


def _solve_square(A, b):
    n = len(b)
    M = [row[:] + [bi] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col] != 0), None)
        if piv is None:
            return None  # singular
        M[col], M[piv] = M[piv], M[col]
        pr = M[col]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col] / pr[col]
                M[i] = [a - f * c for a, c in zip(M[i], pr)]
    return [M[i][n] / M[i][i] for i in range(n)]


def test_simple_optimal():
    # max x0 + x1 s.t. x0 + x1 + s = 1
    lp = _lp([[1, 1, 1]], [1], [1, 1, 0], 3)
    out = solve(lp)
    assert out.status == "optimal" and out.value == 1


def test_fractional_data():
    lp = _lp([[F(1, 3), F(1, 2), 1]], [F(5, 6)], [1, 1, 0], 3)
    out = solve(lp)
    assert out.status == "optimal"
    # all weight on the cheaper-coefficient column
    assert out.value == F(5, 2)


def test_infeasible():
    lp = _lp([[1, 1], [1, 1]], [1, 2], [1, 0], 2)
    assert solve(lp).status == "infeasible"


def test_unbounded():
    lp = _lp([[1, -1]], [1], [0, 1], 2)
    assert solve(lp).status == "unbounded"


def test_redundant_rows_survive_phase1():
    lp = _lp([[1, 1, 1], [2, 2, 2]], [1, 2], [1, 0, 0], 3)
    out = solve(lp)
    assert out.status == "optimal" and out.value == 1


def test_validate_rejects_unknown_names():
    with pytest.raises(LpError):
        LinearProgram(["a"], [({"b": F(1)}, F(0))], {}).validate()


def test_degenerate_cycling_prone_instance():
    # the classic cycling example for Dantzig's rule; must terminate and
    # match the all-bases oracle
    rows = [[1, 0, 0, F(1, 4), -60, F(-1, 25), 9],
            [0, 1, 0, F(1, 2), -90, F(-1, 50), 3],
            [0, 0, 1, 0, 0, 1, 0]]
    rhs = [0, 0, 1]
    obj = [0, 0, 0, F(3, 4), -150, F(1, 50), -6]
    lp = _lp(rows, rhs, obj, 7)
    out = solve(lp)
    assert out.status == "optimal"
    assert out.value == F(1, 20)
    assert out.value == brute_force_optimum(lp)


def _random_bounded_lp(rng, n=5, m=3):
    rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    x0 = [rng.randint(0, 3) for _ in range(n)]
    rhs = [sum(a * x for a, x in zip(row, x0)) for row in rows]
    # bounding simplex row keeps the primal bounded; last column is its slack
    rows = [row + [0] for row in rows] + [[1] * n + [1]]
    rhs = rhs + [20]
    obj = [rng.randint(-5, 5) for _ in range(n)] + [0]
    return _lp(rows, rhs, obj, n + 1)


def _dual_value(lp: LinearProgram):
    """Solve the dual (min b'y s.t. A'y >= c, y free) in the same
    standard form: y = yp - ym, surplus s, maximize -b'y."""
    m = len(lp.constraints)
    names = (["yp%d" % i for i in range(m)] + ["ym%d" % i for i in range(m)]
             + ["s_%s" % v for v in lp.variables])
    constraints = []
    for j, var in enumerate(lp.variables):
        lin = {}
        for i, (row, _) in enumerate(lp.constraints):
            a = F(row.get(var, 0))
            if a:
                lin["yp%d" % i] = a
                lin["ym%d" % i] = -a
        lin["s_%s" % var] = F(-1)
        constraints.append((lin, F(lp.objective.get(var, 0))))
    objective = {}
    for i, (_, b) in enumerate(lp.constraints):
        if b:
            objective["yp%d" % i] = F(-b)
            objective["ym%d" % i] = F(b)
    out = solve(LinearProgram(names, constraints, objective))
    assert out.status == "optimal"
    return -out.value


def test_strong_duality_on_seeded_instances():
    rng = SplitMix64(2024)
    for _ in range(10):
        lp = _random_bounded_lp(rng)
        out = solve(lp)
        assert out.status == "optimal"
        assert out.value == _dual_value(lp)


def test_solve_many_matches_fresh_solves():
    rng = SplitMix64(11)
    lp = _random_bounded_lp(rng)
    objectives = []
    for _ in range(5):
        objectives.append({name: F(rng.randint(-5, 5))
                           for name in lp.variables})
    outs = solve_many(lp, objectives)
    for obj, out in zip(objectives, outs):
        fresh = solve(LinearProgram(lp.variables, lp.constraints, obj))
        assert out.status == fresh.status == "optimal"
        assert out.value == fresh.value


def test_returned_points_satisfy_constraints_exactly():
    rng = SplitMix64(99)
    for _ in range(5):
        lp = _random_bounded_lp(rng)
        out = solve(lp)
        assert out.status == "optimal"
        for lin, b in lp.constraints:
            assert sum(c * out.point[v] for v, c in lin.items()) == b
        assert all(x >= 0 for x in out.point.values())


def test_lp_file_round_trip():
    lp = _lp([[F(1, 3), F(1, 2), 1], [1, -2, 0]], [F(5, 6), 0],
             [F(2, 7), -1, 0], 3)
    text = to_lp_file(lp)
    back = parse_lp_file(text)
    out1, out2 = solve(lp), solve(back)
    assert out1.status == out2.status == "optimal"
    assert out1.value == out2.value


def test_lp_file_is_deterministic():
    lp = _lp([[1, 2], [3, 4]], [5, 6], [1, 1], 2)
    assert to_lp_file(lp) == to_lp_file(lp)


def test_warm_start_preserved_after_first_solve():
    lp = _lp([[1, 1, 1]], [1], [1, 0, 0], 3)
    solver = SimplexSolver(lp)
    a = solver.solve_objective({"x0": F(1)})
    b = solver.solve_objective({"x1": F(2)})
    assert (a.value, b.value) == (1, 2)
