from coins.model import build_problem, post_constraint
from coins.oracle import count_solutions, excludes_value, is_nogood, solutions


def two_var_problem():
    p = build_problem([("x", [1, 2]), ("y", [1, 2])], k=1)
    post_constraint(p, "binary-neq", [0, 1])  # c0
    post_constraint(p, "binary-gt", [0, 1])  # c1
    return p


def test_solutions_default_uses_active_set():
    p = two_var_problem()
    assert solutions(p) == [{0: 2, 1: 1}]
    p.config.active.discard(1)
    p.config.relaxed.add(1)
    assert count_solutions(p) == 2  # only the disequality remains


def test_solutions_explicit_subset():
    p = two_var_problem()
    assert count_solutions(p, []) == 4
    assert count_solutions(p, [0]) == 2
    assert count_solutions(p, [0, 1]) == 1


def test_is_nogood():
    p = build_problem([("x", [1, 2])], k=1)
    post_constraint(p, "unary-neq", [0], payload=1)
    post_constraint(p, "unary-neq", [0], payload=2)
    assert not is_nogood(p, [0])
    assert is_nogood(p, [0, 1])


def test_excludes_value():
    p = two_var_problem()
    assert excludes_value(p, [1], 0, 1)  # x>y forbids x=1
    assert not excludes_value(p, [0], 0, 1)
    assert excludes_value(p, [0, 1], 1, 2)
