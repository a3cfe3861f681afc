import json

import numpy as np
import pytest

from innocode.gf import field_new
from innocode.linalg import MatrixGF, row_space_contains
from innocode.reduction import (
    BudgetExceededError,
    Cnf,
    IevInstance,
    LastCoordinateZeroError,
    NotThreeCnfError,
    ParseError,
    brute_force_iev,
    brute_force_sat,
    clause_matrix,
    eval_cnf,
    lift_assignment,
    parse_dimacs,
    project_vector,
    reduce_3sat_to_2iev,
)
from innocode.verify import random_cnf

F2 = field_new(2)

UNSAT_3VARS = Cnf(
    n=3,
    clauses=[
        (1, 2, 3),
        (1, 2, -3),
        (1, -2, 3),
        (1, -2, -3),
        (-1, 2, 3),
        (-1, 2, -3),
        (-1, -2, 3),
        (-1, -2, -3),
    ],
)


def same_row_space(a: MatrixGF, b: MatrixGF) -> bool:
    return all(row_space_contains(a, b.row(i)) for i in range(b.rows)) and all(
        row_space_contains(b, a.row(i)) for i in range(a.rows)
    )


# -- parsing -------------------------------------------------------------


def test_parse_example_clause():
    cnf = parse_dimacs("p cnf 4 1\n-1 -2 3 0")
    assert cnf.n == 4 and cnf.m == 1
    assert cnf.clauses == [(-1, -2, 3)]


def test_parse_repeated_literals_allowed():
    cnf = parse_dimacs("p cnf 1 1\n1 1 1 0")
    assert cnf.clauses == [(1, 1, 1)]


def test_parse_rejects_short_clause():
    with pytest.raises(NotThreeCnfError):
        parse_dimacs("p cnf 2 1\n1 2 0")


def test_parse_comments_and_multiline_clauses():
    cnf = parse_dimacs("c comment\np cnf 3 2\n1 2 3 0\n-1\n-2 -3 0\n")
    assert cnf.m == 2
    assert cnf.clauses[1] == (-1, -2, -3)


@pytest.mark.parametrize(
    "text",
    [
        "1 2 3 0",  # no header
        "p cnf x 1\n1 2 3 0",
        "p cnf 3 2\n1 2 3 0",  # clause count mismatch
        "p cnf 3 1\n1 2 3",  # unterminated
        "p cnf 3 1\n1 2 4 0",  # variable out of range
        "p cnf 3 1\np cnf 3 1\n1 2 3 0",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


# -- eval / sat oracles -----------------------------------------------------


def test_eval_cnf_examples():
    cnf = parse_dimacs("p cnf 3 1\n-1 -2 3 0")
    assert eval_cnf(cnf, [True, True, True])
    assert not eval_cnf(cnf, [True, True, False])


def test_brute_force_sat_smallest_assignment():
    cnf = parse_dimacs("p cnf 2 2\n1 1 1 0\n2 2 2 0")
    assert brute_force_sat(cnf) == [True, True]
    cnf = parse_dimacs("p cnf 2 1\n-1 -1 2 0")
    assert brute_force_sat(cnf) == [False, False]


def test_brute_force_sat_unsat_core():
    assert brute_force_sat(UNSAT_3VARS) is None


def test_brute_force_sat_budget():
    with pytest.raises(BudgetExceededError):
        brute_force_sat(Cnf(n=25, clauses=[]))


# -- construction -------------------------------------------------------------


def test_clause_matrix_example():
    b = clause_matrix((-1, -2, 3), 4)
    assert b.tolist() == [
        [1, 0, 0, 0, 1],
        [0, 1, 0, 0, 1],
        [0, 0, 1, 0, 0],
    ]


def test_reduction_example_matrices():
    cnf = Cnf(n=4, clauses=[(-1, -2, 3)])
    inst = reduce_3sat_to_2iev(cnf)
    assert (inst.q, inst.n_cols, len(inst.user_matrices)) == (2, 5, 2)
    expected = MatrixGF(F2, [[0, 0, 0, 1, 0], [1, 1, 0, 0, 1]])
    assert same_row_space(inst.user_matrices[0], expected)


def test_reduction_empty_formula():
    inst = reduce_3sat_to_2iev(Cnf(n=1, clauses=[]))
    assert len(inst.user_matrices) == 1
    assert same_row_space(inst.user_matrices[0], MatrixGF(F2, [[1, 0]]))


def test_reduction_user_count():
    cnf = random_cnf(np.random.default_rng(1), 6, 9)
    inst = reduce_3sat_to_2iev(cnf)
    assert len(inst.user_matrices) == cnf.m + 1


def test_reduction_orthogonality():
    rng = np.random.default_rng(2)
    for _ in range(20):
        cnf = random_cnf(rng, int(rng.integers(3, 9)), int(rng.integers(1, 10)))
        inst = reduce_3sat_to_2iev(cnf)
        for clause, c_i in zip(cnf.clauses, inst.user_matrices):
            b_i = clause_matrix(clause, cnf.n)
            assert not ((b_i.a @ c_i.a.T) % 2).any()


def test_membership_duality_exhaustive():
    rng = np.random.default_rng(3)
    for _ in range(5):
        n = int(rng.integers(3, 7))
        cnf = random_cnf(rng, n, int(rng.integers(1, 6)))
        inst = reduce_3sat_to_2iev(cnf)
        vectors = ((np.arange(2 ** (n + 1))[:, None] >> np.arange(n, -1, -1)) & 1).astype(
            np.int64
        )
        for clause, c_i in zip(cnf.clauses, inst.user_matrices):
            b_i = clause_matrix(clause, n)
            for v in vectors:
                in_space = row_space_contains(c_i, v)
                orthogonal = not ((b_i.a @ v) % 2).any()
                assert in_space == orthogonal


# -- witnesses ----------------------------------------------------------------


def test_lift_examples():
    assert lift_assignment([1, 0, 1, 1]).tolist() == [1, 0, 1, 1, 1]
    assert lift_assignment([]).tolist() == [1]


def test_project_examples():
    assert project_vector([1, 0, 1, 1, 1]) == [True, False, True, True]
    with pytest.raises(LastCoordinateZeroError):
        project_vector([0, 0, 1, 0])


def test_satisfying_assignment_lifts_to_solution():
    rng = np.random.default_rng(5)
    found = 0
    while found < 30:
        cnf = random_cnf(rng, int(rng.integers(3, 9)), int(rng.integers(1, 12)))
        sat = brute_force_sat(cnf)
        if sat is None:
            continue
        lifted = lift_assignment(sat)
        inst = reduce_3sat_to_2iev(cnf)
        assert all(not row_space_contains(u, lifted) for u in inst.user_matrices)
        found += 1


# -- brute-force IEV decision ---------------------------------------------------


def test_iev_single_rank_deficient_user():
    inst = IevInstance(q=2, n_cols=3, user_matrices=[MatrixGF(F2, [[1, 0, 0], [0, 1, 0]])])
    v = brute_force_iev(inst)
    assert v.tolist() == [0, 0, 1]  # lexicographically smallest non-member
    # exactly 2**(N-1) vectors sit outside a rank N-1 row space
    outside = [
        bits
        for t in range(8)
        for bits in [[(t >> 2) & 1, (t >> 1) & 1, t & 1]]
        if not row_space_contains(inst.user_matrices[0], bits)
    ]
    assert len(outside) == 4
    assert outside[0] == [0, 0, 1]


def test_iev_budget():
    inst = IevInstance(q=2, n_cols=3, user_matrices=[MatrixGF(F2, [[1, 0, 0]])])
    with pytest.raises(BudgetExceededError):
        brute_force_iev(inst, budget=4)


def test_iev_unsat_reduction_has_no_solution():
    inst = reduce_3sat_to_2iev(UNSAT_3VARS)
    assert brute_force_iev(inst) is None


def test_iev_solutions_end_in_one():
    rng = np.random.default_rng(7)
    found = 0
    while found < 20:
        cnf = random_cnf(rng, int(rng.integers(3, 8)), int(rng.integers(1, 10)))
        inst = reduce_3sat_to_2iev(cnf)
        v = brute_force_iev(inst)
        if v is None:
            continue
        assert int(v[-1]) == 1
        assert eval_cnf(cnf, project_vector(v))
        found += 1


def test_instance_validation():
    with pytest.raises(ValueError):
        IevInstance(q=2, n_cols=2, user_matrices=[MatrixGF(F2, np.eye(2, dtype=np.int64))])
    with pytest.raises(ValueError):
        IevInstance(q=2, n_cols=3, user_matrices=[MatrixGF(F2, [[1, 1, 0], [1, 1, 0]])])
    with pytest.raises(ValueError):
        IevInstance(q=2, n_cols=3, user_matrices=[MatrixGF(F2, [[1, 0]])])


def test_instance_json_round_trip():
    inst = reduce_3sat_to_2iev(Cnf(n=4, clauses=[(-1, -2, 3)]))
    data = json.loads(inst.to_json())
    assert set(data) == {"q", "n_cols", "users"}
    assert data["q"] == 2 and data["n_cols"] == 5
    back = IevInstance.from_json(inst.to_json())
    assert [m.tolist() for m in back.user_matrices] == [
        m.tolist() for m in inst.user_matrices
    ]


def test_sat_iev_equivalence_sample():
    rng = np.random.default_rng(9)
    for _ in range(40):
        cnf = random_cnf(rng, int(rng.integers(3, 9)), int(rng.integers(1, 15)))
        sat = brute_force_sat(cnf)
        vec = brute_force_iev(reduce_3sat_to_2iev(cnf))
        assert (sat is None) == (vec is None)
