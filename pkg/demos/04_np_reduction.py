#!/usr/bin/env python3
"""Walkthrough: why finding a binary innovative vector is hard.

Deciding whether one vector can be innovative to every receiver over
GF(2) encodes Boolean satisfiability: each 3-literal clause becomes a
receiver whose row space is the orthogonal complement of a small
constraint matrix, plus one receiver that forces the last coordinate
to 1.  Assignments and vectors translate back and forth, so the
decision problem inherits NP-completeness.
"""

import numpy as np

from innocode import (
    brute_force_iev,
    brute_force_sat,
    clause_matrix,
    eval_cnf,
    lift_assignment,
    parse_dimacs,
    project_vector,
    reduce_3sat_to_2iev,
)

DIMACS = """\
c (not x1 or not x2 or x3) and (x1 or x4 or not x3)
p cnf 4 2
-1 -2 3 0
1 4 -3 0
"""

cnf = parse_dimacs(DIMACS)
print(f"Formula: {cnf.n} variables, {cnf.m} clauses: {cnf.clauses}\n")

b1 = clause_matrix(cnf.clauses[0], cnf.n)
print("Constraint matrix of the first clause (negated literals also set")
print("the extra last column):")
print(np.array(b1.tolist()))

inst = reduce_3sat_to_2iev(cnf)
print(f"\nDerived instance: q={inst.q}, {inst.n_cols} columns, "
      f"{len(inst.user_matrices)} receivers")
for i, m in enumerate(inst.user_matrices, 1):
    print(f"  receiver {i} row space basis: {m.tolist()}")

assignment = brute_force_sat(cnf)
print(f"\nSmallest satisfying assignment: {assignment}")
lifted = lift_assignment(assignment)
print(f"Lifted vector (assignment plus trailing 1): {lifted.tolist()}")

vec = brute_force_iev(inst)
print(f"Smallest vector outside every row space: {vec.tolist()}")
back = project_vector(vec)
print(f"Projected back to an assignment: {back} -> formula value "
      f"{eval_cnf(cnf, back)}")

# The unsatisfiable core with all eight sign patterns has no innovative
# vector at all.
UNSAT = "p cnf 3 8\n" + "\n".join(
    f"{'-' if a else ''}1 {'-' if b else ''}2 {'-' if c else ''}3 0"
    for a in (0, 1) for b in (0, 1) for c in (0, 1)
)
unsat_inst = reduce_3sat_to_2iev(parse_dimacs(UNSAT))
print(f"\nAll-sign-patterns formula: satisfiable? "
      f"{brute_force_sat(parse_dimacs(UNSAT)) is not None}; "
      f"innovative vector? {brute_force_iev(unsat_inst) is not None}")
