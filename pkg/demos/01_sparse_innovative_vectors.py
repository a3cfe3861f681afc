#!/usr/bin/env python3
"""Walkthrough: generating one sparse innovative vector for three receivers.

Three receivers over GF(3) have each collected a few encoding vectors.
The source wants a single new vector that is innovative to all of them
while staying as sparse as possible.
"""

from innocode import MatrixGF, UserState, assign_values, build_assignment_plan, cofactor_method, field_new

f3 = field_new(3)

# What each receiver has acknowledged so far (rows = encoding vectors).
received = {
    1: [[0, 1, 0]],
    2: [[1, 0, 1], [0, 1, 1]],
    3: [[1, 0, 0], [0, 2, 0]],
}

states = [UserState.from_matrix(uid, MatrixGF(f3, rows)) for uid, rows in received.items()]

print("Receiver status:")
for s in states:
    print(f"  user {s.user_id}: rank {s.rank}/3, pivot columns {s.pivots}, "
          f"tracked columns {sorted(s.workspace.col_map)}")

# Each receiver's square matrix is its received rows restricted to the
# tracked columns, with a symbolic row [x1 x2 x3] appended.  The last-row
# cofactors tell us which single component can fix that determinant.
plan = build_assignment_plan(states, f3)
print("\nLast-row cofactors and chosen components (1-based):")
for e in plan.entries:
    pretty = {c + 1: v for c, v in sorted(e.coeffs.items())}
    print(f"  user {e.user_id}: cofactors {pretty} -> works on x{e.chosen_index + 1}")

print(f"\nDistinct components to assign: {[j + 1 for j in plan.indices]}")
print(f"Groups sharing a component: {[[e.user_id for e in g] for g in plan.groups]}")

values = assign_values(plan, f3)
print(f"Assigned values: {({j + 1: v for j, v in values.items()})} (everything else 0)")

vec = cofactor_method(states, f3)
print(f"\nEncoding vector: {vec.to_dense().tolist()}  ({vec.nnz} nonzero of 3)")

for s in states:
    print(f"  innovative to user {s.user_id}? {s.is_innovative(vec)}")

print("\nDelivering it to everyone raises every rank by one:")
for s in states:
    s.receive(vec)
    print(f"  user {s.user_id}: rank {s.rank}/3" + ("  <- can decode now" if s.done else ""))
