"""Rectilinear embeddings: composition, rotation classes and the arity table of KS.

    python3 demos/operad_tour.py
"""
from nccalc import operadgeo as og


def show(inv):
    order, rots = inv
    return f"order {order}, rotations {' '.join(str(r) for r in rots)}"


# a point of Mult(D, C_M; C_M): a square at radius [1/2, 3/4) and a shrunk module cylinder
e = og.parse_embedding("D,C_M->C_M: [1/4 1/2, 1/3 0] [1/2 0, 1 1/3]")
print("e          =", e)
print("invariant  =", show(og.cylinder_invariant(e)))

# rotations compose additively mod 1
r = og.parse_embedding("C_M->C_M: [1 0, 1 1/2]")
print("r o e      =", og.compose(r, [e]))
print("invariant  =", show(og.cylinder_invariant(og.compose(r, [e]))))

# pi_0 of little intervals: every linear order occurs
for n in range(5):
    print(f"orders of {n} intervals: {len(og.achievable_orders(n))}")

print(og.render_arity_table(og.arity_table("KS", 2)))
