"""Walk through the calculus on the dual numbers k[x]/(x^2).

Prints Hochschild homology and cohomology, Connes' B on homology, and checks
the Cartan formula L_f = B i_f - (-1)^m i_f B class by class.

    python3 demos/calculus_tour.py [N]
"""
import sys

from nccalc import preset
from nccalc.hochcalc import (chains, cochains, connes_B, contraction, cup, lie_derivative,
                             on_homology)
from nccalc.hochcalc.operations import cartan_rhs

N = int(sys.argv[1]) if len(sys.argv) > 1 else 4
A = preset("truncated_polynomial", 2)
X = chains(A, N)
Y = cochains(A, N)

print(f"A = {A.name}, truncation N = {N} (degree {N} is provisional)")
print("HH_n :", X.betti(N - 1))
print("HH^n :", Y.betti(N - 1))


def show(M):
    return "[" + "; ".join(" ".join(A.field.render(x) for x in row) for row in M) + "]"


B = connes_B(X)
for n in range(N - 1):
    print(f"B on HH_{n} -> HH_{n + 1}:", show(on_homology(B, n)))

# contraction by each cohomology class, and the Lie derivative against B and i_f
for m in range(3):
    for k, f in enumerate(Y.cocycle_classes(m)):
        I = contraction(f, X)
        L = lie_derivative(f, X)
        R = cartan_rhs(f, X, B)
        agree = all(L[n] == on_homology(R, n) for n in L)
        print(f"class {m}.{k}: i_f on HH_{m} -> HH_0 = {show(on_homology(I, m))}, Cartan holds: {agree}")

# graded commutativity of the cup product on classes of degree 1
(f,) = Y.cocycle_classes(1)
print("[f u f] in HH^2 coordinates:", show([Y.express(cup(f, f))]))
