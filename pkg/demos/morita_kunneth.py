"""Morita invariance and the Kunneth formula at desk scale.

    python3 demos/morita_kunneth.py
"""
from nccalc import preset
from nccalc.hochcalc import verify_kunneth, verify_morita

for A in (preset("ground_field"), preset("truncated_polynomial", 2)):
    rec = verify_morita(A, 2, 3)
    print(f"HH(M2({A.name})) = {rec['matrix_dims']}   HH({A.name}) = {rec['dims']}   ok={rec['ok']}")

D = preset("truncated_polynomial", 2)
rec = verify_kunneth(D, D, 4)
print("HH(dual x dual) =", rec["tensor_dims"])
print("convolution     =", rec["convolution"], " ok =", rec["ok"])
