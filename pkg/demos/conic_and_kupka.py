"""Local pictures: the conic singularity of omega at the origin and its transversal type.

    python3 demos/conic_and_kupka.py
"""
from foliage import fixtures as fx
from foliage.foliation import EXACT, omega_from_1d
from foliage.singular import (
    conic_diagnose,
    rotational_linear_part,
    sing_count_p2,
    transversal_type_at,
)
from foliage.text import format_form

for d in (2, 3):
    G = fx.acceptance_foliation(d)
    print(f"degree {d}: {sing_count_p2(G)} singular points on P^2 (expected {d * d + d + 1})")

omega = omega_from_1d(fx.acceptance_foliation(2))

# At the origin of C^3 the linear part of rot(omega) vanishes.
info = rotational_linear_part(omega, (0, 0, 0))
print("\nlinear part of rot at 0:", [[str(x) for x in row] for row in info.matrix], " nilpotent:", info.is_nilpotent)

rec, why = conic_diagnose(omega, (0, 0, 0), 2, EXACT)
print("conic NGK at 0:", rec is not None, f"({why})")
if rec is not None:
    print("normal type equals omega:", rec.normal_type == omega)

# Move the singular point to (1, 1, 1) and ask again.
p = (1, 1, 1)
moved = omega.translate(p)
rec_t, _ = conic_diagnose(moved, p, 2, EXACT)
print("after translation, same normal type:", rec_t is not None and rec_t.normal_type == omega)

tt = transversal_type_at(omega, fx.SING_POINT)
cl = tt.classification
print(f"\ntransversal type at [0:0:1]: trace {cl.info.trace}, det {cl.info.determinant}, "
      f"kupka type {cl.kupka_type}, hyperbolic {cl.hyperbolic_label}")
print("\nomega =", format_form(omega)[:120], "...")
