"""Classify the axis equilibria (0,0,0,0,c) leaf by leaf.

On each symplectic leaf the linearizations of the energy and of the second
invariant span a pencil of 4x4 matrices. The characteristic polynomial of a
generic pencil member is biquadratic with a sign-definite discriminant, so a
single leaf parameter c decides the local picture: focus-focus and unstable
for c > 0, center-center and stable for c < 0. The boundary leaf c = 0 is
degenerate and needs an algebraic argument instead of eigenvalues.
"""

from mbloch import equilibria

print("c      kind            stability        discriminant")
for c in (4.0, 1.0, 0.25, -0.25, -1.0, -4.0):
    res = equilibria.cartan_classify([0, 0, 0, 0, c], c)
    print(f"{c:5.2f}  {res.kind:<14}  {res.stable:<15}  {res.discriminant:.6g}")

print()
print("the degenerate leaf c = 0")
res = equilibria.cartan_classify([0, 0, 0, 0, 0.0], 0.0)
print(f"  spectral verdict: {res.kind}, {res.stable}")

cert = equilibria.origin_stability_certificate(2.0, 21)
print("  algebraic certificate: the level sets H = I = C = 0 meet only at")
print(f"  the origin on the grid; unique_solution = {cert.unique_solution}")
for eps, worst in cert.max_norm_by_eps.items():
    print(f"    eps = {eps:.0e}: largest |p| with all three below eps"
          f" is {worst:.3g}")
