# Regenerates the frozen 2F1 reference values used in test_special.cpp.
import mpmath as mp

mp.mp.dps = 40

CASES = [
    ((0.5, 0), (-0.5, 0), (0.5, 0.3), 0.7),
    ((1.0, 0), (-1.0, 0), (0.5, 1.2), 0.95),
    ((1.0, 0), (-1.0, 0), (0.5, -0.25), 0.3),
    ((0.8, 0), (-0.8, 0), (0.5, 0.9), 0.99),
    ((1.3, 0.4), (0.2, -0.7), (2.1, 0.5), 0.6),
    ((1.5, 0), (0.5, 0), (1.5, 2.0), 0.999),
    ((0.7, 0.5), (-0.7, 0.5), (1.5, 0.5), 0.85),
]

for a, b, c, z in CASES:
    v = mp.hyp2f1(mp.mpc(*a), mp.mpc(*b), mp.mpc(*c), z)
    print(f"    {{{{{a[0]}, {a[1]}}}, {{{b[0]}, {b[1]}}}, {{{c[0]}, {c[1]}}}, {z}, "
          f"{{{mp.nstr(v.real, 20)}, {mp.nstr(v.imag, 20)}}}}},")
