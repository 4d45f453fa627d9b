"""Independent oracle for the worked 3-variable example over GF(65521).

Lex Groebner bases from sympy give shape-lemma parametrizations of the start
subsystems and of the target system with x3 as the last (parameter) variable.
"""
from sympy import symbols, groebner, Poly, GF, Matrix
from sympy.polys.domains import ZZ

P = 65521
x1, x2, x3 = symbols("x1 x2 x3")

g = 99*x1**3 + 92*x1**2 - 228*x1*x2 + 67*x1 - 140*x2 + 98*x3 + 25
F = Matrix([
    [9*x1**2 + 65471*x1 + 59*x2 + 42308*x3 + 65504,
     86*x1**2 + 65460*x1 + 65414*x2 + 12381*x3 + 44,
     65477*x1 + 59898*x3 + 76],
    [65501*x1**2 + 51*x1 + 65466*x2 + 57496*x3 + 35,
     16*x1**2 + 99*x1 + 65503*x2 + 17950*x3 + 31,
     65454*x1 + 41178*x3 + 65453],
])
r = 88*x1**3 - 82*x1**2 - 70*x1*x2 + 41*x1 + 91*x2 + 29*x3 + 70
m1 = -78*x1**2 - 4*x1 + 5*x2 - 91*x3 - 44
m2 = 63*x1**2 + 10*x1 - 61*x2 - 26*x3 - 20
m3 = 88*x1 + 95*x3 + 9


def shape(system):
    G = groebner(system, x1, x2, x3, order="lex", modulus=P)
    out = []
    for gen in G.exprs:
        out.append(Poly(gen, x1, x2, x3, modulus=P))
    return out


def coeffs_low_high(expr_poly_in_x3):
    p = Poly(expr_poly_in_x3, x3, modulus=P)
    c = [int(v) % P for v in reversed(p.all_coeffs())]
    return c


def show(name, system):
    G = shape(system)
    print(name)
    for gen in G:
        print("   ", gen.as_expr())


minors = [F[0, 0]*F[1, 1] - F[0, 1]*F[1, 0],
          F[0, 0]*F[1, 2] - F[0, 2]*F[1, 0],
          F[0, 1]*F[1, 2] - F[0, 2]*F[1, 1]]
show("V1", [m1, m2, r])
show("V2", [m1, m3, r])
show("V3", [m2, m3, r])
show("target", [g] + minors)
