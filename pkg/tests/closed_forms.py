"""Hand-expanded formulas for B_{p,q}(zeta), written directly in group coordinates."""

from hopforders.exactnum import root_of_unity
from hopforders.hopf import HopfAlgebra


def twisted_structure(B: HopfAlgebra, p: int, q: int, r: int, zeta_exponent: int = 1) -> dict:
    G, K = B.group, B.field
    s, a, t, b = (G.gen(x) for x in "satb")
    P, M = G.power, G.prod

    def z(e):
        return root_of_unity(K, p, e * zeta_exponent) / p

    dA, dB, sA, sB = {}, {}, {}, {}

    def acc(d, k, c):
        d[k] = d.get(k, K.zero) + c

    for u in range(p):
        for j in range(p):
            acc(dA, (M(a, P(t, u)), P(a, pow(r, j, q))), z(-u * j))
            acc(dB, (P(b, pow(r, u, q)), M(b, P(s, j))), z(-u * j))
            acc(sA, M(P(a, -pow(r, -j, q)), P(t, u)), z(-u * j))
            acc(sB, M(P(b, -pow(r, j, q)), P(s, u)), z(u * j))
    return {
        "Delta_a": B.tensor_element(dA),
        "Delta_b": B.tensor_element(dB),
        "S_a": B.element(sA),
        "S_b": B.element(sB),
    }


def computed_structure(B: HopfAlgebra) -> dict:
    G = B.group
    a, b = B.basis(G.gen("a")), B.basis(G.gen("b"))
    return {"Delta_a": B.Delta(a), "Delta_b": B.Delta(b), "S_a": B.S(a), "S_b": B.S(b)}
