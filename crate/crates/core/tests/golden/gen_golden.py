"""Regenerate the golden relation polynomials with sympy.

Independent of the Rust kernel: Z = adj(Y) M Y is expanded by sympy and the
combining formulas are applied verbatim. Output uses the canonical text form
(monomials lex-descending in X11 > X12 > X21 > X22, then constants
lex-descending in the order a, b, d11, d12, d21, p).

    python3 gen_golden.py
"""
from pathlib import Path
from sympy import Matrix, Poly, Rational, expand, reduced, symbols

X11, X12, X21, X22 = X = symbols("X11 X12 X21 X22")
CONSTS = symbols("a b d11 d12 d21 p")
a, b, d11, d12, d21, p = CONSTS

Y = Matrix([[X11, X12], [X21, X22]])
M = Matrix([[a, 0], [b, -a]])
AdjY = Matrix([[X22, -X12], [-X21, X11]])
Z = (AdjY * M * Y).applyfunc(expand)
Z11, Z12, Z21, Z22 = Z[0, 0], Z[0, 1], Z[1, 0], Z[1, 1]

Q12 = Z12 - p * p * d12
W11 = p * (Z11 - d11)
Ra = d12 * d21 * d21 * p * p + d12 * p * p + d21 * d21 * Z12
Rb = 2 * d11 * d21 * p * Z12 - 2 * d12 * d21 * p * p * W11
Rc = -2 * d11 * p * W11 * Z12 + d21 * Z12 * Z12 - p * p * Z12 * Z12 * Z21
Rd = d12 * Q12 * Q12 + 4 * d11 * p * p * Z12 * Z12 * Z21 - 2 * d11 * p * Z12 * W11
R3 = d21 * Rb - 2 * d11 * p * Ra
R4 = d21 * Rc - Q12 * Ra
R5 = d21 * Z12 * Z21 + d21 * (Z11 + d11) ** 2 - d12 * Z12 * Z12 - d11 * d21 * (Z11 + d11)

CASES = {"ram0": Z12, "ram": R3, "ram2": R4, "ram3": Rd, "ram4": Ra, "ram5": R5}
NAMES = [str(s) for s in CONSTS] + [str(x) for x in X]


def factor_list(exps, names):
    out = []
    for e, n in zip(exps, names):
        if e == 1:
            out.append(n)
        elif e > 1:
            out.append(f"{n}^{e}")
    return out


def canonical(expr):
    expr = expand(expr)
    if expr == 0:
        return "0"
    poly = Poly(expr, *X, *CONSTS)
    terms = sorted(poly.terms(), key=lambda t: t[0], reverse=True)
    parts = []
    for i, (exps, c) in enumerate(terms):
        c = Rational(c)
        xs = factor_list(exps[:4], [str(x) for x in X])
        cs = factor_list(exps[4:], [str(s) for s in CONSTS])
        factors = cs + xs
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def main():
    here = Path(__file__).parent
    g = X11 * X22 - X12 * X21 - 1
    for name, expr in CASES.items():
        (here / f"{name}.txt").write_text(canonical(expr) + "\n")
        _, r = reduced(expand(expr), [g], *X, order="lex")
        (here / f"{name}.remainder.txt").write_text(canonical(r) + "\n")


if __name__ == "__main__":
    main()
