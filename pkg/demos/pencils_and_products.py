"""Resolve pencils, read off the complete ideal they generate, and check the
intersection of general members against the contact number of the ideals.

Run with ``python3 demos/pencils_and_products.py``.
"""

from reesval.contact import completion_spec, contact_ideal, verify_4_6_1, verify_4_6_3
from reesval.exactfield import QQField, parse_poly
from reesval.pencil import Pencil, resolve, zariski_exponents

def poly(text):
    return parse_poly(text, QQField, ("X", "Y"))

for F, G in (("Y^2", "X^3"), ("Y*(Y - X^2)", "X^5"), ("Y^2*(Y - X)", "X^4")):
    pen = Pencil(F, G)
    tree = resolve(pen, check=True)
    print(f"pencil ({F}, {G}): base points")
    print("  " + tree.text().replace("\n", "\n  "))
    for V, n in zariski_exponents(pen, tree):
        print(f"  simple factor {V} to the power {n}")
    I = completion_spec(poly(F), poly(G))
    print(f"  self contact of the completion: {contact_ideal(I, I)}\n")

for quad in (("Y^2", "X^3", "Y", "X"), ("Y*(Y - X^2)", "X^5", "Y^2", "X^3")):
    F, G, Fs, Gs = map(poly, quad)
    for rep in (verify_4_6_1(F, G, Fs, Gs), verify_4_6_3(F, G, Fs, Gs)):
        print(f"{rep.claim} on {quad}: {rep.status}, lhs={rep.values['lhs']}, "
              f"rhs={rep.values['rhs']}")
