"""Writes sec4_classes.txt from the closed forms of the worked example.

Factors: h1 is the hyperplane class of P3, h2 and h3 those of the two P1
factors. Classes are rendered canonically: terms by ascending total
degree, then by descending exponent vector; coefficient 1 and exponent 1
omitted.
"""


def render(terms):
    terms = {e: c for e, c in terms.items() if c != 0}
    if not terms:
        return "0"
    order = sorted(terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    out = []
    for i, e in enumerate(order):
        c = terms[e]
        factors = [f"h{j + 1}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x > 0]
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def classes(l):
    return [
        ("c1(T_X)", {(1, 0, 0): 3 - l, (0, 1, 0): 1, (0, 0, 1): 2}),
        ("c2(T_X)", {(1, 1, 0): 4 - l, (1, 0, 1): 6 - 2 * l, (2, 0, 0): 3 - 3 * l + l * l, (0, 1, 1): 2}),
        ("s1(N*_F)", {(0, 1, 0): 2, (0, 0, 1): 2}),
        ("s2(N*_F)", {(0, 1, 1): 4}),
        ("[X]", {(2, 0, 0): l, (1, 1, 0): l}),
        ("LHS", {(3, 1, 0): l * (l - 1) ** 2}),
    ]


with open("sec4_classes.txt", "w") as f:
    for l in range(2, 13):
        for name, terms in classes(l):
            f.write(f"L = {l}: {name} = {render(terms)}\n")
