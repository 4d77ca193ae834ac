"""Compare parent enumeration with and without empty parent borders.

Letter-only parents give the 1293/1294 counts. Allowing empty parent
borders adds templates whose instances may have every block empty, which
the decision procedure must not use; this prints one such template.

    python scripts/compare_enumerations.py
"""

from abeliandecide import Morphism, find_abelian_power, find_instance, fixed_point_prefix
from abeliandecide.templates import EPSILON, ancestor_closure, parents, power_template


def main():
    mu = Morphism.from_strings("1123", "133", "223")
    T3 = power_template(3, 3)
    for empty in (False, True):
        ps = parents(T3, mu, empty_borders=empty)
        c = ancestor_closure(mu, 3, empty_borders=empty)
        print(f"empty_borders={empty!s:5}  parents={len(ps):5}  generations={[len(g) for g in c.generations]}")

    c = ancestor_closure(mu, 3, empty_borders=True)
    prefix = fixed_point_prefix(mu, 200)
    for t in c.templates:
        if t == T3 or all(a == EPSILON for a in t.borders):
            continue
        occ = find_instance(prefix, t)
        if occ is not None and all(s == e for s, e in occ.blocks):
            print(f"spurious: {t} realized by {occ.render(prefix)!r} with empty blocks")
            break
    print("abelian cube in 10^4 prefix:", find_abelian_power(fixed_point_prefix(mu, 10**4), 3))


if __name__ == "__main__":
    main()
