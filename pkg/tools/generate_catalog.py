"""Produce the built-in category data files.

Each dataset is constructed from its fusion rules: fixed-gauge F/R seed
values (with small exact sign/root searches where a convention is not forced)
are checked against the full axiom suite -- pentagon, hexagon, ribbon,
duality/snakes, s-matrix, Verlinde -- and only a fully verified solution is
written out.  Run from the repository root:

    python3 tools/generate_catalog.py [outdir]

This is a maintenance utility, not part of the public API.
"""

import itertools
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cardykit.category import CategoryData, verify_category  # noqa: E402
from cardykit.catalog import format_category, parse_category  # noqa: E402
from cardykit.scalars import Cyc  # noqa: E402


def _verify_or_none(cat):
    rep = verify_category(cat)
    return cat if rep.ok() else None


def build_vec():
    one = Cyc.one(1)
    cat = CategoryData("vec", ["1"], [0], {}, {}, {}, [one], [one], 1)
    return _verify_or_none(cat), "trivial category; one simple, all data empty"


def build_semion():
    n = 4
    one = Cyc.one(n)
    i = Cyc.zeta(n)
    fusion = {(1, 1): {0: 1}}
    for sign in (1, -1):
        for r1 in (i, -i):
            theta = r1  # forced by the ribbon relation R^2 = theta^{-2} up to sign
            for th in (theta, -theta):
                fsym = {(1, 1, 1, 1): {((0, 0, 0), (0, 0, 0)): one.scale_int(sign) if hasattr(one, 'scale_int') else Cyc.rational(sign, n)}}
                rsym = {(1, 1, 0): {(0, 0): r1}}
                for pivot in (Cyc.rational(1, n), Cyc.rational(-1, n)):
                    try:
                        cat = CategoryData("semion", ["1", "s"], [0, 1], fusion,
                                           fsym, rsym, [one, th], [one, pivot], n)
                    except Exception:
                        continue
                    if cat.quantum_dim(1) != Cyc.one(n):
                        continue
                    if verify_category(cat).ok():
                        return cat, (f"gauge: F[s,s,s;s] = {sign}; chirality fixed by "
                                     f"R[s,s;1] = {r1}; pivot {pivot} makes dim s = +1")
    return None, ""


def build_fibonacci():
    n = 5
    one = Cyc.one(n)
    z = Cyc.zeta(n)
    phi = one + z + z ** 4
    fusion = {(1, 1): {0: 1, 1: 1}}
    # rational gauge: off-diagonal F entries split as (1/phi, 1) instead of
    # the symmetric 1/sqrt(phi), keeping all data inside Q(zeta_5)
    for split in (((phi.inv(), one)), ((one, phi.inv()))):
        up, low = split
        fsym = {
            (1, 1, 1, 1): {
                ((0, 0, 0), (0, 0, 0)): phi.inv(),
                ((0, 0, 0), (1, 0, 0)): up,
                ((1, 0, 0), (0, 0, 0)): low,
                ((1, 0, 0), (1, 0, 0)): -phi.inv(),
            },
            (1, 1, 1, 0): {((1, 0, 0), (1, 0, 0)): one},
        }
        for r0, r1, th in ((z ** 3, -(z ** 4), z ** 2), (z ** 2, -z, z ** 3)):
            rsym = {(1, 1, 0): {(0, 0): r0}, (1, 1, 1): {(0, 0): r1}}
            try:
                cat = CategoryData("fibonacci", ["1", "tau"], [0, 1], fusion,
                                   fsym, rsym, [one, th], [one, one], n)
            except Exception:
                continue
            if verify_category(cat).ok():
                return cat, ("rational gauge over Q(zeta_5): F[tau,tau,tau;tau] = "
                             "[[1/phi, a],[b, -1/phi]] with a*b = 1/phi, phi = 1+z+z^4; "
                             f"chirality: R[tau,tau;1] = {r0}")
    return None, ""


def build_ising():
    n = 16
    one = Cyc.one(n)
    z = Cyc.zeta(n)
    rt2 = z + z ** 15  # sqrt(2)
    inv_rt2 = rt2.inv()
    labels = ["1", "sigma", "psi"]
    fusion = {(1, 1): {0: 1, 2: 1}, (1, 2): {1: 1}, (2, 1): {1: 1}, (2, 2): {0: 1}}
    # 1x1 F blocks whose signs are fixed by the pentagon; search all of them
    small_keys = [(1, 1, 2, 2), (1, 2, 1, 0), (1, 2, 1, 2), (1, 2, 2, 1),
                  (2, 1, 1, 0), (2, 1, 1, 2), (2, 1, 2, 1), (2, 2, 1, 1),
                  (2, 2, 2, 2)]

    def f_entry(a, b, c, d):
        # single admissible (e, f) pair for each small block
        es = [e for e in range(3) if _n(fusion, a, b, e) and _n(fusion, e, c, d)]
        fs = [f for f in range(3) if _n(fusion, b, c, f) and _n(fusion, a, f, d)]
        return es[0], fs[0]

    seeds = {(1, 2, 1, 2): -1, (2, 1, 2, 1): -1}
    orders = [seeds] + [dict(zip(small_keys, signs))
                        for signs in itertools.product((1, -1), repeat=len(small_keys))]
    r_families = []
    for conj in (1, 15):
        zz = z ** conj
        r_families.append({
            (1, 1, 0): zz ** 15, (1, 1, 2): zz ** 3, (2, 2, 0): -one,
            (1, 2, 1): zz ** 12, (2, 1, 1): zz ** 12,
            "theta_sigma": zz, "theta_psi": -one,
        })
        r_families.append({
            (1, 1, 0): zz ** 1, (1, 1, 2): zz ** 13, (2, 2, 0): -one,
            (1, 2, 1): zz ** 4, (2, 1, 1): zz ** 4,
            "theta_sigma": zz ** 15, "theta_psi": -one,
        })
    for signs in orders:
        fsym = {
            (1, 1, 1, 1): {
                ((0, 0, 0), (0, 0, 0)): inv_rt2,
                ((0, 0, 0), (2, 0, 0)): inv_rt2,
                ((2, 0, 0), (0, 0, 0)): inv_rt2,
                ((2, 0, 0), (2, 0, 0)): -inv_rt2,
            },
        }
        for key in small_keys:
            e, f = f_entry(*key)
            fsym[key] = {((e, 0, 0), (f, 0, 0)): Cyc.rational(signs.get(key, 1), n)}
        for fam in r_families:
            rsym = {k: {(0, 0): v} for k, v in fam.items() if isinstance(k, tuple)}
            twists = [one, fam["theta_sigma"], fam["theta_psi"]]
            try:
                cat = CategoryData("ising", labels, [0, 1, 2], fusion, fsym, rsym,
                                   twists, [one, one, one], n)
            except Exception:
                continue
            if cat.quantum_dim(1) != rt2 or cat.quantum_dim(2) != one:
                continue
            if verify_category(cat).ok():
                desc = {k: signs.get(k, 1) for k in small_keys}
                return cat, ("gauge: F[sigma,sigma,sigma;sigma] = 1/sqrt2 [[1,1],[1,-1]], "
                             f"unit-free 1x1 F signs {desc}; theta_sigma = {fam['theta_sigma']}")
    return None, ""


def _n(fusion, i, j, k):
    if i == 0:
        return 1 if j == k else 0
    if j == 0:
        return 1 if i == k else 0
    return fusion.get((i, j), {}).get(k, 0)


def build_toric():
    n = 1
    one = Cyc.one(n)
    labels = ["1", "e", "m", "f"]
    mul = {(1, 1): 0, (2, 2): 0, (3, 3): 0, (1, 2): 3, (2, 1): 3,
           (1, 3): 2, (3, 1): 2, (2, 3): 1, (3, 2): 1}
    fusion = {k: {v: 1} for k, v in mul.items()}
    # braiding bicharacter on Z2 x Z2; chi(m,e) = -1 makes f a fermion
    chi = {(1, 1): 1, (1, 2): 1, (2, 1): -1, (2, 2): 1,
           (1, 3): 1, (3, 1): -1, (2, 3): -1, (3, 2): 1, (3, 3): -1}
    fsym = {}
    for (a, b), c in mul.items():
        for cc in range(4):
            d = _prod3(mul, a, b, cc)
            if cc == 0:
                continue
            e = mul[(a, b)] if (a, b) in mul else 0
            f = mul[(b, cc)] if (b, cc) in mul else 0
            fsym[(a, b, cc, d)] = {((_mul(mul, a, b), 0, 0), (_mul(mul, b, cc), 0, 0)): one}
    rsym = {}
    for (a, b), v in chi.items():
        rsym[(a, b, _mul(mul, a, b))] = {(0, 0): Cyc.rational(v, n)}
    twists = [one, one, one, Cyc.rational(-1, n)]
    cat = CategoryData("toric", labels, [0, 1, 2, 3], fusion, fsym, rsym,
                       twists, [one] * 4, n)
    return _verify_or_none(cat), ("double of Z2: trivial associator, braiding the "
                                  "bicharacter with chi(m,e) = -1; f is the fermion")


def _mul(mul, a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    return mul[(a, b)]


def _prod3(mul, a, b, c):
    return _mul(mul, _mul(mul, a, b), c)


BUILDERS = {
    "vec": build_vec,
    "semion": build_semion,
    "fibonacci": build_fibonacci,
    "ising": build_ising,
    "toric": build_toric,
}


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "src", "cardykit", "data", "catalog")
    os.makedirs(outdir, exist_ok=True)
    for name, builder in BUILDERS.items():
        cat, gauge = builder()
        if cat is None:
            print(f"FAILED to solve {name}")
            return 1
        header = (f"{name}: exact modular tensor category data\n"
                  f"gauge: {gauge}\n"
                  "verified: pentagon, hexagon (both orientations), ribbon, snake\n"
                  "identities, s-matrix modularity, Verlinde consistency")
        text = format_category(cat, header)
        # round-trip sanity before committing the file
        again = parse_category(text, f"{name}.cat")
        assert format_category(again, header) == text, "round trip failed"
        path = os.path.join(outdir, f"{name}.cat")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {path}  (rank {cat.rank()}, conductor {cat.conductor}, "
              f"Dim = {cat.global_dim()})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
