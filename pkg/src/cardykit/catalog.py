"""Built-in category/algebra datasets and the on-disk text formats.

Category files are sectioned UTF-8 text with LF line endings::

    [category]
    name = fibonacci
    conductor = 5
    labels = 1, tau
    dual = 1:1, tau:tau
    [fusion]
    N[tau,tau] = {1:1, tau:1}
    [F]
    F[tau,tau,tau;tau](1,1) = 1/2 + ...
    [R]
    R[tau,tau;1] = z^3
    [twist]
    theta[tau] = z^2
    [pivot]
    pivot[tau] = 1

F keys carry the intermediate charges ``(e,f)``; fusion multiplicities beyond
one use the extended key ``F[a,b,c;d](e:mu:nu,f:rho:sigma)`` and
``R[a,b;c](mu,nu)``.  Unit-label blocks are implicit (identity) and must not
appear.  ``#`` starts a comment; loading verifies structural invariants but
not the coherence axioms (those are explicit verification steps).

Algebra files reference an ambient category and list structure-tensor
entries against summand positions::

    [algebra]
    name = endo
    category = fibonacci
    summands = 1, tau
    [unit]
    eta[0] = 1
    [mult]
    m[0,1->1] = 1        # optional (mu) vertex index for multiplicities
    [counit]
    eps[0] = 1
    [comult]
    delta[1->0,1] = 1
"""

from __future__ import annotations

import os
from importlib import resources

from .category import CategoryData, CategoryError
from .scalars import Cyc, ScalarError, format_scalar, parse_scalar

BUILTIN_NAMES = ("vec", "semion", "fibonacci", "ising", "toric")

_builtin_cache: dict[str, CategoryData] = {}


class CatalogError(ValueError):
    """Parse error or invariant violation in a data file."""


# ---------------------------------------------------------------------------
# low-level sectioned-file parsing


def _parse_sections(text: str, path: str) -> list[tuple[str, list[tuple[int, str, str]]]]:
    """[(section, [(lineno, key, value), ...]), ...] in file order."""
    sections: list[tuple[str, list[tuple[int, str, str]]]] = []
    current: list[tuple[int, str, str]] | None = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = []
            sections.append((line[1:-1].strip(), current))
            continue
        if "=" not in line:
            raise CatalogError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        if current is None:
            raise CatalogError(f"{path}:{lineno}: entry before any section header")
        key, value = line.split("=", 1)
        current.append((lineno, key.strip(), value.strip()))
    return sections


def _section_map(sections, path):
    out = {}
    for name, entries in sections:
        if name in out:
            raise CatalogError(f"{path}: duplicate section [{name}]")
        out[name] = entries
    return out


# ---------------------------------------------------------------------------
# category files


def load_category(path: str) -> CategoryData:
    with open(path, encoding="utf-8") as fh:
        return parse_category(fh.read(), path)


def parse_category(text: str, path: str = "<string>") -> CategoryData:
    secs = _section_map(_parse_sections(text, path), path)
    for required in ("category", "fusion", "F", "R", "twist", "pivot"):
        if required not in secs:
            raise CatalogError(f"{path}: missing section [{required}]")
    head = {k: v for _, k, v in secs["category"]}
    for required in ("name", "conductor", "labels", "dual"):
        if required not in head:
            raise CatalogError(f"{path}: [category] missing key {required!r}")
    name = head["name"]
    try:
        conductor = int(head["conductor"])
    except ValueError:
        raise CatalogError(f"{path}: conductor must be an integer") from None
    labels = [s.strip() for s in head["labels"].split(",")]
    if len(set(labels)) != len(labels):
        raise CatalogError(f"{path}: duplicate labels")
    index = {lab: i for i, lab in enumerate(labels)}

    def resolve(lab: str, lineno: int) -> int:
        lab = lab.strip()
        if lab not in index:
            raise CatalogError(f"{path}:{lineno}: unknown label {lab!r}")
        return index[lab]

    dual = [None] * len(labels)
    for pair in head["dual"].split(","):
        if ":" not in pair:
            raise CatalogError(f"{path}: dual entries must be 'label:label'")
        a, b = pair.split(":", 1)
        dual[resolve(a, 0)] = resolve(b, 0)
    if any(d is None for d in dual):
        missing = labels[dual.index(None)]
        raise CatalogError(f"{path}: dual map missing entry for label {missing!r}")

    def scalar(txt: str, lineno: int) -> Cyc:
        try:
            return parse_scalar(txt, conductor)
        except ScalarError as exc:
            raise CatalogError(f"{path}:{lineno}: {exc}") from None

    fusion: dict = {}
    for lineno, key, value in secs["fusion"]:
        if not (key.startswith("N[") and key.endswith("]")):
            raise CatalogError(f"{path}:{lineno}: bad fusion key {key!r}")
        parts = key[2:-1].split(",")
        if len(parts) != 2:
            raise CatalogError(f"{path}:{lineno}: fusion key needs two labels")
        i, j = (resolve(p, lineno) for p in parts)
        value = value.strip()
        if not (value.startswith("{") and value.endswith("}")):
            raise CatalogError(f"{path}:{lineno}: fusion value must be {{label:count, ...}}")
        table = {}
        body = value[1:-1].strip()
        if body:
            for item in body.split(","):
                if ":" not in item:
                    raise CatalogError(f"{path}:{lineno}: bad fusion outcome {item!r}")
                lab, count = item.rsplit(":", 1)
                try:
                    n = int(count)
                except ValueError:
                    raise CatalogError(f"{path}:{lineno}: bad multiplicity {count!r}") from None
                if n < 0:
                    raise CatalogError(f"{path}:{lineno}: negative multiplicity")
                if n:
                    table[resolve(lab, lineno)] = n
        fusion[(i, j)] = table

    fsym: dict = {}
    for lineno, key, value in secs["F"]:
        labs, charges, mults = _parse_f_key(key, path, lineno)
        a, b, c, d = (resolve(x, lineno) for x in labs)
        e, f = (resolve(x, lineno) for x in charges)
        mu, nu, rho, sig = mults
        block = fsym.setdefault((a, b, c, d), {})
        rowcol = ((e, mu, nu), (f, rho, sig))
        if rowcol in block:
            raise CatalogError(f"{path}:{lineno}: duplicate F entry {key}")
        block[rowcol] = scalar(value, lineno)

    rsym: dict = {}
    for lineno, key, value in secs["R"]:
        labs, mults = _parse_r_key(key, path, lineno)
        a, b, c = (resolve(x, lineno) for x in labs)
        block = rsym.setdefault((a, b, c), {})
        if mults in block:
            raise CatalogError(f"{path}:{lineno}: duplicate R entry {key}")
        block[mults] = scalar(value, lineno)

    twists = [None] * len(labels)
    twists[0] = Cyc.one(conductor)
    for lineno, key, value in secs["twist"]:
        if not (key.startswith("theta[") and key.endswith("]")):
            raise CatalogError(f"{path}:{lineno}: bad twist key {key!r}")
        twists[resolve(key[6:-1], lineno)] = scalar(value, lineno)
    pivots = [None] * len(labels)
    pivots[0] = Cyc.one(conductor)
    for lineno, key, value in secs["pivot"]:
        if not (key.startswith("pivot[") and key.endswith("]")):
            raise CatalogError(f"{path}:{lineno}: bad pivot key {key!r}")
        pivots[resolve(key[6:-1], lineno)] = scalar(value, lineno)
    for i, lab in enumerate(labels):
        if twists[i] is None:
            raise CatalogError(f"{path}: missing twist for label {lab!r}")
        if pivots[i] is None:
            raise CatalogError(f"{path}: missing pivot for label {lab!r}")

    try:
        return CategoryData(name, labels, dual, fusion, fsym, rsym, twists, pivots, conductor)
    except CategoryError as exc:
        raise CatalogError(f"{path}: {exc}") from None


def _parse_f_key(key: str, path: str, lineno: int):
    # F[a,b,c;d](e,f)  or  F[a,b,c;d](e:mu:nu,f:rho:sigma)
    if not key.startswith("F["):
        raise CatalogError(f"{path}:{lineno}: bad F key {key!r}")
    try:
        body, rest = key[2:].split("]", 1)
        abc, d = body.split(";")
        a, b, c = abc.split(",")
        colpart = rest.strip()
        if not (colpart.startswith("(") and colpart.endswith(")")):
            raise CatalogError(f"{path}:{lineno}: F key needs (e,f) charges")
        e_part, f_part = colpart[1:-1].split(",")
    except ValueError:
        raise CatalogError(f"{path}:{lineno}: malformed F key {key!r}") from None

    def split_mult(part: str, count: int):
        bits = part.split(":")
        if len(bits) == 1:
            return bits[0].strip(), (0,) * count
        if len(bits) != count + 1:
            raise CatalogError(f"{path}:{lineno}: malformed multiplicity in {key!r}")
        return bits[0].strip(), tuple(int(x) for x in bits[1:])

    e_lab, (mu, nu) = split_mult(e_part, 2)
    f_lab, (rho, sig) = split_mult(f_part, 2)
    return (a.strip(), b.strip(), c.strip(), d.strip()), (e_lab, f_lab), (mu, nu, rho, sig)


def _parse_r_key(key: str, path: str, lineno: int):
    # R[a,b;c]  or  R[a,b;c](mu,nu)
    if not key.startswith("R["):
        raise CatalogError(f"{path}:{lineno}: bad R key {key!r}")
    try:
        body, rest = key[2:].split("]", 1)
        ab, c = body.split(";")
        a, b = ab.split(",")
    except ValueError:
        raise CatalogError(f"{path}:{lineno}: malformed R key {key!r}") from None
    rest = rest.strip()
    if not rest:
        mults = (0, 0)
    else:
        if not (rest.startswith("(") and rest.endswith(")")):
            raise CatalogError(f"{path}:{lineno}: malformed R key {key!r}")
        try:
            mu, nu = rest[1:-1].split(",")
            mults = (int(mu), int(nu))
        except ValueError:
            raise CatalogError(f"{path}:{lineno}: malformed R multiplicities in {key!r}") from None
    return (a.strip(), b.strip(), c.strip()), mults


def save_category(cat: CategoryData, path: str, header: str = "") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_category(cat, header))


def format_category(cat: CategoryData, header: str = "") -> str:
    lines = []
    for h in header.splitlines():
        lines.append(f"# {h}" if h else "#")
    lab = cat.labels
    lines += [
        "[category]",
        f"name = {cat.name}",
        f"conductor = {cat.conductor}",
        f"labels = {', '.join(lab)}",
        "dual = " + ", ".join(f"{lab[i]}:{lab[cat.dual[i]]}" for i in range(cat.rank())),
        "[fusion]",
    ]
    for (i, j) in sorted(cat.fusion):
        table = cat.fusion[(i, j)]
        if not table:
            continue
        body = ", ".join(f"{lab[k]}:{table[k]}" for k in sorted(table))
        lines.append(f"N[{lab[i]},{lab[j]}] = {{{body}}}")
    lines.append("[F]")
    for (a, b, c, d) in sorted(cat.fsym):
        block = cat.fsym[(a, b, c, d)]
        multfree = all(k == (0, 0) and l == (0, 0)
                       for ((_, *k), (_, *l)) in block.keys())
        for ((e, mu, nu), (f, rho, sig)) in sorted(block):
            val = block[((e, mu, nu), (f, rho, sig))]
            if val.is_zero():
                continue
            if multfree:
                keytxt = f"F[{lab[a]},{lab[b]},{lab[c]};{lab[d]}]({lab[e]},{lab[f]})"
            else:
                keytxt = (f"F[{lab[a]},{lab[b]},{lab[c]};{lab[d]}]"
                          f"({lab[e]}:{mu}:{nu},{lab[f]}:{rho}:{sig})")
            lines.append(f"{keytxt} = {format_scalar(val)}")
    lines.append("[R]")
    for (a, b, c) in sorted(cat.rsym):
        block = cat.rsym[(a, b, c)]
        multfree = set(block.keys()) <= {(0, 0)}
        for (mu, nu) in sorted(block):
            val = block[(mu, nu)]
            if val.is_zero():
                continue
            keytxt = (f"R[{lab[a]},{lab[b]};{lab[c]}]" if multfree
                      else f"R[{lab[a]},{lab[b]};{lab[c]}]({mu},{nu})")
            lines.append(f"{keytxt} = {format_scalar(val)}")
    lines.append("[twist]")
    for i in range(1, cat.rank()):
        lines.append(f"theta[{lab[i]}] = {format_scalar(cat.twists[i])}")
    lines.append("[pivot]")
    for i in range(1, cat.rank()):
        lines.append(f"pivot[{lab[i]}] = {format_scalar(cat.pivots[i])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# algebra files


def load_algebra(path: str, cat: CategoryData):
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), cat, path)


def parse_algebra(text: str, cat: CategoryData, path: str = "<string>"):
    from .frobenius import FrobeniusAlgebra  # local import to avoid a cycle
    from . import morphisms as eng

    secs = _section_map(_parse_sections(text, path), path)
    for required in ("algebra", "unit", "mult", "counit", "comult"):
        if required not in secs:
            raise CatalogError(f"{path}: missing section [{required}]")
    head = {k: v for _, k, v in secs["algebra"]}
    if "summands" not in head:
        raise CatalogError(f"{path}: [algebra] missing 'summands'")
    if head.get("category") and head["category"] != cat.name:
        raise CatalogError(
            f"{path}: algebra is for category {head['category']!r}, got {cat.name!r}")
    index = {lab: i for i, lab in enumerate(cat.labels)}
    summands = []
    for lab in head["summands"].split(","):
        lab = lab.strip()
        if lab not in index:
            raise CatalogError(f"{path}: unknown simple {lab!r} in summands")
        summands.append(index[lab])
    A = tuple(summands)
    n_sum = len(A)

    def scalar(txt, lineno):
        try:
            return parse_scalar(txt, cat.conductor)
        except ScalarError as exc:
            raise CatalogError(f"{path}:{lineno}: {exc}") from None

    def position(txt, lineno):
        try:
            p = int(txt)
        except ValueError:
            raise CatalogError(f"{path}:{lineno}: bad summand position {txt!r}") from None
        if not 0 <= p < n_sum:
            raise CatalogError(f"{path}:{lineno}: summand position {p} out of range")
        return p

    unit = eng.SumMorphism.zero(cat, (), (A,))
    for lineno, key, value in secs["unit"]:
        if not (key.startswith("eta[") and key.endswith("]")):
            raise CatalogError(f"{path}:{lineno}: bad unit key {key!r}")
        p = position(key[4:-1], lineno)
        if A[p] != 0:
            raise CatalogError(f"{path}:{lineno}: eta hits non-unit summand {p}")
        unit = unit.set_entry((), (p,), (0, (), ()), scalar(value, lineno))

    counit = eng.SumMorphism.zero(cat, (A,), ())
    for lineno, key, value in secs["counit"]:
        if not (key.startswith("eps[") and key.endswith("]")):
            raise CatalogError(f"{path}:{lineno}: bad counit key {key!r}")
        p = position(key[4:-1], lineno)
        if A[p] != 0:
            raise CatalogError(f"{path}:{lineno}: eps hits non-unit summand {p}")
        counit = counit.set_entry((p,), (), (0, (), ()), scalar(value, lineno))

    mult = eng.SumMorphism.zero(cat, (A, A), (A,))
    for lineno, key, value in secs["mult"]:
        (p, q), r, mu = _parse_tensor_key(key, "m", 2, 1, path, lineno)
        p, q, r = position(p, lineno), position(q, lineno), position(r[0] if isinstance(r, tuple) else r, lineno)
        ccharge = A[r]
        if not cat.N(A[p], A[q], ccharge):
            raise CatalogError(f"{path}:{lineno}: inadmissible product {key}")
        tree = ((ccharge, mu),)
        mult = mult.set_entry((p, q), (r,), (ccharge, tree, ()), scalar(value, lineno))

    comult = eng.SumMorphism.zero(cat, (A,), (A, A))
    for lineno, key, value in secs["comult"]:
        p, (q, r), mu = _parse_tensor_key(key, "delta", 1, 2, path, lineno)
        p, q, r = position(p if isinstance(p, str) else p[0], lineno), position(q, lineno), position(r, lineno)
        ccharge = A[p]
        if not cat.N(A[q], A[r], ccharge):
            raise CatalogError(f"{path}:{lineno}: inadmissible coproduct {key}")
        tree = ((ccharge, mu),)
        comult = comult.set_entry((p,), (q, r), (ccharge, (), tree), scalar(value, lineno))

    return FrobeniusAlgebra(cat, A, mult, unit, comult, counit,
                            name=head.get("name", "algebra"))


def _parse_tensor_key(key: str, prefix: str, n_dom: int, n_cod: int, path, lineno):
    # m[p,q->r](mu)  /  delta[p->q,r](mu)
    if not key.startswith(prefix + "["):
        raise CatalogError(f"{path}:{lineno}: bad key {key!r}")
    body = key[len(prefix) + 1:]
    mu = 0
    if body.endswith(")") and "(" in body:
        body, mupart = body.rsplit("(", 1)
        try:
            mu = int(mupart[:-1])
        except ValueError:
            raise CatalogError(f"{path}:{lineno}: bad vertex index in {key!r}") from None
    if not body.endswith("]"):
        raise CatalogError(f"{path}:{lineno}: bad key {key!r}")
    body = body[:-1]
    if "->" not in body:
        raise CatalogError(f"{path}:{lineno}: key needs '->': {key!r}")
    dom, cod = body.split("->")
    dom_parts = [s.strip() for s in dom.split(",")]
    cod_parts = [s.strip() for s in cod.split(",")]
    if len(dom_parts) != n_dom or len(cod_parts) != n_cod:
        raise CatalogError(f"{path}:{lineno}: wrong arity in {key!r}")
    dom_out = dom_parts[0] if n_dom == 1 else tuple(dom_parts)
    cod_out = cod_parts[0] if n_cod == 1 else tuple(cod_parts)
    return dom_out, cod_out, mu


def save_algebra(alg, path: str, header: str = "") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_algebra(alg, header))


def format_algebra(alg, header: str = "") -> str:
    cat = alg.cat
    lab = cat.labels
    lines = []
    for h in header.splitlines():
        lines.append(f"# {h}" if h else "#")
    lines += [
        "[algebra]",
        f"name = {alg.name}",
        f"category = {cat.name}",
        "summands = " + ", ".join(lab[x] for x in alg.obj),
        "[unit]",
    ]
    for (ds, cs), mor in sorted(alg.unit.blocks.items()):
        for (c, td, tc), v in sorted(mor.blocks.items()):
            lines.append(f"eta[{cs[0]}] = {format_scalar(v)}")
    lines.append("[mult]")
    for (ds, cs), mor in sorted(alg.mult.blocks.items()):
        for (c, td, tc), v in sorted(mor.blocks.items()):
            mu = td[0][1]
            suffix = f"({mu})" if mu else ""
            lines.append(f"m[{ds[0]},{ds[1]}->{cs[0]}]{suffix} = {format_scalar(v)}")
    lines.append("[counit]")
    for (ds, cs), mor in sorted(alg.counit.blocks.items()):
        for (c, td, tc), v in sorted(mor.blocks.items()):
            lines.append(f"eps[{ds[0]}] = {format_scalar(v)}")
    lines.append("[comult]")
    for (ds, cs), mor in sorted(alg.comult.blocks.items()):
        for (c, td, tc), v in sorted(mor.blocks.items()):
            mu = tc[0][1]
            suffix = f"({mu})" if mu else ""
            lines.append(f"delta[{ds[0]}->{cs[0]},{cs[1]}]{suffix} = {format_scalar(v)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# builtins


def catalog_dir() -> str | None:
    return os.environ.get("CARDYKIT_CATALOG_DIR")


def builtin(name: str) -> CategoryData:
    """One of the five built-in categories, loaded from the shipped data files
    (or from CARDYKIT_CATALOG_DIR when set) with verification-on-load of the
    structural invariants."""
    if name not in BUILTIN_NAMES:
        raise CatalogError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    override = catalog_dir()
    if override:
        return load_category(os.path.join(override, f"{name}.cat"))
    if name in _builtin_cache:
        return _builtin_cache[name]
    ref = resources.files("cardykit").joinpath(f"data/catalog/{name}.cat")
    cat = parse_category(ref.read_text(encoding="utf-8"), str(ref))
    _builtin_cache[name] = cat
    return cat


def resolve_category(spec_str: str) -> CategoryData:
    """A builtin name or a path to a .cat file."""
    if spec_str in BUILTIN_NAMES:
        return builtin(spec_str)
    if os.path.exists(spec_str):
        return load_category(spec_str)
    raise CatalogError(f"no builtin or file named {spec_str!r}")
