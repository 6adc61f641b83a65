"""Sparse homogeneous integer polynomials and their catalog operations.

A HomogPoly maps dense exponent tuples to nonzero integer coefficients; all
stored terms share one total degree.  The zero polynomial is represented
explicitly (no terms) so that specializations that wipe out every term stay
representable.  Variables print as A, B, C, ...
"""

import itertools
import json
import math
import re
import string
from dataclasses import dataclass

VARNAMES = string.ascii_uppercase

MAX_CLASS_VARS = 8  # canonicalization enumerates nvars! permutations


class HomogPoly:
    """Homogeneous polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms", "_key")

    def __init__(self, nvars, terms):
        nvars = int(nvars)
        if nvars < 1 or nvars > len(VARNAMES):
            raise ValueError(f"nvars must be in 1..{len(VARNAMES)}")
        clean = {}
        degree = None
        for exps, coeff in terms.items() if isinstance(terms, dict) else terms:
            coeff = int(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            d = sum(exps)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError("terms of different total degree")
            clean[exps] = clean.get(exps, 0) + coeff
            if clean[exps] == 0:
                del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):
        raise AttributeError("HomogPoly is immutable")

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return sum(next(iter(self.terms)))

    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def content(self):
        return math.gcd(*self.terms.values()) if self.terms else 0

    def key(self):
        """Canonical comparison key: terms sorted by descending exponent."""
        k = self._key
        if k is None:
            k = tuple(sorted(self.terms.items(), reverse=True))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.key()))

    def __repr__(self):
        return f"HomogPoly({self.nvars}, {format_poly(self)!r})"

    # -- arithmetic ---------------------------------------------------------

    def _check_same_vars(self, other):
        if not isinstance(other, HomogPoly):
            raise TypeError("expected HomogPoly")
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")

    def __add__(self, other):
        self._check_same_vars(other)
        if not self.is_zero() and not other.is_zero() and self.degree != other.degree:
            raise ValueError("cannot add homogeneous polynomials of different degree")
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return HomogPoly(self.nvars, merged)

    def __neg__(self):
        return HomogPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HomogPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check_same_vars(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return HomogPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = HomogPoly(self.nvars, {(0,) * self.nvars: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def normalize(self):
        """Content 1, positive coefficient on the lexicographically greatest monomial."""
        if not self.terms:
            return self
        g = self.content()
        lead = max(self.terms)
        if self.terms[lead] < 0:
            g = -g
        if g == 1:
            return self
        return HomogPoly(self.nvars, {e: c // g for e, c in self.terms.items()})

    def derivative(self, var):
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                e2 = e[:var] + (k - 1,) + e[var + 1:]
                out[e2] = out.get(e2, 0) + c * k
        return HomogPoly(self.nvars, out)


def sigma(nvars):
    """The sum-of-variables linear form."""
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        terms[tuple(e)] = 1
    return HomogPoly(nvars, terms)


def monomial_exponents(nvars, degree):
    """All exponent tuples of the given total degree, descending lex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


# ---------------------------------------------------------------------------
# catalog operations


def evaluate(p, point):
    """Exact value of p at a point (entries support +, *, ** with ints)."""
    point = list(point)
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    total = 0
    for exps, coeff in sorted(p.terms.items(), reverse=True):
        val = coeff
        for x, e in zip(point, exps):
            if e:
                val = val * x**e
        total = total + val
    return total


def specialize(p, keep):
    """Set all variables outside `keep` to zero and reindex to len(keep) variables.

    Returns the zero polynomial (no terms) when every term dies.
    """
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    if len(set(keep)) != len(keep) or any(not 0 <= v < p.nvars for v in keep):
        raise ValueError(f"bad variable subset {keep}")
    out = {}
    keepset = set(keep)
    for exps, coeff in p.terms.items():
        if any(e and i not in keepset for i, e in enumerate(exps)):
            continue
        out[tuple(exps[v] for v in keep)] = coeff
    return HomogPoly(len(keep), out).normalize()


def mod2_reduce(p):
    """Coefficient-wise reduction mod 2; input must have content 1."""
    if p.is_zero():
        raise ValueError("zero polynomial has no mod-2 reduction here")
    if p.content() != 1:
        raise ValueError("input must be normalized (content 1)")
    return HomogPoly(p.nvars, {e: 1 for e, c in p.terms.items() if c % 2})


def permute_variables(p, perm):
    """Relabel variables: new variable i is old variable perm[i]."""
    if sorted(perm) != list(range(p.nvars)):
        raise ValueError("not a permutation")
    out = {}
    for exps, coeff in p.terms.items():
        out[tuple(exps[perm[i]] for i in range(p.nvars))] = coeff
    return HomogPoly(p.nvars, out)


@dataclass(frozen=True)
class PolyClass:
    """Equivalence class of polynomials up to scaling and variable renaming."""

    rep: HomogPoly

    def __eq__(self, other):
        if not isinstance(other, PolyClass):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return f"PolyClass({format_poly(self.rep)!r})"

    @property
    def degree(self):
        return self.rep.degree

    @property
    def nvars(self):
        return self.rep.nvars


def canonicalize_class(p):
    """Canonical representative under variable permutation and sign.

    Minimizes the term-list key over all nvars! permutations and both signs;
    feasible because catalog classes live in at most a few variables.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no class")
    if p.nvars > MAX_CLASS_VARS:
        raise ValueError(f"canonicalization limited to {MAX_CLASS_VARS} variables")
    p = p.normalize()
    best = None
    for perm in itertools.permutations(range(p.nvars)):
        q = permute_variables(p, perm)
        for cand in (q, -q):
            k = cand.key()
            if best is None or k < best[0]:
                best = (k, cand)
    return PolyClass(best[1])


def algebraic_subdivide(p, var):
    """Replace variable `var` by the sum of two fresh variables.

    The two halves occupy slots var and var+1 of the result; later variables
    shift up by one.
    """
    if not 0 <= var < p.nvars:
        raise ValueError(f"bad variable index {var}")
    n = p.nvars + 1
    out = {}
    for exps, coeff in p.terms.items():
        e = exps[var]
        rest = exps[:var] + exps[var + 1:]
        for k in range(e + 1):
            c = coeff * math.comb(e, k)
            ne = rest[:var] + (k, e - k) + rest[var:]
            out[ne] = out.get(ne, 0) + c
    return HomogPoly(n, out).normalize()


def detect_subdivision(p):
    """Find a variable pair (i, j) such that p depends only on X_i + X_j.

    Returns ((i, j), merged) where merged is p with the pair fused back into
    one variable, or None.  The criterion is equality of the two partial
    derivatives.
    """
    if p.nvars < 2:
        return None
    partials = [p.derivative(v) for v in range(p.nvars)]
    for i in range(p.nvars):
        for j in range(i + 1, p.nvars):
            if partials[i] == partials[j]:
                keep = [v for v in range(p.nvars) if v != j]
                merged = specialize(p, keep)
                return (i, j), merged
    return None


# ---------------------------------------------------------------------------
# text and JSON formats

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?P<body>(?:\d+|[A-Z](?:\^\d+)?)(?:\s*\*\s*(?:\d+|[A-Z](?:\^\d+)?))*)"
)


def format_poly(p, names=None):
    """Expanded text form, e.g. 'A^2+2*A*B-B^2'.  Zero prints as '0'."""
    if p.is_zero():
        return "0"
    names = names or VARNAMES
    parts = []
    for exps, coeff in sorted(p.terms.items(), reverse=True):
        factors = []
        for v, e in enumerate(exps):
            if e == 1:
                factors.append(names[v])
            elif e > 1:
                factors.append(f"{names[v]}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if coeff > 0 else "-" + term)
        else:
            parts.append(("+" if coeff > 0 else "-") + term)
    return "".join(parts)


def parse_poly(text, nvars=None):
    """Parse the expanded text form back into a HomogPoly.

    Variables are single capital letters; `nvars` defaults to the highest
    letter mentioned.
    """
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty polynomial text")
    if text == "0":
        if nvars is None:
            raise ValueError("zero polynomial needs an explicit nvars")
        return HomogPoly(nvars, {})
    seen_vars = set(re.findall(r"[A-Z]", text))
    if nvars is None:
        if not seen_vars:
            raise ValueError("no variables found; pass nvars explicitly")
        nvars = max(VARNAMES.index(v) for v in seen_vars) + 1
    terms = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.start() != pos or not m.group("body"):
            raise ValueError(f"cannot parse polynomial at ...{text[pos:pos+20]!r}")
        coeff = -1 if m.group("sign") == "-" else 1
        exps = [0] * nvars
        for factor in m.group("body").split("*"):
            if factor[0].isdigit():
                coeff *= int(factor)
            else:
                v = VARNAMES.index(factor[0])
                if v >= nvars:
                    raise ValueError(f"variable {factor[0]} out of range")
                e = int(factor[2:]) if "^" in factor else 1
                exps[v] += e
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
        pos = m.end()
    return HomogPoly(nvars, terms)


def poly_to_json(p):
    return {
        "nvars": p.nvars,
        "terms": [
            {"exps": list(e), "coeff": str(c)}
            for e, c in sorted(p.terms.items(), reverse=True)
        ],
    }


def poly_from_json(obj):
    return HomogPoly(
        obj["nvars"], {tuple(t["exps"]): int(t["coeff"]) for t in obj["terms"]}
    )


def poly_json_dumps(p):
    return json.dumps(poly_to_json(p), sort_keys=True)


def poly_json_loads(s):
    return poly_from_json(json.loads(s))
