"""The group catalog: presentations, class-count polynomials, and
automorphism-order formulas, loaded from a structured JSON data file.

Relator grammar (generators named a..g, 0-based indices internally):

    relator  := side ( "=" side )?
    side     := term+
    term     := "[" gen "," gen "]" ( "^" scalar )?
    scalar   := "-"? ( digits | "omega" | "mplus" | "mminus" )

A bare side asserts the product of its terms is the identity; an equation
asserts the two sides are equal.  "omega" is the smallest primitive root,
"mplus"/"mminus" the irreducible-cubic parameters of ffield.resolve_params.

Formula grammar: integer arithmetic in p (and E for the curve-count formula)
with +, -, juxtaposition or * for products, / for exact division, and ^ for
powers, e.g. "2(p^4-1)(p^4-p^2)p^8" or "(p+1)^2/4+3".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from classtwo.ffield import ResolvedParams, _as_p, quartic_curve_solutions, resolve_params
from classtwo.structure import Presentation, RelationSubspace, wedge_dim, wedge_pos


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.pos = pos


class UnknownGenerator(ParseError):
    def __init__(self, text: str, pos: int, letter: str):
        super().__init__(text, pos, f"generator {letter!r} out of range")


class ValidationError(RuntimeError):
    """An instantiated presentation failed its structural checks."""


class DivisibilityError(RuntimeError):
    """An automorphism order was not divisible by the derived-part factor."""


class CaseNotCovered(ValueError):
    """No congruence case applies to the requested prime."""


class NonIntegerValue(RuntimeError):
    """A formula with exact-division parts evaluated to a non-integer."""


# ---------------------------------------------------------------------------
# formula expressions


_FORMULA_TOKEN = re.compile(r"\s*(\d+|[pE()+\-*/^])")


def _tokenize_formula(text: str) -> list[str]:
    toks, pos = [], 0
    while pos < len(text):
        m = _FORMULA_TOKEN.match(text, pos)
        if not m:
            raise ParseError(text, pos, "bad formula token")
        toks.append(m.group(1))
        pos = m.end()
    return toks


class FormulaExpr:
    """An exact integer-valued expression in p (and optionally E)."""

    def __init__(self, text: str):
        self.text = text
        self._toks = _tokenize_formula(text)

    def __repr__(self) -> str:
        return f"FormulaExpr({self.text!r})"

    def evaluate(self, p: int, E: int | None = None) -> int:
        val = self._expr(_TokenStream(self._toks, self.text), p, E)
        if val.denominator != 1:
            raise NonIntegerValue(f"{self.text} at p={p} gives {val}")
        return int(val)

    # expr := term (('+'|'-') term)*
    def _expr(self, ts: "_TokenStream", p: int, E: int | None) -> Fraction:
        val = self._term(ts, p, E)
        while ts.peek() in ("+", "-"):
            op = ts.take()
            rhs = self._term(ts, p, E)
            val = val + rhs if op == "+" else val - rhs
        return val

    # term := factor ((('*'|'/')? factor) | ('/' factor))*
    def _term(self, ts: "_TokenStream", p: int, E: int | None) -> Fraction:
        val = self._factor(ts, p, E)
        while True:
            nxt = ts.peek()
            if nxt in ("*", "/"):
                op = ts.take()
                rhs = self._factor(ts, p, E)
                val = val * rhs if op == "*" else val / rhs
            elif nxt is not None and (nxt == "(" or nxt == "p" or nxt == "E" or nxt.isdigit()):
                val = val * self._factor(ts, p, E)
            else:
                return val

    def _factor(self, ts: "_TokenStream", p: int, E: int | None) -> Fraction:
        base = self._atom(ts, p, E)
        if ts.peek() == "^":
            ts.take()
            exp = ts.take()
            if exp is None or not exp.isdigit():
                raise ParseError(self.text, ts.pos, "exponent must be an integer")
            return base ** int(exp)
        return base

    def _atom(self, ts: "_TokenStream", p: int, E: int | None) -> Fraction:
        tok = ts.take()
        if tok == "(":
            val = self._expr(ts, p, E)
            if ts.take() != ")":
                raise ParseError(self.text, ts.pos, "expected ')'")
            return val
        if tok == "p":
            return Fraction(p)
        if tok == "E":
            if E is None:
                raise ParseError(self.text, ts.pos, "E not supplied")
            return Fraction(E)
        if tok is not None and tok.isdigit():
            return Fraction(int(tok))
        raise ParseError(self.text, ts.pos, f"unexpected token {tok!r}")


class _TokenStream:
    def __init__(self, toks: list[str], text: str):
        self.toks = toks
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self) -> str | None:
        t = self.peek()
        self.pos += 1
        return t


# ---------------------------------------------------------------------------
# relators


_SYMBOLS = ("one", "omega", "mplus", "mminus")


@dataclass(frozen=True)
class SymbolicScalar:
    coeff: int
    symbol: str = "one"

    def resolve(self, params: ResolvedParams) -> int:
        base = {
            "one": 1,
            "omega": params.omega,
            "mplus": params.m_plus,
            "mminus": params.m_minus,
        }[self.symbol]
        return self.coeff * base % params.p


_TERM_RE = re.compile(r"\[([a-g]),([a-g])\](?:\^(-?\d+|omega|mplus|mminus))?")


@dataclass(frozen=True)
class SymbolicWedge:
    """A wedge vector whose coordinates are sums of symbolic scalars."""

    k: int
    coords: tuple[tuple[int, SymbolicScalar], ...]  # (position, scalar)

    def resolve(self, params: ResolvedParams) -> np.ndarray:
        vec = np.zeros(wedge_dim(self.k), dtype=np.int64)
        for pos, s in self.coords:
            vec[pos] = (vec[pos] + s.resolve(params)) % params.p
        return vec


def _parse_side(text: str, start: int, end: int, k: int) -> list[tuple[int, int, SymbolicScalar]]:
    terms = []
    pos = start
    while pos < end:
        m = _TERM_RE.match(text, pos)
        if not m or m.start() != pos:
            raise ParseError(text, pos, "expected a commutator term")
        xi, yi = ord(m.group(1)) - ord("a"), ord(m.group(2)) - ord("a")
        for letter, idx in ((m.group(1), xi), (m.group(2), yi)):
            if idx >= k:
                raise UnknownGenerator(text, pos, letter)
        if xi == yi:
            raise ParseError(text, pos, "commutator of a generator with itself")
        exp = m.group(3)
        if exp is None:
            scalar = SymbolicScalar(1)
        elif exp.lstrip("-").isdigit():
            scalar = SymbolicScalar(int(exp))
        else:
            scalar = SymbolicScalar(1, exp)
        terms.append((xi, yi, scalar))
        pos = m.end()
    if not terms:
        raise ParseError(text, start, "empty relator side")
    return terms


def parse_relator(text: str, k: int) -> SymbolicWedge:
    """Parse a relator into its symbolic wedge vector.

    The commutator of generators x, y contributes +e_(x,y) when x < y and
    -e_(y,x) when x > y; the right side of an equation enters negated.
    """
    stripped = text.replace(" ", "")
    eq = stripped.find("=")
    if eq == -1:
        sides = [(_parse_side(stripped, 0, len(stripped), k), 1)]
    else:
        sides = [
            (_parse_side(stripped, 0, eq, k), 1),
            (_parse_side(stripped, eq + 1, len(stripped), k), -1),
        ]
    coords: list[tuple[int, SymbolicScalar]] = []
    for terms, side_sign in sides:
        for xi, yi, scalar in terms:
            sign = side_sign if xi < yi else -side_sign
            i, j = min(xi, yi), max(xi, yi)
            coords.append(
                (wedge_pos(i, j, k), SymbolicScalar(sign * scalar.coeff, scalar.symbol))
            )
    return SymbolicWedge(k, tuple(coords))


# ---------------------------------------------------------------------------
# catalog entries


@dataclass(frozen=True)
class CaseFormula:
    """Congruence-case formulas keyed by (p mod 12, whether V_p = 0)."""

    cases: tuple[tuple[int, bool | None, FormulaExpr], ...]

    def select(self, p: int, v_p: int | None) -> FormulaExpr:
        if p % 2 == 0 or p % 3 == 0:
            raise CaseNotCovered(f"p={p} is not coprime to 12")
        for mod12, v_zero, formula in self.cases:
            if p % 12 != mod12:
                continue
            if v_zero is None:
                return formula
            if v_p is None:
                raise CaseNotCovered(f"V_p required to pick a case at p={p}")
            if (v_p == 0) == v_zero:
                return formula
        raise CaseNotCovered(f"no case for p={p} (V_p={v_p})")

    def evaluate(self, p: int, v_p: int | None = None) -> int:
        return self.select(p, v_p).evaluate(p)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n: int
    k: int
    relators: tuple[str, ...]
    class_poly: FormulaExpr | None
    aut_formula: FormulaExpr | None
    shape: str | None = None
    masks: tuple[tuple[str, ...], ...] = ()
    has_recipe: bool = False
    # order-p^9 outlier only:
    classes_curve: FormulaExpr | None = None
    aut_cases: CaseFormula | None = None
    dp_cases: CaseFormula | None = None

    @property
    def m(self) -> int:
        return self.n - self.k

    def record(self) -> dict:
        """Stable dict form of the transcription (used for cache keys)."""
        return {
            "id": self.id,
            "n": self.n,
            "k": self.k,
            "relators": list(self.relators),
            "classes": self.class_poly.text if self.class_poly else None,
            "aut": self.aut_formula.text if self.aut_formula else None,
        }


def _parse_cases(raw: list[dict]) -> CaseFormula:
    return CaseFormula(
        tuple((c["mod12"], c["v_zero"], FormulaExpr(c["formula"])) for c in raw)
    )


class Catalog:
    """All 70 catalog groups plus the order-p^9 outlier, with evaluators."""

    def __init__(self, raw: dict):
        self.entries: list[CatalogEntry] = []
        for rec in raw["entries"]:
            self.entries.append(
                CatalogEntry(
                    id=rec["id"],
                    n=rec["n"],
                    k=rec["k"],
                    relators=tuple(rec["relators"]),
                    class_poly=FormulaExpr(rec["classes"]),
                    aut_formula=FormulaExpr(rec["aut"]),
                    shape=rec.get("shape"),
                    masks=tuple(tuple(m) for m in rec.get("masks", [])),
                    has_recipe=bool(rec.get("recipe")),
                )
            )
        g = raw["gp"]
        self.gp = CatalogEntry(
            id=g["id"],
            n=g["n"],
            k=g["k"],
            relators=tuple(g["relators"]),
            class_poly=None,
            aut_formula=None,
            classes_curve=FormulaExpr(g["classes_curve"]),
            aut_cases=_parse_cases(g["aut_cases"]),
            dp_cases=_parse_cases(g["dp_cases"]),
        )
        self.by_id: dict[str, CatalogEntry] = {e.id: e for e in self.entries}
        self.by_id[self.gp.id] = self.gp
        self._presentations: dict[tuple[str, int], Presentation] = {}
        self._params: dict[int, ResolvedParams] = {}

    def __iter__(self):
        return iter(self.entries)

    def entry(self, entry_id: str) -> CatalogEntry:
        try:
            return self.by_id[entry_id]
        except KeyError:
            raise KeyError(f"no catalog entry {entry_id!r}") from None

    def census(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for e in self.entries:
            counts[e.n] = counts.get(e.n, 0) + 1
        return counts

    def params(self, p: int) -> ResolvedParams:
        q = _as_p(p)
        if q not in self._params:
            self._params[q] = resolve_params(q)
        return self._params[q]

    def instantiate(self, entry_id: str, p: int) -> Presentation:
        q = _as_p(p)
        key = (entry_id, q)
        cached = self._presentations.get(key)
        if cached is not None:
            return cached
        e = self.entry(entry_id)
        params = self.params(q)
        rows = [parse_relator(r, e.k).resolve(params) for r in e.relators]
        W = RelationSubspace.from_rows(e.k, q, rows) if rows else RelationSubspace.from_rows(
            e.k, q, np.zeros((0, wedge_dim(e.k)), dtype=np.int64)
        )
        pres = Presentation.from_subspace(e.k, q, W, name=e.id)
        diag = pres.validate()
        if not diag.ok:
            raise ValidationError(f"{entry_id} at p={q}: {'; '.join(diag.failures)}")
        if pres.order_exponent != e.n:
            raise ValidationError(
                f"{entry_id} at p={q}: order exponent {pres.order_exponent} != {e.n}"
            )
        self._presentations[key] = pres
        return pres

    def class_poly_eval(self, entry_id: str, p: int) -> int:
        e = self.entry(entry_id)
        if e.class_poly is None:
            raise ValueError(f"{entry_id} has no polynomial class count")
        return e.class_poly.evaluate(_as_p(p))

    def gp_class_formula(self, p: int, E: int) -> int:
        return self.gp.classes_curve.evaluate(_as_p(p), E=E)

    def aut_formula_eval(self, entry_id: str, p: int, v_p: int | None = None) -> int:
        q = _as_p(p)
        e = self.entry(entry_id)
        if e.aut_formula is not None:
            return e.aut_formula.evaluate(q)
        if q % 12 == 1 and v_p is None:
            v_p = quartic_curve_solutions(q)
        return e.aut_cases.select(q, v_p).evaluate(q)

    def expected_B_order(self, entry_id: str, p: int, v_p: int | None = None) -> int:
        q = _as_p(p)
        e = self.entry(entry_id)
        aut = self.aut_formula_eval(entry_id, q, v_p)
        denom = q ** (e.m * e.k)
        if aut % denom:
            raise DivisibilityError(
                f"|Aut({entry_id})| at p={q} is not divisible by p^(m*k)={denom}"
            )
        return aut // denom


def load_catalog(path: str | Path | None = None) -> Catalog:
    """Load the built-in catalog, or an override file for experimentation."""
    if path is None:
        text = resources.files("classtwo.data").joinpath("catalog.json").read_text()
    else:
        text = Path(path).read_text()
    return Catalog(json.loads(text))


_DEFAULT: Catalog | None = None


def get_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog()
    return _DEFAULT
