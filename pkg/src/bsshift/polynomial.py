"""Sparse exact-rational polynomials in the deformation parameters ``u_j``.

Monomials are dense exponent tuples of fixed length ``nvars`` (the number of
deformation monomials); index ``i`` of the tuple is ``u_{i+1}``.  Zero
coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import fmt

Monomial = tuple[int, ...]


class ParamPolynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(mono)] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "ParamPolynomial":
        # trusted constructor: terms already validated and nonzero
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "ParamPolynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "ParamPolynomial":
        value = Fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def var(cls, nvars: int, j: int) -> "ParamPolynomial":
        """The variable ``u_j`` (1-based)."""
        mono = tuple(1 if i == j - 1 else 0 for i in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    # arithmetic -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ParamPolynomial.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "ParamPolynomial":
        if isinstance(other, ParamPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return ParamPolynomial.constant(self.nvars, other)

    def __add__(self, other) -> "ParamPolynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return ParamPolynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ParamPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ParamPolynomial":
        return self._coerce(other) - self

    def scale(self, factor) -> "ParamPolynomial":
        factor = Fraction(factor)
        if not factor:
            return ParamPolynomial.zero(self.nvars)
        return ParamPolynomial._raw(self.nvars, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other) -> "ParamPolynomial":
        if not isinstance(other, ParamPolynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, 0) + c1 * c2
        return ParamPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPolynomial":
        result = ParamPolynomial.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def mul_var(self, j: int, factor=1) -> "ParamPolynomial":
        """Multiply by ``factor * u_j`` (1-based ``j``)."""
        factor = Fraction(factor)
        i = j - 1
        out = {}
        for m, c in self.terms.items():
            mono = m[:i] + (m[i] + 1,) + m[i + 1:]
            out[mono] = c * factor
        return ParamPolynomial._raw(self.nvars, out) if factor else ParamPolynomial.zero(self.nvars)

    # queries -------------------------------------------------------------

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def variables(self) -> set[int]:
        """1-based indices of variables that occur."""
        return {i + 1 for m in self.terms for i, e in enumerate(m) if e}

    def weighted_degrees(self, gammas: Sequence[Fraction]) -> set[Fraction]:
        return {sum((g * e for g, e in zip(gammas, m)), Fraction(0)) for m in self.terms}

    def evaluate(self, values: Sequence) -> Fraction:
        """Value at a full point; ``values[i]`` is ``u_{i+1}``."""
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    if not v:
                        t = 0
                        break
                    t *= Fraction(v) ** e
            total += t
        return total

    def substitute(self, assignments: Mapping[int, "ParamPolynomial | Fraction | int"]) -> "ParamPolynomial":
        """Replace the 1-based variables in ``assignments`` by polynomials or numbers."""
        subs = {j: (v if isinstance(v, ParamPolynomial) else ParamPolynomial.constant(self.nvars, v))
                for j, v in assignments.items()}
        powers: dict[tuple[int, int], ParamPolynomial] = {}
        out = ParamPolynomial.zero(self.nvars)
        for m, c in self.terms.items():
            kept = list(m)
            term = ParamPolynomial.constant(self.nvars, c)
            for j, p in subs.items():
                e = m[j - 1]
                if e:
                    kept[j - 1] = 0
                    key = (j, e)
                    if key not in powers:
                        powers[key] = p ** e
                    term = term * powers[key]
            if term:
                out = out + ParamPolynomial._raw(
                    self.nvars,
                    {tuple(a + b for a, b in zip(tm, kept)): tc for tm, tc in term.terms.items()},
                )
        return out

    def sorted_terms(self, gammas: Sequence[Fraction] | None = None) -> list[tuple[Monomial, Fraction]]:
        """Terms by (weighted degree, total degree, reversed exponent): linear term first."""
        def key(item):
            m = item[0]
            wd = sum((g * e for g, e in zip(gammas, m)), Fraction(0)) if gammas else 0
            return (wd, sum(m), tuple(-e for e in reversed(m)))
        return sorted(self.terms.items(), key=key)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"u{i + 1}" for i in range(self.nvars)]
        parts = []
        for m, c in self.sorted_terms():
            factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if factors:
                body = "*".join(factors)
                text = body if mag == 1 else f"{fmt(mag)}*{body}"
            else:
                text = fmt(mag)
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"ParamPolynomial({self.to_string()})"


def from_terms(nvars: int, items: Iterable[tuple[Mapping[int, int], Fraction | int]]) -> ParamPolynomial:
    """Build from ``({j: power}, coefficient)`` pairs with 1-based ``j``."""
    out: dict[Monomial, Fraction] = {}
    for powers, c in items:
        mono = [0] * nvars
        for j, e in powers.items():
            mono[j - 1] += e
        key = tuple(mono)
        out[key] = out.get(key, 0) + Fraction(c)
    return ParamPolynomial(nvars, out)


def parse_polynomial(text: str, nvars: int) -> ParamPolynomial:
    """Parse expressions like ``-u5 + 2/7*u4^2 - 1/4*u2^2*u3`` (test and CLI helper)."""
    s = text.replace(" ", "").replace("−", "-")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    chunks: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "^*/":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    out = ParamPolynomial.zero(nvars)
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        coeff = Fraction(sign)
        mono = [0] * nvars
        for factor in chunk[1:].split("*"):
            if factor.startswith("u"):
                name, _, power = factor.partition("^")
                idx = int(name[1:].lstrip("_"))
                mono[idx - 1] += int(power) if power else 1
            else:
                coeff *= Fraction(factor)
        out = out + ParamPolynomial(nvars, {tuple(mono): coeff})
    return out
