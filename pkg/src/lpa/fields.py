"""Exact coefficient fields: Q, F_p, rational function fields, simple extensions.

Every element carries its field descriptor and a canonical payload, so equal
elements have identical payloads and everything is hashable:

* Q           -- ``Fraction``
* F_p         -- int in ``[0, p)``
* K(t1,..,tk) -- reduced pair of polynomial term-tuples, denominator monic
                 under grlex (see :mod:`lpa.polys`)
* K[x]/(f)    -- tuple of base payloads of degree < deg(f), no trailing zeros
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import polys


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


class ReducibleModulusError(FieldError):
    """A nonzero residue had no inverse: the extension modulus factors."""


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str                       # "Q" | "Fp" | "fraction" | "ext"
    char: int
    variables: tuple = ()
    base: Optional["FieldDescriptor"] = None
    modulus: tuple = ()             # base payloads, degree-ascending

    def __str__(self):
        return descriptor_str(self)


@dataclass(frozen=True)
class FieldElement:
    field: FieldDescriptor
    payload: object

    def __add__(self, other):
        _check(self, other)
        return FieldElement(self.field, _add(self.field, self.payload, other.payload))

    def __sub__(self, other):
        _check(self, other)
        return self + (-other)

    def __neg__(self):
        return FieldElement(self.field, _neg(self.field, self.payload))

    def __mul__(self, other):
        _check(self, other)
        return FieldElement(self.field, _mul(self.field, self.payload, other.payload))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field}")
        return FieldElement(self.field, _inv(self.field, self.payload))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return self.payload == _zero_payload(self.field)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return element_str(self)

    def __repr__(self):
        return f"<{element_str(self)} in {self.field}>"


def _check(a, b):
    if not isinstance(b, FieldElement) or a.field != b.field:
        raise FieldMismatchError("operands lie in different fields")


# -- descriptors ---------------------------------------------------------

def rationals():
    return FieldDescriptor("Q", 0)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_field(p):
    if not _is_prime(p):
        raise FieldError(f"{p} is not prime")
    return FieldDescriptor("Fp", p)


def function_field(base, names):
    if base.kind not in ("Q", "Fp"):
        raise FieldError("function-field base must be Q or F_p")
    names = tuple(names)
    if len(set(names)) != len(names):
        raise FieldError("function-field variable names must be distinct")
    if not names:
        raise FieldError("function field needs at least one variable")
    return FieldDescriptor("fraction", base.char, variables=names, base=base)


# Exhaustive irreducibility checking is only affordable over small F_p;
# anything bigger is trusted and reducibility surfaces later as a
# non-invertible residue.
IRREDUCIBILITY_BUDGET = 10_000


def extension(base, coeffs):
    """Simple extension of ``base`` by a monic-or-not nonconstant modulus.

    ``coeffs`` are base-field elements (or ints), degree-ascending.
    """
    if base.kind == "ext":
        raise FieldError("towers of extensions are not supported")
    lifted = []
    for c in coeffs:
        if isinstance(c, int):
            c = from_int(base, c)
        elif c.field != base:
            raise FieldError("modulus coefficient outside the base field")
        lifted.append(c)
    while lifted and lifted[-1].is_zero():
        lifted.pop()
    if len(lifted) < 2:
        raise FieldError("extension modulus must be nonconstant")
    if base.kind == "Fp":
        _check_irreducible_fp(base.char, [c.payload for c in lifted])
    return FieldDescriptor(
        "ext", base.char, base=base, modulus=tuple(c.payload for c in lifted)
    )


def _check_irreducible_fp(p, coeffs):
    deg = len(coeffs) - 1
    candidates = sum(p ** d for d in range(1, deg // 2 + 1))
    if candidates > IRREDUCIBILITY_BUDGET:
        return
    poly = {(i,): c for i, c in enumerate(coeffs) if c}
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            cand = {(d,): 1}
            rest = code
            for i in range(d):
                c = rest % p
                rest //= p
                if c:
                    cand[(i,)] = c
            if not polys._urem(poly, cand, p):
                raise ReducibleModulusError(
                    f"modulus factors over F_{p}: divisible by {polys.pstr(cand, ('x',))}"
                )


def characteristic(field):
    return field.char


def profile(field):
    """Characteristic plus the by-construction independent generators."""
    gens = []
    if field.kind == "fraction":
        gens = [variable(field, n) for n in field.variables]
    return {"characteristic": field.char, "independent_generators": gens}


# -- payload arithmetic --------------------------------------------------

def _zero_payload(field):
    if field.kind == "Q":
        return Fraction(0)
    if field.kind == "Fp":
        return 0
    if field.kind == "fraction":
        return (polys.pcanon({}), _one_poly_canon(field))
    return ()


def _one_poly_canon(field):
    n = len(field.variables)
    return polys.pcanon({(0,) * n: polys.cone(field.char)})


def zero(field):
    return FieldElement(field, _zero_payload(field))


def one(field):
    return from_int(field, 1)


def from_int(field, n):
    if field.kind == "Q":
        return FieldElement(field, Fraction(n))
    if field.kind == "Fp":
        return FieldElement(field, n % field.char)
    if field.kind == "fraction":
        num = polys.pconst(polys.cfrom_int(n, field.char), len(field.variables), field.char)
        return FieldElement(field, (polys.pcanon(num), _one_poly_canon(field)))
    base = from_int(field.base, n)
    return FieldElement(field, () if base.is_zero() else (base.payload,))


def from_fraction(field, fr):
    return from_int(field, fr.numerator) / from_int(field, fr.denominator)


def variable(field, name):
    if field.kind != "fraction" or name not in field.variables:
        raise FieldError(f"{name!r} is not a variable of {field}")
    i = field.variables.index(name)
    num = polys.pvar(i, len(field.variables), field.char)
    return FieldElement(field, (polys.pcanon(num), _one_poly_canon(field)))


def xbar(field):
    if field.kind != "ext":
        raise FieldError(f"{field} is not an extension field")
    if len(field.modulus) == 2:
        # degree-1 modulus: xbar is the base root itself
        a0 = FieldElement(field.base, field.modulus[0])
        a1 = FieldElement(field.base, field.modulus[1])
        root = -(a0 / a1)
        return FieldElement(field, () if root.is_zero() else (root.payload,))
    zval = _zero_payload(field.base)
    return FieldElement(field, (zval, from_int(field.base, 1).payload))


def _frac_make(field, num, den):
    p = field.char
    if not num:
        return _zero_payload(field)
    if not den:
        raise ZeroDivisionError("zero denominator in function field")
    g = polys.pgcd(num, den, p)
    ge, gc = polys.plead(g)
    if any(ge) or gc != polys.cone(p) or len(g) > 1:
        num = polys.pdivexact(num, g, p)
        den = polys.pdivexact(den, g, p)
    _, lc = polys.plead(den)
    if lc != polys.cone(p):
        inv = polys.cinv(lc, p)
        num = polys.pscale(num, inv, p)
        den = polys.pscale(den, inv, p)
    return (polys.pcanon(num), polys.pcanon(den))


def _add(field, a, b):
    kind = field.kind
    if kind == "Q":
        return a + b
    if kind == "Fp":
        return (a + b) % field.char
    if kind == "fraction":
        p = field.char
        an, ad = polys.pfrom_canon(a[0]), polys.pfrom_canon(a[1])
        bn, bd = polys.pfrom_canon(b[0]), polys.pfrom_canon(b[1])
        num = polys.padd(polys.pmul(an, bd, p), polys.pmul(bn, ad, p), p)
        den = polys.pmul(ad, bd, p)
        return _frac_make(field, num, den)
    return _ext_make(field, _upoly_add(field.base, a, b))


def _neg(field, a):
    kind = field.kind
    if kind == "Q":
        return -a
    if kind == "Fp":
        return (-a) % field.char
    if kind == "fraction":
        p = field.char
        return (polys.pcanon(polys.pneg(polys.pfrom_canon(a[0]), p)), a[1])
    base = field.base
    return tuple((-FieldElement(base, c)).payload for c in a)


def _mul(field, a, b):
    kind = field.kind
    if kind == "Q":
        return a * b
    if kind == "Fp":
        return (a * b) % field.char
    if kind == "fraction":
        p = field.char
        num = polys.pmul(polys.pfrom_canon(a[0]), polys.pfrom_canon(b[0]), p)
        den = polys.pmul(polys.pfrom_canon(a[1]), polys.pfrom_canon(b[1]), p)
        return _frac_make(field, num, den)
    prod = _upoly_mul(field.base, a, b)
    return _ext_make(field, _upoly_rem(field.base, prod, field.modulus))


def _inv(field, a):
    kind = field.kind
    if kind == "Q":
        return Fraction(1) / a
    if kind == "Fp":
        return pow(a, field.char - 2, field.char)
    if kind == "fraction":
        return _frac_make(
            field, polys.pfrom_canon(a[1]), polys.pfrom_canon(a[0])
        )
    # extended gcd of the residue against the modulus
    base = field.base
    g, s, _ = _upoly_egcd(base, a, field.modulus)
    if len(g) != 1:
        raise ReducibleModulusError(
            "nonzero residue is not invertible: the extension modulus is reducible"
        )
    ginv = FieldElement(base, g[0]).inverse()
    scaled = tuple((FieldElement(base, c) * ginv).payload for c in s)
    return _ext_make(field, _upoly_rem(base, scaled, field.modulus))


# univariate polynomials over an arbitrary base field, as payload tuples

def _upoly_strip(base, t):
    t = list(t)
    z = _zero_payload(base)
    while t and t[-1] == z:
        t.pop()
    return tuple(t)


def _upoly_add(base, a, b):
    z = _zero_payload(base)
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = FieldElement(base, a[i] if i < len(a) else z)
        y = FieldElement(base, b[i] if i < len(b) else z)
        out.append((x + y).payload)
    return _upoly_strip(base, out)


def _upoly_mul(base, a, b):
    if not a or not b:
        return ()
    z = zero(base)
    out = [z] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        x = FieldElement(base, ca)
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + x * FieldElement(base, cb)
    return _upoly_strip(base, [c.payload for c in out])


def _upoly_rem(base, a, m):
    a = list(a)
    lead = FieldElement(base, m[-1]).inverse()
    dm = len(m) - 1
    while len(_upoly_strip(base, a)) > dm:
        a = list(_upoly_strip(base, a))
        if len(a) <= dm:
            break
        c = FieldElement(base, a[-1]) * lead
        shift = len(a) - 1 - dm
        for i, cm in enumerate(m):
            cur = FieldElement(base, a[shift + i])
            a[shift + i] = (cur - c * FieldElement(base, cm)).payload
    return _upoly_strip(base, a)


def _upoly_egcd(base, a, b):
    """Extended gcd over base[x]: returns (g, s, t) with s*a + t*b = g."""
    z, o = zero(base).payload, one(base).payload
    r0, r1 = _upoly_strip(base, a), _upoly_strip(base, b)
    s0, s1 = (o,), ()
    t0, t1 = (), (o,)
    while r1:
        q, r = _upoly_divmod(base, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _upoly_add(base, s0, _upoly_neg(base, _upoly_mul(base, q, s1)))
        t0, t1 = t1, _upoly_add(base, t0, _upoly_neg(base, _upoly_mul(base, q, t1)))
    return r0, s0, t0


def _upoly_neg(base, a):
    return tuple((-FieldElement(base, c)).payload for c in a)


def _upoly_divmod(base, a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    lead = FieldElement(base, b[-1]).inverse()
    db = len(b) - 1
    r = list(a)
    q = [zero(base).payload] * max(len(a) - db, 0)
    while len(_upoly_strip(base, r)) - 1 >= db:
        r = list(_upoly_strip(base, r))
        c = FieldElement(base, r[-1]) * lead
        shift = len(r) - 1 - db
        q[shift] = c.payload
        for i, cb in enumerate(b):
            cur = FieldElement(base, r[shift + i])
            r[shift + i] = (cur - c * FieldElement(base, cb)).payload
    return _upoly_strip(base, q), _upoly_strip(base, r)


def _ext_make(field, t):
    return _upoly_strip(field.base, t)


# -- parsing -------------------------------------------------------------

_DESC_RE = re.compile(
    r"^\s*(Q|F(?P<p>\d+))\s*"
    r"(?:\(\s*(?P<vars>[A-Za-z_]\w*(?:\s*,\s*[A-Za-z_]\w*)*)\s*\))?"
    r"(?:\[\s*(?P<ext>[A-Za-z_]\w*)\s*\]\s*/\s*\(\s*(?P<mod>[^)]*)\s*\))?\s*$"
)


def parse_descriptor(text):
    """Parse ``Q``, ``F<p>``, ``Q(t1,..)``, ``F<p>(t1,..)``, ``Q[x]/(poly)``."""
    m = _DESC_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field descriptor {text!r}")
    base = prime_field(int(m.group("p"))) if m.group("p") else rationals()
    if m.group("vars"):
        names = [v.strip() for v in m.group("vars").split(",")]
        base = function_field(base, names)
    if m.group("ext"):
        if base.kind == "fraction":
            raise FieldError("extension of a function field is not supported in descriptors")
        coeffs = _parse_upoly(m.group("mod"), m.group("ext"), base)
        base = extension(base, coeffs)
    return base


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*"
    r"(?:(?P<num>\d+)(?:/(?P<den>\d+))?)?\s*\*?\s*"
    r"(?:(?P<var>[A-Za-z_]\w*)(?:\s*\^\s*(?P<exp>\d+))?)?\s*"
)


def _parse_upoly(text, varname, base):
    """Parse a univariate integer/fraction-coefficient polynomial."""
    pos = 0
    coeffs = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise FieldError(f"cannot parse modulus near {text[pos:]!r}")
        if m.group("num") is None and m.group("var") is None:
            raise FieldError(f"cannot parse modulus near {text[pos:]!r}")
        if not first and m.group("sign") is None:
            raise FieldError(f"missing +/- in modulus near {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("num") is not None:
            c = Fraction(int(m.group("num")), int(m.group("den") or 1))
        else:
            c = Fraction(1)
        if m.group("var") is not None:
            if m.group("var") != varname:
                raise FieldError(
                    f"unknown variable {m.group('var')!r} in modulus (expected {varname!r})"
                )
            e = int(m.group("exp") or 1)
        else:
            e = 0
        coeffs[e] = coeffs.get(e, Fraction(0)) + sign * c
        pos = m.end()
        first = False
    deg = max(coeffs, default=0)
    return [from_fraction(base, coeffs.get(i, Fraction(0))) for i in range(deg + 1)]


_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")


def parse_element(field, text):
    """Parse a scalar literal: integer, a/b, variable name, or ``xbar``."""
    text = text.strip()
    if _INT_RE.match(text):
        return from_int(field, int(text))
    m = _FRAC_RE.match(text)
    if m:
        if field.char:
            num = from_int(field, int(m.group(1)))
            return num / from_int(field, int(m.group(2)))
        return from_fraction(field, Fraction(int(m.group(1)), int(m.group(2))))
    if text == "xbar" and field.kind == "ext":
        return xbar(field)
    if field.kind == "fraction" and text in field.variables:
        return variable(field, text)
    raise FieldError(f"cannot parse scalar literal {text!r} over {field}")


# -- rendering -----------------------------------------------------------

def descriptor_str(field):
    if field.kind == "Q":
        return "Q"
    if field.kind == "Fp":
        return f"F{field.char}"
    if field.kind == "fraction":
        return f"{descriptor_str(field.base)}({','.join(field.variables)})"
    mod = _upoly_str(field.base, field.modulus, "x")
    return f"{descriptor_str(field.base)}[x]/({mod})"


def _upoly_str(base, t, varname):
    if not t:
        return "0"
    parts = []
    for i in range(len(t) - 1, -1, -1):
        c = FieldElement(base, t[i])
        if c.is_zero():
            continue
        cs = element_str(c)
        if i == 0:
            parts.append(cs)
        else:
            head = varname if i == 1 else f"{varname}^{i}"
            if cs == "1":
                parts.append(head)
            elif cs == "-1":
                parts.append(f"-{head}")
            elif re.match(r"^-?\d+(/\d+)?$", cs):
                parts.append(f"{cs}*{head}")
            else:
                parts.append(f"({cs})*{head}")
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out


def element_str(x):
    field, payload = x.field, x.payload
    if field.kind in ("Q", "Fp"):
        return str(payload)
    if field.kind == "fraction":
        num = polys.pfrom_canon(payload[0])
        den = polys.pfrom_canon(payload[1])
        ns = polys.pstr(num, field.variables)
        if len(den) == 1 and not any(next(iter(den))):
            return ns
        ds = polys.pstr(den, field.variables)
        if len(num) > 1:
            ns = f"({ns})"
        return f"{ns}/({ds})"
    return _upoly_str(field.base, payload, "xbar")


def is_literal_scalar(x):
    """True when ``element_str`` round-trips through ``parse_element``."""
    try:
        return parse_element(x.field, element_str(x)) == x
    except FieldError:
        return False
