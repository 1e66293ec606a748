"""Evaluation of t-expansions and nearly holomorphic forms at points of Omega.

Points live in a local field F_{q^m}((u)) (see ``local_field``); phi is the
coefficientwise Frobenius, which fixes K_inf and u.
"""
from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field

from .algebra.combinat import binom_mod_p
from .algebra.poly import RatK, rat_field
from .drinfeld import carlitz_exp_numeric
from .errors import DomainError, OutsideConvergence, PrecisionExhausted
from .local_field import LocalElem, LocalField, local_field
from .nearly_holomorphic import NearlyHoloForm


class OmegaPoint:
    """z in Omega^phi(M) with phi(z), t(z) and u(z) = 1/(PI (z - phi z)) cached."""

    def __init__(self, z: LocalElem):
        self.z = z
        self.K = z.K
        self.phi = z.sigma()
        self.diff = z - self.phi
        if self.diff.is_zero():
            raise DomainError("z = phi(z): the point is not in Omega")
        self._t = None
        self._u = None

    @property
    def t(self) -> LocalElem:
        if self._t is None:
            self._t = carlitz_exp_numeric(self.K.pi() * self.z).inv()
        return self._t

    @property
    def u(self) -> LocalElem:
        if self._u is None:
            self._u = (self.K.pi() * self.diff).inv()
        return self._u

    def log_imag_abs(self) -> float:
        return self.z.log_imag_abs()

    def translate(self, a) -> OmegaPoint:
        return OmegaPoint(self.z + self.K.coerce(a))

    def __repr__(self):
        return f"OmegaPoint({self.z!r})"


def parse_point(data: dict, F: LocalField) -> OmegaPoint:
    """Point from ``{"m": .., "e": .., "terms": [[n, coeff], ...]}``.

    With e = 1 a term [n, c] means c (1/T)^n; with e equal to the field's
    ramification it means c u^n.  Coefficients are polynomials in ``zeta``,
    the generator of F_{q^m}.
    """
    m = int(data.get("m", F.m))
    e = int(data.get("e", 1))
    if m != F.m:
        raise ValueError(f"point lives in F_(q^{m}) but the field has m = {F.m}")
    z = F.zero()
    for n, c in data["terms"]:
        c_el = F.scalar(parse_fq(str(c), F))
        n = int(n)
        if e == 1:
            # (1/T)^n = (-u^e)^n
            sgn = -1 if n % 2 else 1
            z = z + c_el * F.from_terms([(F.e * n, F.F.coerce(sgn).v)])
        elif e == F.e:
            z = z + c_el * F.from_terms([(n, 1)])
        else:
            raise ValueError(f"unsupported point ramification {e}")
    return OmegaPoint(z)


_FQ_TERM = re.compile(r"^(\d*)\*?(zeta(?:\^(\d+))?)?$")


def parse_fq(text: str, F: LocalField):
    """Polynomial in ``zeta`` with integer coefficients -> element of F_{q^m}."""
    FF = F.F
    acc = FF.zero()
    for tok in filter(None, text.replace(" ", "").replace("-", "+-").split("+")):
        sign = -1 if tok.startswith("-") else 1
        mt = _FQ_TERM.match(tok.lstrip("-"))
        if not mt or not (mt.group(1) or mt.group(2)):
            raise ValueError(f"cannot parse {tok!r} as an element of F_(q^m)")
        c = FF.coerce(sign * int(mt.group(1) or 1))
        if mt.group(2):
            c = c * FF.gen() ** int(mt.group(3) or 1)
        acc = acc + c
    return acc


@dataclass(frozen=True)
class GL2K:
    """gamma = [[a, b], [c, d]] over K."""

    a: RatK
    b: RatK
    c: RatK
    d: RatK

    @classmethod
    def from_entries(cls, q: int, a, b, c, d) -> GL2K:
        K = rat_field(q)
        conv = lambda x: K.parse(x) if isinstance(x, str) else K.coerce(x)
        g = cls(conv(a), conv(b), conv(c), conv(d))
        if not g.det():
            raise ValueError("matrix is singular")
        return g

    def det(self) -> RatK:
        return self.a * self.d - self.b * self.c

    def in_gl2a(self) -> bool:
        ok = all(x.is_poly() for x in (self.a, self.b, self.c, self.d))
        dt = self.det()
        return ok and dt.is_poly() and dt.num.degree == 0

    def __mul__(self, o: GL2K) -> GL2K:
        return GL2K(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def j(self, z: LocalElem) -> LocalElem:
        F = z.K
        return F.from_rat(self.c) * z + F.from_rat(self.d)

    def act(self, z: LocalElem) -> LocalElem:
        F = z.K
        return (F.from_rat(self.a) * z + F.from_rat(self.b)) / self.j(z)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


# ---------------------------------------------------------------- evaluation

def _degree_envelope(series, q: int) -> tuple:
    """(D0, s) with deg(c_n) <= D0 + s n + log_q(n) assumed for the tail.

    Every expansion built here comes from the t(mz) = 1/C_m(1/t), whose
    coefficient degrees grow at most like n/(q-1); products and Goss or
    hyperderivative coefficients (degree <= 0) keep that slope, and the
    weights m in the false Eisenstein sum add at most log_q(n).  The offset is
    fitted on the known window, and the slope is raised if the window grows faster.
    """
    s = 1.0 / (q - 1)
    lo, hi = max(series.val, 1), series.prec
    pts = [(n, series.coeff(n)) for n in range(lo, hi)]
    pts = [(n, c.degree()) for n, c in pts if c]
    if not pts:
        return -math.inf, s
    upper = [(n, d) for n, d in pts if n >= (lo + hi) // 2]
    for n, d in upper:
        s = max(s, d / n)
    D0 = max(d - s * n - math.log(n, q) for n, d in pts)
    return max(D0, 0.0), s


def eval_texp(f, pt: OmegaPoint, normalized: bool = True) -> LocalElem:
    """Value of the series at t(z), with the truncation error folded into the precision.

    With ``normalized=False`` the value is multiplied by PI^pi_power.
    """
    s = f.series
    F = pt.K
    if s.is_zero():
        out = F.zero()
    else:
        t = pt.t
        D0, slope = _degree_envelope(s, F.q)
        rate = slope + t.log_abs()
        if rate >= 0:
            raise OutsideConvergence(f"|t(z)| too large for the coefficient growth (rate {rate:.3f})")
        acc = F.zero()
        for n in range(s.prec - 1, s.val - 1, -1):
            acc = acc * t
            c = s.coeff(n)
            if c:
                acc = acc + F.from_rat(c)
        acc = acc * t ** s.val if s.val else acc
        if D0 == -math.inf:
            out = acc
        else:
            N = s.prec
            bound = D0 + math.log(N, F.q) + N * rate
            out = acc.truncate(math.floor(-bound * F.e))
    if not normalized and f.pi_power:
        out = out * F.pi() ** f.pi_power
    return out


def eval_nhf(Fm: NearlyHoloForm, pt: OmegaPoint, normalized: bool = True) -> LocalElem:
    """sum_i f_i(z) u(z)^i."""
    F = pt.K
    acc = F.zero()
    for i, f in enumerate(Fm.components):
        v = eval_texp(f, pt, normalized)
        acc = acc + (v * pt.u ** i if i else v)
    return acc


# ---------------------------------------------------------------- checks

@dataclass
class CheckLine:
    name: str
    digits: float  # log_q of 1/relative error (guaranteed part)
    passed: bool
    detail: str = ""

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        if self.detail and math.isnan(self.digits):
            return f"{mark} {self.name}: {self.detail}"
        return f"{mark} {self.name}: error <= q^-{self.digits:.1f}{' (' + self.detail + ')' if self.detail else ''}"


@dataclass
class Report:
    lines: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(x.passed for x in self.lines)

    def add(self, line: CheckLine):
        self.lines.append(line)

    def __str__(self):
        return "\n".join(str(x) for x in self.lines)


def relative_digits(lhs: LocalElem, rhs: LocalElem) -> float:
    """log_q of 1/|lhs - rhs|/|rhs|, using only what the precision guarantees."""
    e = rhs.K.e
    if rhs.is_zero():
        raise PrecisionExhausted("reference value is zero to precision")
    d = lhs - rhs
    top = d.prec if d.is_zero() else d.val
    return (top - rhs.val) / e


def _compare(name: str, lhs, rhs, tol: float, detail: str = "") -> CheckLine:
    dg = relative_digits(lhs, rhs)
    return CheckLine(name, dg, dg >= tol, detail)


def _as_nhf(F) -> NearlyHoloForm:
    return F if isinstance(F, NearlyHoloForm) else NearlyHoloForm.from_texp(F)


def check_modularity(Fm, gamma: GL2K, pt: OmegaPoint, tol: float) -> Report:
    """Transformation checks of a nearly holomorphic form under gamma.

    Lines: the functional equation of F, the transformation of
    u = 1/(PI(z - phi z)), and the induced system on the components
    f_i(gz) = j^(k-2i) det^(i-m) sum_{l>=i} binom(l, i) (c/(PI j))^(l-i) f_l(z).
    """
    Fm = _as_nhf(Fm)
    F = pt.K
    k, m = Fm.weight, Fm.type
    try:
        gpt = OmegaPoint(gamma.act(pt.z))
        lhs_F = eval_nhf(Fm, gpt)
    except OutsideConvergence as exc:
        raise DomainError(f"gamma z leaves the convergence region: {exc}") from exc
    j = gamma.j(pt.z)
    det = F.from_rat(gamma.det())
    rep = Report()
    rhs_F = j ** k * det ** (-m) * eval_nhf(Fm, pt)
    rep.add(_compare("functional_equation", lhs_F, rhs_F, tol))
    c = F.from_rat(gamma.c)
    lhs_u = gpt.diff.inv()
    rhs_u = j ** 2 * det.inv() * (pt.diff.inv() - c / j)
    rep.add(_compare("u_transformation", lhs_u, rhs_u, tol))
    Jc = c / (F.pi() * j)
    p = F.p
    vals = [eval_texp(f, pt) for f in Fm.components]
    for i, f in enumerate(Fm.components):
        lhs = eval_texp(f, gpt)
        acc = F.zero()
        for l in range(i, len(vals)):
            b = binom_mod_p(l, i, p)
            if b:
                acc = acc + vals[l] * Jc ** (l - i) * b
        rhs = j ** (k - 2 * i) * det ** (i - m) * acc
        if rhs.is_zero() and lhs.is_zero():
            rep.add(CheckLine(f"component_{i}", float("inf"), True, "both sides vanish"))
            continue
        rep.add(_compare(f"component_{i}", lhs, rhs, tol))
    return rep


def check_false_eisenstein(E, gamma: GL2K, pt: OmegaPoint, tol: float) -> CheckLine:
    """E(gz) = j^2 det^-1 (E(z) - c/(PI j))."""
    F = pt.K
    try:
        lhs = eval_texp(E, OmegaPoint(gamma.act(pt.z)))
    except OutsideConvergence as exc:
        raise DomainError(str(exc)) from exc
    j = gamma.j(pt.z)
    det = F.from_rat(gamma.det())
    c = F.from_rat(gamma.c)
    rhs = j ** 2 * det.inv() * (eval_texp(E, pt) - c / (F.pi() * j))
    return _compare("E_transformation", lhs, rhs, tol)


def check_u_transformation(gamma: GL2K, pt: OmegaPoint, tol: float) -> CheckLine:
    F = pt.K
    gz = gamma.act(pt.z)
    j = gamma.j(pt.z)
    det = F.from_rat(gamma.det())
    c = F.from_rat(gamma.c)
    lhs = (gz - gz.sigma()).inv()
    rhs = j ** 2 * det.inv() * (pt.diff.inv() - c / j)
    return _compare("u_transformation", lhs, rhs, tol)


def is_zero_to(x: LocalElem, digits: float) -> bool:
    """|x| <= q^-digits, guaranteed by the known precision."""
    e = x.K.e
    top = x.prec if x.is_zero() else x.val
    return top / e >= digits


def cm_checks(q: int, precision: int, N: int | None = None, seed: int = 0) -> Report:
    """Vanishing of g1~ and j at zeta in F_{q^2} minus F_q, a control point, Delta~(zeta) != 0."""
    from .texp import coefficient_forms
    e = q - 1
    F = local_field(q, 2, e, (precision + 2 * q + 12) * e)
    N = N if N is not None else 2 * precision + 4 * q
    g1, D = coefficient_forms(N, q)
    zeta = OmegaPoint(F.zeta())
    rep = Report()
    v1 = eval_texp(g1, zeta)
    rep.add(CheckLine("g1(zeta) = 0", _digits_abs(v1), is_zero_to(v1, precision)))
    vD = eval_texp(D, zeta)
    rep.add(CheckLine("Delta(zeta) != 0", float("nan"), not vD.is_zero(),
                      f"log_q|Delta(zeta)| = {vD.log_abs():.2f}" if vD else "zero to precision"))
    J = v1 ** (q + 1) / vD if vD else F.zero()
    rep.add(CheckLine("J(zeta) = 0", _digits_abs(J), bool(vD) and is_zero_to(J, precision)))
    ctrl = control_point(F, seed)
    vc = eval_texp(g1, ctrl)
    rep.add(CheckLine("g1(control) != 0", float("nan"), not vc.is_zero(),
                      f"log_q|g1| = {vc.log_abs():.2f}" if vc else "zero to precision"))
    return rep


def _digits_abs(x: LocalElem) -> float:
    top = x.prec if x.is_zero() else x.val
    return top / x.K.e


def control_point(F: LocalField, seed: int = 0) -> OmegaPoint:
    """zeta plus random higher u-digits (generic, not a CM point)."""
    rng = random.Random(seed)
    terms = [(0, F.F.gen_int())]
    for n in range(1, 12):
        terms.append((n, rng.randrange(F.F.order)))
    return OmegaPoint(F.from_terms(terms))


def sample_points(F: LocalField, count: int, seed: int = 0, h: int = 0) -> list:
    """Random z with |z| = |z|_im = q^h: leading zeta-multiple at T^h, random lower digits."""
    rng = random.Random(seed)
    out = []
    order = F.F.order
    while len(out) < count:
        lead = rng.randrange(order)
        if F.F.in_base(lead):
            continue
        terms = [(-F.e * h, lead)]
        for n in range(-F.e * h + 1, -F.e * h + 10):
            terms.append((n, rng.randrange(order)))
        out.append(OmegaPoint(F.from_terms(terms)))
    return out


# ---------------------------------------------------------------- lattice sums

def eisenstein_lattice_sum(pt: OmegaPoint, k: int, R: int | None = None, digits: float | None = None,
                           method: str = "linear") -> LocalElem:
    """PI^-k sum over nonzero lambda in Az + A of lambda^-k, by a finite ball.

    For |z| = |z|_im = q^h the ball V = {az + b : deg a <= R - h, deg b <= R}
    is an F_q-space, and sum_{v in V} v^-k = -[x^(k-1)] 1/e_V(x).  Each coset
    l + V outside V contributes G_{k,V}(1/e_V(l)) = e_V(l)^-k for k <= q, so
    the tail is bounded by |e_V(l*)|^-k with |l*| = q^(R+1).
    """
    F = pt.K
    q = F.q
    z = pt.z
    if z.val % F.e or z.imag_valuation() != z.val:
        raise DomainError("lattice sums need a reduced point with |z| = |z|_im = q^h")
    h = -z.val // F.e
    if h < 0:
        raise DomainError("lattice sums need |z| >= 1")
    if k > q:
        raise ValueError("the tail bound is implemented for k <= q")
    T = F.theta()
    if R is None:
        R = h
        while digits is not None and _tail_digits(R, h, q, k) < digits + k * (h + 1) + 1:
            R += 1
    basis = []
    b = F.from_terms([(0, 1)])
    for _ in range(R + 1):
        basis.append(b)
        b = b * T
    w = z
    for _ in range(R - h + 1):
        basis.append(w)
        w = w * T
    if method == "direct":
        S = _direct_sum(basis, k, F)
    else:
        S = _power_sum_linear(basis, k, F)
    tail = _tail_digits(R, h, q, k)
    S = S.truncate(math.floor(tail * F.e))
    return S * F.pi() ** (-k)


def _tail_digits(R: int, h: int, q: int, k: int) -> float:
    """-log_q |e_V(l*)|^-k bound (as a positive q-exponent) for the ball of radius q^R."""
    lam = R + 1
    total = lam
    for j in range(0, R + 1):
        # points of norm exactly q^j in V
        na = max(j - h + 1, 0)
        cnt = q ** (j + 1 + na)
        prev_na = max(j - 1 - h + 1, 0)
        prev = q ** (j + prev_na) if j > 0 else 1
        total += (cnt - prev) * (lam - j)
    return k * total


def _power_sum_linear(basis, k: int, F: LocalField) -> LocalElem:
    q = F.q
    levels = 0
    while q ** levels <= k:
        levels += 1
    alpha = [F.from_terms([(0, 1)])] + [F.zero()] * levels
    vals = list(basis)
    for idx in range(len(basis)):
        lam = vals[idx]
        if lam.is_zero():
            raise DomainError("basis vectors are dependent to precision")
        c = lam ** (q - 1)
        inv_c = c.inv()
        vals = [w - w.frob(1) * inv_c for w in vals]
        for i in range(levels, 0, -1):
            alpha[i] = alpha[i] - alpha[i - 1].frob(1) * inv_c
    # 1/e_V(x) = x^-1 (1 + sum_i alpha_i x^(q^i - 1))^-1, read [x^(k-1)]
    n = k
    w = [F.zero()] * (n + 1)
    for i in range(1, levels + 1):
        if q ** i - 1 <= n:
            w[q ** i - 1] = alpha[i]
    inv = [F.from_terms([(0, 1)])] + [F.zero()] * n
    for j in range(1, n + 1):
        acc = F.zero()
        for i in range(1, j + 1):
            if not w[i].is_zero():
                acc = acc + w[i] * inv[j - i]
        inv[j] = -acc
    return -inv[k]


def _direct_sum(basis, k: int, F: LocalField) -> LocalElem:
    """Enumerate V explicitly (small balls only)."""
    q = F.q
    pts = [F.zero()]
    for b in basis:
        pts = [x + b * c for x in pts for c in range(q)]
    acc = F.zero()
    for v in pts:
        if not v.is_zero():
            acc = acc + v.inv() ** k
    return acc
