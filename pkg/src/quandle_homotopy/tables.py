"""Table reproduction and batch sweeps over Alexander quandles on finite fields."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abelian import AbelianGroupClass
from .cache import ResultCache
from .cocycles import build_I, dim_H2, enumerate_Q
from .ffield import field, p_power_exponents
from .fixtures import TABLE1
from .homotopy import QuandleHomologyCache, pi2_BQ, pi2_dim_mod_p
from .quandle import gf_spec, regularity


@dataclass
class TableRow:
    label: str
    spec: str
    H2: AbelianGroupClass
    H3: AbelianGroupClass
    pi2: AbelianGroupClass
    derivation: str
    expected: tuple[str, str, str]
    second: dict | None = None

    @property
    def passed(self) -> bool:
        want = tuple(AbelianGroupClass.parse(t) for t in self.expected)
        ok = (self.H2, self.H3, self.pi2) == want
        if self.second is not None:
            ok = ok and self.second["matches"]
        return ok

    def to_json(self) -> dict:
        out = {"row": self.label, "spec": self.spec, "H2Q": str(self.H2), "H3Q": str(self.H3),
               "pi2": str(self.pi2), "derivation": self.derivation,
               "expected": list(self.expected), "passed": self.passed}
        if self.second is not None:
            out["second_representative"] = self.second
        return out


def _row_values(spec: str, store):
    hc = QuandleHomologyCache(spec, store)
    r = pi2_BQ(spec, hc)
    return hc.H(2), hc.H(3), r.value, r.derivation


def table1(store: ResultCache | None = None) -> list[TableRow]:
    rows = []
    for label, spec, second, h2, h3, p2 in TABLE1:
        H2, H3, pi2, how = _row_values(spec, store)
        extra = None
        if second is not None:
            s2 = _row_values(second, store)
            extra = {"spec": second, "H2Q": str(s2[0]), "H3Q": str(s2[1]), "pi2": str(s2[2]),
                     "matches": s2[:3] == (H2, H3, pi2)}
        rows.append(TableRow(label, spec, H2, H3, pi2, how, (h2, h3, p2), extra))
    return rows


def render_table(rows: list[TableRow]) -> str:
    head = ("X", "H2Q", "H3Q", "pi2(BQX)", "ok")
    body = [(r.label, str(r.H2), str(r.H3), str(r.pi2), "pass" if r.passed else "FAIL") for r in rows]
    widths = [max(len(x[i]) for x in [head] + body) for i in range(len(head))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join(fmt.format(*line) for line in [head] + body)


# --- sweeps over F_q[T]/(T - omega) ---------------------------------------------------

def field_record(p: int, h: int, omega: int, modulus=None) -> dict:
    """Cocycle counts and the F_p-dimension of pi_2 for one ``(q, omega)``."""
    F = field(p, h, modulus)
    spec = gf_spec(F, omega)
    rep = build_I(F, omega, explicit=False)
    reg = regularity(spec)
    pw = p_power_exponents(F)
    one = lambda k: F.pow(omega, k) == 1
    triples = sum(1 for a, b, c in product(pw, repeat=3) if a < b < c and one(a + b + c))
    flags = []
    if h == 3 and one(1 + p + p * p):
        flags.append("omega^(1+p+p^2)=1")
    if h == 2 and one(1 + p):
        flags.append("omega^(1+p)=1")
    if omega == F.neg(1):
        flags.append("omega=-1")
    rec = {
        "spec": spec.label, "p": p, "h": h, "q": F.q, "omega": F.format(omega),
        "omega_order": F.element_order(omega), "regular": reg.regular,
        "b2": rep.b2, "b3": rep.b3, "I_size": rep.size,
        "Q_size": len(enumerate_Q(F, omega)), "ordered_triples": triples,
        "members": [m.label for m in rep.members], "flags": flags,
    }
    rec["pi2_dim_mod_p"] = pi2_dim_mod_p(rep.b2, rep.b3, p) if p != 2 else None
    return rec


def sweep(primes, degrees, omegas=None, store: ResultCache | None = None) -> list[dict]:
    """One record per ``(q, omega)``; ``omegas`` restricts the omega texts considered."""
    store = store or ResultCache()
    out = []
    for p in primes:
        for h in degrees:
            F = field(p, h)
            candidates = range(2, F.q) if omegas is None else [F.parse(w) for w in omegas]
            for w in candidates:
                if w in (0, 1):
                    continue
                key = ["sweep", str(F), F.format(w)]
                out.append(store.get_or_compute(key, lambda: field_record(p, h, w)))
    return out


def h2_consistency(p: int, h: int, omega: int) -> dict:
    """Cocycle count ``dim_H2`` against the F_p-dimension of ``H_2^Q(X; F_p)``."""
    from .chains import build_complex, homology
    from .quandle import alexander
    F = field(p, h)
    spec = gf_spec(F, omega)
    X = alexander(spec)
    C = build_complex(X, variant="Q", n_max=3)
    dimFp = homology(C, 2, p)
    H2 = homology(C, 2)
    b2 = sum(1 for d in H2.torsion if d % p == 0) + H2.rank
    count = dim_H2(F, omega)
    return {"spec": spec.label, "h": h, "dim_H2": count, "dim_H2_Fp": dimFp,
            "b2": b2, "h_times_dim_H2": h * count}
