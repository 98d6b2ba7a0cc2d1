"""Finitely presented groups: relator words, free reduction, abelianization."""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9']*)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?)?")


def parse_relator(text: str):
    """``"v^2 w u w^-3 u"`` -> list of (generator, ±1) letters, powers expanded.

    Whitespace and ``·`` / ``*`` separate factors.  Multi-character generator
    names (``x7``) must be separated.
    """
    out = []
    for part in re.split(r"[\s·*]+", text.strip()):
        if not part:
            continue
        pos = 0
        while pos < len(part):
            m = _TOKEN.match(part, pos)
            if not m:
                raise ValueError(f"cannot parse {part!r} in {text!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if len(name) > 1 and not re.fullmatch(r"[a-z]\d+'?", name):
                # juxtaposed single letters such as "abc"
                for ch in name[:-1]:
                    out.append((ch, 1))
                name = name[-1]
            sgn = 1 if exp > 0 else -1
            out.extend([(name, sgn)] * abs(exp))
            pos = m.end()
    return out


def free_reduce(letters):
    stack = []
    for g, e in letters:
        if stack and stack[-1] == (g, -e):
            stack.pop()
        else:
            stack.append((g, e))
    return stack


def cyclic_reduce(letters):
    w = free_reduce(letters)
    while len(w) > 1 and w[0] == (w[-1][0], -w[-1][1]):
        w = w[1:-1]
    return w


def invert(letters):
    return [(g, -e) for g, e in reversed(letters)]


def format_word(letters) -> str:
    """Collapse runs back into powers: [('v',1),('v',1),('w',-1)] -> 'v^2 w^-1'."""
    parts = []
    i = 0
    while i < len(letters):
        g, e = letters[i]
        j = i
        while j < len(letters) and letters[j] == (g, e):
            j += 1
        n = (j - i) * e
        parts.append(g if n == 1 else f"{g}^{n}")
        i = j
    return " ".join(parts)


def same_relator(a, b) -> bool:
    """True when two relators agree up to cyclic rotation and inversion."""
    wa = cyclic_reduce(parse_relator(a) if isinstance(a, str) else a)
    wb = cyclic_reduce(parse_relator(b) if isinstance(b, str) else b)
    if len(wa) != len(wb):
        return False
    if not wa:
        return True
    for cand in (wb, invert(wb)):
        for r in range(len(cand)):
            if cand[r:] + cand[:r] == wa:
                return True
    return False


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple  # strings

    def words(self):
        return [parse_relator(r) for r in self.relators]

    def exponent_matrix(self) -> np.ndarray:
        idx = {g: i for i, g in enumerate(self.generators)}
        M = np.zeros((len(self.relators), len(self.generators)), dtype=object)
        for i, w in enumerate(self.words()):
            for g, e in w:
                if g not in idx:
                    raise ValueError(f"unknown generator {g!r}")
                M[i, idx[g]] += e
        return M

    def __str__(self):
        return f"< {', '.join(self.generators)} | {', '.join(self.relators)} >"


def smith_normal_form(M):
    """Diagonal of the Smith normal form of an integer matrix.

    Works on Python ints (object arrays), so there is no overflow.
    """
    A = [[int(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    for s in range(min(m, n)):
        # pivot: smallest nonzero absolute value in the remaining block
        while True:
            piv = None
            for i in range(s, m):
                for j in range(s, n):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return diag + [0] * (min(m, n) - s)
            i, j = piv
            A[s], A[i] = A[i], A[s]
            for row in A:
                row[s], row[j] = row[j], row[s]
            p = A[s][s]
            done = True
            for i in range(s + 1, m):
                q = A[i][s] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[s])]
                if A[i][s]:
                    done = False
            for j in range(s + 1, n):
                q = A[s][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[s]
                if A[s][j]:
                    done = False
            if not done:
                continue
            # divisibility condition for the remaining block
            bad = next(((i, j) for i in range(s + 1, m) for j in range(s + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[s] = [a + b for a, b in zip(A[s], A[bad[0]])]
        diag.append(abs(A[s][s]))
    return diag


def abelianization(p: GroupPresentation):
    """(free rank, torsion factors > 1) of the abelianized group."""
    ngen = len(p.generators)
    if not p.relators:
        return ngen, []
    d = smith_normal_form(p.exponent_matrix())
    nonzero = [x for x in d if x != 0]
    return ngen - len(nonzero), [x for x in nonzero if x != 1]


def format_abelian(rank: int, torsion) -> str:
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


# --------------------------------------------------------------------------
# the presentations of interest

UVW = GroupPresentation(("u", "v", "w"), ("w^-1 v u^-1 v^-1 w u", "v^2 w u w^-3 u"))
S782 = GroupPresentation(("a", "b", "c"), ("a^2 c b^4 c", "a b c a^-1 b^-1 c^-1"))
UVW_SUBSTITUTION = {"u": "T", "v": "S^-1T", "w": "S^-1"}


def x_presentation():
    from .boundary import PAPER_RELATORS

    return GroupPresentation(tuple(f"x{i}" for i in range(1, 9)), tuple(PAPER_RELATORS))


def presentation() -> GroupPresentation:
    return UVW


def to_st_word(relator: str, substitution=None) -> str:
    """Rewrite a relator in u, v, w (or x1..x8) as a freely reduced S/T word."""
    from .boundary import X_WORDS
    from .isometry import invert_word, reduce_word
    from .triangle import parse_word

    sub = dict(X_WORDS)
    sub.update(substitution or UVW_SUBSTITUTION)
    out = []
    for g, e in parse_relator(relator):
        w = parse_word(sub[g])
        out.append(w if e > 0 else invert_word(w))
    return reduce_word("".join(out))


def st_exponent_sums(word: str):
    """Exponent sums (S, T) of a letter word over S s T t."""
    return (word.count("S") - word.count("s"), word.count("T") - word.count("t"))


def verify_presentation():
    from .ford import Claim, FordReport
    from .hermitian import projective_equal
    from .triangle import PI3, build, evaluate

    g = build(PI3)
    rep = FordReport(PI3, 0)
    for r in UVW.relators:
        st = to_st_word(r)
        m = evaluate(g, st).matrix if st else np.eye(3)
        ok, res = projective_equal(m, np.eye(3))
        rep.add(Claim(f"relator:{r}", "presentation", bool(ok), -res, None,
                      {"st_word": st, "exponent_sums_ST": st_exponent_sums(st)}))
    ab_uvw = abelianization(UVW)
    ab_s782 = abelianization(S782)
    ab_x = abelianization(x_presentation())
    rep.add(Claim("abelianization:uvw", "presentation", ab_uvw == (2, [2]), 0.0, None,
                  {"group": format_abelian(*ab_uvw)}))
    rep.add(Claim("abelianization:s782", "presentation", ab_s782 == (2, [2]), 0.0, None,
                  {"group": format_abelian(*ab_s782)}))
    rep.add(Claim("abelianization:x-presentation", "presentation", ab_x == ab_uvw, 0.0, None,
                  {"group": format_abelian(*ab_x),
                   "note": "necessary-condition check, not an isomorphism proof"}))
    return rep
