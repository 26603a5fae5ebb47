"""Words in two letters, the reducibility predicate, and normal forms.

The free algebra F on x, y is graded by word length.  Inside it sit the
span Omega of irreducible words and the two-sided span Lambda of the
cubic q-Serre elements; F_n = Omega_n + Lambda_n is a direct sum.  The
quotient algebra carries x, y, z, z^-1 subject to

    z z^-1 = 1 = z^-1 z
    z x = q^2 x z
    z y = q^-2 y z
    x^3 y - [3] x^2 y x + [3] x y x^2 - y x^3 = alpha x^2 z^-2
    x y^3 - [3] y x y^2 + [3] y^2 x y - y^3 x = alpha z^-2 y^2

and every element reduces to a combination of irreducible words times
a power of z.
"""

from __future__ import annotations

from itertools import product

from .errors import DomainError, FieldMismatch, ParseError, StructuralError
from .linalg import MatrixE
from .scalars import FieldSpec, Scalar, q_factorial, q_int

_LETTERS = ("x", "y")


def _check_word(w: str) -> str:
    for ch in w:
        if ch not in _LETTERS:
            raise DomainError(f"word letter must be x or y, got {ch!r}")
    return w


def all_words(n: int):
    """All 2^n words of length n in lexicographic order."""
    if n < 0:
        raise DomainError("word length must be nonnegative")
    return ["".join(p) for p in product(_LETTERS, repeat=n)]


def signature_of(w: str):
    """Run lengths of the word, e.g. yx^2y^2x -> (1, 2, 2, 1)."""
    _check_word(w)
    runs = []
    for ch in w:
        if runs and ch == last:
            runs[-1] += 1
        else:
            runs.append(1)
            last = ch
    return tuple(runs)


def is_reducible(w: str) -> bool:
    """Whether some interior run has i_{h-1} >= i_h < i_{h+1}.

    Computed twice: from the interior-run pattern and from the
    complementary unimodal shape i_1 < ... < i_t >= ... >= i_s of
    irreducible words.  The two must agree.
    """
    runs = signature_of(w)
    s = len(runs)
    pattern = any(
        runs[k - 1] >= runs[k] < runs[k + 1] for k in range(1, s - 1)
    )
    k = 0
    while k + 1 < s and runs[k] < runs[k + 1]:
        k += 1
    while k + 1 < s and runs[k] >= runs[k + 1]:
        k += 1
    unimodal = k == max(s - 1, 0)
    if pattern != (not unimodal):
        raise StructuralError(
            f"reducibility characterizations disagree on {w!r}"
        )
    return pattern


def enumerate_irreducible(n: int):
    """All irreducible words of length n, lexicographically."""
    return [w for w in all_words(n) if not is_reducible(w)]


# ---------------------------------------------------------------------------
# elements of the quotient algebra


class AlgebraElement:
    """Finite sum of terms coeff * word * z^j, no zero coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms):
        clean = {}
        for (w, j), coeff in terms.items():
            _check_word(w)
            if not isinstance(coeff, Scalar) or coeff.field != field:
                raise FieldMismatch("term coefficients must share the field")
            if not coeff.is_zero():
                clean[(w, int(j))] = coeff
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @staticmethod
    def zero(field: FieldSpec) -> "AlgebraElement":
        return AlgebraElement(field, {})

    @staticmethod
    def word(field: FieldSpec, w: str, zexp: int = 0,
             coeff=None) -> "AlgebraElement":
        if coeff is None:
            coeff = field.one()
        return AlgebraElement(field, {(w, zexp): coeff})

    def items(self):
        """Terms in the deterministic (length, word, z-exponent) order."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]),) + t[0])

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, AlgebraElement) or other.field != self.field:
            return NotImplemented
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            acc[key] = acc[key] + coeff if key in acc else coeff
        return AlgebraElement(self.field, acc)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement) or other.field != self.field:
            return NotImplemented
        return self + other.scale(-self.field.one())

    def scale(self, s: Scalar) -> "AlgebraElement":
        return AlgebraElement(
            self.field, {k: v * s for k, v in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<AlgebraElement {self}>"


def xy_length(e: AlgebraElement) -> int:
    """Longest word length over the terms; zero for the zero element."""
    return max((len(w) for (w, _) in e.terms), default=0)


class AqAlpha:
    """The quotient algebra's parameter: alpha may be any scalar."""

    __slots__ = ("alpha", "field")

    def __init__(self, alpha: Scalar, field: FieldSpec):
        if not isinstance(alpha, Scalar) or alpha.field != field:
            raise FieldMismatch("alpha must belong to the given field")
        self.alpha = alpha
        self.field = field


# ---------------------------------------------------------------------------
# the graded decomposition F_n = Omega_n + Lambda_n
#
# Lambda_n is spanned by u g v with |u| + |v| = n - 4 and g one of the
# two cubic q-Serre elements.  Coordinates are ordered with reducible
# words first; since Lambda meets Omega trivially, every echelon pivot
# then lands on a reducible word, and the pivots exhaust them exactly
# when the sum is direct.


def _serre_words(field: FieldSpec, gid: int):
    three = q_int(3, field)
    one = field.one()
    if gid == 1:
        return (("xxxy", one), ("xxyx", -three), ("xyxx", three),
                ("yxxx", -one))
    return (("xyyy", one), ("yxyy", -three), ("yyxy", three),
            ("yyyx", -one))


class _SplitTable:
    __slots__ = ("n", "field", "red", "irr", "coord", "gens", "rows",
                 "_decomp")

    def __init__(self, n: int, field: FieldSpec):
        self.n = n
        self.field = field
        words = all_words(n)
        self.red = [w for w in words if is_reducible(w)]
        self.irr = [w for w in words if not is_reducible(w)]
        self.coord = {w: i for i, w in enumerate(self.red + self.irr)}
        self.gens = []
        if n >= 4:
            for i in range(n - 3):
                for u in all_words(i):
                    for v in all_words(n - 4 - i):
                        for gid in (1, 2):
                            self.gens.append((u, gid, v))
        self.rows = self._echelonize()
        if len(self.rows) != len(self.red):
            raise StructuralError(
                f"graded split at length {n}: expected "
                f"{len(self.red)} independent relations, got {len(self.rows)}"
            )
        self._decomp = {}

    def _echelonize(self):
        rows = []
        for idx, (u, gid, v) in enumerate(self.gens):
            vec = {}
            for mid, coeff in _serre_words(self.field, gid):
                vec[self.coord[u + mid + v]] = coeff
            combo = {idx: self.field.one()}
            self._eliminate(rows, vec, combo)
            if vec:
                piv = min(vec)
                inv = vec[piv].inverse()
                vec = {c: s * inv for c, s in vec.items()}
                combo = {g: s * inv for g, s in combo.items()}
                rows.append((piv, vec, combo))
                rows.sort(key=lambda r: r[0])
        # back substitution, largest pivot first, for a canonical basis
        for idx in range(len(rows) - 1, -1, -1):
            _, vec, combo = rows[idx]
            for piv2, vec2, combo2 in rows[idx + 1:]:
                c = vec.get(piv2)
                if c is not None and not c.is_zero():
                    _axpy(vec, vec2, -c)
                    _axpy(combo, combo2, -c)
        for piv, _, _ in rows:
            if piv >= len(self.red):
                raise StructuralError(
                    f"graded split at length {self.n}: pivot escaped the "
                    "reducible block"
                )
        return rows

    @staticmethod
    def _eliminate(rows, vec, combo):
        for piv, rvec, rcombo in rows:
            c = vec.get(piv)
            if c is not None and not c.is_zero():
                _axpy(vec, rvec, -c)
                _axpy(combo, rcombo, -c)

    def decompose(self, w: str):
        """Split the unit vector of w into irreducible and relation parts."""
        cached = self._decomp.get(w)
        if cached is not None:
            return cached
        residue = {self.coord[w]: self.field.one()}
        combo = {}
        for piv, rvec, rcombo in self.rows:
            c = residue.get(piv)
            if c is not None and not c.is_zero():
                _axpy(residue, rvec, -c)
                _axpy(combo, rcombo, c)
        nred = len(self.red)
        words = self.red + self.irr
        omega = {}
        for coord, coeff in residue.items():
            if coord < nred:
                raise StructuralError(
                    f"residue of {w!r} kept a reducible coordinate"
                )
            omega[words[coord]] = coeff
        out = (omega, combo)
        self._decomp[w] = out
        return out


def _axpy(target: dict, source: dict, c: Scalar):
    for key, val in source.items():
        acc = target.get(key)
        acc = val * c if acc is None else acc + val * c
        if acc.is_zero():
            target.pop(key, None)
        else:
            target[key] = acc


_SPLIT_CACHE: dict = {}


def _split_table(n: int, field: FieldSpec) -> _SplitTable:
    key = (n, field)
    table = _SPLIT_CACHE.get(key)
    if table is None:
        table = _SplitTable(n, field)
        _SPLIT_CACHE[key] = table
    return table


def graded_split(n: int, field: FieldSpec):
    """Bases of Omega_n (irreducible words) and Lambda_n (row reduced)."""
    table = _split_table(n, field)
    omega = [AlgebraElement.word(field, w) for w in table.irr]
    lam = []
    words = table.red + table.irr
    for _, vec, _ in table.rows:
        lam.append(AlgebraElement(
            field, {(words[c], 0): s for c, s in vec.items()}
        ))
    return omega, lam


# ---------------------------------------------------------------------------
# reduction to the irreducible normal form


def reduce_element(e: AlgebraElement, alg: AqAlpha) -> AlgebraElement:
    """Rewrite e so only irreducible words remain.

    Longest words are rewritten first; each relation application trades
    a relation element for a two-letters-shorter word times z^-2, so the
    recursion depth is bounded by half the (x,y)-length.
    """
    if e.field != alg.field:
        raise FieldMismatch("element and algebra fields differ")
    field = e.field
    qv = field.q()
    buckets: dict = {}
    for (w, j), coeff in e.terms.items():
        buckets.setdefault(len(w), {})[(w, j)] = coeff
    out: dict = {}
    while buckets:
        n = max(buckets)
        table = _split_table(n, field) if n >= 4 else None
        for (w, j), coeff in buckets.pop(n).items():
            if coeff.is_zero():
                continue
            if table is None or not is_reducible(w):
                _accumulate(out, (w, j), coeff)
                continue
            omega, combo = table.decompose(w)
            for wi, a in omega.items():
                _accumulate(out, (wi, j), coeff * a)
            if alg.alpha.is_zero():
                continue
            lower = buckets.setdefault(n - 2, {})
            for gidx, b in combo.items():
                u, gid, v = table.gens[gidx]
                shift = -4 * v.count("x") + 4 * v.count("y")
                mid = "xx"
                if gid == 2:
                    shift += 8
                    mid = "yy"
                moved = coeff * b * alg.alpha * qv ** shift
                _accumulate(lower, (u + mid + v, j - 2), moved)
    return AlgebraElement(field, out)


def _accumulate(acc: dict, key, coeff: Scalar):
    prev = acc.get(key)
    acc[key] = coeff if prev is None else prev + coeff


# ---------------------------------------------------------------------------
# the element grammar
#
#   element := term ('+' term)*
#   term    := coeff | word | coeff '*' word
#   word    := (('x'|'y'|'z'|'Z') ('^' signed-integer)?)*
#
# Z abbreviates z^-1.  Interleaved z letters are normalized to a single
# trailing z power via zx = q^2 xz and zy = q^-2 yz.


def parse_element(text: str, field: FieldSpec) -> AlgebraElement:
    terms: dict = {}
    qv = field.q()
    for seg, off in _split_terms(text):
        if not seg.strip():
            raise ParseError("empty term", off)
        wstart = _word_start(seg)
        if wstart is None:
            coeff = field.parse(seg.strip())
            key = ("", 0)
        else:
            head = seg[:wstart].rstrip()
            if not head:
                coeff = field.one()
            elif head.endswith("*"):
                coeff_text = head[:-1].strip()
                if not coeff_text:
                    raise ParseError("missing coefficient", off)
                coeff = field.parse(coeff_text)
            else:
                raise ParseError(
                    "expected '*' between coefficient and word",
                    off + wstart,
                )
            word, zexp, qshift = _parse_word(seg, wstart, off)
            coeff = coeff * qv ** qshift
            key = (word, zexp)
        prev = terms.get(key)
        terms[key] = coeff if prev is None else prev + coeff
    return AlgebraElement(field, terms)


def _split_terms(text: str):
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", i)
        elif ch == "+" and depth == 0:
            yield text[start:i], start
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced parenthesis", len(text))
    yield text[start:], start


def _word_start(seg: str):
    depth = 0
    for i, ch in enumerate(seg):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "xyzZ":
            return i
    return None


def _parse_word(seg: str, i: int, off: int):
    # the word grammar is compact: no whitespace between its tokens
    text = seg.rstrip()
    word = []
    zexp = 0
    qshift = 0
    m = len(text)
    while i < m:
        ch = text[i]
        if ch not in "xyzZ":
            raise ParseError(f"unexpected {ch!r} in word", off + i)
        i += 1
        k = 1
        if i < m and text[i] == "^":
            i += 1
            j = i
            if j < m and text[j] in "+-":
                j += 1
            while j < m and text[j].isdigit():
                j += 1
            if j == i or not text[i:j].lstrip("+-"):
                raise ParseError("expected integer exponent", off + i)
            k = int(text[i:j])
            i = j
        if ch in _LETTERS:
            if k < 0:
                raise ParseError(
                    f"letter {ch} takes a nonnegative exponent", off + i
                )
            qshift += (2 if ch == "x" else -2) * zexp * k
            word.append(ch * k)
        elif ch == "z":
            zexp += k
        else:
            zexp -= k
    return "".join(word), zexp, qshift


def _needs_parens(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and i > 0 and ch in "+-":
            if text[i - 1] not in "^*/(+-":
                return True
    return False


def format_element(e: AlgebraElement) -> str:
    if e.is_zero():
        return "0"
    parts = []
    for (w, j), coeff in e.items():
        tokens = []
        for run in _runs(w):
            tokens.append(run[0] if len(run) == 1 else f"{run[0]}^{len(run)}")
        if j == 1:
            tokens.append("z")
        elif j != 0:
            tokens.append(f"z^{j}")
        cs = str(coeff)
        if _needs_parens(cs):
            cs = f"({cs})"
        if not tokens:
            parts.append(cs)
        elif coeff.is_one():
            parts.append("".join(tokens))
        else:
            parts.append(cs + " * " + "".join(tokens))
    return " + ".join(parts)


def _runs(w: str):
    out = []
    for ch in w:
        if out and out[-1][0] == ch:
            out[-1] += ch
        else:
            out.append(ch)
    return out


# ---------------------------------------------------------------------------
# the representation on V


def rho_verify(split, suite, c: Scalar, *, alpha: Scalar | None = None,
               max_len: int = 6, z_exps=(-2, 0, 2)):
    """Check that x, y, z, z^-1 act on V as r, l, B, B^-1.

    The defining relations are evaluated as matrices, and for every word
    w of (x,y)-length at most max_len and every listed z power, the
    matrix of w z^j is compared with the matrix of its reduced form.
    By default alpha is c q^-4 (q - q^-1)^3 [3]!, the constant the
    augmented cubic relations produce on a pair with parameter c.
    """
    if suite.Atilde is None:
        raise DomainError("representation check requires a q-mixed pair")
    field = split.pair.field
    if not isinstance(c, Scalar) or c.field != field:
        raise FieldMismatch("c must belong to the pair's field")
    qv = field.q()
    if alpha is None:
        alpha = c * qv ** -4 * (qv - qv ** -1) ** 3 * q_factorial(3, field)
    r, l = split.r, split.l
    B, Binv = suite.B, suite.Binv
    n = split.pair.n
    ident = MatrixE.identity(field, n)
    three = q_int(3, field)

    def cubic(X, Y):
        X2 = X * X
        X3 = X2 * X
        return X3 * Y - (X2 * (Y * X)).scale(three) \
            + (X * (Y * X2)).scale(three) - Y * X3

    relations = {
        "z_inverse": B * Binv == ident and Binv * B == ident,
        "zx_commutation": B * r == (r * B).scale(qv ** 2),
        "zy_commutation": B * l == (l * B).scale(qv ** -2),
        "serre_x_augmented": cubic(r, l) == (r * r * Binv * Binv).scale(alpha),
        "serre_y_augmented": cubic(l, r) == (Binv * Binv * l * l).scale(-alpha),
    }

    rho = {"": ident}
    for m in range(1, max_len + 1):
        for w in all_words(m):
            rho[w] = rho[w[:-1]] * (r if w[-1] == "x" else l)
    bpow = {}

    def rho_term(w, j):
        mat = bpow.get(j)
        if mat is None:
            mat = B ** j if j >= 0 else Binv ** (-j)
            bpow[j] = mat
        return rho[w] * mat

    alg = AqAlpha(alpha, field)
    failures = []
    count = 0
    for m in range(max_len + 1):
        for w in all_words(m):
            for j in z_exps:
                count += 1
                lhs = rho_term(w, j)
                red = reduce_element(AlgebraElement.word(field, w, j), alg)
                rhs = MatrixE.zeros(field, n, n)
                for (wr, jr), coeff in red.terms.items():
                    rhs = rhs + rho_term(wr, jr).scale(coeff)
                if lhs != rhs:
                    failures.append(f"{w or '1'} z^{j}")
    report = {
        "alpha": str(alpha),
        "relations": relations,
        "corpus_size": count,
        "corpus_failures": failures,
        "pass": all(relations.values()) and not failures,
    }
    return report
