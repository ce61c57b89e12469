"""Submodule growth from singular vectors, derivative-torsion closure,
quotient ranks, lowering-chain reachability, and one-call rows.

The subspace N grown here is the creation closure of the sl2 closure of
the seed vectors, held as exact levelwise bases up to a doubled-level
cutoff; since the seeds are singular this equals the levelwise slice of
the submodule they generate.  Ranks over the polynomial ring in the
derivative are read off a stabilized window of two adjacent levels (one
even, one odd), which is where a free module shows its rank directly.
"""

import os
from collections import deque, namedtuple
from fractions import Fraction

from .algebra import (GenMode, N2, N4B, generators, genmode, genmodes_upto,
                      normalize_alg, render_genmode, render_mode2)
from .exactfield import ONE, Scalar
from .linalg import Echelon, nullspace
from .singular import _full_checkers, find_singular
from .verma import VermaVector, act, build_module, dshift


class ClassifyError(ValueError):
    pass


DEFAULT_CUTOFF2 = 12


def default_cutoff2():
    """The doubled-level cutoff, overridable through SCF_CUTOFF2."""
    raw = os.environ.get("SCF_CUTOFF2")
    if raw is None:
        return DEFAULT_CUTOFF2
    try:
        val = int(raw)
    except ValueError:
        raise ClassifyError("SCF_CUTOFF2 must be an integer, got %r" % raw)
    if val < 4:
        raise ClassifyError("SCF_CUTOFF2 must be at least 4, got %d" % val)
    return val


def _sl2_ops(alg):
    if alg == N2:
        return ()
    ops = [GenMode("E", 0), GenMode("F", 0)]
    if alg == N4B:
        ops.extend((GenMode("E_bar", 0), GenMode("F_bar", 0)))
    return tuple(ops)


class GradedSubspace(object):
    """Levelwise exact bases of a creation- and sl2-stable subspace."""

    def __init__(self, module, cutoff2):
        self.module = module
        self.cutoff2 = int(cutoff2)
        self.torsion_added = ()
        self._levels = {}

    def _level(self, lv2):
        ech = self._levels.get(lv2)
        if ech is None:
            pos = {k: i
                   for i, k in enumerate(self.module.keys_at_level2(lv2))}
            ech = Echelon(lambda k, pos=pos: pos[k])
            self._levels[lv2] = ech
        return ech

    def insert(self, v):
        """Insert a level-homogeneous vector; True when it was new.
        Vectors above the cutoff are dropped."""
        if not v:
            return False
        lv2 = v.level2()
        if lv2 is None:
            raise ClassifyError("vector is not level homogeneous")
        if lv2 > self.cutoff2:
            return False
        return self._level(lv2).insert(dict(v.terms)) is not None

    def dim(self, lv2):
        ech = self._levels.get(lv2)
        return ech.dim if ech is not None else 0

    def basis(self, lv2):
        ech = self._levels.get(lv2)
        if ech is None:
            return []
        return [VermaVector(self.module, dict(r)) for r in ech.rows()]

    def reduce(self, v):
        if not v:
            return v
        lv2 = v.level2()
        if lv2 is None:
            raise ClassifyError("vector is not level homogeneous")
        ech = self._levels.get(lv2)
        if ech is None:
            return v
        return VermaVector(self.module, ech.reduce(dict(v.terms)))

    def contains(self, v):
        return not self.reduce(v)

    def copy(self):
        out = GradedSubspace(self.module, self.cutoff2)
        out.torsion_added = self.torsion_added
        for lv2 in self._levels:
            for w in self.basis(lv2):
                out.insert(w)
        return out


def _saturate(sub, seeds):
    """Grow `sub` to the creation and sl2 closure of itself plus seeds."""
    M = sub.module
    sl2 = _sl2_ops(M.alg)
    new_at = {}
    for s in seeds:
        if not s:
            raise ClassifyError("zero seed vector")
        lv2 = s.level2()
        if lv2 is None:
            raise ClassifyError("seed is not level homogeneous")
        if lv2 <= sub.cutoff2:
            new_at.setdefault(lv2, []).append(s)
    for lv2 in range(sub.cutoff2 + 1):
        queue = list(new_at.get(lv2, []))
        if lv2 >= 2:
            queue.extend(dshift(M, w) for w in sub.basis(lv2 - 2))
        if lv2 >= 1:
            for w in sub.basis(lv2 - 1):
                queue.extend(act(M, g, w) for g in M.odd_gens)
        while queue:
            v = queue.pop()
            if sub.insert(v):
                queue.extend(act(M, op, v) for op in sl2)
    return sub


def submodule_generated(M, seeds, level_cutoff2):
    """Levelwise bases of the submodule the seed vectors generate."""
    return _saturate(GradedSubspace(M, level_cutoff2), list(seeds))


def torsion_closure(M, N, level_cutoff2):
    """Adjoin every vector whose derivative falls into the subspace,
    re-close, and repeat until nothing new appears."""
    if level_cutoff2 > N.cutoff2:
        raise ClassifyError("cutoff exceeds the computed range")
    sub = N.copy()
    adjoined = list(sub.torsion_added)
    while True:
        found = []
        # level 0 is excluded: adjoining any part of the irreducible
        # weight-0 slice would pull in the whole module
        for lv2 in range(1, level_cutoff2 - 1):
            keys = M.keys_at_level2(lv2)
            if not keys:
                continue
            rows = {}
            for k in keys:
                img = sub.reduce(dshift(M, VermaVector(M, {k: ONE})))
                for k2, c in img.terms.items():
                    rows.setdefault(k2, {})[k] = c
            sols = nullspace([rows[t] for t in sorted(rows)], keys)
            for s in sols:
                w = sub.reduce(VermaVector(M, {k: c
                                               for k, c in s.items() if c}))
                if w:
                    found.append(w)
        fresh = []
        for w in found:
            w = sub.reduce(w)
            if w:
                fresh.append(w)
                sub.insert(w)
        if not fresh:
            break
        adjoined.extend(fresh)
        _saturate(sub, fresh)
    sub.torsion_added = tuple(adjoined)
    return sub


def quotient_dims(M, N, level_cutoff2):
    """Exact quotient dimension per doubled level, as a list indexed by
    the doubled level."""
    if level_cutoff2 > N.cutoff2:
        raise ClassifyError("cutoff exceeds the computed range")
    return [len(M.keys_at_level2(lv2)) - N.dim(lv2)
            for lv2 in range(level_cutoff2 + 1)]


RankResult = namedtuple(
    "RankResult", ["stabilized", "rank", "rank_even", "rank_odd",
                   "window_level2"])

NOT_STABILIZED = RankResult(False, None, None, None, None)


def rank_of(M, N, level_cutoff2):
    """Rank of the quotient over the derivative ring, read from the
    last stable two-level window; requires the window to repeat at
    least twice below the cutoff.

    The parity split is by level: every basis monomial at an even
    doubled level is even, every one at an odd doubled level is odd.
    """
    dims = quotient_dims(M, N, level_cutoff2)
    windows = []
    half = 0
    while 2 * half + 1 <= level_cutoff2:
        windows.append((dims[2 * half], dims[2 * half + 1]))
        half += 1
    if len(windows) < 2:
        return NOT_STABILIZED
    last = windows[-1]
    run = 0
    for w in reversed(windows):
        if w != last:
            break
        run += 1
    if run < 2:
        return NOT_STABILIZED
    even, odd = last
    return RankResult(True, even + odd, even, odd,
                      2 * (len(windows) - run))


def quotient_generators(M, N, level_cutoff2):
    """Single-monomial representatives of the quotient's generators
    over the derivative ring, in level order."""
    gens = []
    for lv2 in range(level_cutoff2 + 1):
        keys = M.keys_at_level2(lv2)
        if not keys:
            continue
        pos = {k: i for i, k in enumerate(keys)}
        ech = Echelon(lambda k, pos=pos: pos[k])
        for w in N.basis(lv2):
            ech.insert(dict(w.terms))
        if lv2 >= 2:
            for below in M.keys_at_level2(lv2 - 2):
                ech.insert(dict(dshift(M, VermaVector(M, {below: ONE})).terms))
        for k in keys:
            if ech.insert({k: ONE}) is not None:
                gens.append(VermaVector(M, {k: ONE}))
    return gens


def _lowering_ops(alg, max_degree2):
    order = {g: i for i, g in enumerate(generators(alg))}
    ops = [g for g in genmodes_upto(alg, max_degree2, annihilation_only=True)
           if g.mode2 >= 1]
    ops.sort(key=lambda g: (g.mode2, order[g.gen]))
    return tuple(ops)


def _raise_ops(M):
    if M.alg == N2:
        return ()
    ops = [genmode(M.alg, "E", 0)]
    if M.alg == N4B:
        ops.append(genmode(M.alg, "E_bar", 0))
    return tuple(ops)


def _raise_to_vacuum(M, v, chain):
    """Append degree-0 raisings until the vacuum coefficient shows up;
    always succeeds on a nonzero level-0 vector."""
    vac = M.vacuum_key()
    guard = (M.lam_int or 0) + (M.lam_bar_int or 0) + 1
    for _ in range(guard):
        if v.terms.get(vac):
            return v, chain
        for op in _raise_ops(M):
            w = act(M, op, v)
            if w:
                v, chain = w, chain + (op,)
                break
        else:
            break
    if not v.terms.get(vac):
        raise ClassifyError("level-0 vector missed the vacuum coefficient")
    return v, chain


ReachWitness = namedtuple("ReachWitness",
                          ["generator", "chain", "vacuum_coeff"])
ReachReport = namedtuple("ReachReport", ["ok", "witnesses", "failures"])


def _search_to_vacuum(M, N, start, ops):
    seen = {}

    def mark(v):
        lv2 = v.level2()
        ech = seen.get(lv2)
        if ech is None:
            pos = {k: i for i, k in enumerate(M.keys_at_level2(lv2))}
            ech = Echelon(lambda k, pos=pos: pos[k])
            seen[lv2] = ech
        return ech.insert(dict(v.terms)) is not None

    frontier = deque([(start, ())])
    mark(start)
    while frontier:
        v, chain = frontier.popleft()
        lv2 = v.level2()
        if lv2 == 0:
            return _raise_to_vacuum(M, v, chain)
        for op in ops:
            if op.mode2 > lv2:
                continue
            w = N.reduce(act(M, op, v))
            if w and mark(w):
                frontier.append((w, chain + (op,)))
    return None


def reachability_check(M, N, max_degree2=4):
    """Breadth-first lowering chains from every quotient generator down
    to the vacuum coefficient; the collected witnesses are the
    irreducibility evidence for the quotient."""
    rk = rank_of(M, N, N.cutoff2)
    if not rk.stabilized:
        raise ClassifyError("quotient dimensions did not stabilize")
    gens = quotient_generators(M, N, rk.window_level2 + 1)
    ops = _lowering_ops(M.alg, max_degree2)
    witnesses = []
    failures = []
    for g in gens:
        hit = _search_to_vacuum(M, N, g, ops)
        if hit is None:
            failures.append(g)
        else:
            v, chain = hit
            witnesses.append(ReachWitness(g, chain,
                                          v.terms[M.vacuum_key()]))
    return ReachReport(not failures, tuple(witnesses), tuple(failures))


def quotient_singular_levels(M, N, level_cutoff2):
    """Doubled levels above zero where the quotient still carries a
    vector killed by every checker; an empty list is the cleanliness
    evidence that N is maximal below the cutoff."""
    if level_cutoff2 > N.cutoff2:
        raise ClassifyError("cutoff exceeds the computed range")
    checkers = _full_checkers(M.alg)
    out = []
    for lv2 in range(1, level_cutoff2 + 1):
        keys = M.keys_at_level2(lv2)
        if not keys:
            continue
        rows = {}
        for ci, g in enumerate(checkers):
            if g.mode2 > lv2:
                continue
            for k in keys:
                img = N.reduce(act(M, g, VermaVector(M, {k: ONE})))
                for k2, c in img.terms.items():
                    rows.setdefault((ci, k2), {})[k] = c
        sols = nullspace([rows[t] for t in sorted(rows)], keys)
        hits = 0
        for s in sols:
            w = N.reduce(VermaVector(M, {k: c for k, c in s.items() if c}))
            if w:
                hits += 1
        if hits:
            out.append((lv2, hits))
    return out


# -- classification rows ---------------------------------------------------


ClassRow = namedtuple(
    "ClassRow", ["alg", "delta", "lam", "lam_bar", "case", "singular",
                 "torsion", "rank", "rank_even", "rank_odd", "reach_ok"])


def _locus_label(alg, delta, lam, lam_bar):
    if alg == N2:
        if 2 * delta == lam:
            return "2D-L=0"
        if 2 * delta == -lam:
            return "2D+L=0"
    elif alg == "n3":
        if 4 * delta == lam:
            return "4D-L=0"
        if 4 * delta == -(lam + 2):
            return "4D+L+2=0"
    elif alg == N4B:
        if lam == lam_bar:
            if 2 * delta == lam:
                return "2D-L=0"
            if 2 * delta == -(lam + 2):
                return "2D+L+2=0"
    else:
        if 2 * delta == lam:
            return "2D-L=0"
        if 2 * delta == -(lam + 2):
            return "2D+L+2=0"
    return "generic"


def classification_row(alg, delta, lam, lam_bar=None, level_cutoff2=None,
                       dpow_cutoff=3, reach=True):
    """The full pipeline on one concrete weight: singular vectors,
    submodule, torsion closure, rank window, reachability."""
    alg = normalize_alg(alg)
    delta = Fraction(delta)
    lam = Fraction(lam)
    if alg == N4B:
        if lam_bar is None:
            raise ClassifyError("n4b rows need both weights")
        lam_bar = Fraction(lam_bar)
    elif lam_bar is not None:
        raise ClassifyError("only n4b rows take a second weight")
    if level_cutoff2 is None:
        level_cutoff2 = default_cutoff2()
    M = build_module(alg, Scalar.from_rat(delta), Scalar.from_rat(lam),
                     Scalar.from_rat(lam_bar) if alg == N4B else None)
    seeds = []
    names = []
    per_level = {}
    for rep in find_singular(M, dpow_cutoff):
        for v in rep.vectors:
            seeds.append(v)
            n = per_level.get(rep.level2, 0)
            per_level[rep.level2] = n + 1
            names.append("s%s.%d" % (render_mode2(rep.level2), n))
    if seeds:
        N = submodule_generated(M, seeds, level_cutoff2)
    else:
        N = GradedSubspace(M, level_cutoff2)
    N = torsion_closure(M, N, level_cutoff2)
    torsion_names = ["t%s.%d" % (render_mode2(w.level2()), i)
                     for i, w in enumerate(N.torsion_added)]
    rk = rank_of(M, N, level_cutoff2)
    label = _locus_label(alg, delta, lam, lam_bar) if seeds else "generic"
    if rk.stabilized and rk.rank == 0:
        label = "trivial"
    reach_ok = None
    if reach and rk.stabilized:
        reach_ok = reachability_check(M, N).ok
    return ClassRow(alg, delta, lam, lam_bar, label, tuple(names),
                    tuple(torsion_names),
                    rk.rank, rk.rank_even, rk.rank_odd, reach_ok)


def stability_violations(N, extra_mode2=2):
    """Levelwise closure check of a graded subspace under the creation
    generators, the degree-0 sl2 pairs, and the annihilation modes up
    to the given doubled degree; returns offending (op, level2) pairs."""
    M = N.module
    ops = (GenMode("L", -2),) + M.odd_gens + _sl2_ops(M.alg)
    ops += tuple(g for g in genmodes_upto(M.alg, extra_mode2,
                                          annihilation_only=True)
                 if g.mode2 >= 1)
    bad = []
    for lv2 in range(N.cutoff2 + 1):
        for w in N.basis(lv2):
            for op in ops:
                if lv2 - op.mode2 > N.cutoff2 or lv2 - op.mode2 < 0:
                    continue
                img = act(M, op, w)
                if img and not N.contains(img):
                    bad.append((render_genmode(op), lv2))
    return bad


# -- rendering --------------------------------------------------------------


def _frac_str(q):
    return None if q is None else str(Fraction(q))


def row_to_json(row):
    return {
        "alg": row.alg,
        "delta": _frac_str(row.delta),
        "lambda": _frac_str(row.lam),
        "lambdaBar": _frac_str(row.lam_bar),
        "case": row.case,
        "singular": list(row.singular),
        "torsion": list(row.torsion),
        "rank": row.rank,
        "rankEven": row.rank_even,
        "rankOdd": row.rank_odd,
        "reachOk": row.reach_ok,
    }


_MD_COLS = ("alg", "delta", "lambda", "lambdaBar", "case", "rank",
            "rankEven", "rankOdd", "singular", "torsion", "reachOk")


def rows_to_markdown(rows):
    lines = ["| " + " | ".join(_MD_COLS) + " |",
             "|" + "|".join(" --- " for _ in _MD_COLS) + "|"]
    for row in rows:
        data = row_to_json(row)
        cells = []
        for col in _MD_COLS:
            val = data[col]
            if isinstance(val, list):
                cells.append(" ".join(val) if val else "-")
            elif val is None:
                cells.append("-")
            else:
                cells.append(str(val))
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
