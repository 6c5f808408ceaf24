"""Exhaustive search for r-partite intersecting hypergraphs with m edges
and cover number >= a target, up to isomorphism.

Isomorphism group: part permutations x within-part vertex relabelings x
edge reorderings.  The canonical form is the lexicographically minimal
row-major edge matrix over that group, computed by branch and bound with
lazy column-partition refinement (columns stay interchangeable until a
chosen row distinguishes them, so part permutations are never enumerated
explicitly).

Generation emits one matrix per candidate in semi-canonical form (rows
strictly increasing, per-column values in first-occurrence order), which
contains every class's canonical representative; accepted instances are
then deduplicated by full canonical form.  Every pruning rule is a
proven-safe implication for completions with cover number >= target.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .core import HypergraphError, PartiteHypergraph, build
from .cover import cover_number

STATE_VERSION = 1


class SearchError(HypergraphError):
    pass


# -- canonical form --------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Total-order key for a hypergraph modulo the symmetry group."""

    key: bytes
    r: int
    rows: tuple  # canonical edge matrix, 0-based labels

    def hypergraph(self) -> PartiteHypergraph:
        """The canonical representative (isolated vertices dropped)."""
        if not self.rows:
            return build([1] * self.r, [])
        sizes = [max(row[c] for row in self.rows) + 1 for c in range(self.r)]
        return build(sizes, [[x + 1 for x in row] for row in self.rows])


def _refine(blocks, maps, vals):
    """Split interchangeable-column blocks by the labels `vals` induce."""
    new_maps = [dict(mp) for mp in maps]
    new_blocks = []
    for block in blocks:
        groups = {}
        for c in block:
            lab = new_maps[c].get(vals[c])
            if lab is None:
                lab = len(new_maps[c])
                new_maps[c][vals[c]] = lab
            groups.setdefault(lab, []).append(c)
        for lab in sorted(groups):
            new_blocks.append(tuple(groups[lab]))
    return tuple(new_blocks), new_maps


def _produced_row(blocks, maps, vals):
    """Output row of an edge under the partial relabeling: per block, the
    sorted first-occurrence labels (any within-block column order is legal)."""
    produced = []
    for block in blocks:
        labs = sorted(maps[c].get(vals[c], len(maps[c])) for c in block)
        produced.extend(labs)
    return tuple(produced)


def _min_matrix(rows, r):
    """Lexicographically minimal relabeled matrix over the full group.

    At every node only the minimal producible next row is extended (over
    all realizations, so ties branch); subtrees whose emitted prefix
    already exceeds the best known matrix are cut.  `best` may improve
    mid-loop, so the prefix relation is re-checked at each node rather
    than carried as a flag.
    """
    m = len(rows)
    best = None

    def rec(used: int, blocks, maps, out):
        nonlocal best
        depth = len(out)
        if depth == m:
            if best is None or out < best:
                best = list(out)
            return
        if best is not None:
            pre = best[:depth]
            if out > pre:
                return
            on_best = out == pre
        else:
            on_best = False
        cands = {}
        for i in range(m):
            if used >> i & 1:
                continue
            cands.setdefault(_produced_row(blocks, maps, rows[i]), []).append(i)
        best_row = min(cands)
        if on_best and best_row > best[depth]:
            return
        for i in cands[best_row]:
            new_blocks, new_maps = _refine(blocks, maps, rows[i])
            out.append(best_row)
            rec(used | 1 << i, new_blocks, new_maps, out)
            out.pop()

    rec(0, (tuple(range(r)),), [dict() for _ in range(r)], [])
    return best


def _is_min_prefix(rows, r):
    """True iff no relabeled, resorted image of `rows` is row-major
    lexicographically smaller.

    Only images equal to `rows` so far are extended, so the walk stays
    narrow; any branch producing a smaller row aborts immediately.  Every
    prefix of a class's lex-min full matrix passes this test, so pruning
    the failures loses no isomorphism class (orderly generation)."""
    m = len(rows)

    def rec(used, blocks, maps, depth):
        if depth == m:
            return False
        target = rows[depth]
        cands = {}
        for i in range(m):
            if used >> i & 1:
                continue
            produced = _produced_row(blocks, maps, rows[i])
            if produced < target:
                return True
            if produced == target:
                cands.setdefault(produced, []).append(i)
        if not cands:
            return False
        for i in cands[target]:
            new_blocks, new_maps = _refine(blocks, maps, rows[i])
            if rec(used | 1 << i, new_blocks, new_maps, depth + 1):
                return True
        return False

    return not rec(0, (tuple(range(r)),), [dict() for _ in range(r)], 0)


def canonical_form(h: PartiteHypergraph) -> CanonicalForm:
    if h.m == 0:
        return CanonicalForm(f"r{h.r};m0".encode(), h.r, ())
    rows = [tuple(x - 1 for x in row) for row in h.edge_rows()]
    mat = _min_matrix(rows, h.r)
    key = (f"r{h.r};m{h.m};".encode()
           + b";".join(bytes(row) for row in mat))
    return CanonicalForm(key, h.r, tuple(mat))


# -- search ------------------------------------------------------------------

@dataclass
class SearchOutcome:
    r: int
    m: int
    tau_target: int
    cap: int
    status: str  # found | exhausted | suspended
    instances: list = field(default_factory=list)  # canonical reps
    canonical_keys: list = field(default_factory=list)
    nodes_explored: int = 0
    wall_time: float = 0.0

    def summary(self) -> dict:
        return {"status": self.status, "count": len(self.instances),
                "nodes": self.nodes_explored,
                "seconds": round(self.wall_time, 3)}


def _max_allowed_degree(m: int, tau_target: int) -> int:
    """Largest degree a vertex may reach in a completion with tau >=
    target: a vertex of degree d plus a greedy cover of the m-d edges
    avoiding it yields tau <= 1 + ceil((m-d)/2)."""
    d = m
    while d >= 1 and 1 + math.ceil((m - d) / 2) < tau_target:
        d -= 1
    return d


def _column_budget_max(base, remaining, max_deg, cap, min_distinct):
    """Exact max of sum_v C(d_v,2) over legal completions of one column.

    `base` is the current degree multiset (sorted descending); exactly
    `remaining` increments are still to be placed (one per future row),
    degrees stay <= max_deg, at most `cap` distinct values may appear and
    at least `min_distinct` must (the part's used vertices form a cover,
    so fewer than tau_target distinct values can never reach the target).
    Returns None when no completion satisfies all of that.

    Final degree multisets are tiny (<= cap entries, each <= max_deg), so
    they are enumerated outright: F (sorted descending) is reachable from
    `base` iff F_i >= base_i pointwise.
    """
    total = sum(base) + remaining
    n0 = len(base)
    best = -1

    def rec(i, k, rem, prev, acc):
        nonlocal best
        if i == k:
            if rem == 0 and acc > best:
                best = acc
            return
        left = k - i - 1
        lo = base[i] if i < n0 else 1
        lo_rest = sum(base[i + 1:n0]) + max(0, left - max(0, n0 - i - 1))
        v_hi = min(prev, max_deg, rem - lo_rest)
        for v in range(v_hi, lo - 1, -1):
            if rem - v > left * min(v, max_deg):
                break  # smaller v only gets less room
            rec(i + 1, k, rem - v, v, acc + v * (v - 1) // 2)

    for k in range(max(n0, min_distinct), cap + 1):
        if k <= total:
            rec(0, k, total, max_deg, 0)
    return best if best >= 0 else None


class _Searcher:
    """Single-worker DFS over semi-canonical edge matrices."""

    def __init__(self, r, m, tau_target, cap, mode="first", prunes=True,
                 max_instances=None):
        if r < 2:
            raise SearchError("need r >= 2")
        if m < 1:
            raise SearchError("need m >= 1")
        if tau_target < 1:
            raise SearchError("need tau_target >= 1")
        if cap is None:
            cap = m
        if cap < tau_target:
            raise SearchError("cap below tau_target can never reach it")
        if mode not in ("first", "all"):
            raise SearchError(f"unknown mode {mode!r}")
        self.r, self.m, self.tau_target, self.cap = r, m, tau_target, cap
        self.mode = mode
        self.prunes = prunes
        self.max_instances = 1 if mode == "first" else max_instances
        self.max_deg = _max_allowed_degree(m, tau_target) if prunes else m
        self._table_cache = {}  # column degree state -> per-value net budgets
        # DFS state
        self.prefix = []  # chosen rows
        self.stack = [[(0,) * r]]  # pending rows per depth, last-first
        self.nodes = 0
        self.found_rows = []  # accepted raw matrices
        self.found_keys = set()
        # incremental per-column tables, kept in sync with prefix
        self._deg = [[0] * self.cap for _ in range(r)]
        self._match = [[0] * self.cap for _ in range(r)]  # [col][val] -> rows
        self._cmstack = [(-1,) * r]  # per-depth column maxima
        # tie[c]: column c's label word still equals column c-1's.  The
        # canonical (lex-min row-major) matrix has nondecreasing column
        # words, and truncation preserves lex order, so generation may
        # demand v_{c-1} <= v_c wherever the words are still tied without
        # losing any isomorphism class.
        self._tiestack = [(False,) + (True,) * (r - 1)]

    # -- prefix bookkeeping ------------------------------------------------

    def _push(self, row):
        bit = 1 << len(self.prefix)
        cm = list(self._cmstack[-1])
        tie = list(self._tiestack[-1])
        for c, v in enumerate(row):
            self._deg[c][v] += 1
            self._match[c][v] |= bit
            if v > cm[c]:
                cm[c] = v
            if c and tie[c] and v != row[c - 1]:
                tie[c] = False
        self._cmstack.append(tuple(cm))
        self._tiestack.append(tuple(tie))
        self.prefix.append(row)

    def _pop(self):
        row = self.prefix.pop()
        bit = ~(1 << len(self.prefix))
        for c, v in enumerate(row):
            self._deg[c][v] -= 1
            self._match[c][v] &= bit
        self._cmstack.pop()
        self._tiestack.pop()
        return row

    def _rebuild(self):
        """Recompute the incremental tables from self.prefix."""
        rows, self.prefix = self.prefix, []
        self._deg = [[0] * self.cap for _ in range(self.r)]
        self._match = [[0] * self.cap for _ in range(self.r)]
        self._cmstack = [(-1,) * self.r]
        self._tiestack = [(False,) + (True,) * (self.r - 1)]
        for row in rows:
            self._push(row)

    # -- candidate generation -------------------------------------------

    def _column_table(self, base, remaining):
        """Per-value net budgets for one column, memoized.

        `base` is the column's degree tuple over values 0..col_max.  For
        each candidate value v (0..col_max+1, capped) the entry is the
        net attainable growth of sum C(d,2) in this column after writing
        v, or None when v is inadmissible (star rule, or no completion
        with tau_target distinct values fits in the capacity)."""
        key = (base, remaining)
        hit = self._table_cache.get(key)
        if hit is not None:
            return hit
        cap, max_deg = self.cap, self.max_deg
        n0 = len(base)
        hi = min(n0, cap - 1)
        placed = sum(d * (d - 1) for d in base) // 2
        nets = []
        best = -1
        for v in range(hi + 1):
            d_old = base[v] if v < n0 else 0
            if d_old + 1 > max_deg:
                nets.append(None)
                continue
            degs = sorted(base, reverse=True)
            if v < n0:
                degs.remove(d_old)
                degs.append(d_old + 1)
                degs.sort(reverse=True)
            else:
                degs.append(1)
            b = _column_budget_max(tuple(degs), remaining, max_deg, cap,
                                   self.tau_target)
            if b is None:
                nets.append(None)
                continue
            net = b - placed - d_old
            nets.append(net)
            if net > best:
                best = net
        entry = (nets, best)
        self._table_cache[key] = entry
        return entry

    def _expand(self):
        """Valid child rows of the current prefix, in ascending order.

        Constraints: restricted growth per column (values appear in
        first-occurrence order), strictly lex-greater than the previous
        row, and intersecting every prefix row.  With prunes on, each
        value is additionally vetted by the star rule (degree cap), the
        part-size rule, and the per-column intersection-budget bound,
        with suffix sums so hopeless partial rows are cut early.
        """
        prefix = self.prefix
        r, cap, m = self.r, self.cap, self.m
        t = len(prefix)
        last = prefix[-1]
        remaining = m - (t + 1)
        col_max = self._cmstack[-1]
        deg, match = self._deg, self._match
        hi = [min(col_max[c] + 1, cap - 1) for c in range(r)]
        all_rows = (1 << t) - 1

        if self.prunes:
            # Per-(column, value) admissibility plus the net budget this
            # column can still contribute to future pair intersections.
            # Sound requirement: every pair involving a future row must
            # intersect at least once, so the attainable growth of
            # sum_v C(d(v),2) must reach C(m,2) - C(t+1,2).
            required = math.comb(m, 2) - math.comb(t + 1, 2)
            # row slack: each of the `remaining` future rows must meet
            # row i somewhere, and the vertex of row i in column c sits
            # in at most max_deg - deg[c][v] more rows
            max_deg = self.max_deg
            for row in prefix:
                slack = 0
                for c in range(r):
                    slack += max_deg - deg[c][row[c]]
                if slack < remaining:
                    return []
            colbud = []
            bud_suffix = [0] * (r + 1)
            tables = []
            for c in range(r):
                nets, best = self._column_table(
                    tuple(deg[c][:col_max[c] + 1]), remaining)
                if best < 0:
                    return []
                tables.append((nets, best))
            for c in range(r - 1, -1, -1):
                bud_suffix[c] = bud_suffix[c + 1] + tables[c][1]
            if bud_suffix[0] < required:
                return []
            colbud = [nets for nets, _ in tables]
            # rows still matchable in columns >= c through admissible
            # values, and the candidate row's own remaining slack
            match_suffix = [0] * (r + 1)
            colslk = []
            slk_suffix = [0] * (r + 1)
            for c in range(r - 1, -1, -1):
                nets = colbud[c]
                row_match = match[c]
                degc = deg[c]
                possible = 0
                best_slk = 0
                slks = []
                for v in range(hi[c] + 1):
                    slks.append(max_deg - degc[v] - 1)
                    if nets[v] is not None:
                        possible |= row_match[v]
                        if slks[v] > best_slk:
                            best_slk = slks[v]
                colslk.append(slks)
                match_suffix[c] = match_suffix[c + 1] | possible
                slk_suffix[c] = slk_suffix[c + 1] + best_slk
            colslk.reverse()
        else:
            required = 0
            colbud = [[0] * (hi[c] + 1) for c in range(r)]
            bud_suffix = [0] * (r + 1)
            match_suffix = [all_rows] * (r + 1)
            colslk = [[0] * (hi[c] + 1) for c in range(r)]
            slk_suffix = [0] * (r + 1)
            remaining = 0  # no slack requirement without prunes

        out = []
        vals = []
        tie = self._tiestack[-1]

        def gen(c, matched, tight, bud, slk):
            if c == r:
                if matched == all_rows and not tight and slk >= remaining:
                    out.append(tuple(vals))
                return
            if matched | match_suffix[c] != all_rows:
                return
            if slk + slk_suffix[c] < remaining:
                return
            lo = last[c] if tight else 0
            if tie[c] and vals[-1] > lo:
                lo = vals[-1]  # tied columns stay sorted
            row_match = match[c]
            row_bud = colbud[c]
            row_slk = colslk[c]
            for v in range(lo, hi[c] + 1):
                b = row_bud[v]
                if b is None:
                    continue
                nb = bud + b
                if nb + bud_suffix[c + 1] < required:
                    continue
                vals.append(v)
                gen(c + 1, matched | row_match[v], tight and v == last[c],
                    nb, slk + row_slk[v])
                vals.pop()

        gen(0, 0, True, 0, 0)
        out.reverse()  # popped last-first by the driver
        return out

    # -- acceptance -------------------------------------------------------

    def _accept(self, rows):
        sizes = [max(row[c] for row in rows) + 1 for c in range(self.r)]
        h = build(sizes, [[x + 1 for x in row] for row in rows])
        tau, _ = cover_number(h, limit=self.tau_target - 1)
        if tau is not None:  # tau < target
            return False
        form = canonical_form(h)
        if form.key in self.found_keys:
            return False
        self.found_keys.add(form.key)
        self.found_rows.append([list(row) for row in rows])
        return True

    # -- driver ------------------------------------------------------------

    def run(self, node_budget=None, checkpoint=None, checkpoint_every=200000):
        start = time.monotonic()
        since_save = 0
        nodes_at_entry = self.nodes  # budget counts this call's work only
        while self.stack:
            if (node_budget is not None
                    and self.nodes - nodes_at_entry >= node_budget):
                if checkpoint:
                    self.save_state(checkpoint)
                return self._outcome("suspended", start)
            pending = self.stack[-1]
            if not pending:
                self.stack.pop()
                if self.prefix:
                    self._pop()
                continue
            row = pending.pop()
            self.nodes += 1
            since_save += 1
            self._push(row)
            # orderly rule: only canonical-minimal prefixes are extended
            # (depth <= 2 prefixes are minimal by construction)
            if len(self.prefix) > 2 and not _is_min_prefix(self.prefix,
                                                           self.r):
                self._pop()
                continue
            if len(self.prefix) == self.m:
                self._accept(self.prefix)
                self._pop()
                if (self.max_instances is not None
                        and len(self.found_rows) >= self.max_instances):
                    return self._outcome("found", start)
            else:
                self.stack.append(self._expand())
            if checkpoint and since_save >= checkpoint_every:
                self.save_state(checkpoint)
                since_save = 0
        status = "found" if self.found_rows else "exhausted"
        return self._outcome(status, start)

    def _outcome(self, status, start):
        reps = []
        for rows in self.found_rows:
            sizes = [max(row[c] for row in rows) + 1 for c in range(self.r)]
            h = build(sizes, [[x + 1 for x in row] for row in rows])
            reps.append(canonical_form(h))
        order = sorted(range(len(reps)), key=lambda i: reps[i].key)
        return SearchOutcome(
            self.r, self.m, self.tau_target, self.cap, status,
            instances=[reps[i].hypergraph() for i in order],
            canonical_keys=[reps[i].key for i in order],
            nodes_explored=self.nodes,
            wall_time=time.monotonic() - start)

    # -- checkpointing -----------------------------------------------------

    def save_state(self, path):
        state = {
            "state_version": STATE_VERSION,
            "code_version": __version__,
            "params": {"r": self.r, "m": self.m,
                       "tau_target": self.tau_target, "cap": self.cap,
                       "mode": self.mode, "prunes": self.prunes,
                       "max_instances": self.max_instances},
            "prefix": [list(row) for row in self.prefix],
            "stack": [[list(row) for row in level] for level in self.stack],
            "nodes": self.nodes,
            "found_rows": self.found_rows,
        }
        with open(path, "w", encoding="ascii") as fh:
            json.dump(state, fh)

    @classmethod
    def load_state(cls, path):
        with open(path, "r", encoding="ascii") as fh:
            state = json.load(fh)
        if state.get("state_version") != STATE_VERSION:
            raise SearchError("checkpoint was written by an incompatible "
                              "state version")
        if state.get("code_version") != __version__:
            raise SearchError("checkpoint was written by a different code "
                              "version")
        p = state["params"]
        s = cls(p["r"], p["m"], p["tau_target"], p["cap"], mode=p["mode"],
                prunes=p["prunes"])
        s.max_instances = p["max_instances"]
        s.prefix = [tuple(row) for row in state["prefix"]]
        s._rebuild()
        s.stack = [[tuple(row) for row in level] for level in state["stack"]]
        s.nodes = state["nodes"]
        s.found_rows = state["found_rows"]
        for rows in s.found_rows:
            sizes = [max(row[c] for row in rows) + 1 for c in range(s.r)]
            h = build(sizes, [[x + 1 for x in row] for row in rows])
            s.found_keys.add(canonical_form(h).key)
        return s


def _run_subtree(args):
    (r, m, tau_target, cap, mode, prunes, max_instances, prefix2) = args
    s = _Searcher(r, m, tau_target, cap, mode=mode, prunes=prunes,
                  max_instances=max_instances)
    # replay the fixed two-row prefix, then search only its subtree
    s.prefix = [tuple(prefix2[0]), tuple(prefix2[1])]
    s._rebuild()
    s.nodes = 2
    if m == 2:
        s._accept(s.prefix)
        return (s.found_rows, s.nodes)
    s.stack = [[], [], s._expand()]
    s.run()
    return (s.found_rows, s.nodes)


def search_extremal(r: int, m: int, tau_target: int, cap: Optional[int] = None,
                    mode: str = "first", prunes: bool = True,
                    max_instances: Optional[int] = None, threads: int = 1,
                    checkpoint=None, node_budget: Optional[int] = None,
                    ) -> SearchOutcome:
    """Orderly search for r-partite intersecting hypergraphs with m edges
    and cover number >= tau_target, parts capped at `cap` distinct
    vertices (default m).

    mode='first' stops at one witness; mode='all' enumerates canonical
    representatives (optionally capped by max_instances).  threads > 1
    splits the depth-2 frontier across processes; results are
    schedule-independent.  checkpoint/node_budget suspend and persist the
    single-threaded DFS.
    """
    if threads > 1:
        if checkpoint or node_budget:
            raise SearchError("checkpointing requires threads=1")
        return _search_parallel(r, m, tau_target, cap, mode, prunes,
                                max_instances, threads)
    s = _Searcher(r, m, tau_target, cap, mode=mode, prunes=prunes,
                  max_instances=max_instances)
    return s.run(node_budget=node_budget, checkpoint=checkpoint)


def resume(checkpoint, node_budget: Optional[int] = None) -> SearchOutcome:
    """Continue a suspended search from its state file; the final outcome
    is identical to an uninterrupted run."""
    s = _Searcher.load_state(checkpoint)
    return s.run(node_budget=node_budget, checkpoint=checkpoint)


def _search_parallel(r, m, tau_target, cap, mode, prunes, max_instances,
                     threads):
    import concurrent.futures

    start = time.monotonic()
    root = _Searcher(r, m, tau_target, cap, mode=mode, prunes=prunes,
                     max_instances=max_instances)
    cap = root.cap
    if m == 1:
        return root.run()
    root._push((0,) * r)
    children = root._expand()
    nodes = 1
    tasks = [(r, m, tau_target, cap, mode, prunes, max_instances,
              [list(root.prefix[0]), list(child)]) for child in children]
    all_rows = []
    with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
        for found_rows, sub_nodes in pool.map(_run_subtree, tasks):
            nodes += sub_nodes
            all_rows.extend(found_rows)
    # merge: canonicalize, dedup, sort; schedule-independent by construction
    forms = {}
    for rows in all_rows:
        sizes = [max(row[c] for row in rows) + 1 for c in range(r)]
        h = build(sizes, [[x + 1 for x in row] for row in rows])
        form = canonical_form(h)
        forms[form.key] = form
    keys = sorted(forms)
    if mode == "first" and keys:
        keys = keys[:1]
    if max_instances is not None:
        keys = keys[:max_instances]
    status = "found" if keys else "exhausted"
    return SearchOutcome(r, m, tau_target, cap, status,
                         instances=[forms[k].hypergraph() for k in keys],
                         canonical_keys=keys, nodes_explored=nodes,
                         wall_time=time.monotonic() - start)
