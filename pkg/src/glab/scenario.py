"""JSON scenarios: build named objects in order, then run checks on them.

A scenario looks like::

    {
      "field": {"p": 5, "k": 1},            # k may be "auto"
      "group": {"orders": [2]},
      "seed": 0,
      "build": [{"name": "R", "op": "elementary", "degrees": [0, 1]}],
      "check": [{"op": "verify_grading", "grading": "R", "mode": "associative"}]
    }

Group elements are exponent lists (a bare int is allowed for cyclic
groups).  Matrices are lists of rows whose entries are ints, or
coefficient lists over GF(p^k).  Each check may carry ``"expect": false``
when the property is supposed to fail.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import hopf, lie, sl
from .ff import FieldCtx, build_field
from .grading import (Grading, Subspace, compatible, elementary_grading, factor_grading,
                      pauli_grading, support, tensor_gradings, verify_grading)
from .groups import AbelianGroup, GroupElem, additive_characters, characters
from .matrices import as_matrix, random_invertible, to_json
from .suites import auto_field

SCHEMA = "glab-report-1"
__version__ = "0.1.0"


class ScenarioError(ValueError):
    pass


class ParseError(ScenarioError):
    def __init__(self, msg, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{msg} (line {line}, column {col})")


class UnknownOperation(ScenarioError):
    pass


class UnresolvedReference(ScenarioError):
    pass


# -- value decoding -----------------------------------------------------------

class Env:
    """Field, group, seed and the named objects built so far."""

    def __init__(self, ctx: FieldCtx, group: AbelianGroup, seed: int):
        self.ctx = ctx
        self.group = group
        self.seed = seed
        self.objects: dict[str, Any] = {}

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def elem(self, v) -> GroupElem:
        if isinstance(v, int):
            if self.group.rank != 1:
                raise ScenarioError(f"bare int {v} names an element only in a cyclic group")
            v = [v]
        return self.group(*v)

    def matrix(self, v, n=None) -> np.ndarray:
        return as_matrix(self.ctx, v, n)

    def ref(self, name, kind=None):
        try:
            obj = self.objects[name]
        except (KeyError, TypeError):
            raise UnresolvedReference(f"no object named {name!r}") from None
        if kind is not None and not isinstance(obj, kind):
            raise ScenarioError(f"{name!r} is a {type(obj).__name__}, expected {kind.__name__}")
        return obj


def elem_json(g: GroupElem) -> list[int]:
    return [int(e) for e in g.exps]


def _witness_json(ctx, w):
    if w is None:
        return None
    if isinstance(w, GroupElem):
        return elem_json(w)
    if isinstance(w, np.ndarray):
        return to_json(ctx, w) if w.ndim == 2 else [_witness_json(ctx, v) for v in w]
    if isinstance(w, (list, tuple)):
        return [_witness_json(ctx, v) for v in w]
    if isinstance(w, (np.integer, int)):
        return int(w)
    if hasattr(w, "__dataclass_fields__"):
        return {k: _witness_json(ctx, getattr(w, k)) for k in w.__dataclass_fields__}
    return str(w)


def grading_json(gr: Grading) -> list:
    return [{"degree": elem_json(g), "dim": V.dim} for g, V in gr.components.items()]


# -- build operations -------------------------------------------------------------

# Each entry: (function(env, step) -> object, keys holding references)
BUILD: dict[str, tuple[Callable, tuple[str, ...]]] = {}
CHECK: dict[str, tuple[Callable, tuple[str, ...]]] = {}


def _build(name, refs=()):
    def deco(fn):
        BUILD[name] = (fn, tuple(refs))
        return fn
    return deco


def _check(name, refs=()):
    def deco(fn):
        CHECK[name] = (fn, tuple(refs))
        return fn
    return deco


@_build("matrix")
def _b_matrix(env, s):
    return env.matrix(s["value"])


@_build("elementary")
def _b_elementary(env, s):
    degs = [env.elem(g) for g in s["degrees"]]
    return elementary_grading(env.group, len(degs), degs, env.ctx)


@_build("pauli")
def _b_pauli(env, s):
    eps = s.get("eps")
    return pauli_grading(env.group, s["m"], [env.elem(g) for g in s["embed"]], env.ctx,
                         None if eps is None else env.ctx(eps))


@_build("grading")
def _b_grading(env, s):
    n = s["n"]
    comps = {}
    for c in s["components"]:
        span = np.array([env.matrix(x, n).reshape(-1) for x in c["span"]], dtype=np.int64)
        comps[env.elem(c["degree"])] = Subspace(env.ctx, n, span)
    gr = Grading(env.group, env.ctx, n, comps)
    gr.check_direct_sum()
    return gr


@_build("with_component", refs=("grading",))
def _b_with_component(env, s):
    gr = env.ref(s["grading"], Grading)
    span = np.array([env.matrix(x, gr.n).reshape(-1) for x in s["span"]], dtype=np.int64)
    return gr.with_component(env.elem(s["degree"]), Subspace(env.ctx, gr.n, span))


@_build("tensor", refs=("a", "b"))
def _b_tensor(env, s):
    return tensor_gradings(env.ref(s["a"], Grading), env.ref(s["b"], Grading))


@_build("factor", refs=("grading",))
def _b_factor(env, s):
    return factor_grading(env.ref(s["grading"], Grading), [env.elem(g) for g in s["gens"]])


@_build("conjugate", refs=("grading",))
def _b_conjugate(env, s):
    gr = env.ref(s["grading"], Grading)
    if s.get("u", "random") == "random":
        u = random_invertible(env.ctx, gr.n, env.rng(s.get("salt", 0)))
    else:
        u = env.matrix(s["u"], gr.n)
    return gr.conjugate(u)


_NAMED_INVOLUTIONS = {"transpose": sl.transpose_involution, "antidiag": sl.antidiagonal_involution,
                      "symplectic": sl.symplectic_involution}


@_build("involution")
def _b_involution(env, s):
    if "kind" in s:
        return _NAMED_INVOLUTIONS[s["kind"]](env.ctx, s["n"])
    return sl.Involution(env.ctx, env.matrix(s["Phi"]), s.get("sign"))


@_build("antiautomorphism")
def _b_anti(env, s):
    return sl.Antiautomorphism(env.ctx, env.matrix(s["Phi"]))


@_build("type1", refs=("assoc",))
def _b_type1(env, s):
    return sl.type1_grading(env.ref(s["assoc"], Grading))


@_build("type2", refs=("assoc", "involution"))
def _b_type2(env, s):
    return sl.type2_grading(env.ref(s["assoc"], Grading), env.ref(s["involution"], sl.Antiautomorphism),
                            env.elem(s["h"]))


@_build("twisted_lie", refs=("assoc", "involution"))
def _b_twisted(env, s):
    return sl.twisted_lie_grading(env.ref(s["assoc"], Grading),
                                  env.ref(s["involution"], sl.Antiautomorphism), env.elem(s["h"]))


@_build("dual")
def _b_dual(env, s):
    G, ctx = env.group, env.ctx
    kind = s["kind"]
    if kind == "e":
        return hopf.e(G, ctx, env.elem(s["g"]))
    if kind == "unit":
        return hopf.unit(G, ctx)
    if kind == "character":
        return hopf.lift_mult_char(characters(G, ctx)[s["index"]])
    if kind == "additive":
        return hopf.lift_add_char(additive_characters(G, ctx.p)[s["index"]], ctx)
    if kind == "divided_power":
        return hopf.divided_powers(G, ctx)[s["m"]]
    if kind == "coeffs":
        return hopf.DualElem(G, ctx, [ctx.encode(c) for c in s["coeffs"]])
    raise ScenarioError(f"unknown dual kind {kind!r}")


@_build("lie_derivation")
def _b_lie_derivation(env, s):
    s_mat = env.matrix(s["s"])
    D = lie.ad(env.ctx, s_mat)
    lam = env.ctx.encode(s.get("lam", 0))
    return D + lam * lie.trace_map(env.ctx, s_mat.shape[0])


# -- check operations -----------------------------------------------------------
# Each returns (outcome: bool, detail: dict | None, witness)


@_check("verify_grading", refs=("grading",))
def _c_verify(env, c):
    rep = verify_grading(env.ref(c["grading"], Grading), c.get("mode", "associative"))
    w = rep.violations[0] if rep.violations else None
    return rep.ok, {"kind": rep.kind, "violations": len(rep.violations)}, w


@_check("verify_module_algebra", refs=("grading", "generators"))
def _c_module(env, c):
    gens = [env.ref(g, hopf.DualElem) for g in c["generators"]]
    rep = hopf.verify_module_algebra(env.ref(c["grading"], Grading), c.get("mode", "associative"), gens)
    return rep.ok, {"checked": rep.checked}, rep.violations[0] if rep.violations else None


@_check("is_grouplike", refs=("dual",))
def _c_grouplike(env, c):
    return hopf.is_grouplike(env.ref(c["dual"], hopf.DualElem)), None, None


@_check("is_primitive", refs=("dual",))
def _c_primitive(env, c):
    return hopf.is_primitive(env.ref(c["dual"], hopf.DualElem)), None, None


@_check("act", refs=("dual", "grading"))
def _c_act(env, c):
    gr = env.ref(c["grading"], Grading)
    y = hopf.act(env.ref(c["dual"], hopf.DualElem), gr, env.matrix(c["x"], gr.n))
    ok = np.array_equal(y, env.matrix(c["equals"], gr.n)) if "equals" in c else True
    return ok, {"result": to_json(env.ctx, y)}, None


@_check("decompose", refs=("grading",))
def _c_decompose(env, c):
    gr = env.ref(c["grading"], Grading)
    x = env.matrix(c["x"], gr.n)
    parts = gr.decompose(x)
    total = np.zeros_like(x)
    for v in parts.values():
        total = env.ctx.add(total, v)
    ok = np.array_equal(total, x)
    if "equals" in c:
        want = {env.elem(d["degree"]): env.matrix(d["value"], gr.n) for d in c["equals"]}
        ok = ok and set(want) == set(parts) and all(np.array_equal(parts[g], want[g]) for g in want)
    detail = [{"degree": elem_json(g), "value": to_json(env.ctx, v)} for g, v in parts.items()]
    return ok, {"components": detail}, None


@_check("support_is_subgroup", refs=("grading",))
def _c_support(env, c):
    s, ok = support(env.ref(c["grading"], Grading))
    return ok, {"support": sorted(elem_json(g) for g in s)}, None


@_check("compatible", refs=("a", "b"))
def _c_compatible(env, c):
    ok, g = compatible(env.ref(c["a"], Grading), env.ref(c["b"], Grading))
    return ok, None, g


@_check("exchange", refs=("a", "b"))
def _c_exchange(env, c):
    fam, rep = sl.exchange(env.ref(c["a"], Grading), env.ref(c["b"], Grading),
                           [env.elem(g) for g in c["H"]], c.get("mode", "lie"))
    detail = {"family": [{"h": elem_json(h), "dim": V.dim} for h, V in fam.items()],
              "identity": rep.identity_ok, "direct": rep.direct_sum_ok, "closure": rep.closure_ok}
    return rep.ok, detail, rep.witness


@_check("involution_preserves", refs=("involution", "grading"))
def _c_preserves(env, c):
    ok, w = sl.involution_preserves(env.ref(c["involution"], sl.Antiautomorphism),
                                    env.ref(c["grading"], Grading))
    return ok, None, w


@_check("correct_antiautomorphism", refs=("grading", "phi"))
def _c_correct(env, c):
    corr = sl.correct_antiautomorphism(env.ref(c["grading"], Grading),
                                       env.ref(c["phi"], sl.Antiautomorphism), cap=c.get("cap", 100_000))
    return True, {"u": to_json(env.ctx, corr.u), "tried": corr.candidates_tried}, None


@_check("classify", refs=("grading",))
def _c_classify(env, c):
    slg = env.ref(c["grading"], Grading)
    cands = c.get("candidates", "elementary")
    if cands == "elementary":
        cands = None
    else:
        cands = [(env.ref(x, Grading), None) if isinstance(x, str) else
                 (env.ref(x["assoc"], Grading),
                  (env.ref(x["involution"], sl.Antiautomorphism), env.elem(x["h"])))
                 for x in cands]
    res = sl.classify_sl_grading(slg, cands)
    ok = res.kind == c["kind"] if "kind" in c else bool(res)
    return ok, {"kind": res.kind, "index": res.index, "tried": res.tried}, None


@_check("martindale", refs=("derivation",))
def _c_martindale(env, c):
    split = lie.martindale_decompose(env.ref(c["derivation"], lie.LinMap))
    s = lie.inner_generator(split.tau)
    return True, {"tau_inner": s is not None, "zeta_kills_identity": split.zeta_kills_identity,
                  "generator": None if s is None else to_json(env.ctx, s)}, None


@_check("corollary", refs=("grading",))
def _c_corollary(env, c):
    rep = lie.check_corollary_p_grading(env.ref(c["grading"], Grading))
    return not rep.falsification, {"verdict": rep.verdict, "associative": rep.associative_ok,
                                   "identity_in_r1": rep.identity_in_r1}, rep.witness


@_check("leibniz", refs=("grading",))
def _c_leibniz(env, c):
    rep = lie.generalized_leibniz_check(env.ref(c["grading"], Grading), c.get("q"),
                                        c.get("triples", 50), env.seed)
    return rep.ok, {"q": rep.q, "triples": rep.triples}, rep.failures[0] if rep.failures else None


@_check("grouplike_census")
def _c_census(env, c):
    k = hopf.grouplike_census(env.group, env.ctx)
    return k == c.get("equals", k), {"count": k}, None


@_check("primitive_dimension")
def _c_primdim(env, c):
    k = hopf.primitive_dimension(env.group, env.ctx)
    return k == c.get("equals", k), {"dimension": k}, None


# -- running ----------------------------------------------------------------------

@dataclass
class CheckEntry:
    index: int
    op: str
    verdict: str              # "pass", "fail" or "error"
    outcome: bool | None
    expected: bool
    detail: Any = None
    witness: Any = None
    error: str | None = None
    timing_ms: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        d = {"index": self.index, "op": self.op, "verdict": self.verdict, "outcome": self.outcome,
             "expected": self.expected, "detail": self.detail, "witness": self.witness}
        if self.error is not None:
            d["error"] = self.error
        if timing:
            d["timing_ms"] = self.timing_ms
        return d


@dataclass
class Report:
    field_: str
    group: str
    seed: int
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.verdict == "pass" for e in self.entries)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self, timing: bool = False) -> dict:
        return {"schema": SCHEMA, "version": __version__, "field": self.field_, "group": self.group,
                "seed": self.seed, "ok": self.ok, "checks": [e.to_json(timing) for e in self.entries]}

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True) + "\n"


def parse(text: str) -> dict:
    try:
        data = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("scenario must be a JSON object", 1, 1)
    unknown = set(data) - {"field", "group", "build", "check", "seed", "name", "description"}
    if unknown:
        raise ParseError(f"unknown top-level keys {sorted(unknown)}", 1, 1)
    return data


def _refs_of(value) -> list:
    if isinstance(value, list):
        return [v for v in value if isinstance(v, str)]
    return [value] if isinstance(value, str) else []


def validate(data: dict):
    """Operation names exist and references point to earlier build steps."""
    names: set[str] = set()
    for i, step in enumerate(data.get("build", [])):
        op = step.get("op")
        if op not in BUILD:
            raise UnknownOperation(f"build step {i}: unknown operation {op!r}")
        for key in BUILD[op][1]:
            for r in _refs_of(step.get(key)):
                if r not in names:
                    raise UnresolvedReference(f"build step {i}: {key} = {r!r} is not defined earlier")
        if "name" not in step:
            raise ScenarioError(f"build step {i} has no name")
        names.add(step["name"])
    for i, chk in enumerate(data.get("check", [])):
        op = chk.get("op")
        if op not in CHECK:
            raise UnknownOperation(f"check {i}: unknown operation {op!r}")
        refs = list(CHECK[op][1])
        if op == "classify" and isinstance(chk.get("candidates"), list):
            for x in chk["candidates"]:
                refs_x = [x] if isinstance(x, str) else [x.get("assoc"), x.get("involution")]
                for r in refs_x:
                    if r not in names:
                        raise UnresolvedReference(f"check {i}: candidate {r!r} is not defined")
        for key in refs:
            for r in _refs_of(chk.get(key)):
                if r not in names:
                    raise UnresolvedReference(f"check {i}: {key} = {r!r} is not defined")


def make_env(data: dict, seed: int | None = None) -> Env:
    orders = data.get("group", {}).get("orders", [])
    G = AbelianGroup(tuple(orders))
    fspec = data.get("field", {"p": 3, "k": 1})
    p, k = fspec["p"], fspec.get("k", 1)
    ctx = auto_field(p, G) if k == "auto" else build_field(p, k)
    return Env(ctx, G, int(data.get("seed", 0) if seed is None else seed))


def run_check(env: Env, i: int, chk: dict) -> CheckEntry:
    op = chk["op"]
    expected = bool(chk.get("expect", True))
    t0 = time.perf_counter()
    try:
        outcome, detail, wit = CHECK[op][0](env, chk)
    except Exception as exc:      # an error verdict carries the message
        return CheckEntry(i, op, "error", None, expected, error=f"{type(exc).__name__}: {exc}",
                          timing_ms=(time.perf_counter() - t0) * 1e3)
    ms = (time.perf_counter() - t0) * 1e3
    verdict = "pass" if bool(outcome) == expected else "fail"
    return CheckEntry(i, op, verdict, bool(outcome), expected, detail, _witness_json(env.ctx, wit),
                      timing_ms=ms)


def run_scenario(source, seed: int | None = None, jobs: int = 1) -> Report:
    """Run a scenario given as a path, JSON text, or an already-parsed dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = Path(source).read_text(encoding="utf-8") if isinstance(source, Path) or (
            isinstance(source, str) and not source.lstrip().startswith("{") and Path(source).exists()
        ) else source
        data = parse(text)
    validate(data)
    env = make_env(data, seed)
    for step in data.get("build", []):
        env.objects[step["name"]] = BUILD[step["op"]][0](env, step)
    checks = list(enumerate(data.get("check", [])))
    if jobs > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(lambda ic: run_check(env, *ic), checks))
    else:
        entries = [run_check(env, i, c) for i, c in checks]
    return Report(repr(env.ctx), repr(env.group), env.seed, entries)
