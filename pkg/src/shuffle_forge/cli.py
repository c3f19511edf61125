"""Command-line driver: expression parsing, verification suites, dimension
reports, JSON-lines output.

Subcommands: verify (run a named suite), dims (dimension report for one
degree vector), eval (parse and evaluate a free expression).  Reports are
deterministic given the seed and config; the per-instance random state is
derived from the seed and the instance id, so results do not depend on the
--jobs value, and the summary record always comes last.
"""

import argparse
import itertools
import json
import os
import random
import re
import sys as _sysmod
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .scalars import (RationalV, RV_ONE, quantum_factorial, angle)
from . import polyvars as pv
from .polyvars import wvar
from .roots import (RootSystem, positive_roots, root_by_name,
                    kostant_partitions, PBWDKey, pbwd_keys)
from .shuffle import (FELeaf, FEProd, FESum, FEScale, FEComm, psi, star,
                      defining_relation, serre_relation, proportional_monomial)
from . import rootvec as rv
from . import specmaps as sm
from . import yangian as yg


DEFAULT_MAX_K = 6
ENUM_CAP = 4  # suites that sweep degree vectors stop at |k| = min(max_k, 4)

SUITES = ("relations", "psirv", "phirv", "vanish", "leading", "dims",
          "lusztig", "rtt", "yangian-relations", "yangian-phirv",
          "yangian-integral")


class ConfigError(Exception):
    pass


class SuiteConfig:
    """Plain config record, picklable for worker processes."""

    FIELDS = ("type", "rank", "suite", "window", "max_k", "seed", "jobs",
              "out", "k", "strict")

    def __init__(self, type, rank, suite, window, max_k, seed, jobs,
                 out, k, strict):
        self.type = type
        self.rank = rank
        self.suite = suite
        self.window = tuple(window)
        self.max_k = max_k
        self.seed = seed
        self.jobs = jobs
        self.out = out
        self.k = tuple(k) if k is not None else None
        self.strict = strict

    def as_dict(self):
        return {f: getattr(self, f) for f in self.FIELDS}

    def system(self):
        return RootSystem(self.type, self.rank)

    def rng(self, *tags):
        return random.Random(":".join([str(self.seed)] + [str(t) for t in tags]))


def _build_config(args, suite=None):
    max_k = args.max_k
    if max_k is None:
        max_k = int(os.environ.get("SHUFFLE_FORGE_MAX_K", DEFAULT_MAX_K))
    try:
        system = RootSystem(args.type, args.rank)
    except ValueError as exc:
        raise ConfigError(str(exc))
    k = getattr(args, "k", None)
    if k is not None:
        k = _parse_k(k, system.rank)
        if sum(k) > max_k:
            raise ConfigError(f"|k| = {sum(k)} exceeds the cap {max_k}")
    return SuiteConfig(args.type, args.rank, suite or args.suite,
                       _parse_window(args.window), max_k, args.seed,
                       args.jobs, args.out, k, getattr(args, "strict", False))


def _parse_window(text):
    m = re.fullmatch(r"(-?\d+):(-?\d+)", text)
    if not m:
        raise ConfigError(f"bad window {text!r}, expected a:b")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConfigError(f"empty window {text!r}")
    return (lo, hi)


def _parse_k(text, rank):
    try:
        k = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"bad degree vector {text!r}")
    if len(k) != rank or any(c < 0 for c in k) or not any(k):
        raise ConfigError(f"degree vector {text!r} does not fit rank {rank}")
    return k


def _degree_vectors(cfg):
    """The degree vectors a sweeping suite covers: --k if given, else all
    nonzero k with |k| <= min(max_k, ENUM_CAP)."""
    if cfg.k is not None:
        return [cfg.k]
    rank = cfg.rank
    cap = min(cfg.max_k, ENUM_CAP)
    out = []
    for total in range(1, cap + 1):
        for bars in itertools.combinations(range(total + rank - 1), rank - 1):
            prev, k = -1, []
            for b in bars:
                k.append(b - prev - 1)
                prev = b
            k.append(total + rank - 2 - prev)
            out.append(tuple(k))
    return out


def _clip_window(cfg, lo=-1, hi=1):
    """Sweeping suites keep PBWD modes inside window intersect [lo, hi]."""
    a, b = cfg.window
    a, b = max(a, lo), min(b, hi)
    if a > b:
        raise ConfigError(f"window {cfg.window} misses the mode range "
                          f"[{lo},{hi}] used by suite {cfg.suite!r}")
    return (a, b)


# -- serialization of instances (plain data for worker processes) -----------

def _ser_key(h):
    return [[b.name, s, m] for b, s, m in h.entries]


def _deser_key(system, data):
    return PBWDKey(system, [(root_by_name(system, nm), s, m)
                            for nm, s, m in data])


def _key_id(data):
    return "*".join(f"({nm},{s})^{m}" for nm, s, m in data)


# -- suites ------------------------------------------------------------------
# Each suite has an instance generator (cfg -> [(instance_id, payload)]) and
# a checker (cfg, payload -> (ok, witness dict or None)).

def _inst_relations(cfg):
    system = cfg.system()
    lo, hi = cfg.window
    out = []
    for i in system.colors:
        for j in system.colors:
            for r in range(lo, hi + 1):
                for s in range(lo, hi + 1):
                    out.append((f"def:{i},{j}:{r},{s}",
                                {"kind": "def", "i": i, "j": j,
                                 "r": r, "s": s}))
            if i == j:
                continue
            m = 1 - system.a(i, j)
            for modes in itertools.combinations_with_replacement(
                    range(lo, hi + 1), m):
                for r in range(lo, hi + 1):
                    out.append(
                        (f"serre:{i},{j}:{','.join(map(str, modes))}:{r}",
                         {"kind": "serre", "i": i, "j": j,
                          "modes": list(modes), "r": r}))
    return out


def _check_relations(cfg, payload):
    system = cfg.system()
    if payload["kind"] == "def":
        expr = defining_relation(system, payload["i"], payload["j"],
                                 payload["r"], payload["s"])
    else:
        expr = serre_relation(system, payload["i"], payload["j"],
                              payload["modes"], payload["r"])
    image = psi(system, expr)
    if image.is_zero():
        return True, None
    return False, {"nonzero_terms": len(image.num)}


def _inst_psirv(cfg):
    system = cfg.system()
    out = []
    for beta in positive_roots(system):
        for eps in (1, -1):
            for s in (0, 1):
                out.append((f"psirv:{beta.name}:eps={eps}:s={s}",
                            {"root": beta.name, "eps": eps, "s": s}))
    return out


def _check_psirv(cfg, payload):
    system = cfg.system()
    beta = root_by_name(system, payload["root"])
    eps, s = payload["eps"], payload["s"]
    parts = rv.tilde_parts(beta, s)
    image = psi(system, rv.tilde_root_vector(beta, eps, parts))
    closed = rv.closed_form(beta, eps, parts)
    ratio = proportional_monomial(image, closed)
    if ratio is None:
        return False, {"reason": "image not a monomial multiple of the "
                                 "closed form"}
    return True, {"ratio": [str(ratio[0]), ratio[1]]}


PHIRV_TRIALS = 5


def _inst_phirv(cfg):
    system = cfg.system()
    lo, hi = cfg.window
    out = []
    for beta in positive_roots(system):
        for s in range(lo, hi + 1):
            for trial in range(PHIRV_TRIALS):
                out.append((f"phirv:{beta.name}:s={s}:t={trial}",
                            {"root": beta.name, "s": s, "trial": trial}))
    return out


def _check_phirv(cfg, payload):
    system = cfg.system()
    beta = root_by_name(system, payload["root"])
    s = payload["s"]
    rng = cfg.rng("phirv", beta.name, s, payload["trial"])
    expr = rv.random_root_vector(beta, s, rng)
    g = sm.phi_single(psi(system, expr), beta)
    bidx = sm.root_index(system, beta)
    target = pv.p_monomial(
        {wvar(bidx, 1): s + sm.kappa(beta)},
        RationalV.from_laurent(sm.c_factor(beta)))
    ratio = sm.proportional_poly(g, target)
    if ratio is None:
        return False, {"expr": repr(expr),
                       "reason": "not c * c_beta * w^(s+kappa)"}
    return True, {"expr": repr(expr), "ratio": [str(ratio[0]), ratio[1]]}


def _inst_vanish(cfg):
    system = cfg.system()
    window = _clip_window(cfg)
    out = []
    for k in _degree_vectors(cfg):
        for d, keys in pbwd_keys(system, k, window):
            for h in keys:
                ser = _ser_key(h)
                out.append((f"vanish:k={','.join(map(str, k))}:{_key_id(ser)}",
                            {"h": ser}))
    return out


def _check_vanish(cfg, payload):
    system = cfg.system()
    h = _deser_key(system, payload["h"])
    d = h.deg()
    image = rv.pbwd_image(system, h)
    fails = [dp.name for dp in kostant_partitions(system, h.gr())
             if dp < d and not sm.verify_vanishing(h, dp, image=image)]
    if fails:
        return False, {"nonzero_at": fails}
    return True, None


LEADING_PAIR_CAP = 30


def _inst_leading(cfg):
    system = cfg.system()
    window = _clip_window(cfg)
    out = []
    for k in _degree_vectors(cfg):
        for d, keys in pbwd_keys(system, k, window):
            pairs = list(itertools.combinations(range(len(keys)), 2))
            if len(pairs) > LEADING_PAIR_CAP:
                rng = cfg.rng("leading", k, d.name)
                pairs = rng.sample(pairs, LEADING_PAIR_CAP)
                pairs.sort()
            if not pairs and keys:
                pairs = [(0, 0)]  # lone key: still check divisibility
            for a, b in pairs:
                s1, s2 = _ser_key(keys[a]), _ser_key(keys[b])
                out.append(
                    (f"leading:{d.name}:{_key_id(s1)}|{_key_id(s2)}",
                     {"h1": s1, "h2": s2}))
    return out


def _check_leading(cfg, payload):
    system = cfg.system()
    h1 = _deser_key(system, payload["h1"])
    h2 = _deser_key(system, payload["h2"])
    if sm.verify_leading(h1, h2):
        return True, None
    return False, {"reason": "h-independence or cofactor divisibility failed"}


def _inst_dims(cfg):
    out = []
    for k in _degree_vectors(cfg):
        out.append((f"dims:k={','.join(map(str, k))}", {"k": list(k)}))
    return out


def _check_dims(cfg, payload):
    system = cfg.system()
    window = _clip_window(cfg)
    rows = sm.dimension_report(system, tuple(payload["k"]),
                               range(0, 3), window)
    if all(row["ok"] for row in rows):
        return True, {"rows": rows}
    return False, {"rows": rows}


LUSZTIG_PAIR_TRIALS = 5


def _inst_lusztig(cfg):
    system = cfg.system()
    window = _clip_window(cfg)
    out = []
    roots = positive_roots(system)
    for beta in roots:
        for s in range(window[0], window[1] + 1):
            for p in (1, 2):
                if p * beta.height > cfg.max_k:
                    continue
                out.append((f"lusztig:single:{beta.name}:s={s}:p={p}",
                            {"kind": "single", "root": beta.name,
                             "s": s, "p": p}))
        out.append((f"lusztig:neg:{beta.name}",
                    {"kind": "neg", "root": beta.name}))
    for trial in range(LUSZTIG_PAIR_TRIALS):
        out.append((f"lusztig:pair:t={trial}",
                    {"kind": "pair", "trial": trial}))
    return out


def _pair_choice(cfg, suite, trial, window):
    """A seeded pair of (root, mode, power<=2) choices with |k| inside cap."""
    system = cfg.system()
    roots = positive_roots(system)
    rng = cfg.rng(suite, "pair", trial)
    while True:
        picks = [(rng.choice(roots), rng.randint(window[0], window[1]),
                  rng.randint(1, 2)) for _ in range(2)]
        if sum(b.height * p for b, _, p in picks) <= cfg.max_k:
            return picks


def _check_lusztig(cfg, payload):
    system = cfg.system()
    if payload["kind"] == "single":
        beta = root_by_name(system, payload["root"])
        expr = rv.divided_power(beta, payload["s"], payload["p"], 1)
        ok, witness = sm.lusztig_member(psi(system, expr))
        return (True, None) if ok else (False, witness)
    if payload["kind"] == "neg":
        beta = root_by_name(system, payload["root"])
        base = rv.tilde_root_vector(beta, 1, rv.tilde_parts(beta, 0))
        bad = RV_ONE / RationalV.from_laurent(
            quantum_factorial(2, beta.vbeta_exp))
        ok, witness = sm.lusztig_member(psi(system, FEScale(bad, base)))
        if ok:
            return False, {"reason": "missing normalization accepted"}
        return True, {"witness": witness}
    window = _clip_window(cfg)
    picks = _pair_choice(cfg, "lusztig", payload["trial"], window)
    expr = FEProd([rv.divided_power(b, s, p, 1) for b, s, p in picks])
    ok, witness = sm.lusztig_member(psi(system, expr))
    choices = [[b.name, s, p] for b, s, p in picks]
    if ok:
        return True, {"choices": choices}
    return False, {"choices": choices, "witness": witness}


RTT_PAIR_TRIALS = 5


def _inst_rtt(cfg):
    system = cfg.system()
    window = _clip_window(cfg)
    out = []
    for beta in positive_roots(system):
        for s in range(window[0], window[1] + 1):
            out.append((f"rtt:single:{beta.name}:s={s}",
                        {"kind": "single", "root": beta.name, "s": s}))
        out.append((f"rtt:neg:{beta.name}",
                    {"kind": "neg", "root": beta.name}))
    for trial in range(RTT_PAIR_TRIALS):
        out.append((f"rtt:pair:t={trial}", {"kind": "pair", "trial": trial}))
    return out


def _check_rtt(cfg, payload):
    system = cfg.system()
    if payload["kind"] == "single":
        beta = root_by_name(system, payload["root"])
        expr = rv.rtt_root_vector(beta, payload["s"], 1)
        ok, witness = sm.rtt_member(psi(system, expr))
        return (True, None) if ok else (False, witness)
    if payload["kind"] == "neg":
        beta = root_by_name(system, payload["root"])
        expr = rv.tilde_root_vector(beta, 1, rv.tilde_parts(beta, 0))
        ok, witness = sm.rtt_member(psi(system, expr))
        if ok:
            return False, {"reason": "unnormalized vector accepted"}
        return True, {"witness": witness}
    window = _clip_window(cfg)
    picks = _pair_choice(cfg, "rtt", payload["trial"], window)
    expr = FEProd([rv.rtt_root_vector(b, s, 1) for b, s, _ in picks])
    ok, witness = sm.rtt_member(psi(system, expr))
    choices = [[b.name, s] for b, s, _ in picks]
    if ok:
        return True, {"choices": choices}
    return False, {"choices": choices, "witness": witness}


def _inst_yangian_relations(cfg):
    system = cfg.system()
    lo, hi = _clip_window(cfg, 0, max(cfg.window[1], 0))
    out = []
    for i in system.colors:
        for j in system.colors:
            for r in range(lo, hi + 1):
                for s in range(lo, hi + 1):
                    out.append((f"ydef:{i},{j}:{r},{s}",
                                {"kind": "def", "i": i, "j": j,
                                 "r": r, "s": s}))
            if i == j:
                continue
            m = 1 - system.a(i, j)
            for modes in itertools.combinations_with_replacement(
                    range(lo, hi + 1), m):
                for r in range(lo, hi + 1):
                    out.append(
                        (f"yserre:{i},{j}:{','.join(map(str, modes))}:{r}",
                         {"kind": "serre", "i": i, "j": j,
                          "modes": list(modes), "r": r}))
    return out


def _check_yangian_relations(cfg, payload):
    system = cfg.system()
    if payload["kind"] == "def":
        expr = yg.defining_relation_rat(system, payload["i"], payload["j"],
                                        payload["r"], payload["s"])
    else:
        expr = yg.serre_relation_rat(system, payload["i"], payload["j"],
                                     payload["modes"], payload["r"])
    image = yg.psi_rat(system, expr)
    if image.is_zero():
        return True, None
    return False, {"nonzero_terms": len(image.num)}


def _inst_yangian_phirv(cfg):
    system = cfg.system()
    out = []
    for beta in positive_roots(system):
        for s in range(0, 3):
            out.append((f"yphirv:{beta.name}:s={s}",
                        {"root": beta.name, "s": s}))
    return out


def yangian_leading_profile(g, bidx, kappa, s):
    """Check g = c * hbar^kappa * (monic degree-s polynomial in w), c in Q*.

    Returns (ok, witness).
    """
    if not g:
        return False, {"reason": "zero image"}
    wv = wvar(bidx, 1)
    wdeg = max(pv.key_exp(key, wv) for key in g)
    if wdeg != s:
        return False, {"reason": f"w-degree {wdeg} != {s}"}
    lead = g.get((wv, s) if s else ())
    if lead is None or not lead.is_poly():
        return False, {"reason": "bad leading coefficient"}
    poly = lead.num
    if len(poly.coeffs) != 1 or poly.min_exp() != kappa:
        return False, {"reason": f"leading coefficient {lead!r} is not "
                                 f"c*hbar^{kappa}"}
    if not yg.hbar_divisible(g, kappa):
        return False, {"reason": f"not divisible by hbar^{kappa}"}
    return True, {"c": str(poly.coeffs[kappa])}


def _check_yangian_phirv(cfg, payload):
    system = cfg.system()
    beta = root_by_name(system, payload["root"])
    s = payload["s"]
    g = yg.phi_single_rat(yg.psi_rat(system, yg.tilde_x(beta, s)), beta)
    return yangian_leading_profile(g, sm.root_index(system, beta),
                                   sm.kappa(beta), s)


def _inst_yangian_integral(cfg):
    system = cfg.system()
    out = []
    for k in _degree_vectors(cfg):
        for d, keys in pbwd_keys(system, k, (0, 1)):
            for h in keys:
                ser = _ser_key(h)
                out.append((f"yint:k={','.join(map(str, k))}:{_key_id(ser)}",
                            {"h": ser}))
    return out


def _check_yangian_integral(cfg, payload):
    system = cfg.system()
    h = _deser_key(system, payload["h"])
    F = yg.psi_rat(system, yg.pbwd_monomial_rat(h, bar=True))
    if not yg.is_integral(F):
        return False, {"reason": "barred monomial image not integral"}
    G = yg.psi_rat(system, yg.pbwd_monomial_rat(h, bar=False))
    if not yg.is_good(F) or not yg.is_good(G):
        return False, {"reason": "image not good"}
    return True, None


_INSTANCES = {
    "relations": _inst_relations,
    "psirv": _inst_psirv,
    "phirv": _inst_phirv,
    "vanish": _inst_vanish,
    "leading": _inst_leading,
    "dims": _inst_dims,
    "lusztig": _inst_lusztig,
    "rtt": _inst_rtt,
    "yangian-relations": _inst_yangian_relations,
    "yangian-phirv": _inst_yangian_phirv,
    "yangian-integral": _inst_yangian_integral,
}

_CHECKS = {
    "relations": _check_relations,
    "psirv": _check_psirv,
    "phirv": _check_phirv,
    "vanish": _check_vanish,
    "leading": _check_leading,
    "dims": _check_dims,
    "lusztig": _check_lusztig,
    "rtt": _check_rtt,
    "yangian-relations": _check_yangian_relations,
    "yangian-phirv": _check_yangian_phirv,
    "yangian-integral": _check_yangian_integral,
}


def _worker(arg):
    cfg_dict, instance_id, payload = arg
    cfg = SuiteConfig(**cfg_dict)
    try:
        ok, witness = _CHECKS[cfg.suite](cfg, payload)
    except Exception as exc:  # an honest failure record beats a crash
        ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    record = {"suite": cfg.suite, "type": cfg.type, "rank": cfg.rank,
              "instance": instance_id,
              "status": "pass" if ok else "fail"}
    if witness is not None:
        record["witness"] = witness
    return record


def _emit(records, out_path):
    lines = [json.dumps(r, sort_keys=True, default=str) for r in records]
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        _sysmod.stdout.write(text)


def run_suite(cfg):
    """Execute the named suite; returns (records, all_passed)."""
    if cfg.suite not in SUITES:
        raise ConfigError(f"unknown suite {cfg.suite!r}; choose from "
                          + ", ".join(SUITES))
    instances = _INSTANCES[cfg.suite](cfg)
    args = [(cfg.as_dict(), iid, payload) for iid, payload in instances]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_worker, args,
                                    chunksize=max(1, len(args) // (4 * cfg.jobs))))
    else:
        records = [_worker(a) for a in args]
    records.sort(key=lambda r: r["instance"])
    passed = sum(1 for r in records if r["status"] == "pass")
    summary = {"summary": True, "suite": cfg.suite, "type": cfg.type,
               "rank": cfg.rank, "seed": cfg.seed,
               "window": list(cfg.window), "max_k": cfg.max_k,
               "total": len(records), "passed": passed,
               "failed": len(records) - passed}
    records.append(summary)
    return records, passed == len(records) - 1


# -- expression DSL -----------------------------------------------------------

class ParseError(Exception):
    def __init__(self, message, offset):
        super().__init__(f"syntax error at offset {offset}: {message}")
        self.offset = offset


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([()\[\],*+\-^/]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing ("scalar", RationalV) or
    ("trig"/"rat", FreeExpr) values."""

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, sym):
        kind, value, offset = self.next()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}", offset)

    def parse(self):
        value = self.expr()
        kind, _, offset = self.peek()
        if kind != "end":
            raise ParseError("trailing input", offset)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, sym, offset = self.peek()
            if kind == "sym" and sym in "+-":
                self.next()
                rhs = self.term()
                if sym == "-":
                    rhs = self._scale(("scalar", RationalV.from_int(-1)),
                                      rhs, offset)
                value = self._add(value, rhs, offset)
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, sym, offset = self.peek()
            if kind == "sym" and sym == "*":
                self.next()
                value = self._mul(value, self.unary(), offset)
            else:
                return value

    def unary(self):
        kind, sym, offset = self.peek()
        if kind == "sym" and sym == "-":
            self.next()
            return self._scale(("scalar", RationalV.from_int(-1)),
                               self.unary(), offset)
        return self.atom()

    def atom(self):
        kind, value, offset = self.next()
        if kind == "int":
            return ("scalar", RationalV.from_int(value))
        if kind == "name":
            if value in ("e", "y"):
                self.expect("(")
                i = self._int()
                self.expect(",")
                r = self._int()
                self.expect(")")
                if value == "y" and r < 0:
                    raise ParseError("rational modes live in N", offset)
                return ("trig" if value == "e" else "rat", FELeaf(i, r))
            if value == "comm":
                lam = None
                kind2, sym2, _ = self.peek()
                if kind2 == "sym" and sym2 == "[":
                    self.next()
                    lam = self._scalar(self.expr())
                    self.expect("]")
                self.expect("(")
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                return self._comm(a, b, lam, offset)
            if value == "v":
                exp = 1
                kind2, sym2, _ = self.peek()
                if kind2 == "sym" and sym2 == "^":
                    self.next()
                    exp = self._int()
                return ("scalar", RationalV.v_power(exp))
            raise ParseError(f"unknown name {value!r}", offset)
        if kind == "sym" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("expected an expression", offset)

    def _int(self):
        kind, value, offset = self.next()
        sign = 1
        if kind == "sym" and value == "-":
            sign = -1
            kind, value, offset = self.next()
        if kind != "int":
            raise ParseError("expected an integer", offset)
        return sign * value

    def _scalar(self, value):
        if value[0] != "scalar":
            raise ParseError("expected a scalar", self.peek()[2])
        return value[1]

    def _add(self, a, b, offset):
        if a[0] == "scalar" and b[0] == "scalar":
            return ("scalar", a[1] + b[1])
        if a[0] != b[0]:
            raise ParseError("cannot add scalar and algebra element", offset)
        terms = []
        for value in (a, b):
            expr = value[1]
            terms.extend(expr.terms if isinstance(expr, FESum) else [expr])
        return (a[0], FESum(terms))

    def _mul(self, a, b, offset):
        if a[0] == "scalar" and b[0] == "scalar":
            return ("scalar", a[1] * b[1])
        if a[0] == "scalar":
            return self._scale(a, b, offset)
        if b[0] == "scalar":
            return self._scale(b, a, offset)
        if a[0] != b[0]:
            raise ParseError("cannot mix e(...) and y(...)", offset)
        factors = []
        for value in (a, b):
            expr = value[1]
            factors.extend(expr.factors if isinstance(expr, FEProd)
                           else [expr])
        return (a[0], FEProd(factors))

    def _scale(self, scalar, value, offset):
        c = scalar[1]
        if value[0] == "scalar":
            return ("scalar", c * value[1])
        if value[0] == "rat":
            c = _to_rational_scalar(c, offset)
        return (value[0], FEScale(c, value[1]))

    def _comm(self, a, b, lam, offset):
        if a[0] == "scalar" or b[0] == "scalar":
            raise ParseError("comm needs algebra elements", offset)
        if a[0] != b[0]:
            raise ParseError("cannot mix e(...) and y(...)", offset)
        if a[0] == "rat" and lam is not None:
            lam = _to_rational_scalar(lam, offset)
            if lam != yg.h_const(1):
                raise ParseError("rational commutators are plain", offset)
            lam = None
        return (a[0], FEComm(a[1], b[1], lam))


def _to_rational_scalar(c, offset):
    ratio = c.monomial_ratio()
    if ratio is None or ratio[1] != 0:
        raise ParseError("v-dependent scalar on a rational element", offset)
    return yg.h_const(ratio[0])


def parse_expr(text):
    """Parse the DSL; returns (kind, expr) with kind "trig", "rat", "scalar"."""
    return _Parser(text).parse()


# -- entry points --------------------------------------------------------------

def _cmd_verify(args):
    cfg = _build_config(args)
    records, all_pass = run_suite(cfg)
    _emit(records, cfg.out)
    return 0 if all_pass else 1


def _cmd_dims(args):
    cfg = _build_config(args, suite="dims")
    if cfg.k is None:
        raise ConfigError("dims needs --k")
    m = re.fullmatch(r"(\d+):(\d+)", args.deg)
    if not m:
        raise ConfigError(f"bad degree range {args.deg!r}, expected a:b")
    lo, hi = int(m.group(1)), int(m.group(2))
    system = cfg.system()
    rows = sm.dimension_report(system, cfg.k, range(lo, hi + 1), cfg.window)
    records = [{"suite": "dims", "type": cfg.type, "rank": cfg.rank,
                "k": list(cfg.k), **row} for row in rows]
    ok = all(row["ok"] for row in rows)
    records.append({"summary": True, "suite": "dims", "total": len(rows),
                    "passed": sum(1 for r in rows if r["ok"]),
                    "failed": sum(1 for r in rows if not r["ok"])})
    _emit(records, cfg.out)
    return 0 if ok else 1


def _cmd_eval(args):
    try:
        kind, value = parse_expr(args.expr)
    except ParseError as exc:
        _sysmod.stderr.write(str(exc) + "\n")
        return 2
    if kind == "scalar":
        print(json.dumps({"scalar": repr(value)}))
        return 0
    max_color = max(i for i, _ in _leaf_colors(value))
    rank = args.rank
    if rank is None:
        rank = max(max_color, 2 if args.type == "C" else 4)
    try:
        system = RootSystem(args.type, rank)
    except ValueError as exc:
        raise ConfigError(str(exc))
    if max_color > rank:
        raise ConfigError(f"color {max_color} exceeds rank {rank}")
    image = psi(system, value) if kind == "trig" else yg.psi_rat(system, value)
    out = {"kind": kind, "degree": list(image.k)}
    if args.show == "numerator":
        out["numerator"] = pv.p_serialize(image.num)
    elif args.show == "words":
        words = value.expand(RV_ONE if kind == "trig" else yg.FH_ONE)
        out["words"] = [[list(map(list, word)), repr(c)]
                        for word, c in sorted(words.items())]
    else:
        out["terms"] = len(image.num)
    print(json.dumps(out, default=str))
    return 0


def _leaf_colors(expr):
    if isinstance(expr, FELeaf):
        yield (expr.i, expr.r)
    elif isinstance(expr, FEProd):
        for f in expr.factors:
            yield from _leaf_colors(f)
    elif isinstance(expr, FESum):
        for t in expr.terms:
            yield from _leaf_colors(t)
    elif isinstance(expr, FEScale):
        yield from _leaf_colors(expr.sub)
    elif isinstance(expr, FEComm):
        yield from _leaf_colors(expr.a)
        yield from _leaf_colors(expr.b)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="shuffle-forge",
        description="Exact verification suites for trigonometric and "
                    "rational shuffle algebras of types C and D.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", choices=("C", "D"), required=True)
        p.add_argument("--rank", type=int, required=True)
        p.add_argument("--window", default="-2:2",
                       help="mode window a:b (default -2:2)")
        p.add_argument("--max-k", type=int, default=None,
                       help="cap on |k| (default SHUFFLE_FORGE_MAX_K or 6)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out", default=None, help="report path (default stdout)")

    pv_ = sub.add_parser("verify", help="run a verification suite")
    common(pv_)
    pv_.add_argument("--suite", required=True,
                     help="one of " + ", ".join(SUITES))
    pv_.add_argument("--k", default=None,
                     help="restrict sweeping suites to one degree vector, "
                          "e.g. 2,1")
    pv_.add_argument("--strict", action="store_true")

    pd = sub.add_parser("dims", help="dimension report for one degree vector")
    common(pd)
    pd.add_argument("--k", required=True, help="degree vector, e.g. 2,1")
    pd.add_argument("--deg", default="0:2", help="total mode degrees a:b")

    pe = sub.add_parser("eval", help="evaluate a DSL expression")
    pe.add_argument("--expr", required=True)
    pe.add_argument("--show", choices=("numerator", "words", "terms"),
                    default="numerator")
    pe.add_argument("--type", choices=("C", "D"), default="C")
    pe.add_argument("--rank", type=int, default=None)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "dims":
            return _cmd_dims(args)
        return _cmd_eval(args)
    except ConfigError as exc:
        _sysmod.stderr.write(f"config error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
