"""Certificates: self-describing records of a certified lower bound.

A certificate is a JSON document.  Every rational is stored as a ``"p/q"``
string (never a float), and ``config`` echoes everything needed to rerun
the computation.  :func:`run_config` performs that rerun.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__
from .algebra import Point, Region, V
from .arrangement import global_min
from .expansion import IDENTITY, ROT_YZX, ROT_ZYX, SWAP_XY, Substitution, alpha, build_delta
from .milp import Status, build_milp_full, certify_decomposed, solve
from .parse import format_region, parse_region, parse_substitution

__all__ = [
    "CLAIMS",
    "METHODS",
    "Certificate",
    "frac_text",
    "parse_frac",
    "certify",
    "run_config",
    "InconsistentMethods",
]

CLAIMS = ("lemma-xy", "lemma-yz", "theorem-1", "custom")
METHODS = ("oracle", "milp", "decomposed")

PAIRS = {
    "lemma-xy": (IDENTITY, SWAP_XY),
    "lemma-yz": (ROT_YZX, ROT_ZYX),
}


class InconsistentMethods(RuntimeError):
    """Two methods disagree where exact arithmetic says they must not."""


def frac_text(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def _point_text(p: Optional[Point]) -> Optional[list[str]]:
    return None if p is None else [frac_text(v) for v in p.as_tuple()]


@dataclass
class Certificate:
    claim: str
    n: int
    bound: Fraction  # lower bound on Delta_n over the ambient
    alpha_n: Fraction
    method: str
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    parts: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0
    version: str = __version__

    @property
    def certified(self) -> bool:
        return self.bound > self.alpha_n

    @property
    def margin(self) -> Fraction:
        return self.bound - self.alpha_n

    def result_dict(self) -> dict:
        """Everything except timing and the thread count: identical across reruns."""
        return {
            "claim": self.claim,
            "n": self.n,
            "bound": frac_text(self.bound),
            "alpha_n": frac_text(self.alpha_n),
            "margin": frac_text(self.margin),
            "certified": self.certified,
            "method": self.method,
            "parts": self.parts,
            "witnesses": self.witnesses,
            "counts": self.counts,
        }

    def result_text(self) -> str:
        return json.dumps(self.result_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        doc = {
            "format": "meshcert-certificate/1",
            "engine_version": self.version,
            **self.result_dict(),
            "config": self.config,
            "wall_time_seconds": round(self.wall_time, 3),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Certificate:
        doc = json.loads(text)
        if doc.get("format") != "meshcert-certificate/1":
            raise ValueError("not a certificate document")
        cert = cls(
            claim=doc["claim"],
            n=int(doc["n"]),
            bound=parse_frac(doc["bound"]),
            alpha_n=parse_frac(doc["alpha_n"]),
            method=doc["method"],
            witnesses=doc["witnesses"],
            counts=doc["counts"],
            parts=doc["parts"],
            config=doc["config"],
            wall_time=float(doc.get("wall_time_seconds", 0.0)),
            version=doc.get("engine_version", ""),
        )
        if frac_text(cert.margin) != doc["margin"] or cert.certified != doc["certified"]:
            raise ValueError("certificate is internally inconsistent")
        return cert


def _pair_config(claim: str, s: Optional[str], t: Optional[str], ambient: Optional[str]):
    if claim in PAIRS:
        ss, tt = PAIRS[claim]
        return ss, tt, V
    if claim != "custom":
        raise ValueError(f"unknown claim {claim!r}")
    if s is None or t is None:
        raise ValueError("a custom claim needs both substitutions")
    return parse_substitution(s), parse_substitution(t), parse_region(ambient or "0<x<y<z")


def _single(
    claim: str, method: str, n: int, s: Substitution, t: Substitution, ambient: Region, threads: int, cross_check: bool
) -> Certificate:
    a = alpha(n)
    witnesses: list = []
    counts: dict = {}
    parts: list = []
    if method == "oracle":
        rep = global_min(build_delta(n, s, t, ambient), threads=threads)
        bound = rep.min_value
        witnesses.append({"role": "minimiser of Delta_n", "point": _point_text(rep.witness),
                          "face_dim": rep.witness_dim})
        counts = {"hyperplanes": rep.hyperplane_count, "cells": rep.cell_count}
    elif method == "milp":
        exact = solve(build_milp_full(n, s, t, ambient, include_cap=False), threads=threads)
        capped = solve(build_milp_full(n, s, t, ambient, include_cap=True), threads=threads)
        if exact.status is not Status.OPTIMAL:
            raise InconsistentMethods(f"uncapped model did not solve: {exact.status.value}")
        bound = exact.value + a
        if (capped.status is Status.INFEASIBLE) != (exact.value > 0):
            raise InconsistentMethods("capped and uncapped models disagree")
        witnesses.append({"role": "minimiser of Delta_n - alpha_n", "point": _point_text(exact.witness)})
        parts = [
            {"name": "min Delta_n - alpha_n", "value": frac_text(exact.value), "status": exact.status.value},
            {"name": "capped model", "status": capped.status.value},
        ]
        counts = {"nodes": exact.node_count, "capped_nodes": capped.node_count}
    elif method == "decomposed":
        d = certify_decomposed(n, s, t, ambient, threads=threads)
        bound = d.delta_bound
        parts = [
            {"name": "min Delta_{n-1} - alpha_{n-1}", "value": frac_text(d.previous.value),
             "status": d.previous.status.value},
            {"name": "min h_n(s) - h_n(t)", "value": frac_text(d.level_diff.value),
             "status": d.level_diff.status.value},
            {"name": "recombined lower bound on Delta_n - alpha_n", "value": frac_text(d.bound)},
        ]
        witnesses = [
            {"role": "minimiser of Delta_{n-1} - alpha_{n-1}", "point": _point_text(d.previous.witness)},
            {"role": "minimiser of h_n(s) - h_n(t)", "point": _point_text(d.level_diff.witness)},
        ]
        counts = {"nodes_previous": d.previous.node_count, "nodes_level_diff": d.level_diff.node_count}
    else:
        raise ValueError(f"unknown method {method!r}")
    if cross_check:
        oracle = global_min(build_delta(n, s, t, ambient), threads=threads).min_value
        if bound > oracle or (method != "decomposed" and bound != oracle):
            raise InconsistentMethods(f"{method} bound {bound} vs oracle minimum {oracle}")
    return Certificate(claim, n, bound, a, method, witnesses, counts, parts)


def certify(
    claim: str,
    method: str = "decomposed",
    n: int = 4,
    threads: int = 1,
    s: Optional[str] = None,
    t: Optional[str] = None,
    ambient: Optional[str] = None,
    cross_check: bool = False,
) -> Certificate:
    """Run one pipeline and package its result."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    t0 = time.perf_counter()
    if claim == "theorem-1":
        subs = [_single(c, method, n, *PAIRS[c], V, threads, cross_check) for c in ("lemma-xy", "lemma-yz")]
        worst = min(subs, key=lambda c: c.bound)
        cert = Certificate(
            claim, n, worst.bound, worst.alpha_n, method,
            witnesses=[w for c in subs for w in c.witnesses],
            counts={c.claim: c.counts for c in subs},
            parts=[{"name": c.claim, "value": frac_text(c.bound), "parts": c.parts} for c in subs],
        )
    else:
        ss, tt, amb = _pair_config(claim, s, t, ambient)
        cert = _single(claim, method, n, ss, tt, amb, threads, cross_check)
        if claim == "custom":
            s, t, ambient = str(ss), str(tt), format_region(amb)
    cert.wall_time = time.perf_counter() - t0
    cert.config = {"claim": claim, "method": method, "n": n, "threads": threads}
    if claim == "custom":
        cert.config.update({"s": s, "t": t, "ambient": ambient})
    return cert


def run_config(config: dict, threads: Optional[int] = None) -> Certificate:
    """Rerun the computation a certificate's ``config`` describes."""
    return certify(
        config["claim"],
        config["method"],
        int(config["n"]),
        threads=config.get("threads", 1) if threads is None else threads,
        s=config.get("s"),
        t=config.get("t"),
        ambient=config.get("ambient"),
    )
