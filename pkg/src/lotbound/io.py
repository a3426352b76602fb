"""Canonical JSON for instances, plans, solutions and certificates.

Costs are strings (``"7"`` or ``"3/4"``) so rationals survive a round
trip. ``dumps`` fixes key order and layout, so serializing a parsed
canonical file reproduces it byte for byte.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Any, Optional

from .core import Instance, LevelCosts, LotSizingError, Plan, SingleLevelInstance
from .money import format_money, parse_money
from .reductions import ReductionCertificate


class ParseError(LotSizingError, ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _ints(v, name: str) -> list:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise ParseError(f"{name}: expected a list of integers")
    return v


def _ratios(v, name: str) -> list:
    if not isinstance(v, list):
        raise ParseError(f"{name}: expected a list of ratios")
    try:
        return [parse_money(x) for x in v]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{name}: {exc}") from None


# ---------------------------------------------------------------- instance

def _level_to_json(costs: LevelCosts, u) -> dict:
    return {
        "f": [format_money(v) for v in costs.f],
        "p": [format_money(v) for v in costs.p],
        "h": [format_money(v) for v in costs.h],
        "u": list(u) if u is not None else None,
    }


def instance_to_json(inst: Instance) -> dict:
    return {
        "T": inst.T,
        "d": list(inst.d),
        "retailer": _level_to_json(inst.retailer, inst.uR),
        "supplier": _level_to_json(inst.supplier, inst.uS),
        "nls": inst.nls,
    }


def _level_from_json(obj, name: str) -> tuple:
    if not isinstance(obj, dict):
        raise ParseError(f"{name}: expected an object")
    missing = {"f", "p", "h"} - obj.keys()
    if missing:
        raise ParseError(f"{name}: missing {sorted(missing)}")
    u = obj.get("u")
    if u is not None:
        u = _ints(u, f"{name}.u")
    return (LevelCosts(tuple(_ratios(obj["f"], f"{name}.f")), tuple(_ratios(obj["p"], f"{name}.p")),
                       tuple(_ratios(obj["h"], f"{name}.h"))), u)


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError("instance: expected a JSON object")
    for key in ("T", "d", "retailer", "supplier"):
        if key not in obj:
            raise ParseError(f"instance: missing {key!r}")
    T = obj["T"]
    if isinstance(T, bool) or not isinstance(T, int):
        raise ParseError("T: expected an integer")
    d = _ints(obj["d"], "d")
    retailer, uR = _level_from_json(obj["retailer"], "retailer")
    supplier, uS = _level_from_json(obj["supplier"], "supplier")
    nls = obj.get("nls", False)
    if not isinstance(nls, bool):
        raise ParseError("nls: expected a boolean")
    try:
        return Instance(T, tuple(d), retailer, supplier, uR=uR, uS=uS, nls=nls)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def single_level_to_json(uls: SingleLevelInstance) -> dict:
    return {
        "T": uls.T,
        "d": list(uls.d),
        "f": [format_money(v) for v in uls.f],
        "p": [format_money(v) for v in uls.p],
        "h": [format_money(v) for v in uls.h],
        "u": list(uls.u) if uls.u is not None else None,
        "nls": uls.nls,
    }


# -------------------------------------------------------------------- plan

def plan_to_json(plan: Plan) -> dict:
    return {
        "xR": list(plan.xR),
        "xS": list(plan.xS),
        "sR": list(plan.sR),
        "sS": list(plan.sS),
        "yR": [bool(v) for v in plan.yR],
        "yS": [bool(v) for v in plan.yS],
        "assignment": [list(p) for p in plan.assignment] if plan.assignment is not None else None,
    }


def plan_from_json(obj) -> Plan:
    if not isinstance(obj, dict):
        raise ParseError("plan: expected a JSON object")
    # a solution file is accepted too
    if "plan" in obj and isinstance(obj["plan"], dict):
        obj = obj["plan"]
    fields = {}
    for key in ("xR", "xS", "sR", "sS"):
        if key not in obj:
            raise ParseError(f"plan: missing {key!r}")
        fields[key] = tuple(_ints(obj[key], key))
    for key in ("yR", "yS"):
        v = obj.get(key)
        if v is None:
            base = fields["x" + key[1]]
            fields[key] = tuple(x > 0 for x in base)
        elif isinstance(v, list) and all(isinstance(x, (bool, int)) for x in v):
            fields[key] = tuple(bool(x) for x in v)
        else:
            raise ParseError(f"{key}: expected a list of booleans")
    asg = obj.get("assignment")
    if asg is not None:
        if not isinstance(asg, list) or any(not isinstance(p, list) or len(p) != 2 for p in asg):
            raise ParseError("assignment: expected a list of [t, k] pairs")
        asg = tuple(tuple(_ints(p, "assignment")) for p in asg)
    return Plan(assignment=asg, **fields)


def solution_to_json(cost, plan: Plan, algorithm: str, wall_time: float) -> dict:
    return {
        "cost": format_money(cost),
        "plan": plan_to_json(plan),
        "algorithm": algorithm,
        "wall_time": round(float(wall_time), 6),
    }


def report_to_json(report, cost: Optional[Fraction]) -> dict:
    return {
        "feasible": report.feasible,
        "cost": format_money(cost) if cost is not None else None,
        "violations": [{"constraint": v.constraint, "period": v.period, "detail": v.detail}
                       for v in report.violations],
    }


def certificate_to_json(cert: ReductionCertificate) -> dict:
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in cert.params.items()}
    out = {
        "source": cert.source,
        "params": params,
        "threshold": format_money(cert.threshold),
        "claim": cert.claim,
        "witness": ([list(w) if isinstance(w, tuple) else w for w in cert.witness]
                    if cert.witness is not None else None),
    }
    if isinstance(cert.produced, SingleLevelInstance):
        out["single_level"] = single_level_to_json(cert.produced)
    return out


# ------------------------------------------------------------------- files

def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def read_instance(path: str) -> Instance:
    return instance_from_json(load_json(path))


def read_plan(path: str) -> Plan:
    return plan_from_json(load_json(path))


def write_json(path: Optional[str], obj) -> None:
    text = dumps(obj)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
