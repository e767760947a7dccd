#!/usr/bin/env python3
"""File-protocol MILP backend.

Reads an LP-format model, solves it and writes a solution file:

    status objective
    name value
    ...
    # bound X        (optional extras)
    # nodes N

Statuses: optimal, feasible, infeasible, time_limit, error.  Engines:
"highs" (scipy.optimize.milp) or "glpk" (cvxopt.glpk) for cross-checking.
"""

import argparse
import math
import re
import sys

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_.]*)"
    r"|(?P<op><=|>=|=<|=>|[:+\-=]))"
)

_SECTIONS = {
    "minimize": "objective",
    "min": "objective",
    "maximize": "objective_max",
    "max": "objective_max",
    "subject to": "constraints",
    "such that": "constraints",
    "st": "constraints",
    "s.t.": "constraints",
    "bounds": "bounds",
    "bound": "bounds",
    "binary": "binary",
    "binaries": "binary",
    "bin": "binary",
    "general": "general",
    "generals": "general",
    "gen": "general",
    "end": "end",
}

INF = math.inf


class Model:
    def __init__(self):
        self.maximize = False
        self.obj = {}          # name -> coefficient
        self.obj_const = 0.0
        self.rows = []         # (name, {name: coef}, sense, rhs)
        self.bounds = {}       # name -> [lb, ub] explicit entries
        self.binary = set()
        self.general = set()
        self.order = []        # first-appearance order of variables
        self._known = set()

    def touch(self, name):
        if name not in self._known:
            self._known.add(name)
            self.order.append(name)


def tokenize(text):
    tokens = []
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0]
        if not line.strip():
            continue
        key = line.strip().lower()
        if key in _SECTIONS:
            tokens.append(("section", _SECTIONS[key]))
            continue
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if not m:
                if line[pos:].strip():
                    raise ValueError("cannot tokenize: %r" % line[pos:])
                break
            pos = m.end()
            if m.group("num") is not None:
                tokens.append(("num", float(m.group("num"))))
            elif m.group("name") is not None:
                name = m.group("name")
                low = name.lower()
                if low in ("inf", "infinity"):
                    tokens.append(("num", INF))
                elif low == "free":
                    tokens.append(("free", None))
                else:
                    tokens.append(("name", name))
            else:
                op = m.group("op")
                if op in ("=<",):
                    op = "<="
                if op in ("=>",):
                    op = ">="
                tokens.append(("op", op))
    return tokens


def parse_expr(tokens, i):
    """Reads a linear expression; returns (coeffs, constant, next index)."""
    coeffs, const = {}, 0.0
    sign = 1.0
    pending = None  # numeric literal waiting for a name
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in ("+", "-"):
            if pending is not None:
                const += sign * pending
                pending = None
            sign = 1.0 if val == "+" else -1.0
            i += 1
        elif kind == "num":
            if pending is not None:
                const += sign * pending
            pending = val
            i += 1
        elif kind == "name":
            coef = sign * (pending if pending is not None else 1.0)
            coeffs[val] = coeffs.get(val, 0.0) + coef
            pending = None
            sign = 1.0
            i += 1
        else:
            break
    if pending is not None:
        const += sign * pending
    return coeffs, const, i


def parse_lp(text):
    tokens = tokenize(text)
    model = Model()
    i, n = 0, len(tokens)
    section = None
    while i < n:
        kind, val = tokens[i]
        if kind == "section":
            if val == "objective_max":
                model.maximize = True
                val = "objective"
            section = val
            i += 1
            continue
        if section == "objective":
            # optional label
            if kind == "name" and i + 1 < n and tokens[i + 1] == ("op", ":"):
                i += 2
            coeffs, const, i = parse_expr(tokens, i)
            for name, c in coeffs.items():
                model.touch(name)
                model.obj[name] = model.obj.get(name, 0.0) + c
            model.obj_const += const
        elif section == "constraints":
            if not (kind == "name" and i + 1 < n and tokens[i + 1] == ("op", ":")):
                raise ValueError("constraint without a label near %r" % (tokens[i],))
            label = val
            i += 2
            coeffs, const, i = parse_expr(tokens, i)
            if i >= n or tokens[i][0] != "op" or tokens[i][1] not in ("<=", ">=", "="):
                raise ValueError("constraint %s: missing sense" % label)
            sense = tokens[i][1]
            i += 1
            neg = False
            if i < n and tokens[i][0] == "op" and tokens[i][1] in ("+", "-"):
                neg = tokens[i][1] == "-"
                i += 1
            if i >= n or tokens[i][0] != "num":
                raise ValueError("constraint %s: missing right-hand side" % label)
            rhs = -tokens[i][1] if neg else tokens[i][1]
            i += 1
            for name in coeffs:
                model.touch(name)
            model.rows.append((label, coeffs, sense, rhs - const))
        elif section == "bounds":
            # forms: v free | lb <= v <= ub | v <= ub | v >= lb | v = b
            lo = None
            if kind == "num" or (kind == "op" and val == "-"):
                neg = False
                if kind == "op":
                    neg = True
                    i += 1
                    if i >= n or tokens[i][0] != "num":
                        raise ValueError("bounds: dangling minus")
                lo = -tokens[i][1] if neg else tokens[i][1]
                i += 1
                if not (i < n and tokens[i] == ("op", "<=")):
                    raise ValueError("bounds: expected <= after lower bound")
                i += 1
                kind, val = tokens[i]
            if kind != "name":
                raise ValueError("bounds: expected a variable name")
            name = val
            model.touch(name)
            b = model.bounds.setdefault(name, [None, None])
            if lo is not None:
                b[0] = lo
            i += 1
            if i < n and tokens[i][0] == "free":
                b[0], b[1] = -INF, INF
                i += 1
                continue
            if i < n and tokens[i][0] == "op" and tokens[i][1] in ("<=", ">=", "="):
                op = tokens[i][1]
                i += 1
                neg = False
                if i < n and tokens[i] == ("op", "-"):
                    neg = True
                    i += 1
                if i >= n or tokens[i][0] != "num":
                    raise ValueError("bounds: expected a number after %s" % op)
                num = -tokens[i][1] if neg else tokens[i][1]
                i += 1
                if op == "<=":
                    b[1] = num
                elif op == ">=":
                    b[0] = num
                else:
                    b[0] = b[1] = num
        elif section == "binary":
            if kind != "name":
                raise ValueError("binary section: expected a variable name")
            model.touch(val)
            model.binary.add(val)
            i += 1
        elif section == "general":
            if kind != "name":
                raise ValueError("general section: expected a variable name")
            model.touch(val)
            model.general.add(val)
            i += 1
        elif section == "end":
            i += 1
        else:
            raise ValueError("token before any section: %r" % (tokens[i],))
    return model


def variable_bounds(model):
    lbs, ubs = [], []
    for name in model.order:
        if name in model.binary:
            lb, ub = 0.0, 1.0
        else:
            lb, ub = 0.0, INF
        explicit = model.bounds.get(name)
        if explicit is not None:
            if explicit[0] is not None:
                lb = explicit[0]
            if explicit[1] is not None:
                ub = explicit[1]
        lbs.append(lb)
        ubs.append(ub)
    return lbs, ubs


def solve_highs(model, time_limit):
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp

    names = model.order
    idx = {name: j for j, name in enumerate(names)}
    nv = len(names)
    sign = -1.0 if model.maximize else 1.0
    c = np.zeros(nv)
    for name, coef in model.obj.items():
        c[idx[name]] = sign * coef

    data, ri, ci, lo, hi = [], [], [], [], []
    for r, (_, coeffs, sense, rhs) in enumerate(model.rows):
        for name, coef in coeffs.items():
            ri.append(r)
            ci.append(idx[name])
            data.append(coef)
        if sense == "<=":
            lo.append(-INF)
            hi.append(rhs)
        elif sense == ">=":
            lo.append(rhs)
            hi.append(INF)
        else:
            lo.append(rhs)
            hi.append(rhs)
    constraints = []
    if model.rows:
        A = sparse.csr_matrix((data, (ri, ci)), shape=(len(model.rows), nv))
        constraints.append(LinearConstraint(A, lo, hi))

    integrality = np.array(
        [1 if nm in model.binary or nm in model.general else 0 for nm in names]
    )
    lbs, ubs = variable_bounds(model)
    options = {"mip_rel_gap": 0.0}
    if time_limit and time_limit > 0:
        options["time_limit"] = time_limit
    res = milp(
        c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(np.array(lbs), np.array(ubs)),
        options=options,
    )

    extras = {}
    bound = getattr(res, "mip_dual_bound", None)
    if bound is not None and math.isfinite(bound):
        extras["bound"] = sign * bound + model.obj_const
    nodes = getattr(res, "mip_node_count", None)
    if nodes is not None:
        extras["nodes"] = int(nodes)

    if res.status == 0:
        status = "optimal"
    elif res.status == 1:
        status = "time_limit"
    elif res.status == 2:
        status = "infeasible"
    else:
        status = "error"
        extras["message"] = str(res.message).replace("\n", " ")

    values = None
    objective = 0.0
    if res.x is not None and status in ("optimal", "time_limit"):
        values = {nm: float(res.x[j]) for j, nm in enumerate(names)}
        objective = sign * float(res.fun) + model.obj_const
    return status, objective, values, extras


def solve_glpk(model, time_limit):
    from cvxopt import glpk, matrix, spmatrix

    names = model.order
    idx = {name: j for j, name in enumerate(names)}
    nv = len(names)
    sign = -1.0 if model.maximize else 1.0
    c = matrix([sign * model.obj.get(nm, 0.0) for nm in names])

    gi, gj, gv, h = [], [], [], []
    ai, aj, av, b = [], [], [], []
    for _, coeffs, sense, rhs in model.rows:
        if sense == "=":
            row = len(b)
            for name, coef in coeffs.items():
                ai.append(row)
                aj.append(idx[name])
                av.append(coef)
            b.append(rhs)
        else:
            flip = -1.0 if sense == ">=" else 1.0
            row = len(h)
            for name, coef in coeffs.items():
                gi.append(row)
                gj.append(idx[name])
                gv.append(flip * coef)
            h.append(flip * rhs)
    lbs, ubs = variable_bounds(model)
    for j, nm in enumerate(names):
        if nm in model.binary:
            continue  # glpk pins binaries to {0,1} on its own
        if lbs[j] > -INF:
            row = len(h)
            gi.append(row)
            gj.append(j)
            gv.append(-1.0)
            h.append(-lbs[j])
        if ubs[j] < INF:
            row = len(h)
            gi.append(row)
            gj.append(j)
            gv.append(1.0)
            h.append(ubs[j])
    # explicit bounds on binaries (e.g. fixings) still need rows
    for nm, eb in model.bounds.items():
        if nm not in model.binary or eb is None:
            continue
        j = idx[nm]
        if eb[0] is not None and eb[0] > -INF:
            row = len(h)
            gi.append(row)
            gj.append(j)
            gv.append(-1.0)
            h.append(-eb[0])
        if eb[1] is not None and eb[1] < INF:
            row = len(h)
            gi.append(row)
            gj.append(j)
            gv.append(1.0)
            h.append(eb[1])

    G = spmatrix(gv, gi, gj, (len(h) if h else 1, nv))
    hh = matrix(h if h else [0.0])
    glpk.options["msg_lev"] = "GLP_MSG_OFF"
    if time_limit and time_limit > 0:
        glpk.options["tm_lim"] = int(time_limit * 1000)
    kwargs = {}
    if b:
        A = spmatrix(av, ai, aj, (len(b), nv))
        kwargs = {"A": A, "b": matrix(b)}
    B = {idx[nm] for nm in model.binary}
    I = {idx[nm] for nm in model.general}
    if B or I:
        status, x = glpk.ilp(c, G, hh, I=I, B=B, **kwargs)
    else:
        result = glpk.lp(c, G, hh, **kwargs)
        status, x = result[0], result[1]

    extras = {}
    if status == "optimal":
        st = "optimal"
    elif "infeasible" in status:
        st = "infeasible"
    elif status in ("unknown", "undefined"):
        st = "time_limit" if time_limit else "error"
        extras["message"] = "glpk returned status '%s'" % status
    else:
        st = "error"
        extras["message"] = "glpk returned status '%s'" % status

    values = None
    objective = 0.0
    if x is not None and st == "optimal":
        xs = list(x)
        values = {nm: float(xs[j]) for j, nm in enumerate(names)}
        objective = sign * sum(
            model.obj.get(nm, 0.0) * values[nm] for nm in names
        ) + model.obj_const
    return st, objective, values, extras


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--engine", default="highs", choices=["highs", "glpk"])
    ap.add_argument("--time-limit", type=float, default=0.0)
    ap.add_argument("--priorities", default=None, help="accepted, not used")
    args = ap.parse_args()

    with open(args.model) as fh:
        model = parse_lp(fh.read())

    if args.engine == "glpk":
        status, objective, values, extras = solve_glpk(model, args.time_limit)
    else:
        status, objective, values, extras = solve_highs(model, args.time_limit)

    with open(args.solution, "w") as out:
        out.write("%s %s\n" % (status, repr(objective)))
        if values is not None:
            for name in model.order:
                out.write("%s %s\n" % (name, repr(values[name])))
        if "bound" in extras:
            out.write("# bound %s\n" % repr(extras["bound"]))
        if "nodes" in extras:
            out.write("# nodes %d\n" % extras["nodes"])
        if "message" in extras:
            out.write("# message %s\n" % extras["message"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
