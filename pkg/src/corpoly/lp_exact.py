"""Self-contained exact-rational linear programming.

Standard form is fixed: named variables, all nonnegative; equality
constraints; maximize.  Callers convert inequalities by adding named
slacks.  The solver is a two-phase dense-tableau simplex with exact
rational pivots: entering columns by Dantzig's rule (most negative reduced
cost, ties to the lowest index) with a permanent switch to Bland's rule
after a run of degenerate pivots, which guarantees termination.  Every
optimal point is re-checked against all constraints before it is returned.

Scalability boundary: dense rational tableaus are fine up to a few
thousand variables; beyond that this module is the wrong tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .rationals import fast_rational, to_fraction

DEGENERATE_SWITCH = 50  # consecutive zero-progress pivots before Bland


class LpError(ValueError):
    """Malformed LP (unknown variables, duplicate names...); distinct from
    infeasibility, which is an outcome."""


@dataclass
class LinearProgram:
    variables: list                 # ordered names; all constrained >= 0
    constraints: list               # list of (dict name -> rational, rhs)
    objective: dict                 # name -> rational; sense is maximize

    def validate(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise LpError("duplicate variable names")
        known = set(self.variables)
        for lin, _rhs in self.constraints:
            for name in lin:
                if name not in known:
                    raise LpError("constraint references unknown variable %r" % name)
        for name in self.objective:
            if name not in known:
                raise LpError("objective references unknown variable %r" % name)


@dataclass
class LpOutcome:
    status: str                     # optimal | infeasible | unbounded
    value: Fraction = None
    point: dict = None


class SimplexSolver:
    """Two-phase simplex over one constraint system; the feasible basis is
    kept between solves so many objectives can be optimized cheaply."""

    def __init__(self, lp: LinearProgram):
        lp.validate()
        self.lp = lp
        self.names = list(lp.variables)
        self.nvars = len(self.names)
        self.col = {name: j for j, name in enumerate(self.names)}
        R = fast_rational
        self.R = R
        rows = []
        rhs = []
        for lin, b in lp.constraints:
            row = [R(0)] * self.nvars
            for name, c in lin.items():
                row[self.col[name]] += R(to_fraction(c))
            b = R(to_fraction(b))
            if b < 0:
                row = [-a for a in row]
                b = -b
            rows.append(row)
            rhs.append(b)
        self.T = rows
        self.rhs = rhs
        self.basis = None
        self.feasible = None

    # -- pivoting core ------------------------------------------------------

    def _pivot(self, r: int, c: int) -> None:
        T, rhs = self.T, self.rhs
        prow = T[r]
        piv = prow[c]
        if piv != 1:
            prow = [a / piv if a else a for a in prow]
            T[r] = prow
            rhs[r] = rhs[r] / piv
        prhs = rhs[r]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][c]
            if f:
                row = T[i]
                T[i] = [a - f * b if b else a for a, b in zip(row, prow)]
                rhs[i] = rhs[i] - f * prhs
        self.basis[r] = c

    def _reduced_costs(self, cost: list) -> list:
        """d_j = z_j - c_j for the current basis."""
        T = self.T
        d = [-cj for cj in cost]
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = T[i]
                for j in range(len(d)):
                    if row[j]:
                        d[j] += cb * row[j]
        return d

    def _optimize(self, cost: list, allowed: int) -> str:
        """Run pivots until optimal or unbounded.  Columns >= allowed never
        enter (used to lock out artificials in phase 2)."""
        R = self.R
        zero = R(0)
        bland = False
        degenerate_run = 0
        d = self._reduced_costs(cost)
        while True:
            enter = None
            if bland:
                for j in range(allowed):
                    if d[j] < zero:
                        enter = j
                        break
            else:
                best = zero
                for j in range(allowed):
                    if d[j] < best:
                        best = d[j]
                        enter = j
            if enter is None:
                return "optimal"
            # ratio test; ties to the smallest basic variable index
            leave = None
            best_ratio = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > zero:
                    ratio = self.rhs[i] / a
                    if best_ratio is None or ratio < best_ratio or \
                       (ratio == best_ratio and self.basis[i] < self.basis[leave]):
                        best_ratio = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            if best_ratio == zero:
                degenerate_run += 1
                if degenerate_run >= DEGENERATE_SWITCH:
                    bland = True
            else:
                degenerate_run = 0
            dcol = d[enter]
            self._pivot(leave, enter)
            # update reduced costs: d -= d_enter * (pivot row)
            prow = self.T[leave]
            d = [a - dcol * b if b else a for a, b in zip(d, prow)]
        # not reached

    # -- phases -------------------------------------------------------------

    def find_feasible_basis(self) -> bool:
        """Phase 1: artificial variables with a drive-to-zero objective.
        Returns False (and records it) when the system is infeasible."""
        R = self.R
        m = len(self.T)
        n = self.nvars
        for i, row in enumerate(self.T):
            ext = [R(0)] * m
            ext[i] = R(1)
            self.T[i] = row + ext
        self.basis = [n + i for i in range(m)]
        cost = [R(0)] * n + [R(-1)] * m
        status = self._optimize(cost, n + m)
        assert status == "optimal"  # phase 1 is always bounded
        if any(self.rhs[i] != 0 and self.basis[i] >= n for i in range(m)):
            self.feasible = False
            return False
        # drive remaining zero-level artificials out of the basis
        drop = []
        for i in range(m):
            if self.basis[i] >= n:
                c = next((j for j in range(n) if self.T[i][j] != 0), None)
                if c is None:
                    drop.append(i)  # redundant row
                else:
                    self._pivot(i, c)
        for i in reversed(sorted(drop)):
            del self.T[i]
            del self.rhs[i]
            del self.basis[i]
        # artificial columns are dead from here on
        for i in range(len(self.T)):
            self.T[i] = self.T[i][:n]
        self.feasible = True
        return True

    def solve_objective(self, objective: dict) -> LpOutcome:
        """Phase 2 for one objective, starting from the current basis."""
        if self.feasible is None:
            self.find_feasible_basis()
        if not self.feasible:
            return LpOutcome("infeasible")
        R = self.R
        cost = [R(0)] * self.nvars
        for name, c in objective.items():
            if name not in self.col:
                raise LpError("objective references unknown variable %r" % name)
            cost[self.col[name]] += R(to_fraction(c))
        status = self._optimize(cost, self.nvars)
        if status == "unbounded":
            return LpOutcome("unbounded")
        point = {name: Fraction(0) for name in self.names}
        for i, bi in enumerate(self.basis):
            point[self.names[bi]] = to_fraction(self.rhs[i])
        value = sum((to_fraction(c) * point[name]
                     for name, c in objective.items()), Fraction(0))
        self._check_point(point)
        return LpOutcome("optimal", value, point)

    def _check_point(self, point: dict) -> None:
        """Exact feasibility check of a claimed optimal point."""
        for name, x in point.items():
            assert x >= 0, "negative value for %s" % name
        for lin, b in self.lp.constraints:
            val = sum((to_fraction(c) * point[name] for name, c in lin.items()),
                      Fraction(0))
            assert val == to_fraction(b), "constraint violated at returned point"


def solve(lp: LinearProgram) -> LpOutcome:
    return SimplexSolver(lp).solve_objective(lp.objective)


def solve_many(lp: LinearProgram, objectives: list) -> list:
    """Solve the same constraint system under many objectives, reusing the
    phase-1 work and warm-starting each solve from the previous basis."""
    solver = SimplexSolver(lp)
    return [solver.solve_objective(obj) for obj in objectives]


# ---------------------------------------------------------------------------
# LP file export / import

def _sanitize(name: str) -> str:
    return "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name)


def _clear_row(lin: dict, rhs: Fraction):
    """Scale a rational row to integers (lcm of denominators)."""
    dens = [to_fraction(c).denominator for c in lin.values()]
    dens.append(to_fraction(rhs).denominator)
    scale = lcm(*dens) if dens else 1
    out = {k: to_fraction(c) * scale for k, c in lin.items()}
    return out, to_fraction(rhs) * scale


def _expr(lin: dict, order: dict) -> str:
    parts = []
    for name in sorted(lin, key=lambda n: order[n]):
        c = lin[name]
        if c == 0:
            continue
        mag = abs(c)
        sign = "-" if c < 0 else "+"
        term = name if mag == 1 else "%d %s" % (mag.numerator, name)
        if not parts:
            parts.append(term if sign == "+" else "- " + term)
        else:
            parts.append("%s %s" % (sign, term))
    return " ".join(parts) if parts else "0 %s" % next(iter(order))


def to_lp_file(lp: LinearProgram) -> str:
    """Deterministic LP-file text (Maximize / Subject To / Bounds / End).
    Variables are renamed x0, x1, ... in declaration order; the original
    names appear in leading comment lines.  All rows are cleared to
    integer coefficients."""
    lp.validate()
    short = {name: "x%d" % i for i, name in enumerate(lp.variables)}
    order = {short[name]: i for i, name in enumerate(lp.variables)}
    lines = ["\\ exact rational LP export"]
    for name in lp.variables:
        if short[name] != name:
            lines.append("\\ %s = %s" % (short[name], _sanitize(name)))
    obj, _ = _clear_row({short[k]: v for k, v in lp.objective.items()}, 0)
    lines.append("Maximize")
    lines.append(" obj: %s" % _expr(obj, order) if obj else " obj: 0 x0")
    if not lp.objective or all(to_fraction(v) == 0 for v in lp.objective.values()):
        lines[-1] = " obj: 0"
    lines.append("Subject To")
    for i, (lin, rhs) in enumerate(lp.constraints):
        row, b = _clear_row({short[k]: v for k, v in lin.items()}, rhs)
        lines.append(" c%d: %s = %d" % (i, _expr(row, order), b.numerator))
    lines.append("Bounds")
    for name in lp.variables:
        lines.append(" %s >= 0" % short[name])
    lines.append("End")
    return "\n".join(lines) + "\n"


def _parse_expr(tokens: list) -> dict:
    lin = {}
    sign = 1
    coef = None
    for tok in tokens:
        if tok == "+":
            sign, coef = 1, None
        elif tok == "-":
            sign, coef = -1, None
        elif tok.lstrip("+-").replace("/", "").isdigit():
            coef = Fraction(tok)
        else:
            c = Fraction(sign) * (coef if coef is not None else 1)
            lin[tok] = lin.get(tok, Fraction(0)) + c
            sign, coef = 1, None
    return lin


def parse_lp_file(text: str) -> LinearProgram:
    """Parse the subset of the LP format emitted by to_lp_file."""
    section = None
    objective = {}
    constraints = []
    bounded = []
    for raw in text.splitlines():
        line = raw.split("\\")[0].strip()
        if not line:
            continue
        low = line.lower()
        if low in ("maximize", "subject to", "bounds", "end"):
            section = low
            continue
        if ":" in line:
            line = line.split(":", 1)[1].strip()
        if section == "maximize":
            objective.update(_parse_expr(line.split()))
        elif section == "subject to":
            if "=" not in line:
                raise LpError("constraint without '=': %r" % line)
            lhs, rhs = line.rsplit("=", 1)
            constraints.append((_parse_expr(lhs.split()), Fraction(rhs.strip())))
        elif section == "bounds":
            bounded.append(line.split()[0])
    variables = sorted({n for lin, _ in constraints for n in lin}
                       | set(objective) | set(bounded),
                       key=lambda n: (len(n), n))
    objective = {k: v for k, v in objective.items() if v != 0}
    return LinearProgram(variables, constraints, objective)
