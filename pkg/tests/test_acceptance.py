"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import contextlib
import io
import json
import random
import re
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (  # noqa: E402
    cleared_root_condition,
    group_law_holds,
    hensel_identity_holds,
    invariants_hold,
    member_by_search,
    random_derivation,
    random_ideal,
    random_poly,
    s_pairs_reduce_to_zero,
)
from twinprop.cli import main  # noqa: E402
from twinprop.criterion import (  # noqa: E402
    REGULAR_LOCUS,
    SATISFIED,
    VIOLATED,
    base_cocycle,
    cocycle_affine,
    generic_check,
    specialized_check,
)
from twinprop.derivation import branch_data  # noqa: E402
from twinprop.groebner import buchberger, is_member  # noqa: E402
from twinprop.multipoly import MultiPoly  # noqa: E402
from twinprop.normalize import normalize  # noqa: E402
from twinprop.pairs import PairAlgebra, hensel_factorize, lift_root_pair  # noqa: E402
from twinprop.parser import parse_derivation  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"
TIMINGS = re.compile(r'  "timings": \{[^}]*\},\n')


def family_text(n: int) -> str:
    return f"x*dy + 2*y*dz1 + (1+y^{n})*dz2"


def family(n: int):
    return parse_derivation(family_text(n))


def run_cli_check(n: int, out: Path) -> tuple[int, dict, str]:
    code = main(["check", family_text(n), "--json", str(out)])
    text = out.read_text(encoding="utf-8")
    return code, json.loads(text), text


def strip_timings(text: str) -> str:
    """The report text with its timings block removed; everything else compares byte for byte."""
    return TIMINGS.sub("", text, count=1)


# -- criteria -------------------------------------------------------------------------------------

def criterion_1() -> tuple[bool, str]:
    """Verdicts on the D_n family through the check command, under 5 s each."""
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        for n, verdict, code in ((1, "PROPER", 0), (2, "IMPROPER", 1), (3, "PROPER", 0),
                                 (4, "IMPROPER", 1), (5, "PROPER", 0)):
            t0 = time.perf_counter()
            got_code, report, _ = run_cli_check(n, Path(tmp) / f"d{n}.json")
            seconds = time.perf_counter() - t0
            if got_code != code or report["verdict"] != verdict:
                problems.append(f"D{n}: {report['verdict']} exit {got_code}")
            if verdict == "IMPROPER" and not any("0" in w["values"] for w in report["witnesses"]):
                problems.append(f"D{n}: no witness at t = 0")
            if seconds >= 5:
                problems.append(f"D{n}: {seconds:.1f}s")
    return not problems, "; ".join(problems) or "D1..D5 as expected"


def criterion_2() -> tuple[bool, str]:
    got = (specialized_check(family(2), 2, 1, 0), specialized_check(family(3), 2, 1, 0))
    return got == (VIOLATED, SATISFIED), f"D2 {got[0]}, D3 {got[1]}"


def criterion_3() -> tuple[bool, str]:
    """Hensel identity and cleared root condition on 50 seeded inputs, deg <= 4, n <= 3."""
    rng = random.Random(3003)
    bad = 0
    for _ in range(50):
        D = random_derivation(rng, n_max=3, deg_max=4)
        for P in D.P:
            H = hensel_factorize(P, D.n)
            A = PairAlgebra(H.residue)
            sa, sb = lift_root_pair(H, A)
            ok = hensel_identity_holds(H) and cleared_root_condition(H, A, sa) and cleared_root_condition(H, A, sb)
            bad += not ok
    return bad == 0, f"{bad} failures over 50 inputs"


def flow_inputs():
    rng = random.Random(4004)
    return [random_derivation(rng, n_max=3, deg_max=4) for _ in range(50)]


def criterion_4() -> tuple[bool, str]:
    bad = 0
    for D in flow_inputs():
        bad += not (group_law_holds(D) and invariants_hold(D))
    return bad == 0, f"{bad} failures over 50 inputs"


def normalized_inputs(count: int = 20):
    rng = random.Random(5005)
    return [normalize(random_derivation(rng, n_max=3, deg_max=4))[0] for _ in range(count)]


def criterion_5() -> tuple[bool, str]:
    bad = 0
    for N in normalized_inputs():
        for i in (1, 2):
            bad += not cocycle_affine(base_cocycle(N, i), REGULAR_LOCUS)
    return bad == 0, f"{bad} non-affine base cocycles over 20 inputs"


def seeded_regular_values(rng: random.Random, alpha, count: int) -> list[Fraction]:
    values: list[Fraction] = []
    while len(values) < count:
        v = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
        if alpha(v) != 0 and v not in values:
            values.append(v)
    return values


def criterion_6() -> tuple[bool, str]:
    """Generic SATISFIED agrees with 10 specializations; rational witnesses are confirmed."""
    rng = random.Random(6006)
    inputs = [family(n) for n in range(1, 6)] + normalized_inputs() + [normalize(D)[0] for D in flow_inputs()]
    satisfied = violated = witnesses = 0
    problems = []
    for k, N in enumerate(inputs):
        for i, j in ((1, 2), (2, 1)):
            verdict = generic_check(N, i, j)
            if verdict.status == SATISFIED:
                satisfied += 1
                for lam in seeded_regular_values(rng, branch_data(N, i).alpha, 10):
                    if specialized_check(N, i, j, lam) != SATISFIED:
                        problems.append(f"input {k} ({i},{j}) at {lam}")
            elif verdict.status == VIOLATED:
                violated += 1
                for lam in verdict.witness.values:
                    witnesses += 1
                    if specialized_check(N, i, j, lam) != VIOLATED:
                        problems.append(f"input {k} ({i},{j}) witness {lam}")
    detail = f"{satisfied} satisfied, {violated} violated, {witnesses} witnesses checked"
    return not problems and satisfied > 0 and witnesses > 0, "; ".join(problems) or detail


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(7007)
    problems = 0
    for _ in range(50):
        I = random_ideal(rng)
        GB = buchberger(I)
        problems += not s_pairs_reduce_to_zero(list(GB.basis), I.order)
        cofactors = [random_poly(rng, I.vars, max_deg=1, terms=2) for _ in I.generators]
        f = sum((h * g for h, g in zip(cofactors, I.generators)), MultiPoly.zero(I.vars))
        problems += is_member(f, I) != member_by_search(f, list(I.generators), 1)
        g = f + random_poly(rng, I.vars, max_deg=2, terms=1)
        problems += is_member(g, I) != any(member_by_search(g, list(I.generators), B) for B in range(5))
    return problems == 0, f"{problems} disagreements over 50 ideals"


def criterion_8() -> tuple[bool, str]:
    problems = []
    with tempfile.TemporaryDirectory() as tmp:
        for n in range(1, 5):
            _, _, text = run_cli_check(n, Path(tmp) / f"d{n}.json")
            golden = (GOLDEN / f"D{n}.json").read_text(encoding="utf-8")
            if strip_timings(text) != strip_timings(golden):
                problems.append(f"D{n}")
    return not problems, "mismatch: " + ", ".join(problems) if problems else "D1..D4 match"


CRITERIA = {
    1: ("family verdicts", criterion_1, 25),
    2: ("specialized reproduction", criterion_2, None),
    3: ("Hensel identity and root condition", criterion_3, 60),
    4: ("co-action group law and invariants", criterion_4, 30),
    5: ("base cocycle affine", criterion_5, None),
    6: ("generic/specialized consistency", criterion_6, None),
    7: ("Groebner kernel oracles", criterion_7, None),
    8: ("CLI golden files", criterion_8, None),
}


def evaluate(number: int) -> tuple[bool, str]:
    name, fn, budget = CRITERIA[number]
    t0 = time.perf_counter()
    with contextlib.redirect_stdout(io.StringIO()):  # the check command prints its own report
        ok, detail = fn()
    seconds = time.perf_counter() - t0
    if budget is not None and seconds >= budget:
        ok, detail = False, f"{detail}; took {seconds:.1f}s, budget {budget}s"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({name}): {detail} [{seconds:.2f}s]"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    with capsys.disabled():
        ok, line = evaluate(number)
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for number in sorted(CRITERIA):
        ok, line = evaluate(number)
        print(line, flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
