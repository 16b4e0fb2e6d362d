from types import SimpleNamespace

import pytest

from modcoh.algebra import Idempotent, regular_module
from modcoh.groups import rank_idempotent, specht_modules, symmetric_group_algebra
from modcoh.modcat import tensor_action
from modcoh.monoidal import MonoidalContext, hopf_from_group
from modcoh.stages import build_staged
from modcoh.transport import induced_module_functors
from modcoh.truncation import build_truncation_equivalence, corner_bimodule_structure

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE = {}


def group_setup(n):
    alg = symmetric_group_algebra(n)
    ctx = MonoidalContext(hopf_from_group(alg.group_table, algebra=alg))
    return alg, ctx, specht_modules(alg)


@pytest.fixture(scope="session")
def s3():
    alg, ctx, simples = group_setup(3)
    e = Idempotent(alg, rank_idempotent(alg, simples, (1, 1, 1)), name="e")
    td = build_truncation_equivalence(alg, e, ctx, simples)
    corners = [td.F_obj(m).renamed("N_" + m.name) for m in simples]
    src = tensor_action(ctx)
    st = corner_bimodule_structure(td)
    F, G = induced_module_functors(src, st, td.eq)
    return SimpleNamespace(
        alg=alg, ctx=ctx, simples=simples, triv=simples[0], sgn=simples[1], V=simples[2],
        e=e, td=td, corners=corners, src=src, st=st, F=F, G=G, regular=regular_module(alg),
    )


@pytest.fixture(scope="session")
def s4():
    alg, ctx, simples = group_setup(4)
    e1 = Idempotent(alg, rank_idempotent(alg, simples, (1, 1, 1, 2, 2)), name="e1")
    e2 = Idempotent(alg, rank_idempotent(alg, simples, (1, 1, 1, 1, 1)), name="e2")
    sd = build_staged(alg, e1, e2, ctx)
    return SimpleNamespace(alg=alg, ctx=ctx, simples=simples, e1=e1, e2=e2, sd=sd)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
