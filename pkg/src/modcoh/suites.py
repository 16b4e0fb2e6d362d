"""Named verification suites run by the command line front end.

Each suite takes a parsed fixture, a seed and a sample count and returns a
list of ``DiagramReport``.  Suites are deterministic for a given fixture and
seed.
"""
from __future__ import annotations

import random
from itertools import product

from .algebra import (
    ModuleMorphism,
    balanced_tensor,
    corner_module,
    hom_basis,
    is_full_idempotent,
    regular_module,
    tensor_relations,
    validate_algebra,
    validate_module,
)
from .fixtures import FixtureError, FixtureSpec
from .linalg import Mat, rank, solve, NoSolution
from .modcat import (
    DiagramReport,
    check_bimodule_axioms,
    check_bimodule_functor,
    check_module_functor,
    check_naturality,
    check_pentagon,
    check_right_pentagon,
    compose_module_functors,
    identity_functor,
    sample_morphisms,
    sample_tuples,
    tensor_action,
)
from .monoidal import diagonal_operator, nilpotency_index, nilpotent_expansion_check
from .stages import build_staged, check_stage_factorization, staged_equivalence_functors
from .transport import (
    EquivalenceDatum,
    compose_equivalences,
    identity_equivalence,
    induced_module_functors,
    perturb_counit,
    transport_bimodule,
    transport_left,
)
from .truncation import FullnessFailure, TruncationDatum, build_truncation_equivalence

__all__ = ["SUITES", "run_suite", "list_suites"]


def _ok(diagram, label, passed) -> DiagramReport:
    return DiagramReport(diagram, tuple(label), bool(passed))


def _need_ctx(spec: FixtureSpec, suite: str):
    if spec.ctx is None:
        raise FixtureError(f"suites.{suite}", "needs a group (monoidal structure)")
    return spec.ctx


def _need(spec_part: dict, suite: str, key: str):
    if not spec_part:
        raise FixtureError(f"suites.{suite}", f"needs a '{key}' section")
    return spec_part


# -- algebra ----------------------------------------------------------------

def suite_algebra(spec: FixtureSpec, seed: int, samples: int) -> list:
    a = spec.algebra
    out = [_ok("algebra_valid", (a.name,), not validate_algebra(a))]
    mods = list(spec.modules.values())
    for m in mods:
        out.append(_ok("module_valid", (m.name,), not validate_module(m, exhaustive=True)))
        ident = Mat.identity(a.field, m.dim * m.dim)
        basis = hom_basis(m, m)
        cols = [tuple(x for row in g.mat.data for x in row) for g in basis]
        target = Mat.column(a.field, tuple(x for row in m.identity().mat.data for x in row))
        try:
            solve(Mat.from_columns(a.field, cols, rows=ident.rows), target)
            has_id = True
        except NoSolution:
            has_id = False
        out.append(_ok("hom_contains_identity", (m.name,), has_id and all(g.is_intertwiner() for g in basis)))
    for e in spec.idempotents.values():
        full, span = is_full_idempotent(e)
        out.append(_ok("fullness_span", (e.name, f"full={full}", f"span={span}"), full == (span == a.dim)))
        p = e.ideal
        out.append(_ok("bimodule_valid", (e.name,), not p.validate()))
        for m in mods:
            cm = corner_module(e, m)
            out.append(_ok("corner_dim", (e.name, m.name), cm.module.dim == rank(m.rho(e.coords))))
            out.append(_ok("corner_module_valid", (e.name, m.name), not validate_module(cm.module)))
            tq = balanced_tensor(p, cm.module)
            rel = tensor_relations(p, cm.module)
            dim_ok = tq.module.dim == p.dim * cm.module.dim - rank(rel)
            kills = (tq.surjection @ rel).is_zero()
            equivariant = all(
                tq.surjection @ p.left[g].kron(Mat.identity(a.field, cm.module.dim))
                == tq.module.action[g] @ tq.surjection
                for g in a.generators
            )
            out.append(_ok("balanced_tensor", (e.name, m.name), dim_ok and kills and equivariant
                           and not validate_module(tq.module)))
            if full:
                eps = TruncationDatum(a, e).eps(m)
                out.append(_ok("multiplication_iso", (e.name, m.name), eps.is_iso() and eps.is_intertwiner()))
    return out


# -- monoidal ---------------------------------------------------------------

def suite_monoidal(spec: FixtureSpec, seed: int, samples: int) -> list:
    ctx = _need_ctx(spec, "monoidal")
    out = [_ok("hopf_valid", (spec.algebra.name,), not ctx.hopf.validate())]
    objs = spec.module_list()
    unit = ctx.unit_object
    for x in objs:
        out.append(_ok("unit_strict", (x.name,), ctx.tensor(unit, x).action == x.action
                       and ctx.tensor(x, unit).action == x.action))
    for x, y, z in sample_tuples([objs] * 3, samples, seed):
        lhs = ctx.tensor(ctx.tensor(x, y), z)
        rhs = ctx.tensor(x, ctx.tensor(y, z))
        out.append(_ok("associator_strict", (x.name, y.name, z.name), lhs.action == rhs.action))
    rng = random.Random(seed)
    for _ in range(max(1, samples // 4)):
        x, y = rng.choice(objs), rng.choice(objs)
        f1, f2 = sample_morphisms(x, x, 2, rng.randrange(1 << 30))
        g1, g2 = sample_morphisms(y, y, 2, rng.randrange(1 << 30))
        lhs = ctx.tensor_mor(f1, g1) @ ctx.tensor_mor(f2, g2)
        rhs = ctx.tensor_mor(f1 @ f2, g1 @ g2)
        out.append(_ok("bifunctor", (x.name, y.name), lhs.mat == rhs.mat and lhs.is_intertwiner()))
    return out


# -- nilpotency -------------------------------------------------------------

def random_nilpotent(field, dim: int, rng: random.Random) -> Mat:
    """A strictly upper triangular matrix conjugated by a unipotent lower
    triangular one."""
    z = field.zero
    n = Mat(field, [[field(rng.randint(-2, 2)) if j > i else z for j in range(dim)] for i in range(dim)], cols=dim)
    low = Mat(field, [[field.one if i == j else (field(rng.randint(-1, 1)) if i > j else z) for j in range(dim)]
                      for i in range(dim)], cols=dim)
    return low @ n @ low.inverse()


def suite_nilpotency(spec: FixtureSpec, seed: int, samples: int) -> list:
    f = spec.field
    cfg = spec.nilpotency
    pairs = cfg.get("pairs", max(samples, 1))
    maxdim = cfg.get("max_dim", 6)
    rng = random.Random(seed)
    out = []
    for t in range(pairs):
        dx, dz = rng.randint(1, maxdim), rng.randint(1, maxdim)
        yx, yz = random_nilpotent(f, dx, rng), random_nilpotent(f, dz, rng)
        psi = f(rng.randint(-3, 3))
        p, q = nilpotency_index(yx), nilpotency_index(yz)
        bound = p + q - 1 if p and q else 0
        probes = []
        for _ in range(2):
            x = tuple(f(rng.randint(-3, 3)) for _ in range(dx))
            z = tuple(f(rng.randint(-3, 3)) for _ in range(dz))
            probes.append((x, z))
        probes.append([(f(rng.randint(-3, 3)),) + pr for pr in probes])
        ok = all(nilpotent_expansion_check(yx, yz, psi, k, probes) for k in range(bound + 1))
        out.append(_ok("expansion", (f"pair{t}", f"{dx}x{dz}", f"k<={bound}"), ok))
        r = nilpotency_index(diagonal_operator(yx, yz))
        out.append(_ok("index_bound", (f"pair{t}", f"p={p}", f"q={q}", f"r={r}"), r is not None and r <= max(bound, 1)))
    return out


# -- modcat -----------------------------------------------------------------

def suite_modcat(spec: FixtureSpec, seed: int, samples: int) -> list:
    ctx = _need_ctx(spec, "modcat")
    st = tensor_action(ctx)
    objs = spec.module_list()
    out = []
    for x, y, z, m in sample_tuples([objs] * 4, samples, seed):
        out.append(check_pentagon(st, x, y, z, m))
        out.append(check_right_pentagon(st, m, x, y, z))
    for x, y, m, w, z in sample_tuples([objs] * 5, samples, seed + 1):
        out.extend(check_bimodule_axioms(st, x, y, m, w, z))
    ident = identity_functor(st)
    for x, y, m in sample_tuples([objs] * 3, samples, seed + 2):
        out.extend(check_module_functor(ident, x, y, m))
        out.extend(check_module_functor(ident, x, y, m, side="right"))
        out.append(check_bimodule_functor(ident, x, m, y))
    for g in _sampled_morphisms(objs, samples, seed + 3):
        out.append(check_naturality(lambda mod: mod.identity(), g, lambda h: h, diagram="identity_natural",
                                    label=(g.source.name, g.target.name)))
    return out


def _sampled_morphisms(objs, count, seed) -> list:
    rng = random.Random(seed)
    out = []
    pairs = [(a, b) for a in objs for b in objs]
    for _ in range(count):
        a, b = rng.choice(pairs)
        out += sample_morphisms(a, b, 1, rng.randrange(1 << 30))
    return out


# -- truncation-based suites ------------------------------------------------

def _truncation(spec: FixtureSpec, suite: str) -> TruncationDatum:
    cfg = _need(spec.truncation, suite, "truncation")
    e = spec.idempotents[cfg["idempotent"]]
    return build_truncation_equivalence(spec.algebra, e, spec.ctx, spec.module_list(cfg.get("objects")))


def _corners(spec: FixtureSpec, td: TruncationDatum, cfg: dict) -> list:
    return [td.F_obj(m).renamed("N_" + m.name) for m in spec.module_list(cfg.get("corners", cfg.get("objects")))]


def suite_transport(spec: FixtureSpec, seed: int, samples: int) -> list:
    ctx = _need_ctx(spec, "transport")
    cfg = spec.truncation
    td = _truncation(spec, "transport")
    eq = perturb_counit(td.eq) if "counit" in spec.mutations else td.eq
    src = tensor_action(ctx)
    st = transport_bimodule(src, eq, name="N")
    objs = spec.module_list(cfg.get("objects"))
    corners = _corners(spec, td, cfg)
    out = []
    for x, y, z, n in product(objs, objs, objs, corners):
        out.append(check_pentagon(st, x, y, z, n))
    for x, y, z, n in product(objs, objs, objs, corners):
        out.append(check_right_pentagon(st, n, x, y, z))
    for x, y, n, w, z in sample_tuples([objs, objs, corners, objs, objs], samples, seed):
        out.extend(check_bimodule_axioms(st, x, y, n, w, z))
    fdat, gdat = induced_module_functors(src, st, eq)
    for x, y in product(objs, objs):
        for m in objs:
            out.extend(check_module_functor(fdat, x, y, m))
            out.extend(check_module_functor(fdat, x, y, m, side="right"))
        for n in corners:
            out.extend(check_module_functor(gdat, x, y, n))
            out.extend(check_module_functor(gdat, x, y, n, side="right"))
    for x, m, y in sample_tuples([objs, objs, objs], samples, seed + 1):
        out.append(check_bimodule_functor(fdat, x, m, y))
    for x, n, y in sample_tuples([objs, corners, objs], samples, seed + 2):
        out.append(check_bimodule_functor(gdat, x, n, y))
    gf = compose_module_functors(fdat, gdat, name="GF")
    fg = compose_module_functors(gdat, fdat, name="FG")
    for x, y, m in sample_tuples([objs, objs, objs], samples, seed + 3):
        out.extend(check_module_functor(gf, x, y, m))
    for x, y, n in sample_tuples([objs, objs, corners], samples, seed + 4):
        out.extend(check_module_functor(fg, x, y, n))
    # transport along the identity equivalence reproduces the structure
    ident = transport_bimodule(src, identity_equivalence())
    for x, y, m in sample_tuples([objs] * 3, max(1, samples // 4), seed + 5):
        same = (ident.m(x, y, m).mat == src.m(x, y, m).mat and ident.mr(m, x, y).mat == src.mr(m, x, y).mat
                and ident.b(x, m, y).mat == src.b(x, m, y).mat)
        out.append(_ok("identity_transport", (x.name, y.name, m.name), same))
    out.extend(eta_independence(src, eq, objs, corners, samples, seed + 6))
    return out


def eta_independence(src, eq: EquivalenceDatum, objs, corners, samples, seed) -> list:
    """Transport again with ``eta`` replaced by ``2 eta`` (another natural
    isomorphism ``F G => id``) and compare every constraint matrix."""
    def eta2(n):
        e = eq.eta(n)
        f = e.mat.field
        return ModuleMorphism(e.source, e.target, e.mat.scale(f(2)), check=False)

    alt = EquivalenceDatum(eq.F_obj, eq.F_mor, eq.G_obj, eq.G_mor, eq.eps, eta2, name=eq.name + "'")
    a = transport_bimodule(src, eq)
    b = transport_bimodule(src, alt)
    out = []
    for x, y, n in sample_tuples([objs, objs, corners], samples, seed):
        same = (a.m(x, y, n).mat == b.m(x, y, n).mat and a.mr(n, x, y).mat == b.mr(n, x, y).mat
                and a.b(x, n, y).mat == b.b(x, n, y).mat)
        out.append(_ok("eta_independence", (x.name, y.name, n.name), same))
    return out


def suite_truncation(spec: FixtureSpec, seed: int, samples: int) -> list:
    cfg = _need(spec.truncation, "truncation", "truncation")
    e = spec.idempotents[cfg["idempotent"]]
    full, span = is_full_idempotent(e)
    try:
        td = build_truncation_equivalence(spec.algebra, e, spec.ctx, spec.module_list(cfg.get("objects")))
        built = True
    except FullnessFailure:
        built = False
        if full:
            raise
    out = [_ok("fullness_criterion", (e.name, f"span={span}"), built == full)]
    if not built:
        raise FullnessFailure(f"{e.name} is not full (span {span})", span)
    objs = spec.module_list(cfg.get("objects"))
    corners = _corners(spec, td, cfg)
    mods = objs + [regular_module(spec.algebra)]
    for m in mods:
        ep = td.eps(m)
        out.append(_ok("eps_iso", (m.name,), ep.is_iso() and ep.is_intertwiner()))
        out.append(_ok("eps_plain_tensor", (m.name,), td.eps_via_plain_tensor(m) == ep.mat))
    for n in corners:
        et = td.eta(n)
        out.append(_ok("eta_iso", (n.name,), et.is_iso() and et.is_intertwiner()))
        out.append(_ok("eta_inverse_direct", (n.name,), (et @ td.eta_inverse_direct(n)).mat.is_identity()))
    for g in _sampled_morphisms(objs, samples, seed):
        out.append(check_naturality(td.eps, g, lambda h: td.G_mor(td.F_mor(h)), diagram="eps_natural",
                                    label=(g.source.name, g.target.name)))
    for g in _sampled_morphisms(corners, samples, seed + 1):
        out.append(check_naturality(td.eta, g, lambda h: td.F_mor(td.G_mor(h)), diagram="eta_natural",
                                    label=(g.source.name, g.target.name)))
    if spec.ctx is not None:
        from .truncation import translate_left, translate_right

        for x, n in product(objs, corners):
            left = translate_left(td, x, n)
            inner = spec.ctx.tensor(x, td.G_obj(n))
            two_ways = left.dim == rank(inner.rho(e.coords))
            out.append(_ok("translation_dim", (x.name, n.name, f"dim={left.dim}"), two_ways))
            right = translate_right(td, n, x)
            out.append(_ok("translation_sides", (x.name, n.name), right.dim == left.dim))
        unit = spec.ctx.unit_object
        for n in corners:
            cmp = td.eta(n)
            ok = translate_left(td, unit, n) == cmp.source and cmp.is_iso()
            out.append(_ok("unit_translation", (n.name,), ok))
    return out


def suite_stages(spec: FixtureSpec, seed: int, samples: int) -> list:
    ctx = _need_ctx(spec, "stages")
    cfg = _need(spec.stages, "stages", "stages")
    e1, e2 = spec.idempotents[cfg["e1"]], spec.idempotents[cfg["e2"]]
    sd = build_staged(spec.algebra, e1, e2, ctx)
    out = [_ok("theta_algebra_iso", (e1.name, e2.name), sd.theta_is_algebra_map())]
    mods = [regular_module(spec.algebra)] + spec.module_list(cfg.get("modules"))
    for m in mods:
        out.append(check_stage_factorization(sd, m))
    objs = spec.module_list(cfg.get("objects"))
    corner_src = spec.module_list(cfg.get("corners", cfg.get("objects")))
    n1s = [sd.td1.F_obj(m).renamed("N1_" + m.name) for m in corner_src]
    n2s = [sd.td2.F_obj(m).renamed("N2_" + m.name) for m in corner_src]
    morphs = _sampled_morphisms(objs, max(1, samples // 10), seed)
    _, reports = staged_equivalence_functors(sd, objs, n1s, n2s, morphs)
    out.extend(reports)
    # transporting twice equals transporting along the composite
    src = tensor_action(ctx)
    once = transport_left(src, compose_equivalences(sd.td1.eq, sd.td0.eq))
    twice = transport_left(transport_left(src, sd.td1.eq), sd.td0.eq)
    n0s = [sd.td0.F_obj(n).renamed("N0_" + n.name[3:]) for n in n1s]
    for x, y, n in sample_tuples([objs, objs, n0s], max(1, samples // 10), seed + 1):
        same = once.act(x, n) == twice.act(x, n) and once.m(x, y, n).mat == twice.m(x, y, n).mat
        out.append(_ok("transport_composition", (x.name, y.name, n.name), same))
    return out


SUITES = {
    "algebra": ("structure constants, modules, corners and balanced tensors", suite_algebra),
    "monoidal": ("Hopf data, strict associator and unit, tensor bifunctoriality", suite_monoidal),
    "nilpotency": ("binomial expansion on tensors and nilpotency index bound", suite_nilpotency),
    "modcat": ("coherence of the tensor action of modules on themselves", suite_modcat),
    "transport": ("structure transported along the truncation equivalence", suite_transport),
    "truncation": ("corner equivalence, unit and counit, translation functors", suite_truncation),
    "stages": ("factorization and stage functors for nested idempotents", suite_stages),
}


def list_suites(names=None) -> list:
    """``(name, description)`` pairs, restricted to ``names`` if given."""
    if names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise KeyError(unknown[0])
        return [(n, SUITES[n][0]) for n in SUITES if n in names]
    return [(n, d) for n, (d, _) in SUITES.items()]


def run_suite(name: str, spec: FixtureSpec, seed: int, samples: int) -> list:
    """Run one suite.  An exception named in the fixture's ``expect_failure``
    for this suite becomes a single passing ``expected_failure`` report; the
    absence of the expected exception is a failure."""
    expected = spec.expect_failure.get(name)
    fn = SUITES[name][1]
    try:
        reports = fn(spec, seed, samples)
    except FixtureError:
        raise
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        kind = type(exc).__name__
        if expected == kind:
            return [_ok("expected_failure", (kind,), True)]
        return [DiagramReport("error", (kind, str(exc).replace(" ", "_")[:80]), False)]
    if expected:
        return reports + [_ok("expected_failure", (expected, "not_raised"), False)]
    return reports
