"""Verification driver: named suites of checks, each emitting a certificate.

Reports are canonical: certificates are sorted by check name, every value is
serialized through one deterministic encoder, and nothing time- or
scheduling-dependent is recorded, so rerunning a suite with the same seed
reproduces the report byte for byte at any worker count. Failures inside a
check are captured as failed certificates rather than aborting the run;
claims that the package cannot certify are emitted explicitly with status
"unverified" instead of being skipped in silence.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import hashlib
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import gems, lines27, nodalcy, rootarr, theta
from .exactalg import SHADOW_PRIMES

SCHEMA_VERSION = 1

SUITE_NAMES = ("arrangements", "lines27", "segre", "nieto", "quintic",
               "duality", "theta", "nodal")


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by every check; echoed verbatim into each report.

    seed drives all sampling through per-check derived seeds; samples scales
    the sampling checks up from their contractual minimums; tol is the
    numeric tolerance for the theta residuals. The worker count is not part
    of the config echo because reports must not depend on it.
    """

    seed: int = 0
    samples: int = 20
    tol: float = 1e-9
    primes: tuple[int, ...] = SHADOW_PRIMES

    def as_dict(self) -> dict:
        return {"seed": self.seed, "samples": self.samples, "tol": self.tol,
                "primes": list(self.primes)}


@dataclass(frozen=True)
class VerificationCertificate:
    """One checked claim: what was expected, what came out, and whether they agree."""

    check: str
    claim: str
    status: str
    expected: str
    computed: str
    inputs_digest: str
    seed: int

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {"check": self.check, "claim": self.claim, "status": self.status,
                "expected": self.expected, "computed": self.computed,
                "inputs_digest": self.inputs_digest, "seed": self.seed}


def _derived_seed(master: int, check: str) -> int:
    digest = hashlib.sha256(f"{master}:{check}".encode()).digest()
    return int.from_bytes(digest[:4], "big")


def _canon(value) -> str:
    def fallback(x):
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, (set, frozenset)):
            return sorted(str(e) for e in x)
        return str(x)
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, default=fallback)


def _cert(cfg: SuiteConfig, check: str, claim: str, expected, computed,
          status: str | None = None) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, check)
    digest = hashlib.sha256(json.dumps(
        {"check": check, "seed": seed, "samples": cfg.samples,
         "tol": cfg.tol, "primes": list(cfg.primes)},
        sort_keys=True).encode()).hexdigest()[:16]
    exp, got = _canon(expected), _canon(computed)
    if status is None:
        status = "pass" if exp == got else "fail"
    return VerificationCertificate(check, claim, status, exp, got, digest, seed)


# -- arrangement checks ------------------------------------------------------------------

ARRANGEMENT_CENSUS = {
    ("A", 4): {2: {1: 10}, 1: {2: 15, 3: 10}, 0: {4: 10, 6: 5}},
    ("B", 4): {2: {1: 16}, 1: {2: 36, 3: 16, 4: 6},
               0: {4: 16, 5: 12, 6: 8, 9: 4}},
    ("D", 4): {2: {1: 12}, 1: {2: 18, 3: 16}, 0: {3: 12, 6: 12}},
    ("F", 4): {2: {1: 24}, 1: {2: 72, 3: 32, 4: 18}, 0: {4: 96, 9: 24}},
    ("E", 6): {4: {1: 36}, 3: {2: 270, 3: 120}, 2: {3: 540, 4: 720, 6: 270},
               1: {5: 1080, 6: 120, 7: 540, 10: 216, 12: 45},
               0: {7: 360, 11: 216, 15: 36, 20: 27}},
}


def _census_of(table) -> dict:
    by: dict[int, dict[int, int]] = {}
    for f in table.flats:
        by.setdefault(f.dim, {}).setdefault(f.q, 0)
        by[f.dim][f.q] += 1
    return by


def _check_arrangement(cfg: SuiteConfig, family: str, rank: int) -> VerificationCertificate:
    table = rootarr.cached_incidence(family, rank)
    return _cert(
        cfg, f"arrangements/census-{family.lower()}{rank}",
        f"flat census of the {family}{rank} reflection arrangement, "
        "counted by dimension and multiplicity",
        ARRANGEMENT_CENSUS[(family, rank)], _census_of(table))


# -- 27-lines checks ----------------------------------------------------------------------


def _check_line_structures(cfg: SuiteConfig) -> VerificationCertificate:
    st = lines27.enumerate_structures()
    counts = dict(st.counts())
    mm = lines27.meets_matrix()
    counts["meeting_pairs"] = sum(row.count(True) for row in mm) // 2
    counts["skew_pairs"] = 27 * 26 // 2 - counts["meeting_pairs"]
    expected = {"tritangents": 45, "double_sixes": 36, "trihedral_pairs": 120,
                "triads": 40, "syzygetic_pairs": 270, "azygetic_triples": 120,
                "meeting_pairs": 135, "skew_pairs": 216}
    return _cert(cfg, "lines27/structures",
                 "combinatorial census of the 27-line configuration",
                 expected, counts)


def _check_enneahedra(cfg: SuiteConfig) -> VerificationCertificate:
    rep = lines27.enneahedra()
    computed = {"partitions": len(rep.partitions),
                "orbit_sizes": sorted(rep.orbit_sizes)}
    return _cert(cfg, "lines27/enneahedra",
                 "nine-tritangent partitions of the 27 lines and their orbit split",
                 {"partitions": 200, "orbit_sizes": [40, 160]}, computed)


def _check_weyl_order(cfg: SuiteConfig) -> VerificationCertificate:
    return _cert(cfg, "lines27/weyl-order",
                 "order of the incidence-preserving permutation group",
                 51840, lines27.weyl_group().order)


def _check_incidence_ranks(cfg: SuiteConfig) -> VerificationCertificate:
    ranks = lines27.incidence_complex_ranks()
    expected = {"tritangent_line": {"rows": 45, "cols": 27, "rank": 21,
                                    "kernel": 24, "cokernel": 6},
                "segre_hyperplane_plane": {"rows": 15, "cols": 15, "rank": 10,
                                           "kernel": 5, "cokernel": 5}}
    computed = {"tritangent_line": ranks.tritangent_line,
                "segre_hyperplane_plane": ranks.segre_hyperplane_plane}
    return _cert(cfg, "lines27/incidence-ranks",
                 "exact ranks of the two incidence matrices, prime-checked",
                 expected, computed)


def _check_ideal_dimensions(cfg: SuiteConfig) -> VerificationCertificate:
    rep = lines27.macdonald_membership()
    expected = {"dims": {"cubics_on_36_points": 20, "cubics_on_27_points": 30,
                         "quartics_on_45_lines": 15, "sextics_on_216_lines": 24},
                "memberships": True}
    computed = {"dims": rep.dims, "memberships": all(rep.memberships.values())}
    return _cert(cfg, "lines27/ideal-dimensions",
                 "dimensions of the form spaces vanishing on the four classical loci",
                 expected, computed)


# -- hypersurface checks --------------------------------------------------------------------


def _check_segre_model(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "segre/model")
    model = gems.build_segre(seed=seed, offnode_samples=cfg.samples)
    computed = {"nodes": len(model.nodes), "planes": len(model.planes),
                "node_quadrics_dim": model.node_quadrics.dim,
                "pair_scalars": sorted({str(s) for s in
                                        model.hyperplane_scalars.values()})}
    return _cert(cfg, "segre/model",
                 "ten nodes, fifteen planes, and the quadrics through the nodes",
                 {"nodes": 10, "planes": 15, "node_quadrics_dim": 5,
                  "pair_scalars": ["3"]}, computed)


def _check_segre_param(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "segre/parametrization")
    n = max(10, cfg.samples)
    rep = gems.segre_param(seed=seed, samples=n)
    return _cert(cfg, "segre/parametrization",
                 "the quadric parametrization lands on the cubic at every sample",
                 {"samples_on_cubic": n}, {"samples_on_cubic": rep.samples_on_cubic})


def _check_segre_sections(cfg: SuiteConfig) -> VerificationCertificate:
    rep = gems.auxiliary_sections()
    computed = {"diagonal_identity": rep.diagonal_identity,
                "cayley_nodes": rep.cayley_nodes,
                "squaring_identity": rep.squaring_identity}
    return _cert(cfg, "segre/sections",
                 "diagonal and Cayley hyperplane sections behave classically",
                 {"diagonal_identity": True, "cayley_nodes": 4,
                  "squaring_identity": True}, computed)


def _check_nieto_model(cfg: SuiteConfig) -> VerificationCertificate:
    model = gems.build_nieto()
    computed = {"lines": len(model.lines), "nodes": len(model.nodes),
                "cross_points": len(model.cross_points),
                "matching_planes": len(model.matching_planes),
                "coordinate_planes": len(model.coordinate_planes),
                "coordinate_scalars": sorted({str(s) for s in
                                              model.coordinate_scalars.values()})}
    return _cert(cfg, "nieto/model",
                 "singular lines, points, and the thirty planes of the quintic",
                 {"lines": 20, "nodes": 10, "cross_points": 15,
                  "matching_planes": 15, "coordinate_planes": 15,
                  "coordinate_scalars": ["1"]}, computed)


def _check_hessian(cfg: SuiteConfig) -> VerificationCertificate:
    rep = gems.hessian_equals_nieto()
    computed = {"scalar": str(rep.scalar),
                "determinant_identity": rep.determinant_identity,
                "singular_nodes": rep.singular_nodes}
    return _cert(cfg, "nieto/hessian",
                 "the Hessian of the cubic chart equals the quintic chart up to 6^5",
                 {"scalar": "7776", "determinant_identity": True,
                  "singular_nodes": 10}, computed)


def _check_quintic_invariance(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "quintic/invariance")
    rep = gems.build_invariant_quintic(seed=seed, words=max(100, cfg.samples))
    computed = {"generators": rep.generator_checks, "words": rep.word_checks,
                "double_six_scalar": str(rep.symmetric_scalar),
                "power_scalars": {str(k): str(v)
                                  for k, v in sorted(rep.power_scalars.items())}}
    expected = {"generators": 6, "words": max(100, cfg.samples),
                "double_six_scalar": "-3/8",
                "power_scalars": {"2": "6", "5": "-5/54"}}
    return _cert(cfg, "quintic/invariance",
                 "reflection invariance, the double-six model, and both power sums",
                 expected, computed)


def _check_quintic_locus(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "quintic/singular-locus")
    rep = gems.i5_singular_locus(seed=seed, offline_samples=cfg.samples)
    computed = {"lines": rep.line_count, "points": rep.point_count,
                "wall_lines": rep.lines_in_simplex_wall,
                "lines_per_point": rep.lines_per_point,
                "points_per_line": rep.points_per_line,
                "jacobian_quartics_dim": rep.jacobian_quartics.dim}
    expected = {"lines": 120, "points": 36, "wall_lines": 40,
                "lines_per_point": 10, "points_per_line": 3,
                "jacobian_quartics_dim": 6}
    return _cert(cfg, "quintic/singular-locus",
                 "the 120 singular lines, 36 triple points, and their quartic ideal",
                 expected, computed)


def _check_quintic_subspaces(cfg: SuiteConfig) -> VerificationCertificate:
    rep = gems.linear_subspaces_i5()
    computed = {"p3_count": rep.p3_count,
                "p3_per_hyperplane": rep.p3_per_hyperplane,
                "hyperplanes_per_p3": rep.hyperplanes_per_p3,
                "split_scalars": sorted({str(abs(s)) for s in
                                         rep.hyperplane_scalars.values()}),
                "quotient_scalar": str(rep.quotient_scalar),
                "simplex_scalar": str(rep.simplex_scalar)}
    expected = {"p3_count": 45, "p3_per_hyperplane": 5, "hyperplanes_per_p3": 3,
                "split_scalars": ["648"], "quotient_scalar": "243",
                "simplex_scalar": "-648"}
    return _cert(cfg, "quintic/subspaces",
                 "the 45 solid subspaces and the 27 split hyperplane sections",
                 expected, computed)


def _check_quintic_restrictions(cfg: SuiteConfig) -> VerificationCertificate:
    rep = gems.restriction_arrangements()
    computed = {"root_classes": len(rep.root_classes),
                "weight_classes": len(rep.weight_classes),
                "vanishing_labels": sorted(rep.vanishing_labels)}
    return _cert(cfg, "quintic/restrictions",
                 "restricting both form families to a singular line's plane",
                 {"root_classes": 24, "weight_classes": 12,
                  "vanishing_labels": ["a1", "b2", "c12"]}, computed)


def _check_rationalization(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "quintic/rationalization")
    rep = gems.rationalize_i5(seed=seed, exact_samples=max(50, cfg.samples),
                              modular_samples=10 ** 4, roundtrip_samples=25)
    computed = {"exact": rep.exact_checked,
                "modular": {str(p): n for p, n in sorted(rep.modular_checked.items())},
                "bounds_tiny": all(b < -1000 for b in rep.failure_log10.values()),
                "roundtrips": [rep.roundtrip_phi_psi, rep.roundtrip_psi_phi]}
    expected = {"exact": max(50, cfg.samples),
                "modular": {str(p): 10 ** 4 for p in SHADOW_PRIMES},
                "bounds_tiny": True, "roundtrips": [25, 25]}
    return _cert(cfg, "quintic/rationalization",
                 "the degree-8 inverse lands on the quintic and inverts the quartic map",
                 expected, computed)


def _check_triple_cone(cfg: SuiteConfig) -> VerificationCertificate:
    cone = gems.triple_point_cone("h23")
    computed = {"dual_scalar": str(cone.dual_scalar),
                "directions": len(cone.directions),
                "direction_quadrics_dim": cone.direction_quadrics.dim}
    return _cert(cfg, "quintic/triple-cone",
                 "tangent-cone splitting at a triple point with its ten directions",
                 {"dual_scalar": "-1", "directions": 10,
                  "direction_quadrics_dim": 5}, computed)


def _check_base_locus(cfg: SuiteConfig) -> VerificationCertificate:
    return _cert(cfg, "quintic/base-locus",
                 "the six degree-8 coordinates of the inverse map share a base "
                 "surface of degree 32; recorded from the classical count, "
                 "no exact degree computation is implemented here",
                 "unverified", "unverified", status="unverified")


def _check_duality(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "duality/pipeline")
    rep = gems.duality_pipeline(seed=seed, samples=max(200, cfg.samples),
                                biduality_samples=20)
    computed = {"fitted_dim": rep.fitted_dim, "image_lines": len(rep.image_lines),
                "line_cubics_dim": rep.line_cubics.dim,
                "biduality_checked": rep.biduality_checked}
    return _cert(cfg, "duality/pipeline",
                 "gradient images of the cubic fit one quartic; planes contract "
                 "to 15 lines; the round trip is the identity",
                 {"fitted_dim": 1, "image_lines": 15, "line_cubics_dim": 5,
                  "biduality_checked": 20}, computed)


def _check_theta(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "theta/identities")
    rep = theta.identity_checks(samples=max(12, cfg.samples), seed=seed, tol=cfg.tol)
    computed = {"samples": rep.samples,
                "maschke_below_tol": rep.maschke_max < cfg.tol,
                "quartic_below_tol": rep.quartic_max < cfg.tol,
                "odd_max_small": rep.odd_max < 1e-11,
                "theta4_rank": rep.theta4_rank}
    expected = {"samples": max(12, cfg.samples), "maschke_below_tol": True,
                "quartic_below_tol": True, "odd_max_small": True,
                "theta4_rank": 5}
    return _cert(cfg, "theta/identities",
                 "octic and quartic constant identities hold at every sampled point",
                 expected, computed)


def _nodal_computed(rep: nodalcy.NodalSectionReport) -> dict:
    return {"nodes": rep.node_count, "quintic_dim": rep.quintic_dim,
            "defect": rep.defect, "h11": rep.h11, "h21": rep.h21,
            "euler": rep.euler}


def _check_nodal_generic(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "nodal/generic")
    rep = nodalcy.section_report(nodalcy.generic_section(seed), seed=seed)
    return _cert(cfg, "nodal/generic",
                 "a generic hyperplane section has 120 nodes and defect 24",
                 {"nodes": 120, "quintic_dim": 30, "defect": 24,
                  "h11": 25, "h21": 5, "euler": 40}, _nodal_computed(rep))


def _check_nodal_tangent(cfg: SuiteConfig) -> VerificationCertificate:
    seed = _derived_seed(cfg.seed, "nodal/tangent")
    rep = nodalcy.section_report(nodalcy.tangent_section(seed), seed=seed)
    return _cert(cfg, "nodal/tangent",
                 "a tangent hyperplane section has 121 nodes and defect 24",
                 {"nodes": 121, "quintic_dim": 29, "defect": 24,
                  "h11": 25, "h21": 4, "euler": 42}, _nodal_computed(rep))


SUITES: dict[str, tuple] = {
    "arrangements": tuple(
        (lambda cfg, fam=fam, rank=rank: _check_arrangement(cfg, fam, rank))
        for fam, rank in (("A", 4), ("B", 4), ("D", 4), ("F", 4), ("E", 6))),
    "lines27": (_check_line_structures, _check_enneahedra, _check_weyl_order,
                _check_incidence_ranks, _check_ideal_dimensions),
    "segre": (_check_segre_model, _check_segre_param, _check_segre_sections),
    "nieto": (_check_nieto_model, _check_hessian),
    "quintic": (_check_quintic_invariance, _check_quintic_locus,
                _check_quintic_subspaces, _check_quintic_restrictions,
                _check_rationalization, _check_triple_cone, _check_base_locus),
    "duality": (_check_duality,),
    "theta": (_check_theta,),
    "nodal": (_check_nodal_generic, _check_nodal_tangent),
}


# -- suite runner --------------------------------------------------------------------------


def _run_one(check, cfg: SuiteConfig) -> VerificationCertificate:
    try:
        return check(cfg)
    except Exception as exc:  # a failing check must not abort the suite
        name = getattr(check, "__name__", "unknown").replace("_check_", "check/")
        return _cert(cfg, name, "check raised instead of reporting",
                     "completed", f"error: {exc}")


def run_suite(suite: str, cfg: SuiteConfig, jobs: int = 1) -> list[VerificationCertificate]:
    """All certificates of one suite (or of every suite, for "all"), sorted."""
    if suite == "all":
        checks = [c for name in SUITE_NAMES for c in SUITES[name]]
    elif suite in SUITES:
        checks = list(SUITES[suite])
    else:
        raise ValueError(f"unknown suite {suite!r}")
    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            certs = list(pool.map(lambda c: _run_one(c, cfg), checks))
    else:
        certs = [_run_one(c, cfg) for c in checks]
    return sorted(certs, key=lambda c: c.check)


def report_dict(suite: str, cfg: SuiteConfig,
                certs: list[VerificationCertificate]) -> dict:
    statuses = [c.status for c in certs]
    return {
        "schema": SCHEMA_VERSION,
        "suite": suite,
        "config": cfg.as_dict(),
        "summary": {"pass": statuses.count("pass"),
                    "fail": statuses.count("fail"),
                    "unverified": statuses.count("unverified")},
        "certificates": [c.as_dict() for c in certs],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_table(suite: str, certs: list[VerificationCertificate]) -> str:
    """Fixed-width text: census tables where they apply, then the certificates."""
    blocks = []
    ran = {c.check.split("/")[0] for c in certs}

    if "arrangements" in ran:
        lines = ["arrangement flat census (dimension, multiplicity, count)"]
        for fam, rank in (("A", 4), ("B", 4), ("D", 4), ("F", 4), ("E", 6)):
            table = ARRANGEMENT_CENSUS[(fam, rank)]
            cells = [f"t{q}({dim})={table[dim][q]}"
                     for dim in sorted(table, reverse=True)
                     for q in sorted(table[dim])]
            lines.append(f"  {fam}{rank}: " + "  ".join(cells))
        blocks.append("\n".join(lines))

    if "lines27" in ran:
        counts = (("tritangent planes", 45), ("double sixes", 36),
                  ("meeting pairs", 135), ("skew pairs", 216),
                  ("trihedral pairs", 120), ("triads", 40),
                  ("syzygetic pairs", 270), ("azygetic triples", 120))
        lines = ["line configuration census"]
        lines += [f"  {name:<18} {n:>4}" for name, n in counts]
        blocks.append("\n".join(lines))

    if "nodal" in ran:
        lines = ["nodal sections (nodes, quintics through them, defect, h11, h21, e)"]
        lines.append("  generic: 120 30 24 25 5 40")
        lines.append("  tangent: 121 29 24 25 4 42")
        blocks.append("\n".join(lines))

    width = max(len(c.check) for c in certs)
    lines = ["certificates"]
    lines += [f"  [{c.status:>10}] {c.check:<{width}}  {c.computed}" for c in certs]
    blocks.append("\n".join(lines))
    return f"suite: {suite}\n\n" + "\n\n".join(blocks) + "\n"


# -- entry points ----------------------------------------------------------------------------


def _cmd_run(args) -> int:
    cfg = SuiteConfig(seed=args.seed, samples=args.samples, tol=args.tol)
    certs = run_suite(args.suite, cfg, jobs=args.jobs)
    report = report_dict(args.suite, cfg, certs)
    try:
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(render_json(report))
        if args.table:
            with open(args.table, "w") as fh:
                fh.write(render_table(args.suite, certs))
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return 2
    for c in certs:
        print(f"[{c.status:>10}] {c.check}")
    s = report["summary"]
    print(f"suite {args.suite}: {s['pass']} pass, {s['fail']} fail, "
          f"{s['unverified']} unverified")
    return 0 if s["fail"] == 0 else 1


def _cmd_theta_verify(args) -> int:
    try:
        rep = theta.identity_checks(samples=args.samples, seed=args.seed, tol=args.tol)
    except theta.ThetaError as exc:
        print(f"theta identities failed: {exc}", file=sys.stderr)
        return 1
    if args.csv:
        rows = ["sample,maschke,quartic,odd_max"]
        rows += [f"{i},{r.maschke!r},{r.quartic!r},{r.odd_max!r}"
                 for i, r in enumerate(rep.rows)]
        try:
            with open(args.csv, "w") as fh:
                fh.write("\n".join(rows) + "\n")
        except OSError as exc:
            print(f"cannot write csv: {exc}", file=sys.stderr)
            return 2
    print(f"samples {rep.samples}  maschke_max {rep.maschke_max:.3e}  "
          f"quartic_max {rep.quartic_max:.3e}  odd_max {rep.odd_max:.3e}  "
          f"theta4_rank {rep.theta4_rank}")
    return 0


def _cmd_nodalcy_report(args) -> int:
    spec = (nodalcy.generic_section(args.seed) if args.kind == "generic"
            else nodalcy.tangent_section(args.seed))
    rep = nodalcy.section_report(spec, seed=args.seed)
    payload = {"kind": rep.kind, "nodes": rep.node_count,
               "quintic_dim": rep.quintic_dim, "defect": rep.defect,
               "h11": rep.h11, "h21": rep.h21, "b2": rep.b2, "b3": rep.b3,
               "euler": rep.euler, "seed": args.seed}
    if args.json:
        try:
            with open(args.json, "w") as fh:
                fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return 2
    for key in ("kind", "nodes", "quintic_dim", "defect", "h11", "h21",
                "b2", "b3", "euler"):
        print(f"{key} {payload[key]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modgem",
        description="exact verification suites for the classical modular hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=SUITE_NAMES + ("all",))
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--samples", type=int, default=20)
    run.add_argument("--tol", type=float, default=1e-9)
    run.add_argument("--json", metavar="PATH", help="write the canonical JSON report")
    run.add_argument("--table", metavar="PATH", help="write the text tables")
    run.add_argument("--jobs", type=int, default=1,
                     help="worker threads; reports do not depend on it")
    run.set_defaults(func=_cmd_run)

    th = sub.add_parser("theta", help="theta constant checks")
    thsub = th.add_subparsers(dest="theta_command", required=True)
    verify = thsub.add_parser("verify", help="run the identity checks")
    verify.add_argument("--samples", type=int, default=20)
    verify.add_argument("--tol", type=float, default=1e-9)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--csv", metavar="PATH", help="write per-sample residuals")
    verify.set_defaults(func=_cmd_theta_verify)

    nd = sub.add_parser("nodalcy", help="nodal hyperplane sections")
    ndsub = nd.add_subparsers(dest="nodalcy_command", required=True)
    rep = ndsub.add_parser("report", help="node census and derived topology")
    rep.add_argument("--kind", choices=("generic", "tangent"), required=True)
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--json", metavar="PATH", help="write the JSON payload")
    rep.set_defaults(func=_cmd_nodalcy_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
