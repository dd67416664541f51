"""Seeded randomized verification suites covering the library's invariants.

Each suite returns {"name", "cases", "failures", "ok"}; `run_all` aggregates
them deterministically for a given seed.  Oracles here are intentionally
independent of the code paths they check (boxed brute force instead of coset
enumeration, halfspace scans instead of dual description, and so on).
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import charts, core, fan, lattice, linalg, monomial, polyhedra, strata, voronoi
from .errors import NotFoundBelowCap


def random_datum(rng: random.Random, gmax: int = 3):
    g = rng.randint(1, gmax)
    while True:
        m = [[rng.randint(-2, 2) for _ in range(g)] for _ in range(g)]
        if linalg.det(linalg.mat(m)) != 0:
            break
    b = linalg.matmul(linalg.transpose(linalg.mat(m)), linalg.mat(m))
    style = rng.randint(0, 3)
    if style == 0:
        y = linalg.identity(g)
    elif style == 1:
        y = [[0] * g for _ in range(g)]
        for i in range(g):
            y[i][i] = rng.choice([1, 1, 2])
            for j in range(i + 1, g):
                y[i][j] = rng.randint(0, 1)
        y = linalg.mat(y)
    elif style == 2 and g >= 1:
        k = rng.choice([2, 3])
        y = tuple(tuple(k if i == j else 0 for j in range(g)) for i in range(g))
        b = tuple(tuple(Fraction(x, k) for x in row) for row in b)
    else:
        y = linalg.identity(g)
    return core.validate_datum({"rank": g, "b": b, "y_basis": y})


def _rand_vec(rng, g, bound=4):
    return tuple(rng.randint(-bound, bound) for _ in range(g))


def suite_quadratic_identities(rng, n_data=12, n_samples=12) -> dict:
    failures = []
    cases = 0
    for _ in range(n_data):
        d = random_datum(rng)
        rep = monomial.valuation_identities(d, rng, n_samples)
        cases += rep["samples"]
        failures.extend(rep["failures"])
        rep2 = monomial.power_law_check(d, rng, max(4, n_samples // 2))
        cases += rep2["samples"]
        failures.extend(rep2["failures"])
        g = d.rank
        for _ in range(n_samples // 2):
            u = _rand_vec(rng, g)
            if core.beta(d, core.phi(d, u)) != tuple(
                d.n_index_value * x for x in u
            ):
                failures.append(("beta(phi(u)) = N u", u))
            cases += 1
    return {"name": "quadratic_identities", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_d_function(rng, n_data=10, n_samples=10) -> dict:
    failures = []
    cases = 0
    for _ in range(n_data):
        d = random_datum(rng)
        g = d.rank
        level = rng.choice([1, 2])
        lv = Fraction(level)
        cell = voronoi.voronoi_polytope(d, level)
        sigma = set(voronoi.sigma_points(d, level))
        for _ in range(n_samples):
            x = _rand_vec(rng, g, 6)
            dv = voronoi.d_value(d, level, x)
            cases += 1
            if dv < 0:
                failures.append(("D >= 0", x))
            if (dv == 0) != (tuple(x) in sigma):
                failures.append(("D zero set", x))
            cx = Fraction(core.c_value(d, lv, x))
            if dv > cx:
                failures.append(("D <= C", x))
            gamma, z = voronoi.cvp_decompose(d, level, x)
            if Fraction(dv) == cx and any(gamma):
                failures.append(("D = C iff gamma = 0", x))
            # covering: gamma in the cell, x = gamma + translation
            t = core.translation_vector(d, lv, z)
            if linalg.add(gamma, t) != tuple(x) or not cell.contains(gamma):
                failures.append(("covering decomposition", x))
    return {"name": "d_function_and_covering", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_cell_oracle(rng, n_data=8) -> dict:
    """Relevant-vector cell versus a brute-force halfspace intersection."""
    failures = []
    cases = 0
    for _ in range(n_data):
        d = random_datum(rng, gmax=3)
        g = d.rank
        level = rng.choice([1, 2])
        lv = Fraction(level)
        cell = voronoi.voronoi_polytope(d, level)
        rels = voronoi.relevant_vectors(d, level)
        radius = max(abs(int(u_i)) for u in rels for u_i in u) + 1
        rows = []
        for u in fan._box_vectors(g, range(-radius, radius + 1)):
            if not any(u):
                continue
            rows.append((core.e_level(d, lv, u),) + tuple(u))
        brute = polyhedra.from_inequalities(rows, g)
        cases += 1
        if brute != cell:
            failures.append(("cell oracle", d.b_matrix))
        facet_normals = {f[1:] for f in cell.facets}
        if facet_normals != set(rels):
            failures.append(("relevant vectors are the facets", d.b_matrix))
        cases += 1
    return {"name": "cell_halfspace_oracle", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_polytopes(rng, n_rounds=20) -> dict:
    failures = []
    cases = 0
    for _ in range(n_rounds):
        dim = rng.randint(1, 4)
        pts = [_rand_vec(rng, dim, 4) for _ in range(rng.randint(dim + 1, dim + 5))]
        try:
            p = polyhedra.hull(pts, dim=dim)
        except Exception:
            continue
        rt = polyhedra.from_inequalities(p.facets, dim, equalities=p.equations)
        cases += 1
        if rt != p:
            failures.append(("roundtrip", pts))
        rays = [_rand_vec(rng, dim, 3) for _ in range(dim + 2)]
        rays = [r for r in rays if any(r)]
        if rays:
            c = polyhedra.cone_from_rays(rays, dim)
            cases += 1
            if c.dual().dual() != c:
                failures.append(("dual involution", rays))
        if p.contains((0,) * dim):
            n = rng.randint(2, 3)
            summed = p
            for _ in range(n - 1):
                summed = polyhedra.minkowski(summed, p)
            cases += 1
            if summed != polyhedra.scale(p, n):
                failures.append(("n-fold sum = scale", pts))
    return {"name": "polytope_roundtrip_duality", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def _integral_level(d, cap=24):
    try:
        return voronoi.minimal_level(d, cap)
    except NotFoundBelowCap:
        return None


def suite_fan(rng, n_data=6) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        sfan = fan.build_fan(d, level)
        rep = fan.check_fan_over_S(sfan)
        cases += len(rep["cones"]) * 4
        if not rep["all_pass"]:
            failures.append(("fan over S", d.b_matrix))
        # negative control: a ray inside the dual-lattice hyperplane
        bad = fan.SFan(d.rank + 1, "level",
                       ((0,) * d.rank,),
                       (polyhedra.cone_from_rays([(0,) + (1,) * d.rank], d.rank + 1),))
        cases += 1
        if fan.check_fan_over_S(bad)["all_pass"]:
            failures.append(("negative control passed", d.b_matrix))
        for _label, cone in sfan:
            sliced = fan.cut(cone)
            cases += 1
            if polyhedra.cone_over_shifted(sliced) != cone:
                failures.append(("cone over cut", _label))
        # adjacent-pair slice compatibility
        cones = list(sfan.cones)
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                inter = cones[i].intersection(cones[j])
                if not inter.rays and not inter.lineality:
                    continue
                lhs = fan.cut(inter)
                rhs_rows = list(fan.cut(cones[i]).facets) + list(fan.cut(cones[j]).facets)
                rhs = polyhedra.from_inequalities(rhs_rows, d.rank)
                cases += 1
                if lhs != rhs:
                    failures.append(("cut of intersection", (i, j)))
    return {"name": "fan_over_base", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_cut_bijection(rng, n_data=4) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        rep = fan.cut_bijection_report(d, level)
        cases += len(rep["faces"]) + 3
        if not rep["all_pass"]:
            failures.append(("cut bijection", d.b_matrix))
        # independent slice-cover oracle: every sample dual point lies in the
        # slice of the cone whose base point minimizes D(x) + z(x)
        g = d.rank
        lv = Fraction(level)
        cell = voronoi.voronoi_polytope(d, level)
        diam = max(abs(Fraction(x)) for v in cell.vertices for x in v)
        phinorm = max(abs(x) for row in d.phi_matrix for x in row)
        for _ in range(6):
            z = tuple(Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(g))
            zmax = max((abs(x) for x in z), default=Fraction(0))
            radius = int(2 * lv * phinorm * g * zmax + diam) + 2

            def box_argmin(r):
                best, best_a = None, None
                for a in fan._box_vectors(g, range(-r, r + 1)):
                    h = Fraction(voronoi.d_value(d, level, a)) + linalg.dot(z, a)
                    if best is None or h < best or (h == best and a < best_a):
                        best, best_a = h, a
                return best, best_a

            best, best_a = box_argmin(radius)
            wider, _ = box_argmin(radius + 2)
            if wider < best:
                continue  # radius estimate too small; skip sample
            tau = fan.tau_cone_from_charts(d, level, best_a)
            cases += 1
            if not fan.cut(tau).contains(z):
                failures.append(("slice cover", z))
    return {"name": "cut_bijection", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_tau_agreement(rng, n_data=5) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        complex_ = voronoi.vor_complex(d, level)
        g = d.rank
        for fc in complex_.face_classes:
            poly = polyhedra.hull(list(fc.vertices), dim=g)
            interior_pts = [
                p for p in lattice.integer_points_in_polytope(poly)
                if poly.interior_contains(p)
            ]
            if not interior_pts:
                continue
            t_face = fan.tau_cone(d, level, fc)
            for a in interior_pts[:2]:
                cases += 1
                if fan.tau_cone_from_charts(d, level, a) != t_face:
                    failures.append(("tau agreement", (fc.vertices, a)))
            u = _rand_vec(rng, g, 2)
            shifted = fan.tau_cone_from_charts(d, level, interior_pts[0], u)
            base_cut = fan.cut(t_face)
            cases += 1
            moved = polyhedra.hull(
                [linalg.sub(v, u) for v in base_cut.vertices], dim=g
            )
            if fan.cut(shifted) != moved:
                failures.append(("cut shift", (fc.vertices, u)))
    return {"name": "tau_constructions_agree", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_scaling(rng, n_data=4) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        factor = rng.choice([2, 3])
        rep = charts.scaling_check(d, level, factor)
        cases += len(rep["samples"]) + 1
        if not (rep["cones_equal"] and rep["complex_scales"]):
            failures.append(("scaling", (d.b_matrix, factor)))
        s1 = strata.stratification(d, level)
        s2 = strata.stratification(d, level * factor)
        cases += 1
        if s1.orbit_counts != s2.orbit_counts:
            failures.append(("strata scaling", d.b_matrix))
    return {"name": "level_scaling", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def _semigroup_member(p, gens, positive):
    """Exact semigroup membership by depth-first descent along a functional
    strictly positive on all generators."""
    if not any(p):
        return True
    seen = set()

    def rec(q):
        if not any(q):
            return True
        if q in seen:
            return False
        seen.add(q)
        for h in gens:
            r = linalg.sub(q, h)
            if positive(r) >= 0 and rec(tuple(r)):
                return True
        return False

    return rec(tuple(p))


def suite_hilbert(rng, n_rounds=10) -> dict:
    failures = []
    cases = 0
    for _ in range(n_rounds):
        dim = rng.randint(2, 3)
        rays = []
        while len(rays) < dim:
            r = tuple(rng.randint(0, 4) for _ in range(dim - 1)) + (rng.randint(1, 4),)
            if any(r) and r not in rays:
                rays.append(r)
        cone = polyhedra.cone_from_rays(rays, dim)
        if cone.lineality:
            continue
        hb = lattice.hilbert_basis_pointed(cone)
        if not hb:
            continue
        # oracle: brute-force minimal generators among the lattice points of
        # the sublevel polytope {x in cone : f(x) <= f(sum of rays)}, for f a
        # strictly positive functional on the cone; every basis element lies
        # in the ray zonotope, hence below that bound
        f = tuple(sum(col) for col in zip(*cone.facets))
        ray_sum = tuple(sum(col) for col in zip(*cone.rays))
        bound = linalg.dot(f, ray_sum)
        rows = [(0,) + tuple(fr) for fr in cone.facets]
        rows.append((bound,) + tuple(-x for x in f))
        sublevel = polyhedra.from_inequalities(rows, dim)
        pts = [p for p in lattice.integer_points_in_polytope(sublevel) if any(p)]
        oracle = []
        pset = set(pts)
        for p in pts:
            reducible = False
            for q in pts:
                if q != p:
                    r = linalg.sub(p, q)
                    if any(r) and tuple(r) in pset:
                        reducible = True
                        break
            if not reducible:
                oracle.append(p)
        cases += 1
        if sorted(oracle) != sorted(hb):
            failures.append(("hilbert oracle", rays))
        # saturation idempotence + generation: boxed points are generated
        member_fail = [
            p for p in pts[:20]
            if not _semigroup_member(p, hb, lambda r: min(
                linalg.dot(fr, r) for fr in cone.facets) if cone.facets else 0)
        ]
        cases += min(len(pts), 20)
        if member_fail:
            failures.append(("generation", member_fail[:2]))
    return {"name": "hilbert_basis_oracle", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_charts(rng, n_data=5) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        g = d.rank
        sigma = voronoi.sigma_points(d, level)
        alpha = sigma[rng.randrange(len(sigma))]
        u = _rand_vec(rng, g, 2)
        weights, _info = charts.chart_generators(d, level, alpha, u)
        ccone = fan.chart_cone(d, level, alpha, u)
        gen_cone = polyhedra.cone_from_rays(
            list(weights) + [(1,) + (0,) * g], g + 1
        )
        cases += 1
        if gen_cone != ccone:
            failures.append(("generators span the chart cone", (alpha, u)))
        # saturation: every generator weight is in the cone's lattice points
        cases += 1
        if not all(ccone.contains(w) for w in weights):
            failures.append(("weights inside cone", (alpha, u)))
        # unit equivalence at valuation level
        for _ in range(4):
            v = _rand_vec(rng, g, 2)
            mono = monomial.xi_monomial(d, level, alpha, v)
            cases += 1
            if mono.val != voronoi.d_value(d, level, mono.exp):
                failures.append(("xi valuation equals D", (alpha, v)))
        # delta group action
        m0 = monomial.ValuedMonomial(0, (0,) * g, 1)
        a, b = _rand_vec(rng, g, 2), _rand_vec(rng, g, 2)
        lhs = monomial.delta_action(d, level, a,
                                    monomial.delta_action(d, level, b, m0))
        rhs = monomial.delta_action(d, level, linalg.add(a, b), m0)
        cases += 1
        if lhs != rhs:
            failures.append(("delta group law", (a, b)))
    return {"name": "charts_and_monomials", "cases": cases,
            "failures": failures[:10], "ok": not failures}


def suite_sigma_star(rng, n_data=5) -> dict:
    failures = []
    cases = 0
    produced = 0
    while produced < n_data:
        d = random_datum(rng, gmax=2)
        level = _integral_level(d)
        if level is None:
            continue
        produced += 1
        star = fan.sigma_star(d, level)
        g = d.rank
        cases += 2
        if sorted(star.vertices) != sorted(linalg.neg(v) for v in star.vertices):
            failures.append(("star symmetric", d.b_matrix))
        if not star.interior_contains((0,) * g):
            failures.append(("origin interior", d.b_matrix))
        n = rng.randint(2, 3)
        summed = star
        for _ in range(n - 1):
            summed = polyhedra.minkowski(summed, star)
        cases += 1
        if summed != polyhedra.scale(star, n):
            failures.append(("n star = n-fold sum", d.b_matrix))
        # slice spread bound: Cut differences inside twice the star
        sfan = fan.build_fan(d, level)
        two_star = polyhedra.scale(star, 2)
        for _label, cone in sfan:
            sliced = fan.cut(cone)
            for v in sliced.vertices:
                for w in sliced.vertices:
                    cases += 1
                    if not two_star.contains(linalg.sub(v, w)):
                        failures.append(("cut spread", _label))
    return {"name": "star_polytope", "cases": cases,
            "failures": failures[:10], "ok": not failures}


ALL_SUITES = (
    suite_quadratic_identities,
    suite_d_function,
    suite_cell_oracle,
    suite_polytopes,
    suite_fan,
    suite_cut_bijection,
    suite_tau_agreement,
    suite_scaling,
    suite_hilbert,
    suite_charts,
    suite_sigma_star,
)


def run_all(seed: int = 0) -> dict:
    rng = random.Random(seed)
    suites = []
    total_cases = 0
    ok = True
    for fn in ALL_SUITES:
        rep = fn(rng)
        suites.append(rep)
        total_cases += rep["cases"]
        ok = ok and rep["ok"]
    return {"seed": seed, "total_cases": total_cases, "ok": ok, "suites": suites}
