#!/usr/bin/env python3
"""Smoke tests for the _permlim python module (PYTHONPATH must point at it)."""

import sys

import _permlim as pl

failures = []


def check(name, cond):
    print(f"{'ok' if cond else 'FAIL':4} {name}")
    if not cond:
        failures.append(name)


mu = pl.Permuton("monotone:0.5")
check("exact inversion density", abs(mu.density_exact("21") - 1 / 3) < 1e-12)
est = mu.density("21", samples=50000, seed=1)
check("sampled inversion density", abs(est.value - 1 / 3) < 5 * est.std_error + 1e-3)
check("forbidden pattern", mu.density_exact("231") == 0.0)
check("typed pattern argument", mu.density_exact(pl.Permutation("21")) == mu.density_exact("21"))
typed = mu.density(pl.Permutation("21"), samples=50000, seed=1)
check("typed pattern sampling", typed.value == est.value and typed.samples == est.samples)
check("cdf corner", abs(mu.cdf(1.0, 1.0) - 1.0) < 1e-12)

uniform = pl.Permuton("uniform")
sigma = uniform.sample_pattern(5, seed=7)
check("sampled pattern order", len(sigma) == 5)
check("pattern round trip", pl.Permutation(str(sigma)) == sigma)
check("permuton json", uniform.json() == '{"form":"uniform"}')

w = pl.Graphon("cliqueblocks:0.5")
est = w.density("2; 1-2", samples=100000, seed=2)
check("edge density of clique blocks", abs(est.value - 1 / 3) < 5 * est.std_error + 1e-3)
check("kernel inside the first block", w.kernel(0.1, 0.2) == 1.0)
check("kernel across blocks", w.kernel(0.1, 0.9) == 0.0)
check("pointwise flag", w.pointwise() and not pl.Graphon("induced:uniform").pointwise())
g = w.sample_graph(6, seed=5)
check("sampled graph order", g.order == 6)

q = pl.Graphon("constant:0.5").density_quadrature("3; 1-2,2-3", grid=4)
check("quadrature on a constant kernel", abs(q - 3 / 8) < 1e-12)
q2 = pl.Graphon("constant:0.5").density_quadrature(pl.Graph("3; 1-2,2-3"), grid=4)
check("typed graph argument", q2 == q)
typed = w.density(pl.Graph("2; 1-2"), samples=100000, seed=2)
check("typed graph sampling", typed.value == est.value)

reports = pl.verify_monotone(0.5, samples=50000, seed=3)
check("monotone verification passes", pl.all_pass(reports))
check("forcing csv header", pl.forcing_csv(reports).startswith("constraint,target,value"))
negative = pl.verify_monotone(0.5, samples=50000, seed=3, target="uniform")
check("negative control fails", not pl.all_pass(negative))
check("negative control reports rows", any(not r.passed for r in negative))

problem = pl.WitnessProblem(2, 0.5, 0.01)
result = pl.solve_witness(problem)
check("witness converges", result.converged)
check("witness pinned block", abs(result.b[2] - 0.135) < 1e-14)
check("witness length", len(result.b) == 3)
cert = pl.certify_witness(result, problem)
check("witness certifies", pl.all_pass(cert))
check(
    "separation row present",
    any(r.constraint == "power-sum-3-separation" for r in cert),
)
csv_text = pl.witness_csv(problem, result, cert)
check("witness csv", csv_text.startswith("index,a,b\n1,0.5,"))

pgm = pl.Graphon("constant:0").heatmap(resolution=16)
check("heatmap magic", pgm.startswith("P2\n"))
check("heatmap all black", set(pgm.splitlines()[4].split()) == {"0"})

try:
    pl.Permuton("nonsense:1")
    check("bad descriptor raises", False)
except ValueError as e:
    check("bad descriptor raises", "docs/schema.md" in str(e))

print()
if failures:
    print(f"{len(failures)} check(s) failed: {failures}")
    sys.exit(1)
print("all python checks passed")
