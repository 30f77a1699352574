#!/usr/bin/env python3
"""Acceptance experiment suite for the polynomial variety engine.

Runs eight seeded experiments and writes per-experiment CSV results plus a
summary.json:

  Exp 1: Fréchet forms agree (general vs equal increments) and flip at the degree
  Exp 2: Polarization reconstructs f and every form is symmetric multiadditive
  Exp 3: Difference identity for x1^3 + x2^3 along (1, 1)
  Exp 4: Projections x_i as additive slices of sum_{i<=N} x_i^3, N = 1..8
  Exp 5: Trichotomy verdicts for sum_i x_i^i, sum_i x_i^3, (x1+x2)^2
  Exp 6: Taylor generators match the variety dimension within (deg f + 1)^k
  Exp 7: Variety dimension against a brute-force translate/grid oracle
  Exp 8: Scenario reports are byte-identical across two runs

Usage:
    python3 scripts/run_experiments.py
    python3 scripts/run_experiments.py --experiment trichotomy
    python3 scripts/run_experiments.py --output-dir results/ --seed 7
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List

# Ensure project root is on sys.path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

import numpy as np

from polyvariety.algebra.group import GroupElement, Subgroup, apply_measure
from polyvariety.algebra.linalg import matrix_rank, rank_of
from polyvariety.algebra.polyexpr import PolyExpr
from polyvariety.analysis.classify import ClassifyBudget, classify
from polyvariety.analysis.decompose import polarize, top_additive_slice, verify_multiadditive_symmetric
from polyvariety.analysis.frechet import djokovic_consistency
from polyvariety.analysis.taylor import taylor_generators
from polyvariety.analysis.variety import variety_dim
from polyvariety.dsl.parser import parse_function
from polyvariety.pipeline import EngineConfig, VarietyEngine
from polyvariety.reporting import JSONReportWriter

SCENARIO = PROJECT_ROOT / "scenarios" / "acceptance.txt"


# ============================================================
# Helpers
# ============================================================

def write_csv(rows: List[Dict], path: Path) -> None:
    if not rows:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    keys = list(dict.fromkeys(k for r in rows for k in r))
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=keys)
        w.writeheader()
        w.writerows(rows)
    print(f"    → Saved: {path}")


def write_json(data: Any, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True, default=str)


def random_polynomial(rng: np.random.Generator, n_vars: int, max_degree: int, n_terms: int = 4) -> PolyExpr:
    total = PolyExpr.zero()
    for _ in range(n_terms):
        degree = int(rng.integers(0, max_degree + 1))
        exponents: Dict[int, int] = {}
        for index in rng.integers(0, n_vars, size=degree):
            exponents[int(index)] = exponents.get(int(index), 0) + 1
        total = total + PolyExpr.monomial(exponents, int(rng.integers(-5, 6)))
    return total


def banner(title: str) -> None:
    print("\n" + "=" * 60)
    print(f"  {title}")
    print("=" * 60)


def sum_of_cubes(n: int) -> PolyExpr:
    return sum((PolyExpr.variable(i) ** 3 for i in range(n)), PolyExpr.zero())


# ============================================================
# Experiments
# ============================================================

def exp1_frechet_equivalence(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 1: Fréchet forms agree")
    rng = np.random.default_rng([seed, 1])
    results = []
    start = time.perf_counter()
    for trial in range(100):
        f = random_polynomial(rng, n_vars=int(rng.integers(1, 4)), max_degree=5)
        report = djokovic_consistency(f, n_max=6)
        expected_flip = f.total_degree if not f.is_zero else 0
        results.append({
            "trial": trial,
            "function": f.render(),
            "degree": f.total_degree,
            "agree": report.agree,
            "flip_point": report.flip_point,
            "flip_matches_degree": report.flip_point == expected_flip,
        })
    elapsed = time.perf_counter() - start
    write_csv(results, output_dir / "exp1" / "results.csv")
    passed = sum(r["agree"] and r["flip_matches_degree"] for r in results)
    print(f"  {passed}/{len(results)} polynomials pass in {elapsed:.1f}s")
    return results


def exp2_polarization(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 2: Polarization reconstruction")
    rng = np.random.default_rng([seed, 2])
    results = []
    for trial in range(100):
        f = random_polynomial(rng, n_vars=int(rng.integers(1, 4)), max_degree=5)
        polarization = polarize(f)
        results.append({
            "trial": trial,
            "function": f.render(),
            "reconstructs": polarization.reassemble() == f,
            "symmetric_multiadditive": all(verify_multiadditive_symmetric(form) for form in polarization.forms),
        })
    write_csv(results, output_dir / "exp2" / "results.csv")
    passed = sum(r["reconstructs"] and r["symmetric_multiadditive"] for r in results)
    print(f"  {passed}/{len(results)} decompositions verified")
    return results


def exp3_difference_identity(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 3: Difference identity")
    f = sum_of_cubes(2)
    y = GroupElement.from_dense([1, 1])
    delta = f.translate(y) - f
    expected = parse_function("3*x1^2 + 3*x1 + 3*x2^2 + 3*x2 + 2").polynomial
    results = [{"difference": delta.render(), "expected": expected.render(), "match": delta == expected}]
    write_csv(results, output_dir / "exp3" / "results.csv")
    print(f"  Δ_(1,1) f = {delta.render()}  match={results[0]['match']}")
    return results


def exp4_projections(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 4: Projections in the variety of sum x_i^3")
    results = []
    for n in range(1, 9):
        f = sum_of_cubes(n)
        slices_ok = True
        for i in range(n):
            e = GroupElement.unit(i)
            piece = top_additive_slice(f, [e, e])
            slices_ok &= piece.additive == PolyExpr.variable(i) and apply_measure(piece.witness, f) == piece.additive
        report = variety_dim(f, Subgroup.full(n))
        results.append({
            "N": n,
            "slices_are_projections": slices_ok,
            "variety_dim": report.dimension,
            "additive_dim": report.additive_dim,
            "additive_dim_equals_N": report.additive_dim == n,
        })
    write_csv(results, output_dir / "exp4" / "results.csv")
    print("  additive dims: " + ", ".join(str(r["additive_dim"]) for r in results))
    return results


def exp5_trichotomy(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 5: Trichotomy")
    cases = [
        ("sum_i x_i^i", "NotGeneralizedPolynomial"),
        ("sum_i x_i^3", "FakePolynomial"),
        ("(x1+x2)^2", "Polynomial"),
    ]
    results = []
    for index, (source, expected) in enumerate(cases, start=1):
        start = time.perf_counter()
        outcome = classify(parse_function(source).family(), ClassifyBudget(seed=seed))
        elapsed = time.perf_counter() - start
        write_json(outcome.to_dict(), output_dir / "exp5" / f"case{index}.json")
        results.append({
            "function": source,
            "verdict": outcome.verdict.value,
            "expected": expected,
            "match": outcome.verdict.value == expected,
            "seconds": round(elapsed, 2),
        })
        print(f"  [{source}]  {outcome.verdict.value} ({elapsed:.1f}s)")
    write_csv(results, output_dir / "exp5" / "results.csv")
    return results


def exp6_taylor_bound(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 6: Taylor bound")
    rng = np.random.default_rng([seed, 6])
    results = []
    while len(results) < 20:
        k = int(rng.integers(1, 3))
        P = random_polynomial(rng, n_vars=k, max_degree=4)
        additive = [
            PolyExpr.linear_form({v: int(c) for v, c in enumerate(rng.integers(-3, 4, size=3))})
            for _ in range(k)
        ]
        if rank_of(additive) < k:
            continue
        report = taylor_generators(P, additive)
        full = variety_dim(report.composite, Subgroup.full(3)).dimension
        results.append({
            "P": P.render(),
            "k": k,
            "generators": len(report.generators),
            "rank": report.rank,
            "variety_dim": full,
            "bound": report.bound,
            "rank_matches": report.rank == full,
            "within_bound": report.within_bound,
        })
    write_csv(results, output_dir / "exp6" / "results.csv")
    print(f"  {sum(r['rank_matches'] and r['within_bound'] for r in results)}/{len(results)} compositions verified")
    return results


def exp7_grid_oracle(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 7: Grid oracle")
    rng = np.random.default_rng([seed, 7])
    grid = [{0: a, 1: b} for a in range(-4, 5) for b in range(-4, 5)]
    results = []
    for trial in range(30):
        q = random_polynomial(rng, n_vars=2, max_degree=4, n_terms=5)
        rows = []
        for s in rng.integers(-6, 7, size=(50, 2)):
            shifted = q.translate({0: int(s[0]), 1: int(s[1])})
            rows.append([shifted.evaluate(point) for point in grid])
        oracle = matrix_rank(rows, len(grid))
        computed = variety_dim(q, Subgroup.full(2)).dimension
        results.append({"trial": trial, "function": q.render(), "computed": computed, "oracle": oracle,
                        "match": computed == oracle})
    write_csv(results, output_dir / "exp7" / "results.csv")
    print(f"  {sum(r['match'] for r in results)}/{len(results)} dimensions match the oracle")
    return results


def exp8_determinism(output_dir: Path, seed: int) -> List[Dict]:
    banner("EXPERIMENT 8: Scenario determinism")
    writer = JSONReportWriter()
    first = writer.render(VarietyEngine(EngineConfig(seed=seed)).run_scenario(SCENARIO))
    second = writer.render(VarietyEngine(EngineConfig(seed=seed)).run_scenario(SCENARIO))
    (output_dir / "exp8").mkdir(parents=True, exist_ok=True)
    (output_dir / "exp8" / "scenario.json").write_text(first, encoding="utf-8")
    results = [{"scenario": str(SCENARIO.relative_to(PROJECT_ROOT)), "bytes": len(first), "identical": first == second}]
    write_csv(results, output_dir / "exp8" / "results.csv")
    print(f"  identical={results[0]['identical']} ({len(first)} bytes)")
    return results


EXPERIMENTS = {
    "frechet": ("exp1", exp1_frechet_equivalence),
    "polarization": ("exp2", exp2_polarization),
    "difference": ("exp3", exp3_difference_identity),
    "projections": ("exp4", exp4_projections),
    "trichotomy": ("exp5", exp5_trichotomy),
    "taylor": ("exp6", exp6_taylor_bound),
    "oracle": ("exp7", exp7_grid_oracle),
    "determinism": ("exp8", exp8_determinism),
}


# ============================================================
# Main
# ============================================================

def parse_args():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--output-dir", type=Path, default=PROJECT_ROOT / "experiments")
    p.add_argument("--experiment", choices=["all", *EXPERIMENTS], default="all")
    p.add_argument("--seed", type=int, default=7)
    return p.parse_args()


def main():
    args = parse_args()
    args.output_dir.mkdir(parents=True, exist_ok=True)

    print(f"\n{'#' * 60}")
    print(f"  Polynomial variety acceptance suite")
    print(f"  Output: {args.output_dir}")
    print(f"  Seed: {args.seed}")
    print(f"{'#' * 60}")

    all_results = {}
    for name, (key, run) in EXPERIMENTS.items():
        if args.experiment in ("all", name):
            all_results[key] = run(args.output_dir, args.seed)

    summary = {
        "seed": args.seed,
        "experiments_run": list(all_results.keys()),
        "total_data_points": sum(len(v) for v in all_results.values()),
    }
    write_json(summary, args.output_dir / "summary.json")

    print(f"\n{'#' * 60}")
    print(f"  All experiments complete!")
    print(f"  Total data points: {summary['total_data_points']}")
    print(f"  Results in: {args.output_dir}")
    print(f"{'#' * 60}\n")


if __name__ == "__main__":
    main()
