"""Timing and operation-count benchmark for keygen / encrypt / decrypt."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from .bitlinalg import SymbolVector
from .mceliece import decrypt, encrypt, keygen
from .olsc import DepthModel, build_code, depth_model, sequential_iterations

CSV_COLUMNS = ("trial", "op", "wall_ns", "ff_ops", "xor_ops", "cmp_ops", "depth_model")


@dataclass
class BenchRow:
    trial: int
    op: str
    wall_ns: int
    ff_ops: int | None = None
    xor_ops: int | None = None
    cmp_ops: int | None = None
    depth_model: int | None = None


@dataclass
class BenchResult:
    q: int
    t: int
    b: int
    depth: DepthModel
    sequential_steps: int
    rows: list[BenchRow] = field(default_factory=list)

    def decrypt_rows(self) -> list[BenchRow]:
        return [r for r in self.rows if r.op == "decrypt"]

    @property
    def field_ops(self) -> int:
        return sum(r.ff_ops for r in self.decrypt_rows())

    @property
    def xor_counts(self) -> set[int]:
        return {r.xor_ops for r in self.decrypt_rows()}

    @property
    def cmp_counts(self) -> set[int]:
        return {r.cmp_ops for r in self.decrypt_rows()}

    @property
    def depth_values(self) -> set[int]:
        return {r.depth_model for r in self.decrypt_rows()}

    def median_ns(self, op: str) -> float:
        return float(np.median([r.wall_ns for r in self.rows if r.op == op]))

    def write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(["" if getattr(r, c) is None else getattr(r, c) for c in CSV_COLUMNS])


def run_bench(q: int, t: int, b: int, trials: int, rng: np.random.Generator) -> BenchResult:
    code = build_code(q, t, b)
    depth = depth_model(q, t)
    result = BenchResult(q, t, b, depth, sequential_iterations(code))
    high = (1 << b) - 1
    for trial in range(trials):
        t0 = time.perf_counter_ns()
        pk, sk = keygen(q, t, b, rng)
        t1 = time.perf_counter_ns()
        m = SymbolVector(rng.integers(0, high, size=pk.k, dtype=np.uint64, endpoint=True), b)
        t2 = time.perf_counter_ns()
        c = encrypt(pk, m, rng)
        t3 = time.perf_counter_ns()
        recovered, report = decrypt(sk, c)
        t4 = time.perf_counter_ns()
        if recovered != m:
            raise RuntimeError(f"round trip failed in trial {trial}")
        result.rows.append(BenchRow(trial, "keygen", t1 - t0))
        result.rows.append(BenchRow(trial, "encrypt", t3 - t2))
        result.rows.append(BenchRow(trial, "decrypt", t4 - t3, report.field_ops,
                                    report.xor_ops, report.cmp_ops, depth.total))
    return result
