"""Cross-linguistic colexification structure of indefinite-pronoun usage classes.

Builds a class-by-class colexification count matrix from per-language term
records, turns it into a distance matrix, and projects it to low dimension
with classical (Torgerson) multidimensional scaling.  Also computes the
share of languages whose pronoun terms overlap as broadly as English's
some-/any- pair does.

The bundled demonstration matrix is synthetic (see data/README note); real
typological datasets must be supplied by the caller.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classifier import UsageClass

__all__ = [
    "ColexRecord",
    "ColexMatrix",
    "Embedding2D",
    "build_matrix",
    "to_distance",
    "mds_project",
    "overlap_breadth",
    "load_colex_records",
    "load_matrix_csv",
    "save_matrix_csv",
]

CLASS_ORDER = list(UsageClass)  # canonical presentation order


@dataclass(frozen=True)
class ColexRecord:
    """One term of one language and the usage classes it covers."""

    language: str
    term: str
    covers: frozenset[UsageClass]

    def __post_init__(self):
        object.__setattr__(self, "covers", frozenset(self.covers))
        if not self.covers:
            raise ValueError(f"term {self.term!r} ({self.language}) covers no classes")


@dataclass(frozen=True)
class ColexMatrix:
    """Symmetric counts: entry (i, j) is the number of languages with a term
    covering both class i and class j; the diagonal counts languages with
    any term covering the class."""

    classes: tuple[UsageClass, ...]
    counts: np.ndarray
    total_languages: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=int)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "classes", tuple(self.classes))
        n = len(self.classes)
        if counts.shape != (n, n):
            raise ValueError(f"counts shape {counts.shape} does not match {n} classes")
        if self.total_languages <= 0:
            raise ValueError("total_languages must be positive")
        if (counts < 0).any() or (counts > self.total_languages).any():
            raise ValueError("counts must lie in [0, total_languages]")
        if (counts != counts.T).any():
            raise ValueError("counts must be symmetric")


def build_matrix(records: Sequence[ColexRecord]) -> ColexMatrix:
    """Count, for every class pair, the languages with a term subsuming both."""
    if not records:
        raise ValueError("no colexification records")
    present = {c for rec in records for c in rec.covers}
    classes = tuple(c for c in CLASS_ORDER if c in present)
    if len(classes) < 2:
        raise ValueError("records must cover at least two usage classes")
    index = {c: i for i, c in enumerate(classes)}
    languages = sorted({rec.language for rec in records})
    counts = np.zeros((len(classes), len(classes)), dtype=int)
    for language in languages:
        covered_pairs: set[tuple[int, int]] = set()
        for rec in records:
            if rec.language != language:
                continue
            idxs = [index[c] for c in rec.covers]
            for a in idxs:
                for b in idxs:
                    covered_pairs.add((a, b))
        for a, b in covered_pairs:
            counts[a, b] += 1
    return ColexMatrix(classes=classes, counts=counts, total_languages=len(languages))


def to_distance(matrix: ColexMatrix, transform: str = "complement") -> np.ndarray:
    """Distance matrix from colexification counts.

    "complement": d_ij = 1 - counts_ij / L, zero diagonal, entries in [0, 1].
    "sqrt_diff":  d_ij = sqrt(counts_ii + counts_jj - 2 * counts_ij).
    """
    if matrix.total_languages == 0:
        raise ValueError("total_languages is zero")
    s = matrix.counts.astype(float)
    if transform == "complement":
        d = 1.0 - s / matrix.total_languages
    elif transform == "sqrt_diff":
        diag = np.diag(s)
        gram = diag[:, None] + diag[None, :] - 2.0 * s
        d = np.sqrt(np.maximum(gram, 0.0))
    else:
        raise ValueError(f"unknown transform {transform!r}")
    np.fill_diagonal(d, 0.0)
    return d


@dataclass(frozen=True)
class Embedding2D:
    """MDS coordinates (rows follow `classes`) plus the full eigenvalue
    spectrum of the double-centered matrix, sorted descending."""

    classes: tuple
    coords: np.ndarray
    eigenvalues: np.ndarray


def _jacobi_eigh(a: np.ndarray, off_threshold: float = 1e-12,
                 max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a small symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    `off_threshold`, plus one polishing sweep.  Returns (eigenvalues,
    eigenvectors-as-columns), unsorted.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)

    def off_norm() -> float:
        return float(np.sqrt(np.sum(np.tril(a, -1) ** 2) * 2.0))

    polish = False
    for _ in range(max_sweeps):
        if off_norm() < off_threshold:
            if polish:
                break
            polish = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
                v = v @ rot
    return np.diag(a).copy(), v


def mds_project(d: np.ndarray, dims: int = 2,
                classes: Sequence | None = None) -> Embedding2D:
    """Classical MDS: double-center the squared distances and eigendecompose.

    B = -1/2 * J (D*D) J with J = I - (1/n) 1 1^T.  Coordinates are the top
    `dims` eigenvectors scaled by the square roots of their eigenvalues;
    negative eigenvalues (non-Euclidean input) are clamped to zero with a
    warning.  The full raw spectrum is reported alongside.
    """
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance matrix must be square, got shape {d.shape}")
    n = d.shape[0]
    if not np.allclose(d, d.T, atol=1e-9):
        raise ValueError("distance matrix must be symmetric")
    if np.abs(np.diag(d)).max(initial=0.0) > 1e-9:
        raise ValueError("distance matrix must have a zero diagonal")
    if d.min(initial=0.0) < -1e-9:
        raise ValueError("distances must be non-negative")
    if not 1 <= dims <= n:
        raise ValueError(f"dims must be in [1, {n}]")
    if classes is None:
        classes = tuple(range(n))
    elif len(classes) != n:
        raise ValueError("classes length does not match matrix size")

    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ (d * d) @ j
    eigvals, eigvecs = _jacobi_eigh(b)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    if eigvals.min(initial=0.0) < -1e-9:
        warnings.warn(
            f"clamping {int((eigvals < -1e-9).sum())} negative eigenvalue(s); "
            "input distances are not Euclidean",
            stacklevel=2,
        )
    scale = np.sqrt(np.clip(eigvals[:dims], 0.0, None))
    coords = eigvecs[:, :dims] * scale
    return Embedding2D(classes=tuple(classes), coords=coords, eigenvalues=eigvals)


def overlap_breadth(records: Sequence[ColexRecord], min_each: int = 6,
                    min_shared: int = 5) -> float:
    """Fraction of languages with two distinct terms of English-like breadth.

    A language qualifies iff it has terms t1 != t2 each covering at least
    `min_each` classes with at least `min_shared` classes in common (the
    defaults encode the geometry of English some-/any-: 7 and 6 classes
    with 5 shared).
    """
    terms: dict[str, dict[str, set[UsageClass]]] = {}
    for rec in records:
        terms.setdefault(rec.language, {}).setdefault(rec.term, set()).update(rec.covers)
    if not terms:
        return 0.0
    qualifying = 0
    for covers_by_term in terms.values():
        broad = [c for c in covers_by_term.values() if len(c) >= min_each]
        if any(
            len(c1 & c2) >= min_shared
            for i, c1 in enumerate(broad)
            for c2 in broad[i + 1:]
        ):
            qualifying += 1
    return qualifying / len(terms)


def load_colex_records(path) -> list[ColexRecord]:
    """Read `language,term,CLASS|CLASS|...` lines (blank and '#' lines skipped)."""
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 3:
                raise ValueError(f"line {line_number}: expected 3 comma-separated fields")
            covers = frozenset(UsageClass(c.strip()) for c in parts[2].split("|") if c.strip())
            records.append(ColexRecord(language=parts[0], term=parts[1], covers=covers))
    return records


def load_matrix_csv(path) -> tuple[list[str], np.ndarray]:
    """Read a square numeric grid with a header row of class names."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    header = [name.strip() for name in rows[0]]
    n = len(header)
    if len(rows) - 1 != n:
        raise ValueError(f"{path}: expected {n} data rows, found {len(rows) - 1}")
    data = np.array([[float(x) for x in row] for row in rows[1:]], dtype=float)
    if data.shape != (n, n):
        raise ValueError(f"{path}: grid is not square")
    return header, data


def save_matrix_csv(path, names: Sequence[str], matrix: np.ndarray) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(names))
        for row in np.asarray(matrix):
            writer.writerow([_fmt_number(x) for x in row])


def _fmt_number(x) -> str:
    f = float(x)
    return str(int(f)) if f == int(f) else repr(f)
