"""Segmentation evaluation: pixel metrics, SSIM, Hausdorff, kappa,
exact Wilcoxon signed-rank, and grouped batch reports.

Degenerate-mask conventions for the overlap metrics: when both masks are
empty, IoU / Dice / precision / recall are 1 (perfect agreement); when
exactly one is empty they are 0.
"""
from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np
from scipy.ndimage import correlate1d
from scipy.spatial.distance import directed_hausdorff
from scipy.stats import rankdata

from .errors import (AllZeroDifferences, DegenerateAgreement,
                     DimensionMismatch, EmptyMask, TooSmall)
from .image_io import ensure_mask

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03
SSIM_L = 255.0


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass
class MetricReport:
    """Per-image metric bundle; ssim and hausdorff are optional extras."""

    iou: float
    dice: float
    accuracy: float
    precision: float
    recall: float
    f1: float
    ssim: float | None = None
    hausdorff: float | None = None

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class GroupReport:
    group: str
    count: int
    mean: dict[str, float]
    sd: dict[str, float]


def confusion(pred: np.ndarray, truth: np.ndarray) -> ConfusionCounts:
    """Pixel-wise confusion counts with foreground as the positive class."""
    pred = ensure_mask(pred)
    truth = ensure_mask(truth)
    if pred.shape != truth.shape:
        raise DimensionMismatch(f"pred {pred.shape} vs truth {truth.shape}")
    p = pred > 0
    t = truth > 0
    tp = int(np.count_nonzero(p & t))
    fp = int(np.count_nonzero(p & ~t))
    fn = int(np.count_nonzero(~p & t))
    tn = int(np.count_nonzero(~p & ~t))
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def pixel_metrics(c: ConfusionCounts) -> MetricReport:
    """IoU, Dice/F1, precision, recall and accuracy from confusion counts."""
    if c.tp + c.fp + c.fn == 0:
        iou = dice = precision = recall = 1.0
    else:
        iou = c.tp / (c.tp + c.fp + c.fn)
        dice = 2 * c.tp / (2 * c.tp + c.fp + c.fn)
        precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
        recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    accuracy = (c.tp + c.tn) / c.total if c.total else 1.0
    return MetricReport(iou=iou, dice=dice, accuracy=accuracy,
                        precision=precision, recall=recall, f1=dice)


def _gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    x = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    k = np.exp(-(x ** 2) / (2.0 * sigma ** 2))
    return k / k.sum()


def ssim(a: np.ndarray, b: np.ndarray) -> float:
    """Mean structural similarity with the reference construction:
    11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, L=255, averaged
    over windows that fit entirely inside the images."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    if a.ndim != 2 or min(a.shape) < SSIM_WINDOW:
        raise TooSmall(f"images must be at least {SSIM_WINDOW}x{SSIM_WINDOW}")

    k = _gaussian_kernel(SSIM_WINDOW, SSIM_SIGMA)
    r = SSIM_WINDOW // 2

    def smooth(x):
        y = correlate1d(x, k, axis=0, mode="constant")
        y = correlate1d(y, k, axis=1, mode="constant")
        return y[r:-r, r:-r]  # windows fully inside the image

    mu_a = smooth(a)
    mu_b = smooth(b)
    var_a = smooth(a * a) - mu_a * mu_a
    var_b = smooth(b * b) - mu_b * mu_b
    cov = smooth(a * b) - mu_a * mu_b

    c1 = (SSIM_K1 * SSIM_L) ** 2
    c2 = (SSIM_K2 * SSIM_L) ** 2
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a ** 2 + mu_b ** 2 + c1) * (var_a + var_b + c2)
    return float(np.mean(num / den))


def _boundary(mask: np.ndarray) -> np.ndarray:
    fg = mask > 0
    from scipy.ndimage import binary_erosion
    interior = binary_erosion(fg, structure=np.ones((3, 3), bool), border_value=0)
    return fg & ~interior


def hausdorff(pred: np.ndarray, truth: np.ndarray, boundary: bool = False) -> float:
    """Symmetric Hausdorff distance between foreground coordinate sets.

    boundary=True restricts both sets to their 8-connected boundary
    pixels before measuring.
    """
    pred = ensure_mask(pred)
    truth = ensure_mask(truth)
    if pred.shape != truth.shape:
        raise DimensionMismatch(f"pred {pred.shape} vs truth {truth.shape}")
    if boundary:
        pred_pts = np.argwhere(_boundary(pred)).astype(np.float64)
        truth_pts = np.argwhere(_boundary(truth)).astype(np.float64)
    else:
        pred_pts = np.argwhere(pred > 0).astype(np.float64)
        truth_pts = np.argwhere(truth > 0).astype(np.float64)
    if len(pred_pts) == 0 or len(truth_pts) == 0:
        raise EmptyMask("hausdorff distance undefined for empty masks")
    d1 = directed_hausdorff(pred_pts, truth_pts)[0]
    d2 = directed_hausdorff(truth_pts, pred_pts)[0]
    return float(max(d1, d2))


def cohens_kappa(r1, r2) -> float:
    """Chance-corrected agreement between two categorical rating vectors."""
    r1 = list(r1)
    r2 = list(r2)
    if len(r1) != len(r2):
        raise DimensionMismatch(f"rating lengths differ: {len(r1)} vs {len(r2)}")
    if not r1:
        raise ValueError("ratings must be non-empty")
    n = len(r1)
    p_o = sum(a == b for a, b in zip(r1, r2)) / n
    c1 = Counter(r1)
    c2 = Counter(r2)
    p_e = sum(c1[label] * c2[label] for label in set(c1) | set(c2)) / (n * n)
    if p_e == 1.0:
        raise DegenerateAgreement("expected agreement is 1; kappa undefined")
    return (p_o - p_e) / (1.0 - p_e)


def _signed_rank_distribution(double_ranks: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact distribution of the positive-rank sum over all sign flips.

    Works on ranks doubled to integers (mid-ranks are multiples of 0.5).
    Returns (support, counts) where support is in doubled-rank units.
    """
    total = int(double_ranks.sum())
    counts = np.zeros(total + 1, dtype=np.float64)
    counts[0] = 1.0
    for r in double_ranks:
        r = int(r)
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[:total + 1 - r]
        counts = counts + shifted
    return np.arange(total + 1), counts


def wilcoxon_signed_rank(x, y) -> tuple[float, float]:
    """Exact two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped; tied absolute differences receive
    mid-ranks. The p-value enumerates the full sign-flip distribution of
    the positive-rank sum (computed by convolution, which is exact), so
    no normal approximation is involved at any sample size. Returns
    (W, p) with W = min(positive-rank sum, negative-rank sum).
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DimensionMismatch("paired samples must be equal-length 1D")
    diff = x - y
    diff = diff[diff != 0.0]
    if diff.size == 0:
        raise AllZeroDifferences("all paired differences are zero")
    ranks = rankdata(np.abs(diff))  # mid-ranks for ties
    w_plus = float(ranks[diff > 0].sum())
    total = float(ranks.sum())
    w_minus = total - w_plus

    double_ranks = np.round(ranks * 2).astype(np.int64)
    support, counts = _signed_rank_distribution(double_ranks)
    n_total = counts.sum()
    obs = round(w_plus * 2)
    mu = support[-1] / 2.0
    dev = abs(obs - mu)
    # symmetric distribution: two-sided p sums both tails at >= |deviation|
    tail = counts[np.abs(support - mu) >= dev - 1e-9].sum()
    p = float(min(tail / n_total, 1.0))
    return min(w_plus, w_minus), p


def batch_report(records: list[tuple[str, MetricReport]]) -> list[GroupReport]:
    """Per-group mean and sample SD for every metric.

    records are (group_label, MetricReport) pairs; groups are reported in
    first-appearance order. Metrics that are None for any record in a
    group are skipped for that group.
    """
    if not records:
        raise ValueError("batch_report needs at least one record")
    order: list[str] = []
    grouped: dict[str, list[MetricReport]] = {}
    for group, report in records:
        if group not in grouped:
            grouped[group] = []
            order.append(group)
        grouped[group].append(report)

    out = []
    for group in order:
        reports = grouped[group]
        mean: dict[str, float] = {}
        sd: dict[str, float] = {}
        for name in ("iou", "dice", "accuracy", "precision", "recall",
                     "f1", "ssim", "hausdorff"):
            values = [getattr(rep, name) for rep in reports]
            if any(v is None for v in values):
                continue
            arr = np.array(values, dtype=np.float64)
            mean[name] = float(arr.mean())
            sd[name] = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
        out.append(GroupReport(group=group, count=len(reports), mean=mean, sd=sd))
    return out


# ---------------------------------------------------------------------------
# CSV interfaces

METRIC_COLUMNS = ("iou", "dice", "accuracy", "precision", "recall", "f1",
                  "ssim", "hausdorff")


def write_image_csv(rows: list[tuple[str, str, MetricReport]], path) -> None:
    """Per-image report: image, group, then one column per metric."""
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["image", "group", *METRIC_COLUMNS])
        for image_id, group, rep in rows:
            d = rep.as_dict()
            writer.writerow([image_id, group]
                            + ["" if d[m] is None else f"{d[m]:.6f}"
                               for m in METRIC_COLUMNS])


def write_group_csv(groups: list[GroupReport], path) -> None:
    """Group statistics: one mean/sd column pair per metric."""
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        header = ["group", "count"]
        for m in METRIC_COLUMNS:
            header += [f"{m}_mean", f"{m}_sd"]
        writer.writerow(header)
        for g in groups:
            row = [g.group, g.count]
            for m in METRIC_COLUMNS:
                if m in g.mean:
                    row += [f"{g.mean[m]:.6f}", f"{g.sd[m]:.6f}"]
                else:
                    row += ["", ""]
            writer.writerow(row)


def read_image_csv(path) -> list[tuple[str, str, MetricReport]]:
    """Read rows produced by write_image_csv (or precomputed externally)."""
    out = []
    with open(Path(path), "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            values = {}
            for m in METRIC_COLUMNS:
                raw = (row.get(m) or "").strip()
                values[m] = float(raw) if raw else None
            if values["iou"] is None or values["f1"] is None:
                raise ValueError(f"{path}: row {row.get('image')} missing iou/f1")
            rep = MetricReport(
                iou=values["iou"],
                dice=values["dice"] if values["dice"] is not None else values["f1"],
                accuracy=values["accuracy"] if values["accuracy"] is not None else math.nan,
                precision=values["precision"] if values["precision"] is not None else math.nan,
                recall=values["recall"] if values["recall"] is not None else math.nan,
                f1=values["f1"], ssim=values["ssim"], hausdorff=values["hausdorff"])
            out.append((row["image"], row.get("group") or "all", rep))
    return out


def read_ratings(path) -> dict[str, list[str]]:
    """Ratings CSV: an image id column plus one column per rater."""
    with open(Path(path), "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or len(reader.fieldnames) < 2:
            raise ValueError(f"{path}: need an id column plus rating columns")
        id_col = reader.fieldnames[0]
        columns: dict[str, list[str]] = {name: [] for name in reader.fieldnames}
        for row in reader:
            for name in reader.fieldnames:
                columns[name].append(row[name])
    columns["_ids"] = columns.pop(id_col)
    return columns
