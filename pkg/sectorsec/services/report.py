"""
Report Service
CSV emission, analytic-vs-simulation comparison, SOP crossing points and
gnuplot script generation for sweep results.
"""
import csv
import io
import logging
import math
from typing import Iterable, List, Optional, Sequence

from sectorsec.models.schemas import (
    ComparisonPoint,
    CurveSummary,
    PointResult,
    SweepResult,
    WeightsChoice,
)

logger = logging.getLogger(__name__)

CSV_HEADER = ["snr_db", "axis", "sop_analytic", "sop_exact", "sop_mc", "ci_low", "ci_high"]
SOP_TARGET = 1e-2


def format_number(value: Optional[float]) -> str:
    """10 significant digits, '.' decimal separator, empty for absent values"""
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".10g")


def generate_csv(result: SweepResult) -> str:
    """Byte-stable CSV for a sweep (fixed header, '\\n' line endings)"""
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in result.rows:
        writer.writerow([
            format_number(row.snr_db),
            "" if row.axis_value is None else str(row.axis_value),
            format_number(row.sop_analytic),
            format_number(row.sop_exact),
            format_number(row.sop_mc),
            format_number(row.ci_low),
            format_number(row.ci_high),
        ])
    return output.getvalue()


def log10_deviation(a: Optional[float], b: Optional[float], floor: float) -> Optional[float]:
    """|log10 a - log10 b|, or None where either value is below the floor"""
    if a is None or b is None or a < floor or b < floor:
        return None
    return abs(math.log10(a) - math.log10(b))


def crossing_snr(snrs: Sequence[float], sops: Sequence[Optional[float]], target: float = SOP_TARGET) -> Optional[float]:
    """
    First SNR where a curve drops through `target`, interpolated linearly in
    log10(SOP). None when the curve never crosses on the grid.
    """
    pairs = [(s, p) for s, p in zip(snrs, sops) if p is not None and p > 0]
    for (s0, p0), (s1, p1) in zip(pairs, pairs[1:]):
        if p0 >= target > p1:
            l0, l1, lt = math.log10(p0), math.log10(p1), math.log10(target)
            return s0 + (s1 - s0) * (l0 - lt) / (l0 - l1)
    return None


def compare_points(
    points: Iterable[PointResult],
    tolerance: float,
    floor: float,
) -> List[ComparisonPoint]:
    """Per-point |log10 analytic - log10 mc|; points above tolerance are flagged"""
    compared: List[ComparisonPoint] = []
    for point in points:
        if point.sop_analytic is None or point.mc is None:
            continue
        deviation = log10_deviation(point.sop_analytic, point.mc.p_hat, floor)
        compared.append(ComparisonPoint(
            snr_db=point.snr_db,
            axis_value=point.axis_value,
            sop_analytic=point.sop_analytic,
            sop_mc=point.mc.p_hat,
            deviation_log10=deviation,
            flagged=deviation is not None and deviation > tolerance,
        ))
    return compared


def _mean(values: List[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def summarize_curve(
    axis_value: Optional[int],
    points: List[PointResult],
    tolerance: float,
    floor: float,
) -> CurveSummary:
    points = sorted(points, key=lambda p: p.snr_db)
    compared = compare_points(points, tolerance, floor)
    deviations = [c.deviation_log10 for c in compared if c.deviation_log10 is not None]

    def preset_deviation(attr: str) -> Optional[float]:
        devs = [
            log10_deviation(getattr(p, attr), p.mc.p_hat, floor)
            for p in points
            if p.mc is not None
        ]
        return _mean([d for d in devs if d is not None])

    standard = preset_deviation("sop_standard")
    printed = preset_deviation("sop_paper_printed")
    better = None
    if standard is not None and printed is not None:
        better = WeightsChoice.STANDARD if standard <= printed else WeightsChoice.PAPER_PRINTED

    snrs = [p.snr_db for p in points]
    return CurveSummary(
        axis_value=axis_value,
        max_deviation_log10=max(deviations) if deviations else None,
        mean_deviation_standard=standard,
        mean_deviation_paper_printed=printed,
        better_preset=better,
        flagged_points=sum(1 for c in compared if c.flagged),
        crossing_snr_db=crossing_snr(snrs, [p.sop_analytic for p in points]),
        mc_crossing_snr_db=crossing_snr(snrs, [p.mc.p_hat if p.mc else None for p in points]),
        best_case_crossing_snr_db=crossing_snr(snrs, [p.sop_best_case for p in points]),
    )


def summarize(points: List[PointResult], tolerance: float, floor: float) -> List[CurveSummary]:
    axis_values: List[Optional[int]] = []
    for p in points:
        if p.axis_value not in axis_values:
            axis_values.append(p.axis_value)
    return [
        summarize_curve(v, [p for p in points if p.axis_value == v], tolerance, floor)
        for v in axis_values
    ]


def _fmt(value: Optional[float], spec: str = ".3f") -> str:
    return "n/a" if value is None else format(value, spec)


def render_summary(name: str, axis_label: Optional[str], summaries: List[CurveSummary], tolerance: float) -> str:
    """Human-readable comparison report"""
    lines = [f"Scenario: {name}", f"Tolerance: |dlog10| <= {tolerance}"]
    for s in summaries:
        label = "curve" if s.axis_value is None else f"{axis_label}={s.axis_value}"
        lines.append(
            f"  {label}: max |dlog10| = {_fmt(s.max_deviation_log10)}"
            f", flagged = {s.flagged_points}"
            f", mean |dlog10| standard = {_fmt(s.mean_deviation_standard)}"
            f", paper-printed = {_fmt(s.mean_deviation_paper_printed)}"
            f", better fit = {s.better_preset.value if s.better_preset else 'n/a'}"
        )
        lines.append(
            f"    SOP = {SOP_TARGET:g} crossing: analytic {_fmt(s.crossing_snr_db, '.2f')} dB"
            f", simulated {_fmt(s.mc_crossing_snr_db, '.2f')} dB"
            f", best case {_fmt(s.best_case_crossing_snr_db, '.2f')} dB"
        )
    return "\n".join(lines) + "\n"


def generate_comparison_csv(points: List[ComparisonPoint]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(["snr_db", "axis", "sop_analytic", "sop_mc", "abs_dlog10", "flagged"])
    for c in sorted(points, key=lambda c: (c.axis_value is not None, c.axis_value or 0, c.snr_db)):
        writer.writerow([
            format_number(c.snr_db),
            "" if c.axis_value is None else str(c.axis_value),
            format_number(c.sop_analytic),
            format_number(c.sop_mc),
            format_number(c.deviation_log10),
            "1" if c.flagged else "0",
        ])
    return output.getvalue()


def generate_gnuplot(csv_path: str, result: SweepResult, axis_label: Optional[str]) -> str:
    """gnuplot script drawing one log-scale SOP curve per axis value"""
    columns = {"sop_analytic": 3, "sop_exact": 4, "sop_mc": 5}
    present = [
        name for name in columns
        if any(getattr(r, name) is not None for r in result.rows)
    ]
    plots: List[str] = []
    for axis_value, _ in result.curves():
        label = "" if axis_value is None else f"{axis_label}={axis_value} "
        select = "1" if axis_value is None else f"($2=={axis_value})"
        for name in present:
            style = "points" if name == "sop_mc" else "lines"
            plots.append(
                f"'{csv_path}' using 1:({select} ? ${columns[name]} : 1/0) with {style} title '{label}{name}'"
            )
    return "\n".join([
        "set datafile separator ','",
        "set logscale y",
        "set format y '10^{%L}'",
        "set xlabel 'SNR (dB)'",
        "set ylabel 'SOP'",
        "set grid",
        "plot " + ", \\\n     ".join(plots) if plots else "# no data",
    ]) + "\n"


def build_result(points: Iterable[PointResult]) -> SweepResult:
    return SweepResult(rows=[p.to_row() for p in points])
