/**
 * Spin-1 extra-term figure: heatmaps of the extra term over the state-sphere
 * octant plus the two dissected-plane curves (|x| = 0 and |y| = 0) with the
 * maximum marked. Every plotted value is taken verbatim from a CSV cell.
 */

import type { EChartsOption } from "echarts";

import { SchemaMismatchError, SweepTable, column } from "./csv.js";

export const SPIN1_COLUMNS = [
  "abs_x",
  "abs_y",
  "abs_z",
  "extra_AB_closed",
  "extra_AB_numeric",
  "lhs",
  "schrodinger_rhs",
  "tight_rhs",
] as const;

/** The sweep is a square angular grid, polar-major; recover its resolution. */
export function gridResolution(table: SweepTable): number {
  const res = Math.round(Math.sqrt(table.rows.length));
  if (res * res !== table.rows.length || res < 2) {
    throw new SchemaMismatchError(
      `row count ${table.rows.length} is not a square grid`,
    );
  }
  return res;
}

export interface CurvePoint {
  absZ: number;
  extra: number;
}

/**
 * The dissected-plane slices: rows with |x| ~ 0 (the |z|-|y| plane) and rows
 * with |y| ~ 0 (the |z|-|x| plane), each as extra term vs |z|.
 */
export function dissectedCurves(
  table: SweepTable,
  tol = 1e-9,
): { xZero: CurvePoint[]; yZero: CurvePoint[] } {
  const absX = column(table, "abs_x");
  const absY = column(table, "abs_y");
  const absZ = column(table, "abs_z");
  const extra = column(table, "extra_AB_numeric");
  const xZero: CurvePoint[] = [];
  const yZero: CurvePoint[] = [];
  for (let i = 0; i < table.rows.length; i += 1) {
    if (absX[i] < tol) {
      xZero.push({ absZ: absZ[i], extra: extra[i] });
    }
    if (absY[i] < tol) {
      yZero.push({ absZ: absZ[i], extra: extra[i] });
    }
  }
  if (xZero.length === 0 || yZero.length === 0) {
    throw new SchemaMismatchError("sweep does not sample the dissected planes");
  }
  const byZ = (a: CurvePoint, b: CurvePoint) => a.absZ - b.absZ;
  return { xZero: xZero.sort(byZ), yZero: yZero.sort(byZ) };
}

/** Location and value of the largest extra term in the table. */
export function extraTermPeak(table: SweepTable): {
  absX: number;
  absY: number;
  absZ: number;
  extra: number;
} {
  const extra = column(table, "extra_AB_numeric");
  let best = 0;
  for (let i = 1; i < extra.length; i += 1) {
    if (extra[i] > extra[best]) {
      best = i;
    }
  }
  const row = table.rows[best];
  return { absX: row[0], absY: row[1], absZ: row[2], extra: extra[best] };
}

// Dense sweeps are thinned for display only; every kept cell is a CSV value.
const MAX_HEATMAP_CELLS_PER_AXIS = 100;

function heatmapStride(res: number): number {
  return Math.max(1, Math.ceil(res / MAX_HEATMAP_CELLS_PER_AXIS));
}

function heatmapCells(table: SweepTable, key: string): [number, number, number][] {
  const res = gridResolution(table);
  const stride = heatmapStride(res);
  const values = column(table, key);
  const cells: [number, number, number][] = [];
  for (let i = 0; i < res; i += stride) {
    for (let j = 0; j < res; j += stride) {
      cells.push([Math.floor(j / stride), Math.floor(i / stride), values[i * res + j]]);
    }
  }
  return cells;
}

function axisLabels(res: number): string[] {
  const stride = heatmapStride(res);
  const labels: string[] = [];
  for (let k = 0; k < res; k += stride) {
    labels.push(((k / (res - 1)) * 90).toFixed(0));
  }
  return labels;
}

/** Assemble the three-panel chart option from a parsed spin-1 sweep. */
export function buildSpin1Option(table: SweepTable): EChartsOption {
  const res = gridResolution(table);
  const curves = dissectedCurves(table);
  const peak = extraTermPeak(table);
  const extraMax = peak.extra;
  const labels = axisLabels(res);

  const heatmapPanel = (key: string, gridIndex: number, title: string) => ({
    type: "heatmap" as const,
    name: title,
    xAxisIndex: gridIndex,
    yAxisIndex: gridIndex,
    data: heatmapCells(table, key),
    progressive: 0,
  });

  return {
    animation: false,
    title: [
      { text: "extra term (numeric)", left: "8%", top: "2%", textStyle: { fontSize: 13 } },
      { text: "extra term (closed form)", left: "42%", top: "2%", textStyle: { fontSize: 13 } },
      { text: "dissected planes", left: "76%", top: "2%", textStyle: { fontSize: 13 } },
    ],
    grid: [
      { left: "5%", right: "70%", top: "12%", bottom: "18%" },
      { left: "39%", right: "36%", top: "12%", bottom: "18%" },
      { left: "73%", right: "3%", top: "12%", bottom: "18%" },
    ],
    xAxis: [
      { gridIndex: 0, type: "category", data: labels, name: "azimuth (deg)" },
      { gridIndex: 1, type: "category", data: labels, name: "azimuth (deg)" },
      { gridIndex: 2, type: "value", name: "|z|", min: 0, max: 1 },
    ],
    yAxis: [
      { gridIndex: 0, type: "category", data: labels, name: "polar (deg)" },
      { gridIndex: 1, type: "category", data: labels, name: "polar (deg)" },
      { gridIndex: 2, type: "value", name: "extra term" },
    ],
    visualMap: {
      min: 0,
      max: extraMax,
      calculable: false,
      orient: "horizontal",
      left: "center",
      bottom: "1%",
      seriesIndex: [0, 1],
      inRange: { color: ["#0c0c3a", "#3969c8", "#84d6c2", "#f5f7b0"] },
    },
    series: [
      heatmapPanel("extra_AB_numeric", 0, "numeric"),
      heatmapPanel("extra_AB_closed", 1, "closed"),
      {
        type: "line",
        name: "|x| = 0 plane",
        xAxisIndex: 2,
        yAxisIndex: 2,
        showSymbol: false,
        data: curves.xZero.map((p) => [p.absZ, p.extra]),
      },
      {
        type: "line",
        name: "|y| = 0 plane",
        xAxisIndex: 2,
        yAxisIndex: 2,
        showSymbol: false,
        data: curves.yZero.map((p) => [p.absZ, p.extra]),
      },
      {
        type: "scatter",
        name: `max ${peak.extra.toPrecision(6)} at |z| = ${peak.absZ.toPrecision(4)}`,
        xAxisIndex: 2,
        yAxisIndex: 2,
        symbolSize: 9,
        data: [[peak.absZ, peak.extra]],
        label: {
          show: true,
          formatter: () => `max at |z|=${peak.absZ.toFixed(3)}`,
          position: "top",
        },
      },
    ],
    legend: { show: true, bottom: "8%", right: "4%", orient: "vertical" },
  };
}
