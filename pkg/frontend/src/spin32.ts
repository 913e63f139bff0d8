/**
 * Spin-3/2 contributions figure: the variance product against the hierarchy of
 * lower bounds as functions of the state parameter t. The curve for the
 * swapped extra term coincides with the variance product (the bound is
 * saturated there), which tests assert from the same CSV cells that get
 * plotted.
 */

import type { EChartsOption } from "echarts";

import { SweepTable, column } from "./csv.js";

export const SPIN32_COLUMNS = [
  "t",
  "lhs",
  "schrodinger_rhs",
  "rhs_plus_tilde",
  "rhs_plus_AB",
  "rhs_plus_BA",
  "rhs_plus_max",
] as const;

const SERIES: Array<{ key: string; label: string; width: number; dash?: number[] }> = [
  { key: "lhs", label: "variance product", width: 3 },
  { key: "rhs_plus_BA", label: "bound + swapped extra term", width: 1.5, dash: [6, 4] },
  { key: "rhs_plus_AB", label: "bound + extra term", width: 1.5 },
  { key: "rhs_plus_tilde", label: "bound + product-form term", width: 1.5 },
  { key: "schrodinger_rhs", label: "covariance-supplemented bound", width: 3 },
];

/** Worst per-row violation of the bottom-to-top ordering of the curves. */
export function orderingViolation(table: SweepTable): number {
  const rhs = column(table, "schrodinger_rhs");
  const tilde = column(table, "rhs_plus_tilde");
  const ab = column(table, "rhs_plus_AB");
  const lhs = column(table, "lhs");
  let worst = 0;
  for (let i = 0; i < lhs.length; i += 1) {
    worst = Math.max(worst, rhs[i] - tilde[i], tilde[i] - ab[i], ab[i] - lhs[i]);
  }
  return worst;
}

/** Largest |lhs - (bound + swapped extra term)| over the sweep. */
export function coincidenceGap(table: SweepTable): number {
  const lhs = column(table, "lhs");
  const ba = column(table, "rhs_plus_BA");
  let worst = 0;
  for (let i = 0; i < lhs.length; i += 1) {
    worst = Math.max(worst, Math.abs(lhs[i] - ba[i]));
  }
  return worst;
}

/** Assemble the line-chart option from a parsed spin-3/2 sweep. */
export function buildSpin32Option(table: SweepTable): EChartsOption {
  const t = column(table, "t");
  return {
    animation: false,
    title: { text: "bound contributions vs t", left: "center", top: "2%" },
    grid: { left: "10%", right: "5%", top: "12%", bottom: "14%" },
    xAxis: { type: "value", name: "t", min: Math.min(...t), max: Math.max(...t) },
    yAxis: { type: "value", name: "value" },
    legend: { bottom: "1%" },
    series: SERIES.map(({ key, label, width, dash }) => ({
      type: "line" as const,
      name: label,
      showSymbol: false,
      lineStyle: { width, type: dash ?? "solid" },
      data: column(table, key).map((value, i) => [t[i], value]),
    })),
  };
}
