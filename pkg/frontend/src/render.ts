/** Server-side SVG rendering of chart options. */

import * as echarts from "echarts";
import type { EChartsOption } from "echarts";

export function renderToSvg(option: EChartsOption, width = 1200, height = 480): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption(option);
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}
