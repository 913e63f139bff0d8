/** CLI: render a spin-1 sweep CSV to an SVG figure. */

import fs from "node:fs";

import { SchemaMismatchError, parseSweepTable } from "./csv.js";
import { renderToSvg } from "./render.js";
import { SPIN1_COLUMNS, buildSpin1Option, extraTermPeak } from "./spin1.js";

function main(): number {
  const [csvPath, outPath] = process.argv.slice(2);
  if (!csvPath || !outPath) {
    console.error("usage: plot-spin1 <sweep.csv> <out.svg>");
    return 2;
  }
  let text: string;
  try {
    text = fs.readFileSync(csvPath, "utf-8");
  } catch (error) {
    console.error(`cannot read ${csvPath}: ${error}`);
    return 2;
  }
  try {
    const table = parseSweepTable(text, SPIN1_COLUMNS);
    const svg = renderToSvg(buildSpin1Option(table));
    fs.writeFileSync(outPath, svg, "utf-8");
    const peak = extraTermPeak(table);
    console.log(
      `wrote ${outPath}: max extra term ${peak.extra.toPrecision(6)} at ` +
        `|z| = ${peak.absZ.toPrecision(4)}`,
    );
    return 0;
  } catch (error) {
    if (error instanceof SchemaMismatchError) {
      console.error(`schema mismatch: ${error.message}`);
      return 1;
    }
    throw error;
  }
}

process.exit(main());
