import { execFileSync } from "node:child_process";
import fs from "node:fs";
import os from "node:os";
import path from "node:path";

import { describe, expect, it } from "vitest";

const DIST = path.join(__dirname, "..", "dist");
const FIXTURES = path.join(__dirname, "..", "fixtures");

function runScript(script: string, args: string[]): string {
  return execFileSync("node", [path.join(DIST, script), ...args], {
    encoding: "utf-8",
  });
}

function tmpFile(name: string): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "wvbounds-plots-"));
  return path.join(dir, name);
}

describe("plot CLI scripts", () => {
  it("renders the spin-1 figure end to end", () => {
    const out = tmpFile("fig2.svg");
    const stdout = runScript("plotSpin1.js", [
      path.join(FIXTURES, "fig2_res50.csv"),
      out,
    ]);
    expect(stdout).toContain("max extra term");
    const svg = fs.readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
  });

  it("renders the spin-3/2 figure end to end", () => {
    const out = tmpFile("fig3.svg");
    const stdout = runScript("plotSpin32.js", [
      path.join(FIXTURES, "fig3_steps121.csv"),
      out,
    ]);
    expect(stdout).toContain("coincides with the variance");
    expect(fs.readFileSync(out, "utf-8")).toContain("</svg>");
  });

  it("exits 1 on a schema mismatch", () => {
    const broken = tmpFile("broken.csv");
    fs.writeFileSync(broken, "not,a,sweep\n1,2,3\n", "utf-8");
    let status: number | undefined;
    try {
      runScript("plotSpin1.js", [broken, tmpFile("out.svg")]);
    } catch (error) {
      status = (error as { status?: number }).status;
      expect(String((error as { stderr?: string }).stderr ?? error)).toContain(
        "schema mismatch",
      );
    }
    expect(status).toBe(1);
  });

  it("exits 2 without arguments", () => {
    let status: number | undefined;
    try {
      runScript("plotSpin32.js", []);
    } catch (error) {
      status = (error as { status?: number }).status;
    }
    expect(status).toBe(2);
  });
});
