/** Strict parsing of the numeric sweep CSVs produced by the wvbounds CLI. */

export class SchemaMismatchError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatchError";
  }
}

export interface SweepTable {
  columns: string[];
  rows: number[][];
}

/**
 * Parse a sweep CSV whose header must match the expected columns exactly and
 * whose cells must all be finite numbers.
 */
export function parseSweepTable(
  text: string,
  expectedColumns: readonly string[],
): SweepTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatchError("empty CSV");
  }
  const columns = lines[0].split(",");
  const headerMatches =
    columns.length === expectedColumns.length &&
    expectedColumns.every((name, i) => columns[i] === name);
  if (!headerMatches) {
    throw new SchemaMismatchError(
      `header mismatch: expected "${expectedColumns.join(",")}", got "${lines[0]}"`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaMismatchError("CSV has a header but no data rows");
  }
  const rows = lines.slice(1).map((line, index) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== columns.length || cells.some((v) => !Number.isFinite(v))) {
      throw new SchemaMismatchError(
        `row ${index + 2}: expected ${columns.length} finite numeric cells`,
      );
    }
    return cells;
  });
  return { columns: [...columns], rows };
}

/** Extract one column by name. */
export function column(table: SweepTable, name: string): number[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new SchemaMismatchError(`no column named "${name}"`);
  }
  return table.rows.map((row) => row[index]);
}
