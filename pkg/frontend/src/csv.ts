/**
 * CSV loading with strict schema checks against the documented artifact
 * formats. Inputs are read-only; a schema mismatch reports the exact
 * column diff so the producing run can be identified.
 */

import * as fs from "node:fs";
import Papa from "papaparse";

export interface CsvTable {
  columns: string[];
  rows: Record<string, string | number>[];
}

export class SchemaError extends Error {
  constructor(
    message: string,
    public readonly missing: string[],
    public readonly found: string[],
  ) {
    super(message);
    this.name = "SchemaError";
  }
}

export function loadCsv(path: string): CsvTable {
  const text = fs.readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string | number>>(text, {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${path}: CSV parse error at row ${first.row}: ${first.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  return { columns, rows: parsed.data };
}

/** Throw a SchemaError (with diff) unless every expected column is present. */
export function requireColumns(
  table: CsvTable,
  expected: string[],
  path: string,
): void {
  const missing = expected.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${path}: schema mismatch\n  missing columns: ${missing.join(", ")}\n` +
        `  found columns:   ${table.columns.join(", ")}`,
      missing,
      table.columns,
    );
  }
}

export function requireRows(table: CsvTable, path: string): void {
  if (table.rows.length === 0) {
    throw new Error(`${path}: no data rows; refusing to render an empty plot`);
  }
}

/** Column as numbers; "nan" strings become NaN, which callers may filter. */
export function numericColumn(table: CsvTable, name: string): number[] {
  return table.rows.map((row) => {
    const v = row[name];
    return typeof v === "number" ? v : Number(v);
  });
}
