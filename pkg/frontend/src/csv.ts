// The CLI pins its CSV dialect (comma separator, '.' decimal point, LF line
// endings, no quoting), so parsing is a pair of splits — no csv library
// needed for files we produce ourselves.

/** Split pinned-dialect CSV text into rows of cell strings. */
export function parseCsv(text: string): string[][] {
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  return lines.map((line) => line.split(","));
}

/**
 * Numeric cell: "" means the value was absent (a metric the sequence was
 * too short for), "nan" parses to NaN, everything else is a plain float.
 */
export function numericCell(cell: string): number | null {
  if (cell === "") return null;
  return Number(cell);
}
