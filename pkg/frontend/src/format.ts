// Number rendering, ported 1:1 from the service's formatting module so the
// layer table strings match the CLI table character for character.

const UNITS: [number, string][] = [
  [1e18, "E"],
  [1e15, "P"],
  [1e12, "T"],
  [1e9, "G"],
  [1e6, "M"],
  [1e3, "K"],
];

/** Op or byte counts: 69G, 302M, 328K. */
export function formatCount(value: number): string {
  if (value < 0) return "-" + formatCount(-value);
  for (const [scale, suffix] of UNITS) {
    if (value >= scale) return `${Math.floor(value / scale + 0.5)}${suffix}`;
  }
  return String(Math.floor(value + 0.5));
}

/** Arithmetic intensity: integer above 100, else two decimals. */
export function formatIntensity(value: number): string {
  if (value >= 100) return String(Math.floor(value + 0.5));
  const text = value.toFixed(2).replace(/0+$/, "").replace(/\.$/, "");
  return text || "0";
}

/** Seconds with an engineering unit, three significant digits. */
export function formatSeconds(value: number): string {
  const scales: [number, string][] = [
    [1.0, "s"],
    [1e-3, "ms"],
    [1e-6, "us"],
    [1e-9, "ns"],
  ];
  for (const [scale, suffix] of scales) {
    if (value >= scale) return `${Number((value / scale).toPrecision(3))}${suffix}`;
  }
  return `${Number(value.toPrecision(3))}s`;
}
