export const SVG_NS = "http://www.w3.org/2000/svg";

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, String(value));
  }
  return node;
}

export function clearNode(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

/** Plain linear map; a degenerate domain pins everything to the middle
 * of the range instead of dividing by zero. */
export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): (x: number) => number {
  const span = d1 - d0;
  if (span === 0) return () => (r0 + r1) / 2;
  return (x) => r0 + ((x - d0) / span) * (r1 - r0);
}

/** Nearest-rank percentile of a non-empty sample, p in [0, 1]. */
export function percentile(values: number[], p: number): number {
  if (values.length === 0) throw new Error("percentile of empty sample");
  const sorted = [...values].sort((a, b) => a - b);
  const rank = Math.max(1, Math.ceil(p * sorted.length));
  return sorted[rank - 1] as number;
}
