import { SampleRow } from './csv';

export type BubbleColor = 'blue' | 'yellow';

export interface Bubble {
  x: number;
  y: number;
  color: BubbleColor;
  count: number;
}

export interface Chart {
  bubbles: Bubble[];
  blueTotal: number;
  yellowTotal: number;
  rotated: boolean;
  xLabel: string;
  yLabel: string;
}

/**
 * Blue: the plain integrality bound already reached the symbol-length cap,
 * or the operation-refined bound added nothing.  Yellow: the refined bound
 * strictly improved on the plain one.  A pure function of the three bound
 * columns so it can be recounted from the CSV independently.
 */
export function colorFor(row: SampleRow): BubbleColor {
  if (row.djpBound === row.cap) {
    return 'blue';
  }
  if (row.refinedBound !== null && row.refinedBound > row.djpBound) {
    return 'yellow';
  }
  return 'blue';
}

export function bestBound(row: SampleRow): number {
  let best = row.djpBound;
  if (row.refinedBound !== null && row.refinedBound > best) {
    best = row.refinedBound;
  }
  if (row.hotchkissBound !== null && row.hotchkissBound > best) {
    best = row.hotchkissBound;
  }
  return best;
}

export function buildChart(rows: SampleRow[], rotated: boolean): Chart {
  const groups = new Map<string, Bubble>();
  let blueTotal = 0;
  let yellowTotal = 0;
  for (const row of rows) {
    const color = colorFor(row);
    if (color === 'blue') {
      blueTotal += 1;
    } else {
      yellowTotal += 1;
    }
    const weight = row.hammingWeight;
    const bound = bestBound(row);
    const x = rotated ? bound : weight;
    const y = rotated ? weight : bound;
    const key = `${x}|${y}|${color}`;
    const bubble = groups.get(key);
    if (bubble) {
      bubble.count += 1;
    } else {
      groups.set(key, { x, y, color, count: 1 });
    }
  }
  return {
    bubbles: [...groups.values()].sort((a, b) => a.x - b.x || a.y - b.y),
    blueTotal,
    yellowTotal,
    rotated,
    xLabel: rotated ? 'index lower bound' : 'Hamming weight',
    yLabel: rotated ? 'Hamming weight' : 'index lower bound',
  };
}

const WIDTH = 640;
const HEIGHT = 480;
const MARGIN = 56;
const FILL: Record<BubbleColor, string> = { blue: '#3a6fd8', yellow: '#e8c21a' };

function escapeXml(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function renderSvg(chart: Chart): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  const x0 = MARGIN;
  const x1 = WIDTH - MARGIN;
  const y0 = HEIGHT - MARGIN;
  const y1 = MARGIN;
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`);
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="14">${escapeXml(chart.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="14" transform="rotate(-90 16 ${(y0 + y1) / 2})">${escapeXml(chart.yLabel)}</text>`,
  );
  if (chart.bubbles.length === 0) {
    parts.push(
      `<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" font-size="16" fill="#666">no data</text>`,
    );
  } else {
    const xs = chart.bubbles.map((b) => b.x);
    const ys = chart.bubbles.map((b) => b.y);
    const xMin = Math.min(...xs, 0);
    const xMax = Math.max(...xs, xMin + 1);
    const yMin = Math.min(...ys, 0);
    const yMax = Math.max(...ys, yMin + 1);
    const sx = (v: number) => x0 + ((v - xMin) / (xMax - xMin)) * (x1 - x0);
    const sy = (v: number) => y0 - ((v - yMin) / (yMax - yMin)) * (y0 - y1);
    const maxCount = Math.max(...chart.bubbles.map((b) => b.count));
    for (const b of chart.bubbles) {
      const r = 5 + 14 * Math.sqrt(b.count / maxCount);
      parts.push(
        `<circle cx="${sx(b.x).toFixed(1)}" cy="${sy(b.y).toFixed(1)}" r="${r.toFixed(1)}" ` +
          `fill="${FILL[b.color]}" fill-opacity="0.75" stroke="#222" data-count="${b.count}" data-color="${b.color}"/>`,
      );
    }
    // light tick labels on the integer grid
    for (let v = Math.ceil(xMin); v <= xMax; v++) {
      parts.push(
        `<text x="${sx(v).toFixed(1)}" y="${y0 + 16}" text-anchor="middle" font-size="10" fill="#555">${v}</text>`,
      );
    }
    for (let v = Math.ceil(yMin); v <= yMax; v++) {
      parts.push(
        `<text x="${x0 - 8}" y="${(sy(v) + 3).toFixed(1)}" text-anchor="end" font-size="10" fill="#555">${v}</text>`,
      );
    }
  }
  parts.push(
    `<text x="${x1}" y="${y1 - 8}" text-anchor="end" font-size="13" id="legend">` +
      `blue (${chart.blueTotal}) / yellow (${chart.yellowTotal})</text>`,
  );
  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
