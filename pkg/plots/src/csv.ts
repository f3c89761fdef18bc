import { readFileSync } from 'fs';

export const REQUIRED_COLUMNS = [
  'id',
  'g',
  'period',
  'canonical_form',
  'hamming_weight',
  'symbol_length',
  'djp_bound',
  'refined_bound',
  'hotchkiss_bound',
  'cap',
  'elapsed_ms',
  'seed',
  'sample_index',
] as const;

export interface SampleRow {
  id: string;
  g: number;
  period: number;
  canonicalForm: string;
  hammingWeight: number;
  symbolLength: number;
  djpBound: number;
  refinedBound: number | null;
  hotchkissBound: number | null;
  cap: number;
  sampleIndex: number;
}

export class SchemaError extends Error {}

function parseBound(value: string): number | null {
  if (value === 'skipped' || value === 'inconclusive') {
    return null;
  }
  const n = Number(value);
  if (!Number.isFinite(n)) {
    throw new SchemaError(`bound value ${JSON.stringify(value)} is not a number`);
  }
  return n;
}

export function parseCsvText(text: string): SampleRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError('empty file: no header row');
  }
  const header = lines[0].split(',');
  for (const col of REQUIRED_COLUMNS) {
    if (!header.includes(col)) {
      throw new SchemaError(`missing column ${JSON.stringify(col)}`);
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const rows: SampleRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(',');
    const cell = (name: string) => cells[index.get(name)!] ?? '';
    const djp = parseBound(cell('djp_bound'));
    if (djp === null) {
      throw new SchemaError(`djp_bound must be numeric, got ${cell('djp_bound')}`);
    }
    rows.push({
      id: cell('id'),
      g: Number(cell('g')),
      period: Number(cell('period')),
      canonicalForm: cell('canonical_form'),
      hammingWeight: Number(cell('hamming_weight')),
      symbolLength: Number(cell('symbol_length')),
      djpBound: djp,
      refinedBound: parseBound(cell('refined_bound')),
      hotchkissBound: parseBound(cell('hotchkiss_bound')),
      cap: Number(cell('cap')),
      sampleIndex: Number(cell('sample_index')),
    });
  }
  return rows;
}

export function parseCsvFile(path: string): SampleRow[] {
  return parseCsvText(readFileSync(path, 'utf8'));
}
