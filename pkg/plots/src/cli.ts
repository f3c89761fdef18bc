#!/usr/bin/env node
import { writeFileSync } from 'fs';
import { buildChart, renderSvg } from './chart';
import { parseCsvFile, SchemaError } from './csv';

function usage(): string {
  return 'usage: plot --csv PATH --out PATH [--rotated]';
}

export function run(argv: string[]): number {
  if (argv.length === 0 || argv[0] !== 'plot') {
    process.stderr.write(usage() + '\n');
    return 1;
  }
  let csvPath: string | undefined;
  let outPath: string | undefined;
  let rotated = false;
  const args = argv.slice(1);
  for (let i = 0; i < args.length; i++) {
    const arg = args[i];
    if (arg === '--csv') {
      csvPath = args[++i];
    } else if (arg === '--out') {
      outPath = args[++i];
    } else if (arg === '--rotated') {
      rotated = true;
    } else {
      process.stderr.write(`unknown argument ${arg}\n${usage()}\n`);
      return 1;
    }
  }
  if (!csvPath || !outPath) {
    process.stderr.write(usage() + '\n');
    return 1;
  }
  let rows;
  try {
    rows = parseCsvFile(csvPath);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  if (rows.length === 0) {
    process.stderr.write('warning: CSV has no data rows; writing an empty chart\n');
  }
  const chart = buildChart(rows, rotated);
  writeFileSync(outPath, renderSvg(chart));
  process.stdout.write(
    `wrote ${outPath}: ${chart.blueTotal} blue, ${chart.yellowTotal} yellow, ` +
      `${chart.bubbles.length} bubbles${rotated ? ' (rotated)' : ''}\n`,
  );
  return 0;
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
