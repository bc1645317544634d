/** Standalone figure generator: --csv <path> --metric <name> --out <path|dir>.

Exit codes: 0 rendered, 1 schema mismatch, 2 usage errors, 3 unreadable file. */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { basename, extname, join } from "node:path";

import { aggregate, METRICS, type Metric } from "./aggregate.js";
import { parseRunRecords, SchemaError } from "./csv.js";
import { renderSvg } from "./svg.js";

interface Args {
    csv: string;
    metric: Metric;
    out: string;
}

function parseArgs(argv: string[]): Args {
    const values = new Map<string, string>();
    for (let i = 0; i < argv.length; i += 2) {
        const flag = argv[i];
        const value = argv[i + 1];
        if (!flag.startsWith("--") || value === undefined) {
            throw new UsageError(`expected --flag value pairs, got ${argv.slice(i).join(" ")}`);
        }
        values.set(flag.slice(2), value);
    }
    const csv = values.get("csv");
    const metric = values.get("metric");
    if (csv === undefined || metric === undefined) {
        throw new UsageError("--csv and --metric are required");
    }
    if (!(METRICS as readonly string[]).includes(metric)) {
        throw new UsageError(`--metric must be one of ${METRICS.join(", ")}, got ${metric}`);
    }
    return { csv, metric: metric as Metric, out: values.get("out") ?? "." };
}

class UsageError extends Error {}

/** Output path: explicit .svg file, or <graph>_<metric>.svg inside a directory. */
export function outputPath(out: string, graph: string, metric: string): string {
    if (extname(out).toLowerCase() === ".svg") {
        return out;
    }
    return join(out, `${graph}_${metric}.svg`);
}

export function runCli(argv: string[]): number {
    let args: Args;
    try {
        args = parseArgs(argv);
    } catch (error) {
        console.error(`usage error: ${(error as Error).message}`);
        return 2;
    }
    let text: string;
    try {
        text = readFileSync(args.csv, "utf-8");
    } catch (error) {
        console.error(`io error: ${(error as Error).message}`);
        return 3;
    }
    try {
        const rows = parseRunRecords(text);
        const groups = aggregate(rows, args.metric);
        const graph = rows.length > 0 ? rows[0].graph : "empty";
        const svg = renderSvg(groups, args.metric, `${basename(args.csv)}: ${args.metric}`);
        const target = outputPath(args.out, graph, args.metric);
        if (extname(args.out).toLowerCase() !== ".svg") {
            mkdirSync(args.out, { recursive: true });
        }
        writeFileSync(target, svg, "utf-8");
        console.log(`wrote ${target}`);
        return 0;
    } catch (error) {
        if (error instanceof SchemaError) {
            console.error(`schema error: ${error.message}`);
            return 1;
        }
        console.error(`error: ${(error as Error).message}`);
        return 1;
    }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("cli.ts")) {
    process.exit(runCli(process.argv.slice(2)));
}
