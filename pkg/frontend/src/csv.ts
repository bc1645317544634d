/** Experiment CSV ingestion against the RunRecord schema. */

export const RUN_RECORD_COLUMNS = [
    "problem",
    "graph",
    "algorithm",
    "strategy",
    "B",
    "alpha",
    "dispersion_mode",
    "seed",
    "f_value",
    "solution_size",
    "surrogate",
    "runtime_ms",
    "mc_violation_rate",
] as const;

export interface RunRow {
    problem: string;
    graph: string;
    algorithm: string;
    strategy: string;
    B: number;
    alpha: number;
    dispersion_mode: string;
    seed: number;
    f_value: number;
    solution_size: number;
    surrogate: number;
    runtime_ms: number;
    mc_violation_rate: number;
}

export class SchemaError extends Error {
    readonly missing: string[];

    constructor(missing: string[]) {
        super(`csv is missing required column(s): ${missing.join(", ")}`);
        this.missing = missing;
    }
}

const NUMERIC: ReadonlySet<string> = new Set([
    "B", "alpha", "seed", "f_value", "solution_size", "surrogate", "runtime_ms", "mc_violation_rate",
]);

/** Parse RunRecord CSV text (comma-separated, never quoted). */
export function parseRunRecords(text: string): RunRow[] {
    const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
    if (lines.length === 0) {
        throw new SchemaError([...RUN_RECORD_COLUMNS]);
    }
    const header = lines[0].split(",");
    const missing = RUN_RECORD_COLUMNS.filter((c) => !header.includes(c));
    if (missing.length > 0) {
        throw new SchemaError(missing);
    }
    const index = new Map(header.map((name, i) => [name, i]));
    return lines.slice(1).map((line, rowNum) => {
        const parts = line.split(",");
        const row: Record<string, string | number> = {};
        for (const column of RUN_RECORD_COLUMNS) {
            const raw = parts[index.get(column)!];
            if (raw === undefined) {
                throw new Error(`row ${rowNum + 1}: too few fields`);
            }
            if (NUMERIC.has(column)) {
                const value = Number(raw);
                if (Number.isNaN(value)) {
                    throw new Error(`row ${rowNum + 1}: column ${column} is not a number: ${raw}`);
                }
                row[column] = value;
            } else {
                row[column] = raw;
            }
        }
        return row as unknown as RunRow;
    });
}
