/** Seed aggregation: one bar per (B, alpha, series) with min-max whiskers. */

import type { RunRow } from "./csv.js";

export const METRICS = ["f_value", "solution_size"] as const;
export type Metric = (typeof METRICS)[number];

/** Fixed presentation order of the algorithm-strategy series. */
export const SERIES_ORDER = ["ga", "gga-s1", "gga-s2", "ggma-s1", "ggma-s2"] as const;

export interface Bar {
    series: string;
    mean: number;
    min: number;
    max: number;
    seeds: number;
}

export interface CellGroup {
    budget: number;
    alpha: number;
    bars: Bar[];
}

export function seriesKey(row: RunRow): string {
    return row.strategy === "-" ? row.algorithm : `${row.algorithm}-${row.strategy}`;
}

/** Group rows into per-(B, alpha) cells, averaging the metric over seeds. */
export function aggregate(rows: RunRow[], metric: Metric): CellGroup[] {
    const cells = new Map<string, Map<string, number[]>>();
    for (const row of rows) {
        const cellId = `${row.B}|${row.alpha}`;
        let bySeries = cells.get(cellId);
        if (bySeries === undefined) {
            bySeries = new Map();
            cells.set(cellId, bySeries);
        }
        const key = seriesKey(row);
        let values = bySeries.get(key);
        if (values === undefined) {
            values = [];
            bySeries.set(key, values);
        }
        values.push(row[metric]);
    }
    const groups: CellGroup[] = [];
    for (const [cellId, bySeries] of cells) {
        const [budget, alpha] = cellId.split("|").map(Number);
        const bars: Bar[] = [];
        for (const series of SERIES_ORDER) {
            const values = bySeries.get(series);
            if (values === undefined) {
                continue;
            }
            const mean = values.reduce((a, b) => a + b, 0) / values.length;
            bars.push({
                series,
                mean,
                min: Math.min(...values),
                max: Math.max(...values),
                seeds: values.length,
            });
        }
        groups.push({ budget, alpha, bars });
    }
    groups.sort((a, b) => a.budget - b.budget || b.alpha - a.alpha);
    return groups;
}

export function budgets(groups: CellGroup[]): number[] {
    return [...new Set(groups.map((g) => g.budget))].sort((a, b) => a - b);
}
