import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { aggregate } from "../src/aggregate.js";
import { parseRunRecords } from "../src/csv.js";
import { renderSvg } from "../src/svg.js";

const ROWS = parseRunRecords(readFileSync(join(__dirname, "fixtures", "mcp_grid.csv"), "utf-8"));

function count(haystack: string, needle: RegExp): number {
    return (haystack.match(needle) ?? []).length;
}

describe("renderSvg", () => {
    it("lays out panels x alpha groups x series bars", () => {
        const svg = renderSvg(aggregate(ROWS, "f_value"), "f_value", "t");
        expect(count(svg, /data-panel="/g)).toBe(4);
        expect(count(svg, /data-group="/g)).toBe(12);
        expect(count(svg, /data-bar="1"/g)).toBe(60);
    });

    it("bars carry the exact mean as their datum", () => {
        const groups = aggregate(ROWS, "solution_size");
        const svg = renderSvg(groups, "solution_size", "t");
        for (const group of groups) {
            for (const bar of group.bars) {
                expect(svg).toContain(
                    `data-series="${bar.series}" data-b="${group.budget}" data-alpha="${group.alpha}" ` +
                    `data-value="${bar.mean}"`,
                );
            }
        }
    });

    it("is byte-stable across re-renders", () => {
        const groups = aggregate(ROWS, "f_value");
        expect(renderSvg(groups, "f_value", "t")).toBe(renderSvg(groups, "f_value", "t"));
    });

    it("renders empty axes for zero rows", () => {
        const svg = renderSvg([], "f_value", "t");
        expect(svg).toContain("<svg");
        expect(svg).toContain("no rows");
        expect(count(svg, /data-bar="1"/g)).toBe(0);
    });
});
