/** Deterministic grouped-bar SVG: one panel per budget, alpha groups, series bars. */

import type { CellGroup } from "./aggregate.js";
import { budgets, SERIES_ORDER } from "./aggregate.js";

const SERIES_COLORS: Record<string, string> = {
    "ga": "#999999",
    "gga-s1": "#8ecae6",
    "gga-s2": "#1d6fa5",
    "ggma-s1": "#f4a261",
    "ggma-s2": "#c1121f",
};

const PANEL_WIDTH = 300;
const PANEL_HEIGHT = 240;
const MARGIN = { top: 46, right: 16, bottom: 46, left: 56 };
const BAR_GAP = 2;
const GROUP_PAD = 14;

function esc(text: string): string {
    return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function alphaLabel(alpha: number): string {
    const exponent = Math.log10(alpha);
    if (Number.isInteger(exponent)) {
        return `1e${exponent}`;
    }
    return String(alpha);
}

/** Render the aggregated groups for one metric into an SVG document. */
export function renderSvg(groups: CellGroup[], metric: string, title: string): string {
    const budgetList = budgets(groups);
    const panels = Math.max(budgetList.length, 1);
    const width = MARGIN.left + panels * PANEL_WIDTH + MARGIN.right;
    const height = MARGIN.top + PANEL_HEIGHT + MARGIN.bottom;
    const top = MARGIN.top;
    const bottom = MARGIN.top + PANEL_HEIGHT;

    const peak = Math.max(1e-12, ...groups.flatMap((g) => g.bars.map((b) => b.max)));
    const scale = PANEL_HEIGHT / (peak * 1.05);

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="11">`,
    );
    parts.push(`<title>${esc(title)}</title>`);
    parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
    parts.push(`<text x="${MARGIN.left}" y="18" font-size="14">${esc(title)}</text>`);

    // legend
    let legendX = MARGIN.left;
    for (const series of SERIES_ORDER) {
        parts.push(`<rect x="${legendX}" y="26" width="10" height="10" fill="${SERIES_COLORS[series]}"/>`);
        parts.push(`<text x="${legendX + 13}" y="35">${series}</text>`);
        legendX += 13 + 7 * series.length + 18;
    }

    // y axis
    parts.push(`<line x1="${MARGIN.left}" y1="${top}" x2="${MARGIN.left}" y2="${bottom}" stroke="black"/>`);
    for (let tick = 0; tick <= 4; tick++) {
        const value = (peak * 1.05 * tick) / 4;
        const y = bottom - value * scale;
        parts.push(`<line x1="${MARGIN.left - 4}" y1="${y}" x2="${MARGIN.left}" y2="${y}" stroke="black"/>`);
        parts.push(`<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">${value.toFixed(1)}</text>`);
    }
    parts.push(
        `<text x="14" y="${(top + bottom) / 2}" transform="rotate(-90 14 ${(top + bottom) / 2})" ` +
        `text-anchor="middle">${esc(metric)}</text>`,
    );

    budgetList.forEach((budget, panelIndex) => {
        const panelLeft = MARGIN.left + panelIndex * PANEL_WIDTH;
        const panelGroups = groups.filter((g) => g.budget === budget);
        parts.push(`<g data-panel="${budget}">`);
        parts.push(
            `<text x="${panelLeft + PANEL_WIDTH / 2}" y="${top - 6}" text-anchor="middle">B = ${budget}</text>`,
        );
        parts.push(`<line x1="${panelLeft}" y1="${bottom}" x2="${panelLeft + PANEL_WIDTH}" y2="${bottom}" stroke="black"/>`);
        const groupWidth = PANEL_WIDTH / Math.max(panelGroups.length, 1);
        panelGroups.forEach((group, groupIndex) => {
            const groupLeft = panelLeft + groupIndex * groupWidth + GROUP_PAD / 2;
            const innerWidth = groupWidth - GROUP_PAD;
            const barWidth = (innerWidth - BAR_GAP * (group.bars.length - 1)) / Math.max(group.bars.length, 1);
            parts.push(`<g data-group="${group.budget}|${group.alpha}">`);
            group.bars.forEach((bar, barIndex) => {
                const x = groupLeft + barIndex * (barWidth + BAR_GAP);
                const barHeight = bar.mean * scale;
                const y = bottom - barHeight;
                parts.push(
                    `<rect data-bar="1" data-series="${bar.series}" data-b="${group.budget}" ` +
                    `data-alpha="${group.alpha}" data-value="${bar.mean}" data-min="${bar.min}" ` +
                    `data-max="${bar.max}" x="${x}" y="${y}" width="${barWidth}" height="${barHeight}" ` +
                    `fill="${SERIES_COLORS[bar.series] ?? "#444444"}"/>`,
                );
                if (bar.max > bar.min) {
                    const cx = x + barWidth / 2;
                    parts.push(
                        `<line x1="${cx}" y1="${bottom - bar.max * scale}" x2="${cx}" ` +
                        `y2="${bottom - bar.min * scale}" stroke="black" stroke-width="1"/>`,
                    );
                }
            });
            parts.push(
                `<text x="${groupLeft + innerWidth / 2}" y="${bottom + 16}" text-anchor="middle">` +
                `${esc(alphaLabel(group.alpha))}</text>`,
            );
            parts.push("</g>");
        });
        parts.push("</g>");
    });
    if (budgetList.length === 0) {
        parts.push(
            `<line x1="${MARGIN.left}" y1="${bottom}" x2="${MARGIN.left + PANEL_WIDTH}" y2="${bottom}" stroke="black"/>`,
        );
        parts.push(`<text x="${MARGIN.left + PANEL_WIDTH / 2}" y="${(top + bottom) / 2}" text-anchor="middle" fill="#777777">no rows</text>`);
    }
    parts.push(`<text x="${width / 2}" y="${height - 10}" text-anchor="middle">alpha</text>`);
    parts.push("</svg>");
    return parts.join("\n") + "\n";
}
