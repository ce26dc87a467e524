/**
 * Explorer UI: loads the design bundle from /api/bundle (or a local file),
 * plots the per-alpha Pareto fronts with stepwise segments, and applies
 * user constraints live.  The report download reproduces the CLI
 * selection.json layout so both can be diffed directly.
 */

import {
  Bundle,
  Constraints,
  FrontPoint,
  Policy,
  buildReport,
  stepwiseVertices,
  validateBundle,
} from "./core.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PLOT_W = 640;
const PLOT_H = 420;
const MARGIN = { left: 56, right: 16, top: 16, bottom: 42 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

let bundle: Bundle | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function numberOrNull(id: string): number | null {
  const raw = byId<HTMLInputElement>(id).value.trim();
  if (raw === "") return null;
  const v = Number(raw);
  return Number.isFinite(v) ? v : null;
}

function readConstraints(): Constraints {
  return {
    C_max: numberOrNull("c-max"),
    rho_min: numberOrNull("rho-min"),
    omega_c_min_hz: numberOrNull("wc-min"),
    k_e_eval: numberOrNull("ke-eval") ?? 610,
  };
}

function readPolicy(): { policy: Policy; weight: number | null } {
  const policy = byId<HTMLSelectElement>("policy").value as Policy;
  const weight = policy === "by_weight" ? numberOrNull("policy-weight") : null;
  return { policy, weight };
}

interface Scale {
  x: (rho: number) => number;
  y: (c: number) => number;
}

function makeScale(points: FrontPoint[]): Scale {
  const rhos = points.map((p) => p.rho);
  const cs = points.map((p) => p.C);
  const x0 = Math.min(...rhos);
  const x1 = Math.max(...rhos);
  const y0 = Math.min(...cs);
  const y1 = Math.max(...cs);
  const padX = (x1 - x0 || 1) * 0.05;
  const padY = (y1 - y0 || 1) * 0.05;
  const innerW = PLOT_W - MARGIN.left - MARGIN.right;
  const innerH = PLOT_H - MARGIN.top - MARGIN.bottom;
  return {
    x: (rho) =>
      MARGIN.left + ((rho - x0 + padX) / (x1 - x0 + 2 * padX)) * innerW,
    y: (c) =>
      MARGIN.top + innerH - ((c - y0 + padY) / (y1 - y0 + 2 * padY)) * innerH,
  };
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function drawFronts(b: Bundle, cons: Constraints): void {
  const svg = byId<HTMLElement>("front-plot");
  svg.innerHTML = "";
  const allPoints = b.fronts.flatMap((f) => f.points);
  if (allPoints.length === 0) return;
  const scale = makeScale(allPoints);

  svg.appendChild(
    el("rect", {
      x: String(MARGIN.left),
      y: String(MARGIN.top),
      width: String(PLOT_W - MARGIN.left - MARGIN.right),
      height: String(PLOT_H - MARGIN.top - MARGIN.bottom),
      fill: "none",
      stroke: "#888",
    }),
  );

  const report = buildReport(b, cons);
  b.fronts.forEach((front, idx) => {
    const color = COLORS[idx % COLORS.length];
    const verts = stepwiseVertices(front.points);
    if (verts.length > 1) {
      const d = verts
        .map(([rho, c], i) => `${i === 0 ? "M" : "L"}${scale.x(rho)},${scale.y(c)}`)
        .join(" ");
      svg.appendChild(
        el("path", { d, fill: "none", stroke: color, "stroke-width": "1.5" }),
      );
    }
    const chosen = report.per_alpha[idx]?.chosen;
    for (const p of front.points) {
      const feasibleHere =
        report.per_alpha[idx]?.eliminated_counts &&
        "by_C_max" in report.per_alpha[idx].eliminated_counts;
      const circle = el("circle", {
        cx: String(scale.x(p.rho)),
        cy: String(scale.y(p.C)),
        r: chosen && p.m_F === chosen.m_F && p.b_F === chosen.b_F ? "6" : "3",
        fill: color,
        "fill-opacity": feasibleHere ? "0.9" : "0.4",
      });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent =
        `alpha=${front.alpha} m_F=${p.m_F} b_F=${p.b_F}\n` +
        `C=${p.C.toFixed(3)} rho=${p.rho.toFixed(3)}` +
        (p.omega_c_hz !== null ? ` wc=${p.omega_c_hz.toFixed(3)} Hz` : "");
      circle.appendChild(title);
      svg.appendChild(circle);
    }
  });

  svg.appendChild(
    el("text", {
      x: String(PLOT_W / 2),
      y: String(PLOT_H - 8),
      "text-anchor": "middle",
      "font-size": "12",
    }),
  ).textContent = "robustness margin rho";
  const ylabel = el("text", {
    x: "14",
    y: String(PLOT_H / 2),
    "text-anchor": "middle",
    "font-size": "12",
    transform: `rotate(-90 14 ${PLOT_H / 2})`,
  });
  ylabel.textContent = "transparency cost C";
  svg.appendChild(ylabel);
}

function renderCounts(b: Bundle, cons: Constraints): void {
  const { policy, weight } = readPolicy();
  const report = buildReport(b, cons, policy, weight);
  const tbody = byId<HTMLElement>("counts-body");
  tbody.innerHTML = "";
  for (const entry of report.per_alpha) {
    const row = document.createElement("tr");
    const counts = entry.eliminated_counts as Record<string, number>;
    const cells = [
      String(entry.alpha),
      String(counts.total ?? 0),
      String(counts.feasible ?? 0),
      entry.chosen
        ? `m_F=${entry.chosen.m_F}, b_F=${entry.chosen.b_F}, C=${entry.chosen.C.toFixed(2)}`
        : "none",
    ];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      row.appendChild(td);
    }
    tbody.appendChild(row);
  }
  const summary = byId<HTMLElement>("chosen-summary");
  summary.textContent = report.chosen
    ? `Recommended: alpha=${report.chosen.alpha}, m_F=${report.chosen.m_F}, ` +
      `b_F=${report.chosen.b_F} (C=${report.chosen.C.toFixed(2)}, ` +
      `rho=${report.chosen.rho.toFixed(3)})`
    : "No design satisfies the active constraints.";
}

function refresh(): void {
  if (!bundle) return;
  const cons = readConstraints();
  drawFronts(bundle, cons);
  renderCounts(bundle, cons);
}

function downloadReport(): void {
  if (!bundle) return;
  const { policy, weight } = readPolicy();
  const report = buildReport(bundle, readConstraints(), policy, weight);
  const blob = new Blob([JSON.stringify(report, null, 2) + "\n"], {
    type: "application/json",
  });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "selection.json";
  a.click();
  URL.revokeObjectURL(a.href);
}

function setStatus(text: string): void {
  byId<HTMLElement>("status").textContent = text;
}

async function loadFromServer(): Promise<void> {
  try {
    const resp = await fetch("/api/bundle");
    if (!resp.ok) throw new Error(`HTTP ${resp.status}`);
    bundle = validateBundle(await resp.json());
    setStatus(`Bundle loaded: ${bundle.fronts.length} fronts.`);
    refresh();
  } catch (err) {
    setStatus(`No server bundle (${String(err)}); load a file instead.`);
  }
}

function loadFromFile(file: File): void {
  const reader = new FileReader();
  reader.onload = () => {
    try {
      bundle = validateBundle(JSON.parse(String(reader.result)));
      setStatus(`Bundle loaded from ${file.name}.`);
      refresh();
    } catch (err) {
      setStatus(`Invalid bundle: ${String(err)}`);
    }
  };
  reader.readAsText(file);
}

export function init(): void {
  for (const id of ["c-max", "rho-min", "wc-min", "ke-eval", "policy", "policy-weight"]) {
    byId<HTMLElement>(id).addEventListener("input", refresh);
  }
  byId<HTMLElement>("download").addEventListener("click", downloadReport);
  byId<HTMLInputElement>("bundle-file").addEventListener("change", (ev) => {
    const input = ev.target as HTMLInputElement;
    if (input.files && input.files[0]) loadFromFile(input.files[0]);
  });
  void loadFromServer();
}

if (typeof document !== "undefined" && document.getElementById("front-plot")) {
  init();
}
