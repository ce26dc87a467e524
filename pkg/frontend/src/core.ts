/**
 * Pure explorer logic: bundle validation, constraint filtering and
 * selection-report construction.
 *
 * Everything here mirrors the phrictl CLI byte for byte at the JSON level,
 * so the counts and reports shown in the UI can be compared 1:1 with the
 * artifacts the CLI writes.  No DOM access in this module.
 */

export interface FrontPoint {
  alpha: number;
  m_F: number;
  b_F: number;
  C: number;
  rho: number;
  C_n: number;
  rho_n: number;
  w: number | null;
  omega_c_hz: number | null;
  omega_c_saturated: boolean;
}

export interface Front {
  alpha: number;
  C_max: number | null;
  rho_max: number | null;
  points: FrontPoint[];
  empty?: boolean;
}

export interface MapSlice {
  alpha: number;
  kind: "transparency" | "robustness";
  m_F: number[];
  b_F: number[];
  values: (number | null)[][];
}

export interface Bundle {
  version: string;
  config: Record<string, unknown>;
  fronts: Front[];
  maps: MapSlice[];
  selection: Record<string, unknown>;
}

export interface Constraints {
  C_max: number | null;
  rho_min: number | null;
  omega_c_min_hz: number | null;
  k_e_eval: number;
}

export type Policy = "min_C" | "max_rho" | "by_weight";

export interface EliminationCounts {
  total: number;
  by_C_max: number;
  by_rho_min: number;
  by_omega_c_min: number;
  feasible: number;
}

export interface PerAlphaEntry {
  alpha: number;
  chosen: FrontPoint | null;
  eliminated_counts: EliminationCounts | { total: 0; feasible: 0 };
}

export interface SelectionReport {
  constraints: Constraints;
  policy: Policy;
  per_alpha: PerAlphaEntry[];
  chosen: FrontPoint | null;
}

export class BundleError extends Error {}

const SUPPORTED_VERSION = "1";

function isNumberOrNull(v: unknown): v is number | null {
  return v === null || typeof v === "number";
}

function checkPoint(p: unknown, where: string): FrontPoint {
  if (typeof p !== "object" || p === null) {
    throw new BundleError(`${where}: point is not an object`);
  }
  const rec = p as Record<string, unknown>;
  for (const key of ["alpha", "m_F", "b_F", "C", "rho", "C_n", "rho_n"]) {
    if (typeof rec[key] !== "number") {
      throw new BundleError(`${where}: point field ${key} is not a number`);
    }
  }
  if (!isNumberOrNull(rec.w ?? null) || !isNumberOrNull(rec.omega_c_hz ?? null)) {
    throw new BundleError(`${where}: bad w / omega_c_hz`);
  }
  return rec as unknown as FrontPoint;
}

function checkFront(f: unknown, index: number): Front {
  if (typeof f !== "object" || f === null) {
    throw new BundleError(`fronts[${index}] is not an object`);
  }
  const rec = f as Record<string, unknown>;
  if (typeof rec.alpha !== "number" || !Array.isArray(rec.points)) {
    throw new BundleError(`fronts[${index}] missing alpha or points`);
  }
  rec.points.forEach((p, i) => checkPoint(p, `fronts[${index}].points[${i}]`));
  const pts = rec.points as FrontPoint[];
  for (let i = 1; i < pts.length; i++) {
    if (!(pts[i].rho > pts[i - 1].rho && pts[i].C > pts[i - 1].C)) {
      throw new BundleError(
        `fronts[${index}]: rho and C must be strictly increasing`,
      );
    }
  }
  return rec as unknown as Front;
}

export function validateBundle(data: unknown): Bundle {
  if (typeof data !== "object" || data === null) {
    throw new BundleError("bundle is not a JSON object");
  }
  const rec = data as Record<string, unknown>;
  for (const key of ["version", "config", "fronts", "maps", "selection"]) {
    if (!(key in rec)) throw new BundleError(`bundle missing key ${key}`);
  }
  if (rec.version !== SUPPORTED_VERSION) {
    throw new BundleError(`unsupported bundle version ${String(rec.version)}`);
  }
  if (!Array.isArray(rec.fronts) || !Array.isArray(rec.maps)) {
    throw new BundleError("fronts and maps must be arrays");
  }
  rec.fronts.forEach((f, i) => checkFront(f, i));
  for (const [i, m] of (rec.maps as unknown[]).entries()) {
    const slice = m as Record<string, unknown>;
    if (
      typeof slice.alpha !== "number" ||
      (slice.kind !== "transparency" && slice.kind !== "robustness") ||
      !Array.isArray(slice.m_F) ||
      !Array.isArray(slice.b_F) ||
      !Array.isArray(slice.values)
    ) {
      throw new BundleError(`maps[${i}] has an invalid shape`);
    }
    if (slice.values.length !== slice.m_F.length) {
      throw new BundleError(`maps[${i}]: row count must match m_F length`);
    }
  }
  return rec as unknown as Bundle;
}

export function isFeasible(p: FrontPoint, cons: Constraints): boolean {
  if (cons.C_max !== null && p.C > cons.C_max) return false;
  if (cons.rho_min !== null && p.rho < cons.rho_min) return false;
  if (
    cons.omega_c_min_hz !== null &&
    (p.omega_c_hz === null || p.omega_c_hz < cons.omega_c_min_hz)
  ) {
    return false;
  }
  return true;
}

export function eliminationCounts(
  points: FrontPoint[],
  cons: Constraints,
): EliminationCounts {
  const counts: EliminationCounts = {
    total: points.length,
    by_C_max: 0,
    by_rho_min: 0,
    by_omega_c_min: 0,
    feasible: 0,
  };
  for (const p of points) {
    if (cons.C_max !== null && p.C > cons.C_max) counts.by_C_max++;
    if (cons.rho_min !== null && p.rho < cons.rho_min) counts.by_rho_min++;
    if (
      cons.omega_c_min_hz !== null &&
      (p.omega_c_hz === null || p.omega_c_hz < cons.omega_c_min_hz)
    ) {
      counts.by_omega_c_min++;
    }
    if (isFeasible(p, cons)) counts.feasible++;
  }
  return counts;
}

function scalarize(cN: number, rhoN: number, w: number): number {
  if (!(w >= 0 && w <= 1)) throw new RangeError(`weight out of [0, 1]: ${w}`);
  return w * cN + (1 - w) * -rhoN;
}

function lexLess(a: number[], b: number[]): boolean {
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) return a[i] < b[i];
  }
  return false;
}

export function chooseDesign(
  points: FrontPoint[],
  policy: Policy,
  weight: number | null = null,
): FrontPoint {
  if (points.length === 0) throw new Error("cannot choose from an empty front");
  let key: (p: FrontPoint) => number[];
  if (policy === "min_C") {
    key = (p) => [p.C, p.m_F, p.b_F];
  } else if (policy === "max_rho") {
    key = (p) => [-p.rho, p.m_F, p.b_F];
  } else {
    if (weight === null) throw new Error("by_weight policy needs a weight");
    key = (p) => [scalarize(p.C_n, p.rho_n, weight), p.m_F, p.b_F];
  }
  let best = points[0];
  let bestKey = key(best);
  for (const p of points.slice(1)) {
    const k = key(p);
    if (lexLess(k, bestKey)) {
      best = p;
      bestKey = k;
    }
  }
  return best;
}

export function buildReport(
  bundle: Bundle,
  cons: Constraints,
  policy: Policy = "min_C",
  weight: number | null = null,
): SelectionReport {
  const perAlpha: PerAlphaEntry[] = [];
  const chosenPoints: FrontPoint[] = [];
  for (const front of bundle.fronts) {
    if (front.points.length === 0) {
      perAlpha.push({
        alpha: front.alpha,
        chosen: null,
        eliminated_counts: { total: 0, feasible: 0 },
      });
      continue;
    }
    const counts = eliminationCounts(front.points, cons);
    const feasible = front.points.filter((p) => isFeasible(p, cons));
    let chosen: FrontPoint | null = null;
    if (feasible.length > 0) {
      chosen = chooseDesign(feasible, policy, weight);
      chosenPoints.push(chosen);
    }
    perAlpha.push({ alpha: front.alpha, chosen, eliminated_counts: counts });
  }
  let overall: FrontPoint | null = null;
  for (const p of chosenPoints) {
    if (overall === null || lexLess([p.C, p.m_F, p.b_F], [overall.C, overall.m_F, overall.b_F])) {
      overall = p;
    }
  }
  return { constraints: cons, policy, per_alpha: perAlpha, chosen: overall };
}

/** Structural check mirroring the CLI selection.json layout. */
export function validateReport(data: unknown): SelectionReport {
  if (typeof data !== "object" || data === null) {
    throw new BundleError("report is not a JSON object");
  }
  const rec = data as Record<string, unknown>;
  for (const key of ["constraints", "policy", "per_alpha", "chosen"]) {
    if (!(key in rec)) throw new BundleError(`report missing key ${key}`);
  }
  const cons = rec.constraints as Record<string, unknown>;
  for (const key of ["C_max", "rho_min", "omega_c_min_hz", "k_e_eval"]) {
    if (!(key in cons) || !isNumberOrNull(cons[key])) {
      throw new BundleError(`report constraints field ${key} invalid`);
    }
  }
  if (!["min_C", "max_rho", "by_weight"].includes(rec.policy as string)) {
    throw new BundleError(`report policy invalid: ${String(rec.policy)}`);
  }
  if (!Array.isArray(rec.per_alpha)) {
    throw new BundleError("report per_alpha must be an array");
  }
  for (const [i, e] of (rec.per_alpha as unknown[]).entries()) {
    const entry = e as Record<string, unknown>;
    if (typeof entry.alpha !== "number" || !("chosen" in entry) ||
        typeof entry.eliminated_counts !== "object") {
      throw new BundleError(`report per_alpha[${i}] invalid`);
    }
    if (entry.chosen !== null) checkPoint(entry.chosen, `per_alpha[${i}].chosen`);
  }
  if (rec.chosen !== null) checkPoint(rec.chosen, "report.chosen");
  return rec as unknown as SelectionReport;
}

/**
 * Stepwise polyline for a front: horizontal segment at each C level up to
 * the next rho, matching the interpolation used for front comparison.
 * Returns [rho, C] vertices ready for an SVG path.
 */
export function stepwiseVertices(points: FrontPoint[]): [number, number][] {
  const verts: [number, number][] = [];
  for (let i = 0; i < points.length; i++) {
    verts.push([points[i].rho, points[i].C]);
    if (i + 1 < points.length) {
      verts.push([points[i + 1].rho, points[i].C]);
    }
  }
  return verts;
}
