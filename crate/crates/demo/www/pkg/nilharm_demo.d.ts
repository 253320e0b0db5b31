/* tslint:disable */
/* eslint-disable */

/**
 * `|a *_e b|` on an `n × n` grid of half-width `half_width`, row-major in `(q, p)`.
 * `a` is a first-order Hermite-Gaussian at the origin, `b` a Gaussian at `(q, p)`.
 * With `twisted = false` the plain convolution is returned for comparison.
 */
export function convolution_field(n: number, half_width: number, q: number, p: number, twisted: boolean): Float64Array;

/**
 * Covering of `{f > level · max f}` for the two-bump input, as JSON:
 * the input values, each ball's centre, radius and box half-widths, and the measured constants.
 */
export function cz_covering(n: number, level: number): string;

/**
 * Pedersen identity residuals for a pair of Hermite-Gaussians, as JSON.
 */
export function pedersen_residuals(n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly convolution_field: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly cz_covering: (a: number, b: number) => [number, number, number, number];
    readonly pedersen_residuals: (a: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
