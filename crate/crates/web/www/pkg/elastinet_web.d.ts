/* tslint:disable */
/* eslint-disable */

/**
 * Minimization that the page advances a few iterations per frame.
 */
export class Relaxation {
    free(): void;
    [Symbol.dispose](): void;
    constructor(shape: string, n: number);
    /**
     * Runs up to `iterations` steps and reports the current state.
     */
    step(iterations: number): string;
}

/**
 * Optimal two-arc bubble for the given junction angles (radians).
 */
export function generalized_bubble(alpha1: number, alpha2: number, n: number): string;

/**
 * Theta-network with segments of length `1/n` cut into a degenerate
 * figure eight, plus its energy excess over the degenerate network.
 */
export function recovery(points: number, n: number): string;

/**
 * Reference network as `{kind, energy, elastic, length, svg}`.
 */
export function reference_shape(shape: string, n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_relaxation_free: (a: number, b: number) => void;
    readonly generalized_bubble: (a: number, b: number, c: number) => [number, number, number, number];
    readonly recovery: (a: number, b: number) => [number, number, number, number];
    readonly reference_shape: (a: number, b: number, c: number) => [number, number, number, number];
    readonly relaxation_new: (a: number, b: number, c: number) => [number, number, number];
    readonly relaxation_step: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
