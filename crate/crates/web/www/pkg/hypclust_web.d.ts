/* tslint:disable */
/* eslint-disable */

/**
 * A sampled KPKVB graph in a form the page can draw directly.
 */
export class DiskGraph {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Average local clustering coefficient of the sample.
     */
    readonly clustering: number;
    /**
     * Interleaved (r, θ) per vertex.
     */
    readonly coords: Float64Array;
    /**
     * Interleaved endpoint pairs, u < v.
     */
    readonly edges: Uint32Array;
    /**
     * Disk radius R.
     */
    readonly radius: number;
}

export function gamma_curve(alpha: number, nu: number, k_max: number): Float64Array;

export function p_y_curve(alpha: number, nu: number, y_max: number, points: number): Float64Array;

export function sample_disk(alpha: number, nu: number, n: number, seed: number): DiskGraph;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_diskgraph_free: (a: number, b: number) => void;
    readonly diskgraph_clustering: (a: number) => number;
    readonly diskgraph_coords: (a: number) => [number, number];
    readonly diskgraph_edges: (a: number) => [number, number];
    readonly diskgraph_radius: (a: number) => number;
    readonly gamma_curve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly p_y_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly sample_disk: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
