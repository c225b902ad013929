/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_diskgraph_free: (a: number, b: number) => void;
export const diskgraph_clustering: (a: number) => number;
export const diskgraph_coords: (a: number) => [number, number];
export const diskgraph_edges: (a: number) => [number, number];
export const diskgraph_radius: (a: number) => number;
export const gamma_curve: (a: number, b: number, c: number) => [number, number, number, number];
export const p_y_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const sample_disk: (a: number, b: number, c: number, d: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
