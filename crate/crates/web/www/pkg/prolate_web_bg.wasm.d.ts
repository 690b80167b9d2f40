/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_spectrumview_free: (a: number, b: number) => void;
export const __wbg_sweepview_free: (a: number, b: number) => void;
export const dft_block: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const prolate_eigenvalues: (a: number, b: number, c: number, d: number) => [number, number, number];
export const spectrumview_bound: (a: number) => number;
export const spectrumview_cluster_point: (a: number) => number;
export const spectrumview_passed: (a: number) => number;
export const spectrumview_values: (a: number) => [number, number];
export const spectrumview_width: (a: number) => number;
export const sweepview_bounds: (a: number) => [number, number];
export const sweepview_ms: (a: number) => [number, number];
export const sweepview_widths: (a: number) => [number, number];
export const transition_sweep: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
