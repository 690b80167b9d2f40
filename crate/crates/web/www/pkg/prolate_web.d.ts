/* tslint:disable */
/* eslint-disable */

export class SpectrumView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `2 R(N, M, eps)`.
     */
    readonly bound: number;
    /**
     * `(2K + 1) N / M`.
     */
    readonly cluster_point: number;
    readonly passed: boolean;
    /**
     * Eigenvalues, descending.
     */
    readonly values: Float64Array;
    /**
     * `#{eps < lambda < 1 - eps}`.
     */
    readonly width: number;
}

export class SweepView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bounds: Float64Array;
    readonly ms: Float64Array;
    readonly widths: Float64Array;
}

/**
 * Singular values of the `M/p x M/p` DFT block at cyclic offsets.
 */
export function dft_block(m: number, p: number, row: number, col: number): Float64Array;

/**
 * Eigenvalues of `[B_{M,W}]_N` with the transition count at `epsilon`.
 */
export function prolate_eigenvalues(m: number, n: number, k: number, epsilon: number): SpectrumView;

export function transition_sweep(m_max: number, epsilon: number): SweepView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_spectrumview_free: (a: number, b: number) => void;
    readonly __wbg_sweepview_free: (a: number, b: number) => void;
    readonly dft_block: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly prolate_eigenvalues: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly spectrumview_bound: (a: number) => number;
    readonly spectrumview_cluster_point: (a: number) => number;
    readonly spectrumview_passed: (a: number) => number;
    readonly spectrumview_values: (a: number) => [number, number];
    readonly spectrumview_width: (a: number) => number;
    readonly sweepview_bounds: (a: number) => [number, number];
    readonly sweepview_ms: (a: number) => [number, number];
    readonly sweepview_widths: (a: number) => [number, number];
    readonly transition_sweep: (a: number, b: number) => [number, number, number];
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
