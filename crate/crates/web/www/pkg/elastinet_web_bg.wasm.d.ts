/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_relaxation_free: (a: number, b: number) => void;
export const generalized_bubble: (a: number, b: number, c: number) => [number, number, number, number];
export const recovery: (a: number, b: number) => [number, number, number, number];
export const reference_shape: (a: number, b: number, c: number) => [number, number, number, number];
export const relaxation_new: (a: number, b: number, c: number) => [number, number, number];
export const relaxation_step: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
