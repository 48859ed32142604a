//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

// The packaged libbenchmark_main.a carries LTO bytecode tied to one compiler
// release, so the entry point is compiled here instead.
BENCHMARK_MAIN();
