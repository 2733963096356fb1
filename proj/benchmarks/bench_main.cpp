#include <benchmark/benchmark.h>

// Static libbenchmark_main ships LTO bytecode from another compiler release.
BENCHMARK_MAIN();
