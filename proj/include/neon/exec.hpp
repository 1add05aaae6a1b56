#pragma once

namespace neon {

// Every data-parallel kernel (trial loops, per-block local decodes, frontier
// subtree scans, channel noise) has a plain serial reference path and an
// OpenMP path. Results are required to match bit-exactly; tests compare them
// and tools/neon_bench times them against each other.
enum class Exec { serial, parallel };

int max_threads();

} // namespace neon
