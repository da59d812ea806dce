#pragma once

namespace ecgsep {

// Execution policy for the data-parallel kernels (DFT bins, spectral
// windows, synth samples, sweep rows). Every kernel computes each item
// with the same per-item function regardless of policy, so serial and
// parallel results are bitwise identical; tests rely on that.
enum class Exec { serial, parallel };

bool openmp_enabled();

} // namespace ecgsep
