#pragma once

#include <cstddef>

namespace spm {

/// Selects between the plain serial loop and the OpenMP-parallel loop of a
/// kernel. Both paths return identical results; the serial one is kept as
/// the reference for tests and benchmarks.
enum class Exec { Serial, Parallel };

/// Size limits for lattice enumeration.
struct Budget {
  std::size_t max_module_order = 4096;
  std::size_t max_submodules = 100000;
  /// Largest |R|^k allowed for the ambient free module of a presentation.
  std::size_t max_ambient = 65536;
};

Exec default_exec();
void set_default_exec(Exec exec);

}  // namespace spm
