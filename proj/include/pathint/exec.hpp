#pragma once

namespace pathint {

/// Execution policy for the enumeration and reduction kernels. Parallel uses
/// OpenMP when compiled in and must produce bit-identical results to Serial;
/// the equality is covered by tests.
enum class Exec { Serial, Parallel };

}  // namespace pathint
