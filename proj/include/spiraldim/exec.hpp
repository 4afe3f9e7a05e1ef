#pragma once

namespace spiraldim {

// Execution policy for the data-parallel kernels.  Every parallel kernel has
// a serial twin with identical results; tests and the bench tool compare them.
enum class Exec {
    serial,
    parallel,
};

}  // namespace spiraldim
