#pragma once

#include <stdexcept>
#include <string>

namespace spiraldim {

// Numerical failure (quadrature did not converge, degenerate fit, ...).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested computation would exceed a configured budget
// (point caps, integer-width overflow of covering counts, ...).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spiraldim
