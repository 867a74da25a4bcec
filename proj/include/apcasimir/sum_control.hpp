#pragma once

#include <cstdint>

#include "apcasimir/errors.hpp"

namespace apc {

enum class SumMode { naive, accelerated };

// Truncation policy shared by every infinite sum in the library.
struct SumControl {
    double rel_tol = 1e-12;          // target relative tolerance, in (0, 1e-3]
    std::int64_t max_terms = 2000000; // hard cap per summation index, >= 8
    SumMode mode = SumMode::accelerated;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol > 1e-3)
            throw DomainError("SumControl.rel_tol must lie in (0, 1e-3]");
        if (max_terms < 8)
            throw DomainError("SumControl.max_terms must be >= 8");
    }

    static SumControl naive_default() {
        SumControl c;
        c.rel_tol = 1e-6;
        c.max_terms = 4096;
        c.mode = SumMode::naive;
        return c;
    }
};

// Value of a truncated lattice sum together with an error estimate.
struct LatticeValue {
    double value = 0.0;
    double est_error = 0.0;     // absolute
    std::int64_t terms_used = 0;
};

} // namespace apc
