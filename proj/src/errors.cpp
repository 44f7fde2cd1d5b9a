#include "rkhs/errors.hpp"

namespace rkhs {

const char* category_name(ErrorCategory c) noexcept {
    switch (c) {
        case ErrorCategory::domain: return "domain";
        case ErrorCategory::accuracy: return "accuracy";
        case ErrorCategory::degeneracy: return "degeneracy";
        case ErrorCategory::divergence: return "divergence";
        case ErrorCategory::io: return "io";
        case ErrorCategory::contract: return "contract";
        case ErrorCategory::construction: return "construction";
    }
    return "unknown";
}

}  // namespace rkhs
