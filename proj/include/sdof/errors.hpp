#pragma once

#include <stdexcept>
#include <string>

namespace sdof {

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ToleranceViolation : std::runtime_error {
    explicit ToleranceViolation(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDims : std::invalid_argument {
    explicit InvalidDims(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidSizes : std::invalid_argument {
    explicit InvalidSizes(const std::string& what) : std::invalid_argument(what) {}
};

struct InfeasibleAllocation : std::invalid_argument {
    explicit InfeasibleAllocation(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace sdof
