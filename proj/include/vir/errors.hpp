#ifndef VIR_ERRORS_HPP
#define VIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vir {

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

struct NotRational : std::runtime_error {
    explicit NotRational(const std::string& what) : std::runtime_error(what) {}
};

struct VariableMismatch : std::runtime_error {
    explicit VariableMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParameters : std::runtime_error {
    explicit InvalidParameters(const std::string& what) : std::runtime_error(what) {}
};

struct NotKacWeight : std::runtime_error {
    explicit NotKacWeight(const std::string& what) : std::runtime_error(what) {}
};

struct InadmissibleBranch : std::runtime_error {
    explicit InadmissibleBranch(const std::string& what) : std::runtime_error(what) {}
};

struct LevelTooSmall : std::runtime_error {
    explicit LevelTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct NoSingularVector : std::runtime_error {
    explicit NoSingularVector(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidP : std::runtime_error {
    explicit InvalidP(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vir

#endif
