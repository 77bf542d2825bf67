#pragma once

#include <stdexcept>
#include <string>

namespace hemas {

struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("fitness evaluation budget exhausted") {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct OutOfBounds : std::invalid_argument {
    explicit OutOfBounds(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownFunction : std::invalid_argument {
    explicit UnknownFunction(const std::string& name)
        : std::invalid_argument("unknown benchmark function: " + name) {}
};

struct EmptyInput : std::invalid_argument {
    explicit EmptyInput(const std::string& what) : std::invalid_argument(what) {}
};

struct TooFewParticipants : std::invalid_argument {
    explicit TooFewParticipants(const std::string& what) : std::invalid_argument(what) {}
};

struct NotImplemented : std::logic_error {
    explicit NotImplemented(const std::string& what) : std::logic_error(what) {}
};

struct NonFiniteFitness : std::invalid_argument {
    explicit NonFiniteFitness(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownPreset : std::invalid_argument {
    explicit UnknownPreset(const std::string& name)
        : std::invalid_argument("unknown preset: " + name) {}
};

struct InvalidConfig : std::invalid_argument {
    explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

struct MixedInstances : std::invalid_argument {
    explicit MixedInstances(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hemas
