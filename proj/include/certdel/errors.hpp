#pragma once

#include <stdexcept>
#include <string>

namespace certdel {

// Contract violations. The CLI maps these to exit code 1; decode failures
// that are part of a return contract (decap returning bottom) use
// std::optional instead and never throw.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct ParamError : Error {
    using Error::Error;
};

// A quantum register was measured after it had already been consumed.
struct RegisterConsumed : Error {
    RegisterConsumed() : Error("register already consumed by a destructive measurement") {}
};

struct QueryBudgetExceeded : Error {
    QueryBudgetExceeded() : Error("oracle query budget exhausted") {}
};

}  // namespace certdel
