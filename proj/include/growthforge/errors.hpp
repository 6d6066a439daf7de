#pragma once

#include <stdexcept>
#include <string>

namespace growthforge {

/// Base class for all library errors. `tag()` is a stable, machine-parsable
/// identifier; the CLI prints it verbatim so scripts can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(const char* tag, const std::string& message)
        : std::runtime_error(std::string(tag) + ": " + message), tag_(tag) {}

    const char* tag() const noexcept { return tag_; }

private:
    const char* tag_;
};

#define GROWTHFORGE_ERROR(Name)                                    \
    class Name final : public Error {                              \
    public:                                                        \
        explicit Name(const std::string& message)                  \
            : Error(#Name, message) {}                             \
    }

GROWTHFORGE_ERROR(DimensionMismatch);
GROWTHFORGE_ERROR(NotUnimodular);
GROWTHFORGE_ERROR(NotSquare);
GROWTHFORGE_ERROR(DivisorNotMonic);
GROWTHFORGE_ERROR(DivisorZero);
GROWTHFORGE_ERROR(NotMonic);
GROWTHFORGE_ERROR(ZeroConstantTerm);
GROWTHFORGE_ERROR(DegenerateRecursion);
GROWTHFORGE_ERROR(AllRootsOfUnity);
GROWTHFORGE_ERROR(PowerBudgetExceeded);
GROWTHFORGE_ERROR(KindMismatch);
GROWTHFORGE_ERROR(UnknownLabel);
GROWTHFORGE_ERROR(NotTransitive);
GROWTHFORGE_ERROR(InvalidTable);
GROWTHFORGE_ERROR(BudgetExceeded);
GROWTHFORGE_ERROR(EmptyReport);
GROWTHFORGE_ERROR(NotExponential);
GROWTHFORGE_ERROR(DegenerateGeneratingSet);
GROWTHFORGE_ERROR(RecursionExhausted);
GROWTHFORGE_ERROR(NoCyclicSupport);
GROWTHFORGE_ERROR(ValidationError);

#undef GROWTHFORGE_ERROR

/// Parse failures carry a position (1-based line/column) when known.
class ParseError final : public Error {
public:
    ParseError(const std::string& message, int line = 0, int column = 0)
        : Error("ParseError", position_prefix(line, column) + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string position_prefix(int line, int column) {
        if (line <= 0) return {};
        return "line " + std::to_string(line) + ", column " +
               std::to_string(column) + ": ";
    }

    int line_;
    int column_;
};

} // namespace growthforge
